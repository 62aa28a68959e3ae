"""Sequential automata: FSA, PDA, LBA and TM components.

A :class:`SequentialAutomaton` is immutable.  Execution works on
:class:`Configuration` snapshots; :func:`step` yields every successor of a
configuration and :func:`run` explores the successors breadth first under
a step budget, which is why the outcome is three-valued.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import ConfigurationMismatch, NotHalted, UndeclaredSymbol


class Kind(str, enum.Enum):
    FSA = "fsa"
    PDA = "pda"
    LBA = "lba"
    TM = "tm"


class Outcome(str, enum.Enum):
    ACCEPT = "Accept"
    REJECT = "Reject"
    BUDGET_EXHAUSTED = "BudgetExhausted"


TAPE_KINDS = (Kind.LBA, Kind.TM)


@dataclass(frozen=True)
class Transition:
    """One entry of a transition relation.

    The fields used depend on the automaton kind:

    * FSA: ``source --read--> target``
    * PDA: ``read`` may be ``None`` (an epsilon move); ``pop`` must match the
      top of the stack (top first) and is replaced by ``push``
    * LBA/TM: ``read`` is the tape symbol under the head, replaced by
      ``write`` before the head moves ``L`` or ``R``
    """

    source: str
    target: str
    read: str | None = None
    pop: tuple = ()
    push: tuple = ()
    write: str | None = None
    move: str | None = None

    def describe(self, kind: Kind) -> str:
        if kind is Kind.FSA:
            return f"<{self.read},{self.source}> -> {self.target}"
        if kind is Kind.PDA:
            read = "ε" if self.read is None else self.read
            pop = "".join(self.pop) or "ε"
            push = "".join(self.push) or "ε"
            return f"<{read},{self.source},{pop}/{push}> -> {self.target}"
        return f"<{self.read},{self.source}> -> {self.target},{self.write},{self.move}"


@dataclass(frozen=True)
class Configuration:
    """Snapshot of one automaton during a run.

    FSA/PDA configurations keep the whole input ``word`` and the read
    position ``pos``; the PDA also has a ``stack`` (top first).  LBA/TM
    configurations keep the ``tape`` and ``head`` index.
    """

    kind: Kind
    state: str
    word: tuple = ()
    pos: int = 0
    stack: tuple = ()
    tape: tuple = ()
    head: int = 0

    @property
    def remaining(self) -> tuple:
        return self.word[self.pos:]

    @property
    def consumed(self) -> tuple:
        return self.word[: self.pos]

    def describe(self) -> str:
        if self.kind is Kind.FSA:
            return f"{self.state} [{' '.join(self.remaining)}]"
        if self.kind is Kind.PDA:
            return f"{self.state} [{' '.join(self.remaining)}] stack={''.join(self.stack)}"
        cells = [f"({s})" if i == self.head else s for i, s in enumerate(self.tape)]
        return f"{self.state} {' '.join(cells)}"


@dataclass(frozen=True)
class SequentialAutomaton:
    kind: Kind
    name: str
    states: tuple
    input_alphabet: tuple
    transitions: tuple
    initial: str
    finals: tuple
    stack_alphabet: tuple = ()
    stack_start: str | None = None
    tape_alphabet: tuple = ()
    blank: str = "_"
    left_marker: str = "<"
    right_marker: str = ">"

    def __post_init__(self):
        # Accept any iterable from callers but store tuples so definitions
        # stay hashable and keep their declaration order.
        for name in ("states", "input_alphabet", "transitions", "finals",
                     "stack_alphabet", "tape_alphabet"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        object.__setattr__(self, "kind", Kind(self.kind))

    @cached_property
    def _outgoing(self) -> dict:
        table: dict = {}
        for tr in self.transitions:
            table.setdefault(tr.source, []).append(tr)
        return table

    @cached_property
    def _final_set(self) -> frozenset:
        return frozenset(self.finals)

    @cached_property
    def _alphabet_set(self) -> frozenset:
        return frozenset(self.input_alphabet)

    def outgoing(self, state: str) -> list:
        return self._outgoing.get(state, [])

    def is_final(self, state: str) -> bool:
        return state in self._final_set

    def renamed(self, prefix: str) -> "SequentialAutomaton":
        """Copy with every state name prefixed by ``prefix``."""
        def r(s):
            return prefix + s
        return SequentialAutomaton(
            kind=self.kind,
            name=self.name,
            states=[r(s) for s in self.states],
            input_alphabet=self.input_alphabet,
            transitions=[
                Transition(r(t.source), r(t.target), t.read, t.pop, t.push, t.write, t.move)
                for t in self.transitions
            ],
            initial=r(self.initial),
            finals=[r(s) for s in self.finals],
            stack_alphabet=self.stack_alphabet,
            stack_start=self.stack_start,
            tape_alphabet=self.tape_alphabet,
            blank=self.blank,
            left_marker=self.left_marker,
            right_marker=self.right_marker,
        )


def fsa(name, states, alphabet, transitions, initial, finals) -> SequentialAutomaton:
    """Shorthand for an FSA given ``(source, symbol, target)`` triples."""
    return SequentialAutomaton(
        kind=Kind.FSA,
        name=name,
        states=states,
        input_alphabet=alphabet,
        transitions=[Transition(s, t, read=a) for s, a, t in transitions],
        initial=initial,
        finals=finals,
    )


def tm(name, states, alphabet, tape_alphabet, transitions, initial, finals,
       blank="_") -> SequentialAutomaton:
    """Shorthand for a TM given ``(source, read, write, move, target)`` tuples."""
    return SequentialAutomaton(
        kind=Kind.TM,
        name=name,
        states=states,
        input_alphabet=alphabet,
        transitions=[Transition(s, t, read=r, write=w, move=m) for s, r, w, m, t in transitions],
        initial=initial,
        finals=finals,
        tape_alphabet=tape_alphabet,
        blank=blank,
    )


# --------------------------------------------------------------------------
# validation


def _duplicates(items: Sequence) -> list:
    seen, dups = set(), []
    for item in items:
        if item in seen and item not in dups:
            dups.append(item)
        seen.add(item)
    return dups


def validate(a: SequentialAutomaton) -> list[str]:
    """Return a description of every broken invariant; empty means valid."""
    problems: list[str] = []
    states = set(a.states)
    sigma = set(a.input_alphabet)

    for s in _duplicates(a.states):
        problems.append(f"{a.name}: state {s!r} declared twice")
    for s in _duplicates(a.input_alphabet):
        problems.append(f"{a.name}: input symbol {s!r} declared twice")
    if a.initial not in states:
        problems.append(f"{a.name}: initial state {a.initial!r} is not a declared state")
    for f in a.finals:
        if f not in states:
            problems.append(f"{a.name}: final state {f!r} is not a declared state")

    if a.kind is Kind.PDA:
        gamma = set(a.stack_alphabet)
        if a.stack_start is not None and a.stack_start not in gamma:
            problems.append(f"{a.name}: stack start {a.stack_start!r} not in stack alphabet")
    if a.kind in TAPE_KINDS:
        gamma = set(a.tape_alphabet)
        missing = [s for s in a.input_alphabet if s not in gamma]
        if missing:
            problems.append(f"{a.name}: input symbols {missing} missing from tape alphabet")
        if a.blank in sigma:
            problems.append(f"{a.name}: blank {a.blank!r} must not be an input symbol")
        if a.kind is Kind.TM and a.blank not in gamma:
            problems.append(f"{a.name}: blank {a.blank!r} not in tape alphabet")
        if a.kind is Kind.LBA:
            markers = {a.left_marker, a.right_marker}
            if len(markers) != 2 or markers & gamma:
                problems.append(f"{a.name}: end-markers must be two symbols outside the tape alphabet")

    for tr in a.transitions:
        problems.extend(_check_transition(a, tr, states, sigma))

    if a.kind in TAPE_KINDS:
        for f in a.finals:
            if a.outgoing(f):
                problems.append(f"{a.name}: final state {f!r} has outgoing transitions (final states halt)")
    return problems


def _check_transition(a, tr, states, sigma) -> Iterator[str]:
    label = f"{a.name}: transition {tr.describe(a.kind)}"
    for s in (tr.source, tr.target):
        if s not in states:
            yield f"{label} uses undeclared state {s!r}"
    if a.kind is Kind.FSA:
        if tr.read not in sigma:
            yield f"{label} reads undeclared symbol {tr.read!r}"
    elif a.kind is Kind.PDA:
        if tr.read is not None and tr.read not in sigma:
            yield f"{label} reads undeclared symbol {tr.read!r}"
        gamma = set(a.stack_alphabet)
        for s in tr.pop + tr.push:
            if s not in gamma:
                yield f"{label} uses undeclared stack symbol {s!r}"
    else:
        if tr.move not in ("L", "R"):
            yield f"{label} has head move {tr.move!r}, expected L or R"
        gamma = set(a.tape_alphabet)
        if a.kind is Kind.LBA:
            lm, rm = a.left_marker, a.right_marker
            if tr.read == lm and (tr.write != lm or tr.move != "R"):
                yield f"{label} must keep the left end-marker and move R"
            elif tr.read == rm and (tr.write != rm or tr.move != "L"):
                yield f"{label} must keep the right end-marker and move L"
            elif tr.read not in (lm, rm):
                if tr.read not in gamma:
                    yield f"{label} reads undeclared tape symbol {tr.read!r}"
                if tr.write not in gamma:
                    yield f"{label} writes undeclared tape symbol {tr.write!r}"
        else:
            for s in (tr.read, tr.write):
                if s not in gamma:
                    yield f"{label} uses undeclared tape symbol {s!r}"


# --------------------------------------------------------------------------
# execution


def initial_configuration(a: SequentialAutomaton, word: Iterable[str]) -> Configuration:
    word = tuple(word)
    if a.kind is Kind.FSA:
        return Configuration(Kind.FSA, a.initial, word=word)
    if a.kind is Kind.PDA:
        stack = (a.stack_start,) if a.stack_start is not None else ()
        return Configuration(Kind.PDA, a.initial, word=word, stack=stack)
    if a.kind is Kind.LBA:
        tape = (a.left_marker,) + word + (a.right_marker,)
        return Configuration(Kind.LBA, a.initial, tape=tape, head=1)
    return Configuration(Kind.TM, a.initial, tape=word or (a.blank,), head=0)


def apply(a: SequentialAutomaton, tr: Transition, c: Configuration) -> Configuration | None:
    """Apply one transition to ``c``; ``None`` when it is not enabled."""
    if tr.source != c.state:
        return None
    kind = a.kind
    if kind is Kind.FSA:
        if c.pos < len(c.word) and c.word[c.pos] == tr.read:
            return Configuration(kind, tr.target, word=c.word, pos=c.pos + 1)
        return None
    if kind is Kind.PDA:
        pos = c.pos
        if tr.read is not None:
            if pos >= len(c.word) or c.word[pos] != tr.read:
                return None
            pos += 1
        n = len(tr.pop)
        if c.stack[:n] != tr.pop:
            return None
        return Configuration(kind, tr.target, word=c.word, pos=pos, stack=tr.push + c.stack[n:])
    if c.tape[c.head] != tr.read:
        return None
    tape = list(c.tape)
    tape[c.head] = tr.write
    head = c.head + (1 if tr.move == "R" else -1)
    if kind is Kind.TM:
        if head < 0:
            tape.insert(0, a.blank)
            head = 0
        elif head == len(tape):
            tape.append(a.blank)
    return Configuration(kind, tr.target, tape=tuple(tape), head=head)


def successors(a: SequentialAutomaton, c: Configuration) -> list[tuple[Transition, Configuration]]:
    """Enabled transitions of ``c`` paired with their results, in declaration order."""
    if c.kind is not a.kind:
        raise ConfigurationMismatch(f"{c.kind.value} configuration given to {a.kind.value} automaton {a.name}")
    result = []
    for tr in a.outgoing(c.state):
        nxt = apply(a, tr, c)
        if nxt is not None:
            result.append((tr, nxt))
    return result


def step(a: SequentialAutomaton, c: Configuration) -> set[Configuration]:
    """All configurations reachable from ``c`` in exactly one transition."""
    return {nxt for _, nxt in successors(a, c)}


def is_accepting(a: SequentialAutomaton, c: Configuration) -> bool:
    if not a.is_final(c.state):
        return False
    if c.kind in (Kind.FSA, Kind.PDA):
        return c.pos == len(c.word)
    return True


@dataclass(frozen=True)
class TraceStep:
    before: Configuration
    transition: Transition
    after: Configuration


@dataclass(frozen=True)
class RunResult:
    """Outcome of :func:`run`.

    ``trace`` is the witness path: the accepting computation on Accept,
    otherwise the path to the last configuration explored.  ``steps`` is the
    number of transitions applied across the whole frontier.
    """

    outcome: Outcome
    trace: tuple
    steps: int
    final: Configuration

    def serialize(self) -> str:
        lines = [self.outcome.value]
        lines += [f"{s.before.describe()} | {s.transition.describe(s.before.kind)} | {s.after.describe()}"
                  for s in self.trace]
        return "\n".join(lines) + "\n"


@dataclass
class _Node:
    config: Configuration
    parent: "_Node | None" = None
    via: Transition | None = None

    def path(self) -> tuple:
        steps = []
        node = self
        while node.parent is not None:
            steps.append(TraceStep(node.parent.config, node.via, node.config))
            node = node.parent
        return tuple(reversed(steps))


def check_word(a: SequentialAutomaton, word: Sequence[str]) -> None:
    bad = [s for s in word if s not in a._alphabet_set]
    if bad:
        raise UndeclaredSymbol(f"{a.name}: symbols {bad} are not in the input alphabet")


def run(a: SequentialAutomaton, word: Sequence[str], budget: int) -> RunResult:
    """Breadth-first search for an accepting computation on ``word``.

    Each applied transition costs one unit of ``budget``.  Identical
    configurations inside one frontier level are merged, which never changes
    the outcome since they share their future.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    check_word(a, word)
    return explore(a, word, budget)


def explore(a: SequentialAutomaton, word: Sequence[str], budget: int) -> RunResult:
    """:func:`run` without argument checks; ``budget`` may be zero."""
    root = _Node(initial_configuration(a, word))
    if is_accepting(a, root.config):
        return RunResult(Outcome.ACCEPT, (), 0, root.config)

    frontier = [root]
    last = root
    steps = 0
    while frontier:
        level: dict = {}
        for node in frontier:
            for tr, nxt in successors(a, node.config):
                if steps >= budget:
                    return RunResult(Outcome.BUDGET_EXHAUSTED, last.path(), steps, last.config)
                steps += 1
                if nxt in level:
                    continue
                child = _Node(nxt, node, tr)
                last = child
                if is_accepting(a, nxt):
                    return RunResult(Outcome.ACCEPT, child.path(), steps, nxt)
                level[nxt] = child
        frontier = list(level.values())
    return RunResult(Outcome.REJECT, last.path(), steps, last.config)


def accepts(a: SequentialAutomaton, word: Sequence[str], budget: int = 10_000) -> bool:
    return run(a, word, budget).outcome is Outcome.ACCEPT


def payload(a: SequentialAutomaton, c: Configuration) -> tuple:
    """Handoff payload of ``c`` without checking that the automaton halted."""
    if c.kind in (Kind.FSA, Kind.PDA):
        return c.consumed
    skip = {a.blank, a.left_marker, a.right_marker} if c.kind is Kind.LBA else {a.blank}
    return tuple(s for s in c.tape if s not in skip)


def output_word(a: SequentialAutomaton, final_config: Configuration) -> tuple:
    """Word handed to the next segment once ``final_config`` has halted.

    Acceptors (FSA/PDA) pass on the input they consumed; tape machines pass
    on their non-blank tape contents, left to right.
    """
    if successors(a, final_config):
        raise NotHalted(f"{a.name} has not halted in {final_config.describe()}")
    return payload(a, final_config)
