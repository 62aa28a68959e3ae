"""Computational-power classification and desk-scale language evidence.

Nothing here proves anything about unbounded languages.  The samplers
enumerate every word up to a length bound and the two evidence suites
compare finite language samples; words whose run exhausted its budget are
reported separately and never counted as rejected.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Sequence

from .automata import Kind, Outcome, SequentialAutomaton, Transition, run
from .catalog import anbncn_tm, in_anbncn, single_body_automaton
from .cellular import SeededRandomSchedule, TableSchedule
from .errors import EnumerationTooLarge, NotRegularCase
from .executor import execute
from .hierarchy import GluePolicy, MimicAutomaton, ca_is_empty, segments, upper_path

MAX_WORDS = 10**6


class PowerClass(str, enum.Enum):
    CASE1 = "Case1_TuringEquivalent"
    CASE2 = "Case2_LBAonTMschedule"
    CASE3 = "Case3_LBAonRegularSchedule"
    CASE4 = "Case4_FSAonRegularSchedule"
    OTHER = "Other"


def _reachable_bindings(ma: MimicAutomaton):
    return [ma.bindings[s] for s in upper_path(ma) if s in ma.bindings]


def classify(ma: MimicAutomaton) -> PowerClass:
    """Map component kinds and schedule shapes to one of the four cases.

    Lower automata must all share one kind (TM aside), otherwise the
    answer is ``Other``.
    """
    bindings = _reachable_bindings(ma)
    kinds = {sa.kind for b in bindings for sa in b.sas.values()}
    empty = ca_is_empty(ma)
    if Kind.TM in kinds:
        return PowerClass.CASE1 if empty else PowerClass.OTHER
    if len(kinds) != 1:
        return PowerClass.OTHER
    kind = kinds.pop()
    schedules = [b.schedule for b in bindings]
    regular = empty or all(s.is_regular() for s in schedules)
    if kind is Kind.LBA:
        if regular:
            return PowerClass.CASE3
        randomized = any(isinstance(s, SeededRandomSchedule) for s in schedules)
        if not randomized and any(isinstance(s, TableSchedule) and s.tm_generated for s in schedules):
            return PowerClass.CASE2
        return PowerClass.OTHER
    if kind is Kind.FSA and regular:
        return PowerClass.CASE4
    return PowerClass.OTHER


def flatten_regular(ma: MimicAutomaton, seed: int | None = None) -> SequentialAutomaton:
    """Concatenate the segment FSAs of an all-regular automaton in run order.

    Each final state of the accumulated machine receives copies of the next
    segment's initial transitions, so it behaves as that initial state: the
    epsilon-free form of identifying the two states.  No state is dropped.
    Time is ignored, so the result matches the executor only when no epoch
    duration cuts a segment short.
    """
    if classify(ma) is not PowerClass.CASE4 or ma.glue is not GluePolicy.STATE_IDENTIFICATION:
        raise NotRegularCase(f"{ma.name} is not an all-FSA automaton glued by state identification")
    sas = [seg.sa for seg in segments(ma, seed)]
    names = [s for sa in sas for s in sa.states]
    if len(set(names)) != len(names):
        sas = [sa.renamed(f"{i}:") for i, sa in enumerate(sas, start=1)]

    alphabet: list = []
    for sa in sas:
        alphabet += [s for s in sa.input_alphabet if s not in alphabet]
    transitions: list = [tr for sa in sas for tr in sa.transitions]
    finals = list(sas[0].finals)
    for nxt in sas[1:]:
        for f in finals:
            for tr in nxt.outgoing(nxt.initial):
                copy = Transition(f, tr.target, read=tr.read)
                if copy not in transitions:
                    transitions.append(copy)
        carried = finals if nxt.is_final(nxt.initial) else []
        finals = list(nxt.finals) + [f for f in carried if f not in nxt.finals]
    return SequentialAutomaton(
        kind=Kind.FSA,
        name=f"{ma.name}_flat",
        states=[s for sa in sas for s in sa.states],
        input_alphabet=alphabet,
        transitions=transitions,
        initial=sas[0].initial,
        finals=finals,
    )


# --------------------------------------------------------------------------
# sampling


def word_count(alphabet_size: int, max_len: int) -> int:
    return sum(alphabet_size**k for k in range(max_len + 1))


def words_upto(alphabet: Sequence[str], max_len: int) -> Iterator[tuple]:
    for k in range(max_len + 1):
        yield from product(alphabet, repeat=k)


def show_word(word: Sequence[str]) -> str:
    return " ".join(word) if word else "ε"


@dataclass(frozen=True)
class LanguageSample:
    alphabet: tuple
    max_len: int
    accepted: frozenset
    exhausted: frozenset = field(default_factory=frozenset)
    budget_used: int = 0
    runs: int = 0

    def accepted_words(self) -> list:
        return sorted(self.accepted)

    def report(self) -> str:
        lines = [f"alphabet: {' '.join(self.alphabet)}", f"max_len: {self.max_len}",
                 f"accepted ({len(self.accepted)}):"]
        lines += [f"  {show_word(w)}" for w in sorted(self.accepted)]
        lines.append(f"budget-exhausted ({len(self.exhausted)}):")
        lines += [f"  {show_word(w)}" for w in sorted(self.exhausted)]
        lines.append(f"runs: {self.runs}")
        lines.append(f"budget used: {self.budget_used}")
        return "\n".join(lines) + "\n"


def _guard(alphabet: Sequence[str], max_len: int) -> None:
    n = word_count(len(alphabet), max_len)
    if n > MAX_WORDS:
        raise EnumerationTooLarge(f"{n} words over {len(alphabet)} symbols up to length {max_len} "
                                  f"exceed the limit of {MAX_WORDS}")


def language_sample(machine, alphabet: Iterable[str], max_len: int, budget: int = 10_000,
                    seed: int | None = None) -> LanguageSample:
    """Run every word over ``alphabet`` of length at most ``max_len``.

    ``machine`` is a :class:`SequentialAutomaton` or a :class:`MimicAutomaton`.
    For a segmented mimic automaton a joined word is accepted when some split
    into segment words is accepted by :func:`execute`.
    """
    alphabet = tuple(dict.fromkeys(alphabet))
    _guard(alphabet, max_len)
    if isinstance(machine, MimicAutomaton):
        return _sample_mimic(machine, alphabet, max_len, budget, seed)
    return _sample_sequential(machine, alphabet, max_len, budget)


def _sample_sequential(a: SequentialAutomaton, alphabet, max_len, budget) -> LanguageSample:
    accepted, exhausted = set(), set()
    used = runs = 0
    declared = set(a.input_alphabet)
    for w in words_upto(alphabet, max_len):
        if not declared.issuperset(w):
            continue
        result = run(a, w, budget)
        runs += 1
        used += result.steps
        if result.outcome is Outcome.ACCEPT:
            accepted.add(w)
        elif result.outcome is Outcome.BUDGET_EXHAUSTED:
            exhausted.add(w)
    return LanguageSample(alphabet, max_len, frozenset(accepted), frozenset(exhausted), used, runs)


def _sample_mimic(ma: MimicAutomaton, alphabet, max_len, budget, seed) -> LanguageSample:
    segs = segments(ma, seed)
    accepted, exhausted = set(), set()
    stats = {"used": 0, "runs": 0}

    def record(joined, trace):
        stats["runs"] += 1
        stats["used"] += trace.steps
        if trace.outcome is Outcome.ACCEPT:
            accepted.add(joined)
        elif trace.outcome is Outcome.BUDGET_EXHAUSTED:
            exhausted.add(joined)

    if ma.glue is GluePolicy.WORD_HANDOFF or len(segs) <= 1:
        declared = set(segs[0].sa.input_alphabet) if segs else set()
        for w in words_upto(alphabet, max_len):
            if declared.issuperset(w):
                record(w, execute(ma, [w], budget, seed))
    else:
        # Segment words only ever use their own automaton's symbols.  A run
        # that stops in segment j never reads later words, so its verdict
        # covers every extension of the words given so far.
        alphas = [[s for s in alphabet if s in set(seg.sa.input_alphabet)] for seg in segs]
        last = len(segs) - 1

        def visit(prefix: tuple, used_len: int) -> None:
            level = len(prefix)
            for w in words_upto(alphas[level], max_len - used_len):
                words = prefix + (w,)
                joined = tuple(s for word in words for s in word)
                trace = execute(ma, words, budget, seed)
                record(joined, trace)
                if level == last:
                    continue
                if trace.stopped_at > level:
                    visit(words, used_len + len(w))
                elif trace.outcome is Outcome.BUDGET_EXHAUSTED:
                    for tail in _tails(alphas[level + 1:], max_len - used_len - len(w)):
                        exhausted.add(joined + tail)

        visit((), 0)
    return LanguageSample(alphabet, max_len, frozenset(accepted), frozenset(exhausted - accepted),
                          stats["used"], stats["runs"])


def _tails(alphas, max_len) -> Iterator[tuple]:
    if not alphas:
        yield ()
        return
    for w in words_upto(alphas[0], max_len):
        for rest in _tails(alphas[1:], max_len - len(w)):
            yield w + rest


@dataclass(frozen=True)
class Evidence:
    equal: bool
    counterexample: tuple | None
    left: LanguageSample
    right: LanguageSample

    def __bool__(self) -> bool:
        return self.equal

    def report(self) -> str:
        verdict = "languages agree" if self.equal else "languages differ"
        lines = [f"evidence: {verdict} up to length {self.left.max_len}"]
        if self.counterexample is not None:
            lines.append(f"counterexample: {show_word(self.counterexample)}")
        return "\n".join(lines) + "\n"


def equivalence_evidence(ma: MimicAutomaton, fsa: SequentialAutomaton, alphabet: Iterable[str],
                         max_len: int, budget: int = 10_000, seed: int | None = None) -> Evidence:
    """Compare the bounded languages of ``ma`` and ``fsa``.

    The counterexample is the shortest (then lexicographically first) word on
    which they disagree.  Exhausted words make the evidence inconclusive and
    count as a disagreement.
    """
    alphabet = tuple(alphabet)
    left = language_sample(ma, alphabet, max_len, budget, seed)
    right = language_sample(fsa, alphabet, max_len, budget)
    diff = (left.accepted ^ right.accepted) | left.exhausted | right.exhausted
    first = min(diff, key=lambda w: (len(w), w)) if diff else None
    return Evidence(not diff, first, left, right)


# --------------------------------------------------------------------------
# lower-bound demonstration


def single_edits(word: str, alphabet: str = "abc") -> list[str]:
    """Every word one substitution, deletion, insertion or adjacent swap away."""
    out = set()
    for i in range(len(word)):
        out.add(word[:i] + word[i + 1:])
        for c in alphabet:
            out.add(word[:i] + c + word[i + 1:])
        if i + 1 < len(word):
            out.add(word[:i] + word[i + 1] + word[i] + word[i + 2:])
    for i in range(len(word) + 1):
        for c in alphabet:
            out.add(word[:i] + c + word[i:])
    out.discard(word)
    return sorted(out)


@dataclass
class LowerBoundCase:
    n: int
    accepted: bool
    perturbations: list
    failures: list


@dataclass
class LowerBoundReport:
    cases: list
    empty_word_rejected: bool
    budget: int

    @property
    def failures(self) -> int:
        return sum(len(c.failures) + (not c.accepted) for c in self.cases) + (not self.empty_word_rejected)

    def report(self) -> str:
        lines = [f"lower-bound evidence: TM_anbncn embedded as a Case-1 mimic automaton (budget {self.budget})"]
        for c in self.cases:
            status = "accept" if c.accepted else "MISSED"
            lines.append(f"n={c.n}: a^n b^n c^n {status}; "
                         f"{len(c.perturbations) - len(c.failures)}/{len(c.perturbations)} perturbations rejected")
            lines += [f"  failure: {w}" for w in c.failures]
        lines.append(f"empty word rejected: {self.empty_word_rejected}")
        lines.append(f"failures: {self.failures}")
        return "\n".join(lines) + "\n"


def turing_lower_bound_demo(max_n: int = 6, per_n: int = 20, budget: int = 10**5) -> LowerBoundReport:
    """Show a mimic automaton accepting the non-context-free a^n b^n c^n.

    For each ``n`` the perturbations are ``per_n`` single edits of the
    member word, drawn with ``random.Random(n)`` from the sorted edit set.
    """
    ma = single_body_automaton(anbncn_tm(), "A_tm")

    def accepts(word: str) -> bool:
        return execute(ma, [tuple(word)], budget).outcome is Outcome.ACCEPT

    cases = []
    for n in range(1, max_n + 1):
        member = "a" * n + "b" * n + "c" * n
        edits = [w for w in single_edits(member) if not in_anbncn(w)]
        chosen = random.Random(n).sample(edits, min(per_n, len(edits)))
        failures = [w for w in chosen if accepts(w)]
        cases.append(LowerBoundCase(n, accepts(member), chosen, failures))
    return LowerBoundReport(cases, not accepts(""), budget)
