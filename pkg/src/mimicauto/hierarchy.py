"""Static binding tree of a mimic automaton.

The upper-layer FSA lists macro-phases.  Each non-final macro-phase is bound
to a DHR structure: a scheduling CA plus the lower-layer automata that run
while a given CA state holds.  The tree has no dynamics of its own; the
executor walks it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Mapping, NamedTuple, Union

from . import errors
from .automata import Kind, SequentialAutomaton, validate
from .cellular import (
    CellularConfiguration,
    ScheduleFunction,
    SeededRandomSchedule,
    TableSchedule,
    TimeModel,
    active_body,
    body_sequence,
)


class GluePolicy(str, enum.Enum):
    STATE_IDENTIFICATION = "state-identification"
    WORD_HANDOFF = "word-handoff"


class KeyMode(str, enum.Enum):
    EPOCH = "epoch"
    BODY = "body"


class Violation(NamedTuple):
    error: type
    message: str


@dataclass(frozen=True)
class DhrBinding:
    """One DHR structure: its scheduling CA and the automata it runs.

    ``sas`` maps either epoch numbers or body indices (both 1-based, see
    ``key``) to the lower-layer automaton active in that CA state.
    """

    ca_name: str
    initial: CellularConfiguration
    schedule: ScheduleFunction
    epochs: int
    sas: Mapping[int, Union[SequentialAutomaton, "MimicAutomaton"]]
    key: KeyMode = KeyMode.EPOCH

    def __post_init__(self):
        object.__setattr__(self, "key", KeyMode(self.key))
        object.__setattr__(self, "sas", dict(self.sas))

    @property
    def n(self) -> int:
        return self.initial.n

    def sa_for(self, epoch: int, body: int):
        return self.sas.get(epoch if self.key is KeyMode.EPOCH else body)

    def possible_keys(self) -> list[int]:
        """Keys the schedule can ask for within ``epochs`` CA states."""
        if self.key is KeyMode.EPOCH:
            return list(range(1, self.epochs + 1))
        if isinstance(self.schedule, SeededRandomSchedule):
            # any body can be drawn under a different seed
            return list(range(1, self.n + 1))
        return sorted(set(body_sequence(self.initial, self.schedule, self.epochs)))


@dataclass(frozen=True)
class MimicAutomaton:
    upper: SequentialAutomaton
    bindings: Mapping[str, DhrBinding]
    time_model: TimeModel = field(default_factory=TimeModel)
    glue: GluePolicy = GluePolicy.STATE_IDENTIFICATION

    @property
    def name(self) -> str:
        return self.upper.name

    def ordered_bindings(self) -> list[tuple[str, DhrBinding]]:
        """Bindings in upper-state declaration order."""
        return [(s, self.bindings[s]) for s in self.upper.states if s in self.bindings]

    def ca_offsets(self) -> dict[str, int]:
        """Offset of each binding's cells inside the combined CA vector."""
        offsets, total = {}, 0
        for state, b in self.ordered_bindings():
            offsets[state] = total
            total += b.n
        return offsets

    @property
    def total_cells(self) -> int:
        return sum(b.n for b in self.bindings.values())

    def lower_automata(self) -> list[SequentialAutomaton]:
        """Distinct lower-layer automata in binding order."""
        seen: list = []
        for _, b in self.ordered_bindings():
            for k in sorted(b.sas):
                sa = b.sas[k]
                if sa not in seen:
                    seen.append(sa)
        return seen


@dataclass(frozen=True)
class Segment:
    """One (macro-phase, epoch) slot of a run, in execution order."""

    index: int
    upper_state: str
    epoch: int
    body: int
    global_body: int
    sa: SequentialAutomaton

    def combined_ca(self, total_cells: int) -> CellularConfiguration:
        return CellularConfiguration.one_hot(total_cells, self.global_body, self.index)


def effective_schedule(phi: ScheduleFunction, seed: int | None) -> ScheduleFunction:
    if seed is not None and isinstance(phi, SeededRandomSchedule):
        return replace(phi, seed=seed)
    return phi


def upper_path(ma: MimicAutomaton) -> list[str]:
    """Macro-phases visited: from the initial state, first declared successor each time."""
    path = [ma.upper.initial]
    while True:
        out = ma.upper.outgoing(path[-1])
        if not out or len(path) > len(ma.upper.states):
            return path
        path.append(out[0].target)


def segments(ma: MimicAutomaton, seed: int | None = None) -> list[Segment]:
    """Expand the binding tree into the ordered list of segments of a run."""
    offsets = ma.ca_offsets()
    out: list[Segment] = []
    for state in upper_path(ma):
        b = ma.bindings.get(state)
        if b is None:
            continue
        phi = effective_schedule(b.schedule, seed)
        for epoch, body in enumerate(body_sequence(b.initial, phi, b.epochs), start=1):
            out.append(Segment(len(out), state, epoch, body, offsets[state] + body, b.sa_for(epoch, body)))
    return out


def ca_is_empty(ma: MimicAutomaton) -> bool:
    """True when no CA transition can ever fire: a single segment overall."""
    bound = [s for s in upper_path(ma) if s in ma.bindings]
    return len(bound) <= 1 and all(ma.bindings[s].epochs == 1 for s in bound)


# --------------------------------------------------------------------------
# structural checks


def _is_acyclic(upper: SequentialAutomaton) -> bool:
    state = {s: 0 for s in upper.states}

    def visit(s):
        state[s] = 1
        for tr in upper.outgoing(s):
            t = tr.target
            if state.get(t) == 1:
                return False
            if state.get(t) == 0 and not visit(t):
                return False
        state[s] = 2
        return True

    return all(visit(s) for s in upper.states if state[s] == 0)


def _binding_violations(state: str, b: DhrBinding) -> list[Violation]:
    out: list[Violation] = []
    where = f"binding {state}/{b.ca_name}"
    for k, sa in sorted(b.sas.items()):
        if isinstance(sa, MimicAutomaton):
            out.append(Violation(errors.DepthUnsupported,
                                 f"{where}: nested mimic automaton at key {k}; only depth 2 is supported"))
            continue
        out.extend(Violation(errors.BuildError, p) for p in validate(sa))
    if b.schedule.n != b.n:
        out.append(Violation(errors.BuildError,
                             f"{where}: schedule covers {b.schedule.n} bodies but the CA has {b.n} cells"))
        return out
    try:
        first = active_body(b.initial)
    except errors.NotOneHot:
        out.append(Violation(errors.BuildError, f"{where}: initial CA state {b.initial.describe()} is not one-hot"))
        return out
    if b.epochs < 1:
        out.append(Violation(errors.BuildError, f"{where}: epoch count must be at least 1"))
        return out
    if isinstance(b.schedule, TableSchedule):
        if b.schedule.table[0] != first:
            out.append(Violation(errors.BuildError,
                                 f"{where}: initial body {first} differs from table start {b.schedule.table[0]}"))
        if b.epochs > len(b.schedule.table):
            out.append(Violation(errors.BuildError,
                                 f"{where}: {b.epochs} epochs but the table has {len(b.schedule.table)} entries"))
            return out
    for k in b.possible_keys():
        if k not in b.sas:
            out.append(Violation(errors.MissingBinding, f"{where}: no automaton bound to {b.key.value} {k}"))
    if b.key is KeyMode.BODY:
        alphabets = {frozenset(sa.input_alphabet) for sa in b.sas.values()
                     if isinstance(sa, SequentialAutomaton)}
        if len(alphabets) > 1:
            out.append(Violation(errors.AlphabetMismatch,
                                 f"{where}: body-keyed automata must share one input alphabet"))
    return out


def check(ma: MimicAutomaton) -> list[Violation]:
    """Every structural violation of ``ma``; empty for a well-formed automaton."""
    out: list[Violation] = []
    upper = ma.upper
    if upper.kind is not Kind.FSA:
        out.append(Violation(errors.BuildError, f"upper automaton {upper.name} must be an FSA"))
    out.extend(Violation(errors.BuildError, p) for p in validate(upper))
    if out:
        return out
    if not _is_acyclic(upper):
        out.append(Violation(errors.BuildError, f"upper automaton {upper.name} must be acyclic"))
    if not ma.bindings:
        out.append(Violation(errors.MissingBinding, "no DHR binding declared"))
    for state in ma.bindings:
        if state not in upper.states:
            out.append(Violation(errors.BuildError, f"binding for undeclared upper state {state!r}"))
    for state in upper.states:
        if state not in ma.bindings and not upper.is_final(state):
            out.append(Violation(errors.MissingBinding, f"non-final upper state {state!r} has no binding"))
    for state, b in ma.ordered_bindings():
        out.extend(_binding_violations(state, b))
    if out:
        return out

    segs = segments(ma)
    if ma.glue is GluePolicy.STATE_IDENTIFICATION and len(segs) > 1:
        lowers = ma.lower_automata()
        kinds = sorted({sa.kind.value for sa in lowers})
        if len(kinds) > 1:
            out.append(Violation(errors.GlueIncompatible,
                                 f"state identification needs one automaton kind, found {', '.join(kinds)}"))
        for sa in lowers:
            if len(sa.finals) > 1:
                out.append(Violation(errors.GlueIncompatible,
                                     f"{sa.name}: state identification needs at most one final state"))
    n = len(ma.time_model.durations)
    if n not in (len(segs) - 1, len(segs)):
        out.append(Violation(errors.BuildError,
                             f"time model has {n} durations for {len(segs)} epochs "
                             f"(expected {len(segs) - 1} or {len(segs)})"))
    return out


def default_glue(bindings: Mapping[str, DhrBinding]) -> GluePolicy:
    kinds = {sa.kind for b in bindings.values() for sa in b.sas.values()
             if isinstance(sa, SequentialAutomaton)}
    return GluePolicy.STATE_IDENTIFICATION if len(kinds) <= 1 else GluePolicy.WORD_HANDOFF


def build(upper: SequentialAutomaton, bindings: Mapping[str, DhrBinding],
          time_model: TimeModel | None = None, glue: GluePolicy | str | None = None) -> MimicAutomaton:
    """Assemble and check a mimic automaton.

    Raises the :class:`~mimicauto.errors.BuildError` subclass matching the
    first violation found; ``exc.violations`` lists all of them.
    """
    glue = default_glue(bindings) if glue is None else GluePolicy(glue)
    ma = MimicAutomaton(upper, dict(bindings), time_model or TimeModel(), glue)
    problems = check(ma)
    if problems:
        raise problems[0].error(problems)
    return ma


# --------------------------------------------------------------------------
# granularity


@dataclass(frozen=True)
class LeafNode:
    epoch: int
    body: int
    sa_name: str


@dataclass(frozen=True)
class CaNode:
    upper_state: str
    ca_name: str
    states: int
    leaves: tuple


@dataclass(frozen=True)
class Granularity:
    depth: int
    root: str
    cas: tuple

    @property
    def ca_count(self) -> int:
        return len(self.cas)

    @property
    def leaf_count(self) -> int:
        return sum(len(c.leaves) for c in self.cas)

    @property
    def distinct_sa_count(self) -> int:
        return len({leaf.sa_name for c in self.cas for leaf in c.leaves})

    def describe(self) -> str:
        lines = [f"{self.root} (upper FSA, depth {self.depth})"]
        for c in self.cas:
            lines.append(f"  {c.upper_state} -> CA {c.ca_name} ({c.states} states)")
            for leaf in c.leaves:
                lines.append(f"    epoch {leaf.epoch} body {leaf.body}: {leaf.sa_name}")
        return "\n".join(lines)


def _reachable_upper(upper: SequentialAutomaton) -> list[str]:
    seen = [upper.initial]
    for s in seen:
        for tr in upper.outgoing(s):
            if tr.target not in seen:
                seen.append(tr.target)
    return [s for s in upper.states if s in seen]


def granularity(ma: MimicAutomaton) -> Granularity:
    cas = []
    for state in _reachable_upper(ma.upper):
        b = ma.bindings.get(state)
        if b is None:
            continue
        bodies = body_sequence(b.initial, b.schedule, b.epochs)
        leaves = tuple(LeafNode(e, body, b.sa_for(e, body).name) for e, body in enumerate(bodies, start=1))
        cas.append(CaNode(state, b.ca_name, b.epochs, leaves))
    return Granularity(2, ma.upper.name, tuple(cas))
