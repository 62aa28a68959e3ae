"""Small-step execution of a mimic automaton.

Three kinds of events make up a run:

1. a transition of the lower-layer automaton bound to the active body,
   one logical tick each;
2. a CA advance, fired ``|T_i| + tau`` ticks after the previous one;
3. a glue step between consecutive segments, which performs no
   computation: either the final state of the finished segment is
   identified with the initial state of the next one, or the finished
   segment's output word becomes the next one's input.

An epoch ends when its automaton accepts or when its ``|T_i|`` ticks run
out, whichever comes first.  An automaton still computing when its time
runs out can only continue on the next body if it sits in the glue source
state (its final state) of a state-identification glue; the unread input
is carried over.  Otherwise the run rejects with reason ``EpochTruncation``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .automata import (
    Configuration,
    Kind,
    Outcome,
    SequentialAutomaton,
    Transition,
    apply,
    check_word,
    explore,
    initial_configuration,
    is_accepting,
    payload,
)
from .cellular import epoch_boundaries
from .errors import HandoffOnReject
from .hierarchy import GluePolicy, MimicAutomaton, segments, upper_path

EPOCH_TRUNCATION = "EpochTruncation"
SEGMENT_REJECT = "SegmentReject"
BUDGET = "Budget"


@dataclass(frozen=True)
class SaStep:
    sa_name: str
    kind: Kind
    transition: Transition
    before: Configuration
    after: Configuration

    def describe(self) -> str:
        return f"{self.sa_name} {self.transition.describe(self.kind)}"


@dataclass(frozen=True)
class CaAdvance:
    before: tuple
    after: tuple

    def describe(self) -> str:
        return f"ca ({','.join(map(str, self.before))}) -> ({','.join(map(str, self.after))})"


@dataclass(frozen=True)
class Glue:
    source: str
    target: str
    carry: tuple = ()

    def describe(self) -> str:
        text = f"glue {self.source} -> {self.target}"
        if self.carry:
            text += " carry " + " ".join(self.carry)
        return text


@dataclass(frozen=True)
class Handoff:
    source_sa: str
    target_sa: str
    word: tuple

    def describe(self) -> str:
        return f"handoff {self.source_sa} -> {self.target_sa} [{' '.join(self.word)}]"


Payload = Union[SaStep, CaAdvance, Glue, Handoff]


@dataclass(frozen=True)
class ExecutionEvent:
    seq: int
    clock: int
    rule: int
    payload: Payload

    def line(self) -> str:
        return f"{self.seq}\t{self.clock}\t{self.rule}\t{self.payload.describe()}"


@dataclass(frozen=True)
class ExecutionTrace:
    """Totally ordered event log of one run plus its verdict.

    ``inputs`` are the segment words as given, ``stopped_at`` is the index
    of the segment in which the run ended and ``steps`` the rule-1 budget
    spent.  ``reason`` explains a non-accepting outcome.
    """

    events: tuple
    outcome: Outcome
    final_payload: tuple
    inputs: tuple
    seed: int | None
    stopped_at: int
    steps: int
    reason: str | None = None

    def serialize(self) -> str:
        return "".join(e.line() + "\n" for e in self.events)

    def count(self, rule: int) -> int:
        return sum(1 for e in self.events if e.rule == rule)


def parse_segments(text: str) -> tuple:
    """``"a1 a2 | b1"`` -> ``(("a1", "a2"), ("b1",))``."""
    return tuple(tuple(part.split()) for part in text.split("|"))


def normalize_input(inputs) -> tuple:
    """Segment words from a ``|``-separated string, a list of words or one flat word."""
    if isinstance(inputs, str):
        return parse_segments(inputs)
    inputs = list(inputs)
    if inputs and all(isinstance(s, str) for s in inputs):
        return (tuple(inputs),)
    return tuple(tuple(w) for w in inputs)


def handoff(prev_sa: SequentialAutomaton, prev_final: Configuration, next_sa: SequentialAutomaton,
            glue: GluePolicy, next_word: Sequence[str] = ()) -> Configuration:
    """Initial configuration of the next segment after a glue step."""
    if not is_accepting(prev_sa, prev_final):
        raise HandoffOnReject(f"{prev_sa.name} did not accept in {prev_final.describe()}")
    if GluePolicy(glue) is GluePolicy.STATE_IDENTIFICATION:
        return initial_configuration(next_sa, next_word)
    return initial_configuration(next_sa, payload(prev_sa, prev_final))


def execute(ma: MimicAutomaton, inputs, budget: int, seed: int | None = None) -> ExecutionTrace:
    """Run ``ma`` on segmented input, spending at most ``budget`` rule-1 steps."""
    if budget < 1:
        raise ValueError("budget must be at least 1")
    words = normalize_input(inputs)
    segs = segments(ma, seed)
    handoff_mode = ma.glue is GluePolicy.WORD_HANDOFF
    if handoff_mode and len(words) > 1:
        raise ValueError("word handoff takes a single unsegmented input word")
    if len(words) > max(len(segs), 1):
        raise ValueError(f"{len(words)} segment words given for {len(segs)} segments")
    final_upper = ma.upper.is_final(upper_path(ma)[-1])
    if not segs:
        outcome = Outcome.ACCEPT if final_upper else Outcome.REJECT
        return ExecutionTrace((), outcome, (), words, seed, 0, 0)

    bounds = epoch_boundaries(ma.time_model, len(segs) - 1)
    total = ma.total_cells
    events: list[ExecutionEvent] = []

    def emit(clock: int, rule: int, p: Payload) -> None:
        events.append(ExecutionEvent(len(events) + 1, clock, rule, p))

    def finish(outcome, i, final=(), reason=None):
        return ExecutionTrace(tuple(events), outcome, final, words, seed, i, budget - remaining, reason)

    for seg, w in zip(segs, words):
        check_word(seg.sa, w)

    remaining = budget
    word = words[0] if words else ()
    for i, seg in enumerate(segs):
        sa = seg.sa
        if not set(word) <= set(sa.input_alphabet):
            # only reachable through a carried or handed-off word
            return finish(Outcome.REJECT, i, reason="ForeignSymbols")
        start = bounds[i - 1] if i else 0
        limit = ma.time_model.duration(i)
        result = explore(sa, word, remaining)
        remaining -= result.steps
        path = result.trace
        truncated = limit is not None and len(path) > limit
        executed = path[:limit] if truncated else path
        for k, st in enumerate(executed, start=1):
            emit(start + k, 1, SaStep(sa.name, sa.kind, st.transition, st.before, st.after))
        config = executed[-1].after if executed else initial_configuration(sa, word)
        last = i == len(segs) - 1

        carry: tuple = ()
        if truncated:
            if last or handoff_mode or not _can_carry(sa, config):
                return finish(Outcome.REJECT, i, reason=EPOCH_TRUNCATION)
            carry = config.remaining
        elif result.outcome is Outcome.REJECT:
            return finish(Outcome.REJECT, i, reason=SEGMENT_REJECT)
        elif result.outcome is Outcome.BUDGET_EXHAUSTED:
            return finish(Outcome.BUDGET_EXHAUSTED, i, reason=BUDGET)

        if last:
            if final_upper:
                return finish(Outcome.ACCEPT, i, payload(sa, config))
            return finish(Outcome.REJECT, i, payload(sa, config), reason="UpperNotFinal")

        nxt = segs[i + 1]
        clock = bounds[i]
        emit(clock, 2, CaAdvance(seg.combined_ca(total).cells, nxt.combined_ca(total).cells))
        if handoff_mode:
            word = payload(sa, config)
            emit(clock, 3, Handoff(sa.name, nxt.sa.name, word))
        else:
            emit(clock, 3, Glue(config.state, nxt.sa.initial, carry))
            word = carry + (words[i + 1] if i + 1 < len(words) else ())
    raise AssertionError("unreachable")


def _can_carry(sa: SequentialAutomaton, config: Configuration) -> bool:
    return sa.kind in (Kind.FSA, Kind.PDA) and sa.is_final(config.state)


@dataclass(frozen=True)
class ReplayVerdict:
    ok: bool
    seq: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def replay(ma: MimicAutomaton, trace: ExecutionTrace) -> ReplayVerdict:
    """Re-derive every event of ``trace`` from its predecessors.

    Returns a falsy verdict naming the first position (1-based sequence
    number) at which the log stops being a legal run.
    """
    segs = segments(ma, trace.seed)
    if not segs:
        return ReplayVerdict(not trace.events, 1 if trace.events else None)
    bounds = epoch_boundaries(ma.time_model, len(segs) - 1)
    total = ma.total_cells
    handoff_mode = ma.glue is GluePolicy.WORD_HANDOFF
    words = trace.inputs

    i = 0
    sa = segs[0].sa
    config = initial_configuration(sa, words[0] if words else ())
    ticks = 0
    glue_pending = False
    last_clock = 0

    for pos, ev in enumerate(trace.events, start=1):
        def bad(reason):
            return ReplayVerdict(False, pos, reason)

        if ev.seq != pos:
            return bad(f"sequence number {ev.seq} at position {pos}")
        if ev.clock < last_clock:
            return bad("clock went backwards")
        start = bounds[i - 1] if i else 0
        limit = ma.time_model.duration(i)
        p = ev.payload

        if ev.rule == 1:
            if glue_pending or not isinstance(p, SaStep):
                return bad("automaton step while a glue step is due")
            if p.sa_name != sa.name or p.transition not in sa.transitions:
                return bad(f"transition not declared by active automaton {sa.name}")
            if p.before != config or apply(sa, p.transition, config) != p.after:
                return bad("transition not enabled in the current configuration")
            ticks += 1
            if limit is not None and ticks > limit:
                return bad("step beyond the epoch duration")
            if ev.clock != start + ticks:
                return bad(f"clock {ev.clock}, expected {start + ticks}")
            config = p.after
        elif ev.rule == 2:
            if glue_pending or i + 1 >= len(segs) or not isinstance(p, CaAdvance):
                return bad("unexpected CA advance")
            done = is_accepting(sa, config) or (
                not handoff_mode and ticks == limit and _can_carry(sa, config))
            if not done:
                return bad("CA advanced before the segment finished")
            if ev.clock != bounds[i]:
                return bad(f"CA advance at clock {ev.clock}, boundary is {bounds[i]}")
            if (p.before, p.after) != (segs[i].combined_ca(total).cells, segs[i + 1].combined_ca(total).cells):
                return bad("CA advance does not follow the schedule")
            glue_pending = True
        elif ev.rule == 3:
            if not glue_pending:
                return bad("glue step without a preceding CA advance")
            if ev.clock != bounds[i]:
                return bad("glue step off the epoch boundary")
            nxt = segs[i + 1].sa
            if handoff_mode:
                expected = Handoff(sa.name, nxt.name, payload(sa, config))
                next_word = expected.word
            else:
                carry = () if is_accepting(sa, config) else config.remaining
                expected = Glue(config.state, nxt.initial, carry)
                next_word = carry + (words[i + 1] if i + 1 < len(words) else ())
            if p != expected:
                return bad(f"glue payload {p.describe()}, expected {expected.describe()}")
            i += 1
            sa = nxt
            config = initial_configuration(sa, next_word)
            ticks = 0
            glue_pending = False
        else:
            return bad(f"unknown rule set {ev.rule}")
        last_clock = ev.clock

    if trace.outcome is Outcome.ACCEPT and not (i == len(segs) - 1 and is_accepting(sa, config)):
        return ReplayVerdict(False, len(trace.events) + 1, "accepting outcome without an accepting final segment")
    return ReplayVerdict(True)
