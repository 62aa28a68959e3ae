"""Ready-made automata: four chained segment FSAs and an a^n b^n c^n TM."""

from __future__ import annotations

from .automata import SequentialAutomaton, fsa, tm


def sa1() -> SequentialAutomaton:
    return fsa(
        "SA1",
        ["s0", "s1", "s2", "s3"],
        ["a1", "a2", "a3", "a4"],
        [("s0", "a1", "s1"), ("s1", "a2", "s2"), ("s1", "a3", "s3"), ("s2", "a4", "s3")],
        "s0",
        ["s3"],
    )


def sa2() -> SequentialAutomaton:
    return fsa(
        "SA2",
        ["s4", "s5", "s6", "s7"],
        ["b1", "b2", "b3", "b4"],
        [("s4", "b1", "s5"), ("s5", "b2", "s6"), ("s5", "b3", "s7"), ("s6", "b4", "s7")],
        "s4",
        ["s7"],
    )


def sa3() -> SequentialAutomaton:
    return fsa(
        "SA3",
        ["s8", "s9", "s10", "s11"],
        ["c1", "c2", "c3", "c4", "c5"],
        [("s8", "c1", "s10"), ("s8", "c2", "s9"), ("s8", "c3", "s11"),
         ("s10", "c4", "s11"), ("s9", "c5", "s11")],
        "s8",
        ["s11"],
    )


def sa4() -> SequentialAutomaton:
    return fsa(
        "SA4",
        ["s12", "s13", "s14", "s15"],
        ["d1", "d2", "d3", "d4"],
        [("s12", "d1", "s13"), ("s13", "d2", "s14"), ("s14", "d3", "s15"), ("s12", "d4", "s15")],
        "s12",
        ["s15"],
    )


def chain_segments() -> list[SequentialAutomaton]:
    return [sa1(), sa2(), sa3(), sa4()]


def anbncn_tm() -> SequentialAutomaton:
    """Marking TM deciding { a^n b^n c^n : n >= 1 }.

    Each pass marks one a as X, one b as Y and one c as Z, then returns to
    the leftmost unmarked a.  Once no a is left the machine checks that only
    Y and Z remain.  The empty word is rejected.
    """
    rules = [
        ("q0", "a", "X", "R", "q1"),
        ("q0", "Y", "Y", "R", "q4"),
        ("q1", "a", "a", "R", "q1"),
        ("q1", "Y", "Y", "R", "q1"),
        ("q1", "b", "Y", "R", "q2"),
        ("q2", "b", "b", "R", "q2"),
        ("q2", "Z", "Z", "R", "q2"),
        ("q2", "c", "Z", "L", "q3"),
        ("q3", "a", "a", "L", "q3"),
        ("q3", "b", "b", "L", "q3"),
        ("q3", "Y", "Y", "L", "q3"),
        ("q3", "Z", "Z", "L", "q3"),
        ("q3", "X", "X", "R", "q0"),
        ("q4", "Y", "Y", "R", "q4"),
        ("q4", "Z", "Z", "R", "q5"),
        ("q5", "Z", "Z", "R", "q5"),
        ("q5", "_", "_", "R", "qa"),
    ]
    return tm(
        "TM_anbncn",
        ["q0", "q1", "q2", "q3", "q4", "q5", "qa"],
        ["a", "b", "c"],
        ["a", "b", "c", "X", "Y", "Z", "_"],
        rules,
        "q0",
        ["qa"],
    )


def in_anbncn(word) -> bool:
    """Counting oracle for a^n b^n c^n, n >= 1."""
    word = "".join(word)
    n = len(word) // 3
    return n >= 1 and len(word) % 3 == 0 and word == "a" * n + "b" * n + "c" * n


def _single_upper(name: str) -> SequentialAutomaton:
    return fsa(name, ["M"], ["next"], [], "M", ["M"])


def chain_automaton(durations=(3, 3, 3), tau: int = 1):
    """Two sequential DHR structures, two bodies each, running SA1..SA4."""
    from .cellular import CellularConfiguration, TableSchedule, TimeModel
    from .hierarchy import DhrBinding, GluePolicy, build

    upper = fsa("A_s", ["H1", "H2"], ["next"], [("H1", "next", "H2")], "H1", ["H2"])
    segs = chain_segments()
    bindings = {
        "H1": DhrBinding("C1", CellularConfiguration.one_hot(2, 1), TableSchedule(2, (1, 2)), 2,
                         {1: segs[0], 2: segs[1]}),
        "H2": DhrBinding("C2", CellularConfiguration.one_hot(2, 1), TableSchedule(2, (1, 2)), 2,
                         {1: segs[2], 2: segs[3]}),
    }
    return build(upper, bindings, TimeModel(durations, tau), GluePolicy.STATE_IDENTIFICATION)


def single_body_automaton(sa: SequentialAutomaton, name: str = "A"):
    """Case-1 shape: one macro-phase, one body, an empty CA."""
    from .cellular import CellularConfiguration, TableSchedule, TimeModel
    from .hierarchy import DhrBinding, build

    binding = DhrBinding("C0", CellularConfiguration.one_hot(1, 1), TableSchedule(1, (1,)), 1, {1: sa})
    return build(_single_upper(name), {"M": binding}, TimeModel(()))
