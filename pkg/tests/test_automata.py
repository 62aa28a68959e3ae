import itertools

import pytest
from hypothesis import given, settings, strategies as st

from mimicauto.automata import (
    Configuration,
    Kind,
    Outcome,
    SequentialAutomaton,
    Transition,
    fsa,
    initial_configuration,
    output_word,
    run,
    step,
    successors,
    tm,
    validate,
)
from mimicauto.catalog import anbncn_tm, in_anbncn, sa1, sa3
from mimicauto.errors import ConfigurationMismatch, NotHalted, UndeclaredSymbol


def fsa_cfg(state, *rest):
    return Configuration(Kind.FSA, state, word=tuple(rest))


# --- validate


def test_sa1_is_valid():
    assert validate(sa1()) == []


def test_initial_outside_states():
    a = fsa("bad", ["s0"], ["a"], [], "s9", [])
    problems = validate(a)
    assert len(problems) == 1
    assert "s9" in problems[0]


def test_undeclared_symbol_in_transition():
    a = fsa("bad", ["s0", "s1"], ["a"], [("s0", "z", "s1")], "s0", ["s1"])
    problems = validate(a)
    assert len(problems) == 1
    assert "'z'" in problems[0] or "z" in problems[0]


def test_lba_marker_rules():
    ok = SequentialAutomaton(Kind.LBA, "L", ["p", "h"], ["a"],
                             [Transition("p", "p", read="a", write="a", move="R"),
                              Transition("p", "h", read=">", write=">", move="L")],
                             "p", ["h"], tape_alphabet=["a"])
    assert validate(ok) == []
    overwrite = SequentialAutomaton(Kind.LBA, "L", ["p"], ["a"],
                                    [Transition("p", "p", read=">", write="a", move="L")],
                                    "p", [], tape_alphabet=["a"])
    past = SequentialAutomaton(Kind.LBA, "L", ["p"], ["a"],
                               [Transition("p", "p", read=">", write=">", move="R")],
                               "p", [], tape_alphabet=["a"])
    assert validate(overwrite)
    assert validate(past)


def test_halting_final_required_for_tape_machines():
    a = tm("T", ["q", "f"], ["a"], ["a", "_"], [("f", "a", "a", "R", "q")], "q", ["f"])
    assert any("f" in p for p in validate(a))


# --- step


def test_step_first_transition():
    assert step(sa1(), fsa_cfg("s0", "a1", "a2", "a4")) == {Configuration(Kind.FSA, "s1", ("a1", "a2", "a4"), 1)}


def test_step_halted_final():
    assert step(sa1(), fsa_cfg("s3")) == set()


def test_step_sa3_branch():
    got = step(sa3(), fsa_cfg("s8", "c1", "c4"))
    assert {(c.state, c.remaining) for c in got} == {("s10", ("c4",))}


def test_step_kind_mismatch():
    with pytest.raises(ConfigurationMismatch):
        step(sa1(), Configuration(Kind.TM, "s0", tape=("a1",)))


# --- run


def test_run_sa1_accepts_with_path():
    r = run(sa1(), ["a1", "a2", "a4"], 100)
    assert r.outcome is Outcome.ACCEPT
    assert [s.before.state for s in r.trace] + [r.trace[-1].after.state] == ["s0", "s1", "s2", "s3"]


def test_run_sa1_rejects():
    assert run(sa1(), ["a2"], 100).outcome is Outcome.REJECT


def test_run_undeclared_symbol():
    with pytest.raises(UndeclaredSymbol):
        run(sa1(), ["zz"], 10)


def test_run_budget_must_be_positive():
    with pytest.raises(ValueError):
        run(sa1(), [], 0)


def test_tm_anbncn_accepts_aabbcc():
    r = run(anbncn_tm(), list("aabbcc"), 10**5)
    assert r.outcome is Outcome.ACCEPT
    assert r.steps == 23


def test_tm_matches_counting_oracle():
    machine = anbncn_tm()
    for n in range(0, 8):
        for w in itertools.product("abc", repeat=n):
            got = run(machine, w, 10**5).outcome
            assert got is (Outcome.ACCEPT if in_anbncn(w) else Outcome.REJECT), w


def test_budget_exhausted_on_loop():
    looper = tm("Loop", ["q", "f"], ["a"], ["a", "_"],
                [("q", "a", "a", "R", "q"), ("q", "_", "_", "L", "q")], "q", ["f"])
    r = run(looper, ["a"], 50)
    assert r.outcome is Outcome.BUDGET_EXHAUSTED
    assert r.steps == 50


def test_pda_balanced():
    ts = [Transition("p", "p", read="x", pop=("Z",), push=("A", "Z")),
          Transition("p", "p", read="x", pop=("A",), push=("A", "A")),
          Transition("p", "q", read="y", pop=("A",), push=()),
          Transition("q", "q", read="y", pop=("A",), push=()),
          Transition("q", "f", read=None, pop=("Z",), push=("Z",))]
    pda = SequentialAutomaton(Kind.PDA, "P", ["p", "q", "f"], ["x", "y"], ts, "p", ["f"],
                              stack_alphabet=["A", "Z"], stack_start="Z")
    assert validate(pda) == []
    for n in range(0, 5):
        for w in itertools.product("xy", repeat=n):
            expected = n >= 2 and w == ("x",) * (n // 2) + ("y",) * (n // 2)
            assert (run(pda, w, 1000).outcome is Outcome.ACCEPT) == expected, w


# --- output_word


def test_output_word_fsa_identity():
    r = run(sa1(), ["a1", "a3"], 10)
    assert output_word(sa1(), r.final) == ("a1", "a3")


def test_output_word_strips_blanks():
    t = tm("T", ["h"], ["x"], ["x", "_"], [], "h", ["h"])
    assert output_word(t, Configuration(Kind.TM, "h", tape=("x", "x", "_"), head=2)) == ("x", "x")


def test_output_word_marked_tape():
    r = run(anbncn_tm(), list("abc"), 1000)
    assert output_word(anbncn_tm(), r.final) == ("X", "Y", "Z")


def test_output_word_not_halted():
    with pytest.raises(NotHalted):
        output_word(sa1(), initial_configuration(sa1(), ["a1"]))


# --- properties


def naive_accepts(a, state, word):
    if not word:
        return a.is_final(state)
    return any(naive_accepts(a, t.target, word[1:]) for t in a.outgoing(state) if t.read == word[0])


@st.composite
def small_fsas(draw):
    n = draw(st.integers(1, 4))
    states = [f"q{i}" for i in range(n)]
    triples = draw(st.lists(st.tuples(st.sampled_from(states), st.sampled_from("xy"), st.sampled_from(states)),
                            max_size=10, unique=True))
    finals = draw(st.lists(st.sampled_from(states), unique=True))
    return fsa("R", states, ["x", "y"], triples, "q0", finals)


@settings(max_examples=40, deadline=None)
@given(small_fsas())
def test_run_agrees_with_naive_recursion(a):
    for n in range(0, 9):
        for w in itertools.product("xy", repeat=n):
            assert (run(a, w, 10**6).outcome is Outcome.ACCEPT) == naive_accepts(a, "q0", w)


@settings(max_examples=40, deadline=None)
@given(small_fsas(), st.lists(st.sampled_from("xy"), max_size=6), st.integers(1, 40))
def test_budget_monotone(a, w, b):
    first = run(a, w, b).outcome
    if first is not Outcome.BUDGET_EXHAUSTED:
        assert run(a, w, b + 25).outcome is first


@settings(max_examples=40, deadline=None)
@given(small_fsas(), st.lists(st.sampled_from("xy"), max_size=6))
def test_run_is_deterministic_and_sound(a, w):
    r1, r2 = run(a, w, 500), run(a, w, 500)
    assert r1.serialize() == r2.serialize()
    for s in r1.trace:
        assert s.transition in a.transitions
        assert s.after in {nxt for tr, nxt in successors(a, s.before) if tr == s.transition}


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from("ab"), max_size=8))
def test_lba_tape_length_constant(w):
    lba = SequentialAutomaton(Kind.LBA, "Swap", ["p", "back", "h"], ["a", "b"],
                              [Transition("p", "p", read="a", write="b", move="R"),
                               Transition("p", "p", read="b", write="a", move="R"),
                               Transition("p", "back", read=">", write=">", move="L"),
                               Transition("back", "back", read="a", write="a", move="L"),
                               Transition("back", "back", read="b", write="b", move="L"),
                               Transition("back", "h", read="<", write="<", move="R")],
                              "p", ["h"], tape_alphabet=["a", "b"])
    assert validate(lba) == []
    r = run(lba, w, 1000)
    assert r.outcome is Outcome.ACCEPT
    for s in r.trace:
        assert len(s.after.tape) == len(w) + 2
    swapped = tuple("b" if c == "a" else "a" for c in w)
    assert output_word(lba, r.final) == swapped
