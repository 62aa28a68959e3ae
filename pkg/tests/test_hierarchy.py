import random

import pytest
from hypothesis import given, settings, strategies as st

from _gen import random_case4
from mimicauto.automata import Kind, SequentialAutomaton, Transition, fsa
from mimicauto.catalog import anbncn_tm, chain_automaton, sa1, sa2, single_body_automaton
from mimicauto.cellular import CellularConfiguration, RoundRobinSchedule, TableSchedule, TimeModel
from mimicauto.errors import AlphabetMismatch, DepthUnsupported, GlueIncompatible, MissingBinding
from mimicauto.hierarchy import (
    DhrBinding,
    GluePolicy,
    KeyMode,
    MimicAutomaton,
    build,
    check,
    granularity,
    segments,
)

UPPER2 = fsa("U", ["H1", "H2", "E"], ["next"], [("H1", "next", "H2"), ("H2", "next", "E")], "H1", ["E"])


def one_body(sa, name="C"):
    return DhrBinding(name, CellularConfiguration.one_hot(1, 1), TableSchedule(1, (1,)), 1, {1: sa})


def test_chain_assembly_valid():
    ma = chain_automaton()
    assert check(ma) == []
    assert [s.sa.name for s in segments(ma)] == ["SA1", "SA2", "SA3", "SA4"]
    assert [s.global_body for s in segments(ma)] == [1, 2, 3, 4]
    assert ma.glue is GluePolicy.STATE_IDENTIFICATION


def test_missing_binding():
    with pytest.raises(MissingBinding):
        build(UPPER2, {"H1": one_body(sa1())}, TimeModel((3,)))


def test_fsa_pda_state_identification_incompatible():
    pda = SequentialAutomaton(Kind.PDA, "P", ["p"], ["x"], [Transition("p", "p", read="x")], "p", ["p"],
                              stack_alphabet=["Z"], stack_start="Z")
    with pytest.raises(GlueIncompatible):
        build(UPPER2, {"H1": one_body(sa1(), "C1"), "H2": one_body(pda, "C2")}, TimeModel((3,)),
              GluePolicy.STATE_IDENTIFICATION)


def test_default_glue_follows_kinds():
    tm = anbncn_tm()
    consumer = fsa("F", ["f"], ["X", "Y", "Z"], [("f", "X", "f"), ("f", "Y", "f"), ("f", "Z", "f")], "f", ["f"])
    ma = build(UPPER2, {"H1": one_body(tm, "C1"), "H2": one_body(consumer, "C2")}, TimeModel((40,)))
    assert ma.glue is GluePolicy.WORD_HANDOFF
    assert chain_automaton().glue is GluePolicy.STATE_IDENTIFICATION


def test_body_keyed_alphabet_mismatch():
    b = DhrBinding("C", CellularConfiguration.one_hot(2, 1), RoundRobinSchedule(2), 2, {1: sa1(), 2: sa2()},
                   KeyMode.BODY)
    with pytest.raises(AlphabetMismatch):
        build(fsa("U", ["H", "E"], ["n"], [("H", "n", "E")], "H", ["E"]), {"H": b}, TimeModel((3,)))


def test_nested_automaton_rejected():
    inner = single_body_automaton(sa1())
    with pytest.raises(DepthUnsupported):
        build(UPPER2, {"H1": one_body(inner, "C1"), "H2": one_body(sa2(), "C2")}, TimeModel((3,)))


def test_cyclic_upper_rejected():
    upper = fsa("U", ["H", "E"], ["n"], [("H", "n", "E"), ("E", "n", "H")], "H", ["E"])
    problems = check(MimicAutomaton(upper, {"H": one_body(sa1())}, TimeModel(())))
    assert any("acyclic" in v.message for v in problems)


def test_uncovered_epoch_is_missing_binding():
    b = DhrBinding("C", CellularConfiguration.one_hot(2, 1), TableSchedule(2, (1, 2)), 2, {1: sa1()})
    with pytest.raises(MissingBinding):
        build(fsa("U", ["H", "E"], ["n"], [("H", "n", "E")], "H", ["E"]), {"H": b}, TimeModel((3,)))


def test_granularity_chain():
    g = granularity(chain_automaton())
    assert (g.depth, g.ca_count, g.distinct_sa_count) == (2, 2, 4)


def test_granularity_single():
    g = granularity(single_body_automaton(sa1()))
    assert (g.depth, g.ca_count, g.distinct_sa_count) == (2, 1, 1)


def test_granularity_reports_epoch_count():
    m = 5
    b = DhrBinding("C1", CellularConfiguration.one_hot(2, 1), RoundRobinSchedule(2), m, {e: sa1() for e in range(1, m + 1)})
    ma = build(fsa("U", ["H1", "E"], ["n"], [("H1", "n", "E")], "H1", ["E"]), {"H1": b}, TimeModel((3,) * (m - 1)))
    assert granularity(ma).cas[0].states == m


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_built_automata_recheck_clean_and_leaves_cover_segments(seed):
    ma = random_case4(random.Random(seed), "G")
    assert check(ma) == []
    g = granularity(ma)
    pairs = {(s.upper_state, s.epoch) for s in segments(ma)}
    assert g.leaf_count == len(pairs)
    for s in segments(ma):
        assert ma.bindings[s.upper_state].sa_for(s.epoch, s.body) is s.sa
