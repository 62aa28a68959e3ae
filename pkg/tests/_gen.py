"""Random small mimic automata and inputs shared by the test modules."""

from __future__ import annotations

import random

from mimicauto.automata import Kind, SequentialAutomaton, Transition, fsa
from mimicauto.cellular import (
    CellularConfiguration,
    RoundRobinSchedule,
    SeededRandomSchedule,
    TableSchedule,
    TimeModel,
)
from mimicauto.hierarchy import DhrBinding, GluePolicy, KeyMode, build


def random_fsa(rng: random.Random, name: str, alphabet=("x", "y"), max_states: int = 5,
               density: float = 0.6) -> SequentialAutomaton:
    """FSA with one final state; may be nondeterministic."""
    n = rng.randint(1, max_states)
    states = [f"{name}q{i}" for i in range(n)]
    triples = []
    for s in states:
        for a in alphabet:
            for t in states:
                if rng.random() < density / n * 1.5:
                    triples.append((s, a, t))
    return fsa(name, states, alphabet, triples, states[0], [rng.choice(states)])


def random_case4(rng: random.Random, tag: str = "M", alphabet=("x", "y"), min_duration: int = 8):
    """All-FSA automaton with 1..3 segments split over 1..2 upper states."""
    k = rng.randint(1, 3)
    sas = [random_fsa(rng, f"{tag}S{i}", alphabet) for i in range(k)]
    split = [k] if k == 1 or rng.random() < 0.5 else [1, k - 1]
    uppers = [f"{tag}H{i}" for i in range(len(split))] + [f"{tag}Hend"]
    upper = fsa(f"{tag}U", uppers, ["next"], [(a, "next", b) for a, b in zip(uppers, uppers[1:])],
                uppers[0], [uppers[-1]])
    bindings = {}
    used = 0
    for h, count in zip(uppers, split):
        chunk = sas[used:used + count]
        used += count
        cells = rng.randint(count, count + 1)
        if rng.random() < 0.5:
            table = tuple(rng.randint(1, cells) for _ in range(count))
            schedule, first = TableSchedule(cells, table), table[0]
        else:
            first = rng.randint(1, cells)
            schedule = RoundRobinSchedule(cells)
        bindings[h] = DhrBinding(f"C_{h}", CellularConfiguration.one_hot(cells, first), schedule, count,
                                 {e: sa for e, sa in enumerate(chunk, start=1)})
    durations = tuple(rng.randint(min_duration, min_duration + 4) for _ in range(k - 1))
    return build(upper, bindings, TimeModel(durations, rng.randint(1, 2)), GluePolicy.STATE_IDENTIFICATION)


def random_pda(rng: random.Random, name: str) -> SequentialAutomaton:
    """Counter-style PDA over {x, y}; x pushes A, y pops A, optional epsilon moves."""
    states = [f"{name}p0", f"{name}p1", f"{name}p2"]
    ts = [Transition(states[0], states[0], read="x", pop=("Z",), push=("A", "Z")),
          Transition(states[0], states[0], read="x", pop=("A",), push=("A", "A")),
          Transition(states[0], states[1], read="y", pop=("A",), push=()),
          Transition(states[1], states[1], read="y", pop=("A",), push=()),
          Transition(states[1], states[2], read=None, pop=("Z",), push=("Z",))]
    if rng.random() < 0.5:
        ts.append(Transition(states[0], states[2], read=None, pop=("Z",), push=("Z",)))
    return SequentialAutomaton(Kind.PDA, name, states, ["x", "y"], ts, states[0], [states[2]],
                               stack_alphabet=["A", "Z"], stack_start="Z")


def random_word(rng: random.Random, alphabet, max_len: int) -> tuple:
    return tuple(rng.choice(alphabet) for _ in range(rng.randint(0, max_len)))


def random_traceable(rng: random.Random, tag: str):
    """A random automaton and segment words for replay tests.

    Mixes schedule variants, body keying, PDA segments and durations short
    enough that some epochs are cut off.
    """
    kind = rng.choice(["fsa", "fsa", "pda"])
    k = rng.randint(1, 4)
    if kind == "fsa":
        pool = [random_fsa(rng, f"{tag}S{i}", max_states=4, density=0.9) for i in range(k)]
    else:
        pool = [random_pda(rng, f"{tag}P{i}") for i in range(k)]
    cells = rng.randint(1, 3)
    variant = rng.choice(["table", "round-robin", "random"])
    key = KeyMode.EPOCH
    if variant == "table":
        table = tuple(rng.randint(1, cells) for _ in range(k))
        schedule, first = TableSchedule(cells, table), table[0]
    elif variant == "round-robin":
        schedule, first = RoundRobinSchedule(cells), rng.randint(1, cells)
    else:
        schedule, first = SeededRandomSchedule(cells, rng.getrandbits(64)), rng.randint(1, cells)
    if variant != "table" and rng.random() < 0.4:
        key = KeyMode.BODY
        sas = {b: pool[(b - 1) % len(pool)] for b in range(1, cells + 1)}
    else:
        sas = {e: pool[e - 1] for e in range(1, k + 1)}
    upper = fsa(f"{tag}U", ["H", "E"], ["next"], [("H", "next", "E")], "H", ["E"])
    binding = DhrBinding(f"{tag}C", CellularConfiguration.one_hot(cells, first), schedule, k, sas, key)
    durations = tuple(rng.randint(1, 6) for _ in range(k - 1 + rng.randint(0, 1)))
    ma = build(upper, {"H": binding}, TimeModel(durations, rng.randint(1, 2)))
    words = [random_word(rng, ["x", "y"], 5) for _ in range(k)]
    return ma, words
