"""One-dimensional cellular automata used as execution-body schedulers.

In DHR mode the CA state is one-hot: the single 1-cell marks the execution
body that is computing.  The global update rule ``Φ`` is a schedule: an
explicit table, round robin, or a seeded uniform draw.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate

import numpy as np

from .errors import NotOneHot, TableExhausted

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class CellularConfiguration:
    cells: tuple
    t: int = 0

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(self.cells))
        if not self.cells:
            raise ValueError("a cellular configuration needs at least one cell")
        if any(c not in (0, 1) for c in self.cells):
            raise ValueError(f"cells must be 0 or 1, got {self.cells}")
        if self.t < 0:
            raise ValueError("time index must be non-negative")

    @classmethod
    def one_hot(cls, n: int, index: int, t: int = 0) -> "CellularConfiguration":
        if not 1 <= index <= n:
            raise ValueError(f"body index {index} outside 1..{n}")
        return cls(tuple(1 if i == index else 0 for i in range(1, n + 1)), t)

    @property
    def n(self) -> int:
        return len(self.cells)

    def describe(self) -> str:
        return "(" + ",".join(map(str, self.cells)) + ")"


def active_body(c: CellularConfiguration) -> int:
    """1-based index of the unique active cell."""
    ones = [i for i, v in enumerate(c.cells, start=1) if v == 1]
    if len(ones) != 1:
        raise NotOneHot(f"{c.describe()} is not one-hot")
    return ones[0]


class ScheduleFunction:
    """Global CA update: picks the next active body.

    ``next_index(current, t)`` returns the body active at time ``t + 1``
    when body ``current`` is active at time ``t``.
    """

    variant: str = ""
    n: int

    def next_index(self, current: int, t: int) -> int:
        raise NotImplementedError

    def is_regular(self) -> bool:
        """Whether an FSA can describe the produced body sequence."""
        return False


@dataclass(frozen=True)
class TableSchedule(ScheduleFunction):
    """Explicit list of successive active bodies; ``table[t]`` is active at time ``t``.

    ``tm_generated`` declares that the table was produced by an arbitrary
    (Turing-generated) pattern rather than a finite description.
    """

    n: int
    table: tuple
    tm_generated: bool = False
    variant = "table"

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(self.table))
        if not self.table:
            raise ValueError("a table schedule needs at least one entry")
        bad = [i for i in self.table if not 1 <= i <= self.n]
        if bad:
            raise ValueError(f"table entries {bad} outside 1..{self.n}")

    def next_index(self, current: int, t: int) -> int:
        if t + 1 >= len(self.table):
            raise TableExhausted(f"table of length {len(self.table)} has no entry for time {t + 1}")
        return self.table[t + 1]

    def is_regular(self) -> bool:
        return not self.tm_generated


@dataclass(frozen=True)
class RoundRobinSchedule(ScheduleFunction):
    n: int
    variant = "round-robin"

    def next_index(self, current: int, t: int) -> int:
        return current % self.n + 1

    def is_regular(self) -> bool:
        return True


@dataclass(frozen=True)
class SeededRandomSchedule(ScheduleFunction):
    """Uniform draw over ``1..n``.

    The draw for time ``t + 1`` comes from numpy's PCG64 generator seeded
    through ``SeedSequence([seed mod 2**64, t + 1])``, so the sequence is a
    pure function of ``(seed, t)`` and can be recomputed during replay.
    """

    n: int
    seed: int = 0
    variant = "random"

    def next_index(self, current: int, t: int) -> int:
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([self.seed & _MASK64, t + 1])))
        return int(rng.integers(1, self.n + 1))


def advance(c: CellularConfiguration, phi: ScheduleFunction) -> CellularConfiguration:
    """One CA step: move the active cell to ``phi``'s next body."""
    if phi.n != c.n:
        raise ValueError(f"schedule is for {phi.n} bodies, configuration has {c.n}")
    nxt = phi.next_index(active_body(c), c.t)
    return CellularConfiguration.one_hot(c.n, nxt, c.t + 1)


def body_sequence(initial: CellularConfiguration, phi: ScheduleFunction, count: int) -> list[int]:
    """Active bodies of the first ``count`` CA states starting at ``initial``."""
    seq = []
    c = initial
    for i in range(count):
        seq.append(active_body(c))
        if i + 1 < count:
            c = advance(c, phi)
    return seq


@dataclass(frozen=True)
class TimeModel:
    """Epoch durations ``|T_i|`` in logical ticks plus the gap ``tau``."""

    durations: tuple = ()
    tau: int = 1

    def __post_init__(self):
        object.__setattr__(self, "durations", tuple(self.durations))
        if any(d < 1 for d in self.durations):
            raise ValueError("epoch durations must be positive")
        if self.tau < 1:
            raise ValueError("tau must be positive")

    def duration(self, epoch: int) -> int | None:
        """Duration of 0-based ``epoch``; ``None`` when unbounded."""
        return self.durations[epoch] if epoch < len(self.durations) else None


def epoch_boundaries(tm: TimeModel, k: int) -> list[int]:
    """Absolute clock of the first ``k`` CA transitions: running sums of ``|T_j| + tau``."""
    if k > len(tm.durations):
        raise ValueError(f"time model covers {len(tm.durations)} epochs, {k} requested")
    return list(accumulate(d + tm.tau for d in tm.durations[:k]))

