"""Mimic automata: sequential automata scheduled over one-hot cellular bodies."""

from .automata import Configuration, Kind, Outcome, RunResult, SequentialAutomaton, Transition, accepts, run
from .cellular import (
    CellularConfiguration,
    RoundRobinSchedule,
    SeededRandomSchedule,
    TableSchedule,
    TimeModel,
    active_body,
    advance,
    epoch_boundaries,
)
from .executor import ExecutionEvent, ExecutionTrace, execute, handoff, replay
from .hierarchy import DhrBinding, GluePolicy, KeyMode, MimicAutomaton, build, granularity
from .power import (
    PowerClass,
    classify,
    equivalence_evidence,
    flatten_regular,
    language_sample,
    turing_lower_bound_demo,
)
from .specio import load, load_file, parse, serialize

__all__ = [
    "CellularConfiguration", "Configuration", "DhrBinding", "ExecutionEvent", "ExecutionTrace",
    "GluePolicy", "KeyMode", "Kind", "MimicAutomaton", "Outcome", "PowerClass", "RoundRobinSchedule",
    "RunResult", "SeededRandomSchedule", "SequentialAutomaton", "TableSchedule", "TimeModel",
    "Transition", "accepts", "active_body", "advance", "build", "classify", "epoch_boundaries",
    "equivalence_evidence", "execute", "flatten_regular", "granularity", "handoff", "language_sample",
    "load", "load_file", "parse", "replay", "run", "serialize", "turing_lower_bound_demo",
]
