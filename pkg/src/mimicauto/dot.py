"""Graphviz DOT rendering of mimic automata and their components."""

from __future__ import annotations

from .automata import SequentialAutomaton
from .cellular import body_sequence
from .hierarchy import DhrBinding, GluePolicy, MimicAutomaton, effective_schedule, segments


def _q(text) -> str:
    return '"' + str(text).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _label(sa: SequentialAutomaton, tr) -> str:
    kind = sa.kind.value
    if kind == "fsa":
        return tr.read
    if kind == "pda":
        stack = lambda syms: "".join(syms) or "ε"
        return f"{tr.read or 'ε'}, {stack(tr.pop)}/{stack(tr.push)}"
    return f"{tr.read}/{tr.write},{tr.move}"


def _sa_body(sa: SequentialAutomaton, prefix: str = "", indent: str = "  ") -> list[str]:
    lines = []
    for s in sa.states:
        shape = "doublecircle" if sa.is_final(s) else "circle"
        lines.append(f"{indent}{_q(prefix + s)} [shape={shape}, label={_q(s)}];")
    lines.append(f"{indent}{_q(prefix + '__start')} [shape=point, label=\"\"];")
    lines.append(f"{indent}{_q(prefix + '__start')} -> {_q(prefix + sa.initial)};")
    for tr in sa.transitions:
        lines.append(f"{indent}{_q(prefix + tr.source)} -> {_q(prefix + tr.target)} [label={_q(_label(sa, tr))}];")
    return lines


def sa_dot(sa: SequentialAutomaton) -> str:
    lines = [f"digraph {_q(sa.name)} {{", "  rankdir=LR;", f"  label={_q(f'{sa.name} ({sa.kind.value})')};"]
    lines += _sa_body(sa)
    lines.append("}")
    return "\n".join(lines) + "\n"


def ca_dot(binding: DhrBinding, seed: int | None = None) -> str:
    """CA states S^1..S^m as a chain, each labelled with its active body."""
    phi = effective_schedule(binding.schedule, seed)
    bodies = body_sequence(binding.initial, phi, binding.epochs)
    name = binding.ca_name
    lines = [f"digraph {_q(name)} {{", "  rankdir=LR;", f"  label={_q(f'CA {name} ({binding.n} cells)')};"]
    for e, body in enumerate(bodies, start=1):
        sa = binding.sa_for(e, body)
        lines.append(f"  {_q(f'S{e}')} [shape=box, label={_q(f'S^{e}: body {body}, {sa.name}')}];")
    for e in range(1, len(bodies)):
        lines.append(f"  {_q(f'S{e}')} -> {_q(f'S{e + 1}')} [label=\"|T|+tau\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def overview_dot(ma: MimicAutomaton, seed: int | None = None) -> str:
    """All segments in run order; glue steps drawn as dashed epsilon edges."""
    segs = segments(ma, seed)
    lines = [f"digraph {_q(ma.name)} {{", "  rankdir=LR;", "  compound=true;"]
    for seg in segs:
        prefix = f"{seg.index}:"
        lines.append(f"  subgraph {_q(f'cluster_{seg.index}')} {{")
        title = f"{seg.upper_state} / epoch {seg.epoch} / body {seg.body}: {seg.sa.name}"
        lines.append(f"    label={_q(title)};")
        lines += _sa_body(seg.sa, prefix, "    ")
        lines.append("  }")
    for a, b in zip(segs, segs[1:]):
        if ma.glue is GluePolicy.STATE_IDENTIFICATION:
            for f in a.sa.finals:
                lines.append(f"  {_q(f'{a.index}:{f}')} -> {_q(f'{b.index}:{b.sa.initial}')} "
                             "[style=dashed, label=\"ε\"];")
        else:
            lines.append(f"  {_q(f'{a.index}:__start')} -> {_q(f'{b.index}:__start')} "
                         "[style=dashed, label=\"ε / output word\", ltail="
                         f"{_q(f'cluster_{a.index}')}, lhead={_q(f'cluster_{b.index}')}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export(ma: MimicAutomaton, seed: int | None = None) -> dict[str, str]:
    """One digraph per component (upper, each lower SA, each CA) plus an overview."""
    out = {f"upper_{ma.upper.name}": sa_dot(ma.upper)}
    for sa in ma.lower_automata():
        out[f"sa_{sa.name}"] = sa_dot(sa)
    for _, b in ma.ordered_bindings():
        out[f"ca_{b.ca_name}"] = ca_dot(b, seed)
    out["overview"] = overview_dot(ma, seed)
    return out
