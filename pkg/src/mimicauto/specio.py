"""The ``.ma`` text format.

A document starts with the header line ``ma-spec v1`` followed by blocks::

    upper NAME            sa NAME KIND          ca NAME
      states ...            states ...            cells N
      input ...             input ...             schedule table 1 2 [tm-generated]
      initial S             stack ... (pda)       schedule round-robin
      finals ...            stack-start Z         schedule random SEED
      trans SRC SYM DST     tape ... (lba/tm)     initial BODY
    end                     blank B               epochs M
                            markers L R (lba)   end
                            initial S
                            finals ...          time
                            trans ...             durations D...
                          end                     tau T
                                                end
    bind UPPER CA by epoch|body
      KEY SA                glue state-identification|word-handoff
    end

Transition lines by kind: ``trans SRC SYM DST`` (fsa, upper),
``trans SRC IN POP PUSH DST`` (pda; ``-`` is epsilon or the empty string,
stack strings are comma separated) and ``trans SRC READ WRITE MOVE DST``
(lba, tm).  ``#`` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .automata import Kind, SequentialAutomaton, Transition, validate
from .cellular import (
    CellularConfiguration,
    RoundRobinSchedule,
    SeededRandomSchedule,
    TableSchedule,
    TimeModel,
    active_body,
)
from .errors import MimicError
from .hierarchy import DhrBinding, GluePolicy, KeyMode, MimicAutomaton, build, check, default_glue

HEADER = "ma-spec v1"


@dataclass(frozen=True)
class Location:
    source: str
    line: int
    col: int

    def __str__(self) -> str:
        return f"{self.source}:{self.line}:{self.col}"


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    message: str
    location: Location

    def sort_key(self):
        return (self.location.line, self.location.col, self.message)

    def format(self, color: bool = False) -> str:
        sev = self.severity
        if color:
            code = "31" if sev == "error" else "33"
            sev = f"\x1b[1;{code}m{sev}\x1b[0m"
        return f"{self.location}: {sev}: {self.message}"


class SpecError(MimicError):
    def __init__(self, diagnostics):
        self.diagnostics = sorted(diagnostics, key=Diagnostic.sort_key)
        super().__init__("\n".join(d.format() for d in self.diagnostics))


_NOWHERE = Location("<generated>", 0, 0)


def _loc():
    return field(default=_NOWHERE, compare=False, repr=False)


@dataclass(frozen=True)
class TransDecl:
    fields: tuple
    loc: Location = _loc()


@dataclass(frozen=True)
class SaDecl:
    name: str
    kind: str
    states: tuple = ()
    input: tuple = ()
    initial: str | None = None
    finals: tuple = ()
    transitions: tuple = ()
    stack: tuple | None = None
    stack_start: str | None = None
    tape: tuple | None = None
    blank: str | None = None
    markers: tuple | None = None
    loc: Location = _loc()


@dataclass(frozen=True)
class CaDecl:
    name: str
    cells: int | None = None
    variant: str | None = None
    table: tuple = ()
    tm_generated: bool = False
    seed: int = 0
    initial: int | None = None
    epochs: int | None = None
    loc: Location = _loc()


@dataclass(frozen=True)
class TimeDecl:
    durations: tuple = ()
    tau: int = 1
    loc: Location = _loc()


@dataclass(frozen=True)
class EntryDecl:
    key: int
    sa: str
    loc: Location = _loc()


@dataclass(frozen=True)
class BindDecl:
    upper_state: str
    ca: str
    key: str
    entries: tuple = ()
    loc: Location = _loc()


@dataclass(frozen=True)
class MaSpecDocument:
    upper: SaDecl
    sas: tuple = ()
    cas: tuple = ()
    time: TimeDecl | None = None
    binds: tuple = ()
    glue: str | None = None
    glue_loc: Location = _loc()


# --------------------------------------------------------------------------
# lexing


@dataclass(frozen=True)
class _Tok:
    text: str
    line: int
    col: int


def _tokenize(text: str) -> Iterator[list]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = []
        col = 0
        n = len(raw)
        while col < n:
            if raw[col].isspace():
                col += 1
                continue
            if raw[col] == "#":
                break
            start = col
            while col < n and not raw[col].isspace():
                col += 1
            toks.append(_Tok(raw[start:col], lineno, start + 1))
        if toks:
            yield toks


# arity (min, max) per key; None = unbounded
_SA_KEYS = {
    "states": (1, None), "input": (0, None), "initial": (1, 1), "finals": (0, None),
    "trans": (3, 5), "stack": (0, None), "stack-start": (1, 1), "tape": (0, None),
    "blank": (1, 1), "markers": (2, 2),
}
_UPPER_KEYS = ("states", "input", "initial", "finals", "trans")
_KIND_KEYS = {
    "fsa": set(_UPPER_KEYS),
    "pda": set(_UPPER_KEYS) | {"stack", "stack-start"},
    "lba": set(_UPPER_KEYS) | {"tape", "blank", "markers"},
    "tm": set(_UPPER_KEYS) | {"tape", "blank"},
}
_TRANS_ARITY = {"fsa": 3, "pda": 5, "lba": 5, "tm": 5}
_CA_KEYS = {"cells": (1, 1), "schedule": (1, None), "initial": (1, 1), "epochs": (1, 1)}
_TIME_KEYS = {"durations": (0, None), "tau": (1, 1)}


class _Parser:
    def __init__(self, text: str, source: str):
        self.source = source
        self.lines = list(_tokenize(text))
        self.pos = 0
        self.diags: list[Diagnostic] = []

    def loc(self, tok: _Tok) -> Location:
        return Location(self.source, tok.line, tok.col)

    def error(self, tok_or_loc, message: str) -> None:
        loc = tok_or_loc if isinstance(tok_or_loc, Location) else self.loc(tok_or_loc)
        self.diags.append(Diagnostic("error", message, loc))

    def int_arg(self, tok: _Tok, what: str, minimum: int = 0) -> int | None:
        try:
            value = int(tok.text)
        except ValueError:
            self.error(tok, f"{what} must be an integer, got {tok.text!r}")
            return None
        if value < minimum:
            self.error(tok, f"{what} must be at least {minimum}")
            return None
        return value

    # -- driver

    def parse(self) -> MaSpecDocument | None:
        if not self.lines or " ".join(t.text for t in self.lines[0]) != HEADER:
            where = self.loc(self.lines[0][0]) if self.lines else Location(self.source, 1, 1)
            self.error(where, f"missing version header {HEADER!r}")
        else:
            self.pos = 1
        upper = None
        sas, cas, binds = [], [], []
        time = None
        glue, glue_loc = None, _NOWHERE
        while self.pos < len(self.lines):
            toks = self.lines[self.pos]
            head = toks[0]
            self.pos += 1
            word = head.text
            if word == "upper":
                decl = self.sa_block(toks, upper=True)
                if upper is not None:
                    self.error(head, "duplicate upper automaton")
                elif decl is not None:
                    upper = decl
            elif word == "sa":
                decl = self.sa_block(toks, upper=False)
                if decl is not None:
                    sas.append(decl)
            elif word == "ca":
                decl = self.ca_block(toks)
                if decl is not None:
                    cas.append(decl)
            elif word == "time":
                decl = self.time_block(toks)
                if time is not None:
                    self.error(head, "duplicate time block")
                elif decl is not None:
                    time = decl
            elif word == "bind":
                decl = self.bind_block(toks)
                if decl is not None:
                    binds.append(decl)
            elif word == "glue":
                if glue is not None:
                    self.error(head, "duplicate glue line")
                elif len(toks) != 2 or toks[1].text not in [g.value for g in GluePolicy]:
                    self.error(head, "glue expects 'state-identification' or 'word-handoff'")
                else:
                    glue, glue_loc = toks[1].text, self.loc(head)
            elif word == HEADER.split()[0]:
                self.error(head, "version header must be the first line")
            else:
                self.error(head, f"unknown block {word!r}")
        end = Location(self.source, (self.lines[-1][0].line if self.lines else 0) + 1, 1)
        if upper is None:
            self.error(end, "missing upper automaton")
        if not binds:
            self.error(end, "missing bind block")
        if upper is None or not binds:
            return None
        return MaSpecDocument(upper, tuple(sas), tuple(cas), time, tuple(binds), glue, glue_loc)

    def body(self, block: str) -> Iterator[list]:
        """Lines of the current block up to its ``end``."""
        opener = self.lines[self.pos - 1][0]
        while self.pos < len(self.lines):
            toks = self.lines[self.pos]
            self.pos += 1
            if toks[0].text == "end":
                if len(toks) > 1:
                    self.error(toks[1], "unexpected text after 'end'")
                return
            yield toks
        self.error(opener, f"{block} block is missing 'end'")

    def keyed_lines(self, block: str, keys: dict, allowed, repeatable=("trans",)) -> Iterator[tuple]:
        seen = set()
        for toks in self.body(block):
            key, args = toks[0], toks[1:]
            if key.text not in allowed:
                self.error(key, f"unknown key {key.text!r} in {block} block")
                continue
            if key.text in seen and key.text not in repeatable:
                self.error(key, f"duplicate key {key.text!r} in {block} block")
                continue
            seen.add(key.text)
            lo, hi = keys[key.text]
            if len(args) < lo or (hi is not None and len(args) > hi):
                expected = str(lo) if lo == hi else f"{lo}..{hi if hi is not None else ''}"
                self.error(key, f"{key.text!r} expects {expected} values, got {len(args)}")
                continue
            yield key, args

    # -- blocks

    def sa_block(self, toks, upper: bool) -> SaDecl | None:
        head = toks[0]
        if upper:
            if len(toks) != 2:
                self.error(head, "expected 'upper NAME'")
                list(self.body("upper"))
                return None
            name, kind = toks[1].text, "fsa"
            allowed = set(_UPPER_KEYS)
        else:
            if len(toks) != 3 or toks[2].text not in _KIND_KEYS:
                self.error(head, "expected 'sa NAME fsa|pda|lba|tm'")
                list(self.body("sa"))
                return None
            name, kind = toks[1].text, toks[2].text
            allowed = _KIND_KEYS[kind]
        values: dict = {}
        transitions = []
        block = "upper" if upper else "sa"
        for key, args in self.keyed_lines(block, _SA_KEYS, allowed):
            texts = tuple(a.text for a in args)
            if key.text == "trans":
                if len(args) != _TRANS_ARITY[kind]:
                    self.error(key, f"{kind} transitions take {_TRANS_ARITY[kind]} fields, got {len(args)}")
                    continue
                transitions.append(TransDecl(texts, self.loc(key)))
            elif key.text in ("states", "input", "finals", "stack", "tape"):
                seen = set()
                for a in args:
                    if a.text in seen:
                        noun = "state" if key.text in ("states", "finals") else "symbol"
                        self.error(a, f"duplicate {noun} {a.text!r} in {name}")
                    seen.add(a.text)
                values[key.text] = tuple(dict.fromkeys(texts))
            else:
                values[key.text] = texts if key.text == "markers" else texts[0]
        for required in ("states", "initial"):
            if required not in values:
                self.error(head, f"{name}: missing {required!r}")
        return SaDecl(
            name=name, kind=kind,
            states=values.get("states", ()), input=values.get("input", ()),
            initial=values.get("initial"), finals=values.get("finals", ()),
            transitions=tuple(transitions),
            stack=values.get("stack"), stack_start=values.get("stack-start"),
            tape=values.get("tape"), blank=values.get("blank"), markers=values.get("markers"),
            loc=self.loc(head),
        )

    def ca_block(self, toks) -> CaDecl | None:
        head = toks[0]
        if len(toks) != 2:
            self.error(head, "expected 'ca NAME'")
            list(self.body("ca"))
            return None
        kw: dict = {}
        for key, args in self.keyed_lines("ca", _CA_KEYS, set(_CA_KEYS)):
            if key.text == "schedule":
                variant = args[0].text
                rest = args[1:]
                if variant == "table":
                    generated = bool(rest) and rest[-1].text == "tm-generated"
                    entries = rest[:-1] if generated else rest
                    if not entries:
                        self.error(args[0], "table schedule needs at least one entry")
                        continue
                    table = [self.int_arg(t, "table entry", 1) for t in entries]
                    if None in table:
                        continue
                    kw.update(variant="table", table=tuple(table), tm_generated=generated)
                elif variant == "round-robin":
                    if rest:
                        self.error(rest[0], "round-robin takes no arguments")
                        continue
                    kw["variant"] = "round-robin"
                elif variant == "random":
                    if len(rest) != 1:
                        self.error(args[0], "random schedule expects one seed")
                        continue
                    seed = self.int_arg(rest[0], "seed")
                    if seed is None:
                        continue
                    kw.update(variant="random", seed=seed)
                else:
                    self.error(args[0], f"unknown schedule {variant!r}")
            else:
                value = self.int_arg(args[0], key.text, 1)
                if value is not None:
                    kw[key.text] = value
        name = toks[1].text
        if "cells" not in kw:
            self.error(head, f"{name}: missing 'cells'")
        if "variant" not in kw:
            self.error(head, f"{name}: missing 'schedule'")
        elif kw["variant"] != "table" and "epochs" not in kw:
            self.error(head, f"{name}: {kw['variant']} schedules need 'epochs'")
        return CaDecl(name=name, loc=self.loc(head), **kw)

    def time_block(self, toks) -> TimeDecl | None:
        head = toks[0]
        if len(toks) != 1:
            self.error(toks[1], "time takes no name")
        kw: dict = {}
        for key, args in self.keyed_lines("time", _TIME_KEYS, set(_TIME_KEYS)):
            values = [self.int_arg(a, key.text, 1) for a in args]
            if None in values:
                continue
            kw[key.text] = tuple(values) if key.text == "durations" else values[0]
        return TimeDecl(loc=self.loc(head), **kw)

    def bind_block(self, toks) -> BindDecl | None:
        head = toks[0]
        if len(toks) != 5 or toks[3].text != "by" or toks[4].text not in ("epoch", "body"):
            self.error(head, "expected 'bind UPPER_STATE CA by epoch|body'")
            list(self.body("bind"))
            return None
        entries = []
        seen = set()
        for line in self.body("bind"):
            if len(line) != 2:
                self.error(line[0], "binding entries are 'KEY SA'")
                continue
            key = self.int_arg(line[0], "binding key", 1)
            if key is None:
                continue
            if key in seen:
                self.error(line[0], f"duplicate binding key {key}")
                continue
            seen.add(key)
            entries.append(EntryDecl(key, line[1].text, self.loc(line[0])))
        return BindDecl(toks[1].text, toks[2].text, toks[4].text, tuple(entries), self.loc(head))


# --------------------------------------------------------------------------
# document -> automaton


def _split_stack(text: str) -> tuple:
    return () if text == "-" else tuple(text.split(","))


def sa_from_decl(d: SaDecl) -> SequentialAutomaton:
    kind = Kind(d.kind)
    transitions = []
    for t in d.transitions:
        f = t.fields
        if kind is Kind.FSA:
            transitions.append(Transition(f[0], f[2], read=f[1]))
        elif kind is Kind.PDA:
            read = None if f[1] == "-" else f[1]
            transitions.append(Transition(f[0], f[4], read=read, pop=_split_stack(f[2]), push=_split_stack(f[3])))
        else:
            transitions.append(Transition(f[0], f[4], read=f[1], write=f[2], move=f[3]))
    extra: dict = {}
    if d.stack is not None:
        extra["stack_alphabet"] = d.stack
    if d.stack_start is not None:
        extra["stack_start"] = d.stack_start
    if d.tape is not None:
        extra["tape_alphabet"] = d.tape
    if d.blank is not None:
        extra["blank"] = d.blank
    if d.markers is not None:
        extra["left_marker"], extra["right_marker"] = d.markers
    return SequentialAutomaton(kind=kind, name=d.name, states=d.states, input_alphabet=d.input,
                               transitions=transitions, initial=d.initial, finals=d.finals, **extra)


def _binding_from_decl(b: BindDecl, ca: CaDecl, sas: dict) -> DhrBinding:
    if ca.variant == "table":
        schedule = TableSchedule(ca.cells, ca.table, ca.tm_generated)
        first = ca.initial if ca.initial is not None else ca.table[0]
        epochs = ca.epochs if ca.epochs is not None else len(ca.table)
    elif ca.variant == "round-robin":
        schedule, first, epochs = RoundRobinSchedule(ca.cells), ca.initial or 1, ca.epochs
    else:
        schedule, first, epochs = SeededRandomSchedule(ca.cells, ca.seed), ca.initial or 1, ca.epochs
    initial = CellularConfiguration.one_hot(ca.cells, first)
    return DhrBinding(ca.name, initial, schedule, epochs, {e.key: sas[e.sa] for e in b.entries}, KeyMode(b.key))


def _semantic_diagnostics(doc: MaSpecDocument) -> tuple[list, MimicAutomaton | None]:
    diags: list[Diagnostic] = []

    def err(loc, msg):
        diags.append(Diagnostic("error", msg, loc))

    sas: dict = {}
    for d in doc.sas:
        if d.name in sas or d.name == doc.upper.name:
            err(d.loc, f"duplicate automaton name {d.name!r}")
            continue
        sa = sa_from_decl(d)
        for problem in validate(sa):
            where = next((t.loc for t in d.transitions if sa_from_decl_transition(sa, t) in problem), d.loc)
            err(where, problem)
        sas[d.name] = sa
    cas = {}
    rejected = set()
    for c in doc.cas:
        rejected.add(c.name)
        if c.name in cas:
            err(c.loc, f"duplicate CA name {c.name!r}")
            continue
        if c.variant == "table" and c.cells is not None:
            bad = [i for i in c.table if i > c.cells]
            if bad:
                err(c.loc, f"{c.name}: table entries {bad} exceed {c.cells} cells")
                continue
        if c.initial is not None and c.cells is not None and c.initial > c.cells:
            err(c.loc, f"{c.name}: initial body {c.initial} exceeds {c.cells} cells")
            continue
        cas[c.name] = c
        rejected.discard(c.name)
    upper = sa_from_decl(doc.upper)
    for problem in validate(upper):
        where = next((t.loc for t in doc.upper.transitions if sa_from_decl_transition(upper, t) in problem),
                     doc.upper.loc)
        err(where, problem)

    bindings: dict = {}
    bind_locs: dict = {}
    for b in doc.binds:
        if b.upper_state in bindings:
            err(b.loc, f"duplicate binding for upper state {b.upper_state!r}")
            continue
        missing = [e for e in b.entries if e.sa not in sas]
        for e in missing:
            err(e.loc, f"unknown automaton {e.sa!r}")
        if b.ca not in cas:
            if b.ca not in rejected:
                err(b.loc, f"unknown CA {b.ca!r}")
            continue
        if missing:
            continue
        bindings[b.upper_state] = _binding_from_decl(b, cas[b.ca], sas)
        bind_locs[b.upper_state] = b.loc
    if diags:
        return diags, None

    time = doc.time or TimeDecl()
    glue = GluePolicy(doc.glue) if doc.glue else default_glue(bindings)
    ma = MimicAutomaton(upper, bindings, TimeModel(time.durations, time.tau), glue)
    for v in check(ma):
        loc = doc.upper.loc
        for state, bl in bind_locs.items():
            if v.message.startswith(f"binding {state}/"):
                loc = bl
        if v.message.startswith("time model") and doc.time is not None:
            loc = doc.time.loc
        if "state identification" in v.message and doc.glue:
            loc = doc.glue_loc
        err(loc, f"{v.error.__name__}: {v.message}")
    return diags, (None if diags else ma)


def sa_from_decl_transition(sa: SequentialAutomaton, t: TransDecl) -> str:
    """The rendered form validation messages use for transition ``t``."""
    tmp = sa_from_decl(SaDecl(name=sa.name, kind=sa.kind.value, transitions=(t,)))
    return f"transition {tmp.transitions[0].describe(sa.kind)} "


def parse(text: str, source: str = "<input>") -> MaSpecDocument:
    """Parse and check a document; raises :class:`SpecError` with every diagnostic."""
    p = _Parser(text, source)
    doc = p.parse()
    diags = list(p.diags)
    if doc is not None:
        # recovered documents still get checked so one pass reports everything
        diags += [d for d in _semantic_diagnostics(doc)[0] if d not in diags]
    if diags:
        raise SpecError(diags)
    return doc


def diagnose(text: str, source: str = "<input>") -> list[Diagnostic]:
    try:
        parse(text, source)
    except SpecError as exc:
        return exc.diagnostics
    return []


def to_automaton(doc: MaSpecDocument) -> MimicAutomaton:
    diags, ma = _semantic_diagnostics(doc)
    if diags:
        raise SpecError(diags)
    # build() re-runs the structural checks and settles the glue default
    return build(ma.upper, ma.bindings, ma.time_model, ma.glue)


def load(text: str, source: str = "<input>") -> MimicAutomaton:
    return to_automaton(parse(text, source))


def load_file(path) -> MimicAutomaton:
    with open(path, encoding="utf-8") as fh:
        return load(fh.read(), str(path))


# --------------------------------------------------------------------------
# serialization


def _sa_lines(d: SaDecl, upper: bool) -> list[str]:
    lines = [f"upper {d.name}" if upper else f"sa {d.name} {d.kind}"]
    lines.append("  states " + " ".join(d.states))
    lines.append(("  input " + " ".join(d.input)).rstrip())
    if d.stack is not None:
        lines.append(("  stack " + " ".join(d.stack)).rstrip())
    if d.stack_start is not None:
        lines.append(f"  stack-start {d.stack_start}")
    if d.tape is not None:
        lines.append(("  tape " + " ".join(d.tape)).rstrip())
    if d.blank is not None:
        lines.append(f"  blank {d.blank}")
    if d.markers is not None:
        lines.append("  markers " + " ".join(d.markers))
    lines.append(f"  initial {d.initial}")
    lines.append(("  finals " + " ".join(d.finals)).rstrip())
    lines += ["  trans " + " ".join(t.fields) for t in d.transitions]
    lines.append("end")
    return lines


def _ca_lines(c: CaDecl) -> list[str]:
    lines = [f"ca {c.name}", f"  cells {c.cells}"]
    if c.variant == "table":
        tail = " tm-generated" if c.tm_generated else ""
        lines.append("  schedule table " + " ".join(map(str, c.table)) + tail)
    elif c.variant == "random":
        lines.append(f"  schedule random {c.seed}")
    else:
        lines.append("  schedule round-robin")
    if c.initial is not None:
        lines.append(f"  initial {c.initial}")
    if c.epochs is not None:
        lines.append(f"  epochs {c.epochs}")
    lines.append("end")
    return lines


def serialize(doc: MaSpecDocument) -> str:
    blocks = [[HEADER], _sa_lines(doc.upper, upper=True)]
    blocks += [_sa_lines(d, upper=False) for d in doc.sas]
    blocks += [_ca_lines(c) for c in doc.cas]
    if doc.time is not None:
        blocks.append(["time", ("  durations " + " ".join(map(str, doc.time.durations))).rstrip(),
                       f"  tau {doc.time.tau}", "end"])
    for b in doc.binds:
        blocks.append([f"bind {b.upper_state} {b.ca} by {b.key}"]
                      + [f"  {e.key} {e.sa}" for e in b.entries] + ["end"])
    if doc.glue is not None:
        blocks.append([f"glue {doc.glue}"])
    return "\n\n".join("\n".join(b) for b in blocks) + "\n"


def _join_stack(symbols: tuple) -> str:
    return ",".join(symbols) if symbols else "-"


def sa_to_decl(sa: SequentialAutomaton) -> SaDecl:
    kind = sa.kind
    transitions = []
    for t in sa.transitions:
        if kind is Kind.FSA:
            fields = (t.source, t.read, t.target)
        elif kind is Kind.PDA:
            fields = (t.source, "-" if t.read is None else t.read, _join_stack(t.pop), _join_stack(t.push), t.target)
        else:
            fields = (t.source, t.read, t.write, t.move, t.target)
        transitions.append(TransDecl(fields))
    return SaDecl(
        name=sa.name, kind=kind.value, states=sa.states, input=sa.input_alphabet, initial=sa.initial,
        finals=sa.finals, transitions=tuple(transitions),
        stack=sa.stack_alphabet if kind is Kind.PDA else None,
        stack_start=sa.stack_start if kind is Kind.PDA else None,
        tape=sa.tape_alphabet if kind in (Kind.LBA, Kind.TM) else None,
        blank=sa.blank if kind in (Kind.LBA, Kind.TM) else None,
        markers=(sa.left_marker, sa.right_marker) if kind is Kind.LBA else None,
    )


def document_from_automaton(ma: MimicAutomaton) -> MaSpecDocument:
    sas: dict = {}
    cas, binds = [], []
    for state, b in ma.ordered_bindings():
        for key in sorted(b.sas):
            sa = b.sas[key]
            if sas.setdefault(sa.name, sa) != sa:
                raise ValueError(f"two different automata are both named {sa.name!r}")
        s = b.schedule
        common = dict(name=b.ca_name, cells=b.n, initial=active_body(b.initial), epochs=b.epochs)
        if isinstance(s, TableSchedule):
            cas.append(CaDecl(variant="table", table=s.table, tm_generated=s.tm_generated, **common))
        elif isinstance(s, SeededRandomSchedule):
            cas.append(CaDecl(variant="random", seed=s.seed, **common))
        else:
            cas.append(CaDecl(variant="round-robin", **common))
        entries = tuple(EntryDecl(k, b.sas[k].name) for k in sorted(b.sas))
        binds.append(BindDecl(state, b.ca_name, b.key.value, entries))
    tm = ma.time_model
    upper = sa_to_decl(ma.upper)
    return MaSpecDocument(
        upper=SaDecl(**{**upper.__dict__, "kind": "fsa"}),
        sas=tuple(sa_to_decl(sa) for sa in sas.values()),
        cas=tuple(cas),
        time=TimeDecl(tm.durations, tm.tau),
        binds=tuple(binds),
        glue=ma.glue.value,
    )


def fsa_document(sa: SequentialAutomaton, upper_name: str = "A") -> MaSpecDocument:
    """Wrap one automaton as a single-body mimic automaton document."""
    upper = SaDecl(name=upper_name, kind="fsa", states=("M",), input=(), initial="M", finals=("M",))
    return MaSpecDocument(
        upper=upper,
        sas=(sa_to_decl(sa),),
        cas=(CaDecl(name="C0", cells=1, variant="table", table=(1,), initial=1, epochs=1),),
        time=TimeDecl((), 1),
        binds=(BindDecl("M", "C0", "epoch", (EntryDecl(1, sa.name),)),),
        glue=GluePolicy.STATE_IDENTIFICATION.value,
    )
