"""Combinatorial dichromatic singular link diagrams.

A diagram is a list of semi-arcs, each belonging to a labelled component,
joined at classical crossings (``xc over under_in under_out``) and singular
vertices (``xs in1 in2 out1 out2``).  Arcs break at under-passes and at
vertices; an over-strand runs through a classical crossing unbroken.

Strand continuation at a singular vertex pairs ``in1`` with ``out2`` and
``in2`` with ``out1``: the R1 output leaves the vertex diagonally opposite
the first input.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterator, Union

from .algebra.io import ParseError


@dataclass(frozen=True)
class ClassicalCrossing:
    over: str
    under_in: str
    under_out: str
    kind = "classical"

    @property
    def terminating(self) -> tuple[str, str]:
        return (self.under_in, self.under_out)

    def arcs(self) -> tuple[str, ...]:
        return (self.over, self.under_in, self.under_out)

    def strand_pairs(self) -> list[tuple[str, str]]:
        return [(self.under_in, self.under_out)]

    def line(self) -> str:
        return f"xc {self.over} {self.under_in} {self.under_out}"


@dataclass(frozen=True)
class SingularCrossing:
    in1: str
    in2: str
    out1: str
    out2: str
    kind = "singular"

    @property
    def terminating(self) -> tuple[str, str, str, str]:
        return (self.in1, self.in2, self.out1, self.out2)

    def arcs(self) -> tuple[str, ...]:
        return self.terminating

    def strand_pairs(self) -> list[tuple[str, str]]:
        return [(self.in1, self.out2), (self.in2, self.out1)]

    def line(self) -> str:
        return f"xs {self.in1} {self.in2} {self.out1} {self.out2}"


Crossing = Union[ClassicalCrossing, SingularCrossing]


def _rename_slot(c: Crossing, slot: str, new: str) -> Crossing:
    return replace(c, **{slot: new})


@dataclass(frozen=True)
class Diagram:
    name: str
    components: tuple[tuple[str, int], ...]
    arcs: tuple[tuple[str, str], ...]
    crossings: tuple[Crossing, ...] = ()
    free_loops: tuple[str, ...] = ()

    def label(self, cid: str) -> int:
        return dict(self.components)[cid]

    def component_of(self, aid: str) -> str:
        return dict(self.arcs)[aid]

    def arc_label(self, aid: str) -> int:
        return self.label(self.component_of(aid))

    @property
    def arc_ids(self) -> tuple[str, ...]:
        return tuple(a for a, _ in self.arcs)

    def loop_arcs(self) -> list[str]:
        loops = set(self.free_loops)
        return [a for a, c in self.arcs if c in loops]

    def fresh_arc(self, base: str) -> str:
        taken = set(self.arc_ids)
        i = 1
        while f"{base}.{i}" in taken:
            i += 1
        return f"{base}.{i}"


# --- validation ----------------------------------------------------------------

@dataclass(frozen=True)
class Problem:
    code: str
    subject: str
    message: str

    def __str__(self) -> str:
        return f"{self.code} [{self.subject}]: {self.message}"


@dataclass(frozen=True)
class DiagramReport:
    problems: tuple[Problem, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.problems

    def __bool__(self) -> bool:
        return self.ok

    def summary(self) -> str:
        if self.ok:
            return "VALID"
        return "\n".join([f"INVALID ({len(self.problems)} problems)"] + [f"  {p}" for p in self.problems])


class DiagramError(ValueError):
    def __init__(self, report: DiagramReport):
        super().__init__(report.summary())
        self.report = report


def strand_cycles(d: Diagram) -> list[list[str]]:
    """Arcs grouped by strand continuation, each group in traversal order."""
    nbrs: dict[str, list[str]] = {a: [] for a in d.arc_ids}
    for c in d.crossings:
        for u, v in c.strand_pairs():
            if u in nbrs and v in nbrs:
                nbrs[u].append(v)
                nbrs[v].append(u)
    seen: set[str] = set()
    cycles = []
    for start in d.arc_ids:
        if start in seen:
            continue
        order, stack = [], [start]
        seen.add(start)
        while stack:
            a = stack.pop()
            order.append(a)
            for b in nbrs[a]:
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
        cycles.append(order)
    return cycles


def validate_diagram(d: Diagram) -> DiagramReport:
    probs: list[Problem] = []
    add = lambda code, subj, msg: probs.append(Problem(code, subj, msg))

    comps: dict[str, int] = {}
    for cid, label in d.components:
        if cid in comps:
            add("duplicate-component", cid, "component declared twice")
        if label not in (1, 2):
            add("bad-label", cid, f"label {label} is not 1 or 2")
        comps[cid] = label
    arcs: dict[str, str] = {}
    for aid, cid in d.arcs:
        if aid in arcs:
            add("duplicate-arc", aid, "arc declared twice")
        if cid not in comps:
            add("unknown-component", aid, f"arc refers to undeclared component {cid}")
        arcs[aid] = cid
    for cid in d.free_loops:
        if cid not in comps:
            add("unknown-component", cid, "loop refers to undeclared component")
    if len(set(d.free_loops)) != len(d.free_loops):
        add("duplicate-loop", ",".join(sorted(d.free_loops)), "component marked as loop twice")

    uses = {a: 0 for a in arcs}
    for i, c in enumerate(d.crossings):
        for a in c.arcs():
            if a not in arcs:
                add("unknown-arc", a, f"crossing {i} refers to undeclared arc")
        for a in c.terminating:
            if a in uses:
                uses[a] += 1
        if isinstance(c, ClassicalCrossing) and c.under_in == c.under_out and c.under_in in arcs:
            cid = arcs[c.under_in]
            if sum(1 for x in arcs.values() if x == cid) != 1:
                add("bad-kink", c.under_in,
                    f"crossing {i} enters and leaves on the same arc but the arc is not its whole component")
    loops = set(d.free_loops)
    for a, cid in arcs.items():
        if cid in loops:
            if uses[a]:
                add("loop-crossing", a, "arc of a loop component ends at a crossing")
        elif uses[a] != 2:
            add("arc-ends", a, f"arc has {uses[a]} ends at crossings, expected 2")
    for cid in comps:
        members = [a for a, c in arcs.items() if c == cid]
        if not members:
            add("empty-component", cid, "component has no arcs")
        elif cid in loops and len(members) != 1:
            add("loop-arcs", cid, f"loop component has {len(members)} arcs, expected 1")
    if probs:
        return DiagramReport(tuple(probs))

    cycles_per_comp: dict[str, int] = {}
    for cyc in strand_cycles(d):
        owners = sorted({arcs[a] for a in cyc})
        if len(owners) > 1:
            add("strand-components", ",".join(owners),
                f"strand through {cyc[0]} runs through several components")
        for o in owners:
            cycles_per_comp[o] = cycles_per_comp.get(o, 0) + 1
    for cid, k in cycles_per_comp.items():
        if k > 1:
            add("split-component", cid, f"component consists of {k} separate strands")
    return DiagramReport(tuple(probs))


# --- file format -----------------------------------------------------------------

def parse_diagram(text: str, *, validate: bool = True) -> Diagram:
    """Parse the link file format; raise ParseError or DiagramError."""
    name = None
    comps: dict[str, int] = {}
    arcs: dict[str, str] = {}
    crossings: list[Crossing] = []
    loops: list[str] = []
    ended = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        if ended:
            raise ParseError(lineno, f"unexpected '{toks[0]}' after 'end'")
        head, args = toks[0], toks[1:]

        def need(k: int):
            if len(args) != k:
                raise ParseError(lineno, f"'{head}' takes {k} argument(s), got {len(args)}")

        def arc(a: str) -> str:
            if a not in arcs:
                raise ParseError(lineno, f"unknown arc {a!r}")
            return a

        if name is None:
            if head != "link":
                raise ParseError(lineno, f"expected 'link', found '{head}'")
            need(1)
            name = args[0]
            continue
        if head == "component":
            if len(args) != 3 or args[1] != "label":
                raise ParseError(lineno, "expected 'component <cid> label <1|2>'")
            if args[2] not in ("1", "2"):
                raise ParseError(lineno, f"label must be 1 or 2, got {args[2]!r}")
            if args[0] in comps:
                raise ParseError(lineno, f"component {args[0]!r} declared twice")
            comps[args[0]] = int(args[2])
        elif head == "arc":
            if len(args) != 3 or args[1] != "component":
                raise ParseError(lineno, "expected 'arc <aid> component <cid>'")
            if args[0] in arcs:
                raise ParseError(lineno, f"arc {args[0]!r} declared twice")
            if args[2] not in comps:
                raise ParseError(lineno, f"unknown component {args[2]!r}")
            arcs[args[0]] = args[2]
        elif head == "xc":
            need(3)
            crossings.append(ClassicalCrossing(*map(arc, args)))
        elif head == "xs":
            need(4)
            crossings.append(SingularCrossing(*map(arc, args)))
        elif head == "loop":
            need(1)
            if args[0] not in comps:
                raise ParseError(lineno, f"unknown component {args[0]!r}")
            loops.append(args[0])
        elif head == "end":
            need(0)
            ended = True
        else:
            raise ParseError(lineno, f"unknown keyword '{head}'")
    last = len(text.splitlines()) or 1
    if name is None:
        raise ParseError(last, "empty link file")
    if not ended:
        raise ParseError(last, "missing 'end'")
    d = Diagram(name, tuple(comps.items()), tuple(arcs.items()), tuple(crossings), tuple(loops))
    if validate:
        report = validate_diagram(d)
        if not report.ok:
            raise DiagramError(report)
    return d


def format_diagram(d: Diagram) -> str:
    out = [f"link {d.name}"]
    out += [f"component {cid} label {label}" for cid, label in d.components]
    out += [f"arc {aid} component {cid}" for aid, cid in d.arcs]
    out += [c.line() for c in d.crossings]
    out += [f"loop {cid}" for cid in d.free_loops]
    out.append("end")
    return "\n".join(out) + "\n"


def load_diagram(path: str | Path) -> Diagram:
    return parse_diagram(Path(path).read_text(encoding="utf-8"))


# --- rewrites ----------------------------------------------------------------------

def _require_arc(d: Diagram, a: str):
    if a not in d.arc_ids:
        raise ValueError(f"unknown arc {a!r}")


def _last_end(d: Diagram, a: str) -> tuple[int, str]:
    """(crossing index, slot name) of the last terminating occurrence of ``a``."""
    found = None
    for i, c in enumerate(d.crossings):
        slots = ("under_in", "under_out") if isinstance(c, ClassicalCrossing) else ("in1", "in2", "out1", "out2")
        for s in slots:
            if getattr(c, s) == a:
                found = (i, s)
    if found is None:
        raise ValueError(f"arc {a!r} has no crossing ends")
    return found


def _split_arc(d: Diagram, a: str, new: str) -> tuple[list[Crossing], list[tuple[str, str]]]:
    """Reattach the last end of ``a`` to a new arc ``new`` in the same component."""
    crossings = list(d.crossings)
    i, slot = _last_end(d, a)
    crossings[i] = _rename_slot(crossings[i], slot, new)
    arcs = list(d.arcs)
    arcs.insert(d.arc_ids.index(a) + 1, (new, d.component_of(a)))
    return crossings, arcs


def apply_kink(d: Diagram, arc: str, kind: str = "RI-classical") -> Diagram:
    """Insert a one-crossing curl on ``arc``."""
    if kind != "RI-classical":
        raise ValueError(f"unsupported kink kind {kind!r}")
    _require_arc(d, arc)
    cid = d.component_of(arc)
    if cid in d.free_loops:
        loops = tuple(c for c in d.free_loops if c != cid)
        return replace(d, crossings=d.crossings + (ClassicalCrossing(arc, arc, arc),), free_loops=loops)
    new = d.fresh_arc(arc)
    crossings, arcs = _split_arc(d, arc, new)
    crossings.append(ClassicalCrossing(new, arc, new))
    return replace(d, arcs=tuple(arcs), crossings=tuple(crossings))


def apply_poke(d: Diagram, arc_a: str, arc_b: str) -> Diagram:
    """Push ``arc_b`` over ``arc_a``, creating two classical crossings."""
    _require_arc(d, arc_a)
    _require_arc(d, arc_b)
    if arc_a == arc_b:
        raise ValueError("an arc cannot be poked under itself")
    cid = d.component_of(arc_a)
    mid = d.fresh_arc(arc_a)
    if cid in d.free_loops:
        arcs = list(d.arcs)
        arcs.insert(d.arc_ids.index(arc_a) + 1, (mid, cid))
        loops = tuple(c for c in d.free_loops if c != cid)
        new = (ClassicalCrossing(arc_b, arc_a, mid), ClassicalCrossing(arc_b, mid, arc_a))
        return replace(d, arcs=tuple(arcs), crossings=d.crossings + new, free_loops=loops)
    probe = replace(d, arcs=d.arcs + ((mid, cid),))
    tail = probe.fresh_arc(arc_a)
    crossings, arcs = _split_arc(d, arc_a, tail)
    arcs.insert(arcs.index((tail, cid)), (mid, cid))
    crossings += [ClassicalCrossing(arc_b, arc_a, mid), ClassicalCrossing(arc_b, mid, tail)]
    return replace(d, arcs=tuple(arcs), crossings=tuple(crossings))


def swap_labels(d: Diagram) -> Diagram:
    return replace(d, components=tuple((c, 3 - l) for c, l in d.components))


def random_moves(d: Diagram, k: int, rng: random.Random) -> Diagram:
    """Apply ``k`` randomly chosen kinks or pokes."""
    for _ in range(k):
        arcs = d.arc_ids
        if len(arcs) >= 2 and rng.random() < 0.5:
            a, b = rng.sample(arcs, 2)
            d = apply_poke(d, a, b)
        else:
            d = apply_kink(d, rng.choice(arcs))
    return d


def iter_link_files(directory: str | Path) -> Iterator[Path]:
    yield from sorted(Path(directory).glob("*.lnk"))
