"""Colorings of diagrams by disingquandles, and fundamental presentations."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .algebra import axioms as ax
from .algebra.checks import InvalidStructureError, check_disingquandle
from .algebra.io import parse_structure
from .algebra.tables import DisingquandleTable
from .diagram import ClassicalCrossing, Diagram, parse_diagram


@dataclass(frozen=True)
class ClassicalRelation:
    """c(under_out) = c(under_in) *label c(over)."""
    under_in: str
    over: str
    under_out: str
    label: int


@dataclass(frozen=True)
class SingularRelation:
    """c(out1) = R1(c(in1), c(in2)) and c(out2) = R2(c(in1), c(in2))."""
    in1: str
    in2: str
    out1: str
    out2: str


@dataclass(frozen=True)
class ConstraintSystem:
    name: str
    variables: tuple[str, ...]
    relations: tuple[ClassicalRelation | SingularRelation, ...]

    def __post_init__(self):
        known = set(self.variables)
        for r in self.relations:
            fields = (r.under_in, r.over, r.under_out) if isinstance(r, ClassicalRelation) else (r.in1, r.in2, r.out1, r.out2)
            missing = [v for v in fields if v not in known]
            if missing:
                raise ValueError(f"relation {r} uses undeclared variable {missing[0]!r}")


@dataclass(frozen=True)
class Coloring:
    arcs: tuple[str, ...]
    values: tuple[int, ...]

    def __getitem__(self, arc: str) -> int:
        return self.values[self.arcs.index(arc)]

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.arcs, self.values))


@dataclass(frozen=True)
class CountResult:
    count: int
    structure: str
    link: str
    colorings: tuple[Coloring, ...] | None = None

    def pairs(self, *arcs: str) -> set[tuple[int, ...]]:
        """Distinct value tuples on the given arcs across the listed colorings."""
        if self.colorings is None:
            raise ValueError("colorings were not listed")
        return {tuple(c[a] for a in arcs) for c in self.colorings}


def extract_constraints(d: Diagram) -> ConstraintSystem:
    rels = []
    for c in d.crossings:
        if isinstance(c, ClassicalCrossing):
            rels.append(ClassicalRelation(c.under_in, c.over, c.under_out, d.arc_label(c.over)))
        else:
            rels.append(SingularRelation(c.in1, c.in2, c.out1, c.out2))
    return ConstraintSystem(d.name, tuple(sorted(d.arc_ids)), tuple(rels))


# --- solver ------------------------------------------------------------------------

def _rel_vars(r) -> tuple[str, ...]:
    if isinstance(r, ClassicalRelation):
        return (r.under_in, r.over, r.under_out)
    return (r.in1, r.in2, r.out1, r.out2)


def variable_order(cs: ConstraintSystem) -> list[str]:
    """Greedy most-constrained-first: next variable shares most relations with
    the ones already chosen; ties by degree, then arc id."""
    degree = {v: 0 for v in cs.variables}
    for r in cs.relations:
        for v in set(_rel_vars(r)):
            degree[v] += 1
    chosen: list[str] = []
    linked = {v: 0 for v in cs.variables}
    rest = set(cs.variables)
    while rest:
        v = min(rest, key=lambda u: (-linked[u], -degree[u], u))
        chosen.append(v)
        rest.discard(v)
        for r in cs.relations:
            vs = set(_rel_vars(r))
            if v in vs:
                for u in vs:
                    if u in rest:
                        linked[u] += 1
    return chosen


class _Solver:
    def __init__(self, cs: ConstraintSystem, X: DisingquandleTable, order: list[str]):
        self.vars = list(cs.variables)
        idx = {v: i for i, v in enumerate(self.vars)}
        self.n = X.order
        ops = {1: X.op1.entries.tolist(), 2: X.op2.entries.tolist()}
        self.r1 = X.r1.entries.tolist()
        self.r2 = X.r2.entries.tolist()
        self.rels = []
        for r in cs.relations:
            if isinstance(r, ClassicalRelation):
                self.rels.append(("c", idx[r.under_in], idx[r.over], idx[r.under_out], ops[r.label]))
            else:
                self.rels.append(("s", idx[r.in1], idx[r.in2], idx[r.out1], idx[r.out2]))
        self.watch: list[list[int]] = [[] for _ in self.vars]
        for k, r in enumerate(self.rels):
            for v in set(r[1:4] if r[0] == "c" else r[1:5]):
                self.watch[v].append(k)
        self.order = [idx[v] for v in order]
        self.val = [-1] * len(self.vars)

    def _set(self, v: int, x: int, trail: list[int], queue: list[int]) -> bool:
        cur = self.val[v]
        if cur >= 0:
            return cur == x
        self.val[v] = x
        trail.append(v)
        queue.append(v)
        return True

    def _propagate(self, queue: list[int], trail: list[int]) -> bool:
        val = self.val
        while queue:
            v = queue.pop()
            for k in self.watch[v]:
                r = self.rels[k]
                if r[0] == "c":
                    _, a, o, b, op = r
                    if val[o] < 0:
                        continue
                    if val[a] >= 0:
                        if not self._set(b, op[val[a]][val[o]], trail, queue):
                            return False
                    elif val[b] >= 0:
                        # involution: under_in = under_out * over
                        if not self._set(a, op[val[b]][val[o]], trail, queue):
                            return False
                else:
                    _, i1, i2, o1, o2 = r
                    if val[i1] < 0 or val[i2] < 0:
                        continue
                    if not self._set(o1, self.r1[val[i1]][val[i2]], trail, queue):
                        return False
                    if not self._set(o2, self.r2[val[i1]][val[i2]], trail, queue):
                        return False
        return True

    def _undo(self, trail: list[int]):
        for v in trail:
            self.val[v] = -1

    def run(self, first_value: int | None, list_all: bool) -> tuple[int, list[tuple[int, ...]]]:
        found: list[tuple[int, ...]] = []
        count = 0
        order = self.order

        def dfs(pos: int):
            nonlocal count
            while pos < len(order) and self.val[order[pos]] >= 0:
                pos += 1
            if pos == len(order):
                count += 1
                if list_all:
                    found.append(tuple(self.val))
                return
            v = order[pos]
            values = range(self.n) if (pos > 0 or first_value is None) else (first_value,)
            for x in values:
                trail: list[int] = []
                queue: list[int] = []
                if self._set(v, x, trail, queue) and self._propagate(queue, trail):
                    dfs(pos + 1)
                self._undo(trail)

        dfs(0)
        return count, found


def _solve_part(args):
    cs, X, order, first, list_all = args
    return _Solver(cs, X, order).run(first, list_all)


def _resolve_order(cs: ConstraintSystem, order) -> list[str]:
    if order is None:
        return variable_order(cs)
    if order == "reversed":
        return variable_order(cs)[::-1]
    order = list(order)
    if sorted(order) != sorted(cs.variables):
        raise ValueError("order must be a permutation of the variables")
    return order


def solve(cs: ConstraintSystem, X: DisingquandleTable, list_all: bool = False, *,
          jobs: int = 1, order: Sequence[str] | str | None = None,
          check: bool = True) -> CountResult:
    """Count (and optionally list) the colorings of ``cs`` by ``X``.

    ``order`` overrides the branching order: ``"reversed"`` or an explicit
    permutation of the variables.  ``jobs`` > 1 splits the first branching
    variable's values across processes.  Neither changes the result.
    """
    if check:
        report = check_disingquandle(X)
        if not report.passed:
            raise InvalidStructureError(f"structure {X.name} is not a disingquandle", report)
    seq = _resolve_order(cs, order)
    jobs = jobs or os.cpu_count() or 1
    if not cs.variables:
        parts = [(1, [()])]
    elif jobs == 1:
        parts = [_Solver(cs, X, seq).run(None, list_all)]
    else:
        tasks = [(cs, X, seq, x, list_all) for x in range(X.order)]
        with ProcessPoolExecutor(max_workers=min(jobs, X.order)) as pool:
            parts = list(pool.map(_solve_part, tasks))
    count = sum(c for c, _ in parts)
    colorings = None
    if list_all:
        vecs = sorted(v for _, found in parts for v in found)
        colorings = tuple(Coloring(cs.variables, v) for v in vecs)
    return CountResult(count, X.name, cs.name, colorings)


def count_invariant(link_file: str | Path, structure_file: str | Path,
                    list_all: bool = False, jobs: int = 1) -> CountResult:
    link_path, struct_path = Path(link_file), Path(structure_file)
    d = parse_diagram(link_path.read_text(encoding="utf-8"))
    X = parse_structure(struct_path.read_text(encoding="utf-8"))
    return solve(extract_constraints(d), X, list_all, jobs=jobs)


# --- presentations -------------------------------------------------------------------

Term = ax.Term


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relations: tuple[tuple[Term, Term], ...]

    def __post_init__(self):
        gens = set(self.generators)
        for lhs, rhs in self.relations:
            for t in (lhs, rhs):
                stray = [v for v in ax._vars(t, []) if v not in gens]
                if stray:
                    raise ValueError(f"relation uses undeclared generator {stray[0]!r}")

    def lines(self) -> list[str]:
        return [f"{ax.show(l)} = {ax.show(r)}" for l, r in self.relations]

    def __str__(self) -> str:
        return "\n".join([f"generators: {', '.join(self.generators)}"] + self.lines())


def _contains(term: Term, g: str) -> bool:
    if isinstance(term, str):
        return term == g
    return _contains(term[1], g) or _contains(term[2], g)


def _subst(term: Term, g: str, w: Term) -> Term:
    if isinstance(term, str):
        return w if term == g else term
    return (term[0], _subst(term[1], g, w), _subst(term[2], g, w))


def _tietze(gens: list[str], rels: list[tuple[Term, Term]]):
    while True:
        for k, (lhs, rhs) in enumerate(rels):
            if isinstance(lhs, str) and lhs in gens and not _contains(rhs, lhs):
                g, w = lhs, rhs
            elif isinstance(rhs, str) and rhs in gens and not _contains(lhs, rhs):
                g, w = rhs, lhs
            else:
                continue
            rest = rels[:k] + rels[k + 1:]
            rels = [(_subst(a, g, w), _subst(b, g, w)) for a, b in rest]
            rels = [(a, b) for a, b in rels if a != b]
            gens = [x for x in gens if x != g]
            break
        else:
            return gens, rels


def fundamental_presentation(d: Diagram, simplify: bool = False) -> Presentation:
    """Generators are the arcs; each crossing contributes its coloring relations.

    With ``simplify`` every generator defined by a relation ``g = w`` (``g``
    not in ``w``) is substituted away, first such relation first, until none
    is left.
    """
    rels: list[tuple[Term, Term]] = []
    for c in d.crossings:
        if isinstance(c, ClassicalCrossing):
            sym = f"op{d.arc_label(c.over)}"
            rels.append((c.under_out, (sym, c.under_in, c.over)))
        else:
            rels.append((c.out1, ("r1", c.in1, c.in2)))
            rels.append((c.out2, ("r2", c.in1, c.in2)))
    gens = list(d.arc_ids)
    if simplify:
        gens, rels = _tietze(gens, rels)
    return Presentation(tuple(gens), tuple(rels))


def hom_count_via_presentation(p: Presentation, X: DisingquandleTable) -> int:
    """Assignments of elements to generators satisfying every relation.

    Plain depth-first enumeration; a relation is tested once its last
    generator is assigned.
    """
    gens = list(p.generators)
    pos = {g: i for i, g in enumerate(gens)}
    tables = X.tables()
    pending: list[list[tuple[Term, Term]]] = [[] for _ in gens]
    for lhs, rhs in p.relations:
        vs = ax._vars(rhs, ax._vars(lhs, []))
        if not vs:
            continue
        pending[max(pos[v] for v in vs)].append((lhs, rhs))
    n = X.order
    env: dict[str, int] = {}

    def ok(k: int) -> bool:
        return all(int(ax.evaluate(l, env, tables)) == int(ax.evaluate(r, env, tables)) for l, r in pending[k])

    def dfs(k: int) -> int:
        if k == len(gens):
            return 1
        total = 0
        for x in range(n):
            env[gens[k]] = x
            if ok(k):
                total += dfs(k + 1)
        del env[gens[k]]
        return total

    return dfs(0)


__all__ = [
    "ClassicalRelation", "Coloring", "ConstraintSystem", "CountResult", "Presentation",
    "SingularRelation", "count_invariant", "extract_constraints", "fundamental_presentation",
    "hom_count_via_presentation", "solve", "variable_order",
]
