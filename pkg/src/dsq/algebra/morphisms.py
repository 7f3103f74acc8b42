"""Homomorphisms, sub-structures and hom-set enumeration."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .checks import AxiomReport, InvalidStructureError, Violation
from .tables import DisingquandleTable, StructureError

_PARTS = ("op1", "op2", "r1", "r2")


@dataclass(frozen=True)
class StructureMap:
    domain: DisingquandleTable
    codomain: DisingquandleTable
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if len(self.values) != self.domain.order:
            raise StructureError(f"map has {len(self.values)} values for a domain of order {self.domain.order}")
        bad = [v for v in self.values if not 0 <= v < self.codomain.order]
        if bad:
            raise StructureError(f"map value {bad[0]} outside codomain 0..{self.codomain.order - 1}")

    def __call__(self, x: int) -> int:
        return self.values[x]


def _hom_conditions(strict: bool):
    # (name, domain table, codomain table)
    yield "hom-op1", "op1", "op1"
    yield "hom-op2", "op2", "op2"
    yield "hom-r1", "r1", "r1"
    # the printed fourth condition compares against R1'; default uses R2'
    yield "hom-r2", "r2", ("r1" if strict else "r2")


def check_homomorphism(f: StructureMap, *, strict: bool = False) -> AxiomReport:
    src = f.domain.tables()
    dst = f.codomain.tables()
    v = np.asarray(f.values)
    x, y = np.indices((f.domain.order,) * 2)
    viol = []
    for name, a, b in _hom_conditions(strict):
        bad = np.argwhere(v[src[a][x, y]] != dst[b][v[x], v[y]])
        if len(bad):
            viol.append(Violation(name, {"x": int(bad[0][0]), "y": int(bad[0][1])}))
    return AxiomReport(tuple(viol), tuple(c[0] for c in _hom_conditions(strict)))


def is_isomorphism(f: StructureMap) -> bool:
    if len(set(f.values)) != f.domain.order or f.domain.order != f.codomain.order:
        return False
    inverse = [0] * f.domain.order
    for i, v in enumerate(f.values):
        inverse[v] = i
    back = StructureMap(f.codomain, f.domain, inverse)
    return check_homomorphism(f).passed and check_homomorphism(back).passed


def is_sub_disingquandle(subset: Iterable[int], d: DisingquandleTable) -> bool:
    """Closure under *1, *2, R1 and R2 (the axioms then restrict automatically)."""
    s = sorted(set(subset))
    if not s:
        raise StructureError("subset must be non-empty")
    if s[0] < 0 or s[-1] >= d.order:
        raise StructureError(f"index outside 0..{d.order - 1}")
    return all(t.restrict_closed(s) for t in (d.op1, d.op2, d.r1, d.r2))


def image_substructure(f: StructureMap) -> set[int]:
    report = check_homomorphism(f)
    if not report.passed:
        raise InvalidStructureError("map is not a homomorphism", report)
    return set(f.values)


def enumerate_homs(X: DisingquandleTable, Y: DisingquandleTable) -> list[StructureMap]:
    """Every homomorphism X -> Y, lexicographic in the value array.

    Depth-first over f(0), f(1), ...; a condition at (a, b) is checked as soon
    as f(a), f(b) and f of the image are all assigned.
    """
    n = X.order
    src = [X.tables()[p].tolist() for p in _PARTS]
    dst = [Y.tables()[p].tolist() for p in _PARTS]
    # pending[k]: (a, b, table) triples whose last needed value is f(k)
    pending: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for t in range(4):
        for a in range(n):
            for b in range(n):
                pending[max(a, b, src[t][a][b])].append((a, b, t))
    f = [0] * n
    found: list[StructureMap] = []

    def extend(k: int):
        if k == n:
            found.append(StructureMap(X, Y, tuple(f)))
            return
        for val in range(Y.order):
            f[k] = val
            if all(f[src[t][a][b]] == dst[t][f[a]][f[b]] for a, b, t in pending[k]):
                extend(k + 1)

    extend(0)
    return found


def relabel_map(d: DisingquandleTable, perm: Sequence[int]) -> StructureMap:
    """The isomorphism d -> d.relabel(perm) given by i -> perm[i]."""
    return StructureMap(d, d.relabel(perm), tuple(perm))
