"""Exhaustive axiom verification over materialised tables."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from . import axioms as ax
from .tables import DisingquandleTable, GFamily, OperationTable, StructureError


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: Mapping[str, int]
    layer: str | None = None
    rule: ax.Axiom | None = field(default=None, compare=False, repr=False)

    def __str__(self) -> str:
        where = ", ".join(f"{k}={v}" for k, v in self.witness.items())
        prefix = f"[{self.layer}] " if self.layer else ""
        return f"{prefix}{self.axiom} fails at {where}"


@dataclass(frozen=True)
class AxiomReport:
    violations: tuple[Violation, ...] = ()
    checked: tuple[str, ...] = field(default=(), compare=False)

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.passed

    def axioms_failed(self) -> set[str]:
        return {v.axiom for v in self.violations}

    def summary(self) -> str:
        if self.passed:
            k = len(self.checked)
            return f"PASS (all {k} axiom families)" if k != 1 else "PASS (1 axiom family)"
        lines = [f"FAIL ({len(self.violations)} violated axiom instances reported)"]
        lines += [f"  {v}" for v in self.violations]
        return "\n".join(lines)


class InvalidStructureError(ValueError):
    """Raised when an operation needs a valid structure and gets an invalid one."""

    def __init__(self, message: str, report: AxiomReport):
        super().__init__(f"{message}\n{report.summary()}")
        self.report = report


def _scan(axioms: Iterable, tables: Mapping[str, np.ndarray], n: int,
          layer: str | None = None, exhaustive: bool = False) -> list[Violation]:
    out = []
    for a in axioms:
        # the stored rule is bound to the layer so it re-evaluates on the structure's tables
        rule = a.bind(op=layer) if layer in ("op1", "op2") else a
        if exhaustive:
            out += [Violation(a.name, w, layer, rule) for w in ax.all_violations(a, tables, n)]
        else:
            w = ax.first_violation(a, tables, n)
            if w is not None:
                out.append(Violation(a.name, w, layer, rule))
    return out


def check_involutive_quandle(op: OperationTable, *, exhaustive: bool = False) -> AxiomReport:
    axioms = ax.INVOLUTIVE_QUANDLE
    viol = _scan(axioms, {"op": op.entries}, op.order, exhaustive=exhaustive)
    return AxiomReport(tuple(viol), ax.families(axioms))


def check_quandle(op: OperationTable) -> AxiomReport:
    """Idempotency, right-invertibility and right self-distributivity."""
    t = op.entries
    n = op.order
    viol = _scan((ax.IDEMPOTENCY, ax.DISTRIBUTIVITY), {"op": t}, n)
    for y in range(n):
        column = t[:, y]
        if len(set(column.tolist())) != n:
            # first pair of x's colliding under right multiplication by y
            seen: dict[int, int] = {}
            for x, v in enumerate(column.tolist()):
                if v in seen:
                    viol.append(Violation("right-invertibility", {"x": seen[v], "x2": x, "y": y}))
                    break
                seen[v] = x
            break
    return AxiomReport(tuple(viol), ("quandle",))


def check_singquandle(op: OperationTable, r1: OperationTable, r2: OperationTable, *,
                      rotation: bool = True, strict_rotation: bool = False,
                      strict_pair_map: bool = False, exhaustive: bool = False,
                      layer: str | None = None) -> AxiomReport:
    """Check (X, op, R1, R2) against the singquandle axioms.

    Quandle violations of ``op`` come first in the report; the remaining
    axioms are still scanned so one report shows everything that is wrong.
    """
    n = op.order
    if r1.order != n or r2.order != n:
        raise StructureError(f"table orders differ: op={n}, R1={r1.order}, R2={r2.order}")
    quandle = list(ax.INVOLUTIVE_QUANDLE)
    sing = [a.bind(op="op") for a in ax.singquandle_axioms(rotation, strict_rotation, strict_pair_map)]
    tables = {"op": op.entries, "r1": r1.entries, "r2": r2.entries}
    viol = _scan(quandle, tables, n, layer, exhaustive) + _scan(sing, tables, n, layer, exhaustive)
    return AxiomReport(tuple(viol), ax.families(quandle + sing))


def check_disingquandle(d: DisingquandleTable, *, rotation: bool = True,
                        strict_rotation: bool = False, strict_pair_map: bool = False,
                        exhaustive: bool = False) -> AxiomReport:
    """Both singquandle layers plus the six mixing axioms."""
    n = d.order
    flags = dict(rotation=rotation, strict_rotation=strict_rotation,
                 strict_pair_map=strict_pair_map, exhaustive=exhaustive)
    first = check_singquandle(d.op1, d.r1, d.r2, layer="op1", **flags)
    second = check_singquandle(d.op2, d.r1, d.r2, layer="op2", **flags)
    mixed = _scan(ax.MIXING_AXIOMS, d.tables(), n, "mixed", exhaustive)
    checked = first.checked + ax.families(ax.MIXING_AXIOMS)
    return AxiomReport(first.violations + second.violations + tuple(mixed), checked)


# --- G-families ----------------------------------------------------------------

def check_g_family(f: GFamily, *, strict_identity: bool = False) -> AxiomReport:
    """Check the four G-family axioms.

    With ``strict_identity`` the identity axiom is the literal ``x *^e x = x``
    instead of the usual ``x *^e y = x``.
    """
    G = f.group
    m, n = f.group_order, f.set_order
    F = f.stacked()
    mult = G.mult.entries
    inv = G.inverse
    e = G.identity
    viol: list[Violation] = []

    g, x = np.indices((m, n))
    bad = np.argwhere(F[g, x, x] != x)
    if len(bad):
        viol.append(Violation("gfam-idempotency", dict(zip("gx", map(int, bad[0])))))

    g, h, x, y = np.indices((m, m, n, n))
    bad = np.argwhere(F[h, F[g, x, y], y] != F[mult[g, h], x, y])
    if len(bad):
        viol.append(Violation("gfam-composition", dict(zip("ghxy", map(int, bad[0])))))

    x, y = np.indices((n, n))
    if strict_identity:
        bad = np.argwhere(F[e, x, x] != x)
    else:
        bad = np.argwhere(F[e, x, y] != x)
    if len(bad):
        viol.append(Violation("gfam-identity", dict(zip("xy", map(int, bad[0])))))

    g, h, x, y, z = np.indices((m, m, n, n, n))
    conj = mult[mult[inv[h], g], h]
    lhs = F[h, F[g, x, y], z]
    rhs = F[conj, F[h, x, z], F[h, y, z]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        viol.append(Violation("gfam-distributivity", dict(zip("ghxyz", map(int, bad[0])))))

    checked = ("gfam-idempotency", "gfam-composition", "gfam-identity", "gfam-distributivity")
    return AxiomReport(tuple(viol), checked)


def induced_quandle(f: GFamily) -> OperationTable:
    """Quandle on G x X: (g,x)*(h,y) = (h^-1 g h, x *^h y); pair (g,x) is index g*n + x."""
    report = check_g_family(f)
    if not report.passed:
        raise InvalidStructureError(f"{f.name!r} is not a G-family", report)
    m, n = f.group_order, f.set_order
    F = f.stacked()
    mult = f.group.mult.entries
    inv = f.group.inverse
    g, x, h, y = np.indices((m, n, m, n))
    first = mult[mult[inv[h], g], h]
    second = F[h, x, y]
    table = OperationTable((first * n + second).reshape(m * n, m * n))
    q = check_quandle(table)
    if not q.passed:
        raise InvalidStructureError("induced operation on G x X is not a quandle", q)
    return table
