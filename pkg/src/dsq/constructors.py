"""Named builders for the example structures and families.

Every builder returns fully materialised tables; nothing here evaluates a
symbolic expression after construction.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .algebra.checks import AxiomReport, Violation
from .algebra.tables import (
    DisingquandleTable,
    GFamily,
    Group,
    OperationTable,
    StructureError,
    cyclic_group,
    symmetric_group,
)


def build_dihedral(n: int) -> OperationTable:
    """x * y = 2y - x (mod n)."""
    if n < 1:
        raise StructureError("n must be positive")
    return OperationTable.from_function(n, lambda x, y: 2 * y - x)


def build_trivial_quandle(n: int) -> OperationTable:
    return OperationTable.from_function(n, lambda x, y: x)


def build_core(group: Group) -> OperationTable:
    """Core quandle x * y = y x^-1 y."""
    t = group.mult.entries
    inv = group.inverse
    x, y = np.indices((group.order,) * 2)
    return OperationTable(t[t[y, inv[x]], y])


def build_tetrahedral() -> OperationTable:
    """Alexander quandle on F4 = {0, 1, w, w^2} with x * y = w x + (1 - w) y.

    Elements are encoded as 2-bit vectors a + b w (index a + 2b), w^2 = w + 1.
    """
    def mul(u, v):
        a, b = u & 1, u >> 1
        c, d = v & 1, v >> 1
        # (a + bw)(c + dw) = ac + (ad + bc) w + bd w^2
        lo = (a * c + b * d) % 2
        hi = (a * d + b * c + b * d) % 2
        return lo | (hi << 1)

    w = 2
    one_minus_w = 1 ^ w
    return OperationTable([[mul(w, x) ^ mul(one_minus_w, y) for y in range(4)] for x in range(4)])


def parse_group(descriptor: str) -> Group:
    """``Z<m>`` (cyclic) or ``S<k>`` (symmetric)."""
    m = re.fullmatch(r"([ZS])(\d+)", descriptor.strip())
    if not m:
        raise ValueError(f"unknown group descriptor {descriptor!r}; use Z<m> or S<k>")
    kind, k = m.group(1), int(m.group(2))
    if k < 1:
        raise ValueError("group size parameter must be positive")
    return cyclic_group(k) if kind == "Z" else symmetric_group(k)


def _from(n, op, r1, r2, name) -> DisingquandleTable:
    return DisingquandleTable(op, op, OperationTable.from_function(n, r1),
                              OperationTable.from_function(n, r2), name=name)


def build_z6_paper() -> DisingquandleTable:
    """Z6, both operations -x + 2y, R1 = x + 3, R2 = 3x^2 + 3x + y + 3."""
    return _from(6, build_dihedral(6), lambda x, y: x + 3,
                 lambda x, y: 3 * x * x + 3 * x + y + 3, "z6-paper")


def build_affine_m(n: int, m: int) -> DisingquandleTable:
    """Dihedral Z_n with R1 = m x + (2m+1) y and R2 = (m-1) x + 2(m+1) y."""
    if n < 1 or n % 2 == 0:
        raise StructureError(f"Z_{n} has 2-torsion; the m-family needs odd n")
    return _from(n, build_dihedral(n), lambda x, y: m * x + (2 * m + 1) * y,
                 lambda x, y: (m - 1) * x + 2 * (m + 1) * y, f"affine-m-n{n}-m{m % n}")


def build_affine_B(n: int, B: int) -> DisingquandleTable:
    """Dihedral Z_n with R1 = (2-B) x + (B-1) y and R2 = (1-B) x + B y.

    Not validated: most members of this family are expected to fail.
    """
    if n < 2:
        raise StructureError("modulus must be at least 2")
    return _from(n, build_dihedral(n), lambda x, y: (2 - B) * x + (B - 1) * y,
                 lambda x, y: (1 - B) * x + B * y, f"affine-B-n{n}-B{B % n}")


def primitive_root(p: int) -> int:
    if p < 3 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"{p} is not an odd prime")
    factors = {q for q in range(2, p) if (p - 1) % q == 0 and all(q % r for r in range(2, q))}
    return next(g for g in range(2, p) if all(pow(g, (p - 1) // q, p) != 1 for q in factors))


def build_prime_zeta(p: int) -> DisingquandleTable:
    """B-family on Z_p with 1 - B = zeta^((p-1)/2) for a primitive root zeta."""
    zeta = primitive_root(p)
    B = (1 - pow(zeta, (p - 1) // 2, p)) % p
    d = build_affine_B(p, B)
    return DisingquandleTable(d.op1, d.op2, d.r1, d.r2, name=f"prime-zeta-p{p}-B{B}")


def build_trivial_disingquandle(n: int, c: int = 0) -> DisingquandleTable:
    """Trivial operations with R1 = R2 = x + y + c; the caller runs the checker."""
    if n < 1:
        raise StructureError("n must be positive")
    r = lambda x, y: x + y + c
    return _from(n, build_trivial_quandle(n), r, r, f"trivial-n{n}-c{c % n}")


def build_identity_disingquandle(op: OperationTable, name: str = "identity") -> DisingquandleTable:
    """Both operations ``op`` with R1(x, y) = x and R2(x, y) = y."""
    n = op.order
    return _from(n, op, lambda x, y: x, lambda x, y: y, name)


def right_multiplication(q: OperationTable, y: int) -> list[int]:
    return q.entries[:, y].tolist()


def build_cyclic_type_family(q: OperationTable, name: str = "cyclic-type") -> GFamily:
    """Z_(n-1)-family x *^i y = R_y^i(x) of a quandle of cyclic type."""
    n = q.order
    if n < 2:
        raise StructureError("a quandle of cyclic type needs at least two elements")
    for y in range(n):
        perm = right_multiplication(q, y)
        if perm[y] != y:
            raise StructureError(f"right multiplication by {y} does not fix {y}")
        start = (y + 1) % n
        orbit, cur = [start], perm[start]
        while cur != start and len(orbit) < n:
            orbit.append(cur)
            cur = perm[cur]
        if cur != start or len(orbit) != n - 1:
            raise StructureError(
                f"not of cyclic type: right multiplication by {y} is not a single "
                f"cycle of length {n - 1} on the other elements"
            )
    m = n - 1
    ops = []
    power = np.tile(np.arange(n), (n, 1)).T  # power[x, y] = R_y^0(x) = x
    cols = q.entries
    for _ in range(m):
        ops.append(OperationTable(power.copy()))
        power = cols[power, np.arange(n)[None, :]]
    return GFamily(cyclic_group(m), tuple(ops), name=name)


def build_trivial_gfamily(group: Group, n: int, name: str = "trivial-gfamily") -> GFamily:
    triv = build_trivial_quandle(n)
    return GFamily(group, tuple(triv for _ in range(group.order)), name=name)


# --- specialised condition lists -----------------------------------------------

def _first(bad: np.ndarray, names: str) -> dict[str, int]:
    return {k: int(v) for k, v in zip(names, bad[0])}


def check_dihedral_conditions(n: int, r1: OperationTable, r2: OperationTable) -> AxiomReport:
    """The four conditions for (Z_n, 2y - x, R1, R2) to be a singquandle (n odd)."""
    R1, R2 = r1.entries, r2.entries
    x, y = np.indices((n, n))
    viol = []
    checks2 = [
        ("dihedral-1", R2[x, y], (R1[x, y] + y - x) % n),
        ("dihedral-2", R1[x, y], (R1[(2 * x - y) % n, x] + y - x) % n),
    ]
    for name, lhs, rhs in checks2:
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            viol.append(Violation(name, _first(bad, "xy")))
    x, y, z = np.indices((n, n, n))
    checks3 = [
        ("dihedral-3", R1[x, (2 * y - z) % n], (2 * y - R1[(2 * y - x) % n, z]) % n),
        ("dihedral-4", R2[(2 * y - x) % n, z], (2 * y - R2[x, (2 * y - z) % n]) % n),
    ]
    for name, lhs, rhs in checks3:
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            viol.append(Violation(name, _first(bad, "xyz")))
    return AxiomReport(tuple(viol), ("dihedral-1", "dihedral-2", "dihedral-3", "dihedral-4"))


def check_core_conditions(group: Group, r1: OperationTable, r2: OperationTable) -> AxiomReport:
    """The five conditions for (G, y x^-1 y, R1, R2) to be a singquandle."""
    t = group.mult.entries
    inv = group.inverse
    R1, R2 = r1.entries, r2.entries
    m = group.order

    def mul(*args):
        out = args[0]
        for a in args[1:]:
            out = t[out, a]
        return out

    viol = []
    x, y, z = np.indices((m, m, m))
    # R2(x,z) z^-1 y z^-1 R2(x,z) = R1(x,z) x^-1 y x^-1 R1(x,z)
    lhs = mul(R2[x, z], inv[z], y, inv[z], R2[x, z])
    rhs = mul(R1[x, z], inv[x], y, inv[x], R1[x, z])
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        viol.append(Violation("core-1", _first(bad, "xyz")))

    x, y = np.indices((m, m))
    xyx = mul(x, inv[y], x)
    for name, lhs, rhs in (
        ("core-2", R1[x, y], R2[xyx, x]),
        ("core-3", R2[x, y], mul(R2[xyx, x], inv[R1[xyx, x]], R2[xyx, x])),
    ):
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            viol.append(Violation(name, _first(bad, "xy")))

    x, y, z = np.indices((m, m, m))
    yxy = mul(y, inv[x], y)
    yzy = mul(y, inv[z], y)
    for name, lhs, rhs in (
        ("core-4", mul(y, inv[R1[yxy, z]], y), R1[x, yzy]),
        ("core-5", R2[yxy, z], mul(y, inv[R2[x, yzy]], y)),
    ):
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            viol.append(Violation(name, _first(bad, "xyz")))
    return AxiomReport(tuple(viol), ("core-1", "core-2", "core-3", "core-4", "core-5"))


def check_reduced_dihedral_identity(n: int, r1: OperationTable, r2: OperationTable) -> AxiomReport:
    """R2 = R1 + y - x together with R1(x,y) = R1(2x - y, x) + y - x."""
    rep = check_dihedral_conditions(n, r1, r2)
    viol = tuple(v for v in rep.violations if v.axiom in ("dihedral-1", "dihedral-2"))
    return AxiomReport(viol, ("dihedral-1", "dihedral-2"))


def check_core_solution_equations(group: Group, r1: OperationTable, r2: OperationTable) -> AxiomReport:
    """The two equations characterising core-quandle disingquandles (conditions 1 and 3)."""
    rep = check_core_conditions(group, r1, r2)
    viol = tuple(v for v in rep.violations if v.axiom in ("core-1", "core-3"))
    return AxiomReport(viol, ("core-1", "core-3"))


# --- named families ------------------------------------------------------------

FAMILY_PARAMS: dict[str, tuple[str, ...]] = {
    "dihedral": ("n",),
    "core": ("group",),
    "trivial": ("n", "c"),
    "affine-m": ("n", "m"),
    "affine-B": ("n", "B"),
    "z6-paper": (),
    "prime-zeta": ("p",),
    "cyclic-type-family": ("quandle",),
    "trivial-gfamily": ("group", "n"),
}


@dataclass(frozen=True)
class FamilySpec:
    name: str
    params: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if self.name not in FAMILY_PARAMS:
            raise ValueError(f"unknown family {self.name!r}; choose from {', '.join(FAMILY_PARAMS)}")
        need = set(FAMILY_PARAMS[self.name])
        have = set(self.params)
        if need != have:
            missing = sorted(need - have)
            extra = sorted(have - need)
            raise ValueError(f"family {self.name!r} needs parameters {sorted(need)}"
                             + (f"; missing {missing}" if missing else "")
                             + (f"; unexpected {extra}" if extra else ""))
        for key in ("n", "p"):
            if key in self.params and int(self.params[key]) < 1:
                raise ValueError(f"{key} must be at least 1")


def _named_quandle(name: str) -> OperationTable:
    m = re.fullmatch(r"dihedral(\d+)", name)
    if m:
        return build_dihedral(int(m.group(1)))
    if name == "tetrahedral":
        return build_tetrahedral()
    raise ValueError(f"unknown quandle {name!r}; use dihedral<n> or tetrahedral")


def build_family(spec: FamilySpec) -> DisingquandleTable | GFamily:
    p = spec.params
    if spec.name == "dihedral":
        n = int(p["n"])
        return build_identity_disingquandle(build_dihedral(n), f"dihedral-n{n}")
    if spec.name == "core":
        g = parse_group(str(p["group"]))
        return build_identity_disingquandle(build_core(g), f"core-{g.name}")
    if spec.name == "trivial":
        return build_trivial_disingquandle(int(p["n"]), int(p["c"]))
    if spec.name == "affine-m":
        return build_affine_m(int(p["n"]), int(p["m"]))
    if spec.name == "affine-B":
        return build_affine_B(int(p["n"]), int(p["B"]))
    if spec.name == "z6-paper":
        return build_z6_paper()
    if spec.name == "prime-zeta":
        return build_prime_zeta(int(p["p"]))
    if spec.name == "cyclic-type-family":
        q = str(p["quandle"])
        return build_cyclic_type_family(_named_quandle(q), name=f"cyclic-{q}")
    g = parse_group(str(p["group"]))
    return build_trivial_gfamily(g, int(p["n"]), name=f"trivial-{g.name}-n{int(p['n'])}")
