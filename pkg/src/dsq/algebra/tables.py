"""Finite operation tables, groups and the structures built from them."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np


class StructureError(ValueError):
    """A table or structure is malformed (wrong shape, out-of-range entry, ...)."""


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=np.int64, copy=True)
    arr.setflags(write=False)
    return arr


class OperationTable:
    """An n x n table over {0..n-1}; entry (x, y) is the value of x o y."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Sequence[Sequence[int]] | np.ndarray):
        arr = np.asarray(entries)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise StructureError(f"operation table must be a non-empty square array, got shape {arr.shape}")
        if not np.issubdtype(arr.dtype, np.integer):
            raise StructureError("operation table entries must be integers")
        n = arr.shape[0]
        if arr.min() < 0 or arr.max() >= n:
            bad = np.argwhere((arr < 0) | (arr >= n))[0]
            raise StructureError(f"entry {tuple(int(i) for i in bad)} = {int(arr[tuple(bad)])} outside 0..{n - 1}")
        self._entries = _freeze(arr)

    @classmethod
    def from_function(cls, n: int, f: Callable[[int, int], int]) -> "OperationTable":
        """Materialise ``f`` on Z_n x Z_n, reducing every value mod n."""
        return cls([[f(x, y) % n for y in range(n)] for x in range(n)])

    @property
    def order(self) -> int:
        return self._entries.shape[0]

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    def __call__(self, x: int, y: int) -> int:
        return int(self._entries[x, y])

    def rows(self) -> list[list[int]]:
        return self._entries.tolist()

    def relabel(self, perm: Sequence[int]) -> "OperationTable":
        """Transport the table along the bijection i -> perm[i]."""
        p = np.asarray(perm)
        out = np.empty_like(self._entries)
        out[np.ix_(p, p)] = p[self._entries]
        return OperationTable(out)

    def restrict_closed(self, subset: Iterable[int]) -> bool:
        s = sorted(set(subset))
        block = self._entries[np.ix_(s, s)]
        return bool(np.isin(block, s).all())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, OperationTable) and np.array_equal(self._entries, other._entries)

    def __hash__(self) -> int:
        return hash((self.order, self._entries.tobytes()))

    def __repr__(self) -> str:
        return f"OperationTable(order={self.order})"


@dataclass(frozen=True)
class DisingquandleTable:
    """The quintuple (X, *1, *2, R1, R2) as four materialised tables."""

    op1: OperationTable
    op2: OperationTable
    r1: OperationTable
    r2: OperationTable
    name: str = "unnamed"

    def __post_init__(self):
        orders = {t.order for t in (self.op1, self.op2, self.r1, self.r2)}
        if len(orders) != 1:
            raise StructureError(f"tables of {self.name!r} have mismatched orders {sorted(orders)}")

    @property
    def order(self) -> int:
        return self.op1.order

    @classmethod
    def from_functions(cls, n, op1, op2, r1, r2, name="unnamed") -> "DisingquandleTable":
        f = OperationTable.from_function
        return cls(f(n, op1), f(n, op2), f(n, r1), f(n, r2), name=name)

    def swapped(self) -> "DisingquandleTable":
        """Exchange the roles of *1 and *2."""
        return DisingquandleTable(self.op2, self.op1, self.r1, self.r2, name=f"{self.name}~swap")

    def relabel(self, perm: Sequence[int], name: str | None = None) -> "DisingquandleTable":
        return DisingquandleTable(
            *(t.relabel(perm) for t in (self.op1, self.op2, self.r1, self.r2)),
            name=name or self.name,
        )

    def vector(self) -> tuple[int, ...]:
        """Flattened (op1, op2, r1, r2) row-major; the canonical sort key."""
        return tuple(np.concatenate([t.entries.ravel() for t in (self.op1, self.op2, self.r1, self.r2)]).tolist())

    def tables(self) -> dict[str, np.ndarray]:
        return {"op1": self.op1.entries, "op2": self.op2.entries, "r1": self.r1.entries, "r2": self.r2.entries}


class Group:
    """A finite group given by its multiplication table; verified on construction."""

    def __init__(self, mult: Sequence[Sequence[int]] | np.ndarray | OperationTable, name: str = "G"):
        table = mult if isinstance(mult, OperationTable) else OperationTable(mult)
        m = table.order
        t = table.entries
        self.name = name
        self.mult = table
        ids = [e for e in range(m) if (t[e] == np.arange(m)).all() and (t[:, e] == np.arange(m)).all()]
        if not ids:
            raise StructureError(f"group {name!r} has no identity element")
        self.identity = ids[0]
        i, j, k = np.indices((m, m, m))
        bad = np.argwhere(t[t[i, j], k] != t[i, t[j, k]])
        if len(bad):
            raise StructureError(f"group {name!r} is not associative at {tuple(int(v) for v in bad[0])}")
        inv = []
        for g in range(m):
            hits = np.flatnonzero(t[g] == self.identity)
            if len(hits) != 1 or t[hits[0], g] != self.identity:
                raise StructureError(f"element {g} of group {name!r} has no two-sided inverse")
            inv.append(int(hits[0]))
        self.inverse = _freeze(inv)

    @property
    def order(self) -> int:
        return self.mult.order

    def mul(self, g: int, h: int) -> int:
        return self.mult(g, h)

    def inv(self, g: int) -> int:
        return int(self.inverse[g])

    @property
    def is_abelian(self) -> bool:
        t = self.mult.entries
        return bool((t == t.T).all())

    def __repr__(self) -> str:
        return f"Group({self.name!r}, order={self.order})"


def cyclic_group(m: int) -> Group:
    return Group([[(a + b) % m for b in range(m)] for a in range(m)], name=f"Z{m}")


def symmetric_group(k: int) -> Group:
    """S_k with elements indexed by the lexicographic order of permutations."""
    from itertools import permutations

    perms = list(permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    # (p*q)(i) = p(q(i))
    table = [[index[tuple(p[q[i]] for i in range(k))] for q in perms] for p in perms]
    return Group(table, name=f"S{k}")


@dataclass(frozen=True)
class GFamily:
    """A group G together with one operation *^g on X for every g in G."""

    group: Group
    ops: tuple[OperationTable, ...]
    name: str = "unnamed"

    def __post_init__(self):
        if len(self.ops) != self.group.order:
            raise StructureError(f"G-family {self.name!r} needs {self.group.order} operations, got {len(self.ops)}")
        sizes = {op.order for op in self.ops}
        if len(sizes) != 1:
            raise StructureError(f"G-family {self.name!r} operations act on sets of different sizes {sorted(sizes)}")

    @property
    def group_order(self) -> int:
        return self.group.order

    @property
    def set_order(self) -> int:
        return self.ops[0].order

    @property
    def identity(self) -> int:
        return self.group.identity

    def stacked(self) -> np.ndarray:
        """Array F with F[g, x, y] = x *^g y."""
        return np.stack([op.entries for op in self.ops])
