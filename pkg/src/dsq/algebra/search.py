"""Parameter searches and exhaustive enumeration of small disingquandles."""
from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from typing import Iterator

from . import axioms as ax
from .checks import check_disingquandle
from .tables import DisingquandleTable, OperationTable

DEFAULT_ORDER_LIMIT = 4
FAMILIES = ("B", "m")


def search_affine(modulus: int, family: str, **flags) -> list[int]:
    """Parameters p in Z_n for which the affine family member is a disingquandle."""
    from ..constructors import build_affine_B, build_affine_m

    if family not in FAMILIES:
        raise ValueError(f"unknown affine family {family!r}; expected one of {FAMILIES}")
    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    if family == "m" and modulus % 2 == 0:
        raise ValueError("the m-family needs an odd modulus (2-torsion)")
    build = build_affine_B if family == "B" else build_affine_m
    return [p for p in range(modulus) if check_disingquandle(build(modulus, p), **flags).passed]


# --- cell-by-cell backtracking ------------------------------------------------

_TABLE_ORDER = ("op1", "op2", "r1", "r2")


def _compile(term, var_pos: dict[str, int], n: int):
    """Partial evaluator: value >= 0, or -(cell + 1) for the first unassigned cell hit."""
    if isinstance(term, str):
        i = var_pos[term]
        return lambda env, vals: env[i]
    sym, a, b = term
    base = _TABLE_ORDER.index(sym) * n * n
    fa = _compile(a, var_pos, n)
    fb = _compile(b, var_pos, n)

    def f(env, vals):
        u = fa(env, vals)
        if u < 0:
            return u
        w = fb(env, vals)
        if w < 0:
            return w
        cell = base + u * n + w
        v = vals[cell]
        return v if v >= 0 else -cell - 1

    return f


class _Engine:
    """Depth-first assignment of the 4n^2 table cells in canonical order.

    Every axiom instance sits on the watch list of the first unassigned cell
    its evaluation reaches; assigning that cell re-evaluates it, and it either
    passes, fails (prune) or moves to a later cell's list.
    """

    def __init__(self, n: int, flags: dict):
        self.n = n
        self.size = 4 * n * n
        self.checks = []
        for _, axiom in ax.disingquandle_axioms(**flags):
            names = axiom.variables
            pos = {v: i for i, v in enumerate(names)}
            lhs = _compile(axiom.lhs, pos, n)
            rhs = _compile(axiom.rhs, pos, n)
            for env in itertools.product(range(n), repeat=len(names)):
                self.checks.append((lhs, rhs, env))

    def _evaluate(self, k: int, vals) -> int:
        """1 holds, 0 fails, -(cell+1) blocked."""
        lhs, rhs, env = self.checks[k]
        a = lhs(env, vals)
        if a < 0:
            return a
        b = rhs(env, vals)
        if b < 0:
            return b
        return 1 if a == b else 0

    def run(self, prefix: tuple[int, ...] = (), depth: int | None = None) -> Iterator[tuple[int, ...]]:
        """Yield every full assignment (or every valid length-``depth`` prefix) extending ``prefix``."""
        n, size = self.n, self.size
        stop = size if depth is None else depth
        vals = [-1] * size
        watch: list[list[int]] = [[] for _ in range(size)]
        for k in range(len(self.checks)):
            r = self._evaluate(k, vals)
            if r == 0:
                return
            if r < 0:
                watch[-r - 1].append(k)

        def assign(pos: int, v: int) -> list[int] | None:
            vals[pos] = v
            moved: list[int] = []
            for k in watch[pos]:
                r = self._evaluate(k, vals)
                if r == 0:
                    for c in reversed(moved):
                        watch[c].pop()
                    return None
                if r < 0:
                    watch[-r - 1].append(k)
                    moved.append(-r - 1)
            return moved

        def unassign(pos: int, moved: list[int]):
            for c in reversed(moved):
                watch[c].pop()
            vals[pos] = -1

        trail = []
        for pos, v in enumerate(prefix):
            moved = assign(pos, v)
            if moved is None:
                return
            trail.append(moved)

        def dfs(pos: int):
            if pos == stop:
                yield tuple(vals[:pos])
                return
            for v in range(n):
                moved = assign(pos, v)
                if moved is None:
                    vals[pos] = -1
                    continue
                yield from dfs(pos + 1)
                unassign(pos, moved)

        yield from dfs(len(prefix))


def _structure(n: int, vec: tuple[int, ...], name: str) -> DisingquandleTable:
    k = n * n
    tabs = [OperationTable([list(vec[i * k + r * n:i * k + (r + 1) * n]) for r in range(n)]) for i in range(4)]
    return DisingquandleTable(*tabs, name=name)


def _worker(args) -> list[tuple[int, ...]]:
    n, flags, prefix = args
    return list(_Engine(n, flags).run(prefix))


def canonical_vector(d: DisingquandleTable) -> tuple[int, ...]:
    """Lexicographically least relabelling; equal iff the structures are isomorphic."""
    return min(d.relabel(p).vector() for p in itertools.permutations(range(d.order)))


def enumerate_disingquandles(order: int, up_to_iso: bool = False, *, jobs: int = 1,
                             limit: int = DEFAULT_ORDER_LIMIT,
                             **flags) -> Iterator[DisingquandleTable]:
    """Every disingquandle on {0..order-1}, in lexicographic order of (op1, op2, r1, r2).

    With ``up_to_iso`` only the first member of each isomorphism class is
    emitted.  The output does not depend on ``jobs``.
    """
    if order < 1:
        raise ValueError("order must be positive")
    if order > limit:
        raise ValueError(f"order {order} exceeds the enumeration limit {limit} "
                         f"(raw space {order}^{4 * order * order}); raise limit explicitly")
    jobs = jobs or os.cpu_count() or 1
    engine = _Engine(order, flags)
    if jobs == 1:
        vectors: Iterator[tuple[int, ...]] = engine.run()
    else:
        # split on the valid prefixes of the first rows of *1
        depth = min(order * order, 2 * order)
        prefixes = list(engine.run(depth=depth))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = pool.map(_worker, [(order, flags, p) for p in prefixes])
            vectors = (v for chunk in chunks for v in chunk)
    seen: set[tuple[int, ...]] = set()
    count = 0
    for vec in vectors:
        d = _structure(order, vec, f"dsq{order}-{count}")
        count += 1
        if up_to_iso:
            key = canonical_vector(d)
            if key in seen:
                continue
            seen.add(key)
        yield d
