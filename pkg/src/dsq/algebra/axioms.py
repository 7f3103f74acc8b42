"""Axioms as pairs of terms over named binary tables.

A term is either a variable name (``"x"``) or a triple ``(symbol, left, right)``
where ``symbol`` names a table: ``op`` (the quandle operation of a singquandle
layer, rebound to ``op1``/``op2`` when instantiated), ``op1``, ``op2``, ``r1``,
``r2``.  The same axiom objects drive the vectorised checker and the
cell-by-cell enumeration engine.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Mapping, Union

import numpy as np

Term = Union[str, tuple]


def _vars(term: Term, acc: list[str]) -> list[str]:
    if isinstance(term, str):
        if term not in acc:
            acc.append(term)
    else:
        _vars(term[1], acc)
        _vars(term[2], acc)
    return acc


def rename(term: Term, mapping: Mapping[str, str]) -> Term:
    """Rename table symbols inside ``term``."""
    if isinstance(term, str):
        return term
    sym, a, b = term
    return (mapping.get(sym, sym), rename(a, mapping), rename(b, mapping))


def _is_op(term: Term) -> bool:
    return not isinstance(term, str) and term[0].startswith("op")


def show(term: Term) -> str:
    if isinstance(term, str):
        return term
    sym, a, b = term
    if sym.startswith("op"):
        tag = {"op": "*", "op1": "*1", "op2": "*2"}[sym]
        left = f"({show(a)})" if _is_op(a) else show(a)
        right = f"({show(b)})" if _is_op(b) else show(b)
        return f"{left} {tag} {right}"
    return f"{sym.upper()}({show(a)}, {show(b)})"


@dataclass(frozen=True)
class Axiom:
    name: str
    family: str
    lhs: Term
    rhs: Term

    @property
    def variables(self) -> tuple[str, ...]:
        return _variables(self)

    def __str__(self) -> str:
        return f"{show(self.lhs)} = {show(self.rhs)}"

    def bind(self, **symbols: str) -> "Axiom":
        return _bind(self, tuple(sorted(symbols.items())))

    def holds(self, tables: Mapping[str, np.ndarray], witness: Mapping[str, int]) -> bool:
        """Evaluate at a single point; used to re-check reported witnesses."""
        return int(evaluate(self.lhs, witness, tables)) == int(evaluate(self.rhs, witness, tables))


# axioms are immutable and few, so their derived data is memoised
@functools.lru_cache(maxsize=None)
def _variables(axiom: Axiom) -> tuple[str, ...]:
    return tuple(sorted(_vars(axiom.rhs, _vars(axiom.lhs, []))))


@functools.lru_cache(maxsize=None)
def _bind(axiom: Axiom, symbols: tuple[tuple[str, str], ...]) -> Axiom:
    m = dict(symbols)
    return Axiom(axiom.name, axiom.family, rename(axiom.lhs, m), rename(axiom.rhs, m))


@functools.lru_cache(maxsize=64)
def _grids(n: int, k: int) -> np.ndarray:
    g = np.indices((n,) * k)
    g.setflags(write=False)
    return g


def evaluate(term: Term, env: Mapping[str, object], tables: Mapping[str, np.ndarray]):
    """Evaluate on ints or on broadcastable index arrays."""
    if isinstance(term, str):
        return env[term]
    sym, a, b = term
    return tables[sym][evaluate(a, env, tables), evaluate(b, env, tables)]


def first_violation(axiom: Axiom, tables: Mapping[str, np.ndarray], n: int) -> dict[str, int] | None:
    """Lexicographically first tuple falsifying ``axiom``, or None."""
    names = axiom.variables
    grids = _grids(n, len(names))
    env = dict(zip(names, grids))
    bad = evaluate(axiom.lhs, env, tables) != evaluate(axiom.rhs, env, tables)
    flat = np.flatnonzero(bad)
    if not len(flat):
        return None
    idx = np.unravel_index(flat[0], bad.shape)
    return {v: int(i) for v, i in zip(names, idx)}


def all_violations(axiom: Axiom, tables: Mapping[str, np.ndarray], n: int) -> list[dict[str, int]]:
    names = axiom.variables
    grids = _grids(n, len(names))
    env = dict(zip(names, grids))
    bad = evaluate(axiom.lhs, env, tables) != evaluate(axiom.rhs, env, tables)
    return [{v: int(i) for v, i in zip(names, idx)} for idx in np.argwhere(bad)]


def _op(a, b, sym="op"):
    return (sym, a, b)


def _r1(a, b):
    return ("r1", a, b)


def _r2(a, b):
    return ("r2", a, b)


# --- quandle -----------------------------------------------------------------

IDEMPOTENCY = Axiom("idempotency", "quandle", _op("x", "x"), "x")
INVOLUTION = Axiom("involution", "quandle", _op(_op("x", "y"), "y"), "x")
DISTRIBUTIVITY = Axiom(
    "distributivity", "quandle",
    _op(_op("x", "y"), "z"), _op(_op("x", "z"), _op("y", "z")),
)
INVOLUTIVE_QUANDLE = (IDEMPOTENCY, INVOLUTION, DISTRIBUTIVITY)

# --- singquandle -------------------------------------------------------------
# Colours around a singular vertex: inputs x, y; outputs R1(x,y), R2(x,y).

_A = _r1("x", "y")
_B = _r2("x", "y")

HALF_TURN_X = Axiom("vertex-half-turn-x", "vertex-rotation-x", "x", _r2(_B, _A))
HALF_TURN_Y = Axiom("vertex-half-turn-y", "vertex-rotation-y", "y", _r1(_B, _A))
QUARTER_TURN_X = Axiom("vertex-quarter-turn-x", "vertex-rotation-x", "x", _r1("y", _B))
QUARTER_TURN_Y = Axiom("vertex-quarter-turn-y", "vertex-rotation-y", "y", _r2(_B, "x"))
# literal pair identity with R := (R1, R2), one axiom per coordinate
PAIR_LITERAL_1 = Axiom("vertex-pair-literal", "vertex-pair-literal", _A, _r1("y", _B))
PAIR_LITERAL_2 = Axiom("vertex-pair-literal", "vertex-pair-literal", _B, _r2(_B, "x"))

STRAND_PAST_VERTEX = Axiom(
    "strand-past-vertex", "strand-past-vertex",
    _op(_op("y", "z"), _r2("x", "z")), _op(_op("y", "x"), _r1("x", "z")),
)
R1_TWIST = Axiom("r1-twist", "r1-twist", _r1("x", "y"), _r2(_op("y", "x"), "x"))
R2_TWIST = Axiom(
    "r2-twist", "r2-twist",
    _r2("x", "y"), _op(_r1(_op("y", "x"), "x"), _r2(_op("y", "x"), "x")),
)
R1_PASS = Axiom("r1-pass", "r1-pass", _op(_r1(_op("x", "y"), "z"), "y"), _r1("x", _op("z", "y")))
R2_PASS = Axiom("r2-pass", "r2-pass", _r2(_op("x", "y"), "z"), _op(_r2("x", _op("z", "y")), "y"))

MOVE_AXIOMS = (STRAND_PAST_VERTEX, R1_TWIST, R2_TWIST, R1_PASS, R2_PASS)


def singquandle_axioms(rotation: bool = True, strict_rotation: bool = False,
                       strict_pair_map: bool = False) -> tuple[Axiom, ...]:
    """Singquandle axioms over the generic symbol ``op``.

    ``rotation`` adds the half-turn identities of the vertex;
    ``strict_rotation`` additionally demands the quarter-turn identities;
    ``strict_pair_map`` adds the literal pair-map identity.
    """
    out: list[Axiom] = []
    if rotation:
        out += [HALF_TURN_X, HALF_TURN_Y]
    if strict_rotation:
        out += [QUARTER_TURN_X, QUARTER_TURN_Y]
    if strict_pair_map:
        out += [PAIR_LITERAL_1, PAIR_LITERAL_2]
    out += MOVE_AXIOMS
    return tuple(out)


# --- mixing axioms of a disingquandle ----------------------------------------

def _mixing(i: str, j: str, tag: str) -> tuple[Axiom, ...]:
    oi = lambda a, b: _op(a, b, i)
    oj = lambda a, b: _op(a, b, j)
    return (
        Axiom(f"mixed-distributivity-{tag}", f"mixed-distributivity-{tag}",
              oj(oi("x", "y"), "z"), oi(oj("x", "z"), oj("y", "z"))),
        Axiom(f"mixed-strand-past-vertex-{tag}", f"mixed-strand-past-vertex-{tag}",
              oj(oi("y", "z"), _r2("x", "z")), oi(oj("y", "x"), _r1("x", "z"))),
        Axiom(f"mixed-r2-twist-{tag}", f"mixed-r2-twist-{tag}",
              _r2("x", "y"), oj(_r1(oi("y", "x"), "x"), _r2(oi("y", "x"), "x"))),
    )


MIXING_AXIOMS = tuple(
    ax for pair in zip(_mixing("op1", "op2", "12"), _mixing("op2", "op1", "21")) for ax in pair
)


def disingquandle_axioms(rotation: bool = True, strict_rotation: bool = False,
                         strict_pair_map: bool = False) -> list[tuple[str, Axiom]]:
    """Every axiom instance of a disingquandle, tagged with its layer."""
    out: list[tuple[str, Axiom]] = []
    for layer in ("op1", "op2"):
        for ax in INVOLUTIVE_QUANDLE + singquandle_axioms(rotation, strict_rotation, strict_pair_map):
            out.append((layer, ax.bind(op=layer)))
    out += [("mixed", ax) for ax in MIXING_AXIOMS]
    return out


def families(axioms) -> tuple[str, ...]:
    seen: list[str] = []
    for ax in axioms:
        ax = ax[1] if isinstance(ax, tuple) else ax
        if ax.family not in seen:
            seen.append(ax.family)
    return tuple(seen)


def instances(axiom: Axiom, n: int):
    """All variable assignments of ``axiom`` over Z_n, lexicographic."""
    names = axiom.variables
    for values in itertools.product(range(n), repeat=len(names)):
        yield dict(zip(names, values))
