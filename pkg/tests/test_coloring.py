import random

import pytest

from conftest import LINKS, STRUCTURES, corpus_diagrams
from dsq.algebra import DisingquandleTable, InvalidStructureError, OperationTable, format_structure
from dsq.coloring import (
    ClassicalRelation,
    ConstraintSystem,
    Presentation,
    SingularRelation,
    count_invariant,
    extract_constraints,
    fundamental_presentation,
    hom_count_via_presentation,
    solve,
    variable_order,
)
from dsq.constructors import build_dihedral, build_identity_disingquandle
from dsq.diagram import load_diagram, random_moves, swap_labels
from oracles import coloring_oracle

Z6_PAIRS_L2 = {(0, 3), (1, 4), (2, 5), (3, 0), (4, 1), (5, 2)}


def link(name):
    return load_diagram(LINKS / f"{name}.lnk")


def count(d, X, **kw):
    return solve(extract_constraints(d), X, **kw).count


class TestExtract:
    def test_l1(self):
        cs = extract_constraints(link("L1"))
        assert cs.variables == ("a", "b", "x", "y")
        assert cs.relations == (SingularRelation("x", "y", "a", "b"), SingularRelation("a", "b", "x", "y"))

    def test_unknot(self):
        cs = extract_constraints(link("unknot1"))
        assert cs.variables == ("a",) and cs.relations == ()

    def test_label_follows_over_arc(self):
        cs = extract_constraints(link("worked"))
        classical = [r for r in cs.relations if isinstance(r, ClassicalRelation)]
        assert [(r.over, r.label) for r in classical] == [("y", 2), ("z", 1), ("u", 2)]

    def test_undeclared_variable(self):
        with pytest.raises(ValueError):
            ConstraintSystem("bad", ("a",), (ClassicalRelation("a", "b", "a", 1),))


class TestSolve:
    def test_l1(self, z6):
        r = solve(extract_constraints(link("L1")), z6, list_all=True)
        assert r.count == 36
        assert r.pairs("x", "y") == {(x, y) for x in range(6) for y in range(6)}

    def test_l2(self, z6):
        r = solve(extract_constraints(link("L2")), z6, list_all=True)
        assert r.count == 6
        assert r.pairs("x", "y") == Z6_PAIRS_L2

    def test_l3(self, z6):
        r = solve(extract_constraints(link("L3")), z6, list_all=True)
        assert r.count == 12
        assert r.pairs("x", "y") == {(x, x) for x in range(6)} | {(x, (x + 3) % 6) for x in range(6)}

    def test_unknot_counts_order(self, structures):
        for X in structures.values():
            assert count(link("unknot1"), X) == X.order
            assert count(link("unknot2"), X) == X.order

    def test_colorings_sorted_and_satisfying(self, z6):
        r = solve(extract_constraints(link("L3")), z6, list_all=True)
        vecs = [c.values for c in r.colorings]
        assert vecs == sorted(vecs) and len(vecs) == r.count
        for c in r.colorings:
            assert c["a"] == z6.r1(c["x"], c["y"])
            assert c.as_dict()["b"] == z6.r2(c["x"], c["y"])

    def test_count_without_listing(self, z6):
        r = solve(extract_constraints(link("L1")), z6)
        assert r.colorings is None and r.count == 36
        with pytest.raises(ValueError):
            r.pairs("x")

    def test_invalid_structure_refused(self):
        zero = OperationTable.from_function(3, lambda x, y: 0)
        bad = DisingquandleTable(build_dihedral(3), build_dihedral(3), zero, zero, name="bad")
        with pytest.raises(InvalidStructureError) as exc:
            solve(extract_constraints(link("L1")), bad)
        assert not exc.value.report.passed

    def test_matches_brute_force(self, structures):
        for d in corpus_diagrams():
            text = (LINKS / f"{d.name}.lnk").read_text()
            for X in structures.values():
                if X.order ** len(d.arcs) > 300_000:
                    continue
                t = {k: v.tolist() for k, v in X.tables().items()}
                expected = coloring_oracle.count(text, t["op1"], t["op2"], t["r1"], t["r2"])
                assert count(d, X) == expected, (d.name, X.name)

    def test_order_and_jobs_do_not_matter(self, z6):
        cs = extract_constraints(link("L3"))
        base = solve(cs, z6, list_all=True)
        assert solve(cs, z6, list_all=True, order="reversed") == base
        assert solve(cs, z6, list_all=True, order=sorted(cs.variables)) == base
        assert solve(cs, z6, list_all=True, jobs=2) == base

    def test_bad_order(self, z6):
        with pytest.raises(ValueError):
            solve(extract_constraints(link("L1")), z6, order=["x"])

    def test_variable_order_is_deterministic(self):
        cs = extract_constraints(link("L3"))
        assert variable_order(cs) == variable_order(cs)
        assert sorted(variable_order(cs)) == list(cs.variables)

    def test_count_invariant_files(self):
        r = count_invariant(LINKS / "L1.lnk", STRUCTURES / "z6-paper.dsq")
        assert (r.count, r.link, r.structure) == (36, "L1", "z6-paper")


class TestMovesAndDuality:
    def test_random_moves_keep_counts(self, structures):
        rng = random.Random(20261015)
        for d in corpus_diagrams():
            moved = [random_moves(d, 3, rng) for _ in range(2)]
            for X in structures.values():
                c = count(d, X)
                assert all(count(e, X) == c for e in moved), (d.name, X.name)

    def test_rv_pair(self, structures):
        for X in structures.values():
            assert count(link("L1"), X) == count(link("L1-rv"), X)

    def test_label_swap(self, structures):
        for d in corpus_diagrams():
            for X in structures.values():
                assert count(swap_labels(d), X) == count(d, X.swapped())


WORKED_SIMPLE = [
    "x = R1(y *1 (x *2 y), (x *2 y) *2 (y *1 (x *2 y)))",
    "y = R2(y *1 (x *2 y), (x *2 y) *2 (y *1 (x *2 y)))",
]


class TestPresentation:
    def test_worked_example(self):
        d = link("worked")
        p = fundamental_presentation(d)
        assert len(p.generators) == 5 and len(p.relations) == 5
        assert p.lines()[:3] == ["z = x *2 y", "u = y *1 z", "v = z *2 u"]
        s = fundamental_presentation(d, simplify=True)
        assert s.generators == ("x", "y")
        assert s.lines() == WORKED_SIMPLE

    def test_unknot(self):
        p = fundamental_presentation(link("unknot1"))
        assert p.generators == ("a",) and p.relations == ()

    def test_l1_simplified(self, z6):
        s = fundamental_presentation(link("L1"), simplify=True)
        assert s.lines() == ["x = R1(R1(x, y), R2(x, y))", "y = R2(R1(x, y), R2(x, y))"]
        assert hom_count_via_presentation(s, z6) == 36

    def test_l2_simplified(self):
        s = fundamental_presentation(link("L2"), simplify=True)
        assert "R1(R1(x, y), x *2 R1(x, y)) = R2(x, y) *2 y" in s.lines()

    def test_l3_simplified(self, z6):
        s = fundamental_presentation(link("L3"), simplify=True)
        assert s.lines()[0] == "R1(x, y) = R2(y *2 R1(x, y), x *2 (y *2 R1(x, y)))"
        assert hom_count_via_presentation(s, z6) == 12

    def test_hom_count_equals_solver(self, structures):
        for d in corpus_diagrams():
            full = fundamental_presentation(d)
            simple = fundamental_presentation(d, simplify=True)
            for X in structures.values():
                c = count(d, X)
                assert hom_count_via_presentation(full, X) == c
                assert hom_count_via_presentation(simple, X) == c

    def test_undeclared_generator(self):
        with pytest.raises(ValueError):
            Presentation(("x",), (("x", ("op1", "x", "y")),))

    def test_str(self):
        text = str(fundamental_presentation(link("L1"), simplify=True))
        assert text.splitlines()[0] == "generators: x, y"


def test_shipped_structure_files_parse(structures):
    assert "z6-paper" in structures
    d = build_identity_disingquandle(build_dihedral(3), "dihedral-n3")
    assert format_structure(structures["dihedral-n3"]) == format_structure(d)
