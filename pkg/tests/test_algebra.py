import itertools

import numpy as np
import pytest

from dsq.algebra import (
    DisingquandleTable,
    GFamily,
    InvalidStructureError,
    OperationTable,
    ParseError,
    StructureError,
    StructureMap,
    check_disingquandle,
    check_g_family,
    check_homomorphism,
    check_involutive_quandle,
    check_quandle,
    check_singquandle,
    cyclic_group,
    enumerate_disingquandles,
    enumerate_homs,
    format_gfamily,
    format_structure,
    image_substructure,
    induced_quandle,
    is_isomorphism,
    is_sub_disingquandle,
    parse_gfamily,
    parse_structure,
    search_affine,
    symmetric_group,
)
from dsq.algebra import axioms as ax
from dsq.algebra.io import load
from dsq.algebra.morphisms import relabel_map
from dsq.algebra.search import canonical_vector
from dsq.algebra.tables import Group
from dsq.constructors import (
    build_affine_B,
    build_affine_m,
    build_cyclic_type_family,
    build_dihedral,
    build_identity_disingquandle,
    build_tetrahedral,
    build_trivial_disingquandle,
    build_trivial_gfamily,
    build_trivial_quandle,
)
from oracles.affine_oracle import verdict


def const(n, v=0):
    return OperationTable.from_function(n, lambda x, y: v)


# --- tables ------------------------------------------------------------------

class TestOperationTable:
    def test_from_function_reduces_mod_n(self):
        t = OperationTable.from_function(3, lambda x, y: 2 * y - x)
        assert t.rows()[0] == [0, 2, 1]
        assert t(1, 0) == 2

    def test_rejects_non_square_and_out_of_range(self):
        with pytest.raises(StructureError):
            OperationTable([[0, 1]])
        with pytest.raises(StructureError):
            OperationTable([[0, 2], [1, 0]])

    def test_entries_are_read_only(self):
        t = build_dihedral(3)
        with pytest.raises(ValueError):
            t.entries[0, 0] = 1

    def test_equality_and_hash(self):
        assert build_dihedral(5) == build_dihedral(5)
        assert hash(build_dihedral(5)) == hash(build_dihedral(5))
        assert build_dihedral(5) != build_trivial_quandle(5)

    def test_relabel_is_isomorphic_copy(self):
        d = build_identity_disingquandle(build_dihedral(5))
        perm = [2, 0, 4, 1, 3]
        assert is_isomorphism(relabel_map(d, perm))

    def test_restrict_closed(self):
        t = build_dihedral(9)
        assert t.restrict_closed([0, 3, 6])
        assert not t.restrict_closed([0, 1])


class TestGroup:
    def test_cyclic_and_symmetric(self):
        assert cyclic_group(4).is_abelian
        s3 = symmetric_group(3)
        assert s3.order == 6 and not s3.is_abelian
        for g in range(6):
            assert s3.mul(g, s3.inv(g)) == s3.identity

    def test_rejects_non_group(self):
        with pytest.raises(StructureError):
            Group(OperationTable([[0, 0], [0, 0]]))  # no inverse for... no identity
        with pytest.raises(StructureError):
            Group(OperationTable([[1, 0, 2], [0, 1, 2], [2, 2, 0]]))


# --- checkers -------------------------------------------------------------------

class TestQuandleCheck:
    def test_dihedral_is_involutive_quandle(self):
        for n in range(1, 8):
            assert check_involutive_quandle(build_dihedral(n)).passed

    def test_constant_table_fails_idempotency_first(self):
        rep = check_involutive_quandle(const(3, 0))
        assert not rep.passed
        v = rep.violations[0]
        assert v.axiom == "idempotency" and v.witness == {"x": 1}

    def test_exhaustive_lists_every_instance(self):
        rep = check_involutive_quandle(const(3, 0), exhaustive=True)
        idem = [v for v in rep.violations if v.axiom == "idempotency"]
        assert [v.witness["x"] for v in idem] == [1, 2]

    def test_check_quandle_flags_right_invertibility(self):
        rep = check_quandle(const(2, 0))
        assert "right-invertibility" in rep.axioms_failed()

    def test_tetrahedral_is_quandle_not_kei(self):
        t = build_tetrahedral()
        assert check_quandle(t).passed
        assert "involution" in check_involutive_quandle(t).axioms_failed()


class TestSingquandleCheck:
    def test_order_mismatch_raises(self):
        with pytest.raises(StructureError):
            check_singquandle(build_dihedral(3), const(3), const(4))

    def test_quandle_violations_reported_first(self):
        rep = check_singquandle(const(3, 0), const(3), const(3))
        assert rep.violations[0].axiom in {"idempotency", "involution", "distributivity"}
        assert len(rep.violations) > 1

    def test_identity_maps_on_dihedral(self):
        d = build_dihedral(5)
        r1 = OperationTable.from_function(5, lambda x, y: x)
        r2 = OperationTable.from_function(5, lambda x, y: y)
        assert check_singquandle(d, r1, r2).passed

    def test_z6_needs_default_rotation_reading(self, z6):
        assert check_singquandle(z6.op1, z6.r1, z6.r2).passed
        strict = check_singquandle(z6.op1, z6.r1, z6.r2, strict_rotation=True)
        assert set(strict.axioms_failed()) == {"vertex-quarter-turn-x", "vertex-quarter-turn-y"}

    def test_rotation_off_drops_half_turn(self):
        # R1 = R2 = x + y on the trivial quandle of order 2 fails only the half turn
        op = build_trivial_quandle(2)
        r = OperationTable.from_function(2, lambda x, y: x + y)
        assert not check_singquandle(op, r, r).passed
        assert check_singquandle(op, r, r, rotation=False).passed

    def test_strict_pair_map_is_extra(self, z6):
        rep = check_singquandle(z6.op1, z6.r1, z6.r2, strict_pair_map=True)
        assert set(rep.axioms_failed()) <= {"vertex-pair-literal"}


class TestDisingquandleCheck:
    def test_z6_passes_fourteen_families(self, z6):
        rep = check_disingquandle(z6)
        assert rep.passed
        assert rep.summary() == "PASS (all 14 axiom families)"

    def test_zero_r_tables_fail_with_layer(self):
        d = DisingquandleTable(build_dihedral(5), build_dihedral(5), const(5), const(5))
        rep = check_disingquandle(d)
        assert not rep.passed
        assert {v.layer for v in rep.violations} == {"op1", "op2", "mixed"}
        assert "FAIL" in rep.summary()

    def test_witnesses_really_fail(self):
        d = DisingquandleTable(build_dihedral(3), build_trivial_quandle(3),
                               OperationTable.from_function(3, lambda x, y: x + 1),
                               OperationTable.from_function(3, lambda x, y: y))
        tables = d.tables()
        rep = check_disingquandle(d, exhaustive=True)
        assert rep.violations
        for v in rep.violations:
            assert not v.rule.holds(tables, v.witness)

    def test_trivial_structures(self):
        assert check_disingquandle(build_trivial_disingquandle(1, 0)).passed
        # x + y + c tables violate the half-turn identity for n = 2
        assert not check_disingquandle(build_trivial_disingquandle(2, 0)).passed
        assert not check_disingquandle(build_trivial_disingquandle(2, 1)).passed

    def test_swapped_is_valid(self, structures):
        for d in structures.values():
            assert check_disingquandle(d.swapped()).passed


# --- G-families ------------------------------------------------------------------

class TestGFamily:
    def test_cyclic_type_families_pass(self):
        for q in (build_dihedral(3), build_tetrahedral()):
            assert check_g_family(build_cyclic_type_family(q)).passed

    def test_trivial_gfamily(self):
        f = build_trivial_gfamily(symmetric_group(3), 2)
        assert check_g_family(f).passed
        assert induced_quandle(f).order == 12

    def test_broken_composition_detected(self):
        f = build_cyclic_type_family(build_dihedral(3))
        broken = GFamily(f.group, (f.ops[1], f.ops[1]), name="broken")
        rep = check_g_family(broken)
        assert not rep.passed
        assert "gfam-identity" in rep.axioms_failed()

    def test_strict_identity_reading(self):
        f = build_cyclic_type_family(build_dihedral(3))
        assert check_g_family(f, strict_identity=True).passed

    def test_induced_quandle_is_quandle(self):
        f = build_cyclic_type_family(build_tetrahedral())
        q = induced_quandle(f)
        assert q.order == 12
        assert check_quandle(q).passed

    def test_induced_quandle_refuses_invalid_family(self):
        f = build_cyclic_type_family(build_dihedral(3))
        with pytest.raises(InvalidStructureError):
            induced_quandle(GFamily(f.group, (f.ops[1], f.ops[1])))


# --- morphisms ----------------------------------------------------------------------

class TestMorphisms:
    def test_identity_is_hom(self, z6):
        f = StructureMap(z6, z6, range(6))
        assert check_homomorphism(f).passed
        assert is_isomorphism(f)

    def test_bad_map_values_rejected(self, z6):
        with pytest.raises(StructureError):
            StructureMap(z6, z6, [0] * 5)
        with pytest.raises(StructureError):
            StructureMap(z6, z6, [7] * 6)

    def test_strict_hom_compares_r2_with_r1(self, z6):
        f = StructureMap(z6, z6, range(6))
        assert "hom-r2" in check_homomorphism(f, strict=True).axioms_failed()

    def test_homs_into_z6_from_point_are_empty(self, z6):
        point = build_trivial_disingquandle(1, 0)
        assert enumerate_homs(point, z6) == []

    def test_enumerate_homs_matches_brute_force(self, z6):
        X = build_identity_disingquandle(build_dihedral(3))
        Y = z6
        brute = [v for v in itertools.product(range(6), repeat=3)
                 if check_homomorphism(StructureMap(X, Y, v)).passed]
        got = [f.values for f in enumerate_homs(X, Y)]
        assert got == brute

    def test_self_homs_include_identity(self, z6):
        homs = enumerate_homs(z6, z6)
        assert tuple(range(6)) in [f.values for f in homs]
        assert [f.values for f in homs] == sorted(f.values for f in homs)

    def test_image_is_sub_structure(self, z6):
        X = build_identity_disingquandle(build_dihedral(3))
        Y = build_identity_disingquandle(build_dihedral(9))
        for f in enumerate_homs(X, Y):
            assert is_sub_disingquandle(image_substructure(f), Y)

    def test_image_of_non_hom_refused(self, z6):
        with pytest.raises(InvalidStructureError):
            image_substructure(StructureMap(z6, z6, [1, 0, 2, 3, 4, 5]))

    def test_sub_structures(self):
        assert is_sub_disingquandle({0, 3, 6}, build_affine_m(9, 1))
        assert is_sub_disingquandle(range(0, 25, 5), build_affine_m(25, 2))
        assert not is_sub_disingquandle({0, 1}, build_affine_m(9, 1))
        with pytest.raises(StructureError):
            is_sub_disingquandle(set(), build_affine_m(9, 1))
        with pytest.raises(StructureError):
            is_sub_disingquandle({9}, build_affine_m(9, 1))


# --- searches --------------------------------------------------------------------------

class TestSearch:
    @pytest.mark.parametrize("n", [2, 3, 5, 7])
    def test_b_family_matches_oracle(self, n):
        expected = [B for B in range(n) if verdict(n, "B", B)]
        assert search_affine(n, "B") == expected

    @pytest.mark.parametrize("n", [3, 5, 7, 9])
    def test_m_family_matches_oracle(self, n):
        expected = [m for m in range(n) if verdict(n, "m", m)]
        assert search_affine(n, "m") == expected

    def test_b_family_quarter_turn_matches_oracle(self):
        expected = [B for B in range(7) if verdict(7, "B", B, quarter_turn=True)]
        assert search_affine(7, "B", strict_rotation=True) == expected == []

    def test_search_errors(self):
        with pytest.raises(ValueError):
            search_affine(7, "C")
        with pytest.raises(ValueError):
            search_affine(1, "B")
        with pytest.raises(ValueError):
            search_affine(8, "m")

    def test_affine_builders_agree_with_oracle(self):
        for n, B in itertools.product((3, 5), range(5)):
            assert check_disingquandle(build_affine_B(n, B)).passed == verdict(n, "B", B % n)


def _brute_force_order2():
    """Every valid order-2 structure by direct product over table candidates."""
    n = 2
    tables = [OperationTable(np.array(v).reshape(n, n)) for v in itertools.product(range(n), repeat=n * n)]
    keis = [t for t in tables if check_involutive_quandle(t).passed]
    out = []
    for o1, o2, r1, r2 in itertools.product(keis, keis, tables, tables):
        d = DisingquandleTable(o1, o2, r1, r2)
        if check_disingquandle(d).passed:
            out.append(d.vector())
    return sorted(out)


class TestEnumeration:
    def test_order_one(self):
        (d,) = enumerate_disingquandles(1)
        assert d.vector() == (0, 0, 0, 0)

    def test_order_two_matches_brute_force(self):
        got = [d.vector() for d in enumerate_disingquandles(2)]
        assert got == _brute_force_order2()

    def test_every_output_is_valid_and_sorted(self):
        out = list(enumerate_disingquandles(3))
        vecs = [d.vector() for d in out]
        assert vecs == sorted(vecs)
        assert all(check_disingquandle(d).passed for d in out)
        assert len(out) == 131

    def test_up_to_iso_representatives(self):
        reps = list(enumerate_disingquandles(3, up_to_iso=True))
        assert len(reps) == 41
        keys = [canonical_vector(d) for d in reps]
        assert len(set(keys)) == len(keys)
        every = {canonical_vector(d) for d in enumerate_disingquandles(3)}
        assert every == set(keys)

    def test_order_two_quotient_checked_by_explicit_isomorphism(self):
        raw = list(enumerate_disingquandles(2))
        reps = list(enumerate_disingquandles(2, up_to_iso=True))
        assert len(reps) <= len(raw)
        for d in raw:
            matches = [r for r in reps for perm in ((0, 1), (1, 0))
                       if d.relabel(perm) == r and is_isomorphism(relabel_map(d, perm))]
            assert matches

    def test_jobs_do_not_change_output(self):
        one = [d.vector() for d in enumerate_disingquandles(2, jobs=1)]
        two = [d.vector() for d in enumerate_disingquandles(2, jobs=2)]
        assert one == two

    def test_limit(self):
        with pytest.raises(ValueError):
            next(enumerate_disingquandles(5))
        with pytest.raises(ValueError):
            next(enumerate_disingquandles(0))


# --- text formats ------------------------------------------------------------------------

class TestFormats:
    def test_structure_round_trip(self, z6):
        assert parse_structure(format_structure(z6)) == z6

    def test_gfamily_round_trip(self):
        f = build_cyclic_type_family(build_tetrahedral())
        g = parse_gfamily(format_gfamily(f))
        assert g.ops == f.ops and g.group.mult == f.group.mult

    def test_comments_and_blank_lines(self, z6):
        text = "# header\n\n" + format_structure(z6).replace("op2\n", "op2   # second\n")
        assert parse_structure(text) == z6

    @pytest.mark.parametrize("text,line", [
        ("disingquandle x\norder 2\nop1\n0 0\n", 4),
        ("disingquandle x\norder two\n", 2),
        ("disingquandle x\norder 2\nop1\n0 0\n1 5\n", 5),
        ("quandle x\n", 1),
    ])
    def test_parse_errors_carry_line(self, text, line):
        with pytest.raises(ParseError) as exc:
            parse_structure(text)
        assert exc.value.line == line
        assert f"line {line}" in str(exc.value)

    def test_bad_group_in_gfamily(self):
        text = "gfamily g\ngroup-order 2\nmult\n0 0\n0 0\nset-order 1\nop 0\n0\nop 1\n0\nend\n"
        with pytest.raises(ParseError) as exc:
            parse_gfamily(text)
        assert exc.value.line == 3

    def test_load_dispatches(self, tmp_path, z6):
        p = tmp_path / "a.gfam"
        p.write_text(format_gfamily(build_cyclic_type_family(build_dihedral(3))))
        assert isinstance(load(p), GFamily)
        q = tmp_path / "b.dsq"
        q.write_text(format_structure(z6))
        assert load(q) == z6


def test_axiom_strings_are_readable():
    assert str(ax.R1_TWIST) == "R1(x, y) = R2(y * x, x)"
    assert ax.families(ax.MIXING_AXIOMS)[0] == "mixed-distributivity-12"
