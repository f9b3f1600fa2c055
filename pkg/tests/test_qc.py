from __future__ import annotations

import random

import pytest

from qcforge.gf import factor_cyclotomic, poly_mod
from qcforge.lincode import (
    BinaryCode,
    QuaternaryCode,
    WeightEnumerator,
    is_self_dual,
    min_distance,
    weight_enumerator,
)
from qcforge.qc import (
    AmbiguousTemplateMatch,
    CubicComponents,
    ExtField,
    QcShape,
    WenumTemplate,
    builtin_templates,
    check_quasi_cyclic,
    construct_cubic,
    crt_decompose,
    cubic_selfdual_check,
    decompose_cubic,
    distance_bound,
    ext_conj,
    ext_cross_map,
    extract_parameter,
    match_templates,
    phi_inverse,
    phi_map,
    prop22_check,
    shift_by_block,
    template_divisibility_violations,
    verify_decomposition_selfdual,
)
from helpers import random_binary_code, random_gf4_code


class TestPhiAndShift:
    def test_phi_example(self):
        shape = QcShape(ell=2, m=3)
        # bits (i*ell + j): word 0b010011 = blocks 11, 00, 01
        v = phi_map(0b010011, shape)
        assert v.entries == (0b101, 0b001)

    def test_roundtrip(self):
        rng = random.Random(1)
        for _ in range(500):
            ell, m = rng.randint(1, 5), rng.choice([1, 3, 5, 7])
            shape = QcShape(ell=ell, m=m)
            c = rng.getrandbits(shape.n)
            assert phi_inverse(phi_map(c, shape), shape) == c

    def test_shift_example(self):
        shape = QcShape(ell=2, m=3)
        assert shift_by_block(0b000011, shape) == 0b001100
        assert shift_by_block(0b110000, shape) == 0b000011

    def test_shift_order_m(self):
        rng = random.Random(2)
        for _ in range(200):
            shape = QcShape(ell=rng.randint(1, 4), m=rng.choice([3, 5, 7]))
            c = rng.getrandbits(shape.n)
            s = c
            for _ in range(shape.m):
                s = shift_by_block(s, shape)
            assert s == c

    def test_shift_matches_phi_y_multiplication(self):
        # shifting by a block corresponds to multiplying every entry by Y
        rng = random.Random(3)
        for _ in range(200):
            shape = QcShape(ell=rng.randint(1, 4), m=rng.choice([3, 5, 7]))
            c = rng.getrandbits(shape.n)
            shifted = phi_map(shift_by_block(c, shape), shape)
            ym = (1 << shape.m) | 1
            for e, se in zip(phi_map(c, shape).entries, shifted.entries):
                assert se == poly_mod(e << 1, ym)

    def test_too_long_rejected(self):
        shape = QcShape(ell=2, m=3)
        with pytest.raises(ValueError):
            phi_map(1 << 6, shape)
        with pytest.raises(ValueError):
            shift_by_block(1 << 6, shape)

    def test_even_m_rejected(self):
        with pytest.raises(ValueError):
            QcShape(ell=2, m=4)


class TestCheckQuasiCyclic:
    def test_positive(self):
        shape = QcShape(ell=2, m=3)
        c = BinaryCode.from_rows([0b000011, 0b001100, 0b110000], 6)
        assert check_quasi_cyclic(c, shape)

    def test_negative(self):
        shape = QcShape(ell=2, m=3)
        c = BinaryCode.from_rows([0b000011], 6)
        assert not check_quasi_cyclic(c, shape)

    def test_cubic_codes_always_qc(self):
        rng = random.Random(4)
        for _ in range(100):
            ell = rng.randint(2, 6)
            parts = CubicComponents(
                c1=random_binary_code(rng, ell, ell),
                c2=random_gf4_code(rng, ell, ell),
            )
            code = construct_cubic(parts)
            assert check_quasi_cyclic(code, QcShape(ell=ell, m=3))

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError):
            check_quasi_cyclic(BinaryCode.from_rows([0b11], 2), QcShape(ell=2, m=3))


class TestProp22:
    def test_random_grid(self):
        rng = random.Random(5)
        for ell in range(1, 5):
            for m in (3, 5, 7):
                shape = QcShape(ell=ell, m=m)
                for _ in range(60):
                    a = rng.getrandbits(shape.n)
                    b = rng.getrandbits(shape.n)
                    assert prop22_check(a, b, shape)

    def test_too_long_rejected(self):
        with pytest.raises(ValueError):
            prop22_check(1 << 6, 0, QcShape(ell=2, m=3))


class TestExtField:
    def test_f8_arithmetic(self):
        f8 = ExtField(0b1011)  # Y^3 + Y + 1
        assert f8.degree == 3 and f8.order == 8
        # Y * Y^2 = Y^3 = Y + 1
        assert f8.mul(0b010, 0b100) == 0b011
        for a in range(1, 8):
            assert f8.mul(a, f8.inv(a)) == 1

    def test_conj_is_involution_on_self_reciprocal(self):
        # involution only on self-reciprocal moduli f | Y^m - 1
        for m, f in ((3, 0b111), (5, 0b11111), (3, 0b11), (7, 0b11)):
            field = ExtField(f)
            for a in range(field.order):
                assert ext_conj(field, m, ext_conj(field, m, a)) == a

    def test_cross_map_inverts_across_a_pair(self):
        # reciprocal pair for m = 7: roots swap, so the two cross-maps compose
        # to the identity on either side
        h, hs = 0b1011, 0b1101
        fh, fhs = ExtField(h), ExtField(hs)
        for a in range(8):
            assert ext_cross_map(fhs, fh, 7, ext_cross_map(fh, fhs, 7, a)) == a
        images = {ext_cross_map(fhs, fh, 7, a) for a in range(8)}
        assert images == set(range(8))


class TestCrtDecompose:
    def test_m3_repetition(self):
        # [6,3] cubic code from C1 = <11>, C2 = <(1,w)>
        parts = CubicComponents(
            c1=BinaryCode.from_rows([[1, 1]], 2),
            c2=QuaternaryCode.from_rows([[1, 2]], 2),
        )
        code = construct_cubic(parts)
        crt = crt_decompose(code, QcShape(ell=2, m=3))
        assert len(crt.self_components) == 2  # Y+1 and Y^2+Y+1
        assert crt.pair_components == ()
        assert crt.dimension_check(code.k)
        assert verify_decomposition_selfdual(crt)

    def test_m7_interleaved_duplicate(self):
        shape = QcShape(ell=2, m=7)
        code = BinaryCode.from_rows([0b11 << (2 * i) for i in range(7)], 14)
        assert is_self_dual(code)
        crt = crt_decompose(code, shape)
        fact = factor_cyclotomic(7)
        assert len(fact.self_reciprocal) == 1 and len(fact.pairs) == 1
        assert len(crt.self_components) == 1
        assert len(crt.pair_components) == 1
        assert crt.dimension_check(code.k)
        assert verify_decomposition_selfdual(crt)

    def test_selfdual_iff_components(self):
        rng = random.Random(6)
        hits = 0
        for _ in range(200):
            ell = rng.choice([2, 4])
            parts = CubicComponents(
                c1=random_binary_code(rng, ell, ell),
                c2=random_gf4_code(rng, ell, ell),
            )
            code = construct_cubic(parts)
            crt = crt_decompose(code, QcShape(ell=ell, m=3))
            assert crt.dimension_check(code.k)
            expect = is_self_dual(code)
            assert verify_decomposition_selfdual(crt) == expect
            assert cubic_selfdual_check(decompose_cubic(code)) == expect
            hits += expect
        assert hits > 0  # the sample contains genuine self-dual codes

    def test_non_qc_rejected(self):
        with pytest.raises(ValueError):
            crt_decompose(BinaryCode.from_rows([0b000011], 6), QcShape(ell=2, m=3))


class TestCubicConstruction:
    def test_small_example(self):
        parts = CubicComponents(
            c1=BinaryCode.from_rows([[1, 1]], 2),
            c2=QuaternaryCode.from_rows([[1, 2]], 2),
        )
        code = construct_cubic(parts)
        assert (code.n, code.k) == (6, 3)
        assert weight_enumerator(code).counts == (1, 0, 3, 0, 3, 0, 1)
        assert is_self_dual(code)
        assert cubic_selfdual_check(parts)
        assert min_distance(code) == 2

    def test_dimension_formula(self):
        rng = random.Random(7)
        for _ in range(200):
            ell = rng.randint(2, 8)
            parts = CubicComponents(
                c1=random_binary_code(rng, ell, ell),
                c2=random_gf4_code(rng, ell, ell),
            )
            code = construct_cubic(parts)
            assert code.k == parts.c1.k + 2 * parts.c2.k

    def test_roundtrip_both_ways(self):
        rng = random.Random(8)
        for _ in range(200):
            ell = rng.randint(2, 8)
            parts = CubicComponents(
                c1=random_binary_code(rng, ell, ell),
                c2=random_gf4_code(rng, ell, ell),
            )
            code = construct_cubic(parts)
            back = decompose_cubic(code)
            assert back.c1.rows == parts.c1.rows
            assert back.c2.rows == parts.c2.rows
            assert construct_cubic(back).rows == code.rows

    def test_decompose_rejects_bad_input(self):
        with pytest.raises(ValueError):
            decompose_cubic(BinaryCode.from_rows([0b11], 2))  # n not 3*ell
        with pytest.raises(ValueError):
            decompose_cubic(BinaryCode.from_rows([0b000011], 6))  # not QC

    def test_distance_bound_example(self):
        parts = CubicComponents(
            c1=BinaryCode.from_rows([[1, 1]], 2),
            c2=QuaternaryCode.from_rows([[1, 2]], 2),
        )
        assert distance_bound(parts) == 4

    def test_distance_bound_holds(self):
        rng = random.Random(9)
        for _ in range(100):
            ell = rng.randint(2, 6)
            parts = CubicComponents(
                c1=random_binary_code(rng, ell, ell),
                c2=random_gf4_code(rng, ell, ell),
            )
            code = construct_cubic(parts)
            assert min_distance(code) <= distance_bound(parts)


def _wenum_with(n, coeffs):
    counts = [0] * (n + 1)
    for i, a in coeffs.items():
        counts[i] = a
    return WeightEnumerator(n=n, counts=tuple(counts))


class TestTemplates:
    def test_builtin_coefficients(self):
        by_key = {(t.length, t.label): t for t in builtin_templates()}
        assert len(by_key) == 9
        assert by_key[(54, "W1")].terms == ((10, 351, -8), (12, 5031, 24))
        assert by_key[(54, "W2")].terms == ((10, 351, -8), (12, 5543, 24))
        assert by_key[(60, "W4")].terms == (
            (12, 3451, 0),
            (14, 24128, 0),
            (16, 336081, 0),
        )
        assert by_key[(66, "W1")].terms == ((12, 858, 8), (14, 18678, 24))
        assert by_key[(66, "W1")].param_range == (0, 778)
        assert by_key[(54, "W1")].param_range == (0, 43)

    def test_extract_beta_21(self):
        w = _wenum_with(54, {10: 351 - 8 * 21, 12: 5031 + 24 * 21})
        m = extract_parameter(w)
        assert (m.label, m.param, m.in_range) == ("W1", 21, True)

    def test_extract_alpha_17(self):
        w = _wenum_with(66, {12: 858 + 8 * 17, 14: 18678 + 24 * 17})
        m = extract_parameter(w)
        assert (m.label, m.param, m.in_range) == ("W1", 17, True)

    def test_out_of_range_flagged(self):
        w = _wenum_with(54, {10: 351 - 8 * 50, 12: 5031 + 24 * 50})
        m = extract_parameter(w)
        assert (m.label, m.param, m.in_range) == ("W1", 50, False)

    def test_constant_template(self):
        w = _wenum_with(60, {12: 3195, 14: 29760, 16: 284625})
        m = extract_parameter(w)
        assert (m.label, m.param) == ("W3", None)

    def test_no_match(self):
        w = _wenum_with(60, {12: 1, 14: 1, 16: 1})
        assert extract_parameter(w) is None
        assert match_templates(w) == []

    def test_ambiguous_raises(self):
        ts = [
            WenumTemplate(10, "A", ((2, 0, 1),), "p", (0, 9)),
            WenumTemplate(10, "B", ((2, 0, 1),), "p", (0, 9)),
        ]
        w = _wenum_with(10, {2: 5})
        with pytest.raises(AmbiguousTemplateMatch):
            extract_parameter(w, ts)

    def test_round_trip_all_builtins(self):
        rng = random.Random(10)
        for t in builtin_templates():
            if t.param_name is None:
                w = _wenum_with(t.length, t.evaluate())
                m = extract_parameter(w)
                assert m is not None and m.label == t.label and m.param is None
            else:
                lo, hi = t.param_range
                for _ in range(20):
                    p = rng.randint(lo, hi)
                    w = _wenum_with(t.length, t.evaluate(p))
                    m = extract_parameter(w)
                    assert m is not None
                    assert (m.label, m.param, m.in_range) == (t.label, p, True)

    def test_divisibility_violations(self):
        by_key = {(t.length, t.label): t for t in builtin_templates()}
        assert template_divisibility_violations(by_key[(60, "W4")]) == [14]
        assert template_divisibility_violations(by_key[(66, "W2")]) == [14]
        assert template_divisibility_violations(by_key[(66, "W3")]) == [14]
        for key in [(54, "W1"), (54, "W2"), (60, "W1"), (60, "W2"), (60, "W3"), (66, "W1")]:
            assert template_divisibility_violations(by_key[key]) == []
