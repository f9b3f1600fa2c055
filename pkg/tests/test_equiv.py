from __future__ import annotations

import random

import pytest

from qcforge.equiv import (
    Equivalence,
    are_equivalent,
    aut_order,
    canonicalize,
    group_order,
)
from qcforge.lincode import BinaryCode, QuaternaryCode, from_rows
from qcforge.qc import CubicComponents, construct_cubic
from helpers import (
    binary_codeword_set,
    brute_force_aut_order,
    permute_word,
    random_binary_code,
    random_permutation,
)
import itertools


def _brute_force_equivalent(a: BinaryCode, b: BinaryCode) -> bool:
    wa, wb = binary_codeword_set(a), binary_codeword_set(b)
    n = a.n
    return any(
        frozenset(permute_word(w, list(p), n) for w in wa) == wb
        for p in itertools.permutations(range(n))
    )


class TestGroupOrder:
    def test_trivial(self):
        assert group_order([], 5) == 1

    def test_symmetric_group(self):
        transposition = [1, 0, 2, 3]
        cycle = [1, 2, 3, 0]
        assert group_order([transposition, cycle], 4) == 24

    def test_cyclic(self):
        assert group_order([[1, 2, 3, 4, 0]], 5) == 5

    def test_klein(self):
        a = [1, 0, 3, 2]
        b = [2, 3, 0, 1]
        assert group_order([a, b], 4) == 4


class TestCanonicalForm:
    def test_hash_invariant_under_permutation(self):
        rng = random.Random(1)
        for _ in range(300):
            n = rng.randint(3, 14)
            c = random_binary_code(rng, n, min(n - 1, 7))
            perm = random_permutation(rng, n)
            cp = c.permuted(perm)
            f1, f2 = canonicalize(c), canonicalize(cp)
            assert f1.complete and f2.complete
            assert f1.rows == f2.rows
            assert f1.hash_hex == f2.hash_hex

    def test_canonical_rows_span_equivalent_code(self):
        rng = random.Random(2)
        for _ in range(100):
            n = rng.randint(3, 10)
            c = random_binary_code(rng, n, min(n - 1, 5))
            f = canonicalize(c)
            canon = BinaryCode.from_rows(list(f.rows), n)
            assert canon.k == c.k
            assert are_equivalent(c, canon) is Equivalence.YES

    def test_large_k_incomplete(self):
        c = BinaryCode.from_rows([1 << i for i in range(25)], 30)
        f = canonicalize(c)
        assert not f.complete

    def test_zero_code_rejected(self):
        with pytest.raises(ValueError):
            canonicalize(from_rows([], 4))


class TestAutOrder:
    def test_repetition_3(self):
        assert aut_order(from_rows([[1, 1, 1]], 3)).order == 6

    def test_i2(self):
        assert aut_order(from_rows([[1, 1]], 2)).order == 2

    def test_cubic_6_3(self):
        parts = CubicComponents(
            c1=BinaryCode.from_rows([[1, 1]], 2),
            c2=QuaternaryCode.from_rows([[1, 2]], 2),
        )
        info = aut_order(construct_cubic(parts))
        assert info.complete and info.order == 48

    def test_matches_brute_force(self):
        rng = random.Random(3)
        for _ in range(60):
            n = rng.randint(2, 7)
            c = random_binary_code(rng, n, n - 1 if n > 2 else 1)
            info = aut_order(c)
            assert info.complete
            assert info.order == brute_force_aut_order(c)

    def test_orbit_stabilizer_consistency(self):
        # |Aut| must divide n! and be invariant under permutation
        rng = random.Random(4)
        fact = [1, 1, 2, 6, 24, 120, 720, 5040]
        for _ in range(100):
            n = rng.randint(2, 7)
            c = random_binary_code(rng, n, min(n, 4))
            o = aut_order(c).order
            assert fact[n] % o == 0
            perm = random_permutation(rng, n)
            assert aut_order(c.permuted(perm)).order == o


class TestAreEquivalent:
    def test_yes_under_permutation(self):
        rng = random.Random(5)
        for _ in range(100):
            n = rng.randint(3, 12)
            c = random_binary_code(rng, n, min(n - 1, 6))
            perm = random_permutation(rng, n)
            assert are_equivalent(c, c.permuted(perm)) is Equivalence.YES

    def test_i2_plus_i2(self):
        a = from_rows([[1, 1, 0, 0], [0, 0, 1, 1]], 4)
        b = from_rows([[1, 0, 1, 0], [0, 1, 0, 1]], 4)
        assert are_equivalent(a, b) is Equivalence.YES

    def test_no_different_enumerators(self):
        a = from_rows([[1, 1, 0, 0], [0, 0, 1, 1]], 4)
        b = from_rows([[1, 1, 1, 0], [0, 0, 1, 1]], 4)
        assert are_equivalent(a, b) is Equivalence.NO

    def test_yes_only_selfdual_class_at_length_6(self):
        # every [6,3] self-dual binary code is equivalent to three copies of i2
        a = from_rows([[1, 1, 0, 0, 0, 0], [0, 0, 1, 1, 0, 0], [0, 0, 0, 0, 1, 1]], 6)
        parts = CubicComponents(
            c1=BinaryCode.from_rows([[1, 1]], 2),
            c2=QuaternaryCode.from_rows([[1, 2]], 2),
        )
        b = construct_cubic(parts)
        assert are_equivalent(a, b) is Equivalence.YES

    def test_no_same_enumerator(self):
        # both have enumerator 1 + 3y^2 + 3y^4 + y^6, verified inequivalent
        # by exhaustive permutation search
        a = BinaryCode.from_rows([65, 90, 96], 7)
        b = BinaryCode.from_rows([3, 68, 48], 7)
        from qcforge.lincode import weight_enumerator

        assert weight_enumerator(a) == weight_enumerator(b)
        assert not _brute_force_equivalent(a, b)
        assert are_equivalent(a, b) is Equivalence.NO

    def test_matches_brute_force_oracle(self):
        rng = random.Random(6)
        for _ in range(40):
            n = rng.randint(3, 6)
            a = random_binary_code(rng, n, min(n - 1, 3))
            b = random_binary_code(rng, n, min(n - 1, 3))
            if a.k != b.k:
                continue
            verdict = are_equivalent(a, b)
            assert verdict is not Equivalence.UNKNOWN
            expected = _brute_force_equivalent(a, b)
            assert (verdict is Equivalence.YES) == expected

    def test_different_k_no(self):
        a = from_rows([[1, 1, 0, 0]], 4)
        b = from_rows([[1, 1, 0, 0], [0, 0, 1, 1]], 4)
        assert are_equivalent(a, b) is Equivalence.NO

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError):
            are_equivalent(from_rows([[1, 1]], 2), from_rows([[1, 1, 0]], 3))
