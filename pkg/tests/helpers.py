"""Shared oracles and random-code generators for the test suite."""

from __future__ import annotations

import itertools
import random
from typing import List, Tuple

from qcforge.lincode import (
    BinaryCode,
    QuaternaryCode,
    gf4_add_rows,
    gf4_get,
    gf4_scale_row,
)


def naive_weight_counts_binary(code: BinaryCode) -> List[int]:
    """Oracle: recompute every codeword from scratch, no incremental xors."""
    counts = [0] * (code.n + 1)
    for msg in itertools.product((0, 1), repeat=code.k):
        word = 0
        for bit, row in zip(msg, code.rows):
            if bit:
                word ^= row
        counts[word.bit_count()] += 1
    return counts


def naive_weight_counts_gf4(code: QuaternaryCode) -> List[int]:
    counts = [0] * (code.n + 1)
    for msg in itertools.product(range(4), repeat=code.k):
        word = (0, 0)
        for coeff, row in zip(msg, code.rows):
            if coeff:
                word = gf4_add_rows(word, gf4_scale_row(coeff, row))
        counts[(word[0] | word[1]).bit_count()] += 1
    return counts


def random_binary_code(rng: random.Random, n: int, k_max: int) -> BinaryCode:
    k = rng.randint(1, k_max)
    rows = [rng.getrandbits(n) for _ in range(k)]
    code = BinaryCode.from_rows(rows, n)
    if code.k == 0:
        return BinaryCode.from_rows([1], n)
    return code


def random_gf4_code(rng: random.Random, n: int, k_max: int) -> QuaternaryCode:
    k = rng.randint(1, k_max)
    rows = [(rng.getrandbits(n), rng.getrandbits(n)) for _ in range(k)]
    code = QuaternaryCode.from_rows(rows, n)
    if code.k == 0:
        return QuaternaryCode.from_rows([(1, 0)], n)
    return code


def random_permutation(rng: random.Random, n: int) -> List[int]:
    perm = list(range(n))
    rng.shuffle(perm)
    return perm


def binary_codeword_set(code: BinaryCode) -> frozenset:
    return frozenset(code.codewords())


def permute_word(word: int, perm: List[int], n: int) -> int:
    out = 0
    for j in range(n):
        if (word >> j) & 1:
            out |= 1 << perm[j]
    return out


def brute_force_aut_order(code: BinaryCode) -> int:
    """Oracle: try every coordinate permutation (small n only)."""
    words = binary_codeword_set(code)
    n = code.n
    count = 0
    for perm in itertools.permutations(range(n)):
        if frozenset(permute_word(w, list(perm), n) for w in words) == words:
            count += 1
    return count
