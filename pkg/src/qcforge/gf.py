"""Arithmetic for GF(2), GF(4), GF(2)[Y] polynomials and the ring F2[Y]/(Y^m-1).

Polynomials over GF(2) are plain Python ints used as bitsets: bit i holds
the coefficient of Y^i.  GF(4) elements are ints 0..3 encoding a + b*w
(w the primitive element, w^2 = w + 1) with bit 0 = a and bit 1 = b, so
w == 2 and w^2 == 3.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

W = 2   # the primitive element a.k.a. omega
W2 = 3  # omega squared

# 4x4 multiplication table for GF(4); addition is xor.
_GF4_MUL = (
    (0, 0, 0, 0),
    (0, 1, 2, 3),
    (0, 2, 3, 1),
    (0, 3, 1, 2),
)

_GF4_CONJ = (0, 1, 3, 2)  # Frobenius x -> x^2

_GF4_INV = (0, 1, 3, 2)   # inverse of nonzero x (x^3 = 1 so inv = x^2)


def gf4_mul(a: int, b: int) -> int:
    return _GF4_MUL[a][b]


def gf4_conj(a: int) -> int:
    return _GF4_CONJ[a]


def gf4_inv(a: int) -> int:
    if a == 0:
        raise ZeroDivisionError("inverse of 0 in GF(4)")
    return _GF4_INV[a]


# ---------------------------------------------------------------------------
# GF(2)[Y] polynomials as int bitsets


def poly_deg(p: int) -> Optional[int]:
    """Degree of p, or None for the zero polynomial."""
    if p == 0:
        return None
    return p.bit_length() - 1


def poly_mul(a: int, b: int) -> int:
    result = 0
    while b:
        low = b & -b
        result ^= a << (low.bit_length() - 1)
        b ^= low
    return result


def poly_divmod(a: int, b: int) -> Tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    db = b.bit_length() - 1
    q = 0
    while a.bit_length() - 1 >= db and a:
        shift = (a.bit_length() - 1) - db
        q ^= 1 << shift
        a ^= b << shift
    return q, a


def poly_mod(a: int, b: int) -> int:
    return poly_divmod(a, b)[1]


def poly_mulmod(a: int, b: int, mod: int) -> int:
    return poly_mod(poly_mul(a, b), mod)


def poly_powmod(a: int, e: int, mod: int) -> int:
    result = poly_mod(1, mod)
    base = poly_mod(a, mod)
    while e:
        if e & 1:
            result = poly_mulmod(result, base, mod)
        base = poly_mulmod(base, base, mod)
        e >>= 1
    return result


def poly_reciprocal(p: int) -> int:
    """Y^deg(p) * p(1/Y), i.e. the coefficient string reversed.

    Requires a nonzero polynomial with nonzero constant term so the result
    has the same degree and stays monic.
    """
    if p == 0:
        raise ValueError("reciprocal of the zero polynomial")
    if not p & 1:
        raise ValueError("reciprocal requires a nonzero constant term")
    d = p.bit_length() - 1
    r = 0
    for i in range(d + 1):
        if (p >> i) & 1:
            r |= 1 << (d - i)
    return r


def poly_to_str(p: int) -> str:
    """Big-endian coefficient string, e.g. 0b1011 -> "1011" = Y^3+Y+1."""
    if p == 0:
        return "0"
    return format(p, "b")


def poly_from_str(s: str) -> int:
    s = s.strip()
    if not s or any(ch not in "01" for ch in s):
        raise ValueError(f"bad polynomial string {s!r}")
    return int(s, 2)


# ---------------------------------------------------------------------------
# Factorization of Y^m - 1


@dataclass(frozen=True)
class Factorization:
    """Y^m - 1 = delta * g_1...g_s * h_1 h_1^* ... h_t h_t^* over GF(2)."""

    m: int
    delta: int = 1
    self_reciprocal: Tuple[int, ...] = ()
    pairs: Tuple[Tuple[int, int], ...] = ()

    def all_factors(self) -> List[int]:
        out = list(self.self_reciprocal)
        for h, hstar in self.pairs:
            out.append(h)
            out.append(hstar)
        return out


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def _edf_split(p: int, d: int, rng: random.Random) -> List[int]:
    """Equal-degree factorization over GF(2) (Cantor-Zassenhaus, trace form):
    p is a squarefree product of irreducibles all of degree d."""
    if p.bit_length() - 1 == d:
        return [p]
    while True:
        r = rng.getrandbits(p.bit_length() - 1)
        # trace map r + r^2 + r^4 + ... + r^(2^(d-1)) mod p
        t, s = 0, r
        for _ in range(d):
            t ^= s
            s = poly_mulmod(s, s, p)
        g = poly_gcd(p, t)
        if 0 < (g.bit_length() - 1) < (p.bit_length() - 1):
            q, rem = poly_divmod(p, g)
            assert rem == 0
            return _edf_split(g, d, rng) + _edf_split(q, d, rng)


def _irreducible_factors(p: int) -> List[int]:
    """Distinct irreducible factors of a squarefree p, ascending degree:
    distinct-degree factorization, then Cantor-Zassenhaus splitting."""
    rng = random.Random(0xC0DE)
    factors = []
    x_pow = 0b10  # Y^(2^d) mod p, squared once per degree step
    d = 0
    while (p.bit_length() - 1) > 0:
        d += 1
        if 2 * d > p.bit_length() - 1:
            factors.append(p)
            break
        x_pow = poly_mulmod(x_pow, x_pow, p)
        g = poly_gcd(p, x_pow ^ 0b10)  # gcd(p, Y^(2^d) - Y)
        if g.bit_length() - 1 > 0:
            factors.extend(_edf_split(g, d, rng))
            p, rem = poly_divmod(p, g)
            assert rem == 0
            x_pow = poly_mod(x_pow, p)
    factors.sort(key=lambda f: (f.bit_length(), f))
    return factors


def factor_cyclotomic(m: int) -> Factorization:
    """Factor Y^m - 1 into self-reciprocal irreducibles and reciprocal pairs."""
    if m < 1:
        raise ValueError("m must be positive")
    if m % 2 == 0:
        raise ValueError("m must be odd (coprime to the characteristic)")
    p = (1 << m) | 1  # Y^m + 1 == Y^m - 1 in characteristic 2
    factors = _irreducible_factors(p)
    selfrec = []
    pairs = []
    seen = set()
    for f in factors:
        if f in seen:
            continue
        fstar = poly_reciprocal(f)
        if fstar == f:
            selfrec.append(f)
            seen.add(f)
        else:
            lo, hi = (f, fstar) if f < fstar else (fstar, f)
            pairs.append((lo, hi))
            seen.add(f)
            seen.add(fstar)
    selfrec.sort()
    pairs.sort()
    return Factorization(
        m=m, delta=1, self_reciprocal=tuple(selfrec), pairs=tuple(pairs)
    )


# ---------------------------------------------------------------------------
# The ring R = F2[Y]/(Y^m - 1)


@dataclass(frozen=True)
class RingElem:
    """Element of F2[Y]/(Y^m - 1), poly reduced to degree < m."""

    m: int
    poly: int

    def __post_init__(self):
        if self.poly >> self.m:
            object.__setattr__(self, "poly", poly_mod(self.poly, (1 << self.m) | 1))

    def __add__(self, other: "RingElem") -> "RingElem":
        self._check(other)
        return RingElem(self.m, self.poly ^ other.poly)

    def __mul__(self, other: "RingElem") -> "RingElem":
        self._check(other)
        return RingElem(self.m, poly_mulmod(self.poly, other.poly, (1 << self.m) | 1))

    def _check(self, other: "RingElem") -> None:
        if self.m != other.m:
            raise ValueError("mixed ring moduli")

    def is_zero(self) -> bool:
        return self.poly == 0


def ring_conj(x: RingElem) -> RingElem:
    """The conjugation Y -> Y^{m-1} (= Y^{-1}) extended additively."""
    m = x.m
    out = 0
    p = x.poly
    while p:
        low = p & -p
        i = low.bit_length() - 1
        out ^= 1 << ((m - i) % m)
        p ^= low
    return RingElem(m, out)
