"""Linear codes over GF(2) and GF(4): canonical generators, duals, kernels.

Rows are packed into Python ints used as bitsets (bit j = coordinate j).
A quaternary row is a pair of bit planes (lo, hi): coordinate j holds the
GF(4) value ((lo>>j)&1) | (((hi>>j)&1)<<1), i.e. lo is the 1-plane and hi
the omega-plane.

Weight/distance kernels come in two independent flavours: a pure-Python
Gray-code walk (one row xor per step) for small dimensions, and a numpy
meet-in-the-middle kernel for large ones.  They are cross-checked in the
test suite.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .gf import gf4_conj, gf4_inv, gf4_mul, poly_deg, poly_mod

GRAY_CUTOFF = 18          # max combination bits handled by the Python kernel
ENUM_BUDGET_BITS = 33     # refuse full enumerations beyond 2^33 codewords


class EnumerationBudgetError(RuntimeError):
    """Raised when a full enumeration would exceed the configured budget."""


# ---------------------------------------------------------------------------
# GF(2) row reduction


def rref_binary(rows: Iterable[int], n: int) -> Tuple[List[int], List[int]]:
    """Reduced row-echelon form over GF(2); returns (rows, pivot columns)."""
    work = [r for r in rows if r]
    out: List[int] = []
    pivots: List[int] = []
    for col in range(n):
        bit = 1 << col
        pivot_row = None
        for idx, r in enumerate(work):
            if r & bit:
                pivot_row = work.pop(idx)
                break
        if pivot_row is None:
            continue
        work = [r ^ pivot_row if r & bit else r for r in work]
        out = [r ^ pivot_row if r & bit else r for r in out]
        out.append(pivot_row)
        pivots.append(col)
        if not work:
            break
    return out, pivots


def binary_in_span(v: int, rref_rows: Sequence[int], pivots: Sequence[int]) -> bool:
    for r, p in zip(rref_rows, pivots):
        if (v >> p) & 1:
            v ^= r
    return v == 0


# ---------------------------------------------------------------------------
# GF(4) packed-row helpers


def gf4_get(row: Tuple[int, int], j: int) -> int:
    return ((row[0] >> j) & 1) | (((row[1] >> j) & 1) << 1)


def gf4_scale_row(c: int, row: Tuple[int, int]) -> Tuple[int, int]:
    lo, hi = row
    if c == 0:
        return (0, 0)
    if c == 1:
        return row
    if c == 2:  # times omega
        return (hi, lo ^ hi)
    return (lo ^ hi, lo)  # times omega^2


def gf4_add_rows(a: Tuple[int, int], b: Tuple[int, int]) -> Tuple[int, int]:
    return (a[0] ^ b[0], a[1] ^ b[1])


def gf4_conj_row(row: Tuple[int, int]) -> Tuple[int, int]:
    lo, hi = row
    return (lo ^ hi, hi)


def gf4_hermitian_ip(u: Tuple[int, int], v: Tuple[int, int]) -> int:
    """Sum over coordinates of u_j * conj(v_j), a GF(4) scalar."""
    ul, uh = u
    wl, wh = gf4_conj_row(v)
    p_lo = (ul & wl) ^ (uh & wh)
    p_hi = (ul & wh) ^ (uh & wl) ^ (uh & wh)
    return (p_lo.bit_count() & 1) | ((p_hi.bit_count() & 1) << 1)


def gf4_euclidean_ip(u: Tuple[int, int], v: Tuple[int, int]) -> int:
    ul, uh = u
    vl, vh = v
    p_lo = (ul & vl) ^ (uh & vh)
    p_hi = (ul & vh) ^ (uh & vl) ^ (uh & vh)
    return (p_lo.bit_count() & 1) | ((p_hi.bit_count() & 1) << 1)


def rref_gf4(
    rows: Iterable[Tuple[int, int]], n: int
) -> Tuple[List[Tuple[int, int]], List[int]]:
    work = [r for r in rows if r[0] or r[1]]
    out: List[Tuple[int, int]] = []
    pivots: List[int] = []
    for col in range(n):
        pivot_row = None
        for idx, r in enumerate(work):
            if gf4_get(r, col):
                pivot_row = work.pop(idx)
                break
        if pivot_row is None:
            continue
        lead = gf4_get(pivot_row, col)
        if lead != 1:
            pivot_row = gf4_scale_row(gf4_inv(lead), pivot_row)

        def _kill(r: Tuple[int, int]) -> Tuple[int, int]:
            c = gf4_get(r, col)
            if c:
                return gf4_add_rows(r, gf4_scale_row(c, pivot_row))
            return r

        work = [_kill(r) for r in work]
        work = [r for r in work if r[0] or r[1]]
        out = [_kill(r) for r in out]
        out.append(pivot_row)
        pivots.append(col)
    return out, pivots


def gf4_in_span(
    v: Tuple[int, int], rref_rows: Sequence[Tuple[int, int]], pivots: Sequence[int]
) -> bool:
    for r, p in zip(rref_rows, pivots):
        c = gf4_get(v, p)
        if c:
            v = gf4_add_rows(v, gf4_scale_row(c, r))
    return v == (0, 0)


# ---------------------------------------------------------------------------
# Code types


def _pack_binary_row(row: Union[int, Sequence[int]], n: int) -> int:
    if isinstance(row, int):
        if row >> n:
            raise ValueError("row has bits beyond the stated length")
        return row
    if len(row) != n:
        raise ValueError(f"row of length {len(row)}, expected {n}")
    out = 0
    for j, v in enumerate(row):
        if v not in (0, 1):
            raise ValueError(f"bad GF(2) entry {v!r}")
        out |= v << j
    return out


def _pack_gf4_row(row: Union[Tuple[int, int], Sequence[int]], n: int) -> Tuple[int, int]:
    if isinstance(row, tuple) and len(row) == 2 and isinstance(row[0], int) and isinstance(row[1], int):
        lo, hi = row
        if (lo >> n) or (hi >> n):
            raise ValueError("row has bits beyond the stated length")
        return (lo, hi)
    if len(row) != n:
        raise ValueError(f"row of length {len(row)}, expected {n}")
    lo = hi = 0
    for j, v in enumerate(row):
        if v not in (0, 1, 2, 3):
            raise ValueError(f"bad GF(4) entry {v!r}")
        lo |= (v & 1) << j
        hi |= ((v >> 1) & 1) << j
    return (lo, hi)


@dataclass(frozen=True)
class BinaryCode:
    """[n, k] binary linear code held as a canonical RREF generator matrix."""

    n: int
    rows: Tuple[int, ...]
    pivots: Tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Union[int, Sequence[int]]], n: int) -> "BinaryCode":
        packed = [_pack_binary_row(r, n) for r in rows]
        rref, pivots = rref_binary(packed, n)
        return cls(n=n, rows=tuple(rref), pivots=tuple(pivots))

    def contains(self, v: int) -> bool:
        return binary_in_span(v, self.rows, self.pivots)

    def codewords(self) -> List[int]:
        """All 2^k codewords; intended for small k only."""
        words = [0]
        for r in self.rows:
            words += [w ^ r for w in words]
        return words

    def permuted(self, perm: Sequence[int]) -> "BinaryCode":
        """Code with coordinate j moved to position perm[j]."""
        new_rows = []
        for r in self.rows:
            out = 0
            for j in range(self.n):
                if (r >> j) & 1:
                    out |= 1 << perm[j]
            new_rows.append(out)
        return BinaryCode.from_rows(new_rows, self.n)


@dataclass(frozen=True)
class QuaternaryCode:
    """[n, k] GF(4) linear code as a canonical RREF generator matrix."""

    n: int
    rows: Tuple[Tuple[int, int], ...]
    pivots: Tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.rows)

    @classmethod
    def from_rows(
        cls, rows: Iterable[Union[Tuple[int, int], Sequence[int]]], n: int
    ) -> "QuaternaryCode":
        packed = [_pack_gf4_row(r, n) for r in rows]
        rref, pivots = rref_gf4(packed, n)
        return cls(n=n, rows=tuple(rref), pivots=tuple(pivots))

    def contains(self, v: Tuple[int, int]) -> bool:
        return gf4_in_span(v, self.rows, self.pivots)

    def codewords(self) -> List[Tuple[int, int]]:
        words = [(0, 0)]
        for r in self.rows:
            wr = gf4_scale_row(2, r)
            w2r = gf4_scale_row(3, r)
            words = (
                words
                + [gf4_add_rows(w, r) for w in words]
                + [gf4_add_rows(w, wr) for w in words]
                + [gf4_add_rows(w, w2r) for w in words]
            )
        return words

    def permuted(self, perm: Sequence[int]) -> "QuaternaryCode":
        new_rows = []
        for lo, hi in self.rows:
            nlo = nhi = 0
            for j in range(self.n):
                if (lo >> j) & 1:
                    nlo |= 1 << perm[j]
                if (hi >> j) & 1:
                    nhi |= 1 << perm[j]
            new_rows.append((nlo, nhi))
        return QuaternaryCode.from_rows(new_rows, self.n)


Code = Union[BinaryCode, QuaternaryCode]


def from_rows(rows, n: int, field: int = 2) -> Code:
    if field == 2:
        return BinaryCode.from_rows(rows, n)
    if field == 4:
        return QuaternaryCode.from_rows(rows, n)
    raise ValueError("field must be 2 or 4")


# ---------------------------------------------------------------------------
# Duals and self-duality


def euclidean_dual(c: BinaryCode) -> BinaryCode:
    """Nullspace of the generator matrix, with lowest-index pivots."""
    pivset = set(c.pivots)
    free_cols = [j for j in range(c.n) if j not in pivset]
    dual_rows = []
    for f in free_cols:
        v = 1 << f
        for r, p in zip(c.rows, c.pivots):
            if (r >> f) & 1:
                v |= 1 << p
        dual_rows.append(v)
    return BinaryCode.from_rows(dual_rows, c.n)


def hermitian_dual(c: QuaternaryCode) -> QuaternaryCode:
    """Dual under <x,y> = sum x_j * conj(y_j)."""
    conj_rows, conj_pivots = rref_gf4([gf4_conj_row(r) for r in c.rows], c.n)
    pivset = set(conj_pivots)
    free_cols = [j for j in range(c.n) if j not in pivset]
    dual_rows = []
    for f in free_cols:
        lo, hi = 1 << f, 0
        for r, p in zip(conj_rows, conj_pivots):
            coeff = gf4_get(r, f)
            if coeff:
                lo |= (coeff & 1) << p
                hi |= ((coeff >> 1) & 1) << p
        dual_rows.append((lo, hi))
    return QuaternaryCode.from_rows(dual_rows, c.n)


def is_self_dual(c: Code) -> bool:
    """Self-duality under the Euclidean (GF(2)) / Hermitian (GF(4)) product."""
    if c.n != 2 * c.k:
        return False
    if isinstance(c, BinaryCode):
        rows = c.rows
        for i in range(len(rows)):
            for j in range(i, len(rows)):
                if (rows[i] & rows[j]).bit_count() & 1:
                    return False
        return True
    for i in range(len(c.rows)):
        for j in range(i, len(c.rows)):
            if gf4_hermitian_ip(c.rows[i], c.rows[j]):
                return False
    return True


def cyclic_code(g: int, n: int) -> BinaryCode:
    """Binary cyclic code generated by g(Y), which must divide Y^n - 1."""
    if g == 0:
        raise ValueError("zero generator polynomial")
    if poly_mod((1 << n) | 1, g) != 0:
        raise ValueError("generator polynomial does not divide Y^n - 1")
    k = n - poly_deg(g)
    return BinaryCode.from_rows([g << i for i in range(k)], n)


# ---------------------------------------------------------------------------
# Weight enumerator


@dataclass(frozen=True)
class WeightEnumerator:
    """Coefficients A_0..A_n of W_C(y); truncated at `cap` when not complete."""

    n: int
    counts: Tuple[int, ...]
    cap: Optional[int] = None

    @property
    def complete(self) -> bool:
        return self.cap is None

    def coefficient(self, i: int) -> int:
        if i < len(self.counts):
            return self.counts[i]
        if self.complete:
            return 0
        raise ValueError(f"weight {i} beyond truncation cap {self.cap}")

    def min_weight(self) -> int:
        for i in range(1, len(self.counts)):
            if self.counts[i]:
                return i
        raise ValueError("no nonzero weight recorded")

    def serialize(self) -> str:
        return " ".join(f"{i}:{a}" for i, a in enumerate(self.counts) if a)

    @classmethod
    def parse(cls, text: str, n: int, cap: Optional[int] = None) -> "WeightEnumerator":
        counts = [0] * ((n if cap is None else cap) + 1)
        for item in text.split():
            i_s, a_s = item.split(":")
            counts[int(i_s)] = int(a_s)
        return cls(n=n, counts=tuple(counts), cap=cap)


class SelfDualType(enum.Enum):
    TYPE_I = "I"
    TYPE_II = "II"
    NOT_SELF_DUAL = "not self-dual"


def classify_type(w: WeightEnumerator, self_dual: bool) -> SelfDualType:
    if not w.complete:
        raise ValueError("type classification needs a complete enumerator")
    if not self_dual:
        return SelfDualType.NOT_SELF_DUAL
    for i, a in enumerate(w.counts):
        if a and i % 4 != 0:
            return SelfDualType.TYPE_I
    return SelfDualType.TYPE_II


def check_divisibility(w: WeightEnumerator, m: int) -> List[Tuple[int, int]]:
    """Weights i with m ∤ i but m ∤ A_i; empty list = consistent with the lemma."""
    if m < 2 or any(m % p == 0 for p in range(2, m)):
        raise ValueError("m must be prime")
    return [
        (i, a)
        for i, a in enumerate(w.counts)
        if a and i % m != 0 and a % m != 0
    ]


# ---------------------------------------------------------------------------
# Enumeration kernels

_MODE_SPLIT = "split"  # weight = popcount(w0) + popcount(w1)  (binary, 2 words)
_MODE_OR = "or"        # weight = popcount(w0 | w1)            (GF(4) planes)


def _pack_kernel_rows_binary(c: BinaryCode) -> Tuple[List[Tuple[int, int]], str]:
    mask = (1 << 64) - 1
    rows = [(r & mask, r >> 64) for r in c.rows]
    if c.n > 128:
        raise ValueError("kernel supports n <= 128")
    return rows, _MODE_SPLIT


def _pack_kernel_rows_gf4(c: QuaternaryCode) -> Tuple[List[Tuple[int, int]], str]:
    if c.n > 64:
        raise ValueError("kernel supports GF(4) length <= 64")
    rows: List[Tuple[int, int]] = []
    for r in c.rows:
        rows.append(r)
        rows.append(gf4_scale_row(2, r))
    return rows, _MODE_OR


def _gray_weight_counts(
    rows: Sequence[Tuple[int, int]],
    mode: str,
    nmax: int,
    early_stop: Optional[int] = None,
) -> Tuple[List[int], Optional[int]]:
    """Gray-code walk over all combinations; one row xor per step.

    Returns (counts, hit) where hit is a weight <= early_stop found early,
    in which case counts is partial.
    """
    counts = [0] * (nmax + 1)
    counts[0] = 1
    w0 = w1 = 0
    kk = len(rows)
    for i in range(1, 1 << kk):
        j = (i & -i).bit_length() - 1
        r = rows[j]
        w0 ^= r[0]
        w1 ^= r[1]
        if mode == _MODE_OR:
            wt = (w0 | w1).bit_count()
        else:
            wt = w0.bit_count() + w1.bit_count()
        counts[wt] += 1
        if early_stop is not None and 0 < wt <= early_stop:
            return counts, wt
    return counts, None


def _half_spans(rows: Sequence[Tuple[int, int]]) -> Tuple[np.ndarray, np.ndarray]:
    """All subset xors of the given rows as two uint64 plane arrays."""
    a = np.zeros(1, dtype=np.uint64)
    b = np.zeros(1, dtype=np.uint64)
    for r0, r1 in rows:
        a = np.concatenate([a, a ^ np.uint64(r0)])
        b = np.concatenate([b, b ^ np.uint64(r1)])
    return a, b


def _mitm_weight_counts(
    rows: Sequence[Tuple[int, int]],
    mode: str,
    nmax: int,
    early_stop: Optional[int] = None,
    workers: int = 1,
    seed: Optional[int] = None,
    chunk: int = 1024,
) -> Tuple[List[int], Optional[int]]:
    """Meet-in-the-middle enumeration vectorized with numpy."""
    kk = len(rows)
    inner_bits = min(13, kk - 1)
    inner0, inner1 = _half_spans(rows[:inner_bits])
    outer0, outer1 = _half_spans(rows[inner_bits:])
    n_outer = outer0.shape[0]
    starts = list(range(0, n_outer, chunk))
    if seed is not None:
        rng = np.random.default_rng(seed)
        rng.shuffle(starts)

    def _chunk_counts(s: int) -> np.ndarray:
        o0 = outer0[s : s + chunk, None]
        o1 = outer1[s : s + chunk, None]
        x0 = o0 ^ inner0[None, :]
        x1 = o1 ^ inner1[None, :]
        if mode == _MODE_OR:
            w = np.bitwise_count(x0 | x1)
        else:
            w = np.bitwise_count(x0) + np.bitwise_count(x1)
        return np.bincount(w.ravel(), minlength=nmax + 1)

    counts = np.zeros(nmax + 1, dtype=np.int64)
    if workers > 1 and early_stop is None:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_chunk_counts, starts):
                counts += part
    else:
        for s in starts:
            counts += _chunk_counts(s)
            if early_stop is not None:
                nz = np.nonzero(counts[1 : early_stop + 1])[0]
                if nz.size:
                    return counts.tolist(), int(nz[0]) + 1
    return counts.tolist(), None


def _enumeration_rows(c: Code) -> Tuple[List[Tuple[int, int]], str]:
    if isinstance(c, BinaryCode):
        return _pack_kernel_rows_binary(c)
    return _pack_kernel_rows_gf4(c)


def weight_enumerator(
    c: Code,
    cap: Optional[int] = None,
    workers: int = 1,
    budget_bits: int = ENUM_BUDGET_BITS,
) -> WeightEnumerator:
    """Exact weight distribution A_0..A_n (or truncated at `cap`)."""
    rows, mode = _enumeration_rows(c)
    if len(rows) > budget_bits:
        raise EnumerationBudgetError(
            f"enumerating 2^{len(rows)} codewords exceeds the 2^{budget_bits} "
            "budget; use min_distance with early_stop or raise budget_bits"
        )
    if len(rows) <= GRAY_CUTOFF:
        counts, _ = _gray_weight_counts(rows, mode, c.n)
    else:
        counts, _ = _mitm_weight_counts(rows, mode, c.n, workers=workers)
    if cap is not None:
        counts = counts[: cap + 1]
        return WeightEnumerator(n=c.n, counts=tuple(counts), cap=cap)
    return WeightEnumerator(n=c.n, counts=tuple(counts))


def min_distance(
    c: Code,
    early_stop: Optional[int] = None,
    workers: int = 1,
    seed: Optional[int] = None,
    budget_bits: int = ENUM_BUDGET_BITS,
) -> int:
    """Exact minimum nonzero weight by full enumeration.

    With `early_stop`, returns as soon as any nonzero codeword of weight
    <= early_stop is seen; the value then only certifies d <= early_stop.
    """
    if c.k == 0:
        raise ValueError("the zero code has no nonzero codewords")
    rows, mode = _enumeration_rows(c)
    if len(rows) > budget_bits:
        raise EnumerationBudgetError(
            f"enumerating 2^{len(rows)} codewords exceeds the 2^{budget_bits} budget"
        )
    if len(rows) <= GRAY_CUTOFF:
        counts, hit = _gray_weight_counts(rows, mode, c.n, early_stop=early_stop)
    else:
        counts, hit = _mitm_weight_counts(
            rows, mode, c.n, early_stop=early_stop, workers=workers, seed=seed
        )
    if hit is not None:
        return hit
    for i in range(1, len(counts)):
        if counts[i]:
            return i
    raise AssertionError("unreachable: nonzero code with no nonzero weight")


# ---------------------------------------------------------------------------
# Code text format

_GF4_CHARS = {"0": 0, "1": 1, "w": 2, "W": 3}
_GF4_REPR = {0: "0", 1: "1", 2: "w", 3: "W"}


def format_code(name: str, c: Code) -> str:
    q = 2 if isinstance(c, BinaryCode) else 4
    lines = [f"code {name} q={q} n={c.n} k={c.k}"]
    for r in c.rows:
        if q == 2:
            lines.append("".join("1" if (r >> j) & 1 else "0" for j in range(c.n)))
        else:
            lines.append("".join(_GF4_REPR[gf4_get(r, j)] for j in range(c.n)))
    return "\n".join(lines) + "\n"


def parse_codes(text: str) -> List[Tuple[str, Code]]:
    """Parse the multi-code text format; '#' comments, blank line ends a code."""
    out: List[Tuple[str, Code]] = []
    header = None
    rows: List[Sequence[int]] = []

    def _flush(lineno: int) -> None:
        nonlocal header, rows
        if header is None:
            return
        name, q, n, k = header
        if len(rows) != k:
            raise ValueError(
                f"line {lineno}: code {name!r} declares k={k} but has {len(rows)} rows"
            )
        code = from_rows(rows, n, field=q)
        out.append((name, code))
        header = None
        rows = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            _flush(lineno)
            continue
        if line.startswith("code "):
            _flush(lineno)
            parts = line.split()
            if len(parts) != 5:
                raise ValueError(f"line {lineno}: bad code header {line!r}")
            name = parts[1]
            try:
                kv = dict(p.split("=", 1) for p in parts[2:])
                q, n, k = int(kv["q"]), int(kv["n"]), int(kv["k"])
            except (KeyError, ValueError) as exc:
                raise ValueError(f"line {lineno}: bad code header {line!r}") from exc
            if q not in (2, 4):
                raise ValueError(f"line {lineno}: q must be 2 or 4")
            header = (name, q, n, k)
            continue
        if header is None:
            raise ValueError(f"line {lineno}: generator row outside a code block")
        name, q, n, k = header
        if len(line) != n:
            raise ValueError(f"line {lineno}: row length {len(line)}, expected {n}")
        try:
            if q == 2:
                rows.append([int(ch) for ch in line])
            else:
                rows.append([_GF4_CHARS[ch] for ch in line])
        except (KeyError, ValueError) as exc:
            raise ValueError(f"line {lineno}: bad symbol in row {line!r}") from exc
    _flush(len(text.splitlines()) + 1)
    return out
