"""Quasi-cyclic structure: the module map phi, CRT decomposition over the
factors of Y^m - 1, the cubic construction for m = 3, and the published
weight-enumerator templates for lengths 54, 60 and 66."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .gf import (
    Factorization,
    RingElem,
    factor_cyclotomic,
    poly_deg,
    poly_mod,
    poly_mulmod,
    poly_powmod,
    ring_conj,
)
from .lincode import (
    BinaryCode,
    QuaternaryCode,
    WeightEnumerator,
    is_self_dual,
    min_distance,
)


@dataclass(frozen=True)
class QcShape:
    """Block length ell and block count m of an ell-quasi-cyclic layout."""

    ell: int
    m: int

    def __post_init__(self):
        if self.ell < 1 or self.m < 1:
            raise ValueError("ell and m must be positive")
        if self.m % 2 == 0:
            raise ValueError("m must be odd (coprime to the characteristic)")

    @property
    def n(self) -> int:
        return self.ell * self.m


@dataclass(frozen=True)
class ModuleVector:
    """Element of R^ell with R = F2[Y]/(Y^m - 1); entries are poly bitsets."""

    m: int
    entries: Tuple[int, ...]


def phi_map(c: int, shape: QcShape) -> ModuleVector:
    """Codeword bits c_{i,j} (bit i*ell + j) to (c_0(Y), ..., c_{ell-1}(Y))."""
    if c >> shape.n:
        raise ValueError("vector longer than ell*m")
    entries = []
    for j in range(shape.ell):
        p = 0
        for i in range(shape.m):
            if (c >> (i * shape.ell + j)) & 1:
                p |= 1 << i
        entries.append(p)
    return ModuleVector(m=shape.m, entries=tuple(entries))


def phi_inverse(v: ModuleVector, shape: QcShape) -> int:
    if v.m != shape.m or len(v.entries) != shape.ell:
        raise ValueError("module vector does not fit the shape")
    c = 0
    for j, p in enumerate(v.entries):
        for i in range(shape.m):
            if (p >> i) & 1:
                c |= 1 << (i * shape.ell + j)
    return c


def shift_by_block(c: int, shape: QcShape) -> int:
    """Cyclic rotation by ell positions (block row m-1 moves to row 0)."""
    if c >> shape.n:
        raise ValueError("vector longer than ell*m")
    mask = (1 << shape.n) - 1
    return ((c << shape.ell) | (c >> (shape.ell * (shape.m - 1)))) & mask


def check_quasi_cyclic(c: BinaryCode, shape: QcShape) -> bool:
    """True iff the ell-shift maps the code onto itself."""
    if c.n != shape.n:
        raise ValueError(f"code length {c.n} != ell*m = {shape.n}")
    return all(c.contains(shift_by_block(r, shape)) for r in c.rows)


def hermitian_ip_module(x: ModuleVector, y: ModuleVector) -> RingElem:
    """Sum over coordinates of x_j * conj(y_j) in R."""
    if x.m != y.m or len(x.entries) != len(y.entries):
        raise ValueError("mismatched module vectors")
    acc = RingElem(x.m, 0)
    for xj, yj in zip(x.entries, y.entries):
        acc = acc + RingElem(x.m, xj) * ring_conj(RingElem(x.m, yj))
    return acc


def prop22_check(a: int, b: int, shape: QcShape) -> bool:
    """Both sides of the shift-orthogonality/Hermitian-product equivalence.

    Left side: (T^{ell*k}(a)) . b = 0 for all 0 <= k < m.  Right side:
    <phi(a), phi(b)> = 0 in R.  Returns True iff the two agree (they must,
    for every input)."""
    if (a >> shape.n) or (b >> shape.n):
        raise ValueError("vectors longer than ell*m")
    lhs = True
    s = a
    for _ in range(shape.m):
        if (s & b).bit_count() & 1:
            lhs = False
            break
        s = shift_by_block(s, shape)
    rhs = hermitian_ip_module(phi_map(a, shape), phi_map(b, shape)).is_zero()
    return lhs == rhs


# ---------------------------------------------------------------------------
# Field extensions F2[Y]/(f) and generic component codes


@dataclass(frozen=True)
class ExtField:
    """F2[Y]/(modulus) with elements as poly bitsets of degree < deg(modulus)."""

    modulus: int

    @property
    def degree(self) -> int:
        return poly_deg(self.modulus)

    @property
    def order(self) -> int:
        return 1 << self.degree

    def mul(self, a: int, b: int) -> int:
        return poly_mulmod(a, b, self.modulus)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return poly_powmod(a, self.order - 2, self.modulus)

    def reduce(self, p: int) -> int:
        return poly_mod(p, self.modulus)


def _subst(p: int, t: int, field: ExtField) -> int:
    """Evaluate the polynomial p at the field element t."""
    out = 0
    power = 1
    while p:
        if p & 1:
            out ^= power
        power = field.mul(power, t)
        p >>= 1
    return out


def ext_conj(field: ExtField, m: int, a: int) -> int:
    """Conjugation Y -> Y^{m-1} pushed into F2[Y]/(f) for f | Y^m - 1."""
    t = poly_powmod(1 << 1, m - 1, field.modulus)
    return _subst(a, t, field)


def ext_cross_map(src: ExtField, dst: ExtField, m: int, a: int) -> int:
    """The isomorphism F2[Y]/(h*) -> F2[Y]/(h) induced by Y -> Y^{m-1}."""
    t = poly_powmod(1 << 1, m - 1, dst.modulus)
    return _subst(a, t, dst)


@dataclass(frozen=True)
class ComponentCode:
    """Linear code of length ell over an extension field F2[Y]/(f)."""

    field: ExtField
    n: int
    rows: Tuple[Tuple[int, ...], ...]
    pivots: Tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.rows)

    @classmethod
    def from_rows(
        cls, field: ExtField, rows: Sequence[Sequence[int]], n: int
    ) -> "ComponentCode":
        work = [list(r) for r in rows if any(r)]
        out: List[List[int]] = []
        pivots: List[int] = []
        for col in range(n):
            pivot_row = None
            for idx, r in enumerate(work):
                if r[col]:
                    pivot_row = work.pop(idx)
                    break
            if pivot_row is None:
                continue
            lead = pivot_row[col]
            if lead != 1:
                li = field.inv(lead)
                pivot_row = [field.mul(li, x) for x in pivot_row]

            def _kill(r: List[int]) -> List[int]:
                c = r[col]
                if c:
                    return [x ^ field.mul(c, p) for x, p in zip(r, pivot_row)]
                return r

            work = [_kill(r) for r in work]
            work = [r for r in work if any(r)]
            out = [_kill(r) for r in out]
            out.append(list(pivot_row))
            pivots.append(col)
        return cls(
            field=field,
            n=n,
            rows=tuple(tuple(r) for r in out),
            pivots=tuple(pivots),
        )

    def euclidean_dual(self) -> "ComponentCode":
        pivset = set(self.pivots)
        free_cols = [j for j in range(self.n) if j not in pivset]
        dual_rows = []
        for f in free_cols:
            v = [0] * self.n
            v[f] = 1
            for r, p in zip(self.rows, self.pivots):
                v[p] = r[f]
            dual_rows.append(v)
        return ComponentCode.from_rows(self.field, dual_rows, self.n)

    def hermitian_self_dual(self, m: int) -> bool:
        """Self-dual under <x,y> = sum x_j * y_j^(m-1)-conjugate."""
        if self.n != 2 * self.k:
            return False
        conj_rows = [
            [ext_conj(self.field, m, x) for x in r] for r in self.rows
        ]
        for i in range(self.k):
            for j in range(i, self.k):
                acc = 0
                for a, b in zip(self.rows[i], conj_rows[j]):
                    acc ^= self.field.mul(a, b)
                if acc:
                    return False
        return True


@dataclass(frozen=True)
class CrtComponents:
    """Per-factor component codes of a quasi-cyclic code."""

    shape: QcShape
    factorization: Factorization
    self_components: Tuple[ComponentCode, ...]
    pair_components: Tuple[Tuple[ComponentCode, ComponentCode], ...]

    def dimension_check(self, k: int) -> bool:
        """Sum over factors of deg(f) * dim(component) must equal dim(code)."""
        total = sum(
            comp.field.degree * comp.k for comp in self.self_components
        )
        for c1, c2 in self.pair_components:
            total += c1.field.degree * c1.k + c2.field.degree * c2.k
        return total == k


def crt_decompose(c: BinaryCode, shape: QcShape) -> CrtComponents:
    """Reduce each phi-image coordinate modulo every irreducible factor."""
    if not check_quasi_cyclic(c, shape):
        raise ValueError("code is not quasi-cyclic for the given shape")
    fact = factor_cyclotomic(shape.m)
    images = [phi_map(r, shape) for r in c.rows]

    def project(f: int) -> ComponentCode:
        field = ExtField(f)
        rows = [[poly_mod(e, f) for e in img.entries] for img in images]
        return ComponentCode.from_rows(field, rows, shape.ell)

    selfs = tuple(project(g) for g in fact.self_reciprocal)
    pairs = tuple((project(h), project(hs)) for h, hs in fact.pairs)
    return CrtComponents(
        shape=shape, factorization=fact, self_components=selfs, pair_components=pairs
    )


def verify_decomposition_selfdual(parts: CrtComponents) -> bool:
    """Self-dual iff each self-reciprocal component is Hermitian self-dual and
    each reciprocal pair is an (C, dual-of-C) pair under Y -> Y^{m-1}."""
    m = parts.shape.m
    for comp in parts.self_components:
        if not comp.hermitian_self_dual(m):
            return False
    for cprime, cdouble in parts.pair_components:
        mapped_rows = [
            [ext_cross_map(cdouble.field, cprime.field, m, x) for x in r]
            for r in cdouble.rows
        ]
        mapped = ComponentCode.from_rows(cprime.field, mapped_rows, cprime.n)
        if mapped.rows != cprime.euclidean_dual().rows:
            return False
    return True


# ---------------------------------------------------------------------------
# Cubic construction (m = 3)


@dataclass(frozen=True)
class CubicComponents:
    """The (binary, quaternary) component pair of a cubic code."""

    c1: BinaryCode
    c2: QuaternaryCode

    def __post_init__(self):
        if self.c1.n != self.c2.n:
            raise ValueError("component lengths differ")

    @property
    def ell(self) -> int:
        return self.c1.n


def construct_cubic(parts: CubicComponents) -> BinaryCode:
    """(x+a | x+b | x+a+b) over x in C1 and a + w*b in C2; length 3*ell.

    Each GF(4) generator g contributes the images of g and w*g, realizing
    GF(4)-linearity with 2*k2 binary rows; k = k1 + 2*k2.
    """
    ell = parts.ell
    rows = []
    for x in parts.c1.rows:
        rows.append(x | (x << ell) | (x << (2 * ell)))
    for a, b in parts.c2.rows:
        rows.append(a | (b << ell) | ((a ^ b) << (2 * ell)))
        # w*(a + w b) = b + w(a+b)
        rows.append(b | ((a ^ b) << ell) | (a << (2 * ell)))
    return BinaryCode.from_rows(rows, 3 * ell)


def decompose_cubic(c: BinaryCode) -> CubicComponents:
    """Inverse of the cubic construction: C1 from block sums, C2 from the
    per-block offsets a + w*b."""
    if c.n % 3:
        raise ValueError("length must be 3*ell")
    ell = c.n // 3
    if not check_quasi_cyclic(c, QcShape(ell=ell, m=3)):
        raise ValueError("code is not quasi-cyclic of index ell")
    mask = (1 << ell) - 1
    c1_rows = []
    c2_rows = []
    for g in c.rows:
        b1 = g & mask
        b2 = (g >> ell) & mask
        b3 = (g >> (2 * ell)) & mask
        s = b1 ^ b2 ^ b3
        c1_rows.append(s)
        c2_rows.append((b1 ^ s, b2 ^ s))
    return CubicComponents(
        c1=BinaryCode.from_rows(c1_rows, ell),
        c2=QuaternaryCode.from_rows(c2_rows, ell),
    )


def cubic_selfdual_check(parts: CubicComponents) -> bool:
    """Euclidean self-duality of C1 plus Hermitian self-duality of C2."""
    return is_self_dual(parts.c1) and is_self_dual(parts.c2)


def distance_bound(parts: CubicComponents) -> int:
    """min(3 d(C1), 2 d(C2)), an upper bound on d of the constructed code."""
    if parts.c1.k == 0 or parts.c2.k == 0:
        raise ValueError("distance bound requires nonzero components")
    return min(3 * min_distance(parts.c1), 2 * min_distance(parts.c2))


# ---------------------------------------------------------------------------
# Weight-enumerator templates


@dataclass(frozen=True)
class WenumTemplate:
    """Affine forms A_i = base + slope*param at the listed weights."""

    length: int
    label: str
    terms: Tuple[Tuple[int, int, int], ...]  # (weight, base, slope)
    param_name: Optional[str] = None
    param_range: Optional[Tuple[int, int]] = None

    def evaluate(self, param: Optional[int] = None) -> Dict[int, int]:
        if (param is None) != (self.param_name is None):
            raise ValueError("parameter presence must match the template")
        out = {}
        for w, base, slope in self.terms:
            out[w] = base + slope * (param or 0)
        return out


def builtin_templates() -> List[WenumTemplate]:
    """The nine published templates for lengths 54, 60 and 66."""
    return [
        WenumTemplate(54, "W1", ((10, 351, -8), (12, 5031, 24)), "beta", (0, 43)),
        WenumTemplate(54, "W2", ((10, 351, -8), (12, 5543, 24)), "beta", (12, 43)),
        WenumTemplate(60, "W1", ((12, 2555, 0), (14, 33600, 0), (16, 278865, 0))),
        WenumTemplate(60, "W2", ((12, 2619, 0), (14, 33216, 0), (16, 279441, 0))),
        WenumTemplate(60, "W3", ((12, 3195, 0), (14, 29760, 0), (16, 284625, 0))),
        WenumTemplate(60, "W4", ((12, 3451, 0), (14, 24128, 0), (16, 336081, 0))),
        WenumTemplate(66, "W1", ((12, 858, 8), (14, 18678, 24)), "alpha", (0, 778)),
        WenumTemplate(66, "W2", ((12, 858, 8), (14, 18166, 24)), "alpha", (14, 756)),
        WenumTemplate(66, "W3", ((12, 1690, 0), (14, 7990, 0))),
    ]


@dataclass(frozen=True)
class TemplateMatch:
    label: str
    param: Optional[int]
    in_range: bool


class AmbiguousTemplateMatch(Exception):
    """More than one template fits the observed coefficients."""

    def __init__(self, matches: List[TemplateMatch]):
        super().__init__(f"ambiguous template match: {matches}")
        self.matches = matches


def match_templates(
    w: WeightEnumerator, templates: Optional[Sequence[WenumTemplate]] = None
) -> List[TemplateMatch]:
    """All templates (with the fitted parameter) agreeing on every listed weight."""
    if templates is None:
        templates = builtin_templates()
    matches = []
    for t in templates:
        if t.length != w.n:
            continue
        if t.param_name is None:
            if all(w.coefficient(i) == base for i, base, _ in t.terms):
                matches.append(TemplateMatch(label=t.label, param=None, in_range=True))
            continue
        param: Optional[int] = None
        ok = True
        for i, base, slope in t.terms:
            a = w.coefficient(i)
            if slope == 0:
                if a != base:
                    ok = False
                    break
                continue
            if (a - base) % slope:
                ok = False
                break
            p = (a - base) // slope
            if param is None:
                param = p
            elif param != p:
                ok = False
                break
        if ok and param is not None:
            lo, hi = t.param_range
            matches.append(
                TemplateMatch(label=t.label, param=param, in_range=lo <= param <= hi)
            )
    return matches


def extract_parameter(
    w: WeightEnumerator, templates: Optional[Sequence[WenumTemplate]] = None
) -> Optional[TemplateMatch]:
    """The unique template match, None when nothing fits, error when ambiguous."""
    matches = match_templates(w, templates)
    if not matches:
        return None
    if len(matches) > 1:
        raise AmbiguousTemplateMatch(matches)
    return matches[0]


def template_divisibility_violations(t: WenumTemplate, m: int = 3) -> List[int]:
    """Listed weights i with m ∤ i where m ∤ A_i for every admissible parameter.

    A nonempty result rules the whole template out for ell-quasi-cyclic
    self-dual codes of prime co-index m."""
    out = []
    for i, base, slope in t.terms:
        if i % m == 0:
            continue
        if slope % m == 0:
            if base % m != 0:
                out.append(i)
        # slope coprime to m: some parameter residue makes A_i divisible
    return out
