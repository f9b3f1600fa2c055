"""Discovery pipeline: component databases, exhaustive small-length
self-dual enumeration, cubic classification, seeded permutation search
and the persisted catalog."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .equiv import DEFAULT_BUDGET, aut_order, canonicalize
from .gf import gf4_inv, gf4_mul
from .lincode import (
    BinaryCode,
    Code,
    QuaternaryCode,
    WeightEnumerator,
    check_divisibility,
    gf4_add_rows,
    gf4_conj_row,
    gf4_get,
    gf4_hermitian_ip,
    gf4_in_span,
    gf4_scale_row,
    hermitian_dual,
    euclidean_dual,
    is_self_dual,
    min_distance,
    parse_codes,
    weight_enumerator,
)
from .qc import (
    AmbiguousTemplateMatch,
    CubicComponents,
    QcShape,
    TemplateMatch,
    WenumTemplate,
    builtin_templates,
    check_quasi_cyclic,
    construct_cubic,
    distance_bound,
    extract_parameter,
)

MAX_ENUM_N_GF2 = 12
MAX_ENUM_N_GF4 = 8

# Parameter / automorphism values published prior to this search pipeline.
PUBLISHED_VALUES = {
    (54, "W1"): (0, 3, 6, 9, 12, 15, 18),
    (54, "W2"): (12, 15, 18, 21, 24, 27),
    (66, "W1"): (17, 21, 23, 26, 30, 43, 46),
}
PUBLISHED_AUT_SIZES = {(60, "W3"): (3, 6, 12)}


# ---------------------------------------------------------------------------
# Exhaustive enumeration of self-dual codes (as explicit sets, not classes)


def _rref_insert_binary(
    rows: Tuple[int, ...], pivots: Tuple[int, ...], v: int
) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """RREF of the span of an RREF matrix plus one independent vector."""
    for r, p in zip(rows, pivots):
        if (v >> p) & 1:
            v ^= r
    pv = (v & -v).bit_length() - 1
    new_rows = [r ^ v if (r >> pv) & 1 else r for r in rows]
    merged = sorted(zip(list(pivots) + [pv], new_rows + [v]))
    ps = tuple(p for p, _ in merged)
    rs = tuple(r for _, r in merged)
    return rs, ps


def _rref_insert_gf4(
    rows: Tuple[Tuple[int, int], ...], pivots: Tuple[int, ...], v: Tuple[int, int]
) -> Tuple[Tuple[Tuple[int, int], ...], Tuple[int, ...]]:
    for r, p in zip(rows, pivots):
        c = gf4_get(v, p)
        if c:
            v = gf4_add_rows(v, gf4_scale_row(c, r))
    low = (v[0] | v[1]) & -(v[0] | v[1])
    pv = low.bit_length() - 1
    lead = gf4_get(v, pv)
    if lead != 1:
        v = gf4_scale_row(gf4_inv(lead), v)
    new_rows = []
    for r in rows:
        c = gf4_get(r, pv)
        if c:
            r = gf4_add_rows(r, gf4_scale_row(c, v))
        new_rows.append(r)
    merged = sorted(zip(list(pivots) + [pv], new_rows + [v]))
    ps = tuple(p for p, _ in merged)
    rs = tuple(r for _, r in merged)
    return rs, ps


def _span_binary(rows: Sequence[int]) -> List[int]:
    out = [0]
    for r in rows:
        out += [w ^ r for w in out]
    return out


def _span_gf4(rows: Sequence[Tuple[int, int]]) -> List[Tuple[int, int]]:
    out = [(0, 0)]
    for r in rows:
        wr = gf4_scale_row(2, r)
        w2r = gf4_scale_row(3, r)
        out = (
            out
            + [gf4_add_rows(w, r) for w in out]
            + [gf4_add_rows(w, wr) for w in out]
            + [gf4_add_rows(w, w2r) for w in out]
        )
    return out


def enumerate_selfdual(field: int, n: int) -> List[Code]:
    """ALL self-dual codes of length n over GF(2)/GF(4), as explicit sets.

    Self-orthogonal basis extension level by level, deduplicated by the
    canonical RREF representation; no equivalence reduction.
    """
    if n % 2:
        raise ValueError("self-dual codes need even length")
    if field == 2:
        if n > MAX_ENUM_N_GF2:
            raise ValueError(f"GF(2) enumeration budget is n <= {MAX_ENUM_N_GF2}")
        level = {
            ((v,), ((v & -v).bit_length() - 1,))
            for v in range(1, 1 << n)
            if v.bit_count() % 2 == 0
        }
        for _ in range(n // 2 - 1):
            nxt = set()
            for rows, pivots in level:
                dual = euclidean_dual(BinaryCode(n=n, rows=rows, pivots=pivots))
                for v in _span_binary(dual.rows):
                    if v == 0 or v.bit_count() % 2:
                        continue
                    w = v
                    for r, p in zip(rows, pivots):
                        if (w >> p) & 1:
                            w ^= r
                    if w == 0:
                        continue
                    nxt.add(_rref_insert_binary(rows, pivots, v))
            level = nxt
        return [BinaryCode(n=n, rows=rows, pivots=pivots) for rows, pivots in sorted(level)]

    if field == 4:
        if n > MAX_ENUM_N_GF4:
            raise ValueError(f"GF(4) enumeration budget is n <= {MAX_ENUM_N_GF4}")
        level = set()
        for lo in range(1 << n):
            for hi in range(1 << n):
                v = (lo, hi)
                if v == (0, 0) or (lo | hi).bit_count() % 2:
                    continue
                level.add(_rref_insert_gf4((), (), v))
        for _ in range(n // 2 - 1):
            nxt = set()
            for rows, pivots in level:
                dual = hermitian_dual(QuaternaryCode(n=n, rows=rows, pivots=pivots))
                for v in _span_gf4(dual.rows):
                    if v == (0, 0) or (v[0] | v[1]).bit_count() % 2:
                        continue
                    if gf4_in_span(v, rows, pivots):
                        continue
                    nxt.add(_rref_insert_gf4(rows, pivots, v))
            level = nxt
        return [
            QuaternaryCode(n=n, rows=rows, pivots=pivots)
            for rows, pivots in sorted(level)
        ]
    raise ValueError("field must be 2 or 4")


def random_selfdual(field: int, n: int, rng: random.Random) -> Code:
    """One uniform-ish self-dual code by random self-orthogonal extension."""
    if n % 2:
        raise ValueError("self-dual codes need even length")
    rows: Tuple = ()
    pivots: Tuple[int, ...] = ()
    while 2 * len(rows) < n:
        if field == 2:
            dual = euclidean_dual(BinaryCode(n=n, rows=rows, pivots=pivots))
        else:
            dual = hermitian_dual(QuaternaryCode(n=n, rows=rows, pivots=pivots))
        for _ in range(10000):
            bits = rng.getrandbits(2 * dual.k if field == 4 else dual.k)
            if field == 2:
                v = 0
                for i, r in enumerate(dual.rows):
                    if (bits >> i) & 1:
                        v ^= r
                if v and v.bit_count() % 2 == 0:
                    w = v
                    for r, p in zip(rows, pivots):
                        if (w >> p) & 1:
                            w ^= r
                    if w:
                        rows, pivots = _rref_insert_binary(rows, pivots, v)
                        break
            else:
                v = (0, 0)
                for i, r in enumerate(dual.rows):
                    c = (bits >> (2 * i)) & 3
                    if c:
                        v = gf4_add_rows(v, gf4_scale_row(c, r))
                if v != (0, 0) and (v[0] | v[1]).bit_count() % 2 == 0:
                    if not gf4_in_span(v, rows, pivots):
                        rows, pivots = _rref_insert_gf4(rows, pivots, v)
                        break
        else:
            raise RuntimeError("failed to extend a self-orthogonal basis")
    if field == 2:
        return BinaryCode(n=n, rows=rows, pivots=pivots)
    return QuaternaryCode(n=n, rows=rows, pivots=pivots)


# ---------------------------------------------------------------------------
# Component databases


@dataclass(frozen=True)
class DbEntry:
    name: str
    code: Code

    @property
    def d(self) -> int:
        return min_distance(self.code)


@dataclass
class ComponentDb:
    binary: List[DbEntry] = field(default_factory=list)
    quaternary: List[DbEntry] = field(default_factory=list)


def load_component_db(path: str) -> ComponentDb:
    """Parse a code text file; every entry must be self-dual."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    db = ComponentDb()
    for name, code in parse_codes(text):
        if not is_self_dual(code):
            kind = "Euclidean" if isinstance(code, BinaryCode) else "Hermitian"
            raise ValueError(f"code {name!r} is not {kind} self-dual")
        entry = DbEntry(name=name, code=code)
        if isinstance(code, BinaryCode):
            db.binary.append(entry)
        else:
            db.quaternary.append(entry)
    return db


# ---------------------------------------------------------------------------
# Classification of cubic self-dual codes at small ell


@dataclass
class ClassRep:
    code: BinaryCode
    hash_hex: str
    aut: int
    d: int
    count: int


@dataclass
class Census:
    ell: int
    classes: List[ClassRep]
    complete: bool

    @property
    def class_count(self) -> int:
        return len(self.classes)


def classify_cubic(ell: int, budget: int = DEFAULT_BUDGET) -> Census:
    """Canonicalize every cubic construction from all self-dual component
    pairs at length ell and count permutation-equivalence classes.

    The binary side is reduced to equivalence representatives first: a joint
    coordinate permutation of (C1, C2) is an equivalence of the cubic code,
    and the quaternary side ranges over all codes as sets, so this loses no
    classes.
    """
    if ell % 2:
        raise ValueError("ell must be even")
    binaries = enumerate_selfdual(2, ell)
    reps: List[BinaryCode] = []
    seen_hashes = set()
    for b in binaries:
        h = canonicalize(b, budget).hash_hex
        if h not in seen_hashes:
            seen_hashes.add(h)
            reps.append(b)
    quaternaries = enumerate_selfdual(4, ell)
    classes: Dict[str, ClassRep] = {}
    complete = True
    for b in reps:
        for q in quaternaries:
            code = construct_cubic(CubicComponents(c1=b, c2=q))
            canon = canonicalize(code, budget)
            if not canon.complete:
                complete = False
            if canon.hash_hex in classes:
                classes[canon.hash_hex].count += 1
                continue
            info = aut_order(code, budget)
            classes[canon.hash_hex] = ClassRep(
                code=code,
                hash_hex=canon.hash_hex,
                aut=info.order,
                d=min_distance(code),
                count=1,
            )
    return Census(ell=ell, classes=list(classes.values()), complete=complete)


# ---------------------------------------------------------------------------
# Seeded transform search


@dataclass(frozen=True)
class SearchConfig:
    ell: int
    d_target: int
    samples: int = 1
    seed: int = 0
    scalings: bool = False
    conjugation: bool = False
    workers: int = 1
    canon_budget: int = DEFAULT_BUDGET
    templates: Optional[Tuple[WenumTemplate, ...]] = None

    def __post_init__(self):
        if self.ell % 2:
            raise ValueError("ell must be even")
        if self.samples < 1:
            raise ValueError("samples must be positive")


def transform_quaternary(
    c: QuaternaryCode,
    perm: Sequence[int],
    scalings: Sequence[int],
    conjugate: bool,
) -> QuaternaryCode:
    """Apply conjugation, then per-coordinate unit scalings, then the
    coordinate permutation (coordinate j moves to perm[j])."""
    if sorted(perm) != list(range(c.n)) or len(scalings) != c.n:
        raise ValueError("invalid transform")
    rows = []
    for row in c.rows:
        if conjugate:
            row = gf4_conj_row(row)
        lo = hi = 0
        for j in range(c.n):
            v = gf4_get(row, j)
            if v:
                s = scalings[j]
                if s not in (1, 2, 3):
                    raise ValueError("scalings must be GF(4) units")
                v = gf4_mul(s, v)
                lo |= (v & 1) << perm[j]
                hi |= ((v >> 1) & 1) << perm[j]
        rows.append((lo, hi))
    return QuaternaryCode.from_rows(rows, c.n)


@dataclass
class CodeRecord:
    n: int
    k: int
    d: int
    template_label: Optional[str]
    template_param: Optional[int]
    template_in_range: Optional[bool]
    template_weights: Dict[int, int]
    canonical_hash: str
    canonical_complete: bool
    aut: Optional[int]
    aut_complete: bool
    c1_name: str
    c2_name: str
    perm: List[int]
    scalings: List[int]
    conjugated: bool
    seed: int
    item: int
    group_key: Optional[str] = None

    def to_json(self) -> str:
        return json.dumps(self.__dict__, sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> "CodeRecord":
        data = json.loads(line)
        data["template_weights"] = {
            int(k): v for k, v in data["template_weights"].items()
        }
        return cls(**data)


@dataclass
class Catalog:
    meta: Dict[str, Union[int, str, bool]]
    records: List[CodeRecord] = field(default_factory=list)

    def keys(self) -> set:
        return {
            r.canonical_hash if r.canonical_complete else r.group_key
            for r in self.records
        }

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(json.dumps({"type": "meta", **self.meta}, sort_keys=True) + "\n")
            for r in sorted(self.records, key=lambda r: r.item):
                fh.write(r.to_json() + "\n")

    @classmethod
    def load(cls, path: str) -> "Catalog":
        with open(path, "r", encoding="utf-8") as fh:
            lines = [ln for ln in fh.read().splitlines() if ln.strip()]
        meta = json.loads(lines[0])
        meta.pop("type", None)
        return cls(meta=meta, records=[CodeRecord.from_json(ln) for ln in lines[1:]])


def _item_rng(seed: int, item: int) -> random.Random:
    return random.Random((seed << 24) ^ item)


def replay_record(rec: CodeRecord, db: ComponentDb) -> BinaryCode:
    """Rebuild the exact code from a record's provenance."""
    c1 = next(e.code for e in db.binary if e.name == rec.c1_name)
    c2 = next(e.code for e in db.quaternary if e.name == rec.c2_name)
    c2t = transform_quaternary(c2, rec.perm, rec.scalings, rec.conjugated)
    return construct_cubic(CubicComponents(c1=c1, c2=c2t))


def run_search(db: ComponentDb, cfg: SearchConfig) -> Catalog:
    """The sampling pipeline: transform, construct, filter, deduplicate."""
    templates = (
        list(cfg.templates) if cfg.templates is not None else builtin_templates()
    )
    n = 3 * cfg.ell
    for e in db.binary + db.quaternary:
        if e.code.n != cfg.ell:
            raise ValueError(f"component {e.name!r} has length {e.code.n}, not {cfg.ell}")
    template_weights = sorted(
        {w for t in templates if t.length == n for w, _, _ in t.terms}
    )
    pairs = []
    for be in db.binary:
        d1 = min_distance(be.code)
        for qe in db.quaternary:
            d2 = min_distance(qe.code)
            if min(3 * d1, 2 * d2) >= cfg.d_target:
                pairs.append((be, qe))
    catalog = Catalog(
        meta={
            "ell": cfg.ell,
            "n": n,
            "d_target": cfg.d_target,
            "samples": cfg.samples,
            "seed": cfg.seed,
            "scalings": cfg.scalings,
            "conjugation": cfg.conjugation,
            "pairs": len(pairs),
        }
    )
    keys = set()
    item = 0
    for be, qe in pairs:
        for _ in range(cfg.samples):
            item += 1
            rng = _item_rng(cfg.seed, item)
            perm = list(range(cfg.ell))
            rng.shuffle(perm)
            scalings = (
                [rng.choice((1, 2, 3)) for _ in range(cfg.ell)]
                if cfg.scalings
                else [1] * cfg.ell
            )
            conj = bool(rng.getrandbits(1)) if cfg.conjugation else False
            c2t = transform_quaternary(qe.code, perm, scalings, conj)
            code = construct_cubic(CubicComponents(c1=be.code, c2=c2t))
            d = min_distance(
                code, early_stop=cfg.d_target - 1, seed=cfg.seed ^ item, workers=cfg.workers
            )
            if d < cfg.d_target:
                continue
            d = min_distance(code, workers=cfg.workers)
            wenum = weight_enumerator(code, workers=cfg.workers)
            try:
                match = extract_parameter(wenum, templates)
            except AmbiguousTemplateMatch:
                match = None
            canon = canonicalize(code, cfg.canon_budget)
            aut = aut_order(code, cfg.canon_budget)
            weights_at = {w: wenum.coefficient(w) for w in template_weights}
            rec = CodeRecord(
                n=n,
                k=code.k,
                d=d,
                template_label=match.label if match else None,
                template_param=match.param if match else None,
                template_in_range=match.in_range if match else None,
                template_weights=weights_at,
                canonical_hash=canon.hash_hex,
                canonical_complete=canon.complete,
                aut=aut.order if aut.complete else None,
                aut_complete=aut.complete,
                c1_name=be.name,
                c2_name=qe.name,
                perm=perm,
                scalings=scalings,
                conjugated=conj,
                seed=cfg.seed,
                item=item,
            )
            if canon.complete:
                key = ("canon", canon.hash_hex)
                if key in keys:
                    continue
            else:
                group = json.dumps(
                    {"d": d, "weights": weights_at}, sort_keys=True
                )
                rec.group_key = group
                key = ("inv", group)
                # possibly-equivalent records are kept, grouped, never merged
                keys.add(key)
                catalog.records.append(rec)
                continue
            keys.add(key)
            catalog.records.append(rec)
    return catalog


def catalog_report(cat: Catalog, length: int) -> str:
    """Parameter coverage per template vs the previously published values."""
    lines = [f"catalog report, length {length}"]
    by_label: Dict[str, List[CodeRecord]] = {}
    for r in cat.records:
        if r.n == length and r.template_label is not None:
            by_label.setdefault(r.template_label, []).append(r)
    labels = sorted(
        set(by_label)
        | {lab for (ln, lab) in PUBLISHED_VALUES if ln == length}
        | {lab for (ln, lab) in PUBLISHED_AUT_SIZES if ln == length}
    )
    if not labels:
        lines.append("  (no matching records and no published values)")
    for lab in labels:
        recs = by_label.get(lab, [])
        params = sorted({r.template_param for r in recs if r.template_param is not None})
        known = PUBLISHED_VALUES.get((length, lab))
        lines.append(f"  template {lab}:")
        if known is not None:
            new = [p for p in params if p not in known]
            lines.append(f"    published: {list(known)}")
            lines.append(f"    found:     {params}")
            lines.append(f"    new:       {new}")
        elif params:
            lines.append(f"    found:     {params}")
        auts = sorted({r.aut for r in recs if r.aut is not None})
        known_aut = PUBLISHED_AUT_SIZES.get((length, lab))
        if known_aut is not None:
            new_aut = [a for a in auts if a not in known_aut]
            lines.append(f"    published aut sizes: {list(known_aut)}")
            lines.append(f"    found aut sizes:     {auts}")
            lines.append(f"    new aut sizes:       {new_aut}")
        lines.append(f"    records:   {len(recs)}")
    incomplete = [r for r in cat.records if r.n == length and not r.canonical_complete]
    if incomplete:
        lines.append(
            f"  note: {len(incomplete)} records keyed by invariants only "
            "(canonicalization budget); groups are possibly equivalent, not merged"
        )
    lines.append(
        f"  sampling coverage: {cat.meta.get('samples')} samples over "
        f"{cat.meta.get('pairs')} component pairs, seed {cat.meta.get('seed')}"
    )
    return "\n".join(lines)
