"""Permutation equivalence of binary codes: canonical forms, automorphism
group order, equivalence decisions.

The canonical form is the lexicographically least RREF generator matrix over
all coordinate permutations compatible with an iteratively refined ordered
coordinate partition.  Refinement uses incidence with low-weight codewords
(permutation-invariant), and the backtrack prunes branches that a discovered
automorphism maps onto an already-explored one.
"""

from __future__ import annotations

import enum
import functools
import hashlib
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .lincode import BinaryCode, WeightEnumerator, rref_binary, weight_enumerator

DEFAULT_BUDGET = 10**7
_FULL_ENUM_MAX_K = 20
_WEIGHT_SLACK = 4  # use codewords of weight <= d + slack for refinement


@dataclass(frozen=True)
class CanonicalForm:
    rows: Tuple[int, ...]
    hash_hex: str
    complete: bool


@dataclass(frozen=True)
class AutInfo:
    order: int
    complete: bool


class Equivalence(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class _BudgetExhausted(Exception):
    pass


def _matrix_hash(rows: Sequence[int], n: int) -> str:
    h = hashlib.blake2b(digest_size=16)
    h.update(n.to_bytes(4, "little"))
    h.update(len(rows).to_bytes(4, "little"))
    nbytes = (n + 7) // 8
    for r in rows:
        h.update(r.to_bytes(nbytes, "little"))
    return h.hexdigest()


# ---------------------------------------------------------------------------
# Permutation-group order (Schreier-Sims, plain orbit/transversal chain)


def _compose(g: Sequence[int], h: Sequence[int]) -> Tuple[int, ...]:
    """(g o h)(i) = g(h(i))."""
    return tuple(g[h[i]] for i in range(len(g)))


def _invert(g: Sequence[int]) -> Tuple[int, ...]:
    inv = [0] * len(g)
    for i, j in enumerate(g):
        inv[j] = i
    return tuple(inv)


def group_order(gens: Sequence[Sequence[int]], n: int) -> int:
    """Order of the permutation group generated by gens on n points."""
    identity = tuple(range(n))
    gens = [tuple(g) for g in gens if tuple(g) != identity]
    if not gens:
        return 1
    beta = next(i for g in gens for i in range(n) if g[i] != i)
    transversal: Dict[int, Tuple[int, ...]] = {beta: identity}
    frontier = [beta]
    while frontier:
        point = frontier.pop()
        rep = transversal[point]
        for g in gens:
            image = g[point]
            if image not in transversal:
                transversal[image] = _compose(g, rep)
                frontier.append(image)
    stab_gens = set()
    for point, rep in transversal.items():
        for g in gens:
            t_out = transversal[g[point]]
            s = _compose(_invert(t_out), _compose(g, rep))
            if s != identity:
                stab_gens.add(s)
    return len(transversal) * group_order(sorted(stab_gens), n)


# ---------------------------------------------------------------------------
# Canonicalization search


class _CanonSearch:
    def __init__(self, code: BinaryCode, budget: int):
        self.code = code
        self.n = code.n
        self.budget = budget
        self.nodes = 0
        self.best_key: Optional[Tuple[int, ...]] = None
        self.ref_key: Optional[Tuple[int, ...]] = None
        self.ref_order: Optional[List[int]] = None
        self.generators: List[Tuple[int, ...]] = []
        self._build_words()

    def _build_words(self) -> None:
        """Low-weight codeword classes: everything up to d + slack, expanding
        further only while some code-support coordinate is still uncovered."""
        by_weight: Dict[int, List[int]] = {}
        full_support = 0
        for w in self.code.codewords():
            if w:
                by_weight.setdefault(w.bit_count(), []).append(w)
                full_support |= w
        weights = sorted(by_weight)
        d = weights[0]
        chosen: List[Tuple[int, int]] = []  # (class index, support mask)
        classes: List[int] = []
        covered = 0
        for wt in weights:
            if wt > d + _WEIGHT_SLACK and covered == full_support:
                break
            if len(chosen) > 4096 and covered == full_support:
                break
            classes.append(wt)
            for w in by_weight[wt]:
                chosen.append((len(classes) - 1, w))
                covered |= w
        self.words = chosen
        self.n_classes = len(classes)
        self.word_of_coord: List[List[int]] = [[] for _ in range(self.n)]
        for idx, (_, supp) in enumerate(chosen):
            s = supp
            while s:
                low = s & -s
                self.word_of_coord[low.bit_length() - 1].append(idx)
                s ^= low

    def _refine(self, cells: List[List[int]]) -> List[List[int]]:
        while True:
            color = [0] * self.n
            for ci, cell in enumerate(cells):
                for c in cell:
                    color[c] = ci
            # profile of each chosen word under the current coloring
            profiles: List[Tuple] = []
            for cls, supp in self.words:
                cols = []
                s = supp
                while s:
                    low = s & -s
                    cols.append(color[low.bit_length() - 1])
                    s ^= low
                cols.sort()
                profiles.append((cls, tuple(cols)))
            distinct = sorted(set(profiles))
            rank = {p: i for i, p in enumerate(distinct)}
            pids = [rank[p] for p in profiles]
            new_cells: List[List[int]] = []
            for cell in cells:
                if len(cell) == 1:
                    new_cells.append(cell)
                    continue
                groups: Dict[Tuple, List[int]] = {}
                for c in cell:
                    sig = tuple(sorted(pids[i] for i in self.word_of_coord[c]))
                    groups.setdefault(sig, []).append(c)
                for sig in sorted(groups):
                    new_cells.append(sorted(groups[sig]))
            if len(new_cells) == len(cells):
                return new_cells
            cells = new_cells

    def _leaf(self, cells: List[List[int]]) -> None:
        order = [cell[0] for cell in cells]
        pos = [0] * self.n
        for p, c in enumerate(order):
            pos[c] = p
        permuted = []
        for r in self.code.rows:
            out = 0
            s = r
            while s:
                low = s & -s
                out |= 1 << pos[low.bit_length() - 1]
                s ^= low
            permuted.append(out)
        key = tuple(rref_binary(permuted, self.n)[0])
        if self.best_key is None or key < self.best_key:
            self.best_key = key
        if self.ref_key is None:
            self.ref_key = key
            self.ref_order = order
        elif key == self.ref_key:
            g = [0] * self.n
            for j in range(self.n):
                g[self.ref_order[j]] = order[j]
            gt = tuple(g)
            if gt != tuple(range(self.n)) and gt not in self.generators:
                self.generators.append(gt)

    def _orbit_reps(self, cell: List[int], prefix: List[int]) -> Dict[int, int]:
        """Union-find orbits of cell members under generators fixing prefix."""
        gens = [
            g for g in self.generators if all(g[p] == p for p in prefix)
        ]
        parent = {c: c for c in cell}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        if gens:
            cellset = set(cell)
            for g in gens:
                for c in cell:
                    img = g[c]
                    if img in cellset:
                        ra, rb = find(c), find(img)
                        if ra != rb:
                            parent[ra] = rb
        return {c: find(c) for c in cell}

    def _dfs(self, cells: List[List[int]], prefix: List[int]) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetExhausted
        cells = self._refine(cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            self._leaf(cells)
            return
        cell = cells[target]
        explored_orbits = set()
        for v in cell:
            roots = self._orbit_reps(cell, prefix)
            if roots[v] in explored_orbits:
                continue
            rest = [c for c in cell if c != v]
            child = cells[:target] + [[v], rest] + cells[target + 1 :]
            self._dfs(child, prefix + [v])
            # orbits may have merged; recompute root for bookkeeping
            explored_orbits.add(self._orbit_reps(cell, prefix)[v])

    def run(self) -> Tuple[CanonicalForm, AutInfo]:
        complete = True
        try:
            self._dfs([list(range(self.n))], [])
        except _BudgetExhausted:
            complete = False
        if self.best_key is None:
            # budget hit before any leaf: fall back to the plain RREF
            key = self.code.rows
        else:
            key = self.best_key
        canon = CanonicalForm(
            rows=key, hash_hex=_matrix_hash(key, self.n), complete=complete
        )
        order = group_order(self.generators, self.n) if complete else 1
        return canon, AutInfo(order=order, complete=complete)


@functools.lru_cache(maxsize=4096)
def _canon_search(code: BinaryCode, budget: int) -> Tuple[CanonicalForm, AutInfo]:
    if code.k == 0:
        raise ValueError("cannot canonicalize the zero code")
    if code.k > _FULL_ENUM_MAX_K:
        # too large to enumerate codewords: invariant-only answer
        canon = CanonicalForm(
            rows=code.rows,
            hash_hex=_matrix_hash(code.rows, code.n),
            complete=False,
        )
        return canon, AutInfo(order=1, complete=False)
    return _CanonSearch(code, budget).run()


def canonicalize(c: BinaryCode, budget: int = DEFAULT_BUDGET) -> CanonicalForm:
    return _canon_search(c, budget)[0]


def aut_order(c: BinaryCode, budget: int = DEFAULT_BUDGET) -> AutInfo:
    return _canon_search(c, budget)[1]


def are_equivalent(
    a: BinaryCode, b: BinaryCode, budget: int = DEFAULT_BUDGET
) -> Equivalence:
    if a.n != b.n:
        raise ValueError("codes of different lengths")
    if a.k != b.k:
        return Equivalence.NO
    if a.k <= _FULL_ENUM_MAX_K:
        if weight_enumerator(a) != weight_enumerator(b):
            return Equivalence.NO
    ca = canonicalize(a, budget)
    cb = canonicalize(b, budget)
    if ca.complete and cb.complete:
        return Equivalence.YES if ca.rows == cb.rows else Equivalence.NO
    return Equivalence.UNKNOWN
