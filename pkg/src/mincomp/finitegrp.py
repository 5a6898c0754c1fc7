"""Finite abelian groups, complements and minimal complements.

Groups are products of cyclic groups ``Z/a_1 x ... x Z/a_s`` with elements
stored as tuples.  Subset searches run on bitmasks over the lexicographic
element order, which is also the enumeration order used everywhere for
determinism.
"""

from __future__ import annotations

import enum
import itertools
import os
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .errors import (
    EmptySet,
    GroupMismatch,
    NotAComplement,
    NotDisjoint,
    NotGenerating,
    NotMinimalInput,
    NotSymmetric,
    SearchTooLarge,
)

Element = Tuple[int, ...]

DEFAULT_SEARCH_CAP = 24


def search_cap() -> int:
    """Largest group order the exhaustive searches accept (``MINCOMP_SEARCH_CAP``)."""
    raw = os.environ.get("MINCOMP_SEARCH_CAP")
    return int(raw) if raw else DEFAULT_SEARCH_CAP


@dataclass(frozen=True)
class FiniteAbelianGroup:
    invariant_factors: Tuple[int, ...] = ()

    def __post_init__(self):
        factors = tuple(int(a) for a in self.invariant_factors)
        if any(a < 2 for a in factors):
            raise ValueError(f"cyclic factors must be >= 2, got {factors}")
        object.__setattr__(self, "invariant_factors", factors)

    @property
    def order(self) -> int:
        n = 1
        for a in self.invariant_factors:
            n *= a
        return n

    @property
    def zero(self) -> Element:
        return (0,) * len(self.invariant_factors)

    @cached_property
    def elements(self) -> Tuple[Element, ...]:
        return tuple(itertools.product(*(range(a) for a in self.invariant_factors)))

    @cached_property
    def _index(self) -> Dict[Element, int]:
        return {g: i for i, g in enumerate(self.elements)}

    def index(self, g: Element) -> int:
        return self._index[g]

    def add(self, g: Element, h: Element) -> Element:
        return tuple((x + y) % a for x, y, a in zip(g, h, self.invariant_factors))

    def neg(self, g: Element) -> Element:
        return tuple(-x % a for x, a in zip(g, self.invariant_factors))

    def normalize(self, g) -> Element:
        g = tuple(int(x) for x in g)
        if len(g) != len(self.invariant_factors):
            raise ValueError(f"{g} is not an element of Z/{self.invariant_factors}")
        return tuple(x % a for x, a in zip(g, self.invariant_factors))

    def subset(self, elements: Iterable) -> "GroupSubset":
        return GroupSubset(self, frozenset(self.normalize(g) for g in elements))

    def full(self) -> "GroupSubset":
        return GroupSubset(self, frozenset(self.elements))

    def product(self, other: "FiniteAbelianGroup") -> "FiniteAbelianGroup":
        return FiniteAbelianGroup(self.invariant_factors + other.invariant_factors)

    def __str__(self):
        if not self.invariant_factors:
            return "0"
        return " x ".join(f"Z/{a}" for a in self.invariant_factors)


@dataclass(frozen=True)
class GroupSubset:
    group: FiniteAbelianGroup
    elements: FrozenSet[Element]

    def __post_init__(self):
        els = frozenset(self.group.normalize(g) for g in self.elements)
        object.__setattr__(self, "elements", els)

    def __iter__(self):
        return iter(self.sorted())

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return g in self.elements

    def sorted(self) -> List[Element]:
        return sorted(self.elements)

    def mask(self) -> int:
        m = 0
        for g in self.elements:
            m |= 1 << self.group.index(g)
        return m


def _check_same(*subsets: GroupSubset) -> FiniteAbelianGroup:
    g = subsets[0].group
    for s in subsets[1:]:
        if s.group != g:
            raise GroupMismatch(f"{s.group} != {g}")
    return g


def sumset(a: GroupSubset, b: GroupSubset) -> GroupSubset:
    g = _check_same(a, b)
    return GroupSubset(g, frozenset(g.add(x, y) for x in a.elements for y in b.elements))


class Minimality(enum.Enum):
    NOT_COMPLEMENT = "not_complement"
    NOT_MINIMAL = "complement_not_minimal"
    MINIMAL = "minimal"


@dataclass(frozen=True)
class MinimalityVerdict:
    status: Minimality
    removable: Optional[Element] = None
    uncovered: Optional[Element] = None

    def __bool__(self):
        return self.status is Minimality.MINIMAL


def _coverers(w: GroupSubset, c: GroupSubset) -> Dict[Element, List[Element]]:
    g = w.group
    cov: Dict[Element, List[Element]] = {x: [] for x in g.elements}
    for ci in c.sorted():
        for wi in w.elements:
            cov[g.add(wi, ci)].append(ci)
    return cov


def is_minimal_complement(w: GroupSubset, c: GroupSubset) -> MinimalityVerdict:
    """Classify ``c`` as non-complement, removable-element complement, or minimal."""
    _check_same(w, c)
    if not w.elements or not c.elements:
        raise EmptySet("both sets must be nonempty")
    cov = _coverers(w, c)
    missing = [x for x, cs in cov.items() if not cs]
    if missing:
        return MinimalityVerdict(Minimality.NOT_COMPLEMENT, uncovered=min(missing))
    needed = {cs[0] for cs in cov.values() if len(cs) == 1}
    for ci in c.sorted():
        if ci not in needed:
            return MinimalityVerdict(Minimality.NOT_MINIMAL, removable=ci)
    return MinimalityVerdict(Minimality.MINIMAL)


def is_complement(w: GroupSubset, c: GroupSubset) -> bool:
    return len(sumset(w, c)) == w.group.order


def extract_minimal(w: GroupSubset, c: GroupSubset) -> GroupSubset:
    """Greedy removal over ``c`` in lexicographic order.

    ``c_i`` is dropped iff what remains is still a complement of ``w``; the
    survivors form a minimal complement contained in ``c``.
    """
    g = _check_same(w, c)
    if not w.elements:
        raise EmptySet("W is empty")
    count = {x: 0 for x in g.elements}
    for ci in c.elements:
        for wi in w.elements:
            count[g.add(wi, ci)] += 1
    if any(v == 0 for v in count.values()):
        raise NotAComplement("C is not a complement of W")
    kept = []
    for ci in c.sorted():
        shifted = [g.add(wi, ci) for wi in w.elements]
        if all(count[x] >= 2 for x in shifted):
            for x in shifted:
                count[x] -= 1
        else:
            kept.append(ci)
    return GroupSubset(g, frozenset(kept))


def generated_subgroup(a: GroupSubset) -> GroupSubset:
    g = a.group
    seen = {g.zero}
    frontier = [g.zero]
    while frontier:
        nxt = []
        for x in frontier:
            for y in a.elements:
                z = g.add(x, y)
                if z not in seen:
                    seen.add(z)
                    nxt.append(z)
        frontier = nxt
    return GroupSubset(g, frozenset(seen))


def power(a: GroupSubset, r: int) -> GroupSubset:
    """The r-fold sumset ``A + ... + A`` (``{0}`` for r = 0)."""
    out = GroupSubset(a.group, frozenset([a.group.zero]))
    for _ in range(r):
        out = sumset(out, a)
    return out


def minimal_r_net(a: GroupSubset, r: int) -> GroupSubset:
    g = a.group
    if r < 0:
        raise ValueError("r must be nonnegative")
    if g.zero not in a.elements:
        raise NotSymmetric("A must contain the identity")
    if any(g.neg(x) not in a.elements for x in a.elements):
        raise NotSymmetric("A must be symmetric")
    if len(generated_subgroup(a)) != g.order:
        raise NotGenerating("A does not generate the group")
    return extract_minimal(power(a, r), g.full())


@dataclass(frozen=True)
class PairCertificate:
    """A set N with, for each n, a q in Q1 whose sum n + q only n can reach."""

    N: GroupSubset
    witness: Tuple[Tuple[Element, Element], ...]

    @property
    def group(self) -> FiniteAbelianGroup:
        return self.N.group

    def witness_map(self) -> Dict[Element, Element]:
        return dict(self.witness)


def check_pair_certificate(q1: GroupSubset, q: GroupSubset, n: GroupSubset,
                           witness: Optional[Dict[Element, Element]] = None) -> bool:
    """Literal check of the two pair conditions (covering, private sums)."""
    g = _check_same(q1, q, n)
    if not n.elements:
        return False
    union = q1.elements | q.elements
    if len(sumset(n, GroupSubset(g, union))) != g.order:
        return False
    for x in n.elements:
        others = {g.add(y, p) for y in n.elements if y != x for p in union}
        candidates = [witness[x]] if witness is not None else sorted(q1.elements)
        if witness is not None and witness[x] not in q1.elements:
            return False
        if not any(g.add(x, c) not in others for c in candidates):
            return False
    return True


def search_private_cover(g: FiniteAbelianGroup, q1: Sequence[Element], cover: Iterable[Element],
            block: Iterable[Element], cap: Optional[int]) -> Optional[Dict[Element, Element]]:
    """First N (by size, then lex) with N + cover = G and private sums n + q.

    ``n + q`` (q in q1) is private when it avoids ``(N - {n}) + block``.  Both
    conditions prune monotonically, so a lex-ordered DFS per size finds the
    same set as plain enumeration of combinations.
    """
    cap = search_cap() if cap is None else cap
    order = g.order
    if order > cap:
        raise SearchTooLarge(order, cap)
    els = g.elements
    idx = g.index
    cover = list(cover)
    block = list(block)
    full = (1 << order) - 1
    cover_mask = []
    block_mask = []
    targets = []
    for x in els:
        cm = 0
        for p in cover:
            cm |= 1 << idx(g.add(x, p))
        bm = 0
        for p in block:
            bm |= 1 << idx(g.add(x, p))
        cover_mask.append(cm)
        block_mask.append(bm)
        targets.append([(idx(g.add(x, c)), c) for c in q1])
    per = max(1, len(set(cover)))

    def dfs(start, size, chosen, covered, blocked, alive):
        if len(chosen) == size:
            if covered == full:
                return {els[i]: alive_q[0][1] for i, alive_q in zip(chosen, alive)}
            return None
        slots = size - len(chosen)
        if bin(full & ~covered).count("1") > slots * per:
            return None
        for i in range(start, order - slots + 1):
            bm = block_mask[i]
            new_alive = []
            ok = True
            for t in alive:
                t2 = [(pos, c) for pos, c in t if not (bm >> pos) & 1]
                if not t2:
                    ok = False
                    break
                new_alive.append(t2)
            if not ok:
                continue
            own = [(pos, c) for pos, c in targets[i] if not (blocked >> pos) & 1]
            if not own:
                continue
            res = dfs(i + 1, size, chosen + [i], covered | cover_mask[i],
                      blocked | bm, new_alive + [own])
            if res is not None:
                return res
        return None

    for size in range(1, order + 1):
        found = dfs(0, size, [], 0, 0, [])
        if found is not None:
            return found
    return None


def _coset_shortcut(g: FiniteAbelianGroup, union: FrozenSet[Element]):
    """Lex-least transversal when ``union`` is a coset of a subgroup, else None."""
    base = min(union)
    h = {g.add(x, g.neg(base)) for x in union}
    if any(g.add(x, y) not in h for x in h for y in h):
        return None
    reps = []
    seen = set()
    for x in g.elements:
        coset = frozenset(g.add(x, y) for y in h)
        if coset not in seen:
            seen.add(coset)
            reps.append(x)
    return reps


def pair_minimal_complement(q1: GroupSubset, q: GroupSubset,
                            cap: Optional[int] = None) -> Optional[PairCertificate]:
    """Search for a minimal complement of the ordered pair ``(Q1, Q)``."""
    g = _check_same(q1, q)
    if not q1.elements or not q.elements:
        raise EmptySet("Q1 and Q must be nonempty")
    if q1.elements & q.elements:
        raise NotDisjoint("Q1 and Q must be disjoint")
    union = q1.elements | q.elements
    q1_sorted = q1.sorted()
    reps = _coset_shortcut(g, union)
    if reps is not None:
        # a transversal of a coset works with any q; it is also the
        # first hit of the ordered search, so the cap is not needed here
        wit = {n: q1_sorted[0] for n in reps}
    else:
        wit = search_private_cover(g, q1_sorted, sorted(union), sorted(union), cap)
        if wit is None:
            return None
    n_set = GroupSubset(g, frozenset(wit))
    return PairCertificate(n_set, tuple(sorted(wit.items())))


def product_minimal(parts: Sequence[Tuple[GroupSubset, GroupSubset]]):
    """Product of (W_i, M_i) pairs; each M_i must be a minimal complement of W_i."""
    if not parts:
        raise ValueError("need at least one part")
    for i, (w, m) in enumerate(parts):
        if is_minimal_complement(w, m).status is not Minimality.MINIMAL:
            raise NotMinimalInput(i)
    group = FiniteAbelianGroup(())
    ws = [()]
    ms = [()]
    for w, m in parts:
        group = group.product(w.group)
        ws = [a + b for a in ws for b in w.sorted()]
        ms = [a + b for a in ms for b in m.sorted()]
    return GroupSubset(group, frozenset(ws)), GroupSubset(group, frozenset(ms))
