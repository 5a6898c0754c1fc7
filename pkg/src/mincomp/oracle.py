"""Slow reference implementations used to cross-check the optimized modules.

Everything here is written straight from the definitions: subsets are
enumerated with ``itertools.combinations``, lattice membership is decided by
Cramer's rule with permutation-expansion determinants, and group elements are
plain tuples added coordinatewise.  Nothing is imported from the optimized
modules apart from the shared error types.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import SearchTooLarge

Point = Tuple[int, ...]


@dataclass(frozen=True)
class Box:
    """Inclusive integer bounds ``lo_i <= x_i <= hi_i``."""

    bounds: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        b = tuple((int(lo), int(hi)) for lo, hi in self.bounds)
        if not b or any(lo > hi for lo, hi in b):
            raise ValueError(f"empty box {b}")
        object.__setattr__(self, "bounds", b)

    @classmethod
    def cube(cls, d: int, lo: int, hi: int) -> "Box":
        return cls(((lo, hi),) * d)

    @property
    def dim(self) -> int:
        return len(self.bounds)

    def __iter__(self) -> Iterator[Point]:
        return itertools.product(*(range(lo, hi + 1) for lo, hi in self.bounds))

    def __contains__(self, p) -> bool:
        return all(lo <= x <= hi for x, (lo, hi) in zip(p, self.bounds))


def window_points(member_fn: Callable[[Point], bool], box: Box) -> FrozenSet[Point]:
    return frozenset(p for p in box if member_fn(p))


def window_cover_check(a: Iterable[Sequence[int]], b_member: Callable[[Point], bool],
                       targets: Iterable[Sequence[int]]) -> List[Point]:
    """Targets ``t`` with no ``a`` in ``A`` such that ``t - a`` lies in ``B``."""
    a = [tuple(p) for p in a]
    out = []
    for t in targets:
        t = tuple(t)
        if not any(b_member(tuple(x - y for x, y in zip(t, p))) for p in a):
            out.append(t)
    return out


def representations(a: Iterable[Sequence[int]], b_member: Callable[[Point], bool],
                    t: Sequence[int]) -> List[Point]:
    """All ``a`` in ``A`` with ``t - a`` in ``B``."""
    return [tuple(p) for p in a if b_member(tuple(x - y for x, y in zip(t, p)))]


# -- lattices ----------------------------------------------------------------

def _perm_sign(perm) -> int:
    sign = 1
    seen = list(perm)
    for i in range(len(seen)):
        while seen[i] != i:
            j = seen[i]
            seen[i], seen[j] = seen[j], seen[i]
            sign = -sign
    return sign


def det_by_permutations(m: Sequence[Sequence[int]]) -> int:
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        prod = _perm_sign(perm)
        for i, j in enumerate(perm):
            prod *= m[i][j]
        total += prod
    return total


def solve_coords(periods: Sequence[Sequence[int]], v: Sequence[int]) -> Tuple[Fraction, ...]:
    """Rational ``gamma`` with ``sum gamma_i * periods[i] == v`` (Cramer's rule)."""
    d = len(periods)
    cols = [list(p) for p in periods]
    mat = [[cols[j][i] for j in range(d)] for i in range(d)]
    den = det_by_permutations(mat)
    if den == 0:
        raise ValueError("periods are linearly dependent")
    out = []
    for j in range(d):
        mj = [row[:] for row in mat]
        for i in range(d):
            mj[i][j] = v[i]
        out.append(Fraction(det_by_permutations(mj), den))
    return tuple(out)


def in_lattice(periods, v) -> bool:
    return all(c.denominator == 1 for c in solve_coords(periods, v))


def in_cone(periods, v) -> bool:
    return all(c.denominator == 1 and c >= 0 for c in solve_coords(periods, v))


def congruent(periods, a, b) -> bool:
    return in_lattice(periods, tuple(x - y for x, y in zip(a, b)))


def ep_member(periods, sporadic, base, x) -> bool:
    """``x`` in ``sporadic u (base + cone)``."""
    x = tuple(x)
    if x in {tuple(s) for s in sporadic}:
        return True
    return any(in_cone(periods, tuple(a - b for a, b in zip(x, bb))) for bb in base)


def class_representatives(periods) -> List[Point]:
    """One point per class of Z^d modulo the period lattice, found by scanning boxes."""
    d = len(periods)
    index = abs(det_by_permutations([[periods[j][i] for j in range(d)] for i in range(d)]))
    reps: List[Point] = []
    radius = 0
    while len(reps) < index:
        for p in itertools.product(range(-radius, radius + 1), repeat=d):
            if max((abs(c) for c in p), default=0) != radius:
                continue
            if not any(congruent(periods, p, r) for r in reps):
                reps.append(p)
        radius += 1
    return reps


class NaiveQuotient:
    """Z^d modulo the period lattice, elements named by scanned representatives."""

    def __init__(self, periods):
        self.periods = [tuple(p) for p in periods]
        self.reps = class_representatives(self.periods)

    @property
    def order(self) -> int:
        return len(self.reps)

    def cls(self, p) -> int:
        for i, r in enumerate(self.reps):
            if congruent(self.periods, p, r):
                return i
        raise AssertionError("point escaped every class")

    def add(self, i: int, j: int) -> int:
        return self.cls(tuple(a + b for a, b in zip(self.reps[i], self.reps[j])))


# -- finite groups -----------------------------------------------------------

def group_elements(factors: Sequence[int]) -> List[Point]:
    return list(itertools.product(*(range(a) for a in factors)))


def _gadd(factors, x, y) -> Point:
    return tuple((a + b) % m for a, b, m in zip(x, y, factors))


def naive_sumset(factors, a, b) -> FrozenSet[Point]:
    return frozenset(_gadd(factors, x, y) for x in a for y in b)


def naive_is_complement(factors, w, c) -> bool:
    return len(naive_sumset(factors, w, c)) == len(group_elements(factors))


def naive_minimality_check(factors, w, c) -> bool:
    """``C`` is a complement of ``W`` and no ``C - {c}`` is one."""
    c = set(map(tuple, c))
    if not naive_is_complement(factors, w, c):
        return False
    return all(not naive_is_complement(factors, w, c - {x}) for x in c)


def _cap(cap: Optional[int]) -> int:
    if cap is not None:
        return cap
    raw = os.environ.get("MINCOMP_SEARCH_CAP")
    return int(raw) if raw else 24


def _pair_conditions(add, elements, q1, q, n) -> bool:
    union = set(q1) | set(q)
    if {add(x, y) for x in n for y in union} != set(elements):
        return False
    for x in n:
        others = {add(y, p) for y in n if y != x for p in union}
        if not any(add(x, p) not in others for p in q1):
            return False
    return True


def naive_pair_check(factors, q1, q, n) -> bool:
    """Both pair conditions for ``N`` checked literally in ``prod Z/a_i``."""
    els = group_elements(factors)
    return bool(n) and _pair_conditions(lambda x, y: _gadd(factors, x, y), els,
                                        [tuple(x) for x in q1], [tuple(x) for x in q],
                                        [tuple(x) for x in n])


def naive_pair_search(factors, q1, q, cap: Optional[int] = None) -> Optional[FrozenSet[Point]]:
    """First ``N`` (by size, then lexicographically) passing :func:`naive_pair_check`."""
    els = group_elements(factors)
    cap = _cap(cap)
    if len(els) > cap:
        raise SearchTooLarge(len(els), cap)
    for size in range(1, len(els) + 1):
        for n in itertools.combinations(els, size):
            if naive_pair_check(factors, q1, q, n):
                return frozenset(n)
    return None


def naive_necessary_check(factors, q1, q, n) -> bool:
    """Covering by ``N + (Q u Q1)`` plus, for each n, some ``n + q1`` outside ``N + Q``."""
    els = set(group_elements(factors))
    union = set(map(tuple, q1)) | set(map(tuple, q))
    if naive_sumset(factors, n, union) != els:
        return False
    blocked = naive_sumset(factors, n, q)
    return all(any(_gadd(factors, x, p) not in blocked for p in q1) for x in n)


def naive_necessary_search(factors, q1, q, cap: Optional[int] = None):
    els = group_elements(factors)
    cap = _cap(cap)
    if len(els) > cap:
        raise SearchTooLarge(len(els), cap)
    for size in range(1, len(els) + 1):
        for n in itertools.combinations(els, size):
            if naive_necessary_check(factors, q1, q, n):
                return frozenset(n)
    return None


def naive_lattice_pair_search(periods, q1_points, q_points) -> Optional[List[Point]]:
    """The pair search done on classes of Z^d directly, with no group structure given.

    Returns lifts of a certificate, or ``None`` when no subset of classes works.
    """
    quo = NaiveQuotient(periods)
    q1 = sorted({quo.cls(p) for p in q1_points})
    q = sorted({quo.cls(p) for p in q_points})
    els = list(range(quo.order))
    for size in range(1, quo.order + 1):
        for n in itertools.combinations(els, size):
            if _pair_conditions(quo.add, els, q1, q, n):
                return [quo.reps[i] for i in n]
    return None


# -- eventually periodic sets --------------------------------------------------

def naive_profile(periods, sporadic, base):
    """Split sporadic points by whether some base point is congruent to them."""
    w1, w0 = [], []
    for s in sorted(map(tuple, sporadic)):
        (w0 if any(congruent(periods, s, b) for b in base) else w1).append(s)
    return w0, w1


def naive_greedy(periods, w1, n_points, q_points, order: Sequence[Sequence[int]]):
    """Removal greedy over the listed candidates.

    ``c`` (congruent to some point of ``n_points``) is dropped when every
    ``x = c + w`` that is congruent to no ``n + q`` still has another
    preimage ``x - w'`` among the candidates not dropped so far.  Candidates
    not in ``order`` count as present.
    """
    w1 = [tuple(w) for w in w1]
    n_points = [tuple(p) for p in n_points]
    q_points = [tuple(p) for p in q_points]
    sums = [tuple(a + b for a, b in zip(n, q)) for n in n_points for q in q_points]
    dropped = set()

    def in_c(p):
        return any(congruent(periods, p, n) for n in n_points)

    def in_cprime(p):
        return not any(congruent(periods, p, s) for s in sums)

    kept, removed = [], []
    for c in map(tuple, order):
        needed = False
        for w in w1:
            x = tuple(a + b for a, b in zip(c, w))
            if not in_cprime(x):
                continue
            others = [tuple(a - b for a, b in zip(x, v)) for v in w1]
            others = [p for p in others if p != c and in_c(p) and p not in dropped]
            if not others:
                needed = True
                break
        if needed:
            kept.append(c)
        else:
            dropped.add(c)
            removed.append(c)
    return kept, removed
