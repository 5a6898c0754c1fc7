"""Eventually periodic subsets of Z^d.

An :class:`EPSet` describes ``sporadic U (base + cone)`` where
``cone = N u_1 + ... + N u_d``.  :func:`canonicalize` brings any such
description to the unique decomposition in which the sporadic points are
exactly the points ``w`` with ``w + cone`` not contained in the set, and the
base is the per-residue antichain of cone-minimal generators.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .errors import DimensionMismatch, EmptyBase, EPSetParseError, NotCanonical
from .finitegrp import FiniteAbelianGroup, GroupSubset
from .zlattice import (
    PeriodBasis,
    Point,
    QuotientStructure,
    add,
    as_point,
    cone_coords,
    in_cone,
    quotient_structure,
    sub,
)


def _points(pts: Iterable) -> FrozenSet[Point]:
    return frozenset(as_point(p) for p in pts)


@dataclass(frozen=True)
class EPSet:
    basis: PeriodBasis
    sporadic: FrozenSet[Point] = frozenset()
    base: FrozenSet[Point] = frozenset()
    canonical: bool = False

    def __post_init__(self):
        object.__setattr__(self, "sporadic", _points(self.sporadic))
        object.__setattr__(self, "base", _points(self.base))
        d = self.basis.dim
        for p in itertools.chain(self.sporadic, self.base):
            if len(p) != d:
                raise DimensionMismatch(f"point {p} is not in Z^{d}")

    @property
    def dim(self) -> int:
        return self.basis.dim

    @cached_property
    def quotient(self) -> QuotientStructure:
        return quotient_structure(self.basis)

    def translate(self, v: Sequence[int]) -> "EPSet":
        v = as_point(v)
        return EPSet(self.basis, {add(p, v) for p in self.sporadic},
                     {add(p, v) for p in self.base}, self.canonical)

    def __contains__(self, x) -> bool:
        return member(self, x)


def member(w: EPSet, x: Sequence[int]) -> bool:
    x = as_point(x)
    if len(x) != w.dim:
        raise DimensionMismatch(f"point {x} is not in Z^{w.dim}")
    if x in w.sporadic:
        return True
    return any(in_cone(w.basis, sub(x, b)) for b in w.base)


def _staircase_gaps(w: EPSet, x: Point) -> Optional[List[Tuple[int, ...]]]:
    """Cone coordinates (relative to x) of ``(x + cone) \\ (base + cone)``.

    Returns None when that difference is infinite.
    """
    d = w.dim
    gens = []
    for b in w.base:
        g = cone_coords(w.basis, sub(b, x))
        if g is not None:
            gens.append(tuple(max(c, 0) for c in g))
    if any(all(c == 0 for c in g) for g in gens):
        return []
    # finite iff every axis carries a pure power x_j^p in the monomial ideal
    bounds = []
    for j in range(d):
        powers = [g[j] for g in gens if all(c == 0 for i, c in enumerate(g) if i != j)]
        if not powers:
            return None
        bounds.append(min(powers))
    gaps = []
    for gamma in itertools.product(*(range(p) for p in bounds)):
        if not any(all(a >= c for a, c in zip(gamma, g)) for g in gens):
            gaps.append(gamma)
    return gaps


def cone_saturates(w: EPSet, x: Sequence[int]) -> bool:
    """True iff ``x + cone`` is contained in ``w``."""
    x = as_point(x)
    if len(x) != w.dim:
        raise DimensionMismatch(f"point {x} is not in Z^{w.dim}")
    gaps = _staircase_gaps(w, x)
    if gaps is None:
        return False
    return all(member(w, w.basis.translate(x, g)) for g in gaps)


def _antichain(basis: PeriodBasis, pts: Iterable[Point]) -> FrozenSet[Point]:
    pts = sorted(set(pts))
    keep = []
    for p in pts:
        if not any(q != p and in_cone(basis, sub(p, q)) for q in pts):
            keep.append(p)
    return frozenset(keep)


def canonicalize(raw: EPSet) -> EPSet:
    if not raw.base:
        raise EmptyBase("an eventually periodic set needs a nonempty base")
    spor = {s for s in raw.sporadic
            if not any(in_cone(raw.basis, sub(s, b)) for b in raw.base)}
    promoted = {s for s in spor if cone_saturates(raw, s)}
    base = _antichain(raw.basis, set(raw.base) | promoted)
    return EPSet(raw.basis, frozenset(spor - promoted), base, canonical=True)


@dataclass(frozen=True)
class ResidueProfile:
    quotient: QuotientStructure
    Q: FrozenSet[Point]
    W1: Tuple[Point, ...]
    W0: Tuple[Point, ...]
    is_periodic: bool

    @cached_property
    def group(self) -> FiniteAbelianGroup:
        return FiniteAbelianGroup(self.quotient.invariant_factors)

    @property
    def Q_subset(self) -> GroupSubset:
        return GroupSubset(self.group, self.Q)

    @cached_property
    def W1_residues(self) -> FrozenSet[Point]:
        return frozenset(self.quotient.residue(p) for p in self.W1)

    @property
    def W1_subset(self) -> GroupSubset:
        return GroupSubset(self.group, self.W1_residues)


def residue_profile(w: EPSet) -> ResidueProfile:
    if not w.canonical:
        raise NotCanonical("residue_profile needs a canonical EPSet")
    q = w.quotient
    Q = frozenset(q.residue(b) for b in w.base)
    w1 = tuple(sorted(s for s in w.sporadic if q.residue(s) not in Q))
    w0 = tuple(sorted(s for s in w.sporadic if q.residue(s) in Q))
    return ResidueProfile(q, Q, w1, w0, is_periodic=not w.sporadic)


# -- text format -----------------------------------------------------------

_DIRECTIVE = re.compile(r"^\s*([a-z]+)\s*:(.*)$")


def _parse_vectors(text: str, d: Optional[int], lineno: int) -> List[Point]:
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            raise EPSetParseError(lineno, "empty vector")
        try:
            vec = tuple(int(tok) for tok in chunk.split())
        except ValueError:
            raise EPSetParseError(lineno, f"bad integer in {chunk!r}") from None
        if d is not None and len(vec) != d:
            raise EPSetParseError(lineno, f"expected {d} coordinates, got {len(vec)}")
        out.append(vec)
    return out


def parse_epset(text: str) -> EPSet:
    """Parse the line-oriented ``dim/periods/sporadic/base`` format."""
    fields = {}
    lines = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0]
        if not line.strip():
            continue
        m = _DIRECTIVE.match(line)
        if not m:
            raise EPSetParseError(lineno, f"expected 'key: value', got {line.strip()!r}")
        key, value = m.group(1), m.group(2)
        if key not in ("dim", "periods", "sporadic", "base"):
            raise EPSetParseError(lineno, f"unknown directive {key!r}")
        if key in fields:
            raise EPSetParseError(lineno, f"duplicate directive {key!r}")
        fields[key] = value
        lines[key] = lineno
    for key in ("dim", "periods", "base"):
        if key not in fields:
            raise EPSetParseError(len(text.splitlines()) + 1, f"missing directive {key!r}")
    try:
        d = int(fields["dim"])
    except ValueError:
        raise EPSetParseError(lines["dim"], "dim must be an integer") from None
    if d < 1:
        raise EPSetParseError(lines["dim"], "dim must be positive")
    periods = _parse_vectors(fields["periods"], d, lines["periods"])
    if len(periods) != d:
        raise EPSetParseError(lines["periods"], f"expected {d} period vectors")
    try:
        basis = PeriodBasis(tuple(periods))
    except ValueError as exc:
        raise EPSetParseError(lines["periods"], str(exc)) from None
    base = [] if not fields["base"].strip() else _parse_vectors(fields["base"], d, lines["base"])
    spor = []
    if "sporadic" in fields and fields["sporadic"].strip():
        spor = _parse_vectors(fields["sporadic"], d, lines["sporadic"])
    return EPSet(basis, frozenset(spor), frozenset(base))


def _fmt_vectors(pts: Iterable[Sequence[int]]) -> str:
    return " ; ".join(" ".join(str(c) for c in p) for p in sorted(pts))


def format_epset(w: EPSet) -> str:
    lines = [f"dim: {w.dim}", f"periods: {_fmt_vectors_ordered(w.basis.columns)}"]
    if w.sporadic:
        lines.append(f"sporadic: {_fmt_vectors(w.sporadic)}")
    lines.append(f"base: {_fmt_vectors(w.base)}")
    return "\n".join(lines) + "\n"


def _fmt_vectors_ordered(pts) -> str:
    return " ; ".join(" ".join(str(c) for c in p) for p in pts)
