"""Named example families, ready to feed into ``decide``, ``witness`` and ``oracle``."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

import sympy

from .epsets import EPSet
from .errors import BadParams, FormViolation
from .zlattice import PeriodBasis, Point, as_point

Box = Sequence[Tuple[int, int]]


def _box_points(box: Box) -> Iterator[Point]:
    return itertools.product(*(range(lo, hi + 1) for lo, hi in box))


def _unit(d: int, i: int, scale: int = 1) -> Point:
    return tuple(scale * int(j == i) for j in range(d))


def _check_axis(d: int, i: int):
    if not 1 <= i <= d:
        raise BadParams(f"axis i={i} must lie in 1..{d}")


# -- predicate sets ------------------------------------------------------------

DIAGONAL_ALL_SIGNS = "all"
DIAGONAL_MAIN = "main"


@dataclass(frozen=True)
class PredicateSet:
    """A subset of Z^d given by an exactly evaluable rule.

    ``rule`` is ``"diagonal"`` (params: sign mode), ``"hyperplane"`` (params:
    1-based axis) or ``"polynomial_image"`` (params: the evaluated image).
    """

    dim: int
    rule: str
    params: Tuple = ()

    def __contains__(self, p) -> bool:
        p = tuple(p)
        if len(p) != self.dim:
            return False
        if self.rule == "diagonal":
            if self.params[0] == DIAGONAL_MAIN:
                return all(x == p[0] for x in p)
            return all(abs(x) == abs(p[0]) for x in p)
        if self.rule == "hyperplane":
            return p[self.params[0] - 1] == 0
        if self.rule == "polynomial_image":
            return p in self.params[0]
        raise BadParams(f"unknown rule {self.rule!r}")

    def window(self, box: Box) -> FrozenSet[Point]:
        return frozenset(p for p in _box_points(box) if p in self)


def diagonal(d: int, signs: str = DIAGONAL_ALL_SIGNS) -> PredicateSet:
    """Points ``(+-n, ..., +-n)``; ``signs="main"`` keeps only ``(n, ..., n)``."""
    if d < 2:
        raise BadParams("the diagonal set needs d >= 2")
    if signs not in (DIAGONAL_ALL_SIGNS, DIAGONAL_MAIN):
        raise BadParams(f"signs must be 'all' or 'main', got {signs!r}")
    return PredicateSet(d, "diagonal", (signs,))


def hyperplane(d: int, i: int) -> PredicateSet:
    """``{x : x_i = 0}`` with a 1-based axis index."""
    _check_axis(d, i)
    return PredicateSet(d, "hyperplane", (i,))


@dataclass(frozen=True)
class DiagonalHyperplaneWindow:
    d_points: FrozenSet[Point]
    h_points: FrozenSet[Point]
    # the diagonal is never eventually periodic: no finite set of periods
    # keeps a translate of the cone inside a set of points at equal |x_j|
    eventually_periodic: bool = False

    def __iter__(self):
        return iter((self.d_points, self.h_points))


def diagonal_hyperplane_windows(d: int, i: int, box: Box,
                                signs: str = DIAGONAL_ALL_SIGNS) -> DiagonalHyperplaneWindow:
    if d < 2:
        raise BadParams("needs d >= 2")
    _check_axis(d, i)
    if len(box) != d:
        raise BadParams(f"box has {len(box)} sides, expected {d}")
    return DiagonalHyperplaneWindow(diagonal(d, signs).window(box), hyperplane(d, i).window(box))


# -- the example family with periods k * e_j -------------------------------------

def example_infinite(variant: int, d: int, k: Optional[int] = None, i: Optional[int] = None,
                     F: Optional[Sequence[Sequence[int]]] = None) -> EPSet:
    """The non-periodic sets ``{0} u (B + cone)`` built on periods ``k e_1, ..., k e_d``.

    variant 1: ``B = {e_i, ..., (k-1) e_i}`` with periods ``k e_j`` (needs k >= 2,
    since k = 1 leaves B empty).
    variant 2: ``B = {e_i}`` with periods ``2 e_j``.
    variant 3: ``B = F``, ``2^d - 2`` points with distinct nonzero residues mod 2,
    periods ``2 e_j`` (d >= 2).
    """
    if d < 1:
        raise BadParams("d must be positive")
    zero = (0,) * d
    if variant == 1:
        if k is None or i is None:
            raise BadParams("variant 1 needs k and i")
        if k < 2:
            raise BadParams("variant 1 needs k >= 2; k = 1 gives an empty base")
        _check_axis(d, i)
        base = [_unit(d, i - 1, j) for j in range(1, k)]
        return EPSet(PeriodBasis.standard(d, k), {zero}, base)
    if variant == 2:
        if i is None:
            raise BadParams("variant 2 needs i")
        _check_axis(d, i)
        return EPSet(PeriodBasis.standard(d, 2), {zero}, {_unit(d, i - 1)})
    if variant == 3:
        if d < 2:
            raise BadParams("variant 3 needs d >= 2")
        if F is None:
            raise BadParams("variant 3 needs F")
        pts = [as_point(p) for p in F]
        if any(len(p) != d for p in pts):
            raise BadParams(f"points of F must lie in Z^{d}")
        residues = {tuple(x % 2 for x in p) for p in pts}
        if len(pts) != 2 ** d - 2 or len(residues) != len(pts):
            raise BadParams(f"F needs {2 ** d - 2} points with distinct residues mod 2")
        if zero in residues:
            # the origin's class would then be in the base, leaving no
            # sporadic point outside the base residues
            raise BadParams("F must avoid the residue of the origin")
        return EPSet(PeriodBasis.standard(d, 2), {zero}, pts)
    raise BadParams(f"variant must be 1, 2 or 3, got {variant}")


def variant3_choices(d: int) -> List[FrozenSet[Point]]:
    """All residue sets mod 2 admissible for variant 3 (nonzero, size 2^d - 2)."""
    nonzero = [r for r in itertools.product((0, 1), repeat=d) if any(r)]
    return [frozenset(c) for c in itertools.combinations(nonzero, 2 ** d - 2)]


# -- polynomial images -------------------------------------------------------------

@dataclass
class PolynomialImage:
    points: FrozenSet[Point]
    target: Tuple[int, int]
    # coordinate (1-based) -> target values missed inside the window
    missed: Dict[int, List[int]] = field(default_factory=dict)
    # coordinate -> number of image points on the hyperplane x_i = 0
    on_hyperplane: Dict[int, int] = field(default_factory=dict)

    def surjective_on_window(self, i: int) -> bool:
        return not self.missed[i]

    def minimality_flag(self, i: int) -> bool:
        """Window evidence for the hyperplane being a minimal complement.

        Needs every target value hit in coordinate i and exactly one image
        point on ``x_i = 0``.  Window evidence only, never a proof.
        """
        return self.surjective_on_window(i) and self.on_hyperplane[i] == 1

    def report(self) -> str:
        lo, hi = self.target
        lines = [f"{len(self.points)} image points; targets [{lo},{hi}]"]
        for i in sorted(self.missed):
            miss = self.missed[i]
            state = "surjective on window" if not miss else f"misses {len(miss)} values"
            line = f"coordinate {i}: {state}; {self.on_hyperplane[i]} points on x_{i}=0"
            if self.minimality_flag(i):
                line += " (minimality hypothesis plausibly satisfied, window evidence only)"
            lines.append(line)
        return "\n".join(lines)


def _compile(f, symbols) -> Callable[[Sequence[int]], int]:
    poly = sympy.Poly(f, *symbols)
    terms = []
    for monom, coeff in poly.terms():
        if not coeff.is_integer:
            raise BadParams(f"{f} has a non-integer coefficient {coeff}")
        terms.append((int(coeff), monom))

    def evaluate(args):
        total = 0
        for coeff, monom in terms:
            term = coeff
            for a, e in zip(args, monom):
                term *= a ** e
            total += term
        return total
    return evaluate


def polynomial_image(f_list: Sequence, m: int, domain: Box, d: Optional[int] = None,
                     target: Optional[Tuple[int, int]] = None) -> PolynomialImage:
    """Image of the domain box under ``n -> (f_1(n), ..., f_d(n))``.

    Polynomials are sympy expressions or strings with integer coefficients in
    at most ``m`` variables (taken in name order).  ``target`` is the interval
    of values checked for surjectivity; it defaults to the first side of the
    domain.
    """
    try:
        exprs = [sympy.sympify(f) for f in f_list]
    except (sympy.SympifyError, TypeError) as exc:
        raise BadParams(f"cannot parse polynomial: {exc}") from None
    if d is None:
        d = len(exprs)
    if len(exprs) != d or d < 1:
        raise BadParams(f"expected {d} polynomials, got {len(exprs)}")
    if m < 1 or len(domain) != m:
        raise BadParams(f"domain box has {len(domain)} sides, expected {m}")
    symbols = sorted(set().union(*(e.free_symbols for e in exprs)), key=lambda s: s.name)
    if len(symbols) > m:
        raise BadParams(f"{len(symbols)} variables used but m = {m}")
    symbols = symbols + [sympy.Symbol(f"_pad{j}") for j in range(m - len(symbols))]
    funcs = []
    for e in exprs:
        try:
            funcs.append(_compile(e, symbols))
        except sympy.PolynomialError as exc:
            raise BadParams(f"{e} is not a polynomial: {exc}") from None
    points = frozenset(tuple(f(n) for f in funcs) for n in _box_points(domain))
    if target is None:
        target = tuple(domain[0])
    lo, hi = target
    img = PolynomialImage(points, (lo, hi))
    for i in range(1, d + 1):
        values = {p[i - 1] for p in points}
        img.missed[i] = [v for v in range(lo, hi + 1) if v not in values]
        img.on_hyperplane[i] = sum(1 for p in points if p[i - 1] == 0)
    return img


def polynomial_set(image: PolynomialImage) -> PredicateSet:
    d = len(next(iter(image.points))) if image.points else 0
    return PredicateSet(d, "polynomial_image", (image.points,))


# -- one-dimensional sets of the form (mN + X) u Y0 u Y1 ------------------------------

def ksy_adapter(m: int, X: Sequence[int], Y0: Sequence[int] = (), Y1: Sequence[int] = ()) -> EPSet:
    """``(m N + X) u Y0 u Y1`` as an :class:`EPSet` with period ``m``."""
    if m < 1:
        raise FormViolation("m must be positive")
    X, Y0, Y1 = sorted(set(X)), sorted(set(Y0)), sorted(set(Y1))
    if not X:
        raise FormViolation("X must be nonempty (otherwise the set is finite)")
    if any(not 0 <= x < m for x in X):
        raise FormViolation(f"X must lie in [0, {m})")
    if any(y >= 0 for y in Y0):
        raise FormViolation("Y0 must consist of negative integers")
    xs = set(X)
    if any(y % m not in xs for y in Y0):
        raise FormViolation("every Y0 residue must occur in X")
    if any(y % m in xs for y in Y1):
        raise FormViolation("Y1 residues must avoid X")
    basis = PeriodBasis(((m,),))
    return EPSet(basis, {(y,) for y in Y0 + Y1}, {(x,) for x in X})


def ksy_criterion(m: int, X: Sequence[int], Y1: Sequence[int],
                  t_max: int) -> Optional[Tuple[int, FrozenSet[int]]]:
    """Brute-force search for a modulus ``T`` (multiple of m, ``T <= t_max``) and ``C``.

    ``C`` must satisfy ``C + (X_T u Y1) = Z/T`` and, for each c, some y in Y1 with
    ``c + y`` outside ``(C - {c}) + X_T``.  Returns the first ``(T, C)`` found.
    """
    for t in range(m, t_max + 1, m):
        xt = {(i * m + x) % t for i in range(t // m) for x in X}
        ys = {y % t for y in Y1}
        cover = xt | ys
        for size in range(1, t + 1):
            for c in itertools.combinations(range(t), size):
                if {(a + b) % t for a in c for b in cover} != set(range(t)):
                    continue
                ok = True
                for a in c:
                    blocked = {(b + x) % t for b in c if b != a for x in xt}
                    if not any((a + y) % t not in blocked for y in ys):
                        ok = False
                        break
                if ok:
                    return t, frozenset(c)
    return None
