"""Explicit minimal complements and their window certificates.

``build_witness`` runs the removal greedy over the infinite candidate set
``C`` (all points whose residue lies in the certificate), one shell of cone
coordinates at a time.  A candidate ``c`` can only matter for the targets
``c + w`` with ``w`` a sporadic point outside the base residues, so every
decision looks at finitely many points and never changes afterwards.

Beams (downward rays) give structured complements of the cone itself.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from .decide import Decision, Outcome
from .epsets import EPSet, ResidueProfile, residue_profile
from .errors import (
    CoverageFailure,
    InvalidCertificate,
    MalformedBeam,
    MinimalityWitnessMissing,
    NegativeShells,
    ShellCapExceeded,
)
from .finitegrp import PairCertificate, check_pair_certificate
from .zlattice import PeriodBasis, Point, add, as_point, cone_coords, quotient_structure, sub

DEFAULT_SHELL_CAP = 64


def shell_vectors(d: int, s: int) -> Iterator[Tuple[int, ...]]:
    """Integer vectors with max-norm exactly ``s``, in lexicographic order."""
    if d == 0:
        if s == 0:
            yield ()
        return
    if s == 0:
        yield (0,) * d
        return
    for a in range(-s, s + 1):
        if abs(a) == s:
            for rest in itertools.product(range(-s, s + 1), repeat=d - 1):
                yield (a,) + rest
        else:
            for rest in shell_vectors(d - 1, s):
                yield (a,) + rest


class _Greedy:
    """Resumable state of the removal greedy."""

    def __init__(self, w: EPSet, cert: PairCertificate):
        self.w = w
        self.basis = w.basis
        self.prof = residue_profile(w)
        self.q = self.prof.quotient
        g = self.prof.group
        self.n_res = frozenset(cert.N.elements)
        self.n_order = sorted(self.n_res, key=self.q.index)
        covered = {g.add(n, r) for n in self.n_res for r in self.prof.Q}
        self.cprime_res = frozenset(r for r in g.elements if r not in covered)
        self.w1 = self.prof.W1
        self.status: Dict[Point, bool] = {}
        self.shells = -1

    def seed(self, kept: Iterable[Point], removed: Iterable[Point], shells: int):
        for p in kept:
            self.status[p] = True
        for p in removed:
            self.status[p] = False
        self.shells = shells

    # -- geometry
    def in_c(self, p: Point) -> bool:
        return self.q.residue(p) in self.n_res

    def in_cprime(self, p: Point) -> bool:
        return self.q.residue(p) in self.cprime_res

    def coords(self, p: Point) -> Tuple[int, ...]:
        """Cone coordinates of ``p`` relative to its residue representative."""
        return cone_coords(self.basis, sub(p, self.q.rep(self.q.residue(p))))

    def shell(self, p: Point) -> int:
        return max((abs(c) for c in self.coords(p)), default=0)

    def point(self, residue, gamma) -> Point:
        return self.basis.translate(self.q.rep(residue), gamma)

    # -- greedy
    def present(self, p: Point) -> bool:
        if not self.in_c(p):
            return False
        if p in self.status:
            return self.status[p]
        # undecided points beyond the processed shells are still in C_i;
        # a processed point with no status was deleted by hand
        return self.shell(p) > self.shells

    def _preimages(self, x: Point) -> List[Point]:
        return [c for c in (sub(x, w) for w in self.w1) if self.present(c)]

    def _decide(self, c: Point) -> bool:
        for w in self.w1:
            x = add(c, w)
            if self.in_cprime(x) and self._preimages(x) == [c]:
                return True
        return False

    def extend(self, shells: int):
        d = self.basis.dim
        while self.shells < shells:
            s = self.shells + 1
            for gamma in shell_vectors(d, s):
                for r in self.n_order:
                    c = self.point(r, gamma)
                    if c not in self.status:
                        self.status[c] = self._decide(c)
            self.shells = s

    def is_kept(self, p: Point, limit: int) -> bool:
        if not self.in_c(p):
            return False
        sh = self.shell(p)
        if sh > self.shells:
            if sh > limit:
                raise ShellCapExceeded(p, limit)
            self.extend(sh)
        return self.status.get(p, False)

    def sole_preimage_witness(self, m: Point, limit: int) -> Optional[Point]:
        for w in self.w1:
            x = add(m, w)
            if not self.in_cprime(x):
                continue
            pre = [c for c in (sub(x, v) for v in self.w1) if self.is_kept(c, limit)]
            if pre == [m]:
                return x
        return None


@dataclass(frozen=True)
class WitnessComplement:
    certificate: PairCertificate
    basis: PeriodBasis
    shells_processed: int
    kept: FrozenSet[Point]
    removed: FrozenSet[Point]

    def dump(self) -> str:
        lines = [f"K {' '.join(map(str, p))}" for p in sorted(self.kept)]
        lines += [f"R {' '.join(map(str, p))}" for p in sorted(self.removed)]
        return "\n".join(lines) + "\n"


def _validate(w: EPSet, cert: PairCertificate) -> ResidueProfile:
    prof = residue_profile(w)
    if not prof.W1:
        raise InvalidCertificate("the set has no sporadic point outside the base residues")
    if cert.group != prof.group:
        raise InvalidCertificate("certificate lives in a different quotient group")
    if not check_pair_certificate(prof.W1_subset, prof.Q_subset, cert.N, cert.witness_map()):
        raise InvalidCertificate("certificate fails the pair conditions")
    return prof


def enumeration_order(w: EPSet, cert: PairCertificate, shells: int) -> List[Point]:
    """Points of ``C`` in the first ``shells`` shells, in the order the greedy visits them."""
    g = _Greedy(w, cert)
    return [g.point(r, gamma) for s in range(shells + 1)
            for gamma in shell_vectors(w.dim, s) for r in g.n_order]


def build_witness(w: EPSet, cert: PairCertificate, shells: int) -> WitnessComplement:
    if shells < 0:
        raise NegativeShells("shells must be >= 0")
    _validate(w, cert)
    g = _Greedy(w, cert)
    g.extend(shells)
    kept = frozenset(p for p, k in g.status.items() if k)
    removed = frozenset(p for p, k in g.status.items() if not k)
    return WitnessComplement(cert, w.basis, shells, kept, removed)


def witness_from_decision(dec: Decision, shells: int) -> WitnessComplement:
    if dec.outcome is not Outcome.EXISTS:
        raise InvalidCertificate(f"decision is {dec.outcome.value}, not exists")
    return build_witness(dec.canonical, dec.certificate, shells)


def infer_shells(w: EPSet, cert: PairCertificate, points: Iterable[Point]) -> int:
    """Largest shell index among the candidate points listed in a dump."""
    g = _Greedy(w, cert)
    return max((g.shell(p) for p in points if g.in_c(p)), default=0)


def parse_witness_dump(text: str) -> Tuple[FrozenSet[Point], FrozenSet[Point]]:
    kept, removed = set(), set()
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        tag, *coords = line.split()
        if tag not in ("K", "R"):
            raise ValueError(f"line {lineno}: expected K or R, got {tag!r}")
        p = tuple(int(c) for c in coords)
        (kept if tag == "K" else removed).add(p)
    return frozenset(kept), frozenset(removed)


# -- window verification ---------------------------------------------------

@dataclass
class WindowReport:
    core: Tuple[Tuple[int, int], ...]
    covered: int = 0
    failures: List[Point] = field(default_factory=list)
    minimality_witnesses: Dict[Point, Point] = field(default_factory=dict)
    minimality_missing: List[Point] = field(default_factory=list)
    shells_used: int = 0

    @property
    def minimality_ok(self) -> bool:
        return not self.minimality_missing

    @property
    def ok(self) -> bool:
        return not self.failures and self.minimality_ok

    def raise_for_failures(self):
        if self.failures:
            raise CoverageFailure(self.failures)
        if self.minimality_missing:
            raise MinimalityWitnessMissing(self.minimality_missing[0])

    def machine(self) -> str:
        return (f"covered={self.covered} failures={len(self.failures)} "
                f"minimality_ok={str(self.minimality_ok).lower()}")

    def text(self) -> str:
        box = " x ".join(f"[{lo},{hi}]" for lo, hi in self.core)
        lines = [f"core {box}: {self.covered} points covered, "
                 f"{len(self.failures)} uncovered"]
        for x in self.failures[:10]:
            lines.append(f"  uncovered: {x}")
        lines.append(f"minimality witnesses: {len(self.minimality_witnesses)} kept points, "
                     f"{len(self.minimality_missing)} missing")
        for m in self.minimality_missing[:10]:
            lines.append(f"  no witness for kept point {m}")
        lines.append(f"shells examined: {self.shells_used}")
        lines.append("PASS" if self.ok else "FAIL")
        return "\n".join(lines)


def box_points(core: Sequence[Tuple[int, int]]) -> Iterator[Point]:
    return itertools.product(*(range(lo, hi + 1) for lo, hi in core))


def _descend(g: _Greedy, t: Point, limit: int, cache) -> Optional[Point]:
    """A kept point ``m`` with ``t - m`` in the cone, searching downward from ``t``.

    Candidates are ordered by how far they sit below ``t``; beyond
    ``top + limit`` every candidate has left the shell cap, so the search ends.
    """
    if t in cache:
        return cache[t]
    r = g.q.residue(t)
    gamma_t = g.coords(t)
    top = max((abs(c) for c in gamma_t), default=0)
    found = None
    for depth in range(top + limit + 2):
        for delta in shell_vectors(len(gamma_t), depth):
            if any(c < 0 for c in delta):
                continue
            gm = tuple(a - b for a, b in zip(gamma_t, delta))
            if max((abs(c) for c in gm), default=0) > limit:
                continue
            m = g.point(r, gm)
            if g.is_kept(m, limit):
                found = m
                break
        if found is not None:
            break
    cache[t] = found
    return found


def verify_window(w: EPSet, wit: WitnessComplement,
                  core: Sequence[Tuple[int, int]],
                  cap: int = DEFAULT_SHELL_CAP) -> WindowReport:
    """Certify coverage and per-point minimality of the witness on a finite box."""
    core = tuple((int(lo), int(hi)) for lo, hi in core)
    g = _Greedy(w, wit.certificate)
    g.seed(wit.kept, wit.removed, wit.shells_processed)
    limit = wit.shells_processed + cap
    report = WindowReport(core)
    cache: Dict[Point, Optional[Point]] = {}
    n_res = g.n_res
    for x in box_points(core):
        if any(g.is_kept(sub(x, s), limit) for s in w.sporadic):
            report.covered += 1
            continue
        routes = [sub(x, b) for b in w.base]
        routes = [t for t in routes if g.q.residue(t) in n_res]
        if any(_descend(g, t, limit, cache) is not None for t in routes):
            report.covered += 1
            continue
        if routes:
            raise ShellCapExceeded(x, limit)
        report.failures.append(x)
    for m in box_points(core):
        if not g.is_kept(m, limit):
            continue
        x = g.sole_preimage_witness(m, limit)
        if x is None:
            report.minimality_missing.append(m)
        else:
            report.minimality_witnesses[m] = x
    report.shells_used = g.shells
    return report


# -- beams -----------------------------------------------------------------

@dataclass(frozen=True)
class BeamSet:
    """``finite_part`` plus rays ``{apex - t * direction : t in N}``."""

    basis: PeriodBasis
    finite_part: FrozenSet[Point] = frozenset()
    beams: Tuple[Tuple[Point, Point], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "finite_part", frozenset(as_point(p) for p in self.finite_part))
        beams = tuple((as_point(a), as_point(v)) for a, v in self.beams)
        object.__setattr__(self, "beams", beams)
        for apex, direction in beams:
            if len(apex) != self.basis.dim or len(direction) != self.basis.dim:
                raise MalformedBeam(f"beam {apex}, {direction} has wrong dimension")
            if any(c <= 0 for c in self.basis.rational_coords(direction)):
                raise MalformedBeam(
                    f"direction {direction} needs strictly positive cone coordinates")

    def points(self, length: int) -> FrozenSet[Point]:
        """Window of the set: finite part plus the first ``length`` points of each beam."""
        out = set(self.finite_part)
        for apex, direction in self.beams:
            for t in range(length):
                out.add(tuple(a - t * v for a, v in zip(apex, direction)))
        return frozenset(out)


def beam_residues(m: BeamSet) -> FrozenSet[Point]:
    """Residues visited by the beams (each infinitely often, going downward)."""
    q = quotient_structure(m.basis)
    hit = set()
    for apex, direction in m.beams:
        p = apex
        first = q.residue(p)
        while True:
            hit.add(q.residue(p))
            p = sub(p, direction)
            if q.residue(p) == first:
                break
    return frozenset(hit)


def beam_complement_check(m: BeamSet) -> bool:
    """Is ``m`` a complement of the cone ``N u_1 + ... + N u_d``?

    A fibre of ``m`` over a residue is unbounded below in every cone
    coordinate exactly when some beam passes through that residue; the finite
    part never matters.
    """
    q = quotient_structure(m.basis)
    return len(beam_residues(m)) == q.order


def drop_finite(m: BeamSet, f: Iterable[Sequence[int]]) -> BeamSet:
    """Remove finitely many points; beams are cut just below the lowest removed point."""
    f = {as_point(p) for p in f}
    if not f:
        return m
    finite = set(m.finite_part) - f
    beams = []
    for apex, direction in m.beams:
        hits = []
        for p in f:
            diff = sub(apex, p)
            ts = {Fraction(a, v) for a, v in zip(diff, direction) if v != 0}
            zero_ok = all(a == 0 for a, v in zip(diff, direction) if v == 0)
            if len(ts) == 1 and zero_ok:
                t = ts.pop()
                if t.denominator == 1 and t >= 0:
                    hits.append(int(t))
        if not hits:
            beams.append((apex, direction))
            continue
        cut = max(hits)
        for t in range(cut):
            p = tuple(a - t * v for a, v in zip(apex, direction))
            if p not in f:
                finite.add(p)
        new_apex = tuple(a - (cut + 1) * v for a, v in zip(apex, direction))
        beams.append((new_apex, direction))
    return BeamSet(m.basis, frozenset(finite), tuple(beams))
