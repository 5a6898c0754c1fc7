"""Existence of minimal complements for eventually periodic sets.

The necessary and the sufficient criteria are congruences modulo the period
lattice, so both reduce to subset searches in the finite quotient.  When the
set has a single sporadic point outside the base residues the two criteria
coincide and the answer is exact; otherwise a gap between them is reported
as ``UNKNOWN``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import FrozenSet, Optional, Tuple

from .epsets import EPSet, ResidueProfile, canonicalize, residue_profile
from .errors import EmptyW1
from .finitegrp import PairCertificate, pair_minimal_complement, search_private_cover
from .zlattice import PeriodBasis, Point, quotient_structure


class Outcome(enum.Enum):
    EXISTS = "exists"
    NOT_EXISTS = "not_exists"
    UNKNOWN = "unknown"


class Reason(enum.Enum):
    PERIODIC = "periodic"
    EMPTY_W1 = "empty_w1"
    # single sporadic point outside the base residues and no certificate
    NO_CERTIFICATE = "no_certificate"
    NECESSARY_FAILS = "necessary_fails"


@dataclass(frozen=True)
class Decision:
    outcome: Outcome
    canonical: EPSet
    profile: ResidueProfile
    certificate: Optional[PairCertificate] = None
    reason: Optional[Reason] = None
    necessary_certificate: Optional[FrozenSet[Point]] = None

    @property
    def exists(self) -> bool:
        return self.outcome is Outcome.EXISTS


def necessary_condition(profile: ResidueProfile,
                        cap: Optional[int] = None) -> Optional[FrozenSet[Point]]:
    """First residue set N with N + (Q u W1) = G and private sums n + w avoiding N + Q.

    ``None`` certifies that no minimal complement exists.
    """
    if not profile.W1:
        return None
    g = profile.group
    q1 = sorted(profile.W1_residues)
    union = sorted(profile.Q | profile.W1_residues)
    found = search_private_cover(g, q1, union, sorted(profile.Q), cap)
    return None if found is None else frozenset(found)


def sufficient_condition(profile: ResidueProfile,
                         cap: Optional[int] = None) -> Optional[PairCertificate]:
    if not profile.W1:
        raise EmptyW1("no sporadic point lies outside the base residues")
    return pair_minimal_complement(profile.W1_subset, profile.Q_subset, cap=cap)


def decide(w: EPSet, cap: Optional[int] = None) -> Decision:
    cw = w if w.canonical else canonicalize(w)
    prof = residue_profile(cw)
    if not prof.W1:
        reason = Reason.PERIODIC if prof.is_periodic else Reason.EMPTY_W1
        return Decision(Outcome.NOT_EXISTS, cw, prof, reason=reason)
    cert = sufficient_condition(prof, cap)
    if cert is not None:
        return Decision(Outcome.EXISTS, cw, prof, certificate=cert)
    if len(prof.W1) == 1:
        return Decision(Outcome.NOT_EXISTS, cw, prof, reason=Reason.NO_CERTIFICATE)
    nec = necessary_condition(prof, cap)
    if nec is None:
        return Decision(Outcome.NOT_EXISTS, cw, prof, reason=Reason.NECESSARY_FAILS)
    return Decision(Outcome.UNKNOWN, cw, prof, necessary_certificate=nec)


@dataclass(frozen=True)
class LatticeCertificate:
    """The period lattice itself is a minimal complement of the set."""

    basis: PeriodBasis
    residue: Point
    point: Point


def lattice_fast_path(w: EPSet) -> Optional[LatticeCertificate]:
    """Surjective projection with a singleton fibre makes L a minimal complement."""
    q = w.quotient
    base_res = {q.residue(b) for b in w.base}
    fibres = {}
    for s in w.sporadic:
        fibres.setdefault(q.residue(s), []).append(s)
    hit = base_res | set(fibres)
    if len(hit) != q.order:
        return None
    for r in sorted(fibres):
        if r not in base_res and len(fibres[r]) == 1:
            return LatticeCertificate(w.basis, r, fibres[r][0])
    return None


def sublattice_minimal_complement(basis: PeriodBasis) -> Tuple[Point, ...]:
    """One representative per coset of a full-rank sublattice."""
    return quotient_structure(basis).reps
