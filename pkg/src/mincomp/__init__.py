"""Minimal additive complements in Z^d and in finite abelian groups."""

from .decide import Decision, Outcome, Reason, decide, lattice_fast_path, sublattice_minimal_complement
from .epsets import EPSet, ResidueProfile, canonicalize, cone_saturates, format_epset, member, parse_epset, residue_profile
from .finitegrp import (
    FiniteAbelianGroup,
    GroupSubset,
    PairCertificate,
    extract_minimal,
    is_minimal_complement,
    minimal_r_net,
    pair_minimal_complement,
    product_minimal,
)
from .witness import BeamSet, WitnessComplement, beam_complement_check, build_witness, drop_finite, verify_window
from .zlattice import PeriodBasis, QuotientStructure, project, quotient_structure, smith_normal_form

__all__ = [
    "BeamSet", "Decision", "EPSet", "FiniteAbelianGroup", "GroupSubset", "Outcome",
    "PairCertificate", "PeriodBasis", "QuotientStructure", "Reason", "ResidueProfile",
    "WitnessComplement", "beam_complement_check", "build_witness", "canonicalize",
    "cone_saturates", "decide", "drop_finite", "extract_minimal", "format_epset",
    "is_minimal_complement", "lattice_fast_path", "member", "minimal_r_net",
    "pair_minimal_complement", "parse_epset", "product_minimal", "project",
    "quotient_structure", "residue_profile", "smith_normal_form",
    "sublattice_minimal_complement", "verify_window",
]
