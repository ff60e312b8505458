"""Exact and asymptotic counts of threshold functions on rectangular grids."""
from .asymptotics import ResidualRecord, SweepSpec, alpha_profile, fit_exponent, residual, sweep
from .counting import (
    CountResult,
    GridDims,
    ProofSums,
    f_moebius,
    f_naive,
    f_q,
    part1_identity_check,
    proof_sums_moebius,
    proof_sums_naive,
    t_count,
)
from .moebius import MoebiusTable, alpha, basel_partial, mertens_weighted, sieve_moebius
from .separability import HalfPlaneWitness, Labeling, count_by_enumeration, is_threshold, verify_witness

__version__ = "0.1.0"
