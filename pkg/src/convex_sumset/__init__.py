"""Exact construction of a thin additive basis whose sumset contains a long convex sequence."""

from .construction import Basis, Block, build_basis, build_block, gap, x_value, y_value
from .oracle import lcs_dp, lcs_exhaustive, sumset
from .params import Params, ScaledInt, cmp, make_params
from .splice import Chain, SplicePoint, assemble, find_nesting, splice_at
from .verify import (AuditReport, DiffStats, Measurement, audit_bounds, check_witnesses,
                     diff_popularity, is_convex, measure)

__all__ = [
    "AuditReport", "Basis", "Block", "Chain", "DiffStats", "Measurement", "Params",
    "ScaledInt", "SplicePoint", "assemble", "audit_bounds", "build_basis", "build_block",
    "check_witnesses", "cmp", "diff_popularity", "find_nesting", "gap", "is_convex",
    "lcs_dp", "lcs_exhaustive", "make_params", "measure", "splice_at", "sumset",
    "x_value", "y_value",
]
