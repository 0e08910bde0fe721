"""Finite-dimensional approximate representations: defects, rounding, lifts."""
from __future__ import annotations

from .core import (
    DIM_CAP, ApproxRep, DefectReport, FeasibilityError, RepError, defect,
    direct_sum, dist, evaluate, hs_norm, perturb, random_unitary, read_rep,
    rep_from_json, rep_to_json, tensor, trivial_rep, write_rep,
)
from .stability import (
    C0, C1, abelian_constant, nearest_involution, round_commuting,
    round_to_involution, split_on_j, stabilize_abelian,
)
from .lifts import (
    COMPILE_CONSTANT, GADGET_CONSTANT, lift_compile, lift_ehlpc, lift_gadget,
    lift_nice,
)
from .amplify import amplify, normalized_trace, tensor_power_exponent
from .homs import enumerate_homs
from .models import pauli_magic_rep, random_pauli_lpc, solution_rep

__all__ = [
    "DIM_CAP", "ApproxRep", "DefectReport", "FeasibilityError", "RepError", "defect",
    "direct_sum", "dist", "evaluate", "hs_norm", "perturb", "random_unitary", "read_rep",
    "rep_from_json", "rep_to_json", "tensor", "trivial_rep", "write_rep",
    "C0", "C1", "abelian_constant", "nearest_involution", "round_commuting",
    "round_to_involution", "split_on_j", "stabilize_abelian",
    "COMPILE_CONSTANT", "GADGET_CONSTANT", "lift_compile", "lift_ehlpc", "lift_gadget",
    "lift_nice", "amplify", "normalized_trace", "tensor_power_exponent",
    "enumerate_homs", "pauli_magic_rep", "random_pauli_lpc", "solution_rep",
]
