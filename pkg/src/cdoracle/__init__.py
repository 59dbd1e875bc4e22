"""Constant-depth quantum oracles for ESOP boolean functions, with exact verifiers."""

from .analysis import CostModel, SizeEstimate, depth, gate_counts, rotation_count, size_estimate
from .boolean import BooleanFunction, F4, conjunction, disjunction_esop, pairwise_xor, parse_esop
from .circuit import Circuit, DyadicPhase, Gate, WireRange, validate
from .sim import branch_batch, basis_batch, phase_sim, statevector_sim
from .synthesis import lower, synth_disjunction, synth_mcx, synth_mcz, synth_oracle
from .verify import VerificationReport, verify_mcz, verify_oracle

__all__ = [
    "BooleanFunction", "Circuit", "CostModel", "DyadicPhase", "F4", "Gate", "SizeEstimate",
    "VerificationReport", "WireRange", "basis_batch", "branch_batch", "conjunction", "depth",
    "disjunction_esop", "gate_counts", "lower", "pairwise_xor", "parse_esop", "phase_sim",
    "rotation_count", "size_estimate", "statevector_sim", "synth_disjunction", "synth_mcx",
    "synth_mcz", "synth_oracle", "validate", "verify_mcz", "verify_oracle",
]
