"""Depth, width, gate counts, and closed-form size prediction."""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass

from .boolean import BooleanFunction
from .circuit import Circuit
from .errors import ModeError

SIZE_CAP = 1 << 62


class CostModel(enum.Enum):
    """MACRO: every gate, macro or not, is one step. EXPANDED: primitive circuits only."""

    MACRO = "macro"
    EXPANDED = "expanded"


def depth(c: Circuit, model: CostModel = CostModel.MACRO) -> int:
    """Greedy earliest-timestep schedule length.

    A gate is placed one step after the latest gate that shares a wire with it,
    so two gates share a timestep iff nothing orders them through a wire.
    """
    if model is CostModel.EXPANDED:
        for i, g in enumerate(c.gates):
            if g.is_macro:
                raise ModeError(f"EXPANDED depth is undefined on macro gate {g.kind} at index {i}")
    ready = [0] * c.width
    total = 0
    for g in c.gates:
        wires = g.wires
        t = 1 + max((ready[w] for w in wires), default=0)
        for w in wires:
            ready[w] = t
        total = max(total, t)
    return total


def width(c: Circuit) -> int:
    return c.width


def gate_counts(c: Circuit) -> dict[str, int]:
    """Gate count per kind; P gates are also tallied per phase as ``P[k/2^m]``."""
    counts = Counter(g.kind for g in c.gates)
    phases = Counter(g.phase for g in c.gates if g.kind == "P")
    out = dict(sorted(counts.items()))
    for phase in sorted(phases):
        out[f"P[{phase}]"] = phases[phase]
    return out


def rotation_count(c: Circuit) -> int:
    return sum(1 for g in c.gates if g.kind == "P")


@dataclass(frozen=True)
class SizeEstimate:
    width: int
    rotation_count: int
    ancilla_count: int


def block_width(clause_size: int) -> int:
    """Wires of one clause block: copies, block target, and the MCZ parity ancillas."""
    return (1 << (clause_size + 1)) - 1


def size_estimate(f: BooleanFunction) -> SizeEstimate:
    """Predict the oracle's size without building it.

    Clauses of size 0 and 1 compile to X and CNOT, so only clauses of size
    two or more contribute rotations (one MCZ core to compute, one to undo).
    """
    ancillas = 0
    rotations = 0
    for clause in f.clauses:
        if len(clause) + 1 >= 62:
            raise OverflowError("size estimate exceeds 2^62")
        ancillas += block_width(len(clause))
        if len(clause) >= 2:
            rotations += 2 * block_width(len(clause))
        if ancillas > SIZE_CAP or rotations > SIZE_CAP:
            raise OverflowError("size estimate exceeds 2^62")
    return SizeEstimate(width=f.n + 1 + ancillas, rotation_count=rotations, ancilla_count=ancillas)
