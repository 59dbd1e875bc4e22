"""Exact and dense simulators.

``phase_sim`` and ``macro_sim`` follow one basis state through a circuit in
pure Python. ``statevector_sim`` is a dense complex simulator used as an
independent cross-check on small widths. The ``*_batch`` engines run many
basis inputs at once with numpy and are what the verifiers use:

* ``basis_batch`` handles every gate except H; phases are integer numerators
  over a common power-of-two denominator, so results are exact.
* ``branch_batch`` also handles H. Amplitudes are integer vectors in the
  basis ``1, z, ..., z^(L-1)`` of the cyclotomic integers, ``z = exp(i*pi/L)``
  and ``z^L = -1``, with a shared ``1/sqrt(2)^h`` scale. Branches are merged
  after each H, so interference is computed exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .circuit import MINUS_ONE, Circuit, DyadicPhase, Gate
from .errors import FragmentError, ResourceError, ValidationError

DENSE_MAX_WIDTH = 14
DIAGONAL_KINDS = frozenset({"X", "CNOT", "FANOUT", "PARITY", "P"})
CLASSICAL_KINDS = frozenset({"X", "CNOT", "FANOUT", "PARITY", "MCX"})


@dataclass(frozen=True)
class BasisState:
    bits: tuple[int, ...]
    phase: DyadicPhase = DyadicPhase()

    @classmethod
    def zeros(cls, width: int) -> BasisState:
        return cls((0,) * width)

    @classmethod
    def from_string(cls, s: str) -> BasisState:
        return cls(tuple(int(ch) for ch in s))

    def __str__(self) -> str:
        return "".join(map(str, self.bits))


def _apply_classical(g: Gate, bits: list[int]) -> None:
    k = g.kind
    if k == "X":
        bits[g.target] ^= 1
    elif k == "CNOT":
        bits[g.target] ^= bits[g.controls[0]]
    elif k == "FANOUT":
        s = bits[g.controls[0]]
        for t in g.targets:
            bits[t] ^= s
    elif k == "PARITY":
        acc = 0
        for s in g.controls:
            acc ^= bits[s]
        bits[g.target] ^= acc
    elif k == "MCX":
        bits[g.target] ^= int(all(bits[s] for s in g.controls))


def phase_sim(c: Circuit, state: BasisState) -> BasisState:
    if len(state.bits) != c.width:
        raise ValidationError(f"state has {len(state.bits)} bits, circuit width is {c.width}")
    bits = list(state.bits)
    phase = state.phase
    for i, g in enumerate(c.gates):
        if g.kind not in DIAGONAL_KINDS:
            raise FragmentError(f"phase_sim cannot simulate {g.kind} at gate {i}", i)
        if g.kind == "P":
            if bits[g.target]:
                phase = phase + g.phase
        else:
            _apply_classical(g, bits)
    return BasisState(tuple(bits), phase)


def macro_sim(c: Circuit, bits: Sequence[int]) -> list[int]:
    if len(bits) != c.width:
        raise ValidationError(f"got {len(bits)} bits, circuit width is {c.width}")
    out = [int(b) for b in bits]
    for i, g in enumerate(c.gates):
        if g.kind not in CLASSICAL_KINDS:
            raise FragmentError(f"macro_sim cannot simulate {g.kind} at gate {i}", i)
        _apply_classical(g, out)
    return out


# -- dense ------------------------------------------------------------------

def statevector_sim(c: Circuit, state: np.ndarray) -> np.ndarray:
    """Apply ``c`` to a dense amplitude vector; wire 0 is the most significant index bit."""
    w = c.width
    if w > DENSE_MAX_WIDTH:
        raise ResourceError(f"dense simulation capped at {DENSE_MAX_WIDTH} wires, got {w}")
    psi = np.asarray(state, dtype=complex)
    if psi.shape != (1 << w,):
        raise ValidationError(f"expected {1 << w} amplitudes, got shape {psi.shape}")
    if abs(np.linalg.norm(psi) - 1.0) > 1e-9:
        raise ValidationError("input state is not normalized")

    idx = np.arange(1 << w)

    def bit(wire: int) -> np.ndarray:
        return (idx >> (w - 1 - wire)) & 1

    def mask(wires: Sequence[int]) -> int:
        return sum(1 << (w - 1 - t) for t in wires)

    for g in c.gates:
        k = g.kind
        if k == "H":
            b = bit(g.target).astype(bool)
            lo, hi = idx[~b], idx[b]
            a0, a1 = psi[lo], psi[hi]
            psi = psi.copy()
            psi[lo] = (a0 + a1) / math.sqrt(2)
            psi[hi] = (a0 - a1) / math.sqrt(2)
        elif k == "P":
            psi = psi * np.where(bit(g.target) == 1, g.phase.to_complex(), 1.0)
        elif k == "MCZ":
            on = np.all([bit(t) for t in g.targets], axis=0)
            psi = psi * np.where(on, -1.0, 1.0)
        else:
            if k == "X":
                cond, flip = np.ones_like(idx), mask(g.targets)
            elif k in ("CNOT", "FANOUT"):
                cond, flip = bit(g.controls[0]), mask(g.targets)
            elif k == "PARITY":
                cond = np.bitwise_xor.reduce([bit(s) for s in g.controls], axis=0)
                flip = mask(g.targets)
            elif k == "MCX":
                cond = np.all([bit(s) for s in g.controls], axis=0).astype(int)
                flip = mask(g.targets)
            else:
                raise FragmentError(f"unknown gate kind {k}")
            dest = idx ^ (cond * flip)
            out = np.empty_like(psi)
            out[dest] = psi
            psi = out
    return psi


def basis_vector(bits: Sequence[int]) -> np.ndarray:
    w = len(bits)
    v = np.zeros(1 << w, dtype=complex)
    v[int("".join(map(str, bits)) or "0", 2)] = 1.0
    return v


# -- batched exact engines --------------------------------------------------

def max_denominator(c: Circuit) -> int:
    return max((g.phase.m for g in c.gates if g.kind == "P"), default=0)


def _classical_batch(g: Gate, bits: np.ndarray) -> None:
    k = g.kind
    if k == "X":
        bits[g.target] ^= True
    elif k == "CNOT":
        bits[g.target] ^= bits[g.controls[0]]
    elif k == "FANOUT":
        bits[list(g.targets)] ^= bits[g.controls[0]]
    elif k == "PARITY":
        bits[g.target] ^= np.bitwise_xor.reduce(bits[list(g.controls)], axis=0)
    elif k == "MCX":
        bits[g.target] ^= np.logical_and.reduce(bits[list(g.controls)], axis=0)


def basis_batch(c: Circuit, bits: np.ndarray) -> tuple[np.ndarray, np.ndarray, int]:
    """Run every column of ``bits`` (shape width x inputs) through an H-free circuit.

    Returns output bits, phase numerators modulo ``2^(m+1)``, and ``m``.
    """
    bits = np.array(bits, dtype=bool, copy=True)
    m = max_denominator(c)
    period = 1 << (m + 1)
    phase = np.zeros(bits.shape[1], dtype=np.int64)
    for i, g in enumerate(c.gates):
        if g.kind == "H":
            raise FragmentError(f"basis_batch cannot simulate H at gate {i}", i)
        if g.kind == "P":
            phase += bits[g.target] * g.phase.numerator_at(m)
        elif g.kind == "MCZ":
            phase += np.logical_and.reduce(bits[list(g.targets)], axis=0) * MINUS_ONE.numerator_at(m)
        else:
            _classical_batch(g, bits)
    return bits, phase % period, m


@dataclass
class BranchState:
    owner: np.ndarray   # input index of each branch row
    bits: np.ndarray    # width x rows
    amp: np.ndarray     # rows x L cyclotomic coefficients
    halvings: int
    m: int

    @property
    def L(self) -> int:
        return 1 << self.m

    def unit(self) -> np.ndarray:
        """Coefficients of ``sqrt(2)^halvings``, i.e. an amplitude of exactly 1."""
        u = np.zeros(self.L, dtype=np.int64)
        h = self.halvings
        if h % 2 == 0:
            u[0] = 1 << (h // 2)
        else:
            # sqrt(2) = z^(L/4) - z^(3L/4)
            u[self.L // 4] = 1 << (h // 2)
            u[3 * self.L // 4] = -(1 << (h // 2))
        return u

    def phase_of(self, row: int) -> DyadicPhase | None:
        """The phase if row ``row`` has unit modulus with a dyadic phase, else None."""
        u = self.unit()
        a = self.amp[row]
        for j in range(2 * self.L):
            if np.array_equal(rotate(u[None, :], j)[0], a):
                return DyadicPhase(j, self.m)
        return None


def rotate(amp: np.ndarray, j: int) -> np.ndarray:
    """Multiply each row by ``z^j``."""
    L = amp.shape[1]
    j %= 2 * L
    sign = 1
    if j >= L:
        sign, j = -1, j - L
    if j == 0:
        return sign * amp
    out = np.empty_like(amp)
    out[:, j:] = amp[:, : L - j]
    out[:, :j] = -amp[:, L - j:]
    return sign * out


def _merge(st: BranchState) -> BranchState:
    owner_bytes = st.owner.astype(">i8").view(np.uint8).reshape(-1, 8)
    keys = np.concatenate([owner_bytes, np.packbits(st.bits, axis=0).T], axis=1)
    _, first, inverse = np.unique(keys, axis=0, return_index=True, return_inverse=True)
    inverse = inverse.reshape(-1)
    amp = np.zeros((len(first), st.L), dtype=np.int64)
    np.add.at(amp, inverse, st.amp)
    keep = amp.any(axis=1)
    owner, bits, amp = st.owner[first][keep], st.bits[:, first][:, keep], amp[keep]
    h = st.halvings
    while h >= 2 and amp.size and not np.any(amp & 1):
        amp //= 2
        h -= 2
    return BranchState(owner, bits, amp, h, st.m)


def branch_batch(c: Circuit, bits: np.ndarray) -> BranchState:
    """Exact simulation of any circuit on the basis inputs given as columns of ``bits``."""
    # m >= 2 so that sqrt(2) has integer coefficients
    m = max(2, max_denominator(c))
    L = 1 << m
    n_in = bits.shape[1]
    amp = np.zeros((n_in, L), dtype=np.int64)
    amp[:, 0] = 1
    st = BranchState(np.arange(n_in), np.array(bits, dtype=bool, copy=True), amp, 0, m)
    for g in c.gates:
        if g.kind == "H":
            w = g.target
            rows = st.bits.shape[1]
            old = st.bits[w]
            new_bits = np.concatenate([st.bits, st.bits], axis=1)
            new_bits[w, :rows] = False
            new_bits[w, rows:] = True
            flipped = np.where(old[:, None], -st.amp, st.amp)
            st = _merge(BranchState(np.concatenate([st.owner, st.owner]), new_bits,
                                    np.concatenate([st.amp, flipped]), st.halvings + 1, m))
        elif g.kind == "P":
            on = st.bits[g.target]
            if on.any():
                st.amp[on] = rotate(st.amp[on], g.phase.numerator_at(m))
        elif g.kind == "MCZ":
            on = np.logical_and.reduce(st.bits[list(g.targets)], axis=0)
            st.amp[on] = -st.amp[on]
        else:
            _classical_batch(g, st.bits)
    return st


def int_to_bits(value: int, count: int) -> list[int]:
    """Big-endian bit list: the first entry is the most significant bit."""
    return [(value >> (count - 1 - i)) & 1 for i in range(count)]


def input_matrix(width: int, wires: Sequence[int], count: int | None = None) -> np.ndarray:
    """Bits for every assignment to ``wires`` (others 0), one column per assignment.

    Column ``v`` sets ``wires[0]`` to the most significant bit of ``v``.
    """
    n = len(wires)
    count = (1 << n) if count is None else count
    vals = np.arange(count, dtype=np.int64)
    bits = np.zeros((width, count), dtype=bool)
    for i, w in enumerate(wires):
        bits[w] = (vals >> (n - 1 - i)) & 1
    return bits
