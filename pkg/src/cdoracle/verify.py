"""Exhaustive verification of MCZ decompositions and oracles."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .boolean import BooleanFunction, truth_table
from .circuit import MINUS_ONE, Circuit, DyadicPhase, validate
from .errors import ValidationError
from .sim import basis_batch, branch_batch, input_matrix
from .synthesis import synth_mcz

MAX_VERIFY_MCZ = 16
MAX_VERIFY_VARS = 20
MAX_LISTED_FAILURES = 64


@dataclass
class Failure:
    input: str
    expected: str
    actual: list[str]
    phase_residue: DyadicPhase | None
    ancilla_leaks: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        residue = None if self.phase_residue is None else [self.phase_residue.k, self.phase_residue.m]
        return {"input": self.input, "expected": self.expected, "actual": self.actual,
                "phase_residue": residue, "ancilla_leaks": self.ancilla_leaks}


@dataclass
class VerificationReport:
    name: str
    tier: str
    total_inputs: int
    failures: list[Failure] = field(default_factory=list)
    failure_count: int = 0
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def add(self, failure: Failure) -> None:
        self.failure_count += 1
        if len(self.failures) < MAX_LISTED_FAILURES:
            self.failures.append(failure)

    def merge(self, other: VerificationReport) -> VerificationReport:
        out = VerificationReport(f"{self.name}+{other.name}", self.tier if self.tier == other.tier
                                 else "mixed", self.total_inputs + other.total_inputs,
                                 details={**self.details, **other.details})
        for f in self.failures + other.failures:
            out.add(f)
        out.failure_count = self.failure_count + other.failure_count
        return out

    def to_dict(self) -> dict:
        return {"name": self.name, "tier": self.tier, "verdict": self.verdict,
                "total_inputs": self.total_inputs, "failure_count": self.failure_count,
                "failures": [f.to_dict() for f in self.failures], "details": self.details}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1) + "\n"


def _bitstring(col: np.ndarray) -> str:
    return "".join("1" if b else "0" for b in col)


def verify_mcz(controls: int, circuit: Circuit | None = None) -> VerificationReport:
    """All main-wire basis inputs: bits unchanged, ancillas 0, phase pi iff all ones.

    ``circuit`` substitutes a (possibly mutated) decomposition for ``synth_mcz``.
    """
    if not 1 <= controls <= MAX_VERIFY_MCZ:
        raise ValidationError(f"controls must be in [1, {MAX_VERIFY_MCZ}], got {controls}")
    c = synth_mcz(controls) if circuit is None else circuit
    q = controls + 1
    main = list(range(q))
    inputs = input_matrix(c.width, main)
    out, phase, m = basis_batch(c, inputs)
    expected = np.zeros(inputs.shape[1], dtype=np.int64)
    expected[-1] = MINUS_ONE.numerator_at(m)

    report = VerificationReport(c.name or f"mcz{controls}", "phase", inputs.shape[1],
                                details={"rotations": sum(g.kind == "P" for g in c.gates)})
    anc = c.ancilla_wires
    bits_ok = np.all(out == inputs, axis=0)
    bad = np.flatnonzero(~bits_ok | (phase != expected))
    for v in bad:
        report.add(Failure(
            input=_bitstring(inputs[main, v]),
            expected=_bitstring(inputs[main, v]),
            actual=[_bitstring(out[main, v])],
            phase_residue=DyadicPhase(int(phase[v] - expected[v]), m),
            ancilla_leaks=[w for w in anc if out[w, v]],
        ))
    return report


def oracle_wires(c: Circuit, f: BooleanFunction) -> tuple[list[int], int]:
    inputs, targets = c.input_wires, c.target_wires
    if not inputs and not targets:
        inputs, targets = list(range(f.n)), [f.n]
    if len(inputs) != f.n or len(targets) != 1 or c.width < f.n + 1:
        raise ValidationError(
            f"circuit exposes {len(inputs)} inputs and {len(targets)} targets; "
            f"function needs {f.n} inputs and 1 target")
    return inputs, targets[0]


def verify_oracle(c: Circuit, f: BooleanFunction) -> VerificationReport:
    """Check ``|x>|y>|0> -> |x>|y ^ f(x)>|0>`` with amplitude exactly 1 on every basis input.

    Circuits without H are run through the exact basis engine ("macro" tier
    when purely classical, "phase" tier otherwise); circuits with H go through
    the exact branching engine ("phase" tier).
    """
    if f.n > MAX_VERIFY_VARS:
        raise ValidationError(f"exhaustive verification capped at {MAX_VERIFY_VARS} variables")
    problems = validate(c)
    if problems:
        raise ValidationError("invalid circuit: " + "; ".join(problems[:5]))
    inputs, target = oracle_wires(c, f)
    io = [*inputs, target]
    anc = c.ancilla_wires
    bits_in = input_matrix(c.width, io)
    total = bits_in.shape[1]
    table = truth_table(f)
    xs = np.arange(total) >> 1
    expected = bits_in.copy()
    expected[target] ^= table[xs].astype(bool)

    kinds = {g.kind for g in c.gates}
    if "H" not in kinds:
        tier = "macro" if kinds <= {"X", "CNOT", "FANOUT", "PARITY", "MCX"} else "phase"
        report = VerificationReport(c.name or "oracle", tier, total)
        out, phase, m = basis_batch(c, bits_in)
        bad = np.flatnonzero(~np.all(out == expected, axis=0) | (phase != 0))
        for v in bad:
            report.add(Failure(_bitstring(bits_in[io, v]), _bitstring(expected[io, v]),
                               [_bitstring(out[io, v])], DyadicPhase(int(phase[v]), m),
                               [w for w in anc if out[w, v]]))
        return report

    report = VerificationReport(c.name or "oracle", "phase", total)
    st = branch_batch(c, bits_in)
    unit = st.unit()
    order = np.argsort(st.owner, kind="stable")
    bounds = np.searchsorted(st.owner[order], np.arange(total + 1))
    for v in range(total):
        rows = order[bounds[v]:bounds[v + 1]]
        if (len(rows) == 1 and np.array_equal(st.bits[:, rows[0]], expected[:, v])
                and np.array_equal(st.amp[rows[0]], unit)):
            continue
        residue = st.phase_of(rows[0]) if len(rows) == 1 else None
        leaks = sorted({w for r in rows for w in anc if st.bits[w, r]})
        report.add(Failure(_bitstring(bits_in[io, v]), _bitstring(expected[io, v]),
                           [_bitstring(st.bits[io, r]) for r in rows], residue, leaks))
    return report
