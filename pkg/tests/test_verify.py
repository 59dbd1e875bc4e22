import json

import pytest
from hypothesis import given, settings

from cdoracle.boolean import F4, BooleanFunction, disjunction_esop, truth_table
from cdoracle.circuit import Circuit, DyadicPhase, Gate
from cdoracle.errors import ValidationError
from cdoracle.synthesis import lower, synth_disjunction, synth_mcz, synth_oracle
from cdoracle.verify import VerificationReport, verify_mcz, verify_oracle

from conftest import esop_functions


def flip_phase(c, which=-1):
    gates = list(c.gates)
    idx = [i for i, g in enumerate(gates) if g.kind == "P"][which]
    gates[idx] = Gate.p(gates[idx].target, -gates[idx].phase)
    return Circuit(c.width, tuple(gates), c.layout, c.name)


def drop(c, index):
    gates = list(c.gates)
    del gates[index]
    return Circuit(c.width, tuple(gates), c.layout, c.name)


class TestVerifyMcz:
    def test_two_controls(self):
        r = verify_mcz(2)
        assert r.passed and r.total_inputs == 8

    def test_five_controls(self):
        r = verify_mcz(5)
        assert r.passed and r.total_inputs == 64
        assert r.details["rotations"] == 63

    def test_flipped_sign_fails_on_all_ones(self):
        r = verify_mcz(2, flip_phase(synth_mcz(2)))
        assert not r.passed
        by_input = {f.input: f for f in r.failures}
        assert not by_input["111"].phase_residue.is_zero()

    def test_dropped_rotation(self):
        c = synth_mcz(3)
        r = verify_mcz(3, drop(c, next(i for i, g in enumerate(c.gates) if g.kind == "P")))
        assert not r.passed

    def test_dropped_uncompute_leaks_ancilla(self):
        c = synth_mcz(2)
        r = verify_mcz(2, drop(c, len(c.gates) - 1))
        assert not r.passed
        assert any(f.ancilla_leaks for f in r.failures)

    def test_range(self):
        with pytest.raises(ValidationError):
            verify_mcz(17)


class TestVerifyOracle:
    def test_f4(self):
        r = verify_oracle(synth_oracle(F4), F4)
        assert r.passed and r.total_inputs == 32 and r.tier == "macro"

    def test_f4_lowered(self):
        r = verify_oracle(lower(synth_oracle(F4)), F4)
        assert r.passed and r.tier == "phase"

    def test_disjunction_against_esop(self):
        f = disjunction_esop(3)
        assert len(f.clauses) == 7
        assert truth_table(f).tolist() == [0] + [1] * 7
        assert verify_oracle(synth_disjunction(3), f).passed
        assert verify_oracle(lower(synth_disjunction(3)), f).passed

    def test_identity_vs_constant_zero(self):
        f = BooleanFunction(3)
        assert verify_oracle(synth_oracle(f), f).passed

    def test_wrong_function_lists_failures(self):
        g = BooleanFunction(4, F4.clauses[:-1])
        r = verify_oracle(synth_oracle(F4), g)
        assert not r.passed
        # dropping x3 & x4 changes the output wherever both are 1
        assert r.failure_count == 8
        assert all(f.input[2:4] == "11" for f in r.failures)

    def test_dropped_uncompute_mcx(self):
        c = synth_oracle(F4)
        last_mcx = max(i for i, g in enumerate(c.gates) if g.kind == "MCX")
        r = verify_oracle(drop(c, last_mcx), F4)
        assert not r.passed and any(f.ancilla_leaks for f in r.failures)

    def test_lowered_flipped_sign(self):
        r = verify_oracle(flip_phase(lower(synth_oracle(F4))), F4)
        assert not r.passed

    def test_lowered_dropped_rotation(self):
        c = lower(synth_oracle(F4))
        r = verify_oracle(drop(c, next(i for i, g in enumerate(c.gates) if g.kind == "P")), F4)
        assert not r.passed

    def test_width_mismatch(self):
        with pytest.raises(ValidationError):
            verify_oracle(synth_oracle(F4), BooleanFunction(3, ((1,),)))

    def test_invalid_circuit(self):
        with pytest.raises(ValidationError):
            verify_oracle(Circuit(2, (Gate.cnot(0, 0),)), BooleanFunction(1))

    @settings(max_examples=25, deadline=None)
    @given(esop_functions())
    def test_random_lowered(self, f):
        c = synth_oracle(f)
        assert verify_oracle(c, f).passed
        assert verify_oracle(lower(c), f).passed


class TestReport:
    def test_json(self):
        r = verify_mcz(2, flip_phase(synth_mcz(2)))
        data = json.loads(r.to_json())
        assert data["verdict"] == "fail"
        assert data["failure_count"] == len(data["failures"])
        assert all(isinstance(x, int) for f in data["failures"] for x in f["phase_residue"])

    def test_merge_is_associative_on_counts(self):
        a, b, c = verify_mcz(1), verify_mcz(2, flip_phase(synth_mcz(2))), verify_mcz(3)
        left, right = a.merge(b).merge(c), a.merge(b.merge(c))
        assert left.total_inputs == right.total_inputs == 4 + 8 + 16
        assert left.failure_count == right.failure_count == b.failure_count
        assert left.verdict == right.verdict == "fail"

    def test_empty_report_passes(self):
        assert VerificationReport("x", "macro", 0).verdict == "pass"
