"""One test per acceptance criterion; each records a PASS/FAIL line for the run summary."""

import contextlib
import itertools
import math
import time

import numpy as np

from cdoracle import boolean
from cdoracle.analysis import CostModel, depth, rotation_count, size_estimate
from cdoracle.boolean import F4, conjunction, disjunction_esop, pairwise_xor, truth_table
from cdoracle.circuit import Circuit, DyadicPhase, Gate
from cdoracle.corpus import CorpusConfig, corpus
from cdoracle.sim import BasisState, basis_vector, phase_sim, statevector_sim
from cdoracle.synthesis import lower, synth_disjunction, synth_mcx, synth_mcz, synth_oracle
from cdoracle.verify import verify_mcz, verify_oracle

from conftest import ACCEPTANCE_LINES


@contextlib.contextmanager
def criterion(name):
    info = {}
    start = time.perf_counter()
    try:
        yield info
    except BaseException as exc:
        line = f"FAIL  {name}: {type(exc).__name__}: {exc}".splitlines()[0]
        ACCEPTANCE_LINES.append(line)
        print(line)
        raise
    detail = ", ".join(f"{k}={v}" for k, v in info.items())
    line = f"PASS  {name} ({detail}, {time.perf_counter() - start:.2f}s)"
    ACCEPTANCE_LINES.append(line)
    print(line)


def test_and_xor_identity():
    with criterion("AND/XOR signed parity identity, n in [1,16], < 10 s") as info:
        start = time.perf_counter()
        bad = [n for n in range(1, 17) if not boolean.check_and_xor_identity(n)]
        elapsed = time.perf_counter() - start
        assert not bad, f"identity fails for n={bad}"
        assert elapsed < 10, f"took {elapsed:.1f}s"
        info["assignments_at_16"] = 1 << 16


def test_binomial_identities():
    with criterion("alternating binomial sum = 1 and Pascal recurrence, n in [1,60]") as info:
        bad_alt = [n for n in range(1, 61) if boolean.alternating_binomial_sum(n) != 1]
        bad_pascal = [(n, k) for n in range(1, 61) for k in range(1, n + 2)
                      if not boolean.pascal_holds(n, k)]
        # independent check of the alternating sum: (1 - 1)^n = 0
        assert all(sum((-1) ** i * math.comb(n, i) for i in range(n + 1)) == 0
                   for n in range(1, 61))
        assert not bad_alt and not bad_pascal
        info["pascal_cases"] = sum(n + 1 for n in range(1, 61))


def test_mcz_counts_and_exactness():
    with criterion("MCZ: 2^(c+1)-1 rotations, 2^(c+1)-c-2 ancillas (c<=10); exact for c<=12, < 30 s") as info:
        for c in range(1, 11):
            circ = synth_mcz(c)
            assert rotation_count(circ) == 2 ** (c + 1) - 1, c
            assert len(circ.ancilla_wires) == 2 ** (c + 1) - c - 2, c
        start = time.perf_counter()
        inputs = 0
        for c in range(1, 13):
            report = verify_mcz(c)
            assert report.passed, (c, report.failures[:2])
            inputs += report.total_inputs
        elapsed = time.perf_counter() - start
        assert elapsed < 30, f"took {elapsed:.1f}s"
        assert inputs == sum(2 ** (c + 1) for c in range(1, 13))
        info["inputs_checked"] = inputs


def test_oracle_depth():
    with criterion("oracle macro depth 5 (f4 + 200 corpus); lowered single-clause depth constant for |K| in [2,8]") as info:
        assert depth(synth_oracle(F4), CostModel.MACRO) == 5
        depths = {depth(synth_oracle(f), CostModel.MACRO) for f in corpus(CorpusConfig())}
        assert depths == {5}, depths
        expanded = {k: depth(lower(synth_oracle(conjunction(k))), CostModel.EXPANDED)
                    for k in range(2, 9)}
        assert len(set(expanded.values())) == 1, expanded
        info["expanded_depth"] = expanded[2]


def _flip_sign(c):
    gates = list(c.gates)
    i = next(i for i, g in enumerate(gates) if g.kind == "P" and g.phase.m > 0)
    gates[i] = Gate.p(gates[i].target, -gates[i].phase)
    return Circuit(c.width, tuple(gates), c.layout, c.name)


def _without(c, index):
    gates = list(c.gates)
    del gates[index]
    return Circuit(c.width, tuple(gates), c.layout, c.name)


def test_oracle_exactness():
    with criterion("oracle exact on f4, 200 corpus (macro+lowered), disjunction n<=8; mutants rejected") as info:
        for circ in (synth_oracle(F4), lower(synth_oracle(F4))):
            r = verify_oracle(circ, F4)
            assert r.passed and r.total_inputs == 32
        fs = list(corpus(CorpusConfig()))
        assert len(fs) == 200
        assert all(f.n <= 6 and len(f.clauses) <= 8 and all(len(k) <= 4 for k in f.clauses)
                   for f in fs)
        for f in fs:
            assert verify_oracle(synth_oracle(f), f).passed, f
            assert verify_oracle(lower(synth_oracle(f)), f).passed, f
        for n in range(1, 9):
            circ = synth_disjunction(n)
            assert verify_oracle(circ, disjunction_esop(n)).passed, n
            assert verify_oracle(lower(circ), disjunction_esop(n)).passed, n

        lowered = lower(synth_oracle(F4))
        first_p = next(i for i, g in enumerate(lowered.gates) if g.kind == "P")
        mutants = {
            "flipped_sign": (_flip_sign(lowered), F4),
            "dropped_rotation": (_without(lowered, first_p), F4),
            "dropped_uncompute": (_without(synth_oracle(F4), len(synth_oracle(F4).gates) - 1), F4),
            "mcz_flipped_sign": (_flip_sign(synth_mcz(3)), None),
        }
        for name, (circ, f) in mutants.items():
            report = verify_oracle(circ, f) if f is not None else verify_mcz(3, circ)
            assert not report.passed and report.failures, name
        info["mutants_rejected"] = len(mutants)


def test_size_law():
    with criterion("size law: estimate exact on corpus; 2^(n+1)-1 rotations per MCX (n in [2,10]); pairwise width Theta(n^2)") as info:
        for f in corpus(CorpusConfig()):
            est = size_estimate(f)
            circ = synth_oracle(f)
            assert est.width == circ.width, f
            assert est.rotation_count == rotation_count(lower(circ)), f

        for n in range(2, 11):
            circ = synth_oracle(conjunction(n))
            (mcx,) = [g for g in circ.gates if g.kind == "MCX"][:1]
            per_mcx = rotation_count(lower(Circuit(circ.width, (mcx,), circ.layout)))
            assert per_mcx == 2 ** (n + 1) - 1, n
            assert rotation_count(lower(circ)) == 2 * (2 ** (n + 1) - 1)

        widths = {n: synth_oracle(pairwise_xor(n)).width for n in range(2, 41)}
        # each pair is a 2-variable block of 7 wires
        assert all(w == n + 1 + 7 * math.comb(n, 2) for n, w in widths.items())
        ratios = [widths[n] / n ** 2 for n in range(10, 41)]
        assert 3 <= min(ratios) and max(ratios) <= 4
        info["width_over_n2_at_40"] = round(widths[40] / 1600, 3)


def _random_diagonal(rng, width, n_gates):
    gates = []
    for _ in range(n_gates):
        kind = rng.choice(["X", "CNOT", "FANOUT", "PARITY", "P"] if width > 1 else ["X", "P"])
        if kind == "X":
            gates.append(Gate.x(int(rng.integers(width))))
        elif kind == "P":
            m = int(rng.integers(0, 7))
            gates.append(Gate.p(int(rng.integers(width)), DyadicPhase(int(rng.integers(1 << (m + 1))), m)))
        else:
            wires = [int(w) for w in rng.permutation(width)[: int(rng.integers(2, width + 1))]]
            if kind == "CNOT":
                gates.append(Gate.cnot(wires[0], wires[1]))
            elif kind == "FANOUT":
                gates.append(Gate.fanout(wires[0], wires[1:]))
            else:
                gates.append(Gate.parity(wires[1:], wires[0]))
    return Circuit(width, tuple(gates))


def test_simulator_cross_check():
    with criterion("dense vs phase simulator on 1000 diagonal circuits (width<=12, 1e-9); lowered Toffoli") as info:
        rng = np.random.default_rng(7)
        worst = 0.0
        for _ in range(1000):
            width = int(rng.integers(1, 13))
            circ = _random_diagonal(rng, width, int(rng.integers(0, 25)))
            bits = tuple(int(b) for b in rng.integers(0, 2, width))
            out = phase_sim(circ, BasisState(bits))
            expected = basis_vector(out.bits) * out.phase.to_complex()
            worst = max(worst, float(np.max(np.abs(statevector_sim(circ, basis_vector(bits)) - expected))))
        assert worst <= 1e-9, worst

        toffoli = lower(synth_mcx(2))
        assert toffoli.width <= 14
        anc = [0] * (toffoli.width - 3)
        err = 0.0
        for a, b, t in itertools.product((0, 1), repeat=3):
            psi = statevector_sim(toffoli, basis_vector([a, b, t, *anc]))
            want = basis_vector([a, b, t ^ (a & b), *anc])
            err = max(err, float(np.max(np.abs(psi - want))))
        assert err <= 1e-9, err
        info["max_err"] = f"{max(worst, err):.1e}"
