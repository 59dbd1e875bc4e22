"""Constant-depth oracle synthesis.

The multi-controlled Z on ``q`` wires is built from the signed parity
expansion of the conjunction: every nonempty subset ``K`` of the wires gets a
wire holding the XOR of its members (singletons are the wires themselves,
larger subsets get an ancilla filled by CNOTs), and that wire receives the
phase ``(-1)^(|K|-1) * pi / 2^(q-1)``. The phases add up to ``pi`` exactly when
all wires are 1. A mirror CNOT block then clears the ancillas.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .boolean import BooleanFunction, and_xor_expansion
from .circuit import Circuit, DyadicPhase, Gate, WireRange
from .errors import ValidationError

MAX_CONTROLS = 20
MAX_DISJUNCTION = 16


def mcz_ancilla_count(q: int) -> int:
    return (1 << q) - 1 - q


@dataclass(frozen=True)
class MczPlan:
    q: int
    parity_wires: dict[tuple[int, ...], int]
    rotations: tuple[tuple[int, DyadicPhase], ...]

    @property
    def ancillas(self) -> list[int]:
        return [w for subset, w in self.parity_wires.items() if len(subset) >= 2]


def plan_mcz(main: Sequence[int], ancillas: Sequence[int]) -> MczPlan:
    q = len(main)
    if q < 2:
        raise ValidationError("MCZ needs at least two wires")
    if len(ancillas) != mcz_ancilla_count(q):
        raise ValidationError(f"MCZ on {q} wires needs {mcz_ancilla_count(q)} ancillas, "
                              f"got {len(ancillas)}")
    spare = iter(ancillas)
    parity_wires = {}
    rotations = []
    for term in and_xor_expansion(q):
        wire = main[term.subset[0] - 1] if len(term.subset) == 1 else next(spare)
        parity_wires[term.subset] = wire
        rotations.append((wire, DyadicPhase(term.sign, q - 1)))
    return MczPlan(q, parity_wires, tuple(rotations))


def mcz_gates(main: Sequence[int], ancillas: Sequence[int]) -> list[Gate]:
    """CNOT block, one rotation per parity wire, mirrored CNOT block."""
    plan = plan_mcz(main, ancillas)
    compute = [
        Gate.cnot(main[k - 1], wire)
        for subset, wire in plan.parity_wires.items() if len(subset) >= 2
        for k in subset
    ]
    rotations = [Gate.p(wire, phase) for wire, phase in plan.rotations]
    return compute + rotations + compute[::-1]


def _check_controls(controls: int) -> None:
    if not 1 <= controls <= MAX_CONTROLS:
        raise ValidationError(f"controls must be in [1, {MAX_CONTROLS}], got {controls}")


def _main_layout(controls: int, n_anc: int) -> tuple[WireRange, ...]:
    q = controls + 1
    layout = [WireRange("controls", "input", 0, controls), WireRange("target", "target", controls, q)]
    if n_anc:
        layout.append(WireRange("parity", "ancilla", q, q + n_anc))
    return tuple(layout)


def synth_mcz(controls: int) -> Circuit:
    _check_controls(controls)
    q = controls + 1
    n_anc = mcz_ancilla_count(q)
    gates = mcz_gates(range(q), range(q, q + n_anc))
    return Circuit(q + n_anc, tuple(gates), _main_layout(controls, n_anc), f"mcz{controls}")


def synth_mcx(controls: int) -> Circuit:
    _check_controls(controls)
    if controls == 1:
        return Circuit(2, (Gate.cnot(0, 1),), _main_layout(1, 0), "mcx1")
    q = controls + 1
    n_anc = mcz_ancilla_count(q)
    target = controls
    gates = [Gate.h(target), *mcz_gates(range(q), range(q, q + n_anc)), Gate.h(target)]
    return Circuit(q + n_anc, tuple(gates), _main_layout(controls, n_anc), f"mcx{controls}")


def synth_oracle(f: BooleanFunction) -> Circuit:
    """Depth-5 oracle ``|x>|y> -> |x>|y ^ f(x)>`` built from macro gates.

    Wire layout: inputs ``x_1..x_n``, target ``y``, then one block per clause
    holding the clause's input copies, the block target, and the parity
    ancillas its MCX will need. Steps: fanout inputs into blocks, one MCX (or
    CNOT, or X for the empty clause) per block, a single parity into ``y``,
    then both undone.
    """
    n = f.n
    layout = [WireRange("x", "input", 0, n), WireRange("y", "target", n, n + 1)]
    if not f.clauses:
        return Circuit(n + 1, (), tuple(layout), "oracle",
                       warnings=("function has no clauses; emitted identity oracle",))

    nxt = n + 1
    fan: dict[int, list[int]] = {k: [] for k in range(1, n + 1)}
    compute: list[Gate] = []
    block_targets = []
    for b, clause in enumerate(f.clauses):
        size = len(clause)
        copies = list(range(nxt, nxt + size))
        target = nxt + size
        n_anc = mcz_ancilla_count(size + 1)
        ancillas = list(range(target + 1, target + 1 + n_anc))
        if size:
            layout.append(WireRange(f"copy{b}", "copy", copies[0], copies[-1] + 1, b))
        layout.append(WireRange(f"out{b}", "block_target", target, target + 1, b))
        if n_anc:
            layout.append(WireRange(f"anc{b}", "ancilla", ancillas[0], ancillas[-1] + 1, b))
        nxt = target + 1 + n_anc

        for k, wire in zip(clause, copies):
            fan[k].append(wire)
        if size == 0:
            compute.append(Gate.x(target))
        elif size == 1:
            compute.append(Gate.cnot(copies[0], target))
        else:
            compute.append(Gate.mcx(copies, target, ancillas))
        block_targets.append(target)

    fanouts = [Gate.fanout(k - 1, wires) for k, wires in fan.items() if wires]
    gates = [*fanouts, *compute, Gate.parity(block_targets, n), *compute, *fanouts]
    return Circuit(nxt, tuple(gates), tuple(layout), "oracle")


def synth_disjunction(n: int) -> Circuit:
    """``y ^= x_1 | ... | x_n`` as NOT of the conjunction of negated inputs."""
    if not 1 <= n <= MAX_DISJUNCTION:
        raise ValidationError(f"n must be in [1, {MAX_DISJUNCTION}], got {n}")
    n_anc = mcz_ancilla_count(n + 1) if n >= 2 else 0
    ancillas = range(n + 1, n + 1 + n_anc)
    layout = [WireRange("x", "input", 0, n), WireRange("y", "target", n, n + 1)]
    if n_anc:
        layout.append(WireRange("parity", "ancilla", n + 1, n + 1 + n_anc))
    flips = [Gate.x(i) for i in range(n)]
    gates = [*flips, Gate.x(n), Gate.mcx(range(n), n, ancillas), *flips]
    return Circuit(n + 1 + n_anc, tuple(gates), tuple(layout), f"or{n}")


class _Allocator:
    def __init__(self, c: Circuit):
        self.width = c.width
        self.layout = list(c.layout)

    def take(self, count: int, label: str, role: str) -> list[int]:
        wires = list(range(self.width, self.width + count))
        if count:
            self.layout.append(WireRange(label, role, self.width, self.width + count))
            self.width += count
        return wires


class _ScratchPool:
    """Scratch wires shared by sequential CNOT blocks; each block returns them to 0."""

    def __init__(self, alloc: _Allocator):
        self.alloc = alloc
        self.wires: list[int] = []

    def take(self, count: int) -> list[int]:
        if count > len(self.wires):
            self.wires += self.alloc.take(count - len(self.wires), "scratch", "scratch")
        return self.wires[:count]


def lower(c: Circuit) -> Circuit:
    """Expand macros and rewrite commuting CNOT blocks into fanout/parity layers.

    MCX becomes ``H . MCZ . H`` (a plain CNOT for one control); MCZ uses the
    ancillas reserved on the gate, or fresh wires when none are reserved.
    Each macro gets its own scratch pool so that blocks which could run in
    parallel never wait on each other's scratch wires.
    """
    alloc = _Allocator(c)
    top_pool = _ScratchPool(alloc)
    gates: list[Gate] = []
    pending: list[Gate] = []
    for g in c.gates:
        if not g.is_macro:
            pending.append(g)
            continue
        gates += lower_cnot_blocks(pending, top_pool.take)
        pending = []
        if g.kind == "MCX" and len(g.controls) == 1:
            gates.append(Gate.cnot(g.controls[0], g.target))
            continue
        pool = _ScratchPool(alloc)
        if g.kind == "MCZ":
            gates += lower_cnot_blocks(_expand_mcz(list(g.targets), list(g.ancillas), alloc),
                                       pool.take)
        else:
            main = [*g.controls, g.target]
            body = _expand_mcz(main, list(g.ancillas), alloc)
            gates += [Gate.h(g.target), *lower_cnot_blocks(body, pool.take), Gate.h(g.target)]
    gates += lower_cnot_blocks(pending, top_pool.take)
    return Circuit(alloc.width, tuple(gates), tuple(alloc.layout), c.name, c.warnings)


def _expand_mcz(main: list[int], ancillas: list[int], alloc: _Allocator) -> list[Gate]:
    if not ancillas:
        ancillas = alloc.take(mcz_ancilla_count(len(main)), "parity", "ancilla")
    return mcz_gates(main, ancillas)


def lower_cnot_blocks(gates: Sequence[Gate],
                      take: Callable[[int], list[int]]) -> list[Gate]:
    """Group maximal runs of commuting CNOTs and emit each run in three layers.

    A run keeps growing while no control of the run is also one of its
    targets, which makes all its CNOTs commute.
    """
    out: list[Gate] = []
    run: list[Gate] = []
    controls: set[int] = set()
    targets: set[int] = set()
    for g in gates:
        if g.kind == "CNOT" and g.controls[0] not in targets and g.target not in controls:
            run.append(g)
            controls.add(g.controls[0])
            targets.add(g.target)
            continue
        if run:
            out += _lower_run(run, take)
            run, controls, targets = [], set(), set()
        if g.kind == "CNOT":
            run.append(g)
            controls.add(g.controls[0])
            targets.add(g.target)
        else:
            out.append(g)
    if run:
        out += _lower_run(run, take)
    return out


def _lower_run(run: list[Gate], take: Callable[[int], list[int]]) -> list[Gate]:
    # sources per target, with repeated CNOTs cancelling in pairs
    sources: dict[int, list[int]] = {}
    for g in run:
        srcs = sources.setdefault(g.target, [])
        c = g.controls[0]
        if c in srcs:
            srcs.remove(c)
        else:
            srcs.append(c)

    uses: dict[int, int] = {}
    for srcs in sources.values():
        for c in srcs:
            uses[c] = uses.get(c, 0) + 1
    scratch_needed = sum(u - 1 for u in uses.values())
    scratch = iter(take(scratch_needed))

    copies: dict[int, list[int]] = {}
    fanouts = []
    for c, u in uses.items():
        extra = [next(scratch) for _ in range(u - 1)]
        copies[c] = [c, *extra]
        if extra:
            fanouts.append(Gate.fanout(c, extra))

    combine = []
    for t, srcs in sources.items():
        wires = [copies[c].pop() for c in srcs]
        if len(wires) == 1:
            combine.append(Gate.cnot(wires[0], t))
        elif wires:
            combine.append(Gate.parity(wires, t))
    return [*fanouts, *combine, *fanouts]
