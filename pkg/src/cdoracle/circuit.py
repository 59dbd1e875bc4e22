"""Gate and circuit data model with exact dyadic phases.

Wires are integers ``0 .. width-1``. Every gate reads its ``controls`` and
writes its ``targets``; macro gates additionally reserve ``ancillas`` that
their decomposition will use:

    =========  ==================  ==================
    kind       controls            targets
    =========  ==================  ==================
    H, X, P    ()                  (wire,)
    CNOT       (control,)          (target,)
    FANOUT     (source,)           copies
    PARITY     sources             (target,)
    MCX        controls            (target,)
    MCZ        ()                  all wires (symmetric)
    =========  ==================  ==================
"""

from __future__ import annotations

import cmath
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import ParseError

PRIMITIVE_KINDS = frozenset({"H", "X", "P", "CNOT", "FANOUT", "PARITY"})
MACRO_KINDS = frozenset({"MCX", "MCZ"})
GATE_KINDS = PRIMITIVE_KINDS | MACRO_KINDS


@dataclass(frozen=True, order=True)
class DyadicPhase:
    """The phase factor ``exp(i*pi*k / 2**m)``, kept reduced.

    ``k`` lives in ``[0, 2**(m+1))`` and is odd unless ``m == 0``, so equal
    phases have equal representations.
    """

    k: int = 0
    m: int = 0

    def __post_init__(self) -> None:
        k, m = int(self.k), int(self.m)
        if m < 0:
            raise ValueError(f"denominator exponent must be nonnegative, got {m}")
        k %= 1 << (m + 1)
        while m > 0 and k % 2 == 0:
            k //= 2
            m -= 1
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "m", m)

    def __add__(self, other: DyadicPhase) -> DyadicPhase:
        m = max(self.m, other.m)
        return DyadicPhase(self.k * (1 << (m - self.m)) + other.k * (1 << (m - other.m)), m)

    def __neg__(self) -> DyadicPhase:
        return DyadicPhase(-self.k, self.m)

    def __sub__(self, other: DyadicPhase) -> DyadicPhase:
        return self + (-other)

    def numerator_at(self, m: int) -> int:
        """Numerator over the common denominator ``2**m`` (``m >= self.m``)."""
        return self.k << (m - self.m)

    def is_zero(self) -> bool:
        return self.k == 0

    def as_fraction(self) -> Fraction:
        """Phase angle as a multiple of pi."""
        return Fraction(self.k, 1 << self.m)

    def to_complex(self) -> complex:
        return cmath.exp(1j * cmath.pi * self.k / (1 << self.m))

    def __str__(self) -> str:
        return f"{self.k}/2^{self.m}" if self.m else str(self.k)


MINUS_ONE = DyadicPhase(1, 0)


@dataclass(frozen=True)
class Gate:
    kind: str
    targets: tuple[int, ...]
    controls: tuple[int, ...] = ()
    phase: DyadicPhase | None = None
    ancillas: tuple[int, ...] = ()

    @classmethod
    def h(cls, wire: int) -> Gate:
        return cls("H", (wire,))

    @classmethod
    def x(cls, wire: int) -> Gate:
        return cls("X", (wire,))

    @classmethod
    def p(cls, wire: int, phase: DyadicPhase) -> Gate:
        return cls("P", (wire,), phase=phase)

    @classmethod
    def cnot(cls, control: int, target: int) -> Gate:
        return cls("CNOT", (target,), (control,))

    @classmethod
    def fanout(cls, source: int, copies: Iterable[int]) -> Gate:
        return cls("FANOUT", tuple(copies), (source,))

    @classmethod
    def parity(cls, sources: Iterable[int], target: int) -> Gate:
        return cls("PARITY", (target,), tuple(sources))

    @classmethod
    def mcx(cls, controls: Iterable[int], target: int, ancillas: Iterable[int] = ()) -> Gate:
        return cls("MCX", (target,), tuple(controls), ancillas=tuple(ancillas))

    @classmethod
    def mcz(cls, wires: Iterable[int], ancillas: Iterable[int] = ()) -> Gate:
        return cls("MCZ", tuple(wires), ancillas=tuple(ancillas))

    @property
    def wires(self) -> tuple[int, ...]:
        return self.controls + self.targets + self.ancillas

    @property
    def target(self) -> int:
        return self.targets[0]

    @property
    def is_macro(self) -> bool:
        return self.kind in MACRO_KINDS

    def to_dict(self) -> dict:
        k = self.kind
        if k in ("H", "X"):
            return {"kind": k, "wire": self.target}
        if k == "P":
            return {"kind": k, "wire": self.target, "k": self.phase.k, "m": self.phase.m}
        if k == "CNOT":
            return {"kind": k, "control": self.controls[0], "target": self.target}
        if k == "FANOUT":
            return {"kind": k, "src": self.controls[0], "dst": list(self.targets)}
        if k == "PARITY":
            return {"kind": k, "src": list(self.controls), "dst": self.target}
        if k == "MCX":
            return {"kind": k, "controls": list(self.controls), "target": self.target,
                    "ancillas": list(self.ancillas)}
        if k == "MCZ":
            return {"kind": k, "wires": list(self.targets), "ancillas": list(self.ancillas)}
        raise ValueError(f"unknown gate kind {k!r}")

    @classmethod
    def from_dict(cls, d: dict) -> Gate:
        try:
            k = d["kind"]
            if k == "H":
                return cls.h(int(d["wire"]))
            if k == "X":
                return cls.x(int(d["wire"]))
            if k == "P":
                return cls.p(int(d["wire"]), DyadicPhase(int(d["k"]), int(d["m"])))
            if k == "CNOT":
                return cls.cnot(int(d["control"]), int(d["target"]))
            if k == "FANOUT":
                return cls.fanout(int(d["src"]), map(int, d["dst"]))
            if k == "PARITY":
                return cls.parity(map(int, d["src"]), int(d["dst"]))
            if k == "MCX":
                return cls.mcx(map(int, d["controls"]), int(d["target"]),
                               map(int, d.get("ancillas", ())))
            if k == "MCZ":
                return cls.mcz(map(int, d["wires"]), map(int, d.get("ancillas", ())))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad gate record {d!r}: {exc}") from None
        raise ParseError(f"unknown gate kind {k!r}")


@dataclass(frozen=True)
class WireRange:
    """Wires ``start .. stop-1`` sharing a role; ``block`` names the owning clause."""

    label: str
    role: str
    start: int
    stop: int
    block: int | None = None

    @property
    def wires(self) -> range:
        return range(self.start, self.stop)


@dataclass(frozen=True)
class Circuit:
    width: int
    gates: tuple[Gate, ...] = ()
    layout: tuple[WireRange, ...] = ()
    name: str = ""
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def wires_with_role(self, *roles: str) -> list[int]:
        return [w for r in self.layout if r.role in roles for w in r.wires]

    @property
    def input_wires(self) -> list[int]:
        return self.wires_with_role("input")

    @property
    def target_wires(self) -> list[int]:
        return self.wires_with_role("target")

    @property
    def ancilla_wires(self) -> list[int]:
        """Wires required to return to 0; includes any wire the layout leaves unlabeled."""
        io = set(self.wires_with_role("input", "target"))
        return [w for w in range(self.width) if w not in io]

    @property
    def is_primitive(self) -> bool:
        return all(g.kind in PRIMITIVE_KINDS for g in self.gates)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "width": self.width,
            "layout": [
                {"label": r.label, "role": r.role, "start": r.start, "stop": r.stop,
                 "block": r.block}
                for r in self.layout
            ],
            "gates": [g.to_dict() for g in self.gates],
            "warnings": list(self.warnings),
        }

    def to_json(self) -> str:
        return dumps_stable(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> Circuit:
        try:
            layout = tuple(
                WireRange(r["label"], r["role"], int(r["start"]), int(r["stop"]), r.get("block"))
                for r in d.get("layout", ())
            )
            return cls(
                width=int(d["width"]),
                gates=tuple(Gate.from_dict(g) for g in d.get("gates", ())),
                layout=layout,
                name=d.get("name", ""),
                warnings=tuple(d.get("warnings", ())),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"bad circuit record: {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> Circuit:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
        return cls.from_dict(data)


def dumps_stable(d: dict) -> str:
    """Circuit JSON with one gate per line; byte-identical across runs."""
    parts = [f"  {json.dumps(k)}: {json.dumps(v)}" for k, v in d.items() if k != "gates"]
    gates = ",\n".join("    " + json.dumps(g) for g in d["gates"])
    parts.append('  "gates": [\n' + gates + "\n  ]" if gates else '  "gates": []')
    return "{\n" + ",\n".join(parts) + "\n}\n"


def validate(c: Circuit) -> list[str]:
    """All invariant violations, one message per problem; empty means valid."""
    errors = []
    if c.width < 0:
        errors.append(f"negative width {c.width}")
    for r in c.layout:
        if not 0 <= r.start <= r.stop <= c.width:
            errors.append(f"layout range {r.label!r} [{r.start}, {r.stop}) outside width {c.width}")
    for i, g in enumerate(c.gates):
        if g.kind not in GATE_KINDS:
            errors.append(f"unknown kind {g.kind!r} at gate {i}")
            continue
        wires = g.wires
        bad = [w for w in wires if not 0 <= w < c.width]
        if bad:
            errors.append(f"wire {bad[0]} out of range at gate {i}")
        if len(set(wires)) != len(wires):
            errors.append(f"duplicate wire at gate {i}")
        if g.kind == "P" and g.phase is None:
            errors.append(f"missing phase at gate {i}")
        if g.kind in ("H", "X", "P", "CNOT", "PARITY", "MCX") and len(g.targets) != 1:
            errors.append(f"{g.kind} needs exactly one target at gate {i}")
        if g.kind in ("CNOT", "FANOUT") and len(g.controls) != 1:
            errors.append(f"{g.kind} needs exactly one control at gate {i}")
        if g.kind == "FANOUT" and not g.targets:
            errors.append(f"empty FANOUT at gate {i}")
        if g.kind in ("PARITY", "MCX") and not g.controls:
            errors.append(f"{g.kind} without sources at gate {i}")
        if g.kind == "MCZ" and len(g.targets) < 2:
            errors.append(f"MCZ needs at least 2 wires at gate {i}")
    return errors

