"""Command-line front end: ``cdoracle {synth,verify,analyze,sim,lemma,corpus}``.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
Artifacts (circuit JSON, report JSON, metrics JSON) go to stdout or ``--out``;
summaries and warnings go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import boolean
from .analysis import CostModel, depth, gate_counts, rotation_count, size_estimate
from .boolean import BooleanFunction, parse_esop
from .circuit import Circuit, DyadicPhase, validate
from .corpus import DEFAULT_SEED, CorpusConfig, corpus
from .errors import FragmentError, ParseError, ResourceError, ValidationError
from .sim import BasisState, basis_batch, branch_batch, phase_sim
from .synthesis import lower, synth_disjunction, synth_mcx, synth_mcz, synth_oracle
from .verify import verify_oracle

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_esop(path: str | None, inline: str | None) -> BooleanFunction:
    if inline is not None:
        return parse_esop(inline.replace(";", "\n"))
    if path is None:
        raise UsageError("need an ESOP file, '-' for stdin, or --inline")
    return parse_esop(_read_text(path))


def _load_circuit(path: str) -> Circuit:
    c = Circuit.from_json(_read_text(path))
    problems = validate(c)
    if problems:
        raise ValidationError("invalid circuit: " + "; ".join(problems[:5]))
    return c


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _summary(**fields: object) -> str:
    return " ".join(f"{k}={v}" for k, v in fields.items())


def cmd_synth(args: argparse.Namespace) -> int:
    picks = [args.disjunction is not None, args.mcz is not None, args.mcx is not None]
    if sum(picks) > 1:
        raise UsageError("--disjunction, --mcz and --mcx are mutually exclusive")
    if args.disjunction is not None:
        c = synth_disjunction(args.disjunction)
    elif args.mcz is not None:
        c = synth_mcz(args.mcz)
    elif args.mcx is not None:
        c = synth_mcx(args.mcx)
    else:
        c = synth_oracle(_load_esop(args.esop, args.inline))
    for w in c.warnings:
        print(f"warning: {w}", file=sys.stderr)
    lowered = lower(c)
    fields = {"depth": depth(c, CostModel.MACRO)}
    if args.lower:
        fields["expanded_depth"] = depth(lowered, CostModel.EXPANDED)
        c = lowered
    fields["width"] = c.width
    fields["rotations"] = rotation_count(lowered)
    _emit(c.to_json(), args.out)
    print(_summary(**fields), file=sys.stderr)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    c = _load_circuit(args.circuit)
    f = _load_esop(args.esop, args.inline)
    report = verify_oracle(c, f)
    _emit(report.to_json(), args.out)
    print(_summary(verdict=report.verdict, inputs=report.total_inputs,
                   failures=report.failure_count), file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAIL


def analyze_metrics(c: Circuit, f: BooleanFunction | None = None) -> dict:
    counts = gate_counts(c)
    lowered = c if c.is_primitive else lower(c)
    metrics = {
        "name": c.name,
        "width": c.width,
        "ancillas": len(c.ancilla_wires),
        "depth_macro": depth(c, CostModel.MACRO),
        "depth_expanded": depth(lowered, CostModel.EXPANDED),
        "expanded_from_lowering": not c.is_primitive,
        "gate_counts": counts,
        "rotations": rotation_count(lowered),
    }
    if f is not None:
        est = size_estimate(f)
        metrics["size_estimate"] = {"width": est.width, "rotation_count": est.rotation_count,
                                    "ancilla_count": est.ancilla_count}
        metrics["size_estimate_matches"] = (est.width == c.width
                                            and est.rotation_count == metrics["rotations"])
    return metrics


def cmd_analyze(args: argparse.Namespace) -> int:
    c = _load_circuit(args.circuit)
    f = _load_esop(args.esop, None) if args.esop else None
    metrics = analyze_metrics(c, f)
    _emit(json.dumps(metrics, indent=1) + "\n", args.out)
    d = metrics["depth_macro"] if args.model == "macro" else metrics["depth_expanded"]
    print(_summary(depth=d, width=c.width, P=metrics["gate_counts"].get("P", 0),
                   ancillas=metrics["ancillas"]), file=sys.stderr)
    return EXIT_OK


def cmd_sim(args: argparse.Namespace) -> int:
    c = _load_circuit(args.circuit)
    bits = args.input.strip()
    if set(bits) - {"0", "1"}:
        raise UsageError("--input must be a bit string")
    if len(bits) < c.width:
        bits += "0" * (c.width - len(bits))
    if len(bits) != c.width:
        raise UsageError(f"--input has {len(args.input)} bits, circuit width is {c.width}")
    col = np.array([[b == "1"] for b in bits], dtype=bool)
    if c.is_primitive and all(g.kind != "H" for g in c.gates):
        out = phase_sim(c, BasisState.from_string(bits))
        result = {"outputs": [{"bits": str(out), "phase": [out.phase.k, out.phase.m]}]}
    elif all(g.kind != "H" for g in c.gates):
        out_bits, phase, m = basis_batch(c, col)
        ph = DyadicPhase(int(phase[0]), m)
        result = {"outputs": [{"bits": "".join("1" if b else "0" for b in out_bits[:, 0]),
                               "phase": [ph.k, ph.m]}]}
    else:
        st = branch_batch(c, col)
        outputs = []
        scale = 2 ** (st.halvings / 2)
        for r in range(st.bits.shape[1]):
            amp = sum(int(a) * np.exp(1j * np.pi * j / st.L) for j, a in enumerate(st.amp[r]))
            amp /= scale
            phase = st.phase_of(r)
            outputs.append({"bits": "".join("1" if b else "0" for b in st.bits[:, r]),
                            "re": round(float(amp.real), 12), "im": round(float(amp.imag), 12),
                            "phase": None if phase is None else [phase.k, phase.m]})
        result = {"outputs": outputs}
    _emit(json.dumps(result, indent=1) + "\n", args.out)
    return EXIT_OK


def cmd_lemma(args: argparse.Namespace) -> int:
    n = args.n
    if not 1 <= n <= boolean.IDENTITY_MAX_VARS:
        raise UsageError(f"n must be in [1, {boolean.IDENTITY_MAX_VARS}]")
    ok = True
    for k in range(1, n + 1):
        pascal = all(boolean.pascal_holds(k, i) for i in range(1, k + 2))
        alt = boolean.alternating_binomial_sum(k) == 1
        ident = boolean.check_and_xor_identity(k)
        ok &= pascal and alt and ident
        print(_summary(n=k, pascal=pascal, alternating_sum=alt, and_xor_identity=ident))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_corpus(args: argparse.Namespace) -> int:
    cfg = CorpusConfig(count=args.count, seed=args.seed)
    failed = 0
    for i, f in enumerate(corpus(cfg)):
        c = synth_oracle(f)
        if args.lower:
            c = lower(c)
        report = verify_oracle(c, f)
        failed += not report.passed
        if args.out:
            out_dir = Path(args.out)
            out_dir.mkdir(parents=True, exist_ok=True)
            (out_dir / f"f{i:03d}.esop").write_text(boolean.serialize_esop(f), encoding="utf-8")
        print(_summary(index=i, n=f.n, clauses=len(f.clauses), width=c.width,
                       depth=depth(synth_oracle(f)), verdict=report.verdict))
    print(_summary(seed=args.seed, count=cfg.count, failed=failed), file=sys.stderr)
    return EXIT_OK if failed == 0 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cdoracle", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="compile an ESOP function into an oracle circuit")
    p.add_argument("esop", nargs="?", help="ESOP file, or '-' for stdin")
    p.add_argument("--inline", help="ESOP text; ';' separates lines")
    p.add_argument("--lower", action="store_true", help="emit primitive gates only")
    p.add_argument("--disjunction", type=int, metavar="N", help="OR of N variables")
    p.add_argument("--mcz", type=int, metavar="C", help="Z controlled by C wires")
    p.add_argument("--mcx", type=int, metavar="C", help="NOT controlled by C wires")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("verify", help="exhaustively check a circuit against an ESOP function")
    p.add_argument("circuit")
    p.add_argument("esop", nargs="?")
    p.add_argument("--inline")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("analyze", help="depth, width and gate counts of a circuit")
    p.add_argument("circuit")
    p.add_argument("--esop", help="cross-check against the closed-form size estimate")
    p.add_argument("--model", choices=["macro", "expanded"], default="macro")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sim", help="simulate one basis input")
    p.add_argument("circuit")
    p.add_argument("--input", required=True, help="bit string; missing trailing wires are 0")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_sim)

    p = sub.add_parser("lemma", help="check the binomial and AND/XOR identities up to n")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_lemma)

    p = sub.add_parser("corpus", help="synthesize and verify a seeded random corpus")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--lower", action="store_true")
    p.add_argument("--out", metavar="DIR", help="also write each ESOP function here")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError, ValidationError, FragmentError, ResourceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
