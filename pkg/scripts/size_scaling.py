"""Width, rotation count and depth of the oracle for three function families.

    python scripts/size_scaling.py --max-n 10 > sizes.csv

Columns: family, n, clauses, width, rotations, depth_macro, depth_expanded,
and whether the closed-form size estimate matches the built circuit.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass

from cdoracle.analysis import CostModel, depth, rotation_count, size_estimate
from cdoracle.boolean import conjunction, disjunction_esop, pairwise_xor
from cdoracle.synthesis import lower, synth_oracle

FAMILIES = {"conjunction": conjunction, "pairwise": pairwise_xor, "disjunction": disjunction_esop}


@dataclass
class ScalingConfig:
    max_n: int = 10
    families: tuple[str, ...] = ("conjunction", "pairwise", "disjunction")
    # disjunction_esop has 2^n - 1 clauses, so lowering gets large fast
    max_lowered_width: int = 200_000


def rows(cfg: ScalingConfig):
    for name in cfg.families:
        build = FAMILIES[name]
        for n in range(2, cfg.max_n + 1):
            f = build(n)
            est = size_estimate(f)
            if est.width > cfg.max_lowered_width:
                break
            macro = synth_oracle(f)
            lowered = lower(macro)
            yield {
                "family": name, "n": n, "clauses": len(f.clauses), "width": macro.width,
                "rotations": rotation_count(lowered),
                "depth_macro": depth(macro, CostModel.MACRO),
                "depth_expanded": depth(lowered, CostModel.EXPANDED),
                "estimate_matches": est.width == macro.width
                and est.rotation_count == rotation_count(lowered),
            }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=ScalingConfig.max_n)
    ap.add_argument("--family", action="append", choices=sorted(FAMILIES))
    args = ap.parse_args(argv)
    cfg = ScalingConfig(max_n=args.max_n, families=tuple(args.family or ScalingConfig.families))
    out = csv.DictWriter(sys.stdout, fieldnames=["family", "n", "clauses", "width", "rotations",
                                                 "depth_macro", "depth_expanded", "estimate_matches"])
    out.writeheader()
    for row in rows(cfg):
        out.writerow(row)
    return 0


if __name__ == "__main__":
    sys.exit(main())
