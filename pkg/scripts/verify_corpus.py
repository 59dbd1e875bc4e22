"""Synthesize and exhaustively verify a seeded random ESOP corpus, macro and lowered.

    python scripts/verify_corpus.py --count 200 --seed 20120101
"""

from __future__ import annotations

import argparse
import sys
import time
from collections import Counter

from cdoracle.analysis import CostModel, depth
from cdoracle.corpus import DEFAULT_SEED, CorpusConfig, corpus
from cdoracle.synthesis import lower, synth_oracle
from cdoracle.verify import verify_oracle


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--max-vars", type=int, default=6)
    args = ap.parse_args(argv)
    cfg = CorpusConfig(count=args.count, seed=args.seed, max_vars=args.max_vars)

    start = time.perf_counter()
    failures = 0
    depths: Counter = Counter()
    expanded: Counter = Counter()
    inputs = 0
    for f in corpus(cfg):
        macro = synth_oracle(f)
        lowered = lower(macro)
        depths[depth(macro, CostModel.MACRO)] += 1
        expanded[depth(lowered, CostModel.EXPANDED)] += 1
        for circ in (macro, lowered):
            report = verify_oracle(circ, f)
            inputs += report.total_inputs
            if not report.passed:
                failures += 1
                print(f"FAIL {f.clauses} ({circ.name}): {report.failure_count} bad inputs")
    print(f"functions={cfg.count} inputs_checked={inputs} failures={failures} "
          f"seconds={time.perf_counter() - start:.2f}")
    print(f"macro depth histogram: {dict(sorted(depths.items()))}")
    print(f"expanded depth histogram: {dict(sorted(expanded.items()))}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
