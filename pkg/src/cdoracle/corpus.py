"""Seeded random ESOP functions for property and acceptance sweeps."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .boolean import BooleanFunction

DEFAULT_SEED = 20120101


@dataclass(frozen=True)
class CorpusConfig:
    count: int = 200
    max_vars: int = 6
    max_clauses: int = 8
    max_clause_size: int = 4
    empty_clause_rate: float = 0.05
    seed: int = DEFAULT_SEED


def random_esop(rng: random.Random, cfg: CorpusConfig = CorpusConfig()) -> BooleanFunction:
    """One function with at least one nonempty clause."""
    n = rng.randint(1, cfg.max_vars)
    clauses = []
    for _ in range(rng.randint(1, cfg.max_clauses)):
        if rng.random() < cfg.empty_clause_rate:
            clauses.append(())
            continue
        size = rng.randint(1, min(cfg.max_clause_size, n))
        clauses.append(tuple(sorted(rng.sample(range(1, n + 1), size))))
    if all(not c for c in clauses):
        clauses.append((rng.randint(1, n),))
    return BooleanFunction(n, tuple(clauses))


def corpus(cfg: CorpusConfig = CorpusConfig()) -> list[BooleanFunction]:
    rng = random.Random(cfg.seed)
    return [random_esop(rng, cfg) for _ in range(cfg.count)]
