"""Boolean functions as XOR-of-ANDs, and the AND/XOR expansion.

A function on ``n`` variables is stored as an ordered list of clauses, each
clause a sorted tuple of 1-based variable indices. The function value is the
XOR over clauses of the AND over each clause's variables; the empty clause is
the constant-1 term.

Text format (one directive per line, ``#`` comments and blanks ignored)::

    vars 4
    term 1 2
    term 3 4
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ParseError, ResourceError, ValidationError

TRUTH_TABLE_MAX_VARS = 24
EXPANSION_MAX_VARS = 20
IDENTITY_MAX_VARS = 16
BINOMIAL_MAX_N = 61

Clause = tuple[int, ...]


@dataclass(frozen=True)
class BooleanFunction:
    n: int
    clauses: tuple[Clause, ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n <= 0:
            raise ValidationError(f"variable count must be positive, got {self.n!r}")
        canon = []
        for clause in self.clauses:
            idx = tuple(sorted(set(int(k) for k in clause)))
            for k in idx:
                if not 1 <= k <= self.n:
                    raise ValidationError(f"index {k} out of range [1, {self.n}]")
            canon.append(idx)
        object.__setattr__(self, "clauses", tuple(canon))

    def __call__(self, x: Sequence[int]) -> int:
        return evaluate(self, x)

    def canonicalize(self) -> BooleanFunction:
        """Drop clauses that occur an even number of times (they XOR-cancel)."""
        counts = Counter(self.clauses)
        kept = [c for c in dict.fromkeys(self.clauses) if counts[c] % 2]
        return BooleanFunction(self.n, tuple(kept))


def conjunction(n: int) -> BooleanFunction:
    return BooleanFunction(n, (tuple(range(1, n + 1)),))


def pairwise_xor(n: int) -> BooleanFunction:
    """XOR of ``x_i & x_j`` over all pairs ``i < j``."""
    return BooleanFunction(n, tuple(itertools.combinations(range(1, n + 1), 2)))


def disjunction_esop(n: int) -> BooleanFunction:
    """OR of n variables: XOR of every nonempty conjunction."""
    return BooleanFunction(n, tuple(t.subset for t in and_xor_expansion(n)))


F4 = pairwise_xor(4)


def parse_esop(text: str) -> BooleanFunction:
    n = None
    clauses: list[Clause] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, *args = line.split()
        if head == "vars":
            if n is not None:
                raise ParseError("duplicate 'vars' directive", lineno)
            if len(args) != 1:
                raise ParseError("'vars' takes exactly one integer", lineno)
            n = _parse_int(args[0], lineno)
            if n <= 0:
                raise ValidationError(f"line {lineno}: variable count must be positive, got {n}")
        elif head == "term":
            if n is None:
                raise ParseError("'term' before 'vars'", lineno)
            idx = [_parse_int(a, lineno) for a in args]
            for k in idx:
                if not 1 <= k <= n:
                    raise ValidationError(f"line {lineno}: index {k} out of range [1, {n}]")
            clauses.append(tuple(idx))
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)
    if n is None:
        raise ParseError("missing 'vars' directive")
    return BooleanFunction(n, tuple(clauses))


def _parse_int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected integer, got {token!r}", lineno) from None


def serialize_esop(f: BooleanFunction) -> str:
    lines = [f"vars {f.n}"]
    for clause in f.clauses:
        lines.append(" ".join(["term", *map(str, clause)]))
    return "\n".join(lines) + "\n"


def evaluate(f: BooleanFunction, x: Sequence[int]) -> int:
    if len(x) != f.n:
        raise ValidationError(f"expected {f.n} bits, got {len(x)}")
    out = 0
    for clause in f.clauses:
        out ^= int(all(x[k - 1] for k in clause))
    return out


def truth_table(f: BooleanFunction) -> np.ndarray:
    """Values of ``f`` on all inputs; index bits read x_1 as the most significant."""
    if f.n > TRUTH_TABLE_MAX_VARS:
        raise ResourceError(f"truth table capped at {TRUTH_TABLE_MAX_VARS} variables")
    idx = np.arange(1 << f.n, dtype=np.int64)
    table = np.zeros(1 << f.n, dtype=np.uint8)
    for clause in f.clauses:
        term = np.ones(1 << f.n, dtype=np.uint8)
        for k in clause:
            term &= ((idx >> (f.n - k)) & 1).astype(np.uint8)
        table ^= term
    return table


@dataclass(frozen=True)
class SignedParityTerm:
    subset: Clause
    sign: int

    def __post_init__(self) -> None:
        if not self.subset:
            raise ValidationError("parity term needs a nonempty subset")
        if self.sign != (-1) ** (len(self.subset) - 1):
            raise ValidationError(f"sign of {self.subset} must be (-1)^(|K|-1)")

    @property
    def mask(self) -> int:
        return sum(1 << (k - 1) for k in self.subset)


def and_xor_expansion(n: int) -> list[SignedParityTerm]:
    """Nonempty subsets of {1..n} with sign (-1)^(|K|-1), by size then lexicographic."""
    if not 1 <= n <= EXPANSION_MAX_VARS:
        raise ValidationError(f"n must be in [1, {EXPANSION_MAX_VARS}], got {n}")
    terms = []
    for size in range(1, n + 1):
        sign = 1 if size % 2 else -1
        for subset in itertools.combinations(range(1, n + 1), size):
            terms.append(SignedParityTerm(subset, sign))
    return terms


def check_and_xor_identity(n: int) -> bool:
    """Exhaustively compare ``2^(n-1) * AND(x)`` with the signed parity sum.

    Every assignment is checked in exact integer arithmetic. Subset parities
    are walked in Gray-code order so each term costs one XOR of a column.
    """
    if not 1 <= n <= IDENTITY_MAX_VARS:
        raise ValidationError(f"n must be in [1, {IDENTITY_MAX_VARS}], got {n}")
    size = 1 << n
    sign_of = np.zeros(size, dtype=np.int64)
    for term in and_xor_expansion(n):
        sign_of[term.mask] += term.sign

    xs = np.arange(size, dtype=np.int64)
    # bit k-1 of an assignment index holds x_k
    columns = [((xs >> j) & 1).astype(np.int8) for j in range(n)]
    rhs = np.zeros(size, dtype=np.int32)
    parity = np.zeros(size, dtype=np.int8)
    prev = 0
    for g in range(1, size):
        gray = g ^ (g >> 1)
        parity ^= columns[(gray ^ prev).bit_length() - 1]
        prev = gray
        s = sign_of[gray]
        if s > 0:
            np.add(rhs, parity, out=rhs)
        elif s < 0:
            np.subtract(rhs, parity, out=rhs)

    lhs = np.zeros(size, dtype=np.int64)
    lhs[size - 1] = 1 << (n - 1)
    return bool(np.array_equal(lhs, rhs))


def binomial(n: int, k: int) -> int:
    if not 0 <= k <= n <= BINOMIAL_MAX_N:
        raise ValidationError(f"need 0 <= k <= n <= {BINOMIAL_MAX_N}, got n={n}, k={k}")
    return math.comb(n, k)


def alternating_binomial_sum(n: int) -> int:
    if not 1 <= n <= BINOMIAL_MAX_N:
        raise ValidationError(f"n must be in [1, {BINOMIAL_MAX_N}], got {n}")
    return sum((-1) ** (i - 1) * binomial(n, i) for i in range(1, n + 1))


def pascal_holds(n: int, k: int) -> bool:
    return binomial(n + 1, k) == binomial(n, k - 1) + (binomial(n, k) if k <= n else 0)


def xor_concat(f: BooleanFunction, g: BooleanFunction) -> BooleanFunction:
    if f.n != g.n:
        raise ValidationError("variable counts differ")
    return BooleanFunction(f.n, f.clauses + g.clauses)
