"""Exact partition combinatorics: hook lengths, dimension formulas, binomials.

Everything here is computed in arbitrary-precision integer (or rational)
arithmetic; floating point appears only at the log-gamma boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator


@dataclass(frozen=True)
class Partition:
    """Row lengths of a Young diagram, weakly decreasing, all positive."""

    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.rows:
            raise ValueError("partition needs at least one row")
        if any(r < 1 for r in self.rows):
            raise ValueError(f"row lengths must be positive: {self.rows!r}")
        if any(a < b for a, b in zip(self.rows, self.rows[1:])):
            raise ValueError(f"rows must be weakly decreasing: {self.rows!r}")

    @property
    def cells(self) -> int:
        return sum(self.rows)

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    @classmethod
    def two_row(cls, total: int, k: int) -> "Partition":
        """The diagram with ``total - k`` cells on top of ``k`` (a single
        row when k = 0)."""
        if not 0 <= k <= total - k:
            raise ValueError(f"need 0 <= k <= {total}-k, got k={k}")
        return cls((total,)) if k == 0 else cls((total - k, k))


def hook_lengths(p: Partition) -> list[list[int]]:
    """Hook length of every cell: 1 + cells to the right + cells below."""
    grid = []
    for i, row_len in enumerate(p.rows):
        row = []
        for j in range(row_len):
            arm = row_len - j - 1
            leg = sum(1 for r in p.rows[i + 1:] if r > j)
            row.append(arm + leg + 1)
        grid.append(row)
    return grid


def sym_group_dim(p: Partition) -> int:
    """Number of standard Young tableaux of shape ``p`` (hook-length
    formula); equals the symmetric-group irrep dimension."""
    hooks = 1
    for row in hook_lengths(p):
        for h in row:
            hooks *= h
    quotient, remainder = divmod(math.factorial(p.cells), hooks)
    assert remainder == 0, f"hook product does not divide {p.cells}! for {p}"
    return quotient


def unitary_dim(p: Partition, n: int) -> int:
    """Number of Weyl tableaux of shape ``p`` with entries in 1..n (Robinson
    formula); equals the U(n) irrep dimension.  Zero when the diagram has
    more rows than ``n``."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if p.num_rows > n:
        return 0
    numerator = 1
    hooks = 1
    hook_grid = hook_lengths(p)
    for i, row_len in enumerate(p.rows):
        for j in range(row_len):
            numerator *= n - i + j
            hooks *= hook_grid[i][j]
    quotient, remainder = divmod(numerator, hooks)
    assert remainder == 0, f"Robinson product not integral for {p}, n={n}"
    return quotient


def binomial(a: int, b: int) -> int:
    """C(a, b) with the out-of-range convention C(a, b) = 0 for b < 0 or
    b > a."""
    if a < 0:
        raise ValueError(f"need a >= 0, got {a}")
    if b < 0 or b > a:
        return 0
    return math.comb(a, b)


def log_gamma_half(x) -> float:
    """ln Gamma(x) for positive half-integer x, by exact recurrence from
    Gamma(1) = 1 and Gamma(1/2) = sqrt(pi).

    Accepts ints, Fractions, or floats representing an exact half-integer.
    """
    twice = Fraction(x) * 2
    if twice.denominator != 1:
        raise ValueError(f"argument must be a half-integer, got {x!r}")
    twice = int(twice)
    if twice <= 0:
        raise ValueError(f"argument must be positive, got {x!r}")
    if twice % 2 == 0:
        # Gamma(m) = (m-1)!
        return math.log(math.factorial(twice // 2 - 1)) if twice > 2 else 0.0
    # Gamma(m + 1/2) = sqrt(pi) * (2m-1)!! / 2^m
    m = twice // 2
    double_factorial = 1
    for odd in range(1, 2 * m, 2):
        double_factorial *= odd
    return 0.5 * math.log(math.pi) + math.log(double_factorial) - m * math.log(2.0)


def partitions(total: int, max_rows: int | None = None) -> Iterator[Partition]:
    """All partitions of ``total`` (optionally with at most ``max_rows``
    rows), largest first within each branch."""
    if total < 1:
        raise ValueError(f"need total >= 1, got {total}")
    rows_cap = total if max_rows is None else max_rows

    def rec(remaining: int, max_part: int, depth: int, prefix: list[int]):
        if remaining == 0:
            yield Partition(tuple(prefix))
            return
        if depth == rows_cap:
            return
        for part in range(min(max_part, remaining), 0, -1):
            prefix.append(part)
            yield from rec(remaining - part, part, depth + 1, prefix)
            prefix.pop()

    yield from rec(total, total, 0, [])
