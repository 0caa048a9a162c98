"""Jordan-block spectrum of the two mean input states.

The two averaged inputs are maximally mixed on products of symmetric
subspaces.  Their supports decompose into two-row blocks indexed by
k = 0..min(n_A, n_C); each block carries a single principal-angle cosine
O_k with multiplicity d^k.  Overlaps are exact rationals under the square
root; the Racah 6j evaluation provides an independent path to the same
numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

from .combinatorics import Partition, binomial, unitary_dim
from .errors import PreconditionError

PRIOR_TOL = 1e-12


def sym_space_dim(m: int, n: int) -> int:
    """Dimension of the fully symmetric subspace of m copies of C^n."""
    return binomial(n + m - 1, n - 1)


@dataclass(frozen=True)
class ProblemConfig:
    """Complete statement of a discrimination problem.

    ``n`` is the qudit dimension; ``n_a``/``n_c`` are the program copy
    counts, ``n_b`` the data copy count; ``eta1``/``eta2`` the priors of
    the two hypotheses.
    """

    n: int
    n_a: int
    n_b: int
    n_c: int
    eta1: float = 0.5
    eta2: float | None = None

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"qudit dimension must be >= 2, got {self.n}")
        for name in ("n_a", "n_b", "n_c"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1, got {getattr(self, name)}")
        if self.eta2 is None:
            object.__setattr__(self, "eta2", 1.0 - self.eta1)
        if self.eta1 < -PRIOR_TOL or self.eta2 < -PRIOR_TOL:
            raise ValueError(f"priors must be nonnegative: {self.eta1}, {self.eta2}")
        if abs(self.eta1 + self.eta2 - 1.0) > PRIOR_TOL:
            raise ValueError(f"priors must sum to 1: {self.eta1} + {self.eta2}")

    @property
    def n1(self) -> int:
        return self.n_a + self.n_b

    @property
    def n2(self) -> int:
        return self.n_b + self.n_c

    @property
    def total_copies(self) -> int:
        return self.n_a + self.n_b + self.n_c

    @property
    def d1(self) -> int:
        """Rank of the first mean state."""
        return sym_space_dim(self.n1, self.n) * sym_space_dim(self.n_c, self.n)

    @property
    def d2(self) -> int:
        """Rank of the second mean state."""
        return sym_space_dim(self.n_a, self.n) * sym_space_dim(self.n2, self.n)

    @property
    def k_max(self) -> int:
        return min(self.n_a, self.n_c)

    @property
    def is_canonical(self) -> bool:
        return self.n_a >= self.n_c


def canonicalize(cfg: ProblemConfig) -> tuple[ProblemConfig, bool]:
    """Relabel so that n_a >= n_c (which forces d1 <= d2).

    Swapping the two program registers exchanges the roles of the two
    hypotheses, so the priors swap with them.  Returns the (possibly
    unchanged) config and whether a swap happened.
    """
    if cfg.is_canonical:
        return cfg, False
    swapped = replace(cfg, n_a=cfg.n_c, n_c=cfg.n_a, eta1=cfg.eta2, eta2=cfg.eta1)
    return swapped, True


def _require_block(k: int, cfg: ProblemConfig) -> None:
    if not 0 <= k <= cfg.k_max:
        raise ValueError(f"block index {k} outside 0..{cfg.k_max}")


def overlap_sq(k: int, cfg: ProblemConfig) -> Fraction:
    """Exact square of the block-k principal-angle cosine."""
    _require_block(k, cfg)
    num = binomial(cfg.n1 - k, cfg.n_b) * binomial(cfg.n2 - k, cfg.n_b)
    den = binomial(cfg.n1, cfg.n_b) * binomial(cfg.n2, cfg.n_b)
    return Fraction(num, den)


def overlap(k: int, cfg: ProblemConfig) -> float:
    """Cosine O_k of the k-th principal angle between the two supports."""
    return math.sqrt(overlap_sq(k, cfg))


def multiplicity(k: int, cfg: ProblemConfig) -> int:
    """Number of Jordan pairs in block k; equals the U(n) dimension of the
    two-row diagram [N-k, k]."""
    _require_block(k, cfg)
    total = cfg.total_copies
    n = cfg.n
    value = (
        Fraction(total - 2 * k + 1, total - k + 1)
        * binomial(total + n - k - 1, n - 1)
        * binomial(n + k - 2, n - 2)
    )
    assert value.denominator == 1, f"multiplicity not integral for k={k}, {cfg}"
    return int(value)


@dataclass(frozen=True)
class JordanBlock:
    k: int
    overlap: float
    overlap_sq: Fraction
    multiplicity: int


@dataclass(frozen=True)
class JordanSpectrum:
    blocks: tuple[JordanBlock, ...]
    d1: int
    d2: int
    k_max: int


def jordan_spectrum(cfg: ProblemConfig) -> JordanSpectrum:
    """All Jordan blocks of a canonicalized config, with the bookkeeping
    identities asserted."""
    if not cfg.is_canonical:
        raise PreconditionError("jordan_spectrum expects n_a >= n_c; canonicalize first")
    blocks = tuple(
        JordanBlock(k, overlap(k, cfg), overlap_sq(k, cfg), multiplicity(k, cfg))
        for k in range(cfg.k_max + 1)
    )
    assert blocks[0].overlap_sq == 1
    assert all(b.overlap_sq > nxt.overlap_sq for b, nxt in zip(blocks, blocks[1:]))
    assert sum(b.multiplicity for b in blocks) == cfg.d1
    assert cfg.d1 <= cfg.d2
    return JordanSpectrum(blocks=blocks, d1=cfg.d1, d2=cfg.d2, k_max=cfg.k_max)


@dataclass(frozen=True)
class BlockPriors:
    """Occurrence probability of one Jordan pair and the conditional priors
    of the two hypotheses inside it."""

    p_block: float
    eta_block_1: float
    eta_block_2: float


def block_priors(cfg: ProblemConfig) -> BlockPriors:
    p1 = Fraction(cfg.eta1) / cfg.d1
    p2 = Fraction(cfg.eta2) / cfg.d2
    p = p1 + p2
    return BlockPriors(
        p_block=float(p),
        eta_block_1=float(p1 / p),
        eta_block_2=float(p2 / p),
    )


# --- Racah 6j evaluation (exact rational internals) ------------------------

def _as_twice(j) -> int:
    """Half-integer -> doubled integer; rejects anything else."""
    twice = Fraction(j) * 2
    if twice.denominator != 1 or twice < 0:
        raise ValueError(f"expected a nonnegative half-integer, got {j!r}")
    return int(twice)


def _triad_ok(a: int, b: int, c: int) -> bool:
    # doubled notation: perimeter even <=> integer sum of the j's
    return (a + b + c) % 2 == 0 and abs(a - b) <= c <= a + b


def _delta_sq(a: int, b: int, c: int) -> Fraction:
    fac = math.factorial
    return Fraction(
        fac((a + b - c) // 2) * fac((a - b + c) // 2) * fac((-a + b + c) // 2),
        fac((a + b + c) // 2 + 1),
    )


def wigner_6j(j1, j2, j3, j4, j5, j6) -> float:
    """Racah single-sum 6j symbol; 0 on any non-coupling triad.

    The alternating sum and the triangle factors are carried as exact
    rationals, with a single square root at the float boundary.
    """
    a, b, c, d, e, f = (_as_twice(j) for j in (j1, j2, j3, j4, j5, j6))
    triads = ((a, b, c), (a, e, f), (d, b, f), (d, e, c))
    if not all(_triad_ok(*t) for t in triads):
        return 0.0
    fac = math.factorial
    triad_sums = [sum(t) // 2 for t in triads]
    pair_sums = [(a + b + d + e) // 2, (b + c + e + f) // 2, (a + c + d + f) // 2]
    series = Fraction(0)
    for t in range(max(triad_sums), min(pair_sums) + 1):
        term = Fraction(
            fac(t + 1),
            math.prod(fac(t - s) for s in triad_sums)
            * math.prod(fac(p - t) for p in pair_sums),
        )
        series += -term if t % 2 else term
    radicand = math.prod((_delta_sq(*t) for t in triads), start=Fraction(1))
    return float(series) * math.sqrt(float(radicand))


def overlap_via_6j(k: int, cfg: ProblemConfig) -> float:
    """Block overlap through the angular-momentum recoupling route; must
    agree with :func:`overlap` to 1e-12."""
    _require_block(k, cfg)
    half = Fraction(1, 2)
    j_a, j_b, j_c = cfg.n_a * half, cfg.n_b * half, cfg.n_c * half
    j_ab, j_bc = cfg.n1 * half, cfg.n2 * half
    J = cfg.total_copies * half - k
    phase_exponent = j_a + j_b + j_c + J  # always an integer here
    assert phase_exponent.denominator == 1
    sign = -1.0 if int(phase_exponent) % 2 else 1.0
    prefactor = math.sqrt((cfg.n1 + 1) * (cfg.n2 + 1))
    return sign * prefactor * wigner_6j(j_a, j_b, j_ab, j_c, J, j_bc)


def closed_form_matches_robinson(k: int, cfg: ProblemConfig) -> bool:
    """Cross-check hook: table multiplicity vs the Robinson formula."""
    shape = Partition.two_row(cfg.total_copies, k)
    return multiplicity(k, cfg) == unitary_dim(shape, cfg.n)
