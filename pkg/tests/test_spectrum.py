"""Jordan-block spectrum: overlaps, multiplicities, priors, 6j symbols."""

from fractions import Fraction
from itertools import product

import pytest
from sympy import Rational
from sympy.physics.wigner import wigner_6j as sympy_6j

from qudisc.combinatorics import Partition, unitary_dim
from qudisc.errors import PreconditionError
from qudisc.spectrum import (
    ProblemConfig,
    block_priors,
    canonicalize,
    jordan_spectrum,
    multiplicity,
    overlap,
    overlap_sq,
    overlap_via_6j,
    sym_space_dim,
    wigner_6j,
)


class TestProblemConfig:
    def test_derived_quantities(self):
        cfg = ProblemConfig(2, 2, 1, 1, 0.5)
        assert (cfg.n1, cfg.n2, cfg.total_copies) == (3, 2, 4)
        assert (cfg.d1, cfg.d2) == (8, 9)
        assert cfg.k_max == 1
        assert cfg.eta2 == 0.5

    def test_validation(self):
        with pytest.raises(ValueError):
            ProblemConfig(1, 1, 1, 1, 0.5)  # qudit dimension too small
        with pytest.raises(ValueError):
            ProblemConfig(2, 0, 1, 1, 0.5)
        with pytest.raises(ValueError):
            ProblemConfig(2, 1, 1, 1, 0.7, 0.4)  # priors do not sum to 1
        with pytest.raises(ValueError):
            ProblemConfig(2, 1, 1, 1, -0.1)

    def test_explicit_eta2(self):
        cfg = ProblemConfig(2, 1, 1, 1, 0.25, 0.75)
        assert cfg.eta2 == 0.75

    def test_canonicalize_swaps_registers_and_priors(self):
        cfg = ProblemConfig(2, 1, 2, 3, 0.1)
        canonical, swapped = canonicalize(cfg)
        assert swapped
        assert (canonical.n_a, canonical.n_b, canonical.n_c) == (3, 2, 1)
        assert canonical.eta1 == pytest.approx(0.9)
        assert canonical.d1 <= canonical.d2

    def test_canonicalize_is_identity_on_canonical_input(self):
        cfg = ProblemConfig(2, 2, 1, 1, 0.5)
        canonical, swapped = canonicalize(cfg)
        assert not swapped
        assert canonical == cfg


def test_sym_space_dim_small_values():
    assert sym_space_dim(1, 2) == 2
    assert sym_space_dim(2, 2) == 3
    assert sym_space_dim(3, 4) == 20


class TestOverlap:
    def test_k0_is_always_one(self):
        for n, n_a, n_b, n_c in [(2, 1, 1, 1), (3, 2, 1, 2), (4, 3, 2, 1)]:
            assert overlap_sq(0, ProblemConfig(n, n_a, n_b, n_c, 0.5)) == 1

    def test_all_ones_k1(self):
        # C(1,1)C(1,1)/(C(2,1)C(2,1)) = 1/4
        assert overlap_sq(1, ProblemConfig(2, 1, 1, 1, 0.5)) == Fraction(1, 4)
        assert overlap(1, ProblemConfig(5, 1, 1, 1, 0.5)) == pytest.approx(0.5)

    def test_2211_k1(self):
        # C(2,1)C(1,1)/(C(3,1)C(2,1)) = 1/3
        assert overlap_sq(1, ProblemConfig(2, 2, 1, 1, 0.5)) == Fraction(1, 3)

    def test_overlap_is_dimension_independent(self):
        for n in (2, 3, 7):
            assert overlap_sq(1, ProblemConfig(n, 2, 2, 1, 0.5)) == Fraction(
                overlap_sq(1, ProblemConfig(2, 2, 2, 1, 0.5))
            )

    def test_invalid_block_rejected(self):
        cfg = ProblemConfig(2, 2, 1, 1, 0.5)
        with pytest.raises(ValueError):
            overlap_sq(2, cfg)  # k_max = 1
        with pytest.raises(ValueError):
            overlap_sq(-1, cfg)


class TestMultiplicity:
    def test_known_values(self):
        assert multiplicity(0, ProblemConfig(2, 1, 1, 1, 0.5)) == 4
        assert multiplicity(1, ProblemConfig(2, 1, 1, 1, 0.5)) == 2
        assert multiplicity(1, ProblemConfig(3, 1, 1, 1, 0.5)) == 8
        assert multiplicity(0, ProblemConfig(3, 1, 1, 1, 0.5)) == 10

    @pytest.mark.parametrize("n", (2, 3, 4, 5))
    def test_matches_robinson_formula(self, n):
        for n_a, n_b, n_c in product((1, 2, 3), repeat=3):
            cfg, _ = canonicalize(ProblemConfig(n, n_a, n_b, n_c, 0.5))
            for k in range(cfg.k_max + 1):
                shape = Partition.two_row(cfg.total_copies, k)
                assert multiplicity(k, cfg) == unitary_dim(shape, n)


class TestJordanSpectrum:
    def test_all_ones_blocks(self):
        spec = jordan_spectrum(ProblemConfig(2, 1, 1, 1, 0.5))
        assert [(b.k, b.overlap, b.multiplicity) for b in spec.blocks] == [
            (0, 1.0, 4),
            (1, 0.5, 2),
        ]
        assert spec.d1 == spec.d2 == 6

    def test_rank_sum_identity_over_grid(self):
        for n in (2, 3, 4):
            for n_a, n_b, n_c in product((1, 2, 3), repeat=3):
                cfg, _ = canonicalize(ProblemConfig(n, n_a, n_b, n_c, 0.5))
                spec = jordan_spectrum(cfg)
                assert sum(b.multiplicity for b in spec.blocks) == spec.d1
                assert spec.d1 <= spec.d2
                overlaps = [b.overlap_sq for b in spec.blocks]
                assert overlaps == sorted(overlaps, reverse=True)
                assert overlaps[0] == 1

    def test_requires_canonical_config(self):
        with pytest.raises(PreconditionError):
            jordan_spectrum(ProblemConfig(2, 1, 1, 2, 0.5))


def test_block_priors_even_case():
    priors = block_priors(ProblemConfig(2, 2, 1, 1, 0.5))
    assert priors.p_block == pytest.approx(17 / 144, abs=1e-15)
    assert priors.eta_block_1 == pytest.approx(9 / 17, abs=1e-15)
    assert priors.eta_block_1 + priors.eta_block_2 == pytest.approx(1.0, abs=1e-15)


class TestWigner6j:
    def test_textbook_value(self):
        assert wigner_6j(0.5, 0.5, 1, 0.5, 0.5, 1) == pytest.approx(1 / 6, abs=1e-15)

    def test_broken_triangle_is_zero(self):
        assert wigner_6j(1, 1, 3, 1, 1, 1) == 0.0

    def test_delta_pattern(self):
        # {j 0 j; j' J j'} = (-1)^{j+j'+J} / sqrt((2j+1)(2j'+1))
        val = wigner_6j(1, 0, 1, 1.5, 0.5, 1.5)
        assert val == pytest.approx(-1 / (3 * 4) ** 0.5, abs=1e-15)

    def test_rejects_non_half_integers(self):
        with pytest.raises(ValueError):
            wigner_6j(0.4, 0.5, 1, 0.5, 0.5, 1)

    @pytest.mark.parametrize("seed_row", range(6))
    def test_against_independent_symbolic_evaluation(self, seed_row):
        # cross-library oracle: sympy evaluates the same symbols symbolically
        half = Rational(1, 2)
        js = [seed_row * half + extra for extra in (0, half, 1, 2)]
        for j1, j2, j4, j5 in product(js, repeat=4):
            for j3 in (abs(j1 - j2), j1 + j2):
                for j6 in (abs(j1 - j5), j1 + j5):
                    try:
                        expected = float(sympy_6j(j1, j2, j3, j4, j5, j6).evalf(20))
                    except ValueError:  # sympy rejects broken triads outright
                        expected = 0.0
                    got = wigner_6j(j1, j2, j3, j4, j5, j6)
                    assert got == pytest.approx(expected, abs=1e-13)


def test_recoupling_route_matches_binomial_route():
    for n in (2, 3, 4, 5, 6):
        for n_a, n_b, n_c in product((1, 2, 3, 4), repeat=3):
            cfg, _ = canonicalize(ProblemConfig(n, n_a, n_b, n_c, 0.5))
            for k in range(cfg.k_max + 1):
                assert overlap_via_6j(k, cfg) == pytest.approx(
                    overlap(k, cfg), abs=1e-12
                )
