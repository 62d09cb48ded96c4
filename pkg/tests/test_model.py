"""
Unit tests for the Hamiltonian of a single (p, q) pair.

Tests cover:
- derived constants and validation
- potential, its PIV form and the weight
- energies, ladder constants and relative norms
- zero modes and the non-normalizable kernel
"""

from fractions import Fraction

import numpy as np
import pytest

from src.errors import OutOfSequence
from src.exactalg import Polynomial, RationalFunction
from src.genhermite import real_zero_count
from src.model import (
    ModelParams,
    describe,
    energy,
    has_regular_weight,
    ladder_csq,
    ladder_cubic,
    nonnormalizable_modes,
    potential,
    potential_from_w,
    rel_normsq,
    sample_grid,
    sample_state,
    spectrum,
    weight,
    zero_mode_polys,
)

GRID = [(p, q) for p in range(0, 4) for q in range(0, 3)]


class TestModelParams:
    """Derived constants of the pair (p, q)."""

    def test_constants(self):
        params = ModelParams(2, 1)
        assert params.alpha == 7
        assert params.beta == -8
        assert params.gamma == 6
        assert params.d == -4
        assert params.eps1 == 8
        assert params.eps2 == 4
        assert params.gap == 6

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            ModelParams(-1, 0)

    def test_to_dict(self):
        assert ModelParams(1, 2).to_dict()["alpha"] == 7

    def test_hashable(self):
        assert len({ModelParams(1, 1), ModelParams(1, 1)}) == 1


class TestPotential:
    """V(x) and its two constructions."""

    def test_harmonic_oscillator(self):
        V = potential(ModelParams(0, 0))
        assert V.offset == -1
        assert V.rational.is_zero

    def test_rational_part(self):
        """V_{1,1} − x² − 3 = (128x⁶ − 288x²)/(4x⁴ + 3)²."""
        V = potential(ModelParams(1, 1))
        expected = RationalFunction(
            Polynomial([0, 0, -288, 0, 0, 0, 128]), Polynomial([3, 0, 0, 0, 4]) ** 2
        )
        assert V.offset == 3
        assert V.rational == expected

    @pytest.mark.parametrize("p,q", [(0, 0), (0, 1), (1, 1), (2, 1), (1, 2)])
    def test_piv_form_agrees(self, p, q):
        params = ModelParams(p, q)
        assert potential_from_w(params) == potential(params)

    @pytest.mark.parametrize("p,q", GRID)
    def test_no_real_poles(self, p, q):
        assert real_zero_count(potential(ModelParams(p, q)).rational.den) == 0

    def test_evaluate_at_origin(self):
        """V_{0,1}(0) = 3 − 8."""
        value = potential(ModelParams(0, 1)).evaluate(np.array([0.0]))
        assert value[0] == pytest.approx(-5.0)

    def test_confining(self):
        V = potential(ModelParams(2, 1))
        assert V.evaluate(np.array([20.0]))[0] > 390.0


class TestWeight:
    """μ(x) = e^{−x²/2}/H_{p+1,2q}."""

    @pytest.mark.parametrize("p,q", GRID)
    def test_regular(self, p, q):
        assert has_regular_weight(ModelParams(p, q))

    def test_value_at_origin(self):
        assert weight(ModelParams(0, 1)).evaluate(0.0) == pytest.approx(0.5)

    def test_decays(self):
        mu = weight(ModelParams(1, 1)).evaluate(np.array([0.0, 6.0]))
        assert mu[1] < 1e-8 * mu[0]


class TestSpectrum:
    """Energies of both sequences."""

    def test_levels(self):
        params = ModelParams(2, 1)
        assert [energy(params, 1, n) for n in range(3)] == [0, 2, 4]
        assert [energy(params, 2, n) for n in range(3)] == [10, 12, 14]

    def test_harmonic_oscillator(self):
        points = spectrum(ModelParams(0, 0), nmax=3)
        assert [pt.energy for pt in points] == [0, 2, 4, 6, 8]

    def test_spectrum_order(self):
        points = spectrum(ModelParams(1, 2), nmax=1)
        assert [(pt.j, pt.n, pt.energy) for pt in points] == [
            (1, 0, 0),
            (1, 1, 2),
            (2, 0, 12),
            (2, 1, 14),
        ]

    @pytest.mark.parametrize("p,q", GRID)
    def test_gap(self, p, q):
        params = ModelParams(p, q)
        assert energy(params, 2, 0) - energy(params, 1, p) == 4 * q + 2 == params.gap

    def test_finite_sequence_bound(self):
        with pytest.raises(OutOfSequence):
            energy(ModelParams(2, 1), 1, 3)

    def test_unknown_sequence(self):
        with pytest.raises(ValueError):
            energy(ModelParams(2, 1), 3, 0)

    def test_point_to_dict(self):
        point = spectrum(ModelParams(2, 1), nmax=0)[1]
        assert point.to_dict() == {"j": 1, "n": 1, "E": 2, "Csq": "64", "relNormSq": "64"}


class TestLadderConstants:
    """C²_{n;j} and the relative norms."""

    def test_values(self):
        params = ModelParams(2, 1)
        assert ladder_csq(params, 1, 0) == 0
        assert ladder_csq(params, 1, 1) == 64
        assert ladder_csq(params, 1, 3) == 0
        assert ladder_csq(params, 2, 1) == 144

    def test_beyond_truncation(self):
        with pytest.raises(OutOfSequence):
            ladder_csq(ModelParams(2, 1), 1, 4)

    @pytest.mark.parametrize("p,q", GRID)
    def test_cubic_matches_constants(self, p, q):
        """C²_{n+1;j} = (E_n + 2)(E_n − ε₁)(E_n − ε₂)."""
        params = ModelParams(p, q)
        for n in range(p + 1):
            assert ladder_csq(params, 1, n + 1) == ladder_cubic(params, energy(params, 1, n))
        for n in range(5):
            assert ladder_csq(params, 2, n + 1) == ladder_cubic(params, energy(params, 2, n))

    @pytest.mark.parametrize("p,q", GRID)
    def test_norm_ratios_telescope(self, p, q):
        params = ModelParams(p, q)
        for n in range(p):
            ratio = rel_normsq(params, 1, n + 1) / rel_normsq(params, 1, n)
            assert ratio == ladder_csq(params, 1, n + 1)
        for n in range(5):
            ratio = rel_normsq(params, 2, n + 1) / rel_normsq(params, 2, n)
            assert ratio == ladder_csq(params, 2, n + 1)

    def test_relative_norms(self):
        params = ModelParams(2, 1)
        assert rel_normsq(params, 1, 0) == 1
        assert rel_normsq(params, 1, 1) == 64
        assert rel_normsq(params, 2, 1) == 144

    def test_norm_beyond_truncation(self):
        with pytest.raises(OutOfSequence):
            rel_normsq(ModelParams(2, 1), 1, 3)

    def test_cubic_returns_fraction(self):
        assert ladder_cubic(ModelParams(0, 0), Fraction(1, 2)) == Fraction(5, 2) * Fraction(1, 4)


class TestZeroModes:
    """Anchors of the three ladders."""

    def test_values(self):
        ground, top, second = zero_mode_polys(ModelParams(2, 1))
        assert ground == Polynomial([12, 0, 0, 0, 16])
        assert top == Polynomial([-72, 0, 144, 0, 96, 0, 64])
        assert second == Polynomial([0, -4320, 0, 0, 0, 2304, 0, 0, 0, 512])

    @pytest.mark.parametrize("p,q", GRID)
    def test_node_counts(self, p, q):
        """The anchors have 0, p and p+1 real zeros."""
        polys = zero_mode_polys(ModelParams(p, q))
        assert [real_zero_count(poly) for poly in polys] == [0, p, p + 1]

    def test_kernel_modes(self):
        modes = nonnormalizable_modes(ModelParams(1, 1))
        assert [mode.label for mode in modes] == ["phi_0;2", "Phi_0;1", "Phi_0;3"]
        assert [mode.energy for mode in modes] == [4, 6, -2]
        assert modes[0].poly == Polynomial([0, -12, 0, 8])
        assert modes[1].poly == Polynomial([-2, 0, 4])
        assert modes[2].poly == Polynomial([72, 0, 144, 0, -96, 0, 64])
        assert all(mode.gaussian_sign == 1 for mode in modes)

    def test_kernel_needs_positive_q(self):
        with pytest.raises(ValueError):
            nonnormalizable_modes(ModelParams(2, 0))


class TestSampling:
    """Float grids and JSON summaries."""

    def test_grid(self):
        xs = sample_grid(-1.0, 1.0, 5)
        assert xs.tolist() == [-1.0, -0.5, 0.0, 0.5, 1.0]

    @pytest.mark.parametrize("xmin,xmax,samples", [(1.0, 1.0, 5), (0.0, 1.0, 1)])
    def test_invalid_grid(self, xmin, xmax, samples):
        with pytest.raises(ValueError):
            sample_grid(xmin, xmax, samples)

    def test_ground_state(self):
        """φ_{0;1} = e^{−x²/2} for the oscillator."""
        xs = np.array([0.0, 1.0])
        values = sample_state(ModelParams(0, 0), Polynomial([1]), xs)
        assert values == pytest.approx(np.exp(-xs * xs / 2))

    def test_describe(self):
        params = ModelParams(1, 1)
        summary = describe(params, nmax=2, xs=sample_grid(-1.0, 1.0, 3))
        assert summary["gap"] == 6
        assert len(summary["spectrum"]) == 5
        assert summary["samples"]["x"] == [-1.0, 0.0, 1.0]
