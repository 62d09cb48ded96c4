"""
Unit tests for the polynomial families P_{n;j}.

Tests cover:
- seeds, truncation and stored reference tables
- the eigenvalue ODE for every generated member
- agreement with direct application of the ladder operators
- the kernel of the ladder operators and the indicial check
"""

import json
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import pytest
import sympy as sp

from src.exactalg import Polynomial
from src.genhermite import gh
from src.model import ModelParams, ladder_csq
from src.ppoly import (
    derivative_relations,
    indicial_check,
    indicial_exponents,
    kernel_residuals,
    lower_oracle,
    ode_residual,
    ppoly,
    ppoly_sequence,
    r_function,
    raise_oracle,
    recurrence_coefficients,
    table_form,
)

GOLDEN = Path(__file__).parent / "golden"

SMALL = [(p, q) for p in range(0, 4) for q in (1, 2)]


def _golden(name: str) -> list[dict]:
    return json.loads((GOLDEN / f"{name}.json").read_text())["entries"]


def _levels(p: int, j: int, depth: int = 4) -> range:
    return range(p + 1) if j == 1 else range(depth + 1)


class TestSeedsAndTruncation:
    """Ground states and the end of the finite ladder."""

    @pytest.mark.parametrize("p,q", SMALL)
    def test_seeds(self, p, q):
        assert ppoly(p, q, 1, 0) == gh(p, 2 * q)
        assert ppoly(p, q, 2, 0) == gh(p + 1, 2 * q + 1)

    @pytest.mark.parametrize("p,q", SMALL)
    def test_finite_ladder_stops(self, p, q):
        assert ppoly(p, q, 1, p + 1).is_zero
        assert ppoly(p, q, 1, p + 3).is_zero

    @pytest.mark.parametrize("p,q", [(1, 1), (2, 1), (3, 1), (2, 2)])
    def test_top_of_finite_ladder(self, p, q):
        """P_{p;1} is H_{p,2q+1} up to a constant."""
        top = table_form(ppoly(p, q, 1, p))
        anchor = table_form(gh(p, 2 * q + 1))
        assert top in (anchor, -anchor)

    def test_raw_normalization(self):
        """A† acts on μP_0 without rescaling: P_{1;1}^{(2,1)} = −32(4x⁵ + 4x³ + 3x)."""
        assert ppoly(2, 1, 1, 1) == Polynomial([0, -96, 0, -128, 0, -128])

    def test_needs_positive_q(self):
        with pytest.raises(ValueError):
            ppoly(2, 0, 1, 0)

    def test_unknown_sequence(self):
        with pytest.raises(ValueError):
            ppoly(2, 1, 3, 0)

    def test_sequence_length(self):
        assert len(ppoly_sequence(2, 1, 1, 8)) == 3
        assert len(ppoly_sequence(2, 1, 2, 4)) == 5

    def test_memoized(self):
        assert ppoly(1, 1, 2, 2) is ppoly(1, 1, 2, 2)

    def test_concurrent_callers_agree(self):
        keys = [(2, 2, 2, 2)] * 4 + [(3, 1, 1, 2)] * 4
        with ThreadPoolExecutor(max_workers=4) as pool:
            results = list(pool.map(lambda key: ppoly(*key), keys))
        assert len({result.coeffs for result in results[:4]}) == 1
        assert len({result.coeffs for result in results[4:]}) == 1


class TestReferenceTables:
    """Primitive integer forms of the tabulated members."""

    @pytest.mark.parametrize("name", ["table2", "table3"])
    def test_matches_golden(self, name):
        for entry in _golden(name):
            poly = ppoly(entry["p"], entry["q"], entry["j"], entry["n"])
            assert table_form(poly).to_json() == entry["coefficients"], entry

    def test_first_entry(self):
        assert table_form(ppoly(2, 1, 1, 1)) == Polynomial([0, -3, 0, -4, 0, -4])


class TestStructure:
    """Degrees and parity."""

    @pytest.mark.parametrize("p,q", SMALL)
    def test_degrees(self, p, q):
        for n in range(p + 1):
            assert ppoly(p, q, 1, n).degree == 2 * p * q + n
        for n in range(4):
            assert ppoly(p, q, 2, n).degree == (p + 1) * (2 * q + 1) + n

    @pytest.mark.parametrize("p,q", [(1, 1), (2, 1), (2, 2)])
    def test_parity(self, p, q):
        for j in (1, 2):
            for n in _levels(p, j):
                poly = ppoly(p, q, j, n)
                sign = 1 if poly.degree % 2 == 0 else -1
                assert poly.reflect() == poly * sign


class TestEigenvalueEquation:
    """Every generated member solves the ODE at its own energy."""

    @pytest.mark.parametrize("p,q", SMALL)
    @pytest.mark.parametrize("j", [1, 2])
    def test_residual_zero(self, p, q, j):
        for n in _levels(p, j):
            assert ode_residual(p, q, j, n).is_zero, (j, n)

    def test_wrong_energy(self):
        assert not ode_residual(2, 1, 1, 0, E=2).is_zero


class TestLadderOracle:
    """The recurrence agrees with A† and A applied directly."""

    @pytest.mark.parametrize("p,q", SMALL)
    @pytest.mark.parametrize("j", [1, 2])
    def test_raise(self, p, q, j):
        top = p if j == 1 else 4
        for n in range(top + 1):
            assert raise_oracle(p, q, j, n) == ppoly(p, q, j, n + 1), (j, n)

    def test_raise_off_the_top(self):
        assert raise_oracle(2, 1, 1, 2).is_zero

    def test_raise_beyond_finite_ladder(self):
        with pytest.raises(ValueError):
            raise_oracle(2, 1, 1, 3)

    @pytest.mark.parametrize("p,q", SMALL)
    @pytest.mark.parametrize("j", [1, 2])
    def test_lower(self, p, q, j):
        params = ModelParams(p, q)
        top = p if j == 1 else 4
        for n in range(1, top + 1):
            expected = ppoly(p, q, j, n - 1) * ladder_csq(params, j, n)
            assert lower_oracle(p, q, j, n) == expected, (j, n)

    @pytest.mark.parametrize("j", [1, 2])
    def test_lower_annihilates_ground_state(self, j):
        assert lower_oracle(2, 1, j, 0).is_zero


class TestRecurrence:
    """Coefficients of the three-term recurrence."""

    @pytest.mark.parametrize("p,q,j,n", [(0, 1, 2, 0), (0, 1, 2, 1), (1, 1, 1, 0), (2, 1, 1, 0)])
    def test_lowering_coefficient_is_r(self, p, q, j, n):
        assert derivative_relations(p, q, j, n).e == r_function(p, q, j, n)

    def test_ground_level_has_no_previous_term(self):
        assert recurrence_coefficients(2, 1, 1, 0).c_prev.is_zero


class TestKernel:
    """Non-normalizable kernel members and the indicial check."""

    @pytest.mark.parametrize("p,q", [(0, 1), (1, 1), (2, 1), (1, 2)])
    def test_kernel_annihilated(self, p, q):
        residuals = kernel_residuals(p, q)
        assert set(residuals) == {"phi_0;2", "Phi_0;1", "Phi_0;3"}
        assert all(value.is_zero for value in residuals.values())

    @pytest.mark.parametrize("p,q", [(0, 1), (1, 1), (2, 1), (1, 2)])
    def test_indicial(self, p, q):
        report = indicial_check(p, q)
        assert report.squarefree
        assert report.exponents == (0, 3)
        assert report.passed

    def test_indicial_trivial_for_oscillator(self):
        report = indicial_check(3, 0)
        assert report.exponents == ()
        assert report.passed

    def test_simple_zeros_give_zero_and_three(self):
        assert indicial_exponents(gh(2, 2)) == (0, 3)

    def test_double_zeros_move_the_exponents(self):
        """(x² + 1)² has double zeros: ℓ² − 5ℓ + 2 = 0."""
        root = sp.sqrt(17)
        expected = ((5 - root) / 2, (5 + root) / 2)
        exponents = indicial_exponents(Polynomial([1, 0, 1]) ** 2)
        assert len(exponents) == 2
        assert all(sp.simplify(a - b) == 0 for a, b in zip(exponents, expected))

    def test_mixed_multiplicities(self):
        exponents = indicial_exponents(Polynomial([1, 0, 1]) ** 2 * Polynomial([0, 1]))
        assert len(exponents) == 4
        assert {0, 3} <= set(exponents)

    def test_constant_has_no_exponents(self):
        assert indicial_exponents(Polynomial([5])) == ()
