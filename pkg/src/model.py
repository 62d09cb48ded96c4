"""One Hamiltonian of the third-order shape-invariant family.

For a pair (p, q) this module assembles the potential

    V(x) = x² + 4q − 1 − 2 (ln H_{p+1,2q})''

the weight μ(x) = e^{−x²/2} / H_{p+1,2q}(x), the gapped spectrum
{2n : n ≤ p} ∪ {2n + 2p + 4q + 2 : n ≥ 0}, the squared ladder constants,
the relative squared norms and the zero-mode polynomials. Everything here is
exact; absolute norms are left to the numerical layer.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np
import sympy as sp

from src.errors import OutOfSequence
from src.exactalg import Polynomial, RationalFunction, logderiv
from src.genhermite import gh, real_zero_count
from src.painleve4 import regular_w

logger = logging.getLogger(__name__)

SEQUENCES = (1, 2)


@dataclass(frozen=True)
class ModelParams:
    """The pair (p, q); q = 0 is the harmonic-oscillator degeneration."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise ValueError(f"p and q must be nonnegative, got ({self.p}, {self.q})")

    @property
    def alpha(self) -> int:
        return 2 * self.p + 2 * self.q + 1

    @property
    def beta(self) -> int:
        return -8 * self.q * self.q

    @property
    def gamma(self) -> int:
        return 2 * self.p + 2 * self.q

    @property
    def d(self) -> int:
        return -4 * self.q * self.q

    @property
    def eps1(self) -> int:
        return 2 * self.p + 4 * self.q

    @property
    def eps2(self) -> int:
        return 2 * self.p

    @property
    def gap(self) -> int:
        """Distance between the top of the finite ladder and the infinite one."""
        return 4 * self.q + 2

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "alpha": self.alpha,
            "beta": self.beta,
            "gamma": self.gamma,
            "d": self.d,
            "eps1": self.eps1,
            "eps2": self.eps2,
        }


@dataclass(frozen=True)
class SpectralPoint:
    j: int
    n: int
    energy: int
    csq: Fraction          # C²_{n;j}, zero on the ground state
    rel_normsq: Fraction   # N²_{n;j} / N²_{0;j}

    def to_dict(self) -> dict:
        return {
            "j": self.j,
            "n": self.n,
            "E": self.energy,
            "Csq": str(self.csq),
            "relNormSq": str(self.rel_normsq),
        }


@dataclass(frozen=True)
class Potential:
    """V(x) = x² + offset + rational(x)."""

    offset: Fraction
    rational: RationalFunction

    def evaluate(self, xs):
        xs = np.asarray(xs, dtype=float)
        return xs * xs + float(self.offset) + self.rational(xs)

    def to_dict(self) -> dict:
        return {"quadratic": f"x^2 + {self.offset}", "rational": self.rational.to_json()}


@dataclass(frozen=True)
class WeightFunction:
    """e^{sign·x²/2} · rational(x)."""

    rational: RationalFunction
    gaussian_sign: int = -1

    def evaluate(self, xs):
        xs = np.asarray(xs, dtype=float)
        return np.exp(self.gaussian_sign * xs * xs / 2.0) * self.rational(xs)


@dataclass(frozen=True)
class KernelMode:
    """A non-normalizable solution e^{sign·x²/2} poly / H_{p+1,2q} with eigenvalue energy."""

    poly: Polynomial
    gaussian_sign: int
    energy: int
    label: str


def _check_sequence(j: int) -> None:
    if j not in SEQUENCES:
        raise ValueError(f"sequence index j must be 1 or 2, got {j}")


def weight_polynomial(params: ModelParams) -> Polynomial:
    """H_{p+1,2q}, the nodeless denominator of μ."""
    return gh(params.p + 1, 2 * params.q)


def potential(params: ModelParams) -> Potential:
    h = weight_polynomial(params)
    rational = logderiv(h).derivative() * (-2)
    return Potential(offset=Fraction(4 * params.q - 1), rational=rational)


def potential_from_w(params: ModelParams) -> Potential:
    """V = x² − 1 − (w' − 2xw − w²) with w the regular PIV solution."""
    w = regular_w(params.p, params.q).w
    x = RationalFunction.x()
    rest = -(w.derivative() - x * w * 2 - w * w)
    return Potential(offset=Fraction(4 * params.q - 1), rational=rest - 4 * params.q)


def weight(params: ModelParams) -> WeightFunction:
    return WeightFunction(rational=RationalFunction(1, weight_polynomial(params)))


def has_regular_weight(params: ModelParams) -> bool:
    return real_zero_count(weight_polynomial(params)) == 0


def energy(params: ModelParams, j: int, n: int) -> int:
    _check_sequence(j)
    if n < 0:
        raise ValueError(f"level index must be nonnegative, got {n}")
    if j == 1:
        if n > params.p:
            raise OutOfSequence(j, n, params.p)
        return 2 * n
    return 2 * n + 2 * params.p + 4 * params.q + 2


def ladder_cubic(params: ModelParams, E) -> Fraction:
    """(E + 2)(E − ε₁)(E − ε₂), the spectral image of A A†."""
    E = Fraction(E)
    return (E + 2) * (E - params.eps1) * (E - params.eps2)


def ladder_csq(params: ModelParams, j: int, n: int) -> Fraction:
    """C²_{n;j}, the squared constant in A† φ_{n−1;j} = C_{n;j} φ_{n;j}."""
    _check_sequence(j)
    if n < 0:
        raise ValueError(f"level index must be nonnegative, got {n}")
    p, q = params.p, params.q
    if j == 1:
        if n > p + 1:
            raise OutOfSequence(j, n, p + 1)
        return Fraction(8 * n * (p + 2 * q - n + 1) * (p - n + 1))
    return Fraction(8 * n * (n + 2 * q) * (n + p + 2 * q + 1))


def _pochhammer(a: int, n: int) -> int:
    return int(sp.rf(a, n))


def rel_normsq(params: ModelParams, j: int, n: int) -> Fraction:
    """N²_{n;j} / N²_{0;j} as a product of Pochhammer symbols."""
    _check_sequence(j)
    if n < 0:
        raise ValueError(f"level index must be nonnegative, got {n}")
    p, q = params.p, params.q
    if j == 1:
        if n > p:
            raise OutOfSequence(j, n, p)
        value = _pochhammer(-p, n) * _pochhammer(-p - 2 * q, n)
    else:
        value = _pochhammer(2 * q + 1, n) * _pochhammer(2 * q + p + 2, n)
    return Fraction(8**n * int(sp.factorial(n)) * value)


def spectrum(params: ModelParams, nmax: int) -> list[SpectralPoint]:
    """The whole finite ladder followed by levels 0..nmax of the infinite one."""
    if nmax < 0:
        raise ValueError(f"nmax must be nonnegative, got {nmax}")
    points = []
    for j, top in ((1, params.p), (2, nmax)):
        for n in range(top + 1):
            points.append(
                SpectralPoint(
                    j=j,
                    n=n,
                    energy=energy(params, j, n),
                    csq=ladder_csq(params, j, n),
                    rel_normsq=rel_normsq(params, j, n),
                )
            )
    logger.debug("Spectrum for %s: %d levels", params, len(points))
    return points


def zero_mode_polys(params: ModelParams) -> tuple[Polynomial, Polynomial, Polynomial]:
    """Polynomial parts of the anchors with E = 0, 2p and 2p + 4q + 2."""
    p, q = params.p, params.q
    return gh(p, 2 * q), gh(p, 2 * q + 1), gh(p + 1, 2 * q + 1)


def nonnormalizable_modes(params: ModelParams) -> list[KernelMode]:
    """The kernel members of A and A† that are not square integrable."""
    p, q = params.p, params.q
    if q < 1:
        raise ValueError(f"the non-normalizable kernel needs q >= 1, got {q}")
    return [
        # E = γ + 2 − √(−d)
        KernelMode(gh(p + 2, 2 * q - 1), gaussian_sign=1, energy=2 * p + 2, label="phi_0;2"),
        KernelMode(gh(p + 1, 2 * q - 1), gaussian_sign=1, energy=2 * p + 4 * q, label="Phi_0;1"),
        KernelMode(gh(p + 2, 2 * q), gaussian_sign=1, energy=-2, label="Phi_0;3"),
    ]


def sample_state(
    params: ModelParams, poly: Polynomial, xs, gaussian_sign: int = -1
) -> np.ndarray:
    """φ(x) = e^{sign·x²/2} poly(x) / H_{p+1,2q}(x) on a float grid."""
    w = WeightFunction(RationalFunction(poly, weight_polynomial(params)), gaussian_sign)
    return w.evaluate(xs)


def sample_grid(xmin: float, xmax: float, samples: int) -> np.ndarray:
    if samples < 2 or xmax <= xmin:
        raise ValueError(f"invalid grid [{xmin}, {xmax}] with {samples} samples")
    return np.linspace(xmin, xmax, samples)


def describe(params: ModelParams, nmax: int, xs: Optional[np.ndarray] = None) -> dict:
    """JSON-ready summary used by the model subcommand."""
    V = potential(params)
    result = {
        "params": params.to_dict(),
        "potential": V.to_dict(),
        "spectrum": [point.to_dict() for point in spectrum(params, nmax)],
        "gap": params.gap,
    }
    if xs is not None:
        result["samples"] = {"x": xs.tolist(), "V": V.evaluate(xs).tolist()}
    return result
