"""Rational solutions of the fourth Painlevé equation built from H_{p,q}.

    w'' = (w')²/(2w) + 3/2 w³ + 4x w² + 2(x² − α) w + β/w

Three hierarchies are produced from generalized Hermite polynomials, in
log-derivative and in product form. The regular member w = w^{[1]}_{p,2q}
feeds the third-order factorization: B(x), the superpotentials and the
Bäcklund identities certified here.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from src.exactalg import RationalFunction, logderiv
from src.genhermite import gh

logger = logging.getLogger(__name__)

FAMILIES = (1, 2, 3)


@dataclass(frozen=True)
class PIVParams:
    alpha: Fraction
    beta: Fraction


@dataclass(frozen=True)
class PIVSolution:
    w: RationalFunction
    params: PIVParams
    family: int
    p: int
    q: int


def _check_indices(family: int, p: int, q: int) -> None:
    if family not in FAMILIES:
        raise ValueError(f"family must be one of {FAMILIES}, got {family}")
    if p < 0 or q < 0:
        raise ValueError(f"indices must be nonnegative, got ({p}, {q})")


def alpha_beta(family: int, p: int, q: int) -> PIVParams:
    _check_indices(family, p, q)
    if family == 1:
        return PIVParams(Fraction(2 * p + q + 1), Fraction(-2 * q * q))
    if family == 2:
        return PIVParams(Fraction(-(p + 2 * q + 1)), Fraction(-2 * p * p))
    return PIVParams(Fraction(q - p), Fraction(-2 * (p + q + 1) ** 2))


def _log_ratio(top: tuple[int, int], bottom: tuple[int, int]) -> RationalFunction:
    """d/dx ln(H_top / H_bottom)."""
    return logderiv(gh(*top)) - logderiv(gh(*bottom))


def make_w(family: int, p: int, q: int) -> PIVSolution:
    """w^{[family]}_{p,q} in log-derivative form."""
    params = alpha_beta(family, p, q)
    if family == 1:
        w = _log_ratio((p + 1, q), (p, q))
    elif family == 2:
        w = _log_ratio((p, q), (p, q + 1))
    else:
        w = _log_ratio((p, q + 1), (p + 1, q)) - RationalFunction.x() * 2
    logger.debug(
        "w[%d] for (p,q)=(%d,%d): alpha=%s, beta=%s", family, p, q, params.alpha, params.beta
    )
    return PIVSolution(w=w, params=params, family=family, p=p, q=q)


def make_w_ratio(family: int, p: int, q: int) -> RationalFunction:
    """w^{[family]}_{p,q} in product form."""
    _check_indices(family, p, q)
    if family == 1:
        if q == 0:
            return RationalFunction(0)
        num = gh(p + 1, q - 1) * gh(p, q + 1) * (2 * q)
        den = gh(p, q) * gh(p + 1, q)
    elif family == 2:
        if p == 0:
            return RationalFunction(0)
        num = gh(p + 1, q) * gh(p - 1, q + 1) * (-2 * p)
        den = gh(p, q + 1) * gh(p, q)
    else:
        num = -(gh(p + 1, q + 1) * gh(p, q))
        den = gh(p + 1, q) * gh(p, q + 1)
    return RationalFunction(num, den)


def regular_w(p: int, q: int) -> PIVSolution:
    """The pole-free solution w^{[1]}_{p,2q} behind the potential V_{p,q}."""
    return make_w(1, p, 2 * q)


def piv_residual(w: RationalFunction, params: PIVParams) -> RationalFunction:
    """2w w'' − (w')² − 3w⁴ − 8x w³ − 4(x² − α) w² − 2β; zero iff w solves PIV."""
    if w.is_zero:
        raise ValueError("w = 0 is excluded by the β/w term")
    x = RationalFunction.x()
    dw = w.derivative()
    ddw = w.derivative(2)
    w2 = w * w
    return (
        w * ddw * 2
        - dw * dw
        - w2 * w2 * 3
        - x * w2 * w * 8
        - (x * x - params.alpha) * w2 * 4
        - params.beta * 2
    )


def _regular_parts(p: int, q: int) -> tuple[RationalFunction, RationalFunction]:
    if q < 1:
        raise ValueError(f"the Bäcklund identities need q >= 1, got {q}")
    w = regular_w(p, q).w
    return w, RationalFunction.x() * w * 2 + w * w


def backlund_minus(p: int, q: int) -> tuple[RationalFunction, RationalFunction]:
    """LHS w' − (2xw + w²) minus its product form and minus its log form."""
    w, quadratic = _regular_parts(p, q)
    lhs = w.derivative() - quadratic
    h = gh(p + 1, 2 * q)
    product = (
        RationalFunction(gh(p + 1, 2 * q + 1) * gh(p + 1, 2 * q - 1) * (-8 * q), h * h) + 4 * q
    )
    log_form = logderiv(h).derivative() * 2 - 4 * q
    return lhs - product, lhs - log_form


def backlund_plus(p: int, q: int) -> tuple[RationalFunction, RationalFunction]:
    """LHS w' + (2xw + w²) minus its product form and minus its log form."""
    w, quadratic = _regular_parts(p, q)
    lhs = w.derivative() + quadratic
    h = gh(p, 2 * q)
    product = RationalFunction(gh(p, 2 * q + 1) * gh(p, 2 * q - 1) * (8 * q), h * h) - 4 * q
    log_form = logderiv(h).derivative() * (-2) + 4 * q
    return lhs - product, lhs - log_form


def compute_B(w: RationalFunction, d: Fraction) -> RationalFunction:
    """B = w²/4 − w'/2 − w''/(2w) + (w')²/(4w²) + d/w²."""
    if w.is_zero:
        raise ValueError("B(x) is undefined for w = 0")
    dw = w.derivative()
    w2 = w * w
    return (
        w2 * Fraction(1, 4)
        - dw * Fraction(1, 2)
        - w.derivative(2) / (w * 2)
        + dw * dw / (w2 * 4)
        + RationalFunction(Fraction(d)) / w2
    )


@dataclass(frozen=True)
class Superpotential:
    linear: Fraction                 # coefficient of x
    rational: RationalFunction

    def as_rational(self) -> RationalFunction:
        return RationalFunction.x() * self.linear + self.rational


@dataclass(frozen=True)
class Superpotentials:
    W: Superpotential
    W1: Optional[Superpotential]     # None when q = 0
    W2: Optional[Superpotential]


def superpotentials(p: int, q: int) -> Superpotentials:
    """W, W₁, W₂ of the factorization A† = Q†M₂M₁, with the '+' branch."""
    if p < 0 or q < 0:
        raise ValueError(f"indices must be nonnegative, got ({p}, {q})")
    w_main = Superpotential(Fraction(-1), _log_ratio((p, 2 * q), (p + 1, 2 * q)))
    if q == 0:
        return Superpotentials(W=w_main, W1=None, W2=None)
    w_one = Superpotential(Fraction(1), _log_ratio((p + 1, 2 * q - 1), (p + 1, 2 * q)))
    w_two = Superpotential(Fraction(-1), _log_ratio((p, 2 * q), (p + 1, 2 * q - 1)))
    return Superpotentials(W=w_main, W1=w_one, W2=w_two)


def factorization_residuals(p: int, q: int) -> tuple[RationalFunction, RationalFunction]:
    """(W₁ + W₂ + w, W₁W₂ + W₂' − B) for the regular w; both must vanish."""
    w, _ = _regular_parts(p, q)
    sp = superpotentials(p, q)
    w_one, w_two = sp.W1.as_rational(), sp.W2.as_rational()
    d = Fraction(-4 * q * q)
    return w_one + w_two + w, w_one * w_two + w_two.derivative() - compute_B(w, d)
