"""The polynomial families P_{n;j}^{(p,q)}.

Eigenstates of the model are φ_{n;j} = μ P_{n;j} with μ = e^{−x²/2}/H_{p+1,2q}.
The polynomial parts satisfy

    P'' − 2(x + h'/h) P' + (h''/h + 2x h'/h + E − 4q) P = 0,   h = H_{p+1,2q},

and are generated here by a three-term recurrence seeded with
P_{0;1} = H_{p,2q} and P_{0;2} = H_{p+1,2q+1}.

The recurrence coefficients come from reducing the third-order ladder
operators modulo the ODE. Acting on μf with f on-shell, each first-order
factor (σD + U) maps μ(αf + βf') to μ(α̃f + β̃f'), so

    A†(μP) = μ(aP + bP'),    A(μP) = μ(cP + eP').

With A†φ_n = φ_{n+1} and Aφ_n = C²_n φ_{n−1} this eliminates P' and gives

    P_{n+1} = (a − bc/e) P_n + (b C²_n / e) P_{n−1}.

The ladder operators are also applied directly, without the ODE, as an
independent oracle (raise_oracle, lower_oracle).
"""

import logging
import threading
from dataclasses import dataclass
from typing import Optional

import sympy as sp

from src.errors import InconsistentMatch
from src.exactalg import ZERO, Polynomial, RationalFunction, logderiv
from src.genhermite import gh
from src.model import (
    ModelParams,
    energy,
    ladder_csq,
    nonnormalizable_modes,
)
from src.painleve4 import make_w, superpotentials

logger = logging.getLogger(__name__)

_TABLE: dict[tuple[int, int, int, int], Polynomial] = {}
_TABLE_LOCK = threading.Lock()

# (σ, U) stands for the first-order operator σD + U
Factor = tuple[int, RationalFunction]


@dataclass(frozen=True)
class DerivativeRelations:
    """A†(μP) = μ(aP + bP') and A(μP) = μ(cP + eP') at one eigenvalue."""

    a: RationalFunction
    b: RationalFunction
    c: RationalFunction
    e: RationalFunction


@dataclass(frozen=True)
class RecurrenceCoefficients:
    """P_{n+1} + c_prev·P_{n−1} + c_same·P_n = 0 at level n."""

    R: RationalFunction
    c_prev: RationalFunction
    c_same: RationalFunction


@dataclass(frozen=True)
class IndicialReport:
    p: int
    q: int
    squarefree: bool
    exponents: tuple[sp.Expr, ...]
    levels: dict

    @property
    def passed(self) -> bool:
        return self.squarefree and self.exponents in ((), (0, 3)) and all(self.levels.values())


def _check_args(p: int, q: int, j: int, n: int) -> None:
    if p < 0 or q < 1:
        raise ValueError(f"need p >= 0 and q >= 1, got ({p}, {q})")
    if j not in (1, 2):
        raise ValueError(f"sequence index j must be 1 or 2, got {j}")
    if n < 0:
        raise ValueError(f"level index must be nonnegative, got {n}")


def _raising_chain(p: int, q: int) -> list[Factor]:
    """A† = (D + W)(−D + W₂)(−D + W₁), rightmost factor first."""
    sps = superpotentials(p, q)
    return [(-1, sps.W1.as_rational()), (-1, sps.W2.as_rational()), (1, sps.W.as_rational())]


def _lowering_chain(p: int, q: int) -> list[Factor]:
    """A = (D + W₁)(D + W₂)(−D + W), rightmost factor first."""
    sps = superpotentials(p, q)
    return [(-1, sps.W.as_rational()), (1, sps.W2.as_rational()), (1, sps.W1.as_rational())]


# ---------------------------------------------------------------------------
# Direct application on e^{s x²/2}·g
# ---------------------------------------------------------------------------


def apply_ladder(
    g: RationalFunction, gaussian_sign: int, chain: list[Factor]
) -> RationalFunction:
    """Apply the chain to e^{s x²/2} g and return the new rational factor."""
    x = RationalFunction.x()
    for sigma, U in chain:
        g = (g.derivative() + x * g * gaussian_sign) * sigma + U * g
    return g


def _seed(p: int, q: int, j: int) -> Polynomial:
    return gh(p, 2 * q) if j == 1 else gh(p + 1, 2 * q + 1)


def raise_oracle(p: int, q: int, j: int, n: int) -> Polynomial:
    """A†(μ P_{n;j}) / μ, computed without the recurrence."""
    _check_args(p, q, j, n)
    if j == 1 and n > p:
        raise ValueError(f"raise_oracle on j=1 needs n <= p, got n={n}")
    h = gh(p + 1, 2 * q)
    image = apply_ladder(RationalFunction(ppoly(p, q, j, n), h), -1, _raising_chain(p, q))
    return (image * h).as_polynomial()


def lower_oracle(p: int, q: int, j: int, n: int) -> Polynomial:
    """A(μ P_{n;j}) / μ; equals C²_{n;j} P_{n−1;j}."""
    _check_args(p, q, j, n)
    h = gh(p + 1, 2 * q)
    image = apply_ladder(RationalFunction(ppoly(p, q, j, n), h), -1, _lowering_chain(p, q))
    return (image * h).as_polynomial()


def kernel_residuals(p: int, q: int) -> dict[str, RationalFunction]:
    """Images of the non-normalizable kernel members; every value must be zero."""
    h = gh(p + 1, 2 * q)
    residuals = {}
    for mode in nonnormalizable_modes(ModelParams(p, q)):
        chain = _lowering_chain(p, q) if mode.label == "phi_0;2" else _raising_chain(p, q)
        residuals[mode.label] = apply_ladder(
            RationalFunction(mode.poly, h), mode.gaussian_sign, chain
        )
    return residuals


# ---------------------------------------------------------------------------
# Reduction modulo the ODE
# ---------------------------------------------------------------------------


def _reduce_chain(
    p: int, q: int, E: int, chain: list[Factor]
) -> tuple[RationalFunction, RationalFunction]:
    h = gh(p + 1, 2 * q)
    x = RationalFunction.x()
    lh = logderiv(h)
    m = -x - lh
    drift = (x + lh) * 2
    kappa = RationalFunction(h.derivative(2), h) + x * lh * 2 + (E - 4 * q)

    alpha, beta = RationalFunction(1), RationalFunction(0)
    for sigma, U in chain:
        d_alpha = alpha.derivative() - kappa * beta
        d_beta = alpha + beta.derivative() + drift * beta
        alpha, beta = (
            (d_alpha + m * alpha) * sigma + U * alpha,
            (d_beta + m * beta) * sigma + U * beta,
        )
    return alpha, beta


def derivative_relations(p: int, q: int, j: int, n: int) -> DerivativeRelations:
    _check_args(p, q, j, n)
    E = energy(ModelParams(p, q), j, n)
    a, b = _reduce_chain(p, q, E, _raising_chain(p, q))
    c, e = _reduce_chain(p, q, E, _lowering_chain(p, q))
    return DerivativeRelations(a=a, b=b, c=c, e=e)


def r_function(p: int, q: int, j: int, n: int) -> RationalFunction:
    """E_{n;j} − 2(p + 1) − w^{[1]}_{p,2q} w^{[2]}_{p+1,2q−1}."""
    _check_args(p, q, j, n)
    E = energy(ModelParams(p, q), j, n)
    product = make_w(1, p, 2 * q).w * make_w(2, p + 1, 2 * q - 1).w
    return RationalFunction(E - 2 * (p + 1)) - product


def recurrence_coefficients(p: int, q: int, j: int, n: int) -> RecurrenceCoefficients:
    rel = derivative_relations(p, q, j, n)
    csq = ladder_csq(ModelParams(p, q), j, n)
    c_prev = rel.b * csq * (-1) / rel.e
    c_same = rel.b * rel.c / rel.e - rel.a
    return RecurrenceCoefficients(R=r_function(p, q, j, n), c_prev=c_prev, c_same=c_same)


# ---------------------------------------------------------------------------
# The memoized families
# ---------------------------------------------------------------------------


def _publish(key: tuple[int, int, int, int], value: Polynomial) -> Polynomial:
    with _TABLE_LOCK:
        return _TABLE.setdefault(key, value)


def ppoly(p: int, q: int, j: int, n: int) -> Polynomial:
    """P_{n;j}^{(p,q)}; the finite sequence j = 1 is zero beyond n = p.

    Values carry the raw scale A†(μP_{n−1})/μ of the recurrence, not a
    content-normalized one: P_{1;1}^{(2,1)} is −32(4x⁵ + 4x³ + 3x). Use
    table_form for the primitive integer representative.
    """
    _check_args(p, q, j, n)
    if j == 1 and n > p + 1:
        return ZERO
    key = (p, q, j, n)
    cached = _TABLE.get(key)
    if cached is not None:
        return cached
    if n == 0:
        return _publish(key, _seed(p, q, j))

    coeffs = recurrence_coefficients(p, q, j, n - 1)
    previous = ppoly(p, q, j, n - 1)
    before = ppoly(p, q, j, n - 2) if n >= 2 else ZERO
    value = -(coeffs.c_prev * before + coeffs.c_same * previous)
    result = value.as_polynomial()
    if j == 1 and n == p + 1 and not result.is_zero:
        raise InconsistentMatch(f"P_{{{n};1}} for (p,q)=({p},{q}) should vanish, got {result}")
    logger.debug("P_{%d;%d}^(%d,%d) has degree %s", n, j, p, q, result.degree)
    return _publish(key, result)


def ppoly_sequence(p: int, q: int, j: int, nmax: int) -> list[Polynomial]:
    """P_{0;j}, ..., P_{nmax;j}, stopping at n = p for the finite sequence."""
    top = min(nmax, p) if j == 1 else nmax
    return [ppoly(p, q, j, n) for n in range(top + 1)]


def table_form(poly: Polynomial) -> Polynomial:
    """Primitive integer representative, as the polynomials are usually tabulated."""
    return poly.content_normalize()


def ode_residual(p: int, q: int, j: int, n: int, E: Optional[int] = None) -> Polynomial:
    """h·(P'' − 2(x + h'/h)P' + (h''/h + 2xh'/h + E − 4q)P); zero for a true eigenpair."""
    P = ppoly(p, q, j, n)
    if E is None:
        E = energy(ModelParams(p, q), j, n)
    h = gh(p + 1, 2 * q)
    x = Polynomial.x()
    dh = h.derivative()
    return (
        h * P.derivative(2)
        - (x * h + dh) * P.derivative() * 2
        + (h.derivative(2) + x * dh * 2 + h * (E - 4 * q)) * P
    )


def indicial_exponents(h: Polynomial) -> tuple[sp.Expr, ...]:
    """Exponents of the P-equation at the zeros of h, from its square-free factorization.

    At a zero of multiplicity m the P' coefficient −2h'/h has residue −2m and
    h''/h contributes m(m − 1) at second order, so the indicial polynomial is
    ℓ(ℓ − 1) − 2mℓ + m(m − 1). Simple zeros give (0, 3).
    """
    ell = sp.Symbol("ell")
    exponents = set()
    for _, m in h.sympy_poly.sqf_list()[1]:
        exponents.update(sp.roots(sp.Poly(ell * (ell - 1) - 2 * m * ell + m * (m - 1), ell)))
    return tuple(sorted(exponents, key=float))


def indicial_check(p: int, q: int, nmax: Optional[int] = None) -> IndicialReport:
    """Certify that no P_{n;j} picks up a pole at the complex zeros of H_{p+1,2q}."""
    if q == 0:
        return IndicialReport(p=p, q=q, squarefree=True, exponents=(), levels={})
    if nmax is None:
        nmax = p
    h = gh(p + 1, 2 * q)
    dh = h.derivative()
    squarefree = h.gcd(dh).degree == 0

    x = Polynomial.x()
    levels = {}
    for j in (1, 2):
        top = min(nmax, p) if j == 1 else nmax
        for n in range(top + 1):
            P = ppoly(p, q, j, n)
            # the ODE times h, restricted to h = 0
            singular = P.derivative() * dh * (-2) + (h.derivative(2) + x * dh * 2) * P
            levels[(j, n)] = (singular % h).is_zero
    return IndicialReport(
        p=p, q=q, squarefree=squarefree, exponents=indicial_exponents(h), levels=levels
    )
