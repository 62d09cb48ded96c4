"""Exact univariate polynomial and rational-function arithmetic over Q.

Polynomial is an immutable wrapper around a sympy ``Poly`` over QQ in the
single generator x. Coefficients are exposed as ``fractions.Fraction``,
lowest power first. RationalFunction keeps a reduced numerator/denominator
pair with a monic denominator, so equality is a coefficient comparison.

All values are immutable after construction and every operation is pure,
so instances can be shared between threads freely.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

import numpy as np
import sympy as sp
from sympy import QQ, Poly

from src.errors import (
    DivisionByZeroFunction,
    InexactDivision,
    NonPolynomialResult,
    PoleEvaluation,
    ZeroPolynomial,
)

logger = logging.getLogger(__name__)

_x = sp.Symbol("x")

Scalar = Union[int, Fraction]


def _to_rational(value: Scalar) -> sp.Rational:
    value = Fraction(value)
    return sp.Rational(value.numerator, value.denominator)


def _to_fraction(value) -> Fraction:
    value = sp.Rational(value)
    return Fraction(int(value.p), int(value.q))


def _is_scalar(value) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


class Polynomial:
    """Dense univariate polynomial with exact rational coefficients."""

    __slots__ = ("_poly",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        rep = [_to_rational(c) for c in reversed(list(coeffs))]
        self._poly = Poly.from_list(rep or [0], _x, domain=QQ)

    @classmethod
    def _wrap(cls, poly: Poly) -> "Polynomial":
        obj = cls.__new__(cls)
        obj._poly = poly if poly.domain == QQ else poly.set_domain(QQ)
        return obj

    @classmethod
    def constant(cls, value: Scalar) -> "Polynomial":
        return cls([value])

    @classmethod
    def x(cls) -> "Polynomial":
        return cls([0, 1])

    # -- inspection ---------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        """Coefficients lowest power first; empty for the zero polynomial."""
        if self._poly.is_zero:
            return ()
        return tuple(_to_fraction(c) for c in reversed(self._poly.all_coeffs()))

    @property
    def degree(self) -> Optional[int]:
        """Degree, or None for the zero polynomial."""
        if self._poly.is_zero:
            return None
        return int(self._poly.degree())

    @property
    def is_zero(self) -> bool:
        return bool(self._poly.is_zero)

    @property
    def leading_coefficient(self) -> Fraction:
        if self.is_zero:
            raise ZeroPolynomial("the zero polynomial has no leading coefficient")
        return _to_fraction(self._poly.LC())

    @property
    def sympy_poly(self) -> Poly:
        return self._poly

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> Optional["Polynomial"]:
        if isinstance(other, Polynomial):
            return other
        if _is_scalar(other):
            return Polynomial.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Polynomial._wrap(self._poly + other._poly)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Polynomial._wrap(self._poly - other._poly)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Polynomial._wrap(other._poly - self._poly)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Polynomial._wrap(self._poly * other._poly)

    __rmul__ = __mul__

    def __neg__(self) -> "Polynomial":
        return Polynomial._wrap(-self._poly)

    def __pow__(self, exponent: int) -> "Polynomial":
        return Polynomial._wrap(self._poly**exponent)

    def scale(self, factor: Scalar) -> "Polynomial":
        return self * Polynomial.constant(factor)

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero:
            raise DivisionByZeroFunction("polynomial division by zero")
        quotient, remainder = self._poly.div(other._poly)
        return Polynomial._wrap(quotient), Polynomial._wrap(remainder)

    def divexact(self, other: "Polynomial") -> "Polynomial":
        """Return q with self = q·other, or raise InexactDivision."""
        quotient, remainder = self.divmod(other)
        if not remainder.is_zero:
            raise InexactDivision(remainder)
        return quotient

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return self.divmod(other)[1]

    def gcd(self, other: "Polynomial") -> "Polynomial":
        """Monic greatest common divisor."""
        if self.is_zero and other.is_zero:
            raise ZeroPolynomial("gcd(0, 0) is undefined")
        return Polynomial._wrap(self._poly.gcd(other._poly).monic())

    def derivative(self, order: int = 1) -> "Polynomial":
        if order < 1:
            raise ValueError(f"derivative order must be positive, got {order}")
        poly = self._poly
        for _ in range(order):
            poly = poly.diff(_x)
        return Polynomial._wrap(poly)

    def reflect(self) -> "Polynomial":
        """Return p(−x)."""
        return Polynomial(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs))

    def monic(self) -> "Polynomial":
        return Polynomial._wrap(self._poly.monic())

    def content_normalize(self) -> "Polynomial":
        """Primitive integer representative, keeping the sign of the leading coefficient."""
        if self.is_zero:
            return self
        _, integral = self._poly.clear_denoms(convert=True)
        _, primitive = integral.primitive()
        result = Polynomial._wrap(primitive)
        if (result.leading_coefficient > 0) != (self.leading_coefficient > 0):
            result = -result
        return result

    def sturm_sequence(self) -> list["Polynomial"]:
        if self.is_zero:
            raise ZeroPolynomial("Sturm sequence of the zero polynomial")
        return [Polynomial._wrap(p) for p in self._poly.sturm()]

    # -- evaluation ---------------------------------------------------------

    def __call__(self, x0):
        """Exact value for int/Fraction input, Horner in double precision otherwise."""
        if _is_scalar(x0):
            return _to_fraction(self._poly.eval(_to_rational(x0)))
        points = np.asarray(x0, dtype=float)
        coeffs = [float(c) for c in self.coeffs]
        values = (
            np.polynomial.polynomial.polyval(points, coeffs)
            if coeffs
            else np.zeros_like(points)
        )
        return float(values) if values.ndim == 0 else values

    # -- comparison and output ----------------------------------------------

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({self._poly.as_expr()})"

    def __str__(self) -> str:
        return str(self._poly.as_expr())

    def to_json(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "Polynomial":
        return cls(Fraction(item) for item in data)

    def to_latex(self) -> str:
        return sp.latex(self._poly.as_expr())


ZERO = Polynomial()
ONE = Polynomial([1])
X = Polynomial.x()


class RationalFunction:
    """Reduced quotient num/den of polynomials with monic den."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _as_polynomial(num)
        den = ONE if den is None else _as_polynomial(den)
        if den.is_zero:
            raise DivisionByZeroFunction("rational function with zero denominator")
        if num.is_zero:
            num, den = ZERO, ONE
        else:
            common = num.gcd(den)
            if common.degree:
                num, den = num.divexact(common), den.divexact(common)
            lead = den.leading_coefficient
            if lead != 1:
                num, den = num.scale(1 / lead), den.scale(1 / lead)
        self.num = num
        self.den = den

    @classmethod
    def x(cls) -> "RationalFunction":
        return cls(X)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def as_polynomial(self) -> Polynomial:
        if not self.is_polynomial:
            raise NonPolynomialResult(self.den)
        return self.num

    def _coerce(self, other) -> Optional["RationalFunction"]:
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial) or _is_scalar(other):
            return RationalFunction(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero:
            raise DivisionByZeroFunction("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int) -> "RationalFunction":
        return RationalFunction(self.num**exponent, self.den**exponent)

    def derivative(self, order: int = 1) -> "RationalFunction":
        result = self
        for _ in range(order):
            num, den = result.num, result.den
            if den.degree == 0:
                result = RationalFunction(num.derivative(), den)
            else:
                result = RationalFunction(
                    num.derivative() * den - num * den.derivative(), den * den
                )
        return result

    def __call__(self, x0):
        if _is_scalar(x0):
            denominator = self.den(x0)
            if denominator == 0:
                raise PoleEvaluation(x0)
            return self.num(x0) / denominator
        points = np.asarray(x0, dtype=float)
        denominator = self.den(points)
        if np.any(denominator == 0.0):
            raise PoleEvaluation(x0)
        return self.num(points) / denominator

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RationalFunction({self.num} / ({self.den}))"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    def to_latex(self) -> str:
        if self.is_polynomial:
            return self.num.to_latex()
        return rf"\frac{{{self.num.to_latex()}}}{{{self.den.to_latex()}}}"


def _as_polynomial(value) -> Polynomial:
    if isinstance(value, Polynomial):
        return value
    if _is_scalar(value):
        return Polynomial.constant(value)
    raise TypeError(f"cannot use {type(value).__name__} as a polynomial")


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    """Apply 'add', 'sub' or 'mul' to two polynomials."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown polynomial operation: {op}")


def rf_arith(r: RationalFunction, s: RationalFunction, op: str) -> RationalFunction:
    """Apply 'add', 'sub', 'mul' or 'div' to two rational functions."""
    if op == "add":
        return r + s
    if op == "sub":
        return r - s
    if op == "mul":
        return r * s
    if op == "div":
        return r / s
    raise ValueError(f"unknown rational-function operation: {op}")


def logderiv(a: Polynomial) -> RationalFunction:
    """Return a′/a reduced."""
    if a.is_zero:
        raise ZeroPolynomial("logarithmic derivative of the zero polynomial")
    if a.degree == 0:
        return RationalFunction(ZERO)
    return RationalFunction(a.derivative(), a)


@lru_cache(maxsize=None)
def classical_hermite(n: int) -> Polynomial:
    """Physicists' Hermite polynomial H_n."""
    if n < 0:
        raise ValueError(f"Hermite index must be nonnegative, got {n}")
    previous, current = ONE, Polynomial([0, 2])
    if n == 0:
        return previous
    for k in range(1, n):
        previous, current = current, X * current * 2 - previous * (2 * k)
    return current


def wronskian(fs: Sequence[Polynomial]) -> Polynomial:
    """Wronskian determinant by fraction-free (Bareiss) elimination."""
    if not fs:
        raise ValueError("wronskian of an empty list")
    size = len(fs)
    rows = [list(fs)]
    for _ in range(1, size):
        rows.append([f.derivative() for f in rows[-1]])

    sign = 1
    previous_pivot = ONE
    for k in range(size - 1):
        if rows[k][k].is_zero:
            for i in range(k + 1, size):
                if not rows[i][k].is_zero:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return ZERO
        pivot = rows[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                element = pivot * rows[i][j] - rows[i][k] * rows[k][j]
                rows[i][j] = element.divexact(previous_pivot)
        previous_pivot = pivot
    return rows[size - 1][size - 1] * sign
