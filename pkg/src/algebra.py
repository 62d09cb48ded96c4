"""Deformed ladder operators and their su(2) / su(1,1) structure.

Rescaling the third-order ladder operators by functions of the Hamiltonian,

    Ã₋ = f(H) A,   Ã₊ = A† f(H),   B̃₋ = g(H) A,   B̃₊ = A† g(H),

turns the finite ladder into an su(2) representation of dimension p + 1 and
the infinite one into a lowest-weight su(1,1) representation. The scalings
are fixed by matching polynomials in the level index n, and every commutator
check below is carried out on exact radicals whose products are rational.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import sympy as sp

from src.errors import DimensionMismatch, InconsistentMatch
from src.model import ModelParams, energy

logger = logging.getLogger(__name__)

KINDS = ("A", "B")

_n, _E = sp.symbols("n E")


def _to_fraction(value) -> Fraction:
    value = sp.Rational(value)
    return Fraction(int(value.p), int(value.q))


@dataclass(frozen=True)
class DeformedLadder:
    """Scaling f² (kind A) or g² (kind B) as a function of the eigenvalue E.

    The zero operator acts as n + shift; constant is the free term left by
    the matching and vanishes for both kinds.
    """

    kind: str
    params: ModelParams
    fsq: sp.Expr
    shift: Fraction
    constant: Fraction

    @property
    def sequence(self) -> int:
        return 1 if self.kind == "A" else 2

    def fsq_at(self, E) -> Fraction:
        return _to_fraction(self.fsq.subs(_E, sp.Rational(Fraction(E))))

    def zero_eigenvalue(self, n: int) -> Fraction:
        return n + self.shift

    def action_sq(self, n: int) -> Fraction:
        """Squared coefficient of the lowering action on level n."""
        if n == 0:
            return Fraction(0)
        E_prev = energy(self.params, self.sequence, n - 1)
        return self.fsq_at(E_prev) * _to_fraction(_csq_expr(self.params, self.sequence).subs(_n, n))


def _csq_expr(params: ModelParams, j: int) -> sp.Expr:
    p, q = params.p, params.q
    if j == 1:
        return 8 * _n * (p + 2 * q - _n + 1) * (p - _n + 1)
    return 8 * _n * (_n + 2 * q) * (_n + p + 2 * q + 1)


def _match(lhs: sp.Expr, rhs: sp.Expr, unknowns: tuple[sp.Symbol, sp.Symbol]) -> dict:
    lhs = sp.cancel(sp.together(lhs))
    _, denominator = sp.fraction(lhs)
    if sp.Poly(denominator, _n).degree() > 0:
        raise InconsistentMatch(f"left-hand side is not polynomial in n: {lhs}")
    coefficients = sp.Poly(sp.expand(lhs - rhs), _n).all_coeffs()
    solution = sp.solve(coefficients, unknowns, dict=True)
    if len(solution) != 1 or set(solution[0]) != set(unknowns):
        raise InconsistentMatch(f"no unique solution of {coefficients} = 0")
    return solution[0]


def solve_fg(params: ModelParams) -> tuple[DeformedLadder, DeformedLadder]:
    """Fix f², g² and the zero-operator shifts by matching polynomials in n."""
    p, q = params.p, params.q
    c0, c1 = sp.symbols("c0 c1")

    fsq = 1 / (8 * (p + 2 * q - _E / 2))
    lhs_f = fsq.subs(_E, 2 * _n - 2) * _csq_expr(params, 1)
    sol_f = _match(lhs_f, -_n**2 - (2 * c0 - 1) * _n + c1, (c0, c1))

    gsq = 1 / (8 * (_E / 2 + 1))
    lhs_g = gsq.subs(_E, 2 * _n - 2 + 2 * p + 4 * q + 2) * _csq_expr(params, 2)
    sol_g = _match(lhs_g, _n**2 + (2 * c0 - 1) * _n + c1, (c0, c1))

    ladder_a = DeformedLadder(
        kind="A",
        params=params,
        fsq=fsq,
        shift=_to_fraction(sol_f[c0]),
        constant=_to_fraction(sol_f[c1]),
    )
    ladder_b = DeformedLadder(
        kind="B",
        params=params,
        fsq=gsq,
        shift=_to_fraction(sol_g[c0]),
        constant=_to_fraction(sol_g[c1]),
    )
    logger.debug("Zero-operator shifts for %s: A %s, B %s", params, ladder_a.shift, ladder_b.shift)
    return ladder_a, ladder_b


def fg_table(params: ModelParams, nmax: int) -> list[dict]:
    """f²(E_{n;1}) for n < p and g²(E_{n;2}) for n <= nmax."""
    ladder_a, ladder_b = solve_fg(params)
    rows = []
    for n in range(max(params.p, nmax + 1)):
        row = {"n": n}
        if n < params.p:
            row["fsq"] = str(ladder_a.fsq_at(energy(params, 1, n)))
        if n <= nmax:
            row["gsq"] = str(ladder_b.fsq_at(energy(params, 2, n)))
        rows.append(row)
    return rows


@dataclass(frozen=True)
class SequenceMatrixRep:
    kind: str
    dim: int
    minus: sp.Matrix
    plus: sp.Matrix
    zero: sp.Matrix


def matrix_rep(params: ModelParams, kind: str, dim: Optional[int] = None) -> SequenceMatrixRep:
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    ladder_a, ladder_b = solve_fg(params)
    ladder = ladder_a if kind == "A" else ladder_b
    if kind == "A":
        if dim is not None and dim != params.p + 1:
            raise DimensionMismatch(f"the su(2) space has dimension {params.p + 1}, got {dim}")
        dim = params.p + 1
    elif dim is None or dim < 2:
        raise DimensionMismatch(f"the su(1,1) truncation needs dim >= 2, got {dim}")

    minus = sp.zeros(dim, dim)
    for n in range(1, dim):
        value = ladder.action_sq(n)
        minus[n - 1, n] = sp.sqrt(sp.Rational(value.numerator, value.denominator))
    zero = sp.diag(*[sp.Rational(str(ladder.zero_eigenvalue(n))) for n in range(dim)])
    return SequenceMatrixRep(kind=kind, dim=dim, minus=minus, plus=minus.T, zero=zero)


@dataclass
class AlgebraReport:
    kind: str
    dim: int
    residuals: dict = field(default_factory=dict)   # name -> largest |entry|
    casimir: Optional[Fraction] = None
    casimir_scalar: bool = False

    @property
    def passed(self) -> bool:
        return self.casimir_scalar and all(value == 0 for value in self.residuals.values())

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "dim": self.dim,
            "passed": self.passed,
            "residuals": {name: str(value) for name, value in self.residuals.items()},
            "casimir": None if self.casimir is None else str(self.casimir),
        }


def _largest(matrix: sp.Matrix) -> sp.Expr:
    magnitudes = [abs(sp.expand(v)) for v in matrix]
    return max(magnitudes, key=float, default=sp.Integer(0))


def _commutator(a: sp.Matrix, b: sp.Matrix) -> sp.Matrix:
    return (a * b - b * a).applyfunc(sp.expand)


def _casimir(diagonal: list) -> tuple[Optional[Fraction], bool]:
    values = {_to_fraction(sp.expand(v)) for v in diagonal}
    if len(values) != 1:
        return None, False
    return values.pop(), True


def check_su2(params: ModelParams) -> AlgebraReport:
    """[Ã₋, Ã₊] = −2Ã₀, [Ã₀, Ã±] = ±Ã± and the Casimir (p/2)(p/2 + 1)."""
    rep = matrix_rep(params, "A")
    report = AlgebraReport(kind="A", dim=rep.dim)
    report.residuals["[minus,plus]+2zero"] = _largest(_commutator(rep.minus, rep.plus) + 2 * rep.zero)
    report.residuals["[zero,plus]-plus"] = _largest(_commutator(rep.zero, rep.plus) - rep.plus)
    report.residuals["[zero,minus]+minus"] = _largest(_commutator(rep.zero, rep.minus) + rep.minus)

    casimir = (rep.plus * rep.minus + rep.zero * rep.zero - rep.zero).applyfunc(sp.expand)
    off_diagonal = casimir - sp.diag(*[casimir[i, i] for i in range(rep.dim)])
    report.residuals["casimir off-diagonal"] = _largest(off_diagonal)
    report.casimir, report.casimir_scalar = _casimir([casimir[i, i] for i in range(rep.dim)])
    logger.info("su(2) check for %s: %s", params, "passed" if report.passed else "FAILED")
    return report


def check_su11(params: ModelParams, dim: int = 10) -> AlgebraReport:
    """[B̃₋, B̃₊] = 2B̃₀ off the truncation row, [B̃₀, B̃±] = ±B̃±, and the Casimir."""
    rep = matrix_rep(params, "B", dim)
    report = AlgebraReport(kind="B", dim=rep.dim)
    interior = dim - 1
    commutator = _commutator(rep.minus, rep.plus) - 2 * rep.zero
    report.residuals["[minus,plus]-2zero"] = _largest(commutator[:interior, :interior])
    report.residuals["[zero,plus]-plus"] = _largest(_commutator(rep.zero, rep.plus) - rep.plus)
    report.residuals["[zero,minus]+minus"] = _largest(_commutator(rep.zero, rep.minus) + rep.minus)

    casimir = (rep.zero * rep.zero - rep.zero - rep.plus * rep.minus).applyfunc(sp.expand)
    off_diagonal = casimir - sp.diag(*[casimir[i, i] for i in range(rep.dim)])
    report.residuals["casimir off-diagonal"] = _largest(off_diagonal)
    report.casimir, report.casimir_scalar = _casimir([casimir[i, i] for i in range(interior)])
    outcome = "passed" if report.passed else "FAILED"
    logger.info("su(1,1) check for %s (dim %d): %s", params, dim, outcome)
    return report
