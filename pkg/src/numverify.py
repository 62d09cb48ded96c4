"""Floating-point verification of the exact model.

Two independent numerical routes are used: adaptive quadrature of the
orthogonality integrals ∫ μ² P_{n;j} P_{m;k} dx, and a finite-difference
discretization of −d²/dx² + V whose lowest eigenvalues must reproduce the
gapped spectrum. run_suite combines these with the exact certificates into a
single pass/fail report.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np
from joblib import Parallel, delayed
from scipy import integrate
from scipy.linalg import eigh_tridiagonal

from src import config
from src.algebra import check_su2, check_su11, solve_fg
from src.errors import NonConvergence
from src.genhermite import gh, real_zero_count, recurrence_residuals
from src.model import (
    ModelParams,
    energy,
    ladder_csq,
    ladder_cubic,
    potential,
    potential_from_w,
    rel_normsq,
    sample_state,
    spectrum,
    zero_mode_polys,
)
from src.painleve4 import (
    alpha_beta,
    backlund_minus,
    backlund_plus,
    factorization_residuals,
    piv_residual,
    regular_w,
)
from src.ppoly import (
    indicial_check,
    kernel_residuals,
    lower_oracle,
    ode_residual,
    ppoly,
    raise_oracle,
)

logger = logging.getLogger(__name__)


@dataclass
class QuadratureConfig:
    half_width: float = config.QUAD_HALF_WIDTH
    rel_tol: float = config.QUAD_REL_TOL
    max_depth: int = config.QUAD_MAX_DEPTH

    def __post_init__(self):
        if self.half_width <= 0:
            raise ValueError(f"half_width must be positive, got {self.half_width}")
        if not 0 < self.rel_tol <= 1e-6:
            raise ValueError(f"rel_tol must lie in (0, 1e-6], got {self.rel_tol}")
        if self.max_depth < 1:
            raise ValueError(f"max_depth must be positive, got {self.max_depth}")


@dataclass
class FDSolverConfig:
    half_width: float = config.FD_HALF_WIDTH
    grid_points: int = config.FD_GRID_POINTS
    eig_count: int = config.FD_EIG_COUNT
    tail_tol: float = config.FD_TAIL_TOL
    widen_step: float = config.FD_WIDEN_STEP

    def __post_init__(self):
        if self.half_width <= 0:
            raise ValueError(f"half_width must be positive, got {self.half_width}")
        if self.grid_points < 500:
            raise ValueError(f"grid_points must be at least 500, got {self.grid_points}")
        if self.eig_count < 1:
            raise ValueError(f"eig_count must be positive, got {self.eig_count}")


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error: float


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str          # "pass" or "fail"
    measured: object
    tolerance: object

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "measured": self.measured,
            "tolerance": self.tolerance,
        }


def _check(name: str, ok: bool, measured, tolerance) -> CheckResult:
    return CheckResult(name=name, status="pass" if ok else "fail", measured=measured, tolerance=tolerance)


# ---------------------------------------------------------------------------
# Quadrature
# ---------------------------------------------------------------------------


def inner_product(
    params: ModelParams,
    j1: int,
    n1: int,
    j2: int,
    n2: int,
    cfg: Optional[QuadratureConfig] = None,
    abs_tol: float = 0.0,
) -> QuadratureResult:
    """∫ μ² P_{n1;j1} P_{n2;j2} dx over [−L, L]."""
    cfg = cfg or QuadratureConfig()
    first = ppoly(params.p, params.q, j1, n1)
    second = ppoly(params.p, params.q, j2, n2)
    h = gh(params.p + 1, 2 * params.q)

    def integrand(x: float) -> float:
        return np.exp(-x * x) * first(x) * second(x) / h(x) ** 2

    result = integrate.quad(
        integrand,
        -cfg.half_width,
        cfg.half_width,
        epsabs=abs_tol,
        epsrel=cfg.rel_tol,
        limit=cfg.max_depth,
        full_output=1,
    )
    if len(result) > 3:
        raise NonConvergence(cfg.max_depth, result[3])
    return QuadratureResult(value=float(result[0]), error=float(result[1]))


def gram_matrix(
    params: ModelParams, states: list[tuple[int, int]], cfg: Optional[QuadratureConfig] = None
) -> np.ndarray:
    """Inner products of the given (j, n) states."""
    cfg = cfg or QuadratureConfig()
    size = len(states)
    gram = np.zeros((size, size))
    for i, (j, n) in enumerate(states):
        gram[i, i] = inner_product(params, j, n, j, n, cfg).value
    for i in range(size):
        for k in range(i + 1, size):
            scale = np.sqrt(gram[i, i] * gram[k, k])
            value = inner_product(
                params, *states[i], *states[k], cfg, abs_tol=cfg.rel_tol * scale
            ).value
            gram[i, k] = gram[k, i] = value
    return gram


# ---------------------------------------------------------------------------
# Finite differences
# ---------------------------------------------------------------------------


def _widened_half_width(params: ModelParams, cfg: FDSolverConfig) -> float:
    """Grow L until e^{−L²/2} L^m is below the tail tolerance."""
    m = params.p + 1 + cfg.eig_count
    L = cfg.half_width
    while np.exp(-L * L / 2) * L**m > cfg.tail_tol:
        L += cfg.widen_step
    if L != cfg.half_width:
        logger.debug("Widened the FD box for %s to L=%.1f", params, L)
    return L


def fd_spectrum(
    params: ModelParams, cfg: Optional[FDSolverConfig] = None, grid_points: Optional[int] = None
) -> np.ndarray:
    """Lowest eigenvalues of the three-point discretization with Dirichlet ends."""
    cfg = cfg or FDSolverConfig()
    N = grid_points or cfg.grid_points
    L = _widened_half_width(params, cfg)
    dx = 2 * L / (N + 1)
    xs = -L + dx * np.arange(1, N + 1)

    diagonal = 2.0 / dx**2 + potential(params).evaluate(xs)
    off_diagonal = np.full(N - 1, -1.0 / dx**2)
    return eigh_tridiagonal(
        diagonal,
        off_diagonal,
        eigvals_only=True,
        select="i",
        select_range=(0, cfg.eig_count - 1),
    )


def fd_richardson(params: ModelParams, cfg: Optional[FDSolverConfig] = None) -> np.ndarray:
    """|E(N) − E(2N)| for each reported eigenvalue."""
    cfg = cfg or FDSolverConfig()
    coarse = fd_spectrum(params, cfg)
    fine = fd_spectrum(params, cfg, grid_points=2 * cfg.grid_points)
    return np.abs(coarse - fine)


def analytic_levels(params: ModelParams, count: int) -> list[int]:
    """The lowest count eigenvalues {2n : n <= p} ∪ {2n + 2p + 4q + 2}."""
    return sorted(point.energy for point in spectrum(params, count))[:count]


def eigenfunction_residual(
    params: ModelParams,
    j: int,
    n: int,
    cfg: Optional[FDSolverConfig] = None,
    grid_points: int = config.RESIDUAL_GRID_POINTS,
    energy_shift: float = 0.0,
) -> float:
    """max |−φ'' + Vφ − Eφ| / max |φ| with φ'' from the five-point stencil."""
    cfg = cfg or FDSolverConfig()
    L = _widened_half_width(params, cfg)
    xs = np.linspace(-L, L, grid_points)
    dx = xs[1] - xs[0]

    phi = sample_state(params, ppoly(params.p, params.q, j, n), xs)
    second = (
        -phi[:-4] + 16 * phi[1:-3] - 30 * phi[2:-2] + 16 * phi[3:-1] - phi[4:]
    ) / (12 * dx * dx)
    E = energy(params, j, n) + energy_shift
    inner = phi[2:-2]
    residual = -second + potential(params).evaluate(xs[2:-2]) * inner - E * inner
    return float(np.max(np.abs(residual)) / np.max(np.abs(phi)))


# ---------------------------------------------------------------------------
# Verification suite
# ---------------------------------------------------------------------------


def _exact_checks(params: ModelParams) -> list[CheckResult]:
    p, q = params.p, params.q
    checks = []

    for key in ((p, 2 * q), (p + 1, 2 * q)):
        zero = all(r.is_zero for r in recurrence_residuals(*key))
        checks.append(_check(f"gh recurrences H_{key}", zero, zero, 0))

    solution = regular_w(p, q)
    stated = alpha_beta(1, p, 2 * q)
    ok = stated.alpha == params.alpha and stated.beta == params.beta
    measured = [str(stated.alpha), str(stated.beta)]
    checks.append(_check("piv parameters", ok, measured, [params.alpha, params.beta]))
    if not solution.w.is_zero:
        zero = piv_residual(solution.w, solution.params).is_zero
        checks.append(_check("piv residual", zero, zero, 0))

    h = gh(p + 1, 2 * q)
    roots = real_zero_count(h)
    checks.append(_check("weight nodeless", roots == 0, roots, 0))
    same = potential(params) == potential_from_w(params)
    checks.append(_check("potential from w", same, same, True))

    for point in spectrum(params, config.VERIFY_NMAX):
        expected = ladder_cubic(params, point.energy)
        actual = ladder_csq(params, point.j, point.n + 1)
        checks.append(
            _check(
                f"ladder cubic j={point.j} n={point.n}",
                actual == expected,
                str(actual),
                str(expected),
            )
        )
    points = spectrum(params, 0)
    gap = min(pt.energy for pt in points if pt.j == 2) - max(pt.energy for pt in points if pt.j == 1)
    checks.append(_check("gap width", gap == params.gap, gap, params.gap))

    counts = [real_zero_count(poly) for poly in zero_mode_polys(params)]
    checks.append(_check("zero-mode real roots", counts == [0, p, p + 1], counts, [0, p, p + 1]))

    ladder_a, ladder_b = solve_fg(params)
    shifts = [str(ladder_a.shift), str(ladder_b.shift), str(ladder_a.constant), str(ladder_b.constant)]
    expected_shifts = [str(Fraction(-p, 2)), str(Fraction(2 * q + 1, 2)), "0", "0"]
    checks.append(_check("fg matching", shifts == expected_shifts, shifts, expected_shifts))
    su2 = check_su2(params)
    checks.append(_check("su(2) structure", su2.passed, su2.to_dict()["residuals"], 0))
    su11 = check_su11(params, dim=10)
    checks.append(_check("su(1,1) structure", su11.passed, su11.to_dict()["residuals"], 0))

    if q == 0:
        return checks

    for residual in backlund_minus(p, q) + backlund_plus(p, q):
        checks.append(_check("backlund identity", residual.is_zero, residual.is_zero, 0))
    for residual in factorization_residuals(p, q):
        checks.append(_check("factorization", residual.is_zero, residual.is_zero, 0))

    for label, residual in kernel_residuals(p, q).items():
        checks.append(_check(f"kernel {label}", residual.is_zero, residual.is_zero, 0))

    for j, top in ((1, p), (2, config.VERIFY_NMAX)):
        for n in range(top + 1):
            zero = ode_residual(p, q, j, n).is_zero
            checks.append(_check(f"ode j={j} n={n}", zero, zero, 0))
            raised = raise_oracle(p, q, j, n)
            match = raised == ppoly(p, q, j, n + 1)
            checks.append(_check(f"raise oracle j={j} n={n}", match, match, True))
            lowered = lower_oracle(p, q, j, n)
            if n == 0:
                expected = lowered.is_zero
            else:
                expected = lowered == ppoly(p, q, j, n - 1) * ladder_csq(params, j, n)
            checks.append(_check(f"lower oracle j={j} n={n}", expected, expected, True))
    truncated = ppoly(p, q, 1, p + 1).is_zero
    checks.append(_check("finite sequence truncates", truncated, truncated, True))

    report = indicial_check(p, q, nmax=config.VERIFY_NMAX)
    exponents = [str(e) for e in report.exponents]
    checks.append(_check("indicial analysis", report.passed, exponents, ["0", "3"]))
    return checks


def _spectrum_checks(params: ModelParams, cfg: FDSolverConfig) -> list[CheckResult]:
    numeric = fd_spectrum(params, cfg)
    exact = analytic_levels(params, cfg.eig_count)
    error = float(np.max(np.abs(numeric - np.array(exact))))
    checks = [_check("fd spectrum", error < config.EIGEN_TOL, error, config.EIGEN_TOL)]

    low, high = 2 * params.p + config.GAP_MARGIN, 2 * params.p + params.gap - config.GAP_MARGIN
    inside = [float(v) for v in numeric if low < v < high]
    checks.append(_check("empty gap", not inside, inside, [low, high]))

    change = float(np.max(fd_richardson(params, cfg)))
    tol = config.RICHARDSON_TOL
    checks.append(_check("fd grid doubling", change < tol, change, tol))
    return checks


def _orthogonality_checks(params: ModelParams, cfg: QuadratureConfig) -> list[CheckResult]:
    nmax = config.NUMERIC_NMAX
    states = [(1, n) for n in range(min(params.p, nmax) + 1)]
    states += [(2, n) for n in range(nmax + 1)]
    gram = gram_matrix(params, states, cfg)

    diagonal = np.sqrt(np.outer(np.diag(gram), np.diag(gram)))
    off = np.abs(gram / diagonal - np.eye(len(states)))
    worst = float(np.max(off))
    checks = [_check("gram orthogonality", worst < config.ORTHO_TOL, worst, config.ORTHO_TOL)]

    worst_ratio = 0.0
    for j in (1, 2):
        base = states.index((j, 0))
        for idx, (jj, n) in enumerate(states):
            if jj != j or n == 0:
                continue
            expected = float(rel_normsq(params, j, n))
            measured = gram[idx, idx] / gram[base, base]
            worst_ratio = max(worst_ratio, abs(measured / expected - 1))
    checks.append(_check("norm ratios", worst_ratio < config.NORM_TOL, worst_ratio, config.NORM_TOL))
    return checks


def _residual_checks(params: ModelParams, cfg: FDSolverConfig) -> list[CheckResult]:
    checks = []
    for j in (1, 2):
        residual = eigenfunction_residual(params, j, 0, cfg)
        checks.append(
            _check(
                f"eigenfunction residual j={j}",
                residual < config.RESIDUAL_TOL,
                residual,
                config.RESIDUAL_TOL,
            )
        )
    return checks


def _numeric_jobs(params: ModelParams) -> list[tuple[Callable, object]]:
    fd_cfg = FDSolverConfig()
    jobs = [(_spectrum_checks, fd_cfg)]
    if params.q >= 1:
        jobs += [(_orthogonality_checks, QuadratureConfig()), (_residual_checks, fd_cfg)]
    return jobs


def run_suite(params: ModelParams, suite: str = "all", jobs: int = config.JOBS) -> list[CheckResult]:
    """Run the exact and/or numeric checks; suite is 'exact', 'numeric' or 'all'."""
    if suite not in ("exact", "numeric", "all"):
        raise ValueError(f"unknown suite: {suite}")
    results: list[CheckResult] = []
    if suite in ("exact", "all"):
        results += _exact_checks(params)
    if suite in ("numeric", "all"):
        batches = Parallel(n_jobs=jobs)(
            delayed(job)(params, cfg) for job, cfg in _numeric_jobs(params)
        )
        for batch in batches:
            results += batch

    failed = [r.name for r in results if not r.passed]
    logger.info("Suite %s for %s: %d checks, %d failed", suite, params, len(results), len(failed))
    if failed:
        logger.warning("Failed checks: %s", ", ".join(failed))
    return results
