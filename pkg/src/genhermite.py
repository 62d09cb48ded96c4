"""Generalized Hermite polynomials H_{p,q}.

Entries are produced from the two bilinear recurrences

    2p H_{p+1,q} H_{p-1,q} = H H'' - (H')² + 2p H²     (H = H_{p,q})
    2q H_{p,q+1} H_{p,q-1} = -H H'' + (H')² + 2q H²

with H_{p,0} = H_{0,q} = 1 and H_{1,1} = 2x. The row p = 1 is raised in q
first, then every column is raised in p. Results are kept in a process-wide
memo table shared by all downstream modules.
"""

import logging
import threading

from src.exactalg import ONE, X, Polynomial, classical_hermite, wronskian

logger = logging.getLogger(__name__)

_TABLE: dict[tuple[int, int], Polynomial] = {}
_TABLE_LOCK = threading.Lock()


def _lookup(p: int, q: int):
    return _TABLE.get((p, q))


def _publish(p: int, q: int, value: Polynomial) -> Polynomial:
    with _TABLE_LOCK:
        return _TABLE.setdefault((p, q), value)


def _bilinear_step(h: Polynomial, lower: Polynomial, index: int, sign: int) -> Polynomial:
    """Solve one recurrence for the next entry; sign=+1 raises p, -1 raises q."""
    rhs = (h * h.derivative(2) - h.derivative() ** 2) * sign + h * h * (2 * index)
    return rhs.divexact(lower * (2 * index))


def _row_one(q: int) -> Polynomial:
    """H_{1,q}, raising q along p = 1."""
    cached = _lookup(1, q)
    if cached is not None:
        return cached
    for k in range(1, q):
        if _lookup(1, k + 1) is not None:
            continue
        value = _bilinear_step(gh(1, k), gh(1, k - 1), k, sign=-1)
        logger.debug("H_{1,%d} has degree %s", k + 1, value.degree)
        _publish(1, k + 1, value)
    return _TABLE[(1, q)]


def gh(p: int, q: int) -> Polynomial:
    """Return H_{p,q} in the normalization fixed by H_{1,1} = 2x."""
    if p < 0 or q < 0:
        raise ValueError(f"indices must be nonnegative, got ({p}, {q})")
    cached = _lookup(p, q)
    if cached is not None:
        return cached
    if p == 0 or q == 0:
        return _publish(p, q, ONE)
    if p == 1 and q == 1:
        return _publish(1, 1, X * 2)
    if p == 1:
        return _row_one(q)

    for k in range(1, p):
        if _lookup(k + 1, q) is not None:
            continue
        value = _bilinear_step(gh(k, q), gh(k - 1, q), k, sign=1)
        logger.debug("H_{%d,%d} has degree %s", k + 1, q, value.degree)
        _publish(k + 1, q, value)
    return _TABLE[(p, q)]


def gh_table(pmax: int, qmax: int) -> dict[tuple[int, int], Polynomial]:
    """All H_{p,q} with 1 <= p <= pmax, 1 <= q <= qmax, ordered by q then p."""
    return {(p, q): gh(p, q) for q in range(1, qmax + 1) for p in range(1, pmax + 1)}


def recurrence_residuals(p: int, q: int) -> tuple[Polynomial, Polynomial]:
    """Both bilinear recurrences evaluated at (p, q); each must be zero."""
    h = gh(p, q)
    wronskian_part = h * h.derivative(2) - h.derivative() ** 2
    lhs_p = gh(p + 1, q) * gh(p - 1, q) * (2 * p) if p > 0 else Polynomial()
    lhs_q = gh(p, q + 1) * gh(p, q - 1) * (2 * q) if q > 0 else Polynomial()
    residual_p = lhs_p - (wronskian_part + h * h * (2 * p))
    residual_q = lhs_q - (-wronskian_part + h * h * (2 * q))
    return residual_p, residual_q


def gh_via_wronskian(p: int, q: int) -> Polynomial:
    """Wr(H_p, ..., H_{p+q-1}) rescaled to the leading coefficient of gh(p, q)."""
    if q < 1:
        raise ValueError(f"the Wronskian form needs q >= 1, got {q}")
    raw = wronskian([classical_hermite(k) for k in range(p, p + q)])
    return raw.scale(gh(p, q).leading_coefficient / raw.leading_coefficient)


def _sign_changes(signs: list[int]) -> int:
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def real_zero_count(a: Polynomial) -> int:
    """Number of distinct real roots, from the sign changes of a Sturm sequence."""
    sequence = a.sturm_sequence()
    at_plus = [1 if s.leading_coefficient > 0 else -1 for s in sequence]
    at_minus = [
        sign if s.degree % 2 == 0 else -sign for s, sign in zip(sequence, at_plus)
    ]
    return _sign_changes(at_minus) - _sign_changes(at_plus)
