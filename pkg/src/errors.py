"""Typed failures raised by the exact and numerical layers."""


class SpectralModelError(Exception):
    """Base class for every failure raised by this package."""


class InexactDivision(SpectralModelError):
    """Polynomial division left a nonzero remainder."""

    def __init__(self, remainder):
        self.remainder = remainder
        super().__init__(f"division is not exact, remainder {remainder}")


class DivisionByZeroFunction(SpectralModelError):
    """Division by the zero polynomial or rational function."""


class ZeroPolynomial(SpectralModelError):
    """An operation that needs a nonzero polynomial received zero."""


class PoleEvaluation(SpectralModelError):
    """A rational function was evaluated at a zero of its denominator."""

    def __init__(self, point):
        self.point = point
        super().__init__(f"pole at x = {point}")


class NonPolynomialResult(SpectralModelError):
    """A result that must be a polynomial kept a non-constant denominator."""

    def __init__(self, denominator):
        self.denominator = denominator
        super().__init__(f"result has non-constant denominator {denominator}")


class OutOfSequence(SpectralModelError):
    """A level index lies outside the finite sequence."""

    def __init__(self, j: int, n: int, limit: int):
        self.j, self.n, self.limit = j, n, limit
        super().__init__(f"level n={n} is outside sequence j={j} (n <= {limit})")


class NonConvergence(SpectralModelError):
    """Adaptive quadrature did not reach the requested tolerance."""

    def __init__(self, depth: int, message: str = ""):
        self.depth = depth
        super().__init__(f"quadrature failed within {depth} subintervals: {message}")


class InconsistentMatch(SpectralModelError):
    """Exact matching of two expressions failed."""


class DimensionMismatch(SpectralModelError):
    """A matrix representation was requested with an invalid dimension."""
