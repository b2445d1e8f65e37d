"""Exception types raised across the package."""
from __future__ import annotations


class CPTensorError(Exception):
    """Base class for all package errors."""


class IndexOutOfRange(CPTensorError, IndexError):
    pass


class WrongArity(CPTensorError, ValueError):
    pass


class DimensionMismatch(CPTensorError, ValueError):
    pass


class NotStronglySymmetric(CPTensorError, ValueError):
    """Two similar multi-indices carry different entries.

    ``witness`` is the pair of canonical multi-indices and ``values`` the two
    entries found there.
    """

    def __init__(self, witness, values):
        self.witness = witness
        self.values = values
        super().__init__(
            f"entries at {witness[0]} and {witness[1]} share the index set "
            f"{sorted(set(witness[0]))} but differ ({values[0]} != {values[1]})"
        )


class InvalidDuplicate(CPTensorError, ValueError):
    def __init__(self, message, index=None):
        self.index = index
        super().__init__(message)


class OrderTooSmall(CPTensorError, ValueError):
    pass


class BadDepth(CPTensorError, ValueError):
    pass


class ResidualNonzero(CPTensorError, ArithmeticError):
    def __init__(self, residual, tol):
        self.residual = residual
        self.tol = tol
        super().__init__(f"elimination residual {residual:.3e} exceeds {tol:.1e}")


class NegativeCoefficient(CPTensorError, ValueError):
    def __init__(self, term):
        self.term = term
        super().__init__(
            f"coefficient {term.coefficient} on support {term.support} is negative; "
            "no CP factorization is certified"
        )


class NotCpDecomposition(NegativeCoefficient):
    pass


class ZeroVector(CPTensorError, ValueError):
    pass


class NotUnitNorm(CPTensorError, ValueError):
    pass


class NoConvergence(CPTensorError, RuntimeError):
    """Iteration hit ``max_iters``; ``best`` holds the last iterate."""

    def __init__(self, max_iters, best):
        self.max_iters = max_iters
        self.best = best
        super().__init__(
            f"no convergence after {max_iters} iterations "
            f"(residual {best.residual:.3e})"
        )


class NotCopositive(CPTensorError, ValueError):
    def __init__(self, verdict):
        self.verdict = verdict
        super().__init__(
            f"B x^m = {verdict.value:.6g} < 0 at x = {list(verdict.witness)}"
        )


class ParseError(CPTensorError, ValueError):
    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class DuplicateEntry(ParseError):
    def __init__(self, line, key):
        self.key = key
        super().__init__(line, f"duplicate entry for {key}")
