"""Real H- and Z-eigenpairs by power iteration.

The iterations here only *find* eigenpairs; whether a pair is an eigenpair is
decided by :func:`verify_h_eigenpair` / :func:`verify_z_eigenpair`, which
evaluate the defining equations directly.  All arithmetic is float64 on the
dense ``n**m`` array.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .checks import CheckReport, Violation
from .core import SubsetTensor, SymTensor, to_dense
from .errors import NoConvergence, NotUnitNorm, ZeroVector

__all__ = [
    "IterationConfig",
    "HEigenpair",
    "ZEigenpair",
    "Verification",
    "dense_array",
    "axm1",
    "axm",
    "verify_h_eigenpair",
    "verify_z_eigenpair",
    "h_eigenpair_power",
    "z_eigenpair_power",
    "check_cp_spectral_properties",
]


@dataclass(frozen=True)
class IterationConfig:
    """Settings shared by both power iterations.

    ``shift`` applies to the Z-iteration; ``None`` means the sum of absolute
    values of all ``n**m`` entries.  ``h_shift`` adds ``h_shift * x^[m-1]`` in
    the H-iteration, which keeps iterates positive on reducible tensors.
    """

    max_iters: int = 20000
    tol: float = 1e-10
    residual_tol: float = 1e-8
    shift: float | None = None
    h_shift: float = 1.0
    seed: int = 0
    starts: int = 8

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        if self.tol <= 0 or self.residual_tol <= 0:
            raise ValueError("tolerances must be positive")


@dataclass
class HEigenpair:
    lam: float
    x: np.ndarray
    residual: float = np.inf
    iterations: int = 0
    converged: bool = False
    monotone_violations: int = 0


@dataclass
class ZEigenpair:
    lam: float
    x: np.ndarray
    residual: float = np.inf
    iterations: int = 0
    converged: bool = False


class Verification(NamedTuple):
    ok: bool
    residual: float
    lam: float


def dense_array(A) -> np.ndarray:
    if isinstance(A, np.ndarray):
        return A.astype(float)
    if isinstance(A, SubsetTensor):
        A = to_dense(A)
    if isinstance(A, SymTensor):
        return A.to_numpy()
    raise TypeError(f"unsupported tensor type {type(A).__name__}")


def axm1(T: np.ndarray, x: np.ndarray) -> np.ndarray:
    """``A x^{m-1}`` for a dense symmetric array."""
    y = T
    for _ in range(T.ndim - 1):
        y = y @ x
    return y


def axm(T: np.ndarray, x: np.ndarray) -> float:
    return float(axm1(T, x) @ x)


def _unpack(pair):
    if isinstance(pair, (HEigenpair, ZEigenpair)):
        return float(pair.lam), np.asarray(pair.x, dtype=float)
    lam, x = pair
    return float(lam), np.asarray(x, dtype=float)


def verify_h_eigenpair(A, pair, tol: float = 1e-8) -> Verification:
    """Check ``A x^{m-1} = lam x^[m-1]`` componentwise.

    ``pair`` is an :class:`HEigenpair` or a ``(lam, x)`` tuple.  The returned
    ``lam`` is recovered from the largest-magnitude component of ``x`` as
    ``(A x^{m-1})_j / x_j^{m-1}``.
    """
    T = dense_array(A)
    lam, x = _unpack(pair)
    if not np.any(x):
        raise ZeroVector("eigenvector must be nonzero")
    m = T.ndim
    y = axm1(T, x)
    residual = float(np.max(np.abs(y - lam * x ** (m - 1))))
    j = int(np.argmax(np.abs(x)))
    recovered = float(y[j] / x[j] ** (m - 1))
    return Verification(residual <= tol, residual, recovered)


def verify_z_eigenpair(A, pair, tol: float = 1e-8) -> Verification:
    """Check ``A x^{m-1} = lam x`` with ``x^T x = 1`` and ``lam = A x^m``."""
    T = dense_array(A)
    lam, x = _unpack(pair)
    if abs(float(x @ x) - 1.0) > tol:
        raise NotUnitNorm(f"x^T x = {float(x @ x):.12g}")
    y = axm1(T, x)
    residual = float(np.max(np.abs(y - lam * x)))
    rayleigh = float(y @ x)
    ok = residual <= tol and abs(rayleigh - lam) <= tol
    return Verification(ok, residual, rayleigh)


def _mnorm(x, m):
    return float(np.sum(np.abs(x) ** m) ** (1.0 / m))


def h_eigenpair_power(A, cfg: IterationConfig = IterationConfig(), x0=None) -> HEigenpair:
    """H-eigenpair of a nonnegative tensor by shifted power iteration.

    Iterates ``x <- ((A + h I) x^{m-1})^[1/(m-1)]`` from a positive start,
    normalised in the ``m``-norm, where ``I x^{m-1} = x^[m-1]``.  The shift
    moves every H-eigenvalue by ``h`` and does not change eigenvectors.  The
    estimate is ``lam = A x^m / sum x_i^m``.

    Raises
    ------
    NoConvergence
        With the last iterate attached as ``best``.
    """
    T = dense_array(A)
    if np.any(T < 0):
        raise ValueError("H power iteration needs a nonnegative tensor")
    if not np.any(T):
        raise ValueError("tensor is identically zero")
    m, n = T.ndim, T.shape[0]
    if x0 is None:
        x0 = np.random.default_rng(cfg.seed).uniform(0.5, 1.5, n)
    x = np.asarray(x0, dtype=float)
    if np.any(x <= 0):
        raise ValueError("start vector must be positive")
    x = x / _mnorm(x, m)
    h = cfg.h_shift
    pair = HEigenpair(axm(T, x), x)
    prev_lam = -np.inf
    for it in range(1, cfg.max_iters + 1):
        y = axm1(T, x) + h * x ** (m - 1)
        x_new = y ** (1.0 / (m - 1))
        x_new /= _mnorm(x_new, m)
        lam = axm(T, x_new)
        residual = float(np.max(np.abs(axm1(T, x_new) - lam * x_new ** (m - 1))))
        if lam < prev_lam - 1e-12 * max(1.0, abs(prev_lam)):
            pair.monotone_violations += 1
        prev_lam = lam
        change = float(np.max(np.abs(x_new - x)))
        x = x_new
        pair.lam, pair.x, pair.residual, pair.iterations = lam, x, residual, it
        if residual <= 0.01 * cfg.residual_tol or (change <= cfg.tol and residual <= cfg.residual_tol):
            pair.converged = True
            return pair
    if pair.residual <= cfg.residual_tol:
        pair.converged = True
        return pair
    raise NoConvergence(cfg.max_iters, pair)


def default_z_shift(T: np.ndarray) -> float:
    return float(np.sum(np.abs(T)))


def z_eigenpair_power(A, cfg: IterationConfig = IterationConfig(), x0=None) -> ZEigenpair:
    """Z-eigenpair by shifted symmetric higher-order power iteration.

    Iterates ``x <- normalize(A x^{m-1} + shift * x)`` on the unit sphere.  The
    default shift is the sum of ``|entries|`` over all ``n**m`` positions, which
    bounds the spectral radius of every ``A x^{m-2}`` with ``|x| = 1``.

    Raises
    ------
    NoConvergence
        With the last iterate attached as ``best``.
    """
    T = dense_array(A)
    n = T.shape[0]
    if x0 is None:
        x0 = np.random.default_rng(cfg.seed).standard_normal(n)
    x = np.asarray(x0, dtype=float)
    norm = np.linalg.norm(x)
    if norm == 0:
        raise ZeroVector("start vector must be nonzero")
    x = x / norm
    alpha = default_z_shift(T) if cfg.shift is None else cfg.shift
    pair = ZEigenpair(axm(T, x), x)
    for it in range(1, cfg.max_iters + 1):
        y = axm1(T, x) + alpha * x
        ny = np.linalg.norm(y)
        if ny == 0:
            # A x^{m-1} = -shift x exactly
            g = axm1(T, x)
            pair.lam = float(g @ x)
            pair.residual = float(np.max(np.abs(g - pair.lam * x)))
            break
        x_new = y / ny
        g = axm1(T, x_new)
        lam = float(g @ x_new)
        residual = float(np.max(np.abs(g - lam * x_new)))
        change = float(np.max(np.abs(x_new - x)))
        x = x_new
        pair.lam, pair.x, pair.residual, pair.iterations = lam, x, residual, it
        if residual <= 0.01 * cfg.residual_tol or (change <= cfg.tol and residual <= cfg.residual_tol):
            pair.converged = True
            return pair
    if pair.residual <= cfg.residual_tol:
        pair.converged = True
        return pair
    raise NoConvergence(cfg.max_iters, pair)


def _starts(cfg: IterationConfig, n: int, positive: bool):
    rng = np.random.default_rng(cfg.seed)
    for _ in range(cfg.starts):
        if positive:
            yield rng.uniform(0.1, 1.0, n)
        else:
            v = rng.standard_normal(n)
            yield v / np.linalg.norm(v)


def multistart_h(A, cfg: IterationConfig = IterationConfig()):
    """Run the H-iteration from ``cfg.starts`` seeded positive starts.

    Returns ``(pairs, failures)``; failures carry their best iterate.
    """
    T = dense_array(A)
    pairs, failures = [], []
    for x0 in _starts(cfg, T.shape[0], positive=True):
        try:
            pairs.append(h_eigenpair_power(T, cfg, x0))
        except NoConvergence as exc:
            failures.append(exc.best)
    return pairs, failures


def multistart_z(A, cfg: IterationConfig = IterationConfig()):
    T = dense_array(A)
    pairs, failures = [], []
    for x0 in _starts(cfg, T.shape[0], positive=False):
        try:
            pairs.append(z_eigenpair_power(T, cfg, x0))
        except NoConvergence as exc:
            failures.append(exc.best)
    return pairs, failures


def check_cp_spectral_properties(A, factors, cfg: IterationConfig = IterationConfig(),
                                 sign_tol: float = 1e-8) -> CheckReport:
    """Check the eigenvalue sign properties every CP tensor must have.

    On each converged pair found from ``cfg.starts`` starts: H-eigenvalues
    are nonnegative; for even ``m`` Z-eigenvalues are nonnegative; for odd
    ``m`` a Z-eigenvector of a positive (negative) Z-eigenvalue is
    nonnegative (nonpositive).  Starts that fail to converge are listed in
    ``details["h_failures"]`` / ``details["z_failures"]`` and do not fail the
    report.
    """
    T = dense_array(A)
    m = T.ndim
    rebuilt = dense_array(factors.tensor())
    gap = float(np.max(np.abs(rebuilt - T)))
    if gap > 1e-8 * max(1.0, float(np.max(np.abs(T)))):
        raise ValueError(f"factors do not reproduce the tensor (max gap {gap:.3e})")
    report = CheckReport("CP spectral properties")
    h_pairs, h_fail = multistart_h(T, cfg)
    z_pairs, z_fail = multistart_z(T, cfg)
    for k, p in enumerate(h_pairs):
        if not verify_h_eigenpair(T, p, cfg.residual_tol).ok:
            report.violations.append(Violation("h-verify", (k,), p.residual, cfg.residual_tol))
        if p.lam < -sign_tol:
            report.violations.append(Violation("h-nonnegative", (k,), p.lam, 0.0))
    for k, p in enumerate(z_pairs):
        if not verify_z_eigenpair(T, p, cfg.residual_tol).ok:
            report.violations.append(Violation("z-verify", (k,), p.residual, cfg.residual_tol))
        if m % 2 == 0:
            if p.lam < -sign_tol:
                report.violations.append(Violation("z-nonnegative", (k,), p.lam, 0.0))
        elif p.lam > sign_tol and np.min(p.x) < -sign_tol:
            report.violations.append(Violation("z-vector-sign", (k,), float(np.min(p.x)), 0.0))
        elif p.lam < -sign_tol and np.max(p.x) > sign_tol:
            report.violations.append(Violation("z-vector-sign", (k,), float(np.max(p.x)), 0.0))
    report.details.update(
        h_pairs=h_pairs, z_pairs=z_pairs, h_failures=h_fail, z_failures=z_fail
    )
    return report
