"""Coefficient representation of vectors against a fixed orthonormal basis.

A vector ``w`` of the Hilbert space is stored as the complex array
``(<w, v_1>, ..., <w, v_M>)``; everything beyond the ambient dimension ``M``
is assumed to be zero.  Indices are 0-based in arrays, so replacement vector
``w_j`` (1-based in the math) lives in row ``j - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    NonFiniteEntry,
    NonUnitVector,
    TooManyReplacements,
    ValidationError,
)

DEFAULT_UNIT_TOL = 1e-10
DEFAULT_RANK_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class ReplacementProblem:
    """Ambient dimension ``M`` plus replacement vectors ``w_1..w_K``.

    ``vectors`` has shape ``(K, M)``; row ``j`` holds the coefficients of
    ``w_{j+1}``.  Construct through :func:`make_problem` to get validation.
    """

    ambient_dim: int
    vectors: np.ndarray
    unit_tol: float = DEFAULT_UNIT_TOL
    rank_tol: float = DEFAULT_RANK_TOL

    @property
    def n_replacements(self) -> int:
        return int(self.vectors.shape[0])

    def __eq__(self, other):
        if not isinstance(other, ReplacementProblem):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.unit_tol == other.unit_tol
            and self.rank_tol == other.rank_tol
            and self.vectors.shape == other.vectors.shape
            and bool(np.array_equal(self.vectors, other.vectors))
        )


def as_vector(w) -> np.ndarray:
    arr = np.asarray(w, dtype=complex)
    if arr.ndim != 1:
        raise DimensionMismatch(f"expected a 1-D coefficient vector, got shape {arr.shape}")
    return arr


def validate_problem(problem: ReplacementProblem) -> ReplacementProblem:
    """Check the invariants of ``problem`` and return it unchanged.

    Raises NonFiniteEntry, DimensionMismatch, TooManyReplacements or
    NonUnitVector (with the 1-based index of the offending vector).
    """
    M = problem.ambient_dim
    if not isinstance(M, (int, np.integer)) or M < 1:
        raise ValidationError(f"ambient_dim must be a positive integer, got {M!r}")
    for name in ("unit_tol", "rank_tol"):
        tol = getattr(problem, name)
        if not np.isfinite(tol) or tol < 0:
            raise ValidationError(f"{name} must be a finite non-negative number, got {tol!r}")
    W = problem.vectors
    if W.ndim != 2:
        raise DimensionMismatch(f"vectors must be a (K, M) array, got shape {W.shape}")
    K, cols = W.shape
    if K < 1:
        raise ValidationError("at least one replacement vector is required")
    if cols != M:
        raise DimensionMismatch(f"coefficient length {cols} differs from ambient_dim {M}")
    if not np.all(np.isfinite(W)):
        raise NonFiniteEntry("replacement vectors contain NaN or Inf")
    if K > M:
        raise TooManyReplacements(f"{K} replacement vectors exceed ambient_dim {M}")
    norms = np.sum(np.abs(W) ** 2, axis=1)
    for j, nsq in enumerate(norms):
        if abs(nsq - 1.0) > problem.unit_tol:
            raise NonUnitVector(j + 1, float(nsq))
    return problem


def make_problem(
    vectors,
    ambient_dim: int | None = None,
    unit_tol: float = DEFAULT_UNIT_TOL,
    rank_tol: float = DEFAULT_RANK_TOL,
    *,
    validate: bool = True,
) -> ReplacementProblem:
    """Build a problem from a nested sequence of coefficients.

    With ``validate=False`` only the array is formed; call
    :func:`validate_problem` before analysing it.
    """
    try:
        W = np.array(vectors, dtype=complex)
    except ValueError as exc:
        raise DimensionMismatch(f"ragged coefficient vectors: {exc}") from None
    if W.ndim == 1:
        W = W[None, :]
    if ambient_dim is None:
        ambient_dim = W.shape[1]
    W.setflags(write=False)
    problem = ReplacementProblem(int(ambient_dim), W, unit_tol, rank_tol)
    return validate_problem(problem) if validate else problem


def inner(u, v) -> complex:
    """``<u, v> = sum_k u_k conj(v_k)``; linear in ``u``, conjugate-linear in ``v``."""
    u = as_vector(u)
    v = as_vector(v)
    if u.shape != v.shape:
        raise DimensionMismatch(f"lengths differ: {u.shape[0]} vs {v.shape[0]}")
    return complex(np.sum(u * np.conj(v)))


def norm_sq(w) -> float:
    w = as_vector(w)
    return float(np.sum(w.real**2 + w.imag**2))


def split_projections(w, N: int) -> tuple[np.ndarray, np.ndarray]:
    """Split ``w`` into its coordinates on ``v_1..v_N`` and on ``v_{N+1}..v_M``."""
    w = as_vector(w)
    if not 1 <= N <= w.shape[0]:
        raise IndexOutOfRange(f"N={N} outside 1..{w.shape[0]}")
    return w[:N].copy(), w[N:].copy()


def check_n(problem: ReplacementProblem, N: int) -> int:
    K = problem.n_replacements
    if not isinstance(N, (int, np.integer)) or not 1 <= N <= K:
        raise IndexOutOfRange(f"N={N} outside 1..{K}")
    return int(N)
