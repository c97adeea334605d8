"""Dense Hermitian eigenvalues.

Backed by LAPACK through :func:`numpy.linalg.eigvalsh`; callers only rely on
the contract (extreme eigenvalues to ``1e-12 * max(1, ||H||)``).
"""

from __future__ import annotations

import numpy as np

from .errors import NonConvergence, NotHermitian, NotSquare

HERMITIAN_TOL = 1e-12


def as_square(A) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {A.shape}")
    return A


def check_hermitian(H, tol: float = HERMITIAN_TOL) -> np.ndarray:
    H = as_square(H)
    scale = max(1.0, float(np.max(np.abs(H), initial=0.0)))
    err = float(np.max(np.abs(H - H.conj().T), initial=0.0))
    if err > tol * scale:
        raise NotHermitian(f"matrix deviates from its conjugate transpose by {err:.3e}")
    return H


def hermitian_eigenvalues(H) -> np.ndarray:
    """All eigenvalues of a Hermitian matrix, ascending."""
    H = check_hermitian(H)
    if H.shape[0] == 0:
        return np.zeros(0)
    # symmetrize so LAPACK sees exactly Hermitian input
    H = 0.5 * (H + H.conj().T)
    try:
        return np.linalg.eigvalsh(H)
    except np.linalg.LinAlgError as exc:
        raise NonConvergence(f"Hermitian eigensolver failed: {exc}") from None


def hermitian_eigen_range(H) -> tuple[float, float]:
    """Return ``(lambda_min, lambda_max)`` of the Hermitian matrix ``H``."""
    ev = hermitian_eigenvalues(H)
    if ev.size == 0:
        raise NotSquare("empty matrix has no eigenvalues")
    return float(ev[0]), float(ev[-1])


def singular_values(A) -> np.ndarray:
    """Singular values of ``A`` (descending) as square roots of eig(A* A)."""
    A = np.asarray(A, dtype=complex)
    ev = hermitian_eigenvalues(A.conj().T @ A)
    return np.sqrt(np.clip(ev[::-1], 0.0, None))
