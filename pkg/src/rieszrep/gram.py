"""Head/tail Gram matrices, the mixing matrix, and the Riesz-basis test.

For a replacement problem and a cut ``N`` the head projection of ``w_j`` keeps
coordinates ``1..N`` and the tail projection keeps ``N+1..M``.  Replacing the
first ``N`` basis vectors gives a Riesz basis exactly when the head
projections of ``w_1..w_N`` are linearly independent, i.e. when the smallest
eigenvalue of the head Gram matrix is positive.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coeff import ReplacementProblem, check_n
from .linalg import hermitian_eigen_range, hermitian_eigenvalues


@dataclass(frozen=True)
class RieszVerdict:
    N: int
    is_riesz_basis: bool
    lambda_min_head: float
    rank_head: int


def _gram(X: np.ndarray) -> np.ndarray:
    # entry (i, j) = sum_k X[i, k] conj(X[j, k])
    return X @ X.conj().T


def gram_head(problem: ReplacementProblem, N: int) -> np.ndarray:
    """N x N matrix ``<p'_N(w_i), p'_N(w_j)>``."""
    N = check_n(problem, N)
    return _gram(problem.vectors[:N, :N])


def gram_tail(problem: ReplacementProblem, N: int) -> np.ndarray:
    """N x N matrix ``<p''_N(w_i), p''_N(w_j)>``; zero when ``N == M``."""
    N = check_n(problem, N)
    return _gram(problem.vectors[:N, N:])


def gram_full(problem: ReplacementProblem, N: int) -> np.ndarray:
    """N x N matrix ``<w_i, w_j>`` (sum of the head and tail Gram matrices)."""
    N = check_n(problem, N)
    return _gram(problem.vectors[:N, :])


def mixing_matrix(problem: ReplacementProblem, N: int) -> np.ndarray:
    """N x N matrix with entry ``(j, k) = <w_j, v_k>``."""
    N = check_n(problem, N)
    return problem.vectors[:N, :N].copy()


def riesz_basis_test(problem: ReplacementProblem, N: int) -> RieszVerdict:
    """Decide whether ``{w_1..w_N, v_{N+1}, ...}`` is a Riesz basis.

    Frame, Riesz sequence and Riesz basis status coincide here, so a single
    eigenvalue check on the head Gram matrix settles all three.
    """
    U = gram_head(problem, N)
    ev = hermitian_eigenvalues(U)
    lam_min = float(ev[0])
    rank = int(np.count_nonzero(ev > problem.rank_tol))
    return RieszVerdict(
        N=int(N),
        is_riesz_basis=lam_min > problem.rank_tol,
        lambda_min_head=lam_min,
        rank_head=rank,
    )


def head_eigen_range(problem: ReplacementProblem, N: int) -> tuple[float, float]:
    return hermitian_eigen_range(gram_head(problem, N))
