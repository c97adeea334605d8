"""Optimal frame constants of the replaced systems.

Three independent routes are provided:

* ``tilde_constants`` -- singular values of the mixing matrix ``M_N`` give the
  constants of the system built from the head projections;
* ``exact_constants`` -- eigenvalues of the full Gram matrix of
  ``{w_1..w_N, v_{N+1}..v_M}``, clamped against 1 for the untouched tail;
* ``variational_constants`` (see :mod:`rieszrep.variational`) -- direct
  optimization over the coefficient ball.

``closed_form_n1`` handles a single replacement analytically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coeff import ReplacementProblem, check_n, validate_problem
from .errors import NonConvergence
from .gram import RieszVerdict, mixing_matrix, riesz_basis_test
from .linalg import hermitian_eigen_range

METHODS = ("eigen_oracle", "tilde_singular", "variational", "closed_form_n1")


@dataclass(frozen=True)
class FrameConstants:
    lower: float
    upper: float
    method: str
    degenerate: bool = False

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")


def tilde_constants(problem: ReplacementProblem, N: int) -> FrameConstants:
    """Constants of ``{p'_N(w_1)..p'_N(w_N), v_{N+1}, ...}``.

    lower = sigma_min(M_N)^2, upper = max(sigma_max(M_N)^2, 1).  A failed
    Riesz test reports lower = 0 with ``degenerate=True``.
    """
    M_N = mixing_matrix(problem, N)
    try:
        sv = np.linalg.svd(M_N, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NonConvergence(f"SVD failed: {exc}") from None
    lower = float(sv[-1]) ** 2
    upper = max(float(sv[0]) ** 2, 1.0)
    degenerate = not riesz_basis_test(problem, N).is_riesz_basis
    if degenerate:
        lower = 0.0
    return FrameConstants(lower, upper, "tilde_singular", degenerate)


def replaced_system(problem: ReplacementProblem, N: int) -> np.ndarray:
    """Rows ``w_1..w_N`` followed by ``v_{N+1}..v_M`` as an M x M array."""
    N = check_n(problem, N)
    M = problem.ambient_dim
    X = np.zeros((M, M), dtype=complex)
    X[:N] = problem.vectors[:N]
    X[np.arange(N, M), np.arange(N, M)] = 1.0
    return X


def exact_constants(problem: ReplacementProblem, N: int) -> FrameConstants:
    """Eigenvalue oracle on the finite Gram matrix of the replaced system."""
    X = replaced_system(problem, N)
    lam_min, lam_max = hermitian_eigen_range(X @ X.conj().T)
    lower = min(max(lam_min, 0.0), 1.0)
    upper = max(lam_max, 1.0)
    return FrameConstants(lower, upper, "eigen_oracle", lam_min <= problem.rank_tol)


def closed_form_n1(problem: ReplacementProblem) -> FrameConstants:
    """``(1 - ||w''_1||, 1 + ||w''_1||)`` for the single replacement ``N = 1``."""
    validate_problem(problem)
    tail = problem.vectors[0, 1:]
    t = math.sqrt(float(np.sum(np.abs(tail) ** 2)))
    return FrameConstants(1.0 - t, 1.0 + t, "closed_form_n1", t >= 1.0 - problem.rank_tol)


@dataclass(frozen=True)
class SweepRecord:
    N: int
    tilde: FrameConstants
    exact: FrameConstants
    riesz: RieszVerdict


@dataclass(frozen=True)
class SweepReport:
    """Per-N constants over the window ``1..n_max``.

    ``liminf_A``/``limsup_B`` are window estimates: the inf/sup of the exact
    constants over the trailing ``window_fraction`` of the analyzed range.
    """

    per_N: tuple[SweepRecord, ...]
    liminf_A: float
    limsup_B: float
    tail_energy: tuple[float, ...]
    uniform_convergence_hint: bool
    window_start: int
    estimate_label: str = "window estimate"


def tail_energies(problem: ReplacementProblem, n_max: int | None = None) -> np.ndarray:
    """``||v_n - w_n||^2`` for ``n = 1..n_max``."""
    K = problem.n_replacements if n_max is None else check_n(problem, n_max)
    W = problem.vectors[:K]
    diff = W.copy()
    diff[np.arange(K), np.arange(K)] -= 1.0
    return np.sum(np.abs(diff) ** 2, axis=1)


def sweep(
    problem: ReplacementProblem,
    n_max: int | None = None,
    *,
    window_fraction: float = 0.5,
    hint_tol: float = 1e-2,
) -> SweepReport:
    """Tilde and exact constants for every ``N = 1..n_max`` (default ``K``).

    The uniform-convergence hint is set when the tail energies summed over
    the trailing window stay below ``hint_tol``, i.e. the partial sums of
    ``||v_n - w_n||^2`` have flattened out.
    """
    validate_problem(problem)
    K = problem.n_replacements if n_max is None else check_n(problem, n_max)
    if not 0.0 < window_fraction <= 1.0:
        raise ValueError("window_fraction must lie in (0, 1]")
    records = tuple(
        SweepRecord(N, tilde_constants(problem, N), exact_constants(problem, N), riesz_basis_test(problem, N))
        for N in range(1, K + 1)
    )
    energy = tail_energies(problem, K)
    start = K - max(1, math.ceil(window_fraction * K)) + 1
    window = records[start - 1 :]
    return SweepReport(
        per_N=records,
        liminf_A=min(r.exact.lower for r in window),
        limsup_B=max(r.exact.upper for r in window),
        tail_energy=tuple(float(e) for e in energy),
        uniform_convergence_hint=bool(float(np.sum(energy[start - 1 :])) <= hint_tol),
        window_start=start,
    )
