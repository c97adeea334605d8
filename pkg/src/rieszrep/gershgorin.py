"""Gershgorin-type enclosures for singular values of square matrices.

With off-diagonal absolute row sums ``R_i``, column sums ``C_i`` and
``s_i = max(R_i, C_i)``:

* every singular value lies in the union of ``[(|a_ii| - s_i)_+, |a_ii| + s_i]``;
* ``sigma_min >= min_k |a_kk| - (R_k + C_k) / 2``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import as_square


@dataclass(frozen=True)
class GershgorinReport:
    row_sums: tuple[float, ...]
    col_sums: tuple[float, ...]
    s: tuple[float, ...]
    intervals: tuple[tuple[float, float], ...]
    sigma_min_lower: float

    @property
    def certifies_nonsingular(self) -> bool:
        return self.sigma_min_lower > 0.0

    def contains(self, value: float, tol: float = 0.0) -> bool:
        return any(lo - tol <= value <= hi + tol for lo, hi in self.intervals)


def row_col_sums(A) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    A = as_square(A)
    absA = np.abs(A)
    diag = np.diag(absA)
    R = absA.sum(axis=1) - diag
    C = absA.sum(axis=0) - diag
    return R, C, np.maximum(R, C)


def singular_intervals(A) -> list[tuple[float, float]]:
    A = as_square(A)
    _, _, s = row_col_sums(A)
    d = np.abs(np.diag(A))
    return [(float(max(di - si, 0.0)), float(di + si)) for di, si in zip(d, s)]


def sigma_min_lower_bound(A) -> float:
    """Lower bound on the smallest singular value; may be negative (no certificate)."""
    A = as_square(A)
    R, C, _ = row_col_sums(A)
    d = np.abs(np.diag(A))
    return float(np.min(d - 0.5 * (R + C)))


def gershgorin_report(A) -> GershgorinReport:
    A = as_square(A)
    R, C, s = row_col_sums(A)
    return GershgorinReport(
        row_sums=tuple(map(float, R)),
        col_sums=tuple(map(float, C)),
        s=tuple(map(float, s)),
        intervals=tuple(singular_intervals(A)),
        sigma_min_lower=sigma_min_lower_bound(A),
    )
