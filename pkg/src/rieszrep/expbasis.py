"""Exponential Riesz bases on interval unions and the unit box.

The reference orthonormal basis of ``L^2(D)`` is ``{e(m . x)}`` over integer
vectors ``m``, which is orthonormal and complete exactly when ``D`` tiles by
integer translates (or is the unit box).  Replacing its first ``N`` elements
by ``e(lambda_j . x)`` gives the mixing matrix

    m_{j,k} = <e(lambda_j), e(m_k)> = integral over D of exp(2 pi i (lambda_j - m_k) . x)

Diagonal dominance of that matrix, uniformly in ``N``, certifies a Riesz
basis with computable bounds.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConditionViolated, MeasureNotOne, OverlappingIntervals, ValidationError
from .gershgorin import sigma_min_lower_bound

TILING_TOL = 1e-10
MEASURE_TOL = 1e-10
CERTIFICATE_NOTE = (
    "certified for all checked N: the off-diagonal sums are nondecreasing in N, "
    "so the condition at N implies it for every smaller truncation; larger N are not checked"
)


@dataclass(frozen=True)
class Domain:
    """``kind`` is ``'interval_union'`` (d = 1) or ``'unit_box'`` (``[0,1)^d``)."""

    kind: str
    intervals: tuple[tuple[float, float], ...] = ()
    d: int = 1

    @property
    def measure(self) -> float:
        if self.kind == "unit_box":
            return 1.0
        return float(sum(b - a for a, b in self.intervals))


def unit_box(d: int = 1) -> Domain:
    if d < 1:
        raise ValidationError("dimension must be >= 1")
    return Domain("unit_box", (), int(d))


def _mod1_pieces(intervals) -> list[tuple[float, float]]:
    pieces = []
    for a, b in intervals:
        a, b = float(a), float(b)
        k = math.floor(a)
        while a < b:
            hi = min(b, k + 1.0)
            pieces.append((a - k, hi - k))
            a = hi
            k += 1
    return pieces


def tiling_check(domain_or_intervals) -> bool:
    """True iff the intervals reduced modulo 1 cover [0, 1) exactly once.

    Endpoint coincidences within ``TILING_TOL`` are ignored.
    """
    if isinstance(domain_or_intervals, Domain):
        if domain_or_intervals.kind == "unit_box":
            return True
        intervals = domain_or_intervals.intervals
    else:
        intervals = domain_or_intervals
    pieces = sorted(_mod1_pieces(intervals))
    pos = 0.0
    for a, b in pieces:
        if abs(a - pos) > TILING_TOL:
            return False  # overlap (a < pos) or gap (a > pos)
        pos = max(pos, b)
    return abs(pos - 1.0) <= TILING_TOL


def make_domain(intervals) -> Domain:
    """Validated interval-union domain of total measure 1 that tiles by Z."""
    ivs = []
    for iv in intervals:
        if len(iv) != 2:
            raise ValidationError(f"interval {iv!r} must be an [alpha, beta) pair")
        a, b = float(iv[0]), float(iv[1])
        if not (math.isfinite(a) and math.isfinite(b)) or not a < b:
            raise ValidationError(f"interval [{a}, {b}) must satisfy alpha < beta")
        ivs.append((a, b))
    if not ivs:
        raise ValidationError("at least one interval is required")
    ivs.sort()
    for (a0, b0), (a1, b1) in zip(ivs, ivs[1:]):
        if a1 < b0 - TILING_TOL:
            raise OverlappingIntervals(f"[{a0}, {b0}) and [{a1}, {b1}) overlap")
    total = sum(b - a for a, b in ivs)
    if abs(total - 1.0) > MEASURE_TOL:
        raise MeasureNotOne(f"total measure {total!r} differs from 1")
    if not tiling_check(ivs):
        raise ValidationError("intervals do not tile [0, 1) modulo 1")
    return Domain("interval_union", tuple(ivs), 1)


def lattice_points(d: int, count: int) -> np.ndarray:
    """First ``count`` integer vectors of Z^d in enumeration order.

    d = 1: 0, 1, -1, 2, -2, ...; d > 1: shells of growing max-norm, each
    shell in lexicographic order.  Returns shape ``(count, d)``.
    """
    if d < 1 or count < 0:
        raise ValidationError("need d >= 1 and count >= 0")
    out: list[tuple[int, ...]] = []
    if d == 1:
        out.append((0,))
        k = 1
        while len(out) < count:
            out.extend([(k,), (-k,)])
            k += 1
    else:
        r = 0
        while len(out) < count:
            for p in itertools.product(range(-r, r + 1), repeat=d):
                if max(abs(x) for x in p) == r:
                    out.append(p)
            r += 1
    return np.array(out[:count], dtype=int).reshape(count, d)


def _interval_integral(theta: np.ndarray, a: float, b: float) -> np.ndarray:
    # integral_a^b exp(2 pi i theta x) dx = L exp(pi i theta (a+b)) sinc(theta L)
    L = b - a
    return L * np.exp(1j * np.pi * theta * (a + b)) * np.sinc(theta * L)


def _coeff_array(domain: Domain, theta: np.ndarray) -> np.ndarray:
    """Coefficients for ``theta`` of shape ``(..., d)``."""
    if domain.kind == "unit_box":
        return np.prod(_interval_integral(theta, 0.0, 1.0), axis=-1)
    th = theta[..., 0]
    total = np.zeros(th.shape, dtype=complex)
    for a, b in domain.intervals:
        total += _interval_integral(th, a, b)
    return total


def _as_points(x, d: int) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.shape[-1] != d:
        if d == 1:
            arr = arr[..., None]
        else:
            raise ValidationError(f"expected {d}-dimensional points, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("frequencies must be finite")
    return arr


def fourier_coeff(domain: Domain, lam, m) -> complex:
    """``integral over D of exp(2 pi i (lam - m) . x) dx`` in closed form."""
    lam = _as_points(lam, domain.d)
    m = _as_points(m, domain.d)
    return complex(_coeff_array(domain, lam - m).reshape(-1)[0])


def coefficient_matrix(domain: Domain, freqs, N: int, enumeration=None) -> np.ndarray:
    """N x N matrix ``m_{j,k} = fourier_coeff(domain, lambda_j, m_k)``.

    ``enumeration`` defaults to :func:`lattice_points` order.
    """
    lam = _as_points(freqs, domain.d).reshape(-1, domain.d)
    if N < 1 or N > lam.shape[0]:
        raise ValidationError(f"N={N} outside 1..{lam.shape[0]}")
    ms = lattice_points(domain.d, N) if enumeration is None else _as_points(enumeration, domain.d)
    ms = ms.reshape(-1, domain.d)[:N]
    theta = lam[:N, None, :] - ms[None, :, :]
    return _coeff_array(domain, theta)


@dataclass(frozen=True)
class ExpCertificate:
    """Outcome of the diagonal-dominance test on the coefficient matrix.

    ``A_lower = a delta`` and ``B_upper = a' + a(1 - delta)`` are the classical
    certificate values; ``A_lower`` bounds the smallest singular value of the
    matrix from below.  Frame constants are squared singular values, so the
    sound frame bounds are ``frame_lower = (a delta)^2`` and
    ``frame_upper = (a' + 2a(1 - delta))^2``, the latter from the singular-value
    intervals with ``s_k <= R_k + C_k``.
    """

    N: int
    a: float
    a_prime: float
    delta: float
    condition_holds: bool
    A_lower: float
    B_upper: float
    worst_row: int  # 0-based
    worst_sum: float
    sigma_min_lower: float
    frame_lower: float = 0.0
    frame_upper: float = math.inf
    note: str = CERTIFICATE_NOTE


def suff_basis_check(
    domain: Domain,
    freqs,
    N: int,
    a: float,
    a_prime: float,
    delta: float,
    *,
    raise_on_violation: bool = True,
) -> ExpCertificate:
    """Check ``a <= |m_kk| <= a'`` and ``R_k + C_k <= 2 a (1 - delta)`` for k <= N.

    On success ``A_lower = a delta`` and ``B_upper = a' + a(1 - delta)`` are
    reported together with the squared, frame-level bounds (see
    :class:`ExpCertificate`).  A violation raises :class:`ConditionViolated` carrying the
    certificate, unless ``raise_on_violation`` is false.
    """
    if not (0 < a <= a_prime):
        raise ValidationError("need 0 < a <= a_prime")
    if not 0 < delta < 1:
        raise ValidationError("need 0 < delta < 1")
    Mx = coefficient_matrix(domain, freqs, N)
    absM = np.abs(Mx)
    diag = np.diag(absM)
    off = absM.sum(axis=1) + absM.sum(axis=0) - 2 * diag
    budget = 2 * a * (1 - delta)
    worst = int(np.argmax(off))

    reason = None
    diag_bad = np.flatnonzero((diag < a) | (diag > a_prime))
    if diag_bad.size:
        worst = int(diag_bad[0])
        reason = f"diagonal magnitude {diag[worst]!r} outside [{a}, {a_prime}]"
    elif off[worst] > budget:
        reason = f"off-diagonal sum exceeds 2a(1-delta) = {budget!r}"
    holds = reason is None
    cert = ExpCertificate(
        N=int(N),
        a=float(a),
        a_prime=float(a_prime),
        delta=float(delta),
        condition_holds=holds,
        A_lower=float(a * delta) if holds else 0.0,
        B_upper=float(a_prime + a * (1 - delta)) if holds else math.inf,
        worst_row=worst,
        worst_sum=float(off[worst]),
        sigma_min_lower=sigma_min_lower_bound(Mx),
        frame_lower=float((a * delta) ** 2) if holds else 0.0,
        frame_upper=float((a_prime + 2 * a * (1 - delta)) ** 2) if holds else math.inf,
    )
    if not holds and raise_on_violation:
        raise ConditionViolated(worst, float(off[worst]), reason, cert)
    return cert


def suggest_parameters(domain: Domain, freqs, N: int) -> tuple[float, float, float] | None:
    """``(a, a', delta)`` read off the measured coefficient matrix, or None.

    ``a``/``a'`` are the extreme diagonal magnitudes and ``delta`` the largest
    value allowed by the worst off-diagonal sum; None when that is not positive.
    """
    Mx = coefficient_matrix(domain, freqs, N)
    absM = np.abs(Mx)
    diag = np.diag(absM)
    off = absM.sum(axis=1) + absM.sum(axis=0) - 2 * diag
    a = float(diag.min())
    if a <= 0:
        return None
    delta = 1.0 - float(off.max()) / (2 * a)
    if not 0 < delta < 1:
        delta = min(delta, 1.0 - 1e-15)
        if delta <= 0:
            return None
    return a, float(diag.max()), delta


def feasibility_bound(delta: float) -> float:
    return math.sqrt(1.0 + (1.0 - delta) ** 2) - (1.0 - delta)


def remark_feasibility(a: float, delta: float) -> bool:
    """Whether ``a <= sqrt(1 + (1 - delta)^2) - (1 - delta)`` (needs |D| = 1)."""
    if not 0 < delta < 1 or a <= 0:
        raise ValidationError("need 0 < delta < 1 and a > 0")
    return a <= feasibility_bound(delta)
