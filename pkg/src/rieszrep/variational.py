"""Frame constants from the variational formulas over the unit ball.

For a cut ``N`` with head/tail Gram matrices ``U'`` and ``U''``::

    phi_pm(c) = <U' c, c> + (sqrt(1 - |c|^2) +- sqrt(<U'' c, c>))^2

the optimal upper constant is ``max phi_+`` and the lower one ``min phi_-``
over ``c`` in the closed complex unit ball of C^N.  ``c = 0`` gives 1, so the
upper constant is always >= 1 and the lower one <= 1.

The extremal problems are solved by multistart projected gradient ascent on
the real ``2N``-dimensional parameterization of ``c``.  All restarts run as
one batched array computation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coeff import ReplacementProblem, check_n
from .errors import NonConvergence, ValidationError
from .frame_constants import FrameConstants
from .gram import gram_head, gram_tail

SQRT_GUARD = 1e-14
_ARMIJO = 1e-4
_MEMORY = 10
_T_FLOOR = 1e-12


@dataclass(frozen=True)
class VariationalOptions:
    restarts: int = 64
    max_iters: int = 2000
    step_tol: float = 1e-10
    value_tol: float = 1e-9
    seed: int = 0

    def __post_init__(self):
        if self.restarts < 1:
            raise ValidationError("restarts must be >= 1")
        if self.max_iters < 1:
            raise ValidationError("max_iters must be >= 1")


@dataclass(frozen=True)
class ExtremumResult:
    value: float
    argmax: np.ndarray
    iterations: int
    converged_restarts: int


def _hform(C: np.ndarray, U: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Batched ``<U c, c>`` and ``U c`` for the rows of ``C``."""
    UC = C @ U.T
    return np.einsum("ri,ri->r", C.conj(), UC).real, UC


def phi(c, U_head: np.ndarray, U_tail: np.ndarray, sign: int) -> np.ndarray:
    """Objective values for one vector or a batch (rows) of coefficient vectors."""
    C = np.atleast_2d(np.asarray(c, dtype=complex))
    qh, _ = _hform(C, U_head)
    qt, _ = _hform(C, U_tail)
    r2 = np.sum(C.real**2 + C.imag**2, axis=1)
    t = np.sqrt(np.maximum(1.0 - r2, 0.0))
    s = np.sqrt(np.maximum(qt, 0.0))
    val = qh + (t + sign * s) ** 2
    return val if np.ndim(c) > 1 else val[0]


class _Objective:
    """phi_pm on real coordinates ``x = (Re c, Im c)``, scaled by ``orient``.

    ``orient = +1`` maximizes, ``-1`` turns minimization into maximization.
    """

    def __init__(self, U_head, U_tail, sign, orient):
        self.Uh = U_head
        self.Ut = U_tail
        self.sign = sign
        self.orient = orient
        self.n = U_head.shape[0]

    def complex_of(self, X):
        return X[:, : self.n] + 1j * X[:, self.n :]

    def value(self, X):
        return self.orient * phi(self.complex_of(X), self.Uh, self.Ut, self.sign)

    def value_grad(self, X):
        C = self.complex_of(X)
        qh, UhC = _hform(C, self.Uh)
        qt, UtC = _hform(C, self.Ut)
        r2 = np.sum(X**2, axis=1)
        t = np.sqrt(np.maximum(1.0 - r2, 0.0))
        s = np.sqrt(np.maximum(qt, 0.0))
        inner = t + self.sign * s
        val = qh + inner**2

        g_qh = 2.0 * np.concatenate([UhC.real, UhC.imag], axis=1)
        g_qt = 2.0 * np.concatenate([UtC.real, UtC.imag], axis=1)
        g_t = -X / np.maximum(t, _T_FLOOR)[:, None]
        live = qt >= SQRT_GUARD
        g_s = np.where(live[:, None], g_qt / (2.0 * np.where(live, s, 1.0))[:, None], 0.0)
        # d(t^2) = -2x is written out so it survives t = 0 on the sphere
        grad = (
            g_qh
            - 2.0 * X
            + 2.0 * self.sign * s[:, None] * g_t
            + 2.0 * self.sign * inner[:, None] * g_s
        )
        return self.orient * val, self.orient * grad


def _project(X):
    r = np.sqrt(np.sum(X**2, axis=1))
    scale = np.where(r > 1.0, 1.0 / np.maximum(r, 1e-300), 1.0)
    return X * scale[:, None]


def _random_ball(rng: np.random.Generator, restarts: int, dim: int) -> np.ndarray:
    G = rng.standard_normal((restarts, dim))
    G /= np.linalg.norm(G, axis=1, keepdims=True)
    radius = rng.uniform(0.0, 1.0, size=restarts) ** (1.0 / dim)
    return G * radius[:, None]


def _ascend(obj: _Objective, X0: np.ndarray, opts: VariationalOptions) -> ExtremumResult:
    """Spectral projected gradient ascent, all restarts advanced in lockstep.

    Each restart holds a Barzilai-Borwein step ``alpha`` and a backtracking
    factor ``lam``; a trial point ``x + lam * d`` with
    ``d = P(x + alpha g) - x`` is accepted against the best of the last
    ``_MEMORY`` values (nonmonotone Armijo rule), otherwise ``lam`` halves.
    A restart is converged once the projected gradient step
    ``||P(x + g) - x||`` drops below ``step_tol``.
    """
    R = X0.shape[0]
    X = _project(X0)
    f, g = obj.value_grad(X)
    hist = np.repeat(f[:, None], _MEMORY, axis=1)
    alpha = np.ones(R)
    lam = np.ones(R)
    D = _project(X + g) - X
    done = np.sqrt(np.sum(D**2, axis=1)) < opts.step_tol
    it = 0
    for it in range(1, opts.max_iters + 1):
        act = np.flatnonzero(~done)
        if act.size == 0:
            break
        Xa, ga = X[act], g[act]
        Da = _project(Xa + alpha[act, None] * ga) - Xa
        trial = Xa + lam[act, None] * Da
        f_trial = obj.value(trial)
        ref = hist[act].max(axis=1)
        ok = f_trial >= ref + _ARMIJO * lam[act] * np.einsum("ri,ri->r", ga, Da)
        # a vanishing trial step means the point is already stationary
        tiny = lam[act] * np.sqrt(np.sum(Da**2, axis=1)) < 1e-3 * opts.step_tol

        acc = act[ok]
        if acc.size:
            X_new = trial[ok]
            f_new, g_new = obj.value_grad(X_new)
            S = X_new - X[acc]
            Y = g[acc] - g_new  # gradient change of the minimized function -f
            sy = np.einsum("ri,ri->r", S, Y)
            ss = np.einsum("ri,ri->r", S, S)
            alpha[acc] = np.where(sy > 0, np.clip(ss / np.where(sy > 0, sy, 1.0), 1e-10, 1e10), 1e10)
            X[acc], f[acc], g[acc] = X_new, f_new, g_new
            hist[acc] = np.roll(hist[acc], 1, axis=1)
            hist[acc, 0] = f_new
            lam[acc] = 1.0
            pg = _project(X_new + g_new) - X_new
            done[acc] = np.sqrt(np.sum(pg**2, axis=1)) < opts.step_tol
        rej = act[~ok]
        if rej.size:
            lam[rej] *= 0.5
            done[rej[tiny[~ok]]] = True

    best = int(np.argmax(f))
    return ExtremumResult(
        float(obj.orient * f[best]), obj.complex_of(X[best : best + 1])[0], it, int(done.sum())
    )


def extremum(
    U_head: np.ndarray,
    U_tail: np.ndarray,
    kind: str,
    opts: VariationalOptions = VariationalOptions(),
    rng: np.random.Generator | None = None,
) -> ExtremumResult:
    """Maximize ``phi_+`` (``kind='max'``) or minimize ``phi_-`` (``kind='min'``)."""
    if kind not in ("max", "min"):
        raise ValueError("kind must be 'max' or 'min'")
    sign, orient = (1, 1) if kind == "max" else (-1, -1)
    obj = _Objective(np.asarray(U_head, complex), np.asarray(U_tail, complex), sign, orient)
    rng = np.random.default_rng(opts.seed) if rng is None else rng
    X0 = _random_ball(rng, opts.restarts, 2 * obj.n)
    res = _ascend(obj, X0, opts)
    if res.converged_restarts == 0:
        raise NonConvergence(
            f"no restart reached step_tol={opts.step_tol} within {opts.max_iters} iterations"
        )
    # c = 0 is feasible with value exactly 1
    if (kind == "max" and res.value < 1.0) or (kind == "min" and res.value > 1.0):
        res = ExtremumResult(1.0, np.zeros(obj.n, complex), res.iterations, res.converged_restarts)
    return res


def variational_constants(
    problem: ReplacementProblem, N: int, opts: VariationalOptions = VariationalOptions()
) -> FrameConstants:
    """Lower/upper frame constants of ``{w_1..w_N, v_{N+1}, ...}`` by direct optimization."""
    N = check_n(problem, N)
    Uh = gram_head(problem, N)
    Ut = gram_tail(problem, N)
    rng = np.random.default_rng(opts.seed)
    upper = extremum(Uh, Ut, "max", opts, rng).value
    lower = extremum(Uh, Ut, "min", opts, rng).value
    lower = max(lower, 0.0)
    return FrameConstants(lower, upper, "variational", lower <= problem.rank_tol)
