"""Generators for example replacement problems."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .coeff import ReplacementProblem, make_problem
from .errors import ValidationError

FAMILIES = ("identity", "block_remark42", "rotation", "random_perturbation")


def tau(n: int) -> int:
    """Triangular number ``1 + 2 + ... + n``."""
    return n * (n + 1) // 2


def gen_identity(M: int, K: int | None = None) -> ReplacementProblem:
    K = M if K is None else K
    return make_problem(np.eye(M, dtype=complex)[:K], M)


def _complete_block(n: int) -> np.ndarray:
    # flat vector first, then Gram-Schmidt on e_1..e_n in index order
    basis = [np.full(n, 1.0 / math.sqrt(n))]
    for k in range(n):
        if len(basis) == n:
            break
        e = np.zeros(n)
        e[k] = 1.0
        for b in basis:
            e -= np.dot(b, e) * b
        for b in basis:  # second pass for numerical orthogonality
            e -= np.dot(b, e) * b
        nrm = np.linalg.norm(e)
        if nrm > 1e-8:
            basis.append(e / nrm)
    return np.array(basis)


def gen_block_example(n_blocks: int) -> ReplacementProblem:
    """Block construction where the lower constants are not monotone in N.

    Block ``n`` occupies coordinates ``tau(n-1)+1 .. tau(n)``; its first vector
    is the flat unit vector over those ``n`` coordinates and the rest complete
    it to an orthonormal basis of the block.
    """
    if n_blocks < 1:
        raise ValidationError("n_blocks must be >= 1")
    M = tau(n_blocks)
    W = np.zeros((M, M), dtype=complex)
    for n in range(1, n_blocks + 1):
        lo = tau(n - 1)
        W[lo : lo + n, lo : lo + n] = _complete_block(n)
    return make_problem(W, M)


def gen_rotation(thetas) -> ReplacementProblem:
    """``w_j = cos(theta_j) v_j + sin(theta_j) v_{L+j}`` in dimension ``2L``."""
    thetas = np.asarray(thetas, dtype=float).ravel()
    L = thetas.size
    if L < 1:
        raise ValidationError("at least one angle is required")
    W = np.zeros((L, 2 * L), dtype=complex)
    idx = np.arange(L)
    W[idx, idx] = np.cos(thetas)
    W[idx, L + idx] = np.sin(thetas)
    return make_problem(W, 2 * L)


def gen_random_perturbation(M: int, K: int, epsilon: float, seed: int) -> ReplacementProblem:
    """``w_j = normalize(v_j + epsilon g_j)`` with seeded complex Gaussian ``g_j``."""
    if not 1 <= K <= M:
        raise ValidationError(f"need 1 <= K <= M, got K={K}, M={M}")
    if not 0.0 <= epsilon < 1.0:
        raise ValidationError("epsilon must lie in [0, 1)")
    rng = np.random.default_rng(seed)
    G = (rng.standard_normal((K, M)) + 1j * rng.standard_normal((K, M))) / math.sqrt(2.0)
    W = np.eye(M, dtype=complex)[:K] + epsilon * G
    W /= np.linalg.norm(W, axis=1, keepdims=True)
    return make_problem(W, M)


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: dict = field(default_factory=dict)


def generate(spec: FamilySpec) -> ReplacementProblem:
    p = spec.params
    try:
        if spec.kind == "identity":
            return gen_identity(int(p["dim"]), p.get("count"))
        if spec.kind == "block_remark42":
            return gen_block_example(int(p["n_blocks"]))
        if spec.kind == "rotation":
            return gen_rotation(p["thetas"])
        if spec.kind == "random_perturbation":
            return gen_random_perturbation(
                int(p["dim"]), int(p["count"]), float(p["epsilon"]), int(p.get("seed", 0))
            )
    except KeyError as exc:
        raise ValidationError(f"family {spec.kind!r} requires parameter {exc.args[0]!r}") from None
    raise ValidationError(f"unknown family {spec.kind!r}; expected one of {FAMILIES}")
