import numpy as np

from rieszrep import gen_random_perturbation, make_problem


def random_instance(seed, max_dim=12, max_count=6):
    """Random valid problem with M <= max_dim and K <= max_count.

    Even seeds give unstructured unit vectors, odd seeds perturbations of the
    identity with epsilon in [0.05, 0.95).
    """
    rng = np.random.default_rng(10_000 + seed)
    M = int(rng.integers(2, max_dim + 1))
    K = int(rng.integers(1, min(max_count, M) + 1))
    if seed % 2 == 0:
        W = rng.standard_normal((K, M)) + 1j * rng.standard_normal((K, M))
        W /= np.linalg.norm(W, axis=1, keepdims=True)
        return make_problem(W, M)
    return gen_random_perturbation(M, K, float(rng.uniform(0.05, 0.95)), seed)
