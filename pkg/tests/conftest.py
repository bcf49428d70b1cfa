"""Shared helpers for the test suite."""

import numpy as np

from ginidist import BoundedKernel, DiscreteJoint


def random_orthonormal(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Random orthonormal matrix via QR with sign normalization."""
    q, r = np.linalg.qr(rng.normal(size=(dim, dim)))
    return q * np.sign(np.diag(r))


def random_pmf(rng: np.random.Generator, size: int) -> np.ndarray:
    u = rng.uniform(0.05, 1.0, size=size)
    return u / u.sum()


def random_joint(
    rng: np.random.Generator,
    n_atoms: int = 5,
    k: int = 3,
    q: int = 1,
    independent: bool = False,
    balanced: bool = False,
) -> DiscreteJoint:
    """Random finite joint; conditionals either distinct or all equal."""
    support = rng.normal(scale=2.0, size=(n_atoms, q))
    probs = np.full(k, 1.0 / k) if balanced else random_pmf(rng, k)
    if independent:
        shared = random_pmf(rng, n_atoms)
        cond = np.tile(shared, (k, 1))
    else:
        cond = np.vstack([random_pmf(rng, n_atoms) for _ in range(k)])
    return DiscreteJoint(support=support, class_probs=probs, cond_pmf=cond)


def dependent_joint() -> DiscreteJoint:
    """Three overlapping classes with a strong dependence signal; used
    wherever a fixed, clearly dependent joint is needed."""
    return DiscreteJoint(
        support=[[0.0], [1.0], [2.0], [4.0], [6.0]],
        class_probs=[0.4, 0.35, 0.25],
        cond_pmf=[
            [0.5, 0.3, 0.2, 0.0, 0.0],
            [0.1, 0.2, 0.4, 0.3, 0.0],
            [0.0, 0.0, 0.1, 0.3, 0.6],
        ],
    )


def gaussian_kernel(sigma2: float = 10.0) -> BoundedKernel:
    return BoundedKernel(mode="weighted_gaussian", sigma2=sigma2)


def euclidean_kernel() -> BoundedKernel:
    return BoundedKernel(mode="raw_euclidean")
