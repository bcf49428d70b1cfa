"""Exact population values over finite discrete joint distributions.

A :class:`DiscreteJoint` places K conditional distributions over a common
finite set of atoms, so every population expectation reduces to a finite
double sum over atom pairs.  That turns the defining identities of the
dependence measures into machine-precision checks and supplies ground
truth for unbiasedness tests of the sample estimators.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .exceptions import (
    DegenerateDistributionError,
    InfeasibleConfigurationError,
    InvalidInputError,
)
from .kernels import BoundedKernel, pairwise_distances

_PROB_TOL = 1e-12


@dataclass(frozen=True)
class DiscreteJoint:
    """Finite discrete joint distribution of (X, Y).

    Parameters
    ----------
    support : ndarray
        (m, q) matrix of atoms of X.
    class_probs : ndarray
        Length-K positive class probabilities, summing to one.
    cond_pmf : ndarray
        (K, m) conditional pmfs of X given each class; rows sum to one.
    """

    support: np.ndarray
    class_probs: np.ndarray
    cond_pmf: np.ndarray

    def __post_init__(self):
        support = np.asarray(self.support, dtype=float)
        if support.ndim == 1:
            support = support.reshape(-1, 1)
        probs = np.asarray(self.class_probs, dtype=float)
        cond = np.asarray(self.cond_pmf, dtype=float)
        if support.ndim != 2:
            raise InvalidInputError(f"support must be 2-D, got shape {support.shape}")
        if probs.ndim != 1 or np.any(probs <= 0):
            raise InvalidInputError("class_probs must be 1-D and strictly positive")
        if abs(probs.sum() - 1.0) > _PROB_TOL:
            raise InvalidInputError(f"class_probs sum to {probs.sum()!r}, not 1")
        if cond.shape != (probs.shape[0], support.shape[0]):
            raise InvalidInputError(
                f"cond_pmf shape {cond.shape} does not match "
                f"{probs.shape[0]} classes x {support.shape[0]} atoms"
            )
        if np.any(cond < 0):
            raise InvalidInputError("cond_pmf entries must be nonnegative")
        if np.any(np.abs(cond.sum(axis=1) - 1.0) > _PROB_TOL):
            raise InvalidInputError("every cond_pmf row must sum to 1")
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "class_probs", probs)
        object.__setattr__(self, "cond_pmf", cond)

    @property
    def n_atoms(self) -> int:
        return self.support.shape[0]

    @property
    def n_classes(self) -> int:
        return self.class_probs.shape[0]

    @property
    def marginal_pmf(self) -> np.ndarray:
        """Mixture pmf of X over the atoms: sum_k p_k * cond_pmf[k]."""
        return self.class_probs @ self.cond_pmf

    def sample_indices(
        self,
        n: int,
        rng: np.random.Generator,
        min_class_count: int | None = None,
        max_retries: int = 1000,
    ):
        """Draw n iid (atom index, class index) pairs.

        When ``min_class_count`` is set, whole draws are rejected until
        every class appears at least that many times.
        """
        if n < 1:
            raise InvalidInputError(f"n must be >= 1, got {n}")
        k = self.n_classes
        for _ in range(max_retries):
            label_idx = rng.choice(k, size=n, p=self.class_probs)
            counts = np.bincount(label_idx, minlength=k)
            if min_class_count is not None and counts.min() < min_class_count:
                continue
            atom_idx = np.empty(n, dtype=int)
            for cls in range(k):
                members = np.flatnonzero(label_idx == cls)
                if members.size:
                    atom_idx[members] = rng.choice(
                        self.n_atoms, size=members.size, p=self.cond_pmf[cls]
                    )
            return atom_idx, label_idx
        raise InfeasibleConfigurationError(
            f"could not draw {n} samples with all class counts >= "
            f"{min_class_count} in {max_retries} attempts"
        )

    def sample(
        self,
        n: int,
        rng: np.random.Generator,
        min_class_count: int | None = None,
        max_retries: int = 1000,
    ):
        """Draw n iid samples as (features, class index labels)."""
        atom_idx, label_idx = self.sample_indices(
            n, rng, min_class_count=min_class_count, max_retries=max_retries
        )
        return self.support[atom_idx], label_idx


class PopulationGini(NamedTuple):
    gcov: float
    gcor: float
    delta: float
    delta_k: np.ndarray


def _atom_distances(joint: DiscreteJoint, kernel: BoundedKernel) -> np.ndarray:
    if joint.n_atoms == 1:
        return np.zeros((1, 1))
    return pairwise_distances(kernel, joint.support)


def population_gini(joint: DiscreteJoint, kernel: BoundedKernel) -> PopulationGini:
    """Exact population Gini distance covariance and correlation.

    Computes the Gini mean difference of the marginal and of every
    conditional by double sums over atoms, then
    ``gcov = delta - sum_k p_k delta_k`` and ``gcor = gcov / delta``.

    Raises
    ------
    DegenerateDistributionError
        If the marginal carries no spread (delta == 0), which leaves the
        correlation undefined.
    """
    D = _atom_distances(joint, kernel)
    w = joint.marginal_pmf
    delta = float(w @ D @ w)
    delta_k = np.array([f @ D @ f for f in joint.cond_pmf])
    gcov = float(delta - np.dot(joint.class_probs, delta_k))
    if delta == 0.0:
        raise DegenerateDistributionError(
            "marginal distribution is degenerate: Gini mean difference is zero"
        )
    return PopulationGini(gcov=gcov, gcor=gcov / delta, delta=delta, delta_k=delta_k)


def population_dcov(
    joint: DiscreteJoint, kernel: BoundedKernel, form: str = "decomposition"
) -> float:
    """Exact population distance covariance with the set distance on Y.

    Parameters
    ----------
    form : str
        ``"definition"`` evaluates the three expectation terms of the
        generalized distance covariance directly over the joint;
        ``"decomposition"`` evaluates the equivalent class-decomposition
        ``sum_k p_k^2 (2 E d(X_k, X) - E d(X_k, X_k') - E d(X, X'))``.
        The two agree to machine precision; keeping both makes the
        equivalence executable.
    """
    if form not in ("definition", "decomposition"):
        raise InvalidInputError(f"unknown form {form!r}")
    D = _atom_distances(joint, kernel)
    p = joint.class_probs
    w = joint.marginal_pmf
    delta = float(w @ D @ w)
    if form == "decomposition":
        total = 0.0
        for k in range(joint.n_classes):
            f = joint.cond_pmf[k]
            cross = float(f @ D @ w)
            within = float(f @ D @ f)
            total += p[k] ** 2 * (2.0 * cross - within - delta)
        return float(total)
    # Definition form: E[dX dY] + E[dX] E[dY] - 2 E[E_X' dX * E_Y' dY],
    # with dY the 0/1 set distance so E_Y'[dY(y, Y')] = 1 - p_y.
    mean_set = float(1.0 - np.dot(p, p))
    term_a = 0.0
    for k in range(joint.n_classes):
        for k2 in range(joint.n_classes):
            if k == k2:
                continue
            term_a += p[k] * p[k2] * float(joint.cond_pmf[k] @ D @ joint.cond_pmf[k2])
    term_b = delta * mean_set
    mean_dist_to_marginal = D @ w  # per atom: E_X' d(atom, X')
    term_c = 0.0
    for k in range(joint.n_classes):
        term_c += p[k] * (1.0 - p[k]) * float(joint.cond_pmf[k] @ mean_dist_to_marginal)
    return float(term_a + term_b - 2.0 * term_c)


def population_variance_v(joint: DiscreteJoint, kernel: BoundedKernel) -> float:
    """Asymptotic variance of sqrt(n) * (sample Gini covariance).

    Enumerates the influence value of a sample (x, y),

        h(x, y) = 2 (E d(x, X) - delta) - 2 (E d(x, X_y) - delta_y)
                  + sum_k p_k delta_k - delta_y,

    and returns its second moment over the joint.  Zero exactly under
    independence; the population counterpart of the variance estimate
    inside :func:`ginidist.inference.asymptotic_ci`.
    """
    D = _atom_distances(joint, kernel)
    w = joint.marginal_pmf
    p = joint.class_probs
    delta = float(w @ D @ w)
    delta_k = np.array([f @ D @ f for f in joint.cond_pmf])
    to_marginal = D @ w
    weighted_delta = float(np.dot(p, delta_k))
    total = 0.0
    for k in range(joint.n_classes):
        to_class = D @ joint.cond_pmf[k]
        h = (
            2.0 * (to_marginal - delta)
            - 2.0 * (to_class - delta_k[k])
            + weighted_delta
            - delta_k[k]
        )
        weights = p[k] * joint.cond_pmf[k]
        total += float(np.dot(weights, h**2))
    return total


def mc_mean(
    statistic: Callable[[np.ndarray, np.ndarray], float],
    joint: DiscreteJoint,
    kernel: BoundedKernel,
    n: int,
    reps: int,
    seed=None,
):
    """Monte Carlo mean of a sample statistic over iid draws from a joint.

    Parameters
    ----------
    statistic : callable
        Maps (distance matrix, labels) to a float, e.g. entries of
        :data:`ginidist.estimators.STATISTICS`.
    n : int
        Sample size per replicate.  Draws are rejected until every class
        appears at least twice.
    reps : int
        Number of replicates.
    seed : int or None
        Master seed; replicates use independent substreams spawned from
        it, so the result does not depend on evaluation order.

    Returns
    -------
    (mean, std_error) : tuple of float
    """
    if reps < 1 or n < 1:
        raise InvalidInputError(f"n and reps must be >= 1, got n={n}, reps={reps}")
    atom_D = _atom_distances(joint, kernel)
    children = np.random.SeedSequence(seed).spawn(reps)
    values = np.empty(reps)
    for i in range(reps):
        rng = np.random.default_rng(children[i])
        atom_idx, label_idx = joint.sample_indices(n, rng, min_class_count=2)
        D = atom_D[np.ix_(atom_idx, atom_idx)]
        values[i] = statistic(D, label_idx)
    mean = float(values.mean())
    se = float(values.std(ddof=1) / np.sqrt(reps)) if reps > 1 else float("inf")
    return mean, se
