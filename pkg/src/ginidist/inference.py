"""Dependence tests: distribution-free bounds, permutation tests, and the
asymptotic confidence interval.

The distribution-free critical value ``cv(alpha, n) = sqrt(12.5 log(1/alpha) / n)``
comes from a bounded-difference concentration argument for the Gini
distance covariance with a [0, 1)-bounded kernel distance (per-sample
sensitivity 5/n).  The companion bounds use constants 2 (total Gini mean
difference, sensitivity 2/n) and 512 (bias-corrected distance covariance,
sensitivity 32/n).  When the closed-form threshold is too conservative a
permutation test replaces it.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.stats import norm

from .estimators import class_partition, gini_statistics
from .exceptions import InvalidInputError

GCOV_RATE = 12.5
DELTA_RATE = 2.0
DCOV_RATE = 512.0

BOUND_KINDS = ("gcov", "delta", "dcov", "gcor")


@dataclass(frozen=True)
class TestReport:
    """Outcome of a dependence test.

    ``decision`` is ``"reject_H0"`` exactly when ``value > threshold``
    (strict, so ties retain the null).
    """

    statistic_name: str
    value: float
    threshold: float
    decision: str
    alpha: float
    n: int
    p_value: float | None = None
    b: int | None = None
    seed: int | None = None

    def to_dict(self) -> dict:
        return {
            "statistic": self.statistic_name,
            "value": self.value,
            "threshold": self.threshold,
            "p_value": self.p_value,
            "decision": self.decision,
            "alpha": self.alpha,
            "n": self.n,
            "permutations": self.b,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class BoundQuery:
    """Parameters of a deviation-bound query: reject when S_n >= c n^-t.

    ``t`` must lie in (0, 1/2) for the gcov/delta/dcov bounds and in
    (0, 1/4) for the gcor bound.
    """

    statistic_kind: str
    c: float
    t: float
    n: int

    def __post_init__(self):
        if self.statistic_kind not in BOUND_KINDS:
            raise InvalidInputError(
                f"unknown statistic kind {self.statistic_kind!r}; expected {BOUND_KINDS}"
            )
        if self.c < 0:
            raise InvalidInputError(f"c must be nonnegative, got {self.c}")
        if self.n < 1:
            raise InvalidInputError(f"n must be >= 1, got {self.n}")
        upper = 0.25 if self.statistic_kind == "gcor" else 0.5
        if not 0.0 < self.t < upper:
            raise InvalidInputError(
                f"t must lie in (0, {upper}) for {self.statistic_kind}, got {self.t}"
            )


def critical_value(alpha: float, n: int) -> float:
    """Distribution-free critical value sqrt(12.5 log(1/alpha) / n).

    Monotone decreasing in both ``alpha`` and ``n``; rejecting when the
    Gini covariance statistic exceeds it caps the Type I error at alpha
    for any distribution, provided the kernel distance is bounded by 1.
    """
    if not 0.0 < alpha <= 1.0:
        raise InvalidInputError(f"alpha must be in (0, 1], got {alpha}")
    if n < 1:
        raise InvalidInputError(f"n must be >= 1, got {n}")
    return math.sqrt(GCOV_RATE * math.log(1.0 / alpha) / n)


def deviation_bound(query: BoundQuery, error_kind: str) -> float:
    """Closed-form Type I / Type II error bound for a threshold test.

    Returns a value in (0, 1]; the vacuous bound 1 is reported whenever
    the raw expression exceeds it (e.g. c = 0).
    """
    if error_kind not in ("type1", "type2"):
        raise InvalidInputError(f"error_kind must be 'type1' or 'type2', got {error_kind!r}")
    c, t, n = query.c, query.t, query.n
    kind = query.statistic_kind
    if kind == "gcov":
        bound = math.exp(-(c**2) * n ** (1 - 2 * t) / GCOV_RATE)
    elif kind == "delta":
        bound = math.exp(-(c**2) * n ** (1 - 2 * t) / DELTA_RATE)
    elif kind == "dcov":
        bound = math.exp(-(c**2) * n ** (1 - 2 * t) / DCOV_RATE)
    else:  # gcor
        if error_kind == "type1":
            bound = math.exp(-(c**2) * n ** (1 - 4 * t) / GCOV_RATE) + math.exp(
                -(n ** (1 - 2 * t)) / DELTA_RATE
            )
        else:
            bound = math.exp(-(c**2) * n ** (1 - 2 * t) / GCOV_RATE)
    return min(1.0, bound)


def underperform_bound(gamma: float, n: int) -> float:
    """Bound on the chance that the Gini statistic misses a dependence
    the distance covariance statistic detects.

    ``exp(-n gamma^2 / 12.5) + exp(-n gamma^2 / 512)`` with gamma half
    the gap between the two population values; clamped at the trivial
    bound 1.
    """
    if not gamma > 0:
        raise InvalidInputError(f"gamma must be positive, got {gamma}")
    if n < 1:
        raise InvalidInputError(f"n must be >= 1, got {n}")
    raw = math.exp(-n * gamma**2 / GCOV_RATE) + math.exp(-n * gamma**2 / DCOV_RATE)
    return min(1.0, raw)


def permutation_test(
    statistic: Callable[[np.ndarray, np.ndarray], float],
    D: np.ndarray,
    labels,
    b: int = 199,
    alpha: float = 0.05,
    seed=None,
    statistic_name: str | None = None,
) -> TestReport:
    """Permutation test of independence between features and labels.

    Shuffles the sample order of the feature distance matrix while the
    labels stay fixed, which breaks any feature-label pairing.  The
    threshold is the conservative (``method="higher"``) empirical
    ``1 - alpha`` quantile of the ``b`` permuted statistics and the
    p-value uses the ``(1 + #{permuted >= observed}) / (b + 1)``
    convention, so it is valid at any finite ``b``.

    Permutations draw from substreams spawned off ``seed``, making the
    report reproducible regardless of evaluation order.
    """
    if b < 1:
        raise InvalidInputError(f"need at least 1 permutation, got {b}")
    if not 0.0 < alpha < 1.0:
        raise InvalidInputError(f"alpha must be in (0, 1), got {alpha}")
    D = np.asarray(D, dtype=float)
    n = D.shape[0]
    observed = float(statistic(D, labels))
    if isinstance(seed, np.random.SeedSequence):
        seq, reported_seed = seed, None
    else:
        seq, reported_seed = np.random.SeedSequence(seed), seed
    children = seq.spawn(b)
    permuted = np.empty(b)
    for i in range(b):
        rng = np.random.default_rng(children[i])
        perm = rng.permutation(n)
        permuted[i] = statistic(D[np.ix_(perm, perm)], labels)
    threshold = float(np.quantile(permuted, 1.0 - alpha, method="higher"))
    p_value = float((1 + np.count_nonzero(permuted >= observed)) / (b + 1))
    decision = "reject_H0" if observed > threshold else "retain_H0"
    if statistic_name is None:
        statistic_name = getattr(statistic, "__name__", "statistic")
    return TestReport(
        statistic_name=statistic_name,
        value=observed,
        threshold=threshold,
        p_value=p_value,
        decision=decision,
        alpha=alpha,
        n=n,
        b=b,
        seed=reported_seed,
    )


def asymptotic_ci(D, labels, alpha: float = 0.05):
    """Normal-approximation confidence interval for the Gini covariance.

    The variance estimate is the empirical second moment of the
    statistic's per-sample influence values

        h_i = 2 (g(x_i) - g_{y_i}(x_i)) + sum_k p_k delta_k - delta_{y_i}

    where g(x) is the mean distance from x to the sample minus the total
    Gini mean difference and g_k(x) the class-k analogue; each sample
    contributes through its own class, which is what keeps the estimate
    alive (averaging the class terms with weights p_k instead collapses
    to a constant, since the marginal mean distance is exactly the
    class-weighted mean of class mean distances).  The interval is
    ``gcov +- z_{1-alpha/2} * sigma_v / sqrt(n)``.  Under independence
    every h_i tends to zero with the dependence signal.

    Returns
    -------
    (lower, upper, sigma_v_hat) : tuple of float
    """
    if not 0.0 < alpha < 1.0:
        raise InvalidInputError(f"alpha must be in (0, 1), got {alpha}")
    D = np.asarray(D, dtype=float)
    n = D.shape[0]
    if n < 20:
        warnings.warn(
            f"asymptotic interval is unreliable at n={n} < 20", UserWarning, stacklevel=2
        )
    stats = gini_statistics(D, labels)
    classes, inverse, counts = class_partition(labels)
    mean_all = D.sum(axis=1) / n
    mean_own = np.empty(n)
    delta_own = np.empty(n)
    for k in range(classes.shape[0]):
        idx = np.flatnonzero(inverse == k)
        mean_own[idx] = D[np.ix_(idx, idx)].sum(axis=1) / counts[k]
        delta_own[idx] = stats.delta_hat_k[k]
    # 2(g - g_y) + sum_k p_k delta_k - delta_y, with the constants folded
    # through gcov = delta - sum_k p_k delta_k.
    h = 2.0 * (mean_all - mean_own) + delta_own - stats.delta_hat - stats.gcov
    sigma_v = float(np.sqrt(np.mean(h**2)))
    z = float(norm.ppf(1.0 - alpha / 2.0))
    half = z * sigma_v / math.sqrt(n)
    return stats.gcov - half, stats.gcov + half, sigma_v
