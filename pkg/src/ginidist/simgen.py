"""Synthetic dataset families and the power/AUC simulation harness.

Datasets are one-dimensional mixtures drawn from one of three parametric
families, each with a fixed hyperprior over its component parameters:

====================  =================================================
normal                mean ~ Normal(0, 5), std ~ Uniform(0, 5)
exponential           rate ~ Uniform(0, 5)
gamma                 shape ~ Uniform(0, 10), rate ~ Uniform(0, 10)
====================  =================================================

Class proportions are drawn as normalized Uniform(0, 1) variates.  Under
H0 a single component generates all features and labels are drawn
independently; under H1 class k's features come from its own component.
Draws whose realized class counts fall below two are rejected, since the
Gini estimators need two samples per class.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.stats import rankdata

from .estimators import STATISTICS, LabeledDataset
from .exceptions import InfeasibleConfigurationError, InvalidInputError
from .kernels import BoundedKernel, pairwise_distances

FAMILIES = ("normal", "exponential", "gamma")

_MAX_RETRIES = 1000


@dataclass(frozen=True)
class Component:
    """One mixture component: a family name plus its drawn parameters."""

    family: str
    params: tuple

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        if self.family == "normal":
            mu, sd = self.params
            return rng.normal(mu, sd, size=size)
        if self.family == "exponential":
            (rate,) = self.params
            return rng.exponential(scale=1.0 / rate, size=size)
        if self.family == "gamma":
            shape, rate = self.params
            return rng.gamma(shape, scale=1.0 / rate, size=size)
        raise InvalidInputError(f"unknown family {self.family!r}")


def _positive_uniform(rng: np.random.Generator, high: float) -> float:
    # Uniform(0, high) conditioned on being strictly positive.
    while True:
        v = rng.uniform(0.0, high)
        if v > 0.0:
            return float(v)


def draw_component(family: str, rng: np.random.Generator) -> Component:
    """Draw one component distribution from the family's hyperprior."""
    if family == "normal":
        mu = rng.normal(0.0, 5.0)
        sd = _positive_uniform(rng, 5.0)
        return Component("normal", (float(mu), sd))
    if family == "exponential":
        return Component("exponential", (_positive_uniform(rng, 5.0),))
    if family == "gamma":
        return Component("gamma", (_positive_uniform(rng, 10.0), _positive_uniform(rng, 10.0)))
    raise InvalidInputError(f"unknown family {family!r}; expected one of {FAMILIES}")


def random_proportions(k: int, rng: np.random.Generator) -> np.ndarray:
    """Random class proportions: u_k ~ Uniform(0, 1) normalized to sum 1."""
    if k < 2:
        raise InvalidInputError(f"need at least 2 classes, got {k}")
    while True:
        u = rng.uniform(size=k)
        if np.all(u > 0.0):
            return u / u.sum()


def allocate_counts(n: int, proportions) -> np.ndarray:
    """Largest-remainder rounding of n * p_k to integer class counts.

    Counts sum to n exactly; ties in the fractional remainders are
    resolved toward lower class index.
    """
    p = np.asarray(proportions, dtype=float)
    if n < p.shape[0]:
        raise InvalidInputError(f"cannot allocate {n} samples to {p.shape[0]} classes")
    raw = n * p
    base = np.floor(raw).astype(int)
    remainder = n - int(base.sum())
    if remainder > 0:
        order = np.argsort(-(raw - base), kind="stable")
        base[order[:remainder]] += 1
    return base


def generate_dataset(
    family: str,
    k: int,
    n: int,
    hypothesis: str,
    rng: np.random.Generator,
    max_retries: int = _MAX_RETRIES,
) -> LabeledDataset:
    """Generate one labeled dataset under H0 (independent) or H1 (mixture).

    H0: one component drawn from the family generates all n features;
    labels are drawn independently from random proportions.  H1: class
    proportions fix per-class counts (largest-remainder rounding) and
    each class gets its own component.  In both cases proportions are
    redrawn until every class holds at least two samples.
    """
    if hypothesis not in ("H0", "H1"):
        raise InvalidInputError(f"hypothesis must be 'H0' or 'H1', got {hypothesis!r}")
    if k < 2:
        raise InvalidInputError(f"need at least 2 classes, got {k}")
    if n < 2 * k:
        raise InvalidInputError(f"need n >= 2k = {2 * k} for 2 samples per class, got {n}")
    if hypothesis == "H0":
        component = draw_component(family, rng)
        features = component.sample(rng, n)
        for _ in range(max_retries):
            p = random_proportions(k, rng)
            labels = rng.choice(k, size=n, p=p)
            if np.bincount(labels, minlength=k).min() >= 2:
                return LabeledDataset(features.reshape(-1, 1), labels)
        raise InfeasibleConfigurationError(
            f"no label draw achieved 2 samples per class in {max_retries} attempts"
        )
    for _ in range(max_retries):
        p = random_proportions(k, rng)
        counts = allocate_counts(n, p)
        if counts.min() >= 2:
            break
    else:
        raise InfeasibleConfigurationError(
            f"no proportion draw allocated 2 samples per class in {max_retries} attempts"
        )
    components = [draw_component(family, rng) for _ in range(k)]
    features = np.concatenate(
        [components[cls].sample(rng, counts[cls]) for cls in range(k)]
    )
    labels = np.repeat(np.arange(k), counts)
    return LabeledDataset(features.reshape(-1, 1), labels)


@dataclass(frozen=True)
class PowerConfig:
    """Configuration of one power/AUC study cell."""

    family: str
    k: int
    n: int
    m: int
    kernel: BoundedKernel = field(default_factory=BoundedKernel)
    alpha: float = 0.05
    seed: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidInputError(f"unknown family {self.family!r}")
        if self.k < 2:
            raise InvalidInputError(f"need at least 2 classes, got {self.k}")
        if self.n < 2 * self.k:
            raise InvalidInputError(
                f"need n >= 2k = {2 * self.k} for feasibility, got {self.n}"
            )
        if self.m < 100:
            raise InvalidInputError(f"need at least 100 replicates, got {self.m}")
        if not 0.0 < self.alpha < 1.0:
            raise InvalidInputError(f"alpha must be in (0, 1), got {self.alpha}")

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "k": self.k,
            "n": self.n,
            "m": self.m,
            "kernel_mode": self.kernel.mode,
            "sigma2": self.kernel.sigma2,
            "alpha": self.alpha,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class PowerReport:
    """Power and AUC per statistic, plus the critical values used."""

    config: PowerConfig
    power: dict
    auc: dict
    critical_values: dict

    def to_dict(self) -> dict:
        names = list(self.power)
        return {
            "config": self.config.to_dict(),
            "per_statistic": {
                name: {"power": self.power[name], "auc": self.auc[name]} for name in names
            },
            "critical_values": dict(self.critical_values),
        }


def _resolve_statistics(statistics) -> list:
    resolved = []
    for entry in statistics:
        if isinstance(entry, str):
            if entry not in STATISTICS:
                raise InvalidInputError(
                    f"unknown statistic {entry!r}; expected one of {sorted(STATISTICS)}"
                )
            resolved.append((entry, STATISTICS[entry]))
        else:
            name, fn = entry
            resolved.append((str(name), fn))
    return resolved


def power_at_level(h0_values, h1_values, alpha: float) -> float:
    """Power at Type I level alpha from H0/H1 statistic samples.

    The critical value is the conservative empirical (1 - alpha)
    quantile of the H0 values; H1 values strictly above it count as
    detections.  Mass tied at the critical value is credited with the
    fraction that would restore an exact alpha-level test, so a
    degenerate (constant) statistic scores exactly alpha.
    """
    h0 = np.asarray(h0_values, dtype=float)
    h1 = np.asarray(h1_values, dtype=float)
    c = np.quantile(h0, 1.0 - alpha, method="higher")
    exceed_h0 = np.count_nonzero(h0 > c)
    ties_h0 = np.count_nonzero(h0 == c)
    if ties_h0 > 0:
        gamma = np.clip((alpha * h0.size - exceed_h0) / ties_h0, 0.0, 1.0)
    else:
        gamma = 0.0
    detections = np.count_nonzero(h1 > c) + gamma * np.count_nonzero(h1 == c)
    return float(detections / h1.size)


def rank_auc(h0_values, h1_values) -> float:
    """Probability a random H1 value exceeds a random H0 value.

    Mann-Whitney rank formula with ties counted half; identical to the
    area under the empirical ROC curve.
    """
    h0 = np.asarray(h0_values, dtype=float)
    h1 = np.asarray(h1_values, dtype=float)
    ranks = rankdata(np.concatenate([h0, h1]))
    rank_sum = ranks[h0.size :].sum()
    return float((rank_sum - h1.size * (h1.size + 1) / 2.0) / (h0.size * h1.size))


def power_and_auc(
    cfg: PowerConfig,
    statistics: Sequence = ("gcov", "gcor", "dcov", "dcor"),
) -> PowerReport:
    """Estimate power and AUC of dependence statistics by simulation.

    Generates ``cfg.m`` dataset pairs (one under H0, one under H1) and
    evaluates every statistic on both.  Per statistic, the critical
    value is the empirical (1 - alpha) quantile of its H0 values; power
    is the fraction of H1 values above it and AUC the rank-based
    probability that an H1 value beats an H0 value.

    ``statistics`` may mix registry names with (name, callable) pairs
    where the callable maps (distance matrix, labels) to a float.  The
    report is deterministic for a fixed (cfg, seed): every replicate
    runs on its own substream spawned from ``cfg.seed``.
    """
    resolved = _resolve_statistics(statistics)
    children = np.random.SeedSequence(cfg.seed).spawn(cfg.m)
    h0_values = np.empty((cfg.m, len(resolved)))
    h1_values = np.empty((cfg.m, len(resolved)))
    for i in range(cfg.m):
        child_h0, child_h1 = children[i].spawn(2)
        for target, child, hypothesis in (
            (h0_values, child_h0, "H0"),
            (h1_values, child_h1, "H1"),
        ):
            rng = np.random.default_rng(child)
            ds = generate_dataset(cfg.family, cfg.k, cfg.n, hypothesis, rng)
            D = pairwise_distances(cfg.kernel, ds.features)
            for s, (_, fn) in enumerate(resolved):
                target[i, s] = fn(D, ds.labels)
    power = {}
    auc = {}
    critical_values = {}
    for s, (name, _) in enumerate(resolved):
        h0 = h0_values[:, s]
        h1 = h1_values[:, s]
        critical_values[name] = float(np.quantile(h0, 1.0 - cfg.alpha, method="higher"))
        power[name] = power_at_level(h0, h1, cfg.alpha)
        auc[name] = rank_auc(h0, h1)
    return PowerReport(config=cfg, power=power, auc=auc, critical_values=critical_values)
