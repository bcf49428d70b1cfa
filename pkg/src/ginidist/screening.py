"""CSV feature screening: load, standardize, rank, report.

Each feature is screened on its own as a 1-D variable against the label.
The chosen statistic is computed per feature, features are ranked by
descending value (ties broken by ascending column index), and optional
permutation p-values are attached.  Results are written as a
``ranking.csv`` plus a ``report.json`` whose bytes are reproducible for a
fixed (input, config, seed).
"""

from __future__ import annotations

import csv
import json
import warnings
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from . import __version__ as _pkg_version
from .estimators import STATISTICS, LabeledDataset, class_partition, correlation_ratio
from .exceptions import (
    ClassTooSmallError,
    DegenerateDistributionError,
    DegenerateFeatureError,
    InsufficientDataError,
    InvalidInputError,
)
from .inference import permutation_test
from .kernels import DEFAULT_SIGMA2, BoundedKernel, pairwise_distances

SCREENING_STATISTICS = ("gcov", "gcor", "dcov", "dcor", "eta2", "dcov_plugin")

REPORT_VERSION = _pkg_version


@dataclass(frozen=True)
class ScreeningConfig:
    """Configuration of one screening run."""

    input_path: str
    label_column: str | int = 0
    statistic: str = "gcor"
    sigma2: float = DEFAULT_SIGMA2
    standardize: bool = True
    top_k: int | None = None
    permutations: int = 0
    alpha: float = 0.05
    seed: int | None = None
    sample_cap: int | None = None
    out_dir: str = "."
    drop_small_classes: bool = False

    def __post_init__(self):
        if self.statistic not in SCREENING_STATISTICS:
            raise InvalidInputError(
                f"unknown statistic {self.statistic!r}; expected one of {SCREENING_STATISTICS}"
            )
        if not self.sigma2 > 0:
            raise InvalidInputError(f"sigma2 must be positive, got {self.sigma2}")
        if self.permutations < 0:
            raise InvalidInputError(f"permutations must be >= 0, got {self.permutations}")
        if not 0.0 < self.alpha < 1.0:
            raise InvalidInputError(f"alpha must be in (0, 1), got {self.alpha}")

    def kernel(self) -> BoundedKernel:
        return BoundedKernel(sigma2=self.sigma2)

    def to_dict(self) -> dict:
        return {
            "input": str(self.input_path),
            "label_column": self.label_column,
            "statistic": self.statistic,
            "sigma2": self.sigma2,
            "standardize": self.standardize,
            "top_k": self.top_k,
            "permutations": self.permutations,
            "alpha": self.alpha,
            "seed": self.seed,
            "sample_cap": self.sample_cap,
            "drop_small_classes": self.drop_small_classes,
        }


@dataclass(frozen=True)
class FeatureRank:
    """Ranked entry: value is None when the feature could not be scored."""

    name: str
    value: float | None
    rank: int
    p_value: float | None = None


def demo_csv_path() -> Path:
    """Path of the bundled demonstration CSV (3 classes, 4 features)."""
    return Path(resources.files("ginidist").joinpath("data", "demo.csv"))


def load_csv(path, label_column, drop_small_classes: bool = False):
    """Load a headered CSV into a labeled dataset.

    Parameters
    ----------
    path : str or Path
        UTF-8, RFC-4180 CSV file with a header row.
    label_column : str or int
        Label column selected by header name or 0-based position.
    drop_small_classes : bool
        Drop rows whose class holds fewer than 2 rows instead of keeping
        them (a warning lists such classes either way).

    Returns
    -------
    (dataset, feature_names, notes) : (LabeledDataset, list[str], list[str])
        ``notes`` collects the warnings that were issued, for reports.

    Raises
    ------
    InvalidInputError
        Missing file or column, or any non-numeric feature cell; the
        message names the offending file row (header = row 1) and column.
    """
    path = Path(path)
    if not path.exists():
        raise InvalidInputError(f"input file not found: {path}")
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise InvalidInputError(f"{path}: empty file") from None
        rows = list(reader)
    if not rows:
        raise InvalidInputError(f"{path}: no data rows")
    if isinstance(label_column, int) or (
        isinstance(label_column, str) and label_column.lstrip("-").isdigit()
    ):
        label_idx = int(label_column)
        if not 0 <= label_idx < len(header):
            raise InvalidInputError(
                f"label column index {label_idx} out of range for {len(header)} columns"
            )
    else:
        if label_column not in header:
            raise InvalidInputError(f"label column {label_column!r} not in header {header}")
        label_idx = header.index(label_column)
    feature_names = [name for i, name in enumerate(header) if i != label_idx]
    labels = []
    features = []
    bad_cells = []
    for data_i, row in enumerate(rows):
        file_row = data_i + 2  # header occupies row 1
        if len(row) != len(header):
            raise InvalidInputError(
                f"{path}: row {file_row} has {len(row)} cells, expected {len(header)}"
            )
        labels.append(row[label_idx])
        values = []
        for j, cell in enumerate(row):
            if j == label_idx:
                continue
            try:
                values.append(float(cell))
            except ValueError:
                bad_cells.append((file_row, header[j]))
        features.append(values)
    if bad_cells:
        listing = "; ".join(f"row {r}, column {c!r}" for r, c in bad_cells[:10])
        more = "" if len(bad_cells) <= 10 else f" (and {len(bad_cells) - 10} more)"
        raise InvalidInputError(f"{path}: non-numeric feature cells at {listing}{more}")
    labels = np.asarray(labels)
    features = np.asarray(features, dtype=float)
    notes = []
    classes, _, counts = class_partition(labels)
    small = counts < 2
    if np.any(small):
        small_classes = classes[small].tolist()
        message = f"classes with fewer than 2 rows: {small_classes}"
        if drop_small_classes:
            message += " (dropped)"
            keep = ~np.isin(labels, classes[small])
            labels = labels[keep]
            features = features[keep]
        warnings.warn(message, UserWarning, stacklevel=2)
        notes.append(message)
    return LabeledDataset(features, labels), feature_names, notes


def zero_variance_mask(features) -> np.ndarray:
    """Boolean mask of constant feature columns."""
    arr = np.asarray(features, dtype=float)
    return arr.std(axis=0) == 0.0


def standardize(dataset: LabeledDataset) -> LabeledDataset:
    """Center and scale every feature to mean 0, standard deviation 1.

    Uses the population convention (divisor n).  Constant features are
    left untouched; callers should exclude them via
    :func:`zero_variance_mask`.
    """
    feats = dataset.features
    mean = feats.mean(axis=0)
    std = feats.std(axis=0)
    safe = np.where(std == 0.0, 1.0, std)
    out = (feats - mean) / safe
    out[:, std == 0.0] = feats[:, std == 0.0]
    return LabeledDataset(out, dataset.labels)


def _feature_statistic(values, labels, statistic: str, kernel: BoundedKernel) -> float:
    if statistic == "eta2":
        return correlation_ratio(values, labels)
    D = pairwise_distances(kernel, values)
    return STATISTICS[statistic](D, labels)


def _permutation_p_value(values, labels, statistic, kernel, b, alpha, seed_seq):
    if statistic == "eta2":
        observed = correlation_ratio(values, labels)
        permuted = np.empty(b)
        for i, child in enumerate(seed_seq.spawn(b)):
            rng = np.random.default_rng(child)
            permuted[i] = correlation_ratio(rng.permutation(values), labels)
        return float((1 + np.count_nonzero(permuted >= observed)) / (b + 1))
    D = pairwise_distances(kernel, values)
    report = permutation_test(
        STATISTICS[statistic], D, labels, b=b, alpha=alpha, seed=seed_seq
    )
    return report.p_value


_SKIPPABLE = (
    InsufficientDataError,
    ClassTooSmallError,
    DegenerateDistributionError,
    DegenerateFeatureError,
)


def rank_features(dataset: LabeledDataset, cfg: ScreeningConfig, feature_names=None):
    """Score every feature against the label and rank them.

    Returns
    -------
    (ranked, notes) : (list[FeatureRank], list[str])
        Entries sorted by descending statistic value with ties broken by
        ascending column index; unscorable features (constant columns or
        per-feature estimator failures) are ranked last with value None.
    """
    q = dataset.n_features
    if feature_names is None:
        feature_names = [f"feature_{j}" for j in range(q)]
    if len(feature_names) != q:
        raise InvalidInputError(
            f"{len(feature_names)} names for {q} features"
        )
    if cfg.top_k is not None and not 0 < cfg.top_k <= q:
        raise InvalidInputError(f"top_k={cfg.top_k} outside 1..{q}")
    notes = []
    mask = zero_variance_mask(dataset.features)
    if np.any(mask):
        constant = [feature_names[j] for j in np.flatnonzero(mask)]
        message = f"constant features excluded from ranking: {constant}"
        warnings.warn(message, UserWarning, stacklevel=2)
        notes.append(message)
    data = standardize(dataset) if cfg.standardize else dataset
    kernel = cfg.kernel()
    root_seq = np.random.SeedSequence(cfg.seed)
    feature_seqs = root_seq.spawn(q)
    values: list[float | None] = []
    p_values: list[float | None] = []
    for j in range(q):
        if mask[j]:
            values.append(None)
            p_values.append(None)
            continue
        column = data.features[:, j]
        try:
            value = float(_feature_statistic(column, data.labels, cfg.statistic, kernel))
            p = None
            if cfg.permutations > 0:
                p = _permutation_p_value(
                    column,
                    data.labels,
                    cfg.statistic,
                    kernel,
                    cfg.permutations,
                    cfg.alpha,
                    feature_seqs[j],
                )
        except _SKIPPABLE as exc:
            message = f"feature {feature_names[j]!r} skipped: {exc}"
            warnings.warn(message, UserWarning, stacklevel=2)
            notes.append(message)
            value, p = None, None
        values.append(value)
        p_values.append(p)
    order = sorted(
        range(q),
        key=lambda j: (values[j] is None, -values[j] if values[j] is not None else 0.0, j),
    )
    ranked = [
        FeatureRank(
            name=feature_names[j],
            value=values[j],
            rank=rank + 1,
            p_value=p_values[j],
        )
        for rank, j in enumerate(order)
    ]
    return ranked, notes


def run_screening(cfg: ScreeningConfig):
    """Execute a full screening run and write ranking.csv + report.json.

    Returns the report dictionary.  Output bytes are identical across
    runs with the same (input, config, seed).
    """
    dataset, feature_names, notes = load_csv(
        cfg.input_path, cfg.label_column, drop_small_classes=cfg.drop_small_classes
    )
    if cfg.sample_cap is not None and cfg.sample_cap < dataset.n_samples:
        total = dataset.n_samples
        rng = np.random.default_rng(np.random.SeedSequence(cfg.seed).spawn(1)[0])
        keep = np.sort(rng.choice(total, size=cfg.sample_cap, replace=False))
        dataset = LabeledDataset(dataset.features[keep], dataset.labels[keep])
        notes.append(f"subsampled {cfg.sample_cap} of {total} rows")
    ranked, rank_notes = rank_features(dataset, cfg, feature_names)
    notes = notes + rank_notes
    top_k = cfg.top_k if cfg.top_k is not None else len(ranked)
    selected = [entry.name for entry in ranked[:top_k]]
    report = {
        "version": REPORT_VERSION,
        "config": cfg.to_dict(),
        "seed": cfg.seed,
        "features": [
            {
                "name": entry.name,
                "value": entry.value,
                "rank": entry.rank,
                **({"p_value": entry.p_value} if entry.p_value is not None else {}),
            }
            for entry in ranked
        ],
        "selected": selected,
        "warnings": notes,
    }
    out_dir = Path(cfg.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    with (out_dir / "ranking.csv").open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["rank", "feature", "statistic", "p_value"])
        for entry in ranked:
            writer.writerow(
                [
                    entry.rank,
                    entry.name,
                    "" if entry.value is None else repr(entry.value),
                    "" if entry.p_value is None else repr(entry.p_value),
                ]
            )
    with (out_dir / "report.json").open("w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
    return report
