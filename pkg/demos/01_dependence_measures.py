"""Measuring feature-label dependence on synthetic data.

Generates a three-class Gaussian mixture, computes the four kernel
dependence statistics, and shows how the kernel bandwidth shifts the
Gini statistics while leaving the detected ordering intact.
"""

import numpy as np

from ginidist import (
    BoundedKernel,
    STATISTICS,
    gini_statistics,
    pairwise_distances,
)

rng = np.random.default_rng(0)

# Three classes, clearly separated in the feature.
means = [-3.0, 0.0, 4.0]
counts = [40, 35, 25]
features = np.concatenate([rng.normal(m, 1.0, c) for m, c in zip(means, counts)])
labels = np.repeat(["a", "b", "c"], counts)

kernel = BoundedKernel(sigma2=10.0)
D = pairwise_distances(kernel, features)

print("dependent mixture (three separated classes):")
for name in ("gcov", "gcor", "dcov", "dcor"):
    print(f"  {name:5s} = {STATISTICS[name](D, labels):+.4f}")

# Shuffling the features against the labels destroys the dependence.
shuffled = rng.permutation(features)
D0 = pairwise_distances(kernel, shuffled)
print("\nsame data with features shuffled (independent):")
for name in ("gcov", "gcor", "dcov", "dcor"):
    print(f"  {name:5s} = {STATISTICS[name](D0, labels):+.4f}")

# The decomposition behind the Gini statistics: total spread vs
# within-class spread.
stats = gini_statistics(D, labels)
print(f"\ntotal Gini mean difference      : {stats.delta_hat:.4f}")
for cls, within in zip(stats.classes, stats.delta_hat_k):
    print(f"within-class GMD for {cls!r}      : {within:.4f}")
print(f"between-class share (gcor)      : {stats.gcor:.4f}")

# Bandwidth sweep: wider kernels approach the plain Euclidean statistic.
print("\nbandwidth sweep (gcor):")
for sigma2 in (0.5, 2.0, 10.0, 100.0, 1e6):
    Ds = pairwise_distances(BoundedKernel(sigma2=sigma2), features)
    print(f"  sigma2 = {sigma2:>9.1f} -> gcor = {STATISTICS['gcor'](Ds, labels):.4f}")
De = pairwise_distances(BoundedKernel(mode="raw_euclidean"), features)
print(f"  euclidean           -> gcor = {STATISTICS['gcor'](De, labels):.4f}")
