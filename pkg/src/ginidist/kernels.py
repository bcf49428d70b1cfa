"""Bounded Mercer kernels and the distances they induce.

A Mercer kernel k induces the distance
``d(x, x') = sqrt(k(x, x) + k(x', x') - 2 k(x, x'))`` in its RKHS.
Two modes are supported:

* ``weighted_gaussian`` -- k(x, x') = exp(-|x - x'|^2 / sigma2) / 2, whose
  induced distance ``sqrt(1 - exp(-|x - x'|^2 / sigma2))`` is translation
  and rotation invariant and bounded in [0, 1);
* ``raw_euclidean`` -- the induced distance is the plain Euclidean norm
  |x - x'| (the inner-product kernel reduction), unbounded but exact for
  classical Gini statistics.

Categorical labels are compared with the 0/1 set distance, which embeds a
K-valued label as a regular simplex with unit edge length.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .exceptions import InsufficientDataError, InvalidInputError

DEFAULT_SIGMA2 = 10.0

KERNEL_MODES = ("weighted_gaussian", "raw_euclidean")

# exp underflow at large separations would otherwise saturate the open
# bound d < 1 exactly at 1.0.
_BELOW_ONE = np.nextafter(1.0, 0.0)


@dataclass(frozen=True)
class BoundedKernel:
    """A kernel specification: mode plus bandwidth.

    Parameters
    ----------
    mode : str
        One of ``"weighted_gaussian"`` or ``"raw_euclidean"``.
    sigma2 : float
        Bandwidth of the weighted Gaussian kernel; must be positive.
        Ignored in ``raw_euclidean`` mode.
    """

    mode: str = "weighted_gaussian"
    sigma2: float = DEFAULT_SIGMA2

    def __post_init__(self) -> None:
        if self.mode not in KERNEL_MODES:
            raise InvalidInputError(
                f"unknown kernel mode {self.mode!r}; expected one of {KERNEL_MODES}"
            )
        if self.mode == "weighted_gaussian" and not self.sigma2 > 0:
            raise InvalidInputError(f"sigma2 must be positive, got {self.sigma2}")

    @property
    def is_bounded(self) -> bool:
        """Whether the induced distance lies in [0, 1)."""
        return self.mode == "weighted_gaussian"


def _as_points(points) -> np.ndarray:
    """Coerce input to an (n, q) float matrix; 1-D input becomes (n, 1)."""
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise InvalidInputError(f"points must be 1-D or 2-D, got shape {arr.shape}")
    return arr


def induced_distance(kernel: BoundedKernel, x, x2) -> float:
    """Distance between two points in the kernel's RKHS.

    Parameters
    ----------
    kernel : BoundedKernel
    x, x2 : array_like
        Vectors of equal dimension (scalars are treated as 1-D).

    Returns
    -------
    float
        ``sqrt(1 - exp(-|x - x2|^2 / sigma2))`` for the weighted Gaussian
        kernel, ``|x - x2|`` in raw Euclidean mode.
    """
    a = np.atleast_1d(np.asarray(x, dtype=float))
    b = np.atleast_1d(np.asarray(x2, dtype=float))
    if a.shape != b.shape:
        raise InvalidInputError(f"dimension mismatch: {a.shape} vs {b.shape}")
    sq = float(np.sum((a - b) ** 2))
    if kernel.mode == "raw_euclidean":
        return float(np.sqrt(sq))
    # -expm1(-t) = 1 - exp(-t), accurate for small t.
    return float(min(np.sqrt(-np.expm1(-sq / kernel.sigma2)), _BELOW_ONE))


def pairwise_distances(kernel: BoundedKernel, points) -> np.ndarray:
    """Materialize the n x n matrix of pairwise induced distances.

    Parameters
    ----------
    kernel : BoundedKernel
    points : array_like
        (n, q) matrix of points, or a length-n vector of 1-D points.

    Returns
    -------
    ndarray
        Symmetric (n, n) matrix with zero diagonal.  Entries lie in
        [0, 1) for the weighted Gaussian kernel.
    """
    pts = _as_points(points)
    n = pts.shape[0]
    if n < 2:
        raise InsufficientDataError(f"need at least 2 points, got {n}")
    if kernel.mode == "raw_euclidean":
        condensed = pdist(pts, metric="euclidean")
    else:
        sq = pdist(pts, metric="sqeuclidean")
        condensed = np.minimum(np.sqrt(-np.expm1(-sq / kernel.sigma2)), _BELOW_ONE)
    return squareform(condensed)


def set_distance(y, y2) -> float:
    """0/1 distance between two categorical labels: 0 iff equal."""
    return 0.0 if y == y2 else 1.0


def set_distance_matrix(labels) -> np.ndarray:
    """Pairwise set-distance matrix of a label vector.

    Entry (i, j) is 0.0 when ``labels[i] == labels[j]`` and 1.0 otherwise.
    """
    arr = np.asarray(labels)
    if arr.ndim != 1:
        raise InvalidInputError(f"labels must be 1-D, got shape {arr.shape}")
    return (arr[:, None] != arr[None, :]).astype(float)
