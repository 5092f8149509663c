"""Maximum categorical entropy over the probability simplex.

Two independent routes:

* :func:`sup_entropy_by_subsets` -- exact enumeration of principal
  submatrices with a nonnegative weighting, returning ``ln max |Z_B|``.
  This is the known answer for symmetric similarity matrices.
* :func:`numeric_maximize` -- floating-point grid search over a simplex
  lattice, refined by pairwise mass transfers.  It shares no code with the
  exact route and serves as its oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Optional, Tuple

import numpy as np

from .errors import NoFeasibleSubset, ShapeMismatch, SizeLimit
from .linalg import RationalMatrix, Vector, as_matrix, magnitude, size_limit

SUBSET_SIZE_LIMIT = 20
GRID_SIZE_LIMIT = 6


@dataclass(frozen=True)
class MaxEntReport:
    sup_entropy: float
    best_subset: Tuple[int, ...]
    subset_magnitude: Fraction
    witness_distribution: Optional[Vector]
    nonsymmetric_kernel: bool = False
    numeric_estimate: Optional[float] = None
    labels: Tuple[str, ...] = field(default=(), compare=False)


def _kernel_matrix(category, phi) -> RationalMatrix:
    Z = as_matrix(phi)
    if not Z.is_square:
        raise ShapeMismatch(f"kernel must be square, got {Z.shape}")
    if category is not None and category.size != Z.rows:
        raise ShapeMismatch("kernel size differs from the number of objects")
    if any(Z[i, i] <= 0 for i in range(Z.rows)):
        raise ShapeMismatch("kernel needs a positive diagonal")
    return Z


def _subset_value(Z: RationalMatrix, subset) -> Optional[Tuple[Fraction, Vector]]:
    result = magnitude(Z.submatrix(subset))
    if result.magnitude is None or not result.has_nonnegative_weighting:
        return None
    return result.magnitude, result.nonnegative_weighting


def sup_entropy_by_subsets(category, phi, numeric: bool = False) -> MaxEntReport:
    """Supremum of the categorical entropy via the subset-magnitude formula.

    Enumerates nonempty subsets ``B`` by increasing size, then
    lexicographically.  Subsets whose principal submatrix has a magnitude
    and a nonnegative weighting are feasible; the largest magnitude wins,
    ties going to the first enumerated.

    Parameters
    ----------
    category : FinCategory or None
        Only used for shape checks and labels.
    phi : RationalMatrix or nested sequence
        Kernel matrix with positive diagonal.
    numeric : bool
        Also run :func:`numeric_maximize` and store its value.

    Returns
    -------
    MaxEntReport
        ``nonsymmetric_kernel`` is set when ``phi`` is not symmetric, in
        which case the formula is not guaranteed to give the supremum.
    """
    Z = _kernel_matrix(category, phi)
    n = Z.rows
    limit = size_limit(SUBSET_SIZE_LIMIT)
    if n > limit:
        raise SizeLimit(f"subset enumeration limited to N <= {limit}, got {n}")

    best = None
    for k in range(1, n + 1):
        for subset in combinations(range(n), k):
            value = _subset_value(Z, subset)
            if value is None:
                continue
            if best is None or value[0] > best[1]:
                best = (subset, value[0], value[1])
    if best is None:
        raise NoFeasibleSubset("no principal submatrix has a nonnegative weighting")

    subset, mag, w = best
    witness = [Fraction(0)] * n
    for i, wi in zip(subset, w):
        witness[i] = wi / mag
    estimate = numeric_maximize(category, Z) if numeric else None
    return MaxEntReport(
        sup_entropy=math.log(mag),
        best_subset=subset,
        subset_magnitude=mag,
        witness_distribution=tuple(witness),
        nonsymmetric_kernel=not Z.is_symmetric(),
        numeric_estimate=estimate,
        labels=tuple(category.labels) if category is not None else (),
    )


def _entropy_batch(Z: np.ndarray, P: np.ndarray) -> np.ndarray:
    """Entropy of each row of ``P`` (float arithmetic)."""
    F = P @ Z.T
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(P > 0, P * np.log(np.where(P > 0, F, 1.0)), 0.0)
    return -terms.sum(axis=1)


def _lattice(n: int, denom: int):
    """All compositions of ``denom`` into ``n`` nonnegative parts, as an array."""
    # stars and bars: choose n-1 bar positions among denom+n-1 slots
    bars = np.array(list(combinations(range(denom + n - 1), n - 1)), dtype=np.int64)
    if n == 1:
        return np.array([[denom]], dtype=np.int64)
    edges = np.hstack([
        np.full((len(bars), 1), -1, dtype=np.int64),
        bars,
        np.full((len(bars), 1), denom + n - 1, dtype=np.int64),
    ])
    return np.diff(edges, axis=1) - 1


def default_grid(n: int) -> int:
    return 200 if n <= 3 else 50


def numeric_maximize(category, phi, grid: Optional[int] = None, tol: float = 1e-13) -> float:
    """Maximise the categorical entropy numerically over the simplex.

    A simplex lattice with denominator ``grid`` is scanned exhaustively,
    then the best point is refined by moving mass between pairs of
    coordinates with a shrinking step.

    Raises
    ------
    SizeLimit
        For more than 6 objects.
    """
    Z = np.array(_kernel_matrix(category, phi).tolist(), dtype=float)
    n = Z.shape[0]
    limit = size_limit(GRID_SIZE_LIMIT)
    if n > limit:
        raise SizeLimit(f"grid search limited to N <= {limit}, got {n}")
    grid = grid or default_grid(n)
    if comb(grid + n - 1, n - 1) > 5_000_000:
        raise SizeLimit(f"grid denominator {grid} too fine for N = {n}")

    points = _lattice(n, grid) / grid
    values = _entropy_batch(Z, points)
    k = int(np.argmax(values))
    p, best = points[k].copy(), float(values[k])

    step = 1.0 / grid
    while step > tol:
        improved = True
        while improved:
            improved = False
            for i in range(n):
                for j in range(n):
                    if i == j or p[i] <= 0:
                        continue
                    q = p.copy()
                    moved = min(step, q[i])
                    q[i] -= moved
                    q[j] += moved
                    value = float(_entropy_batch(Z, q[None, :])[0])
                    if value > best:
                        p, best, improved = q, value, True
        step /= 2
    return best
