"""
Rank-based marginal independence statistic.

- chatterjee_xi: the (asymmetric) Chatterjee coefficient
- symmetric_xi: max of both directions
- calibrated_cutoff: permutation-null cutoff on the largest pairwise
  statistic of a Udg, cached per sample count and width

The statistic depends on the data only through ranks, so its null
distribution under independence of continuous variables is the same
for every pair of columns of the same length.
"""

from functools import lru_cache
from itertools import combinations
from typing import Sequence

import numpy as np
from scipy.stats import rankdata

from .logging import get_logger

logger = get_logger("independence")


def xi_from_ranks(order: np.ndarray, ranks: np.ndarray) -> float:
    """Coefficient from the x-sorting order and the y ranks."""
    sorted_ranks = ranks[order]
    count = sorted_ranks.shape[0]
    total = np.abs(np.diff(sorted_ranks)).sum()
    return float(1.0 - 3.0 * total / (count * count - 1.0))


def _prepare(values: Sequence[float]) -> np.ndarray:
    array = np.asarray(values, dtype=float)
    if array.ndim != 1:
        raise ValueError(f"Expected a 1-D sequence, got shape {array.shape}")
    return array


def column_order(values: np.ndarray) -> np.ndarray:
    return np.argsort(values, kind="stable")


def column_ranks(values: np.ndarray) -> np.ndarray:
    # r_i = #{j : y_j <= y_i}
    return rankdata(values, method="max")


def chatterjee_xi(x: Sequence[float], y: Sequence[float]) -> float:
    """Chatterjee's ξ(x, y) with stable tie-breaking on x.

    ξ = 1 - 3 Σ |r_{i+1} - r_i| / (count² - 1), where the y ranks are
    read in the order that sorts x.
    """
    xs, ys = _prepare(x), _prepare(y)
    if xs.shape[0] != ys.shape[0]:
        raise ValueError(f"Length mismatch: {xs.shape[0]} != {ys.shape[0]}")
    if xs.shape[0] < 2:
        raise ValueError("chatterjee_xi needs at least 2 observations")
    return xi_from_ranks(column_order(xs), column_ranks(ys))


def symmetric_xi(x: Sequence[float], y: Sequence[float]) -> float:
    """max(ξ(x, y), ξ(y, x))."""
    return max(chatterjee_xi(x, y), chatterjee_xi(y, x))


@lru_cache(maxsize=32)
def calibrated_cutoff(
    count: int,
    columns: int = 2,
    permutations: int = 499,
    level: float = 0.01,
    seed: int = 20240,
) -> float:
    """Familywise cutoff for every pair of a ``columns``-wide sample matrix.

    Each permutation draws ``columns`` independent continuous columns and
    keeps the largest symmetrized statistic over all of their pairs. The
    upper ``level`` quantile of that maximum bounds the chance that a Udg
    built from independent columns gets any edge at all. Rank invariance
    makes the null valid for any continuous columns of length ``count``.
    """
    if count < 2:
        raise ValueError(f"Cannot calibrate a cutoff for {count} samples")
    if columns < 2:
        raise ValueError(f"Cannot calibrate a cutoff for {columns} columns")

    rng = np.random.default_rng(seed)
    null = np.empty(permutations)
    for k in range(permutations):
        draws = rng.standard_normal((count, columns))
        orders = [column_order(draws[:, j]) for j in range(columns)]
        ranks = [column_ranks(draws[:, j]) for j in range(columns)]
        null[k] = max(
            max(
                xi_from_ranks(orders[i], ranks[j]),
                xi_from_ranks(orders[j], ranks[i]),
            )
            for i, j in combinations(range(columns), 2)
        )

    null.sort()
    position = int(np.ceil((1.0 - level) * (permutations + 1))) - 1
    position = min(max(position, 0), permutations - 1)
    cutoff = float(null[position])
    logger.debug(
        f"Calibrated cutoff {cutoff:.4f} for {count} samples x {columns} columns"
        f" ({permutations} permutations, level {level})"
    )
    return cutoff
