"""Shared helpers for the test suite."""

import numpy as np

from divbound.dist import FiniteDist


def labels(k: int) -> tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(k))


def random_simplex(rng, n: int, k: int) -> np.ndarray:
    e = rng.exponential(size=(n, k))
    return e / e.sum(axis=1, keepdims=True)


def random_positive_pairs(rng, n: int, k: int):
    """n independent strictly positive pairs on a k-letter alphabet."""
    p = random_simplex(rng, n, k)
    q = random_simplex(rng, n, k)
    return p, q


def random_pairs_with_zeros(rng, n: int, k: int):
    """Pairs where some coordinates are zeroed, to exercise the conventions."""
    p, q = random_positive_pairs(rng, n, k)
    kill_p = rng.random((n, k)) < 0.15
    kill_q = rng.random((n, k)) < 0.15
    # never zero an entire row
    kill_p[:, 0] = False
    kill_q[:, -1] = False
    p = np.where(kill_p, 0.0, p)
    q = np.where(kill_q, 0.0, q)
    return p / p.sum(axis=1, keepdims=True), q / q.sum(axis=1, keepdims=True)


def as_dist(row: np.ndarray) -> FiniteDist:
    return FiniteDist(labels(len(row)), np.asarray(row, dtype=float))
