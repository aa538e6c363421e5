"""Neighborhood generators around an instance.

Two strategies: scale one latent coordinate at a time by a fixed factor set
(dense, works at the encoder's output), or zero random subsets of the
instance's non-zero input features with cosine-similarity weights (the
classic input-space baseline).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DataError
from .network import Network

LATENT_FACTORS = (0.0, 0.25, 0.5, 2.0, 4.0)

SPACES = ("latent", "input")


@dataclass
class Neighborhood:
    """Generated points around an origin, tagged with the space they live in."""

    origin: np.ndarray
    points: np.ndarray
    space: str
    weights: np.ndarray | None = None

    def __post_init__(self) -> None:
        self.origin = np.asarray(self.origin, dtype=np.float64)
        self.points = np.asarray(self.points, dtype=np.float64)
        if self.space not in SPACES:
            raise ValueError(f"space must be one of {SPACES}, got {self.space!r}")
        if self.points.ndim != 2 or self.points.shape[1] != self.origin.shape[0]:
            raise ValueError(
                f"points shape {self.points.shape} does not match origin dim "
                f"{self.origin.shape[0]}"
            )
        if self.weights is not None:
            self.weights = np.asarray(self.weights, dtype=np.float64)
            if self.weights.shape != (self.points.shape[0],):
                raise ValueError("weights must align one-to-one with points")

    def __len__(self) -> int:
        return self.points.shape[0]


def generate_latent_neighbors(
    z: np.ndarray, factors: tuple[float, ...] = LATENT_FACTORS
) -> Neighborhood:
    """One neighbor per (coordinate, factor): copy z with that coordinate scaled.

    Enumeration order is coordinate-ascending, factors in the given order,
    yielding exactly len(factors) * len(z) points.  Coordinates equal to
    zero still produce their (identical) neighbors; callers wanting unique
    points can deduplicate downstream.
    """
    z = np.asarray(z, dtype=np.float64)
    if z.ndim != 1 or z.shape[0] == 0:
        raise ValueError("z must be a non-empty 1-D vector")
    dim = z.shape[0]
    points = np.tile(z, (len(factors) * dim, 1))
    row = 0
    for i in range(dim):
        for f in factors:
            points[row, i] = z[i] * f
            row += 1
    return Neighborhood(origin=z, points=points, space="latent")


def decode_neighborhood(neighborhood: Neighborhood, decoder: Network) -> Neighborhood:
    """Map a latent neighborhood pointwise through the decoder."""
    if neighborhood.space != "latent":
        raise ValueError(f"expected a latent neighborhood, got {neighborhood.space!r}")
    origin = decoder.predict(neighborhood.origin)
    if len(neighborhood) == 0:
        points = np.zeros((0, origin.shape[0]))
    else:
        points = decoder.predict(neighborhood.points)
    return Neighborhood(
        origin=origin, points=points, space="input", weights=neighborhood.weights
    )


def cosine_similarity(a: np.ndarray, b: np.ndarray) -> float:
    """a.b / (|a||b|); zero if either norm is zero."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    norm_a = np.linalg.norm(a)
    norm_b = np.linalg.norm(b)
    if norm_a == 0.0 or norm_b == 0.0:
        return 0.0
    return float(np.dot(a, b) / (norm_a * norm_b))


def generate_lime_neighbors(x: np.ndarray, n_samples: int, rng_seed: int = 0) -> Neighborhood:
    """Zero a random non-empty subset of x's non-zero features, n_samples times.

    Subset size is uniform on [1, nnz], then a uniform size-k subset.  Each
    point is weighted by cosine similarity to x times one hundred.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError("x must be a 1-D vector")
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    support = np.flatnonzero(x)
    if support.size == 0:
        raise DataError("instance has no non-zero features to perturb")
    rng = np.random.default_rng(rng_seed)
    points = np.tile(x, (n_samples, 1))
    weights = np.empty(n_samples)
    for row in range(n_samples):
        k = int(rng.integers(1, support.size + 1))
        zeroed = rng.choice(support, size=k, replace=False)
        points[row, zeroed] = 0.0
        weights[row] = cosine_similarity(points[row], x) * 100.0
    return Neighborhood(origin=x, points=points, space="input", weights=weights)


def generate_single_zero_neighbors(x: np.ndarray) -> Neighborhood:
    """One neighbor per non-zero feature of x, with just that feature zeroed."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError("x must be a 1-D vector")
    support = np.flatnonzero(x)
    if support.size == 0:
        raise DataError("instance has no non-zero features to perturb")
    points = np.tile(x, (support.size, 1))
    for row, idx in enumerate(support):
        points[row, idx] = 0.0
    return Neighborhood(origin=x, points=points, space="input")


def save_neighborhood_csv(neighborhood: Neighborhood, path: str | Path) -> None:
    """Write one point per row; the weight column is included when present."""
    with Path(path).open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        dim = neighborhood.origin.shape[0]
        header = [f"x{i}" for i in range(dim)]
        if neighborhood.weights is not None:
            header.append("weight")
        writer.writerow(header)
        for row in range(len(neighborhood)):
            fields = [repr(float(v)) for v in neighborhood.points[row]]
            if neighborhood.weights is not None:
                fields.append(repr(float(neighborhood.weights[row])))
            writer.writerow(fields)
