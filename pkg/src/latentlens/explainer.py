"""Surrogate fitting and per-feature explanations.

An oracle dataset pairs decoded (or perturbed) neighbors with the
classifier's probabilities; a ridge regressor fit on it is the transparent
surrogate, and coefficient * instance-value gives each feature's signed
contribution toward the positive class.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.linalg

from .errors import NumericError
from .neighborhood import (
    LATENT_FACTORS,
    Neighborhood,
    decode_neighborhood,
    generate_latent_neighbors,
    generate_lime_neighbors,
)
from .network import Network
from .models import predict_proba

TARGET_TRANSFORMS = ("identity", "logit")
_LOGIT_EPS = 1e-6
EXPLANATION_SCHEMA_VERSION = 1


@dataclass
class OracleDataset:
    """Neighbor vectors labeled with the classifier's probabilities."""

    X: np.ndarray
    y: np.ndarray
    weights: np.ndarray | None = None

    def __post_init__(self) -> None:
        self.X = np.asarray(self.X, dtype=np.float64)
        self.y = np.asarray(self.y, dtype=np.float64)
        if self.X.ndim != 2 or self.y.shape != (self.X.shape[0],):
            raise ValueError(f"X {self.X.shape} and y {self.y.shape} do not align")
        if np.any((self.y < 0) | (self.y > 1)):
            raise ValueError("oracle targets must be probabilities in [0, 1]")
        if self.weights is not None:
            self.weights = np.asarray(self.weights, dtype=np.float64)
            if self.weights.shape != (self.X.shape[0],):
                raise ValueError("weights must align with rows")

    def __len__(self) -> int:
        return self.X.shape[0]


def synthesize_oracle(
    neighborhood: Neighborhood, decoder: Network, predictor: Network
) -> OracleDataset:
    """Decode a latent neighborhood and label every row with predict_proba."""
    decoded = decode_neighborhood(neighborhood, decoder)
    y = predict_proba(predictor, decoded.points)
    return OracleDataset(X=decoded.points, y=np.atleast_1d(y), weights=decoded.weights)


def transform_target(y: np.ndarray, kind: str = "identity") -> np.ndarray:
    """Optional target rescaling before the ridge fit."""
    y = np.asarray(y, dtype=np.float64)
    if kind == "identity":
        return y.copy()
    if kind == "logit":
        clipped = np.clip(y, _LOGIT_EPS, 1.0 - _LOGIT_EPS)
        return np.log(clipped / (1.0 - clipped))
    raise ValueError(f"unknown target transform {kind!r}")


def inverse_transform_target(t: np.ndarray, kind: str = "identity") -> np.ndarray:
    t = np.asarray(t, dtype=np.float64)
    if kind == "identity":
        return t.copy()
    if kind == "logit":
        return 1.0 / (1.0 + np.exp(-t))
    raise ValueError(f"unknown target transform {kind!r}")


def fit_ridge(
    X: np.ndarray,
    y: np.ndarray,
    weights: np.ndarray | None = None,
    alpha: float = 1e-3,
) -> tuple[np.ndarray, float]:
    """Weighted ridge solved in closed form.

    Solves (X'WX + alpha I) beta = X'W (y - ybar_w) where ybar_w is the
    weighted target mean, then sets the intercept so predictions are
    weighted-unbiased.  Sample weights are rescaled to unit mean, making the
    fit invariant to their overall scale.  When there are fewer rows than
    columns the equivalent dual (gram) system is solved instead.

    Raises:
        NumericError: singular system (only possible at alpha = 0).
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if X.ndim != 2 or y.shape != (X.shape[0],):
        raise ValueError(f"X {X.shape} and y {y.shape} do not align")
    if X.shape[0] < 1:
        raise ValueError("need at least one row")
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    n, v = X.shape

    if weights is None:
        w = np.ones(n)
    else:
        w = np.asarray(weights, dtype=np.float64)
        if w.shape != (n,):
            raise ValueError("weights must align with rows")
        if np.any(w < 0):
            raise ValueError("weights must be non-negative")
        total = w.sum()
        if total <= 0:
            raise ValueError("weights must not all be zero")
        w = w * (n / total)

    y_bar = float(np.dot(w, y) / n)
    y_centered = y - y_bar

    def _solve_spd(A: np.ndarray, b: np.ndarray) -> np.ndarray:
        try:
            factor = scipy.linalg.cho_factor(A, check_finite=False)
        except np.linalg.LinAlgError as exc:
            raise NumericError(
                f"singular ridge system at alpha={alpha}; use alpha > 0"
            ) from exc
        return scipy.linalg.cho_solve(factor, b, check_finite=False)

    if n < v and alpha > 0:
        sqrt_w = np.sqrt(w)
        Xw = X * sqrt_w[:, None]
        gram = Xw @ Xw.T
        gram[np.diag_indices_from(gram)] += alpha
        dual = _solve_spd(gram, sqrt_w * y_centered)
        beta = Xw.T @ dual
    else:
        weighted = X * w[:, None]
        normal = X.T @ weighted
        normal[np.diag_indices_from(normal)] += alpha
        beta = _solve_spd(normal, weighted.T @ y_centered)

    x_bar = (w[:, None] * X).sum(axis=0) / n
    intercept = y_bar - float(x_bar @ beta)
    return beta, intercept


@dataclass
class Explanation:
    """Per-feature contributions toward the positive class for one instance."""

    feature_names: list[str]
    contributions: np.ndarray
    intercept: float
    predicted_probability: float
    positive_class_name: str
    method: str = "latent"

    def __post_init__(self) -> None:
        self.contributions = np.asarray(self.contributions, dtype=np.float64)
        if self.contributions.shape != (len(self.feature_names),):
            raise ValueError("contributions must align with feature names")

    def top_features(self, k: int | None = None) -> list[tuple[str, float]]:
        """Non-zero contributions sorted by magnitude, largest first."""
        nz = np.flatnonzero(self.contributions)
        order = nz[np.argsort(-np.abs(self.contributions[nz]), kind="stable")]
        if k is not None:
            order = order[:k]
        return [(self.feature_names[i], float(self.contributions[i])) for i in order]

    def to_dict(self, top_k: int | None = None) -> dict:
        return {
            "schema_version": EXPLANATION_SCHEMA_VERSION,
            "method": self.method,
            "class": self.positive_class_name,
            "probability": self.predicted_probability,
            "intercept": self.intercept,
            "features": [
                {"name": name, "contribution": value}
                for name, value in self.top_features(top_k)
            ],
        }

    def save(self, path: str | Path, top_k: int | None = None) -> None:
        Path(path).write_text(json.dumps(self.to_dict(top_k), indent=2), encoding="utf-8")


def explain(
    instance: np.ndarray,
    coefficients: np.ndarray,
    intercept: float,
    predictor: Network,
    feature_names: list[str],
    positive_class_name: str,
    method: str = "latent",
) -> Explanation:
    """Turn surrogate coefficients into contributions for one instance."""
    instance = np.asarray(instance, dtype=np.float64)
    coefficients = np.asarray(coefficients, dtype=np.float64)
    if instance.shape != coefficients.shape:
        raise ValueError(
            f"instance {instance.shape} and coefficients {coefficients.shape} differ"
        )
    if len(feature_names) != instance.shape[0]:
        raise ValueError("feature names must align with the instance")
    return Explanation(
        feature_names=list(feature_names),
        contributions=coefficients * instance,
        intercept=float(intercept),
        predicted_probability=predict_proba(predictor, instance),
        positive_class_name=positive_class_name,
        method=method,
    )


@dataclass
class SurrogateFit:
    """A fitted ridge surrogate plus the oracle it was trained on."""

    coefficients: np.ndarray
    intercept: float
    oracle: OracleDataset
    alpha: float
    transform: str = "identity"

    def predict(self, X: np.ndarray) -> np.ndarray:
        """Surrogate predictions on the probability scale."""
        X = np.asarray(X, dtype=np.float64)
        raw = X @ self.coefficients + self.intercept
        return inverse_transform_target(raw, self.transform)


def fit_latent_surrogate(
    instance: np.ndarray,
    encoder: Network,
    decoder: Network,
    predictor: Network,
    alpha: float = 1e-3,
    factors: tuple[float, ...] = LATENT_FACTORS,
    transform: str = "identity",
) -> SurrogateFit:
    """Latent-neighborhood pipeline: encode, perturb, decode, label, fit ridge.

    The surrogate is fit unweighted on the decoded neighborhood.
    """
    z = encoder.predict(np.asarray(instance, dtype=np.float64))
    neighborhood = generate_latent_neighbors(z, factors)
    oracle = synthesize_oracle(neighborhood, decoder, predictor)
    targets = transform_target(oracle.y, transform)
    coefficients, intercept = fit_ridge(oracle.X, targets, weights=None, alpha=alpha)
    return SurrogateFit(coefficients, intercept, oracle, alpha, transform)


def fit_lime_surrogate(
    instance: np.ndarray,
    predictor: Network,
    n_samples: int = 5000,
    alpha: float = 1e-3,
    seed: int = 0,
) -> SurrogateFit:
    """Input-space baseline: zero random feature subsets, weight by cosine x100.

    Features outside the instance's support have identically zero columns,
    so their ridge coefficients are exactly zero; the solve runs on the
    support columns only and scatters back.
    """
    instance = np.asarray(instance, dtype=np.float64)
    neighborhood = generate_lime_neighbors(instance, n_samples, rng_seed=seed)
    y = predict_proba(predictor, neighborhood.points)
    oracle = OracleDataset(X=neighborhood.points, y=np.atleast_1d(y), weights=neighborhood.weights)
    support = np.flatnonzero(instance)
    # a single-feature instance only yields the zero point, whose cosine
    # weight is zero; fall back to the unweighted (trivial) fit there
    weights = oracle.weights if np.any(oracle.weights) else None
    coef_support, intercept = fit_ridge(
        oracle.X[:, support], oracle.y, weights=weights, alpha=alpha
    )
    coefficients = np.zeros(instance.shape[0])
    coefficients[support] = coef_support
    return SurrogateFit(coefficients, intercept, oracle, alpha, "identity")


def latent_explain(
    instance: np.ndarray,
    encoder: Network,
    decoder: Network,
    predictor: Network,
    feature_names: list[str],
    positive_class_name: str,
    alpha: float = 1e-3,
    factors: tuple[float, ...] = LATENT_FACTORS,
    transform: str = "identity",
) -> Explanation:
    fit = fit_latent_surrogate(
        instance, encoder, decoder, predictor, alpha=alpha, factors=factors, transform=transform
    )
    return explain(
        instance, fit.coefficients, fit.intercept, predictor, feature_names,
        positive_class_name, method="latent",
    )


def lime_explain(
    instance: np.ndarray,
    predictor: Network,
    feature_names: list[str],
    positive_class_name: str,
    n_samples: int = 5000,
    alpha: float = 1e-3,
    seed: int = 0,
) -> Explanation:
    fit = fit_lime_surrogate(instance, predictor, n_samples=n_samples, alpha=alpha, seed=seed)
    return explain(
        instance, fit.coefficients, fit.intercept, predictor, feature_names,
        positive_class_name, method="lime",
    )
