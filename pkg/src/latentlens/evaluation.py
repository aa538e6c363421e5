"""Distance comparisons between neighborhood strategies and fidelity checks.

The distance report measures, for one instance: how far the input-space
baseline's neighbors sit from it (raw and after encoding), and how far the
latent-space neighbors sit (raw and after decoding).  Fidelity checks zero
a top-contribution feature and ask whether the probability moves the way
the explanation said it would.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .explainer import Explanation, OracleDataset, SurrogateFit
from .models import predict_proba
from .neighborhood import (
    LATENT_FACTORS,
    generate_latent_neighbors,
    generate_lime_neighbors,
    generate_single_zero_neighbors,
)
from .network import Network

DISTANCE_ROW_LABELS = (
    "LIME: generated on original space",
    "LIME: encoded",
    "Latent: generated on encoded space",
    "Latent: decoded to original space",
)


def mean_euclidean(points: np.ndarray, origin: np.ndarray) -> float:
    """Arithmetic mean of the euclidean distances from each point to the origin."""
    points = np.asarray(points, dtype=np.float64)
    origin = np.asarray(origin, dtype=np.float64)
    if points.ndim != 2 or points.shape[1] != origin.shape[0]:
        raise ValueError(f"points {points.shape} do not match origin dim {origin.shape}")
    if points.shape[0] == 0:
        raise ValueError("need at least one point")
    return float(np.mean(np.linalg.norm(points - origin, axis=1)))


@dataclass
class DistanceReport:
    """Mean distances from the instance for both generators, both spaces."""

    lime_original: float
    lime_encoded: float
    latent_encoded: float
    latent_decoded: float

    def to_dict(self) -> dict:
        return {
            "lime_original": self.lime_original,
            "lime_encoded": self.lime_encoded,
            "latent_encoded": self.latent_encoded,
            "latent_decoded": self.latent_decoded,
        }

    def values_in_row_order(self) -> tuple[float, float, float, float]:
        return (self.lime_original, self.lime_encoded, self.latent_encoded, self.latent_decoded)

    def as_table(self) -> str:
        """Aligned text table, one row per distance."""
        width = max(len(label) for label in DISTANCE_ROW_LABELS) + 3
        lines = [" " * width + "Euclidean distance"]
        for label, value in zip(DISTANCE_ROW_LABELS, self.values_in_row_order()):
            lines.append(f"{label:<{width}}{value:.4f}")
        return "\n".join(lines)

    def ordering_holds(self) -> bool:
        """The expected joint pattern: tighter encoded, looser decoded."""
        return (
            self.latent_encoded < self.lime_encoded
            and self.latent_decoded > self.lime_original
        )


def distance_report(
    instance: np.ndarray,
    encoder: Network,
    decoder: Network,
    mode: str = "single",
    n_samples: int = 5000,
    seed: int = 0,
    factors: tuple[float, ...] = LATENT_FACTORS,
) -> DistanceReport:
    """Four mean distances for one instance.

    ``single`` mode perturbs one feature at a time on the baseline side,
    mirroring the one-coordinate-at-a-time latent generator; ``sampled``
    uses the random-subset baseline with ``n_samples`` draws.
    """
    instance = np.asarray(instance, dtype=np.float64)
    if mode == "single":
        lime_nbhd = generate_single_zero_neighbors(instance)
    elif mode == "sampled":
        lime_nbhd = generate_lime_neighbors(instance, n_samples, rng_seed=seed)
    else:
        raise ValueError(f"mode must be 'single' or 'sampled', got {mode!r}")

    z = encoder.predict(instance)
    latent_nbhd = generate_latent_neighbors(z, factors)
    encoded_lime = encoder.predict(lime_nbhd.points)
    decoded_latent = decoder.predict(latent_nbhd.points)

    return DistanceReport(
        lime_original=mean_euclidean(lime_nbhd.points, instance),
        lime_encoded=mean_euclidean(encoded_lime, z),
        latent_encoded=mean_euclidean(latent_nbhd.points, z),
        latent_decoded=mean_euclidean(decoded_latent, instance),
    )


@dataclass
class FidelityResult:
    """Outcome of zeroing one feature and re-querying the classifier."""

    feature: str
    contribution_sign: str
    prob_before: float
    prob_after_removal: float
    agrees: bool

    def to_dict(self) -> dict:
        return {
            "feature": self.feature,
            "contribution_sign": self.contribution_sign,
            "prob_before": self.prob_before,
            "prob_after_removal": self.prob_after_removal,
            "agrees": self.agrees,
        }


def fidelity_check(
    instance: np.ndarray,
    explanation: Explanation,
    predictor: Network,
    top_k: int,
    feature_names: list[str] | None = None,
) -> list[FidelityResult]:
    """Zero each top-contribution feature and record direction agreement.

    A positive contribution agrees when removal lowers the probability,
    a negative one when removal raises it; an exactly unchanged probability
    counts as disagreement.  Instances with fewer than top_k non-zero
    contributions yield fewer results.
    """
    if top_k < 1:
        raise ValueError("top_k must be >= 1")
    instance = np.asarray(instance, dtype=np.float64)
    names = feature_names if feature_names is not None else explanation.feature_names
    name_to_index = {name: i for i, name in enumerate(names)}
    prob_before = predict_proba(predictor, instance)

    results = []
    for feature, contribution in explanation.top_features(top_k):
        perturbed = instance.copy()
        perturbed[name_to_index[feature]] = 0.0
        prob_after = predict_proba(predictor, perturbed)
        delta = prob_before - prob_after
        sign = "+" if contribution > 0 else "-"
        agrees = (delta > 0) if sign == "+" else (delta < 0)
        results.append(
            FidelityResult(
                feature=feature,
                contribution_sign=sign,
                prob_before=prob_before,
                prob_after_removal=prob_after,
                agrees=bool(agrees),
            )
        )
    return results


def surrogate_fidelity(surrogate: SurrogateFit, oracle: OracleDataset) -> dict:
    """R-squared and MSE of the surrogate against the oracle targets.

    R-squared is None when the targets have zero variance.
    """
    if len(oracle) == 0:
        raise ValueError("oracle dataset is empty")
    predictions = surrogate.predict(oracle.X)
    residual = oracle.y - predictions
    mse = float(np.mean(residual * residual))
    total = float(np.sum((oracle.y - oracle.y.mean()) ** 2))
    if total == 0.0:
        return {"r2": None, "mse": mse}
    return {"r2": float(1.0 - np.sum(residual * residual) / total), "mse": mse}
