"""latentlens: local explanations for dense text classifiers.

Explains individual predictions by perturbing the classifier's penultimate
representation, decoding the neighborhood back to input space with a
purpose-trained decoder, and fitting a transparent ridge surrogate.  A
classic input-space perturbation baseline and an evaluation harness for
distance and fidelity comparisons are included.
"""

from .corpus import (
    CONTRACTIONS,
    Dataset,
    Document,
    expand_contractions,
    load_dataset,
    preprocess,
)
from .errors import DataError, NumericError
from .evaluation import (
    DistanceReport,
    FidelityResult,
    distance_report,
    fidelity_check,
    mean_euclidean,
    surrogate_fidelity,
)
from .explainer import (
    Explanation,
    OracleDataset,
    SurrogateFit,
    explain,
    fit_latent_surrogate,
    fit_lime_surrogate,
    fit_ridge,
    inverse_transform_target,
    latent_explain,
    lime_explain,
    synthesize_oracle,
    transform_target,
)
from .models import (
    build_and_train_decoder,
    build_decoder,
    build_encoder,
    build_predictor,
    predict_proba,
)
from .neighborhood import (
    LATENT_FACTORS,
    Neighborhood,
    cosine_similarity,
    decode_neighborhood,
    generate_latent_neighbors,
    generate_lime_neighbors,
    generate_single_zero_neighbors,
    save_neighborhood_csv,
)
from .network import DenseLayer, Network, TrainConfig, gradients, loss_value, train
from .stemming import stem
from .vectorizer import TfIdfModel

__version__ = "0.1.0"

__all__ = [
    "CONTRACTIONS",
    "DataError",
    "Dataset",
    "DenseLayer",
    "DistanceReport",
    "Document",
    "Explanation",
    "FidelityResult",
    "LATENT_FACTORS",
    "Neighborhood",
    "Network",
    "NumericError",
    "OracleDataset",
    "SurrogateFit",
    "TfIdfModel",
    "TrainConfig",
    "build_and_train_decoder",
    "build_decoder",
    "build_encoder",
    "build_predictor",
    "cosine_similarity",
    "decode_neighborhood",
    "distance_report",
    "expand_contractions",
    "explain",
    "fidelity_check",
    "fit_latent_surrogate",
    "fit_lime_surrogate",
    "fit_ridge",
    "generate_latent_neighbors",
    "generate_lime_neighbors",
    "generate_single_zero_neighbors",
    "gradients",
    "inverse_transform_target",
    "latent_explain",
    "lime_explain",
    "load_dataset",
    "loss_value",
    "mean_euclidean",
    "predict_proba",
    "preprocess",
    "save_neighborhood_csv",
    "stem",
    "surrogate_fidelity",
    "synthesize_oracle",
    "train",
    "transform_target",
]
