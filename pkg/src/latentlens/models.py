"""Predictor, encoder and decoder construction on top of the network engine.

The classifier is a relu stack narrowing to a small penultimate layer and a
1-unit sigmoid output.  The encoder is that classifier minus its output
layer, frozen; the decoder is trained to invert it by optimizing the
composed stack while the encoder half stays fixed.
"""

from __future__ import annotations

import numpy as np

from .network import DenseLayer, Network, TrainConfig, glorot_uniform, train


def build_predictor(
    input_dim: int,
    hidden_dims: list[int],
    latent_dim: int = 32,
    seed: int = 0,
) -> Network:
    """Binary classifier: input -> hidden stack -> latent layer -> sigmoid unit."""
    if not hidden_dims:
        raise ValueError("hidden_dims must be non-empty")
    if input_dim < 1 or latent_dim < 1 or any(d < 1 for d in hidden_dims):
        raise ValueError("all layer widths must be >= 1")
    rng = np.random.default_rng(seed)
    dims = [input_dim, *hidden_dims, latent_dim]
    layers = [
        DenseLayer(glorot_uniform(out, inp, rng), np.zeros(out), "relu")
        for inp, out in zip(dims, dims[1:])
    ]
    layers.append(DenseLayer(glorot_uniform(1, latent_dim, rng), np.zeros(1), "sigmoid"))
    return Network(layers, loss="binary_crossentropy")


def build_encoder(predictor: Network) -> Network:
    """Copy of the predictor without its output layer, all layers frozen."""
    if len(predictor.layers) < 2:
        raise ValueError("predictor must have at least two layers")
    layers = [layer.copy(trainable=False) for layer in predictor.layers[:-1]]
    return Network(layers, loss=predictor.loss)


def build_decoder(
    latent_dim: int,
    decoder_dims: list[int],
    output_dim: int,
    seed: int = 0,
    loss: str = "per_dim_crossentropy",
) -> Network:
    """Untrained decoder: latent -> hidden stack -> sigmoid reconstruction."""
    if output_dim < 1 or any(d < 1 for d in decoder_dims):
        raise ValueError("all layer widths must be >= 1")
    rng = np.random.default_rng(seed)
    dims = [latent_dim, *decoder_dims]
    layers = [
        DenseLayer(glorot_uniform(out, inp, rng), np.zeros(out), "relu")
        for inp, out in zip(dims, dims[1:])
    ]
    layers.append(
        DenseLayer(glorot_uniform(output_dim, dims[-1], rng), np.zeros(output_dim), "sigmoid")
    )
    return Network(layers, loss=loss)


def build_and_train_decoder(
    encoder: Network,
    decoder_dims: list[int],
    X: np.ndarray,
    cfg: TrainConfig,
    loss: str = "per_dim_crossentropy",
) -> tuple[Network, list[float]]:
    """Train a decoder against the frozen encoder so decoder(encoder(x)) ~ x.

    The composed autoencoder is optimized as one network; encoder layers are
    frozen, so only decoder weights move.  Returns the decoder and the
    reconstruction loss history.
    """
    if any(layer.trainable for layer in encoder.layers):
        raise ValueError("encoder layers must all be frozen before decoder training")
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != encoder.input_dim:
        raise ValueError(f"X shape {X.shape} does not match encoder input {encoder.input_dim}")

    decoder = build_decoder(
        encoder.output_dim, decoder_dims, encoder.input_dim, seed=cfg.seed, loss=loss
    )
    autoencoder = Network(encoder.layers + decoder.layers, loss=loss)
    targets = np.clip(X, 0.0, 1.0) if loss != "mse" else X
    history = train(autoencoder, X, targets, cfg)
    return decoder, history


def predict_proba(predictor: Network, x: np.ndarray):
    """Positive-class probability: float for a single vector, 1-D array for a batch."""
    if predictor.output_dim != 1:
        raise ValueError(f"expected a 1-unit output, got {predictor.output_dim}")
    out = predictor.predict(x)
    if out.ndim == 1:
        return float(out[0])
    return out[:, 0]
