"""Dense feed-forward network engine: forward pass, backpropagation, training.

Everything is float64 numpy.  Layers carry a ``trainable`` flag; training
never touches frozen layers, which is what lets an encoder share weights
with the classifier it was split from.  Weights serialize to JSON with
shortest-roundtrip decimal floats, so save/load and repeated seeded runs
are bit-exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import NumericError

ACTIVATIONS = ("relu", "sigmoid", "softmax", "linear")
LOSSES = ("binary_crossentropy", "per_dim_crossentropy", "mse")

PROB_EPS = 1e-7  # probability clip inside cross-entropy
SCHEMA_VERSION = 1


def _apply_activation(name: str, z: np.ndarray) -> np.ndarray:
    if name == "relu":
        return np.maximum(z, 0.0)
    if name == "sigmoid":
        out = np.empty_like(z)
        pos = z >= 0
        out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
        ez = np.exp(z[~pos])
        out[~pos] = ez / (1.0 + ez)
        return out
    if name == "softmax":
        shifted = z - z.max(axis=1, keepdims=True)
        e = np.exp(shifted)
        return e / e.sum(axis=1, keepdims=True)
    if name == "linear":
        return z
    raise ValueError(f"unknown activation {name!r}")


def _activation_backward(name: str, grad_a: np.ndarray, z: np.ndarray, a: np.ndarray) -> np.ndarray:
    """Gradient w.r.t. pre-activation given gradient w.r.t. activation."""
    if name == "relu":
        return grad_a * (z > 0)
    if name == "sigmoid":
        return grad_a * a * (1.0 - a)
    if name == "softmax":
        inner = (grad_a * a).sum(axis=1, keepdims=True)
        return a * (grad_a - inner)
    if name == "linear":
        return grad_a
    raise ValueError(f"unknown activation {name!r}")


def _loss_and_grad(loss: str, a: np.ndarray, y: np.ndarray) -> tuple[float, np.ndarray]:
    n = a.size
    if loss == "mse":
        diff = a - y
        return float(np.mean(diff * diff)), 2.0 * diff / n
    if loss in ("binary_crossentropy", "per_dim_crossentropy"):
        # per_dim_crossentropy is the same elementwise form over a wide output
        clipped = np.clip(a, PROB_EPS, 1.0 - PROB_EPS)
        value = float(-np.mean(y * np.log(clipped) + (1.0 - y) * np.log(1.0 - clipped)))
        inside = (a > PROB_EPS) & (a < 1.0 - PROB_EPS)
        grad = np.where(inside, (clipped - y) / (clipped * (1.0 - clipped)), 0.0) / n
        return value, grad
    raise ValueError(f"unknown loss {loss!r}")


class DenseLayer:
    """One fully connected layer: weights (out x in), bias (out), activation."""

    def __init__(
        self,
        weights: np.ndarray,
        bias: np.ndarray,
        activation: str = "relu",
        trainable: bool = True,
    ) -> None:
        weights = np.array(weights, dtype=np.float64)
        bias = np.array(bias, dtype=np.float64)
        if weights.ndim != 2:
            raise ValueError(f"weights must be 2-D, got shape {weights.shape}")
        if bias.shape != (weights.shape[0],):
            raise ValueError(f"bias shape {bias.shape} does not match {weights.shape[0]} outputs")
        if not (np.isfinite(weights).all() and np.isfinite(bias).all()):
            raise ValueError("layer parameters must be finite")
        if activation not in ACTIVATIONS:
            raise ValueError(f"unknown activation {activation!r}")
        self.weights = weights
        self.bias = bias
        self.activation = activation
        self.trainable = bool(trainable)

    @property
    def in_dim(self) -> int:
        return self.weights.shape[1]

    @property
    def out_dim(self) -> int:
        return self.weights.shape[0]

    def copy(self, trainable: bool | None = None) -> "DenseLayer":
        return DenseLayer(
            self.weights,
            self.bias,
            self.activation,
            self.trainable if trainable is None else trainable,
        )


def glorot_uniform(out_dim: int, in_dim: int, rng: np.random.Generator) -> np.ndarray:
    limit = np.sqrt(6.0 / (in_dim + out_dim))
    return rng.uniform(-limit, limit, size=(out_dim, in_dim))


class Network:
    """An ordered stack of dense layers plus the loss used to train it."""

    def __init__(self, layers: list[DenseLayer], loss: str = "mse") -> None:
        if not layers:
            raise ValueError("a network needs at least one layer")
        if loss not in LOSSES:
            raise ValueError(f"unknown loss {loss!r}")
        for prev, nxt in zip(layers, layers[1:]):
            if prev.out_dim != nxt.in_dim:
                raise ValueError(
                    f"layer dimensions do not chain: {prev.out_dim} -> {nxt.in_dim}"
                )
        self.layers = list(layers)
        self.loss = loss

    @property
    def input_dim(self) -> int:
        return self.layers[0].in_dim

    @property
    def output_dim(self) -> int:
        return self.layers[-1].out_dim

    def _as_batch(self, x: np.ndarray) -> tuple[np.ndarray, bool]:
        x = np.asarray(x, dtype=np.float64)
        single = x.ndim == 1
        if single:
            x = x[None, :]
        if x.ndim != 2 or x.shape[1] != self.input_dim:
            raise ValueError(
                f"input of shape {x.shape} does not match input dim {self.input_dim}"
            )
        return x, single

    def forward(self, x: np.ndarray) -> list[np.ndarray]:
        """Activations of every layer in order; the last entry is the output."""
        batch, single = self._as_batch(x)
        activations = []
        current = batch
        for layer in self.layers:
            current = _apply_activation(
                layer.activation, current @ layer.weights.T + layer.bias
            )
            activations.append(current[0] if single else current)
        return activations

    def predict(self, x: np.ndarray) -> np.ndarray:
        return self.forward(x)[-1]

    def copy(self, trainable: bool | None = None) -> "Network":
        return Network([layer.copy(trainable) for layer in self.layers], self.loss)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "loss": self.loss,
            "layers": [
                {
                    "rows": layer.out_dim,
                    "cols": layer.in_dim,
                    "weights": layer.weights.reshape(-1).tolist(),
                    "bias": layer.bias.tolist(),
                    "activation": layer.activation,
                    "trainable": layer.trainable,
                }
                for layer in self.layers
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Network":
        layers = [
            DenseLayer(
                np.array(spec["weights"], dtype=np.float64).reshape(spec["rows"], spec["cols"]),
                np.array(spec["bias"], dtype=np.float64),
                spec["activation"],
                spec["trainable"],
            )
            for spec in data["layers"]
        ]
        return cls(layers, data["loss"])

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict()), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "Network":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


@dataclass
class TrainConfig:
    epochs: int = 50
    batch_size: int = 32
    learning_rate: float = 1e-3
    seed: int = 0
    optimizer: str = "adam"

    def __post_init__(self) -> None:
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be > 0")
        if self.optimizer not in ("sgd", "adam"):
            raise ValueError(f"unknown optimizer {self.optimizer!r}")


def loss_value(net: Network, X: np.ndarray, y: np.ndarray) -> float:
    """Loss of the network on (X, y) under its configured loss."""
    X, y = _check_training_shapes(net, X, y)
    value, _ = _loss_and_grad(net.loss, net.forward(X)[-1], y)
    return value


def _check_training_shapes(net: Network, X: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != net.input_dim:
        raise ValueError(f"X shape {X.shape} does not match input dim {net.input_dim}")
    if y.ndim == 1:
        y = y[:, None]
    if y.shape != (X.shape[0], net.output_dim):
        raise ValueError(
            f"y shape {y.shape} does not match ({X.shape[0]}, {net.output_dim})"
        )
    return X, y


def _backward(net: Network, X: np.ndarray, y: np.ndarray) -> tuple[float, list[tuple[np.ndarray, np.ndarray]]]:
    """Loss and per-layer (dW, db) for one batch."""
    zs = []
    activations = [X]
    for layer in net.layers:
        z = activations[-1] @ layer.weights.T + layer.bias
        zs.append(z)
        activations.append(_apply_activation(layer.activation, z))

    value, grad_a = _loss_and_grad(net.loss, activations[-1], y)
    grads: list[tuple[np.ndarray, np.ndarray]] = [None] * len(net.layers)
    for i in range(len(net.layers) - 1, -1, -1):
        layer = net.layers[i]
        grad_z = _activation_backward(layer.activation, grad_a, zs[i], activations[i + 1])
        grads[i] = (grad_z.T @ activations[i], grad_z.sum(axis=0))
        if i > 0:
            grad_a = grad_z @ layer.weights
    return value, grads


def gradients(net: Network, X: np.ndarray, y: np.ndarray) -> list[tuple[np.ndarray, np.ndarray]]:
    """Analytic (dW, db) per layer for the whole batch; used by gradient checks."""
    X, y = _check_training_shapes(net, X, y)
    _, grads = _backward(net, X, y)
    return grads


class _AdamState:
    def __init__(self, layer: DenseLayer) -> None:
        self.m_w = np.zeros_like(layer.weights)
        self.v_w = np.zeros_like(layer.weights)
        self.m_b = np.zeros_like(layer.bias)
        self.v_b = np.zeros_like(layer.bias)


def train(net: Network, X: np.ndarray, y: np.ndarray, cfg: TrainConfig) -> list[float]:
    """Train in place; returns the mean loss per epoch.

    Only layers with ``trainable=True`` are updated.  Raises NumericError
    if the loss goes non-finite.
    """
    X, y = _check_training_shapes(net, X, y)
    rng = np.random.default_rng(cfg.seed)
    beta1, beta2, eps = 0.9, 0.999, 1e-8
    adam = {i: _AdamState(layer) for i, layer in enumerate(net.layers) if layer.trainable}
    step = 0
    n = X.shape[0]
    history: list[float] = []

    for epoch in range(cfg.epochs):
        order = rng.permutation(n)
        epoch_loss = 0.0
        for start in range(0, n, cfg.batch_size):
            idx = order[start : start + cfg.batch_size]
            value, grads = _backward(net, X[idx], y[idx])
            if not np.isfinite(value):
                raise NumericError(
                    f"non-finite loss {value} at epoch {epoch}, batch offset {start}"
                )
            epoch_loss += value * len(idx)
            step += 1
            for i, layer in enumerate(net.layers):
                if not layer.trainable:
                    continue
                grad_w, grad_b = grads[i]
                if cfg.optimizer == "sgd":
                    layer.weights -= cfg.learning_rate * grad_w
                    layer.bias -= cfg.learning_rate * grad_b
                else:
                    state = adam[i]
                    state.m_w = beta1 * state.m_w + (1 - beta1) * grad_w
                    state.v_w = beta2 * state.v_w + (1 - beta2) * grad_w * grad_w
                    state.m_b = beta1 * state.m_b + (1 - beta1) * grad_b
                    state.v_b = beta2 * state.v_b + (1 - beta2) * grad_b * grad_b
                    corr1 = 1 - beta1**step
                    corr2 = 1 - beta2**step
                    layer.weights -= cfg.learning_rate * (state.m_w / corr1) / (
                        np.sqrt(state.v_w / corr2) + eps
                    )
                    layer.bias -= cfg.learning_rate * (state.m_b / corr1) / (
                        np.sqrt(state.v_b / corr2) + eps
                    )
        history.append(epoch_loss / n)
    return history
