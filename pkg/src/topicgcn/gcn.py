"""Multi-graph graph-convolutional classifier, written on bare numpy.

One two-layer GCN encoder per topic graph:

    H1 = relu(P X W1 + b1)        hidden width 64 by default
    H2 = P H1 W2 + b2             embedding width 32, no activation

The per-graph embeddings are concatenated row-wise into one vector per
document and mapped to class logits by a dense head; probabilities come
from a numerically stable softmax.  Forward, backward, and the Adam
update are implemented manually; gradients flow only through the masked
rows of the loss, and every tensor is float64.

The gradient check compares the analytic gradients against central
finite differences on a small seeded instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np
import scipy.sparse as sp

from .graphs import TopicGraph, build_topk_edges, normalize_adjacency

_DEFAULT_HIDDEN = 64
_DEFAULT_EMBED = 32


@dataclass
class GcnLayerParams:
    """Weight matrix and bias vector of one affine map."""

    weight: np.ndarray
    bias: np.ndarray


@dataclass
class MultiGraphGcn:
    """Per-graph encoder stacks plus the shared classification head.

    ``encoders[g]`` holds the two layers of graph ``g``.  The same
    structure doubles as the gradient container: ``loss_and_grad``
    returns a :class:`MultiGraphGcn` whose arrays are gradients.
    """

    encoders: list[list[GcnLayerParams]]
    head: GcnLayerParams

    @property
    def num_graphs(self) -> int:
        return len(self.encoders)

    @property
    def embed_dim(self) -> int:
        return self.encoders[0][1].weight.shape[1]


@dataclass
class AdamState:
    """First/second moment estimates (model-shaped) plus step counter."""

    mean: MultiGraphGcn
    variance: MultiGraphGcn
    step_count: int
    lr: float
    beta1: float
    beta2: float
    epsilon: float


@dataclass
class ForwardCache:
    """Intermediates retained for backprop.

    ``px`` and ``ph1`` are the propagated inputs of layers 1 and 2,
    ``z1``/``h1`` the pre-/post-activation hidden states, per graph.
    """

    px: list
    z1: list[np.ndarray]
    h1: list[np.ndarray]
    ph1: list[np.ndarray]
    embedding: np.ndarray
    logits: np.ndarray
    probs: np.ndarray


def _glorot(rng: np.random.Generator, fan_in: int, fan_out: int) -> np.ndarray:
    bound = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-bound, bound, size=(fan_in, fan_out))


def init_model(
    input_dims: Sequence[int],
    seed: int,
    hidden: int = _DEFAULT_HIDDEN,
    embed: int = _DEFAULT_EMBED,
    num_classes: int = 2,
) -> MultiGraphGcn:
    """Glorot-uniform weights, zero biases, deterministic per seed.

    Draw order is fixed: for each graph W1 then W2, finally the head.
    """
    if not input_dims:
        raise ValueError("at least one graph input dimension is required")
    rng = np.random.default_rng(seed)
    encoders = []
    for dim in input_dims:
        w1 = _glorot(rng, dim, hidden)
        w2 = _glorot(rng, hidden, embed)
        encoders.append(
            [
                GcnLayerParams(w1, np.zeros(hidden)),
                GcnLayerParams(w2, np.zeros(embed)),
            ]
        )
    head_w = _glorot(rng, len(input_dims) * embed, num_classes)
    return MultiGraphGcn(encoders, GcnLayerParams(head_w, np.zeros(num_classes)))


def _param_arrays(model: MultiGraphGcn) -> Iterator[np.ndarray]:
    for encoder in model.encoders:
        for layer in encoder:
            yield layer.weight
            yield layer.bias
    yield model.head.weight
    yield model.head.bias


def zeros_like_model(model: MultiGraphGcn) -> MultiGraphGcn:
    encoders = [
        [GcnLayerParams(np.zeros_like(l.weight), np.zeros_like(l.bias)) for l in enc]
        for enc in model.encoders
    ]
    head = GcnLayerParams(np.zeros_like(model.head.weight), np.zeros_like(model.head.bias))
    return MultiGraphGcn(encoders, head)


def softmax(logits: np.ndarray) -> np.ndarray:
    """Row-wise softmax, shifted by the row maximum for stability."""
    shifted = logits - logits.max(axis=1, keepdims=True)
    exps = np.exp(shifted)
    return exps / exps.sum(axis=1, keepdims=True)


def _check_graphs(model: MultiGraphGcn, graphs: Sequence[TopicGraph]) -> int:
    if len(graphs) != model.num_graphs:
        raise ValueError(
            f"model expects {model.num_graphs} graphs, got {len(graphs)}"
        )
    n = graphs[0].features.shape[0]
    for g, graph in enumerate(graphs):
        if graph.features.shape[0] != n:
            raise ValueError(
                f"graph {g} has {graph.features.shape[0]} nodes, expected {n}"
            )
        expected = model.encoders[g][0].weight.shape[0]
        if graph.features.shape[1] != expected:
            raise ValueError(
                f"graph {g} has feature dim {graph.features.shape[1]},"
                f" model expects {expected}"
            )
    return n


def forward(model: MultiGraphGcn, graphs: Sequence[TopicGraph]) -> ForwardCache:
    """Full forward pass over all graphs; returns every intermediate."""
    _check_graphs(model, graphs)
    px_list, z1_list, h1_list, ph1_list, h2_list = [], [], [], [], []
    for graph, encoder in zip(graphs, model.encoders):
        p = graph.propagation
        px = p @ graph.features.tocsr()
        z1 = px @ encoder[0].weight + encoder[0].bias
        h1 = np.maximum(z1, 0.0)
        ph1 = p @ h1
        h2 = ph1 @ encoder[1].weight + encoder[1].bias
        px_list.append(px)
        z1_list.append(z1)
        h1_list.append(h1)
        ph1_list.append(ph1)
        h2_list.append(h2)
    embedding = np.hstack(h2_list)
    logits = embedding @ model.head.weight + model.head.bias
    probs = softmax(logits)
    return ForwardCache(px_list, z1_list, h1_list, ph1_list, embedding, logits, probs)


def predict_proba(model: MultiGraphGcn, graphs: Sequence[TopicGraph]) -> np.ndarray:
    """Class probabilities only; identical arithmetic to :func:`forward`."""
    return forward(model, graphs).probs


def _mask_indices(mask, n_nodes: int) -> np.ndarray:
    arr = np.asarray(mask)
    if arr.dtype == np.bool_:
        if arr.shape != (n_nodes,):
            raise ValueError(f"boolean mask must have shape ({n_nodes},)")
        idx = np.flatnonzero(arr)
    else:
        idx = arr.astype(np.int64).ravel()
        if idx.size and (idx.min() < 0 or idx.max() >= n_nodes):
            raise ValueError("mask indices outside node range")
    if idx.size == 0:
        raise ValueError("mask selects no nodes")
    return idx


def masked_cross_entropy(cache: ForwardCache, labels: np.ndarray, mask) -> float:
    """Mean negative log-likelihood over the masked rows."""
    idx = _mask_indices(mask, cache.logits.shape[0])
    shifted = cache.logits - cache.logits.max(axis=1, keepdims=True)
    log_z = np.log(np.exp(shifted).sum(axis=1))
    log_probs = shifted[idx, labels[idx]] - log_z[idx]
    return float(-log_probs.mean())


def loss_and_grad(
    cache: ForwardCache,
    labels: np.ndarray,
    mask,
    model: MultiGraphGcn,
    graphs: Sequence[TopicGraph],
) -> tuple[float, MultiGraphGcn]:
    """Masked cross-entropy and gradients for every parameter.

    Only the masked rows contribute; the returned container mirrors the
    model structure.  Non-finite values raise FloatingPointError.
    """
    n = cache.logits.shape[0]
    idx = _mask_indices(mask, n)
    loss = masked_cross_entropy(cache, labels, idx)
    if not np.isfinite(loss):
        raise FloatingPointError(f"non-finite loss: {loss}")

    # d loss / d logits on masked rows: (softmax - onehot) / |mask|
    dlogits = cache.probs[idx].copy()
    dlogits[np.arange(idx.size), labels[idx]] -= 1.0
    dlogits /= idx.size

    grads = zeros_like_model(model)
    grads.head.weight[:] = cache.embedding[idx].T @ dlogits
    grads.head.bias[:] = dlogits.sum(axis=0)

    dembedding = np.zeros_like(cache.embedding)
    dembedding[idx] = dlogits @ model.head.weight.T

    embed = model.embed_dim
    for g, (graph, encoder) in enumerate(zip(graphs, model.encoders)):
        dh2 = dembedding[:, g * embed : (g + 1) * embed]
        grads.encoders[g][1].weight[:] = cache.ph1[g].T @ dh2
        grads.encoders[g][1].bias[:] = dh2.sum(axis=0)
        dph1 = dh2 @ encoder[1].weight.T
        dh1 = graph.propagation.T @ dph1
        dz1 = dh1 * (cache.z1[g] > 0.0)
        grads.encoders[g][0].weight[:] = cache.px[g].T @ dz1
        grads.encoders[g][0].bias[:] = dz1.sum(axis=0)

    for array in _param_arrays(grads):
        if not np.all(np.isfinite(array)):
            raise FloatingPointError("non-finite gradient")
    return loss, grads


def init_adam_state(
    model: MultiGraphGcn,
    lr: float = 1e-3,
    beta1: float = 0.9,
    beta2: float = 0.999,
    epsilon: float = 1e-8,
) -> AdamState:
    return AdamState(
        mean=zeros_like_model(model),
        variance=zeros_like_model(model),
        step_count=0,
        lr=lr,
        beta1=beta1,
        beta2=beta2,
        epsilon=epsilon,
    )


def adam_step(
    model: MultiGraphGcn, grads: MultiGraphGcn, state: AdamState
) -> tuple[MultiGraphGcn, AdamState]:
    """One bias-corrected Adam update, in place on model and state."""
    state.step_count += 1
    t = state.step_count
    b1, b2 = state.beta1, state.beta2
    for param, grad, m, v in zip(
        _param_arrays(model),
        _param_arrays(grads),
        _param_arrays(state.mean),
        _param_arrays(state.variance),
    ):
        m *= b1
        m += (1.0 - b1) * grad
        v *= b2
        v += (1.0 - b2) * (grad * grad)
        m_hat = m / (1.0 - b1**t)
        v_hat = v / (1.0 - b2**t)
        param -= state.lr * m_hat / (np.sqrt(v_hat) + state.epsilon)
    return model, state


def _loss_at(model, graphs, labels, idx) -> float:
    return masked_cross_entropy(forward(model, graphs), labels, idx)


def make_gradcheck_instance(seed: int = 0):
    """Small seeded problem: 12 nodes, 2 graphs, dims 5 -> 8 -> 4.

    Returns ``(model, graphs, labels, mask)``.
    """
    rng = np.random.default_rng(seed)
    n, input_dim = 12, 5
    graphs = []
    for topic in range(2):
        raw = rng.random((n, input_dim))
        raw[rng.random((n, input_dim)) < 0.4] = 0.0
        norms = np.sqrt((raw * raw).sum(axis=1, keepdims=True))
        norms[norms == 0.0] = 1.0
        features = sp.csr_matrix(raw / norms)
        edges = build_topk_edges(features, 3)
        graphs.append(
            TopicGraph(topic, features, edges, normalize_adjacency(edges, n))
        )
    labels = rng.integers(0, 2, size=n).astype(np.int64)
    labels[0], labels[1] = 0, 1  # keep both classes present
    mask = np.zeros(n, dtype=bool)
    mask[rng.permutation(n)[:8]] = True
    model = init_model([input_dim, input_dim], seed + 1, hidden=8, embed=4)
    return model, graphs, labels, mask


def gradient_check(
    seed: int = 0, step: float = 1e-5, corrupt: bool = False
) -> tuple[float, int]:
    """Max relative error between analytic and central-difference grads.

    Perturbs every scalar parameter by ``±step``.  Relative error uses
    ``|a - n| / max(|a|, |n|, 1e-6)``.  ``corrupt=True`` injects a fault
    into one analytic gradient entry so callers can verify the check
    fails when it should.  Returns ``(max_rel_err, n_params)``.
    """
    model, graphs, labels, mask = make_gradcheck_instance(seed)
    idx = _mask_indices(mask, labels.shape[0])
    cache = forward(model, graphs)
    _, grads = loss_and_grad(cache, labels, idx, model, graphs)
    if corrupt:
        grads.encoders[0][0].weight[0, 0] += 1e-3

    max_rel = 0.0
    n_params = 0
    for param, grad in zip(_param_arrays(model), _param_arrays(grads)):
        flat_p = param.ravel()
        flat_g = grad.ravel()
        for i in range(flat_p.size):
            original = flat_p[i]
            flat_p[i] = original + step
            loss_plus = _loss_at(model, graphs, labels, idx)
            flat_p[i] = original - step
            loss_minus = _loss_at(model, graphs, labels, idx)
            flat_p[i] = original
            numeric = (loss_plus - loss_minus) / (2.0 * step)
            analytic = flat_g[i]
            denom = max(abs(analytic), abs(numeric), 1e-6)
            max_rel = max(max_rel, abs(analytic - numeric) / denom)
            n_params += 1
    return max_rel, n_params
