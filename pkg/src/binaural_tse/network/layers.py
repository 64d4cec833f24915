"""Forward-pass stages of the dual-channel mask-estimation network.

One chunk flows through::

    2 x (K*L + L) samples --project_in--> x (D x K)
    x, encoder context   --encode_chunk--> e (D x K), new context
    e, label embedding   --decode_mask---> m (D x K)
    x, m                 --apply_mask----> y (D x K)
    y                    --project_out---> 2 x K*L samples

All arithmetic is float32.  Every stage is a pure function; states are
returned rather than mutated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from numpy.lib.stride_tricks import sliding_window_view

from binaural_tse.exceptions import ShapeError
from binaural_tse.network.config import ModelConfig
from binaural_tse.network.weights import Tensor, WeightBundle
from binaural_tse.ontology import QueryVector

LAYER_NORM_EPS = 1e-5


def _frozen(values: npt.ArrayLike) -> Tensor:
    arr = np.array(values, dtype=np.float32)
    arr.setflags(write=False)
    return arr


# ── value types ──────────────────────────────────────────────


@dataclass(frozen=True)
class LatentBlock:
    """``D x K`` latent frames (channels by time)."""

    values: Tensor

    def __post_init__(self) -> None:
        arr = _frozen(self.values)
        if arr.ndim != 2:
            raise ShapeError("LatentBlock", "D x K matrix", arr.shape)
        object.__setattr__(self, "values", arr)

    @staticmethod
    def zeros(dim: int, frames: int) -> LatentBlock:
        return LatentBlock(np.zeros((dim, frames), np.float32))

    @property
    def shape(self) -> tuple[int, int]:
        d, k = self.values.shape
        return int(d), int(k)


@dataclass(frozen=True)
class EncoderState:
    """Per-layer trailing input frames; layer ``j`` keeps ``2 * 2**j`` frames."""

    contexts: tuple[Tensor, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "contexts", tuple(_frozen(c) for c in self.contexts))

    @staticmethod
    def zeros(config: ModelConfig) -> EncoderState:
        return EncoderState(
            tuple(
                np.zeros((config.dim, config.context_frames(j)), np.float32)
                for j in range(config.enc_layers)
            )
        )

    @property
    def total_frames(self) -> int:
        return sum(int(c.shape[1]) for c in self.contexts)

    def check(self, config: ModelConfig) -> None:
        expected = [(config.dim, config.context_frames(j)) for j in range(config.enc_layers)]
        got = [tuple(c.shape) for c in self.contexts]
        if got != expected:
            raise ShapeError("EncoderState", expected, got)


@dataclass(frozen=True)
class DecoderState:
    """The previous chunk's unconditioned encoding ``e_{k-1}``."""

    prev_encoded: LatentBlock

    @staticmethod
    def zeros(config: ModelConfig) -> DecoderState:
        return DecoderState(LatentBlock.zeros(config.dim, config.chunk_frames))


# ── stages ───────────────────────────────────────────────────


def project_in(samples: npt.ArrayLike, weights: WeightBundle) -> LatentBlock:
    """Strided input convolution (kernel ``2L``, stride ``L``) followed by ReLU.

    Frame ``i`` reads samples ``[i*L, i*L + 2L)`` of both ears, so the last
    frame reaches ``L`` samples past the chunk (the lookahead).
    """
    cfg = weights.config
    s = np.asarray(samples, dtype=np.float32)
    if s.shape != (2, cfg.input_samples):
        raise ShapeError("project_in", (2, cfg.input_samples), s.shape)
    frames = sliding_window_view(s, cfg.in_kernel, axis=1)[:, :: cfg.stride]  # [2, K, 2L]
    w = weights["in_proj.weight"]  # [D, 2, 2L]
    x = np.einsum("dck,ctk->dt", w, frames, dtype=np.float32)
    x += weights["in_proj.bias"][:, None]
    return LatentBlock(np.maximum(x, 0.0))


def dilated_conv(
    history: Tensor, kernel: Tensor, bias: Tensor, dilation: int, n_out: int
) -> Tensor:
    """Causal kernel-3 convolution producing the last ``n_out`` frames of ``history``.

    Output frame ``t`` combines history frames ``t``, ``t + d`` and ``t + 2d``
    (tap 0 is the oldest), where ``history`` holds ``2d`` context frames
    before the first output position.
    """
    d = dilation
    out = kernel[:, :, 0] @ history[:, 0:n_out]
    out += kernel[:, :, 1] @ history[:, d : d + n_out]
    out += kernel[:, :, 2] @ history[:, 2 * d : 2 * d + n_out]
    out += bias[:, None]
    return out


def encode_chunk(
    x: LatentBlock, state: EncoderState, weights: WeightBundle
) -> tuple[LatentBlock, EncoderState]:
    """Run the dilated residual stack on one chunk, reusing cached context.

    Layer ``j`` computes ``out = in + ReLU(conv(ctx_j ++ in))`` with dilation
    ``2**j`` and keeps the trailing ``2 * 2**j`` input frames as its next
    context.
    """
    cfg = weights.config
    state.check(cfg)
    if x.shape != (cfg.dim, cfg.chunk_frames):
        raise ShapeError("encode_chunk", (cfg.dim, cfg.chunk_frames), x.shape)

    h = x.values
    contexts: list[Tensor] = []
    for j, ctx in enumerate(state.contexts):
        history = np.concatenate([ctx, h], axis=1)
        conv = dilated_conv(
            history,
            weights[f"encoder.{j}.weight"],
            weights[f"encoder.{j}.bias"],
            cfg.dilation(j),
            cfg.chunk_frames,
        )
        contexts.append(history[:, -ctx.shape[1] :])
        h = h + np.maximum(conv, 0.0)
    return LatentBlock(h), EncoderState(tuple(contexts))


def embed_query(q: QueryVector, weights: WeightBundle) -> Tensor:
    """Label embedding ``l = W_q @ q`` (no bias)."""
    w = weights["query_embed.weight"]
    if len(q) != w.shape[1]:
        raise ShapeError("embed_query", w.shape[1], len(q))
    return _frozen(w @ q.as_array())


def _linear(x: Tensor, weights: WeightBundle, prefix: str) -> Tensor:
    out: Tensor = x @ weights[f"{prefix}.weight"].T + weights[f"{prefix}.bias"]
    return out


def _layer_norm(x: Tensor, weights: WeightBundle, prefix: str) -> Tensor:
    mean = x.mean(axis=-1, keepdims=True)
    var = ((x - mean) ** 2).mean(axis=-1, keepdims=True)
    normed = (x - mean) / np.sqrt(var + np.float32(LAYER_NORM_EPS))
    out: Tensor = normed * weights[f"{prefix}.gain"] + weights[f"{prefix}.bias"]
    return out


def _softmax(scores: Tensor) -> Tensor:
    shifted = scores - scores.max(axis=-1, keepdims=True)
    ex = np.exp(shifted)
    out: Tensor = ex / ex.sum(axis=-1, keepdims=True)
    return out


def multi_head_attention(
    query: Tensor, memory: Tensor, weights: WeightBundle, prefix: str
) -> Tensor:
    """Unmasked scaled dot-product attention over time-major ``[T, D]`` inputs."""
    cfg = weights.config
    h, dh = cfg.heads, cfg.head_dim
    t_q, t_m = query.shape[0], memory.shape[0]

    q = _linear(query, weights, f"{prefix}.q").reshape(t_q, h, dh).transpose(1, 0, 2)
    k = _linear(memory, weights, f"{prefix}.k").reshape(t_m, h, dh).transpose(1, 0, 2)
    v = _linear(memory, weights, f"{prefix}.v").reshape(t_m, h, dh).transpose(1, 0, 2)

    scores = (q @ k.transpose(0, 2, 1)) * np.float32(1.0 / np.sqrt(dh))
    context = (_softmax(scores) @ v).transpose(1, 0, 2).reshape(t_q, h * dh)
    return _linear(context, weights, f"{prefix}.o")


def decode_mask(
    e: LatentBlock, label: Tensor, state: DecoderState, weights: WeightBundle
) -> tuple[LatentBlock, DecoderState]:
    """Label-conditioned transformer decoder layer over a two-chunk window.

    The target stream is ``[l*e_{k-1}, l*e_k]`` and the memory stream is
    ``[e_{k-1}, e_k]``.  Self-attention, cross-attention and the feed-forward
    block each add a residual and are followed by layer normalization.  The
    mask is the last ``K`` frames, with no output nonlinearity.
    """
    cfg = weights.config
    block = (cfg.dim, cfg.chunk_frames)
    if e.shape != block or state.prev_encoded.shape != block:
        raise ShapeError("decode_mask", block, (e.shape, state.prev_encoded.shape))
    lab = np.asarray(label, dtype=np.float32)
    if lab.shape != (cfg.dim,):
        raise ShapeError("decode_mask", (cfg.dim,), lab.shape)

    memory = np.concatenate([state.prev_encoded.values, e.values], axis=1).T  # [2K, D]
    target = memory * lab[None, :]

    x = _layer_norm(
        target + multi_head_attention(target, target, weights, "decoder.self_attn"),
        weights,
        "decoder.norm1",
    )
    x = _layer_norm(
        x + multi_head_attention(x, memory, weights, "decoder.cross_attn"),
        weights,
        "decoder.norm2",
    )
    ff = _linear(np.maximum(_linear(x, weights, "decoder.ff1"), 0.0), weights, "decoder.ff2")
    x = _layer_norm(x + ff, weights, "decoder.norm3")

    return LatentBlock(x[-cfg.chunk_frames :].T), DecoderState(e)


def apply_mask(x: LatentBlock, m: LatentBlock) -> LatentBlock:
    if x.shape != m.shape:
        raise ShapeError("apply_mask", x.shape, m.shape)
    return LatentBlock(x.values * m.values)


def project_out(y: LatentBlock, weights: WeightBundle) -> Tensor:
    """Transposed convolution with kernel ``L`` and stride ``L`` (no overlap).

    Frame ``i`` writes samples ``[i*L, (i+1)*L)`` of both ears.
    """
    cfg = weights.config
    if y.shape != (cfg.dim, cfg.chunk_frames):
        raise ShapeError("project_out", (cfg.dim, cfg.chunk_frames), y.shape)
    w = weights["out_proj.weight"]  # [2, D, L]
    out = np.einsum("cdl,dk->ckl", w, y.values, dtype=np.float32)
    out = out.reshape(2, cfg.chunk_samples) + weights["out_proj.bias"][:, None]
    return out.astype(np.float32, copy=False)
