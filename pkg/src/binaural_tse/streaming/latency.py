"""Latency and cost arithmetic for a model configuration."""

from __future__ import annotations

import math

from pydantic import BaseModel, ConfigDict, Field, computed_field

from binaural_tse.network.config import ModelConfig


def _ms(samples: int, rate_hz: int) -> float:
    return samples / rate_hz * 1000.0


class LatencyBreakdown(BaseModel):
    """Components of the end-to-end delay of one stream.

    Attributes:
        chunk_samples:        ``K * L``.
        lookahead_samples:    ``L``.
        sample_rate_hz:       Rate the figures are computed at.
        buffer_ms:            Time to fill one chunk.
        lookahead_ms:         Time to collect the lookahead.
        compute_ms:           Measured per-chunk compute time (0 when not measured).
        total_algorithmic_ms: ``buffer_ms + lookahead_ms``.
    """

    model_config = ConfigDict(frozen=True)

    chunk_samples: int = Field(ge=1)
    lookahead_samples: int = Field(ge=0)
    sample_rate_hz: int = Field(gt=0)
    buffer_ms: float = Field(ge=0.0)
    lookahead_ms: float = Field(ge=0.0)
    compute_ms: float = Field(default=0.0, ge=0.0)
    total_algorithmic_ms: float = Field(ge=0.0)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def reported_ms(self) -> float:
        """Total algorithmic latency truncated to one decimal (10.16 -> 10.1)."""
        return math.floor(self.total_algorithmic_ms * 10 + 1e-9) / 10

    @computed_field  # type: ignore[prop-decorator]
    @property
    def end_to_end_ms(self) -> float:
        return self.total_algorithmic_ms + self.compute_ms


def algorithmic_latency(config: ModelConfig, compute_ms: float = 0.0) -> LatencyBreakdown:
    """Chunk plus lookahead delay, ``(K*L + L) / fs``."""
    fs = config.sample_rate_hz
    buffer_ms = _ms(config.chunk_samples, fs)
    lookahead_ms = _ms(config.lookahead_samples, fs)
    return LatencyBreakdown(
        chunk_samples=config.chunk_samples,
        lookahead_samples=config.lookahead_samples,
        sample_rate_hz=fs,
        buffer_ms=buffer_ms,
        lookahead_ms=lookahead_ms,
        compute_ms=compute_ms,
        total_algorithmic_ms=_ms(config.input_samples, fs),
    )


class ReceptiveField(BaseModel):
    """How far back the encoder output of one chunk can see."""

    model_config = ConfigDict(frozen=True)

    context_frames: int
    frames: int
    ms: float


def receptive_field(config: ModelConfig) -> ReceptiveField:
    """Encoder receptive field: cached context plus the chunk's own frames."""
    frames = config.total_context_frames + config.chunk_frames
    return ReceptiveField(
        context_frames=config.total_context_frames,
        frames=frames,
        ms=_ms(frames * config.stride, config.sample_rate_hz),
    )


def macs_per_chunk(config: ModelConfig) -> int:
    """Multiply-accumulates of one chunk through the five pipeline stages."""
    d, k, l_, ff = config.dim, config.chunk_frames, config.stride, config.ff_dim
    window = 2 * k

    project = d * 2 * config.in_kernel * k
    encoder = config.enc_layers * d * d * config.enc_kernel * k
    projections = 2 * 4 * window * d * d  # q, k, v, o for both attention blocks
    scores = 2 * 2 * window * window * d  # q @ k.T and weights @ v
    feed_forward = 2 * window * d * ff
    mask = d * k
    reconstruct = 2 * d * l_ * k
    return project + encoder + projections + scores + feed_forward + mask + reconstruct
