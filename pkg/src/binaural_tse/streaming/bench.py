"""Per-chunk runtime benchmark."""

from __future__ import annotations

import logging
import platform
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from binaural_tse._internal.clock import Clock, SystemClock
from binaural_tse.exceptions import ArgumentError
from binaural_tse.network.layers import DecoderState, EncoderState, LatentBlock, embed_query
from binaural_tse.network.model import forward_chunk
from binaural_tse.network.weights import WeightBundle
from binaural_tse.ontology import QueryVector
from binaural_tse.streaming.latency import algorithmic_latency, macs_per_chunk

logger = logging.getLogger(__name__)

DEFAULT_RUNS = 100
DEFAULT_WARMUP = 5
REFERENCE_PHONE_MS = 6.56


class BenchReport(BaseModel):
    """Timing statistics of the five-stage chunk pipeline.

    Attributes:
        config:           The model config, as a plain dict.
        n_runs:           Timed iterations.
        mean_ms:          Mean wall time per chunk.
        p50_ms:           Median wall time per chunk.
        p95_ms:           95th-percentile wall time per chunk.
        host_description: Machine the figures were taken on.
        chunk_ms:         Audio duration of one output chunk (the real-time bound).
        macs_per_chunk:   Multiply-accumulates per chunk.
        param_count:      Scalar parameters in the bundle.
    """

    model_config = ConfigDict(frozen=True)

    config: dict[str, Any]
    n_runs: int = Field(ge=1)
    mean_ms: float = Field(ge=0.0)
    p50_ms: float = Field(ge=0.0)
    p95_ms: float = Field(ge=0.0)
    host_description: str
    chunk_ms: float = Field(ge=0.0)
    macs_per_chunk: int = Field(ge=0)
    param_count: int = Field(ge=0)

    @property
    def realtime(self) -> bool:
        return self.mean_ms < self.chunk_ms


def host_description() -> str:
    cpu = platform.processor() or platform.machine()
    return f"{cpu} / {platform.system()} {platform.release()} / numpy {np.__version__}"


def bench_chunk(
    weights: WeightBundle,
    n_runs: int = DEFAULT_RUNS,
    *,
    seed: int = 0,
    warmup: int = DEFAULT_WARMUP,
    clock: Clock | None = None,
) -> BenchReport:
    """Time ``n_runs`` chunks on random input with state carried between runs.

    File I/O and buffering are excluded; only the pipeline stages are timed.

    Raises:
        ArgumentError: If ``n_runs < 1`` or ``warmup < 0``.
    """
    if n_runs < 1:
        raise ArgumentError("bench_chunk", f"n_runs must be >= 1, got {n_runs}")
    if warmup < 0:
        raise ArgumentError("bench_chunk", f"warmup must be >= 0, got {warmup}")
    clock = clock or SystemClock()
    cfg = weights.config
    rng = np.random.default_rng(seed)

    enc = EncoderState(
        tuple(
            rng.standard_normal((cfg.dim, cfg.context_frames(j))).astype(np.float32)
            for j in range(cfg.enc_layers)
        )
    )
    dec = DecoderState(
        LatentBlock(rng.standard_normal((cfg.dim, cfg.chunk_frames)).astype(np.float32))
    )
    label = embed_query(QueryVector.one_hot(0, cfg.num_classes), weights)
    inputs = (
        0.1 * rng.standard_normal((warmup + n_runs, 2, cfg.input_samples))
    ).astype(np.float32)

    for i in range(warmup):
        _, enc, dec = forward_chunk(inputs[i], label, enc, dec, weights)

    timings = np.empty(n_runs, dtype=np.float64)
    for i in range(n_runs):
        start = clock.perf_seconds()
        _, enc, dec = forward_chunk(inputs[warmup + i], label, enc, dec, weights)
        timings[i] = (clock.perf_seconds() - start) * 1000.0

    report = BenchReport(
        config=cfg.model_dump(),
        n_runs=n_runs,
        mean_ms=float(timings.mean()),
        p50_ms=float(np.percentile(timings, 50)),
        p95_ms=float(np.percentile(timings, 95)),
        host_description=host_description(),
        chunk_ms=algorithmic_latency(cfg).buffer_ms,
        macs_per_chunk=macs_per_chunk(cfg),
        param_count=weights.param_count(),
    )
    logger.info(
        "bench: mean %.3f ms, p50 %.3f ms, p95 %.3f ms over %d runs (chunk %.2f ms; "
        "reference phone runtime %.2f ms)",
        report.mean_ms,
        report.p50_ms,
        report.p95_ms,
        n_runs,
        report.chunk_ms,
        REFERENCE_PHONE_MS,
    )
    return report
