"""Causal chunk scheduling, the offline reference, latency and benchmarking."""

from binaural_tse.streaming.bench import BenchReport, bench_chunk
from binaural_tse.streaming.latency import (
    LatencyBreakdown,
    ReceptiveField,
    algorithmic_latency,
    macs_per_chunk,
    receptive_field,
)
from binaural_tse.streaming.session import StreamSession, process_offline

__all__ = [
    "BenchReport",
    "LatencyBreakdown",
    "ReceptiveField",
    "StreamSession",
    "algorithmic_latency",
    "bench_chunk",
    "macs_per_chunk",
    "process_offline",
    "receptive_field",
]
