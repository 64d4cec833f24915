"""Tests for latency, receptive field and benchmark reporting."""

import pytest

from binaural_tse.exceptions import ArgumentError
from binaural_tse.network import ModelConfig, init_random
from binaural_tse.streaming import (
    algorithmic_latency,
    bench_chunk,
    macs_per_chunk,
    receptive_field,
)


@pytest.mark.parametrize(
    "chunk, reported",
    [(32, 1.4), (128, 3.6), (256, 6.5), (416, 10.1)],
)
def test_latency_table(chunk, reported):
    cfg = ModelConfig(stride=32, chunk_frames=chunk // 32)
    latency = algorithmic_latency(cfg)
    assert latency.reported_ms == reported
    assert latency.total_algorithmic_ms == pytest.approx((chunk + 32) / 44.1)
    assert latency.buffer_ms + latency.lookahead_ms == pytest.approx(latency.total_algorithmic_ms)


def test_default_latency_components():
    latency = algorithmic_latency(ModelConfig(), compute_ms=2.0)
    assert latency.chunk_samples == 416
    assert latency.lookahead_samples == 32
    assert latency.lookahead_ms == pytest.approx(0.7256, abs=1e-4)
    assert latency.end_to_end_ms == pytest.approx(latency.total_algorithmic_ms + 2.0)
    assert "reported_ms" in latency.model_dump()


def test_receptive_field_default():
    field = receptive_field(ModelConfig())
    assert field.context_frames == 2046
    assert field.frames == 2059
    assert field.ms == pytest.approx(2059 * 32 / 44.1)


def test_cost_grows_with_width():
    small, large = ModelConfig(dim=32, heads=4), ModelConfig(dim=512)
    assert macs_per_chunk(large) > 16 * macs_per_chunk(small)


def test_bench_with_fake_clock(tiny_weights, clock):
    report = bench_chunk(tiny_weights, n_runs=10, clock=clock, warmup=1)
    assert report.n_runs == 10
    # the fake clock advances 1 ms per reading
    assert report.mean_ms == pytest.approx(1.0)
    assert report.p95_ms == pytest.approx(1.0)
    assert report.chunk_ms == pytest.approx(32 / 8.0)
    assert report.realtime
    assert report.param_count == tiny_weights.param_count()
    assert report.macs_per_chunk == macs_per_chunk(tiny_weights.config)
    assert report.host_description


def test_bench_report_serializes(tiny_weights, clock):
    report = bench_chunk(tiny_weights, n_runs=2, clock=clock, warmup=0)
    dumped = report.model_dump()
    assert dumped["config"]["dim"] == 16
    assert set(dumped) >= {"mean_ms", "p50_ms", "p95_ms", "host_description"}


@pytest.mark.parametrize("n_runs, warmup", [(0, 5), (10, -1)])
def test_bench_rejects_bad_counts(tiny_weights, n_runs, warmup):
    with pytest.raises(ArgumentError):
        bench_chunk(tiny_weights, n_runs=n_runs, warmup=warmup)


def test_bench_system_clock_smoke():
    weights = init_random(ModelConfig(dim=16, heads=2, enc_layers=2), seed=0)
    report = bench_chunk(weights, n_runs=3, warmup=1)
    assert report.mean_ms >= 0.0
    assert report.p50_ms <= report.p95_ms + 1e-9


@pytest.mark.slow
def test_default_network_runs_a_chunk_within_10_ms():
    weights = init_random(ModelConfig(dim=128, stride=32, chunk_frames=13), seed=0)
    report = bench_chunk(weights, n_runs=100)
    assert report.n_runs == 100
    assert report.mean_ms < 10.0


@pytest.mark.slow
def test_wider_network_is_slower():
    narrow = bench_chunk(init_random(ModelConfig(dim=128), seed=0), n_runs=100)
    wide = bench_chunk(init_random(ModelConfig(dim=256), seed=0), n_runs=100)
    assert wide.mean_ms > narrow.mean_ms
