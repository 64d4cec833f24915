"""Tests for ModelConfig."""

import pytest

from binaural_tse.exceptions import ConfigError
from binaural_tse.network import ModelConfig


def test_defaults():
    cfg = ModelConfig()
    assert (cfg.dim, cfg.stride, cfg.chunk_frames, cfg.num_classes) == (128, 32, 13, 20)
    assert cfg.enc_layers == 10
    assert cfg.heads == 8
    assert cfg.ff_dim == 512
    assert cfg.sample_rate_hz == 44_100


def test_derived_sizes():
    cfg = ModelConfig()
    assert cfg.chunk_samples == 416
    assert cfg.lookahead_samples == 32
    assert cfg.input_samples == 448
    assert cfg.in_kernel == 64
    assert cfg.head_dim == 16


def test_context_totals_2046_frames():
    cfg = ModelConfig()
    assert [cfg.context_frames(j) for j in range(3)] == [2, 4, 8]
    assert cfg.total_context_frames == 2046


def test_ff_dim_follows_dim_when_omitted():
    assert ModelConfig(dim=32, heads=4).ff_dim == 128
    assert ModelConfig(dim=32, heads=4, ff_dim=48).ff_dim == 48


def test_dim_must_divide_by_heads():
    with pytest.raises(ConfigError, match="divisible"):
        ModelConfig.create(dim=30, heads=8)


def test_kernel_must_be_three():
    with pytest.raises(ConfigError, match="enc_kernel"):
        ModelConfig.create(enc_kernel=5)


@pytest.mark.parametrize("field", ["stride", "chunk_frames", "enc_layers", "dim"])
def test_sizes_must_be_positive(field):
    with pytest.raises(ConfigError):
        ModelConfig.create(**{field: 0})


def test_unknown_field_rejected():
    with pytest.raises(ConfigError):
        ModelConfig.create(depth=4)


def test_frozen():
    cfg = ModelConfig()
    with pytest.raises(Exception):
        cfg.dim = 64  # type: ignore[misc]
