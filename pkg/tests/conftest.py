"""Shared test fixtures."""

from __future__ import annotations

from datetime import datetime, timezone

import numpy as np
import pytest

from binaural_tse.audio.signal import BinauralSignal, MonoSignal
from binaural_tse.network import ModelConfig, init_random
from binaural_tse.synthesis import InMemoryIRStore, InMemorySourceLoader, IRKey

RATE = 44_100


class FakeClock:
    """Deterministic clock: each ``perf_seconds`` call advances by ``step``."""

    def __init__(self, start: float = 1000.0, step: float = 0.001):
        self._now = start
        self._step = step

    def now(self) -> datetime:
        return datetime.fromtimestamp(self._now, tz=timezone.utc)

    def perf_seconds(self) -> float:
        self._now += self._step
        return self._now


def noise(n: int, seed: int = 0, amplitude: float = 0.1) -> np.ndarray:
    return (amplitude * np.random.default_rng(seed).standard_normal(n)).astype(np.float32)


def binaural_noise(n: int, rate: int = RATE, seed: int = 0, amplitude: float = 0.1):
    rng = np.random.default_rng(seed)
    return BinauralSignal.from_array(
        (amplitude * rng.standard_normal((2, n))).astype(np.float32), rate
    )


def delayed_impulse_ir(delay: int, length: int = 64, rate: int = RATE) -> BinauralSignal:
    """Left ear: unit impulse at 0.  Right ear: unit impulse at ``delay``."""
    ir = np.zeros((2, length), np.float32)
    ir[0, 0] = 1.0
    ir[1, delay] = 1.0
    return BinauralSignal.from_array(ir, rate)


@pytest.fixture
def clock():
    return FakeClock()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def tiny_config():
    """Small network at 8 kHz: D=16, L=8, K=4, three encoder layers."""
    return ModelConfig(
        dim=16, stride=8, chunk_frames=4, enc_layers=3, heads=2, sample_rate_hz=8000
    )


@pytest.fixture
def tiny_weights(tiny_config):
    return init_random(tiny_config, seed=0)


@pytest.fixture
def ir_store():
    """One listener in two rooms, three directions each, pure-delay responses."""
    store = InMemoryIRStore()
    for room in ("r1", "r2"):
        for azimuth, delay in ((0.0, 0), (30.0, 5), (60.0, 10)):
            store.add(IRKey("s01", room, azimuth), delayed_impulse_ir(delay))
    return store


@pytest.fixture
def sources():
    return InMemorySourceLoader(
        {
            "bg.wav": binaural_noise(RATE, seed=10),
            "dog.wav": MonoSignal(noise(2 * RATE, seed=11), RATE),
            "siren.wav": MonoSignal(noise(2 * RATE, seed=12), RATE),
            "ocean.wav": MonoSignal(noise(RATE, seed=13), 22_050),
            "fan.wav": binaural_noise(2 * RATE, seed=14),
            "silence.wav": MonoSignal(np.zeros(RATE, np.float32), RATE),
        }
    )
