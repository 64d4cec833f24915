"""K-weighted loudness measurement (ungated).

Each channel goes through the two-stage K-weighting cascade (high shelf at
~1.68 kHz, then a ~38 Hz high-pass), its mean square is taken over the
whole signal, channel mean squares are summed with unit weights, and the
result is ``-0.691 + 10 * log10(sum)``.  No block gating is applied, so
loudness differences are exact gain ratios in dB.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import numpy.typing as npt
from scipy import signal as sps

from binaural_tse.audio.signal import Signal, as_channels
from binaural_tse.exceptions import ArgumentError, SilentSignalError

LOUDNESS_OFFSET_DB = -0.691
MIN_DURATION_S = 0.4

_Coeffs = tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]


@dataclass(frozen=True)
class LoudnessValue:
    """Loudness in LUFS, or ``None`` for an all-zero signal."""

    lufs: float | None

    @property
    def silent(self) -> bool:
        return self.lufs is None

    def require(self, operation: str) -> float:
        """The LUFS value, raising :class:`SilentSignalError` for silence."""
        if self.lufs is None:
            raise SilentSignalError(operation)
        return self.lufs


@lru_cache(maxsize=16)
def k_weighting_coefficients(sample_rate_hz: int) -> tuple[_Coeffs, _Coeffs]:
    """Biquad ``(b, a)`` pairs for the shelf and high-pass stages at any rate."""
    # Stage 1: high shelf
    f0, gain_db, q = 1681.974450955533, 3.99984385397, 0.7071752369554196
    k = math.tan(math.pi * f0 / sample_rate_hz)
    vh = 10 ** (gain_db / 20.0)
    vb = vh**0.4996667741545416
    a0 = 1.0 + k / q + k * k
    shelf_b = np.array([(vh + vb * k / q + k * k), 2.0 * (k * k - vh), (vh - vb * k / q + k * k)])
    shelf_a = np.array([a0, 2.0 * (k * k - 1.0), 1.0 - k / q + k * k])

    # Stage 2: high-pass
    f0, q = 38.13547087602444, 0.5003270373238773
    k = math.tan(math.pi * f0 / sample_rate_hz)
    hp_b = np.array([1.0, -2.0, 1.0])
    hp_a = np.array([1.0 + k / q + k * k, 2.0 * (k * k - 1.0), 1.0 - k / q + k * k])

    return (shelf_b / shelf_a[0], shelf_a / shelf_a[0]), (hp_b / hp_a[0], hp_a / hp_a[0])


def k_weight(samples: npt.ArrayLike, sample_rate_hz: int) -> npt.NDArray[np.float64]:
    """Apply the K-weighting cascade to one channel."""
    (b1, a1), (b2, a2) = k_weighting_coefficients(sample_rate_hz)
    x = np.asarray(samples, dtype=np.float64)
    out: npt.NDArray[np.float64] = sps.lfilter(b2, a2, sps.lfilter(b1, a1, x))
    return out


def loudness_lufs(signal: Signal) -> LoudnessValue:
    """Measure ungated K-weighted loudness.

    Raises:
        ArgumentError: If the signal is shorter than 400 ms.
    """
    if signal.duration_s < MIN_DURATION_S - 1e-9:
        raise ArgumentError(
            "loudness_lufs",
            f"need at least {MIN_DURATION_S * 1000:.0f} ms of audio, got "
            f"{signal.duration_s * 1000:.1f} ms",
        )
    if signal.is_silent():
        return LoudnessValue(None)

    power = 0.0
    for channel in as_channels(signal):
        weighted = k_weight(channel.samples, channel.sample_rate_hz)
        power += float(np.mean(weighted * weighted))
    if power <= 0.0:
        return LoudnessValue(None)
    return LoudnessValue(LOUDNESS_OFFSET_DB + 10.0 * math.log10(power))


def gain_to_lufs(signal: Signal, target_lufs: float) -> float:
    """Linear gain that brings ``signal`` to ``target_lufs``."""
    current = loudness_lufs(signal).require("scale_to_lufs")
    return float(10.0 ** ((target_lufs - current) / 20.0))


def scale_to_lufs(signal: Signal, target_lufs: float) -> Signal:
    """Apply a pure gain so the signal measures ``target_lufs``.

    Raises:
        SilentSignalError: If the signal is all zeros.
    """
    return signal.scaled(gain_to_lufs(signal, target_lufs))
