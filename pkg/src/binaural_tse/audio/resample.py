"""Band-limited sample-rate conversion.

Polyphase windowed-sinc interpolation (``scipy.signal.resample_poly``) with
a Kaiser window (beta 8.6) and 64 taps per polyphase branch.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

import numpy as np
import numpy.typing as npt
from scipy import signal as sps

from binaural_tse.audio.signal import BinauralSignal, MonoSignal, Signal
from binaural_tse.exceptions import ArgumentError

KAISER_BETA = 8.6
TAPS_PER_PHASE = 64


@lru_cache(maxsize=32)
def _lowpass(up: int, down: int) -> npt.NDArray[np.float64]:
    max_rate = max(up, down)
    n_taps = TAPS_PER_PHASE * max_rate + 1
    taps: npt.NDArray[np.float64] = sps.firwin(
        n_taps, 1.0 / max_rate, window=("kaiser", KAISER_BETA)
    )
    taps.setflags(write=False)
    return taps


def resample(signal: MonoSignal, target_hz: int) -> MonoSignal:
    """Convert ``signal`` to ``target_hz``.

    The output has ``round(len * target / source)`` samples.

    Raises:
        ArgumentError: If ``target_hz`` is not positive.
    """
    if target_hz <= 0:
        raise ArgumentError("resample", f"target rate must be positive, got {target_hz}")
    source_hz = signal.sample_rate_hz
    if target_hz == source_hz:
        return signal

    g = gcd(source_hz, target_hz)
    up, down = target_hz // g, source_hz // g
    n_out = int(np.floor(len(signal) * up / down + 0.5))
    if len(signal) == 0:
        return MonoSignal(np.zeros(0, dtype=np.float32), target_hz)

    out = sps.resample_poly(signal.samples.astype(np.float64), up, down, window=_lowpass(up, down))
    if out.shape[0] < n_out:
        out = np.pad(out, (0, n_out - out.shape[0]))
    return MonoSignal(out[:n_out].astype(np.float32), target_hz)


def resample_any(signal: Signal, target_hz: int) -> Signal:
    """Resample each channel of a mono or binaural signal."""
    if isinstance(signal, BinauralSignal):
        return BinauralSignal(resample(signal.left, target_hz), resample(signal.right, target_hz))
    return resample(signal, target_hz)
