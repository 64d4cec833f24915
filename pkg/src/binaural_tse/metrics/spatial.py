"""Interaural cue metrics: ITD, ILD and their estimate-vs-reference deltas."""

from __future__ import annotations

import logging
import math
from typing import NamedTuple

import numpy as np
import numpy.typing as npt

from binaural_tse.audio.signal import BinauralSignal
from binaural_tse.exceptions import ArgumentError, MetricError, ShapeError

logger = logging.getLogger(__name__)

DEFAULT_MAX_LAG_MS = 1.0
DEFAULT_CHUNK_MS = 250.0
DEFAULT_SILENCE_DB = -60.0


class SpatialDelta(NamedTuple):
    itd_us: float
    ild_db: float


def _ears(metric: str, signal: BinauralSignal) -> tuple[npt.NDArray[np.float64], ...]:
    left = signal.left.samples.astype(np.float64)
    right = signal.right.samples.astype(np.float64)
    if not np.any(left) or not np.any(right):
        raise MetricError(metric, "a channel is silent")
    return left, right


def _search_order(max_lag: int) -> npt.NDArray[np.int64]:
    """Lags ``0, 1, -1, 2, -2, ...`` so the first maximum has the smallest ``|lag|``."""
    order = [0]
    for lag in range(1, max_lag + 1):
        order += [lag, -lag]
    return np.asarray(order, dtype=np.int64)


def _xcorr_at(left: npt.NDArray[np.float64], right: npt.NDArray[np.float64], lag: int) -> float:
    """``sum_n left[n] * right[n + lag]`` over the overlap."""
    if lag >= 0:
        return float(np.dot(left[: len(left) - lag], right[lag:]))
    return float(np.dot(left[-lag:], right[: len(right) + lag]))


def itd(signal: BinauralSignal, max_lag_ms: float = DEFAULT_MAX_LAG_MS) -> float:
    """Interaural time difference in microseconds.

    The lag maximizing the raw cross-correlation of left against right,
    searched over ``+-max_lag_ms``.  Positive means the left ear leads.

    Raises:
        MetricError: If either channel is silent.
    """
    if max_lag_ms < 0:
        raise ArgumentError("itd", f"max_lag_ms must be >= 0, got {max_lag_ms}")
    left, right = _ears("itd", signal)
    fs = signal.sample_rate_hz
    max_lag = min(int(math.floor(max_lag_ms * fs / 1000.0)), len(left) - 1)
    lags = _search_order(max_lag)
    scores = np.array([_xcorr_at(left, right, int(lag)) for lag in lags])
    best = int(lags[int(np.argmax(scores))])
    return best / fs * 1e6


def ild(signal: BinauralSignal) -> float:
    """Interaural level difference ``10 log10(|left|^2 / |right|^2)`` in dB.

    Raises:
        MetricError: If either channel is silent.
    """
    left, right = _ears("ild", signal)
    return 10.0 * math.log10(float(np.dot(left, left)) / float(np.dot(right, right)))


def delta_spatial(est: BinauralSignal, ref: BinauralSignal) -> SpatialDelta:
    """Absolute ITD and ILD errors of ``est`` against ``ref``."""
    if len(est) != len(ref):
        raise ShapeError("delta_spatial", len(ref), len(est))
    return SpatialDelta(abs(itd(est) - itd(ref)), abs(ild(est) - ild(ref)))


def _level_dbfs(samples: npt.NDArray[np.float32]) -> float:
    power = float(np.mean(samples.astype(np.float64) ** 2))
    return 10.0 * math.log10(power) if power > 0 else -math.inf


def delta_spatial_chunked(
    est: BinauralSignal,
    ref: BinauralSignal,
    chunk_ms: float = DEFAULT_CHUNK_MS,
    silence_db: float = DEFAULT_SILENCE_DB,
) -> SpatialDelta:
    """Mean :func:`delta_spatial` over consecutive whole chunks.

    Chunks where both reference channels are below ``silence_db`` dBFS are
    discarded; a trailing partial chunk is ignored.  A remaining chunk in
    which any channel of ``est`` or ``ref`` is all zeros has no ITD or ILD
    and is skipped as well.

    Raises:
        ArgumentError: If the signals are shorter than one chunk.
        MetricError: If every chunk is discarded.
    """
    if len(est) != len(ref):
        raise ShapeError("delta_spatial_chunked", len(ref), len(est))
    size = round(chunk_ms * ref.sample_rate_hz / 1000.0)
    if size < 1 or len(ref) < size:
        raise ArgumentError(
            "delta_spatial_chunked", f"signal of {len(ref)} samples is shorter than one chunk"
        )

    est_data, ref_data = est.data, ref.data
    deltas: list[SpatialDelta] = []
    undefined = 0
    n_chunks = len(ref) // size
    for k in range(n_chunks):
        span = slice(k * size, (k + 1) * size)
        r = ref_data[:, span]
        if max(_level_dbfs(r[0]), _level_dbfs(r[1])) < silence_db:
            continue
        e = est_data[:, span]
        if not (np.all(np.any(r, axis=1)) and np.all(np.any(e, axis=1))):
            undefined += 1
            continue
        deltas.append(
            delta_spatial(
                BinauralSignal.from_array(e, est.sample_rate_hz),
                BinauralSignal.from_array(r, ref.sample_rate_hz),
            )
        )
    if not deltas:
        detail = "every chunk of the reference is silent"
        if undefined:
            detail = f"no chunk has defined cues ({undefined} with a silent channel)"
        raise MetricError("delta_spatial_chunked", detail)
    logger.debug(
        "chunked spatial deltas: %d of %d chunks kept, %d with a silent channel",
        len(deltas),
        n_chunks,
        undefined,
    )
    return SpatialDelta(
        float(np.mean([d.itd_us for d in deltas])),
        float(np.mean([d.ild_db for d in deltas])),
    )
