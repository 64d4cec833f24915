"""SNR family and the training losses built on it.

Ratios are computed in float64 and capped at ``SATURATION_DB`` in both
directions, so a perfect (or hopeless) estimate still reports a finite value.
"""

from __future__ import annotations

import math
from collections.abc import Callable

import numpy as np
import numpy.typing as npt

from binaural_tse.audio.signal import BinauralSignal, MonoSignal
from binaural_tse.exceptions import ArgumentError, MetricError, ShapeError

EPS = 1e-8
SATURATION_DB = 10.0 * math.log10(1.0 / EPS)

Samples = npt.NDArray[np.float64]


def _pair(metric: str, est: MonoSignal, ref: MonoSignal) -> tuple[Samples, Samples]:
    if len(est) != len(ref):
        raise ShapeError(metric, len(ref), len(est))
    if est.sample_rate_hz != ref.sample_rate_hz:
        raise ArgumentError(metric, "estimate and reference rates differ")
    return est.samples.astype(np.float64), ref.samples.astype(np.float64)


def _capped_ratio_db(signal_energy: float, noise_energy: float) -> float:
    num = max(signal_energy, EPS * noise_energy)
    den = max(noise_energy, EPS * signal_energy)
    return 10.0 * math.log10(num / den)


def snr(est: MonoSignal, ref: MonoSignal) -> float:
    """``10 log10(|ref|^2 / |ref - est|^2)`` in dB.

    The result is clamped to ``[-SATURATION_DB, SATURATION_DB]``: a perfect
    estimate reports +80 dB and an error 1e8 times the reference energy or
    more reports -80 dB.

    Raises:
        MetricError: If ``ref`` is all zeros.
    """
    e, r = _pair("snr", est, ref)
    ref_energy = float(np.dot(r, r))
    if ref_energy == 0.0:
        raise MetricError("snr", "reference is all zeros")
    noise = r - e
    return _capped_ratio_db(ref_energy, float(np.dot(noise, noise)))


def si_snr(est: MonoSignal, ref: MonoSignal) -> float:
    """Scale-invariant SNR: ``est`` is projected onto ``ref`` before the ratio.

    Clamped to ``+-SATURATION_DB`` like :func:`snr`; an estimate orthogonal to
    ``ref`` reports -80 dB.

    Raises:
        MetricError: If either input is all zeros.
    """
    e, r = _pair("si_snr", est, ref)
    ref_energy = float(np.dot(r, r))
    if ref_energy == 0.0:
        raise MetricError("si_snr", "reference is all zeros")
    if not np.any(e):
        raise MetricError("si_snr", "estimate is all zeros")
    target = (float(np.dot(e, r)) / ref_energy) * r
    residual = e - target
    return _capped_ratio_db(float(np.dot(target, target)), float(np.dot(residual, residual)))


def _check_binaural(metric: str, *signals: BinauralSignal) -> None:
    first = signals[0]
    for other in signals[1:]:
        if len(other) != len(first):
            raise ShapeError(metric, len(first), len(other))


MonoMetric = Callable[[MonoSignal, MonoSignal], float]


def channel_mean(metric: str, fn: MonoMetric, est: BinauralSignal, ref: BinauralSignal) -> float:
    """Mean of ``fn`` over the left and right ears."""
    _check_binaural(metric, est, ref)
    return 0.5 * (fn(est.left, ref.left) + fn(est.right, ref.right))


def snr_loss(est: BinauralSignal, ref: BinauralSignal) -> float:
    """Negative mean per-ear SNR (scale-sensitive)."""
    return -channel_mean("snr_loss", snr, est, ref)


def mixed_loss(est: BinauralSignal, ref: BinauralSignal, snr_weight: float = 0.9) -> float:
    """Negative ``snr_weight * SNR + (1 - snr_weight) * SI-SNR``, both ear-averaged."""
    if not 0.0 <= snr_weight <= 1.0:
        raise ArgumentError("mixed_loss", f"snr_weight must be in [0, 1], got {snr_weight}")
    mean_snr = channel_mean("mixed_loss", snr, est, ref)
    mean_si = channel_mean("mixed_loss", si_snr, est, ref)
    return -(snr_weight * mean_snr + (1.0 - snr_weight) * mean_si)


def si_snri(est: BinauralSignal, mixture: BinauralSignal, ref: BinauralSignal) -> float:
    """Ear-averaged SI-SNR of ``est`` minus that of the unprocessed ``mixture``."""
    _check_binaural("si_snri", est, mixture, ref)
    improved = channel_mean("si_snri", si_snr, est, ref)
    return improved - channel_mean("si_snri", si_snr, mixture, ref)
