"""MetricsReport: every metric for one (estimate, reference, mixture) triple."""

from __future__ import annotations

import logging

from pydantic import BaseModel, ConfigDict

from binaural_tse.audio.signal import BinauralSignal
from binaural_tse.exceptions import ArgumentError, MetricError
from binaural_tse.metrics.snr import SATURATION_DB, channel_mean, si_snr, si_snri, snr, snr_loss
from binaural_tse.metrics.spatial import DEFAULT_CHUNK_MS, delta_spatial, delta_spatial_chunked

logger = logging.getLogger(__name__)


class MetricsReport(BaseModel):
    """Ear-averaged quality figures plus spatial-cue errors.

    ``saturated`` is set when an SNR-type value hit the cap, i.e. the
    estimate reconstructs the reference to within float precision.  The
    chunked deltas are ``None`` when the signals are no longer than one
    chunk or every chunk was discarded.
    """

    model_config = ConfigDict(frozen=True)

    si_snr_db: float
    si_snri_db: float
    snr_db: float
    delta_itd_us: float
    delta_ild_db: float
    loss_value: float
    saturated: bool = False
    delta_itd_chunked_us: float | None = None
    delta_ild_chunked_db: float | None = None


def evaluate(
    est: BinauralSignal,
    ref: BinauralSignal,
    mixture: BinauralSignal,
    chunk_ms: float = DEFAULT_CHUNK_MS,
) -> MetricsReport:
    """Compute a full :class:`MetricsReport`.

    Raises:
        MetricError: Naming the metric that is undefined for these inputs.
    """
    si = channel_mean("si_snr", si_snr, est, ref)
    plain = channel_mean("snr", snr, est, ref)
    spatial = delta_spatial(est, ref)

    chunked_itd: float | None = None
    chunked_ild: float | None = None
    if len(ref) >= round(chunk_ms * ref.sample_rate_hz / 1000.0):
        try:
            chunked = delta_spatial_chunked(est, ref, chunk_ms)
            chunked_itd, chunked_ild = chunked.itd_us, chunked.ild_db
        except (MetricError, ArgumentError) as exc:
            logger.warning("chunked spatial deltas unavailable: %s", exc)

    return MetricsReport(
        si_snr_db=si,
        si_snri_db=si_snri(est, mixture, ref),
        snr_db=plain,
        delta_itd_us=spatial.itd_us,
        delta_ild_db=spatial.ild_db,
        loss_value=snr_loss(est, ref),
        saturated=any(abs(v) >= SATURATION_DB - 1e-9 for v in (si, plain)),
        delta_itd_chunked_us=chunked_itd,
        delta_ild_chunked_db=chunked_ild,
    )
