"""Separation-quality and spatial-cue metrics."""

from binaural_tse.metrics.report import MetricsReport, evaluate
from binaural_tse.metrics.snr import (
    EPS,
    SATURATION_DB,
    mixed_loss,
    si_snr,
    si_snri,
    snr,
    snr_loss,
)
from binaural_tse.metrics.spatial import (
    SpatialDelta,
    delta_spatial,
    delta_spatial_chunked,
    ild,
    itd,
)

__all__ = [
    "EPS",
    "SATURATION_DB",
    "MetricsReport",
    "SpatialDelta",
    "delta_spatial",
    "delta_spatial_chunked",
    "evaluate",
    "ild",
    "itd",
    "mixed_loss",
    "si_snr",
    "si_snri",
    "snr",
    "snr_loss",
]
