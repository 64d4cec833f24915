"""Tests for the aggregate metrics report."""

import json
import logging

import numpy as np
import pytest

from binaural_tse.audio.signal import BinauralSignal
from binaural_tse.metrics import SATURATION_DB, MetricsReport, evaluate

from tests.conftest import RATE, binaural_noise

FIELDS = {
    "si_snr_db",
    "si_snri_db",
    "snr_db",
    "delta_itd_us",
    "delta_ild_db",
    "loss_value",
    "saturated",
    "delta_itd_chunked_us",
    "delta_ild_chunked_db",
}


def test_perfect_estimate():
    ref = binaural_noise(RATE, seed=1)
    report = evaluate(ref, ref, ref)
    assert report.si_snr_db == pytest.approx(SATURATION_DB)
    assert report.snr_db == pytest.approx(SATURATION_DB)
    assert report.si_snri_db == 0.0
    assert report.loss_value == pytest.approx(-SATURATION_DB)
    assert report.saturated
    assert (report.delta_itd_us, report.delta_ild_db) == (0.0, 0.0)
    assert (report.delta_itd_chunked_us, report.delta_ild_chunked_db) == (0.0, 0.0)


def test_noisy_estimate_is_not_saturated():
    ref = binaural_noise(RATE, seed=2)
    mixture = ref + binaural_noise(RATE, seed=3)
    est = ref + binaural_noise(RATE, seed=4, amplitude=0.01)
    report = evaluate(est, ref, mixture)
    assert not report.saturated
    assert report.si_snri_db > 0
    assert report.snr_db == pytest.approx(20.0, abs=0.5)


def test_short_signals_skip_chunked_deltas():
    ref = binaural_noise(1000, seed=5)
    report = evaluate(ref, ref, ref)
    assert report.delta_itd_chunked_us is None
    assert report.delta_ild_chunked_db is None


def test_exactly_one_chunk_reports_chunked_deltas():
    ref = binaural_noise(round(0.25 * RATE), seed=9)
    report = evaluate(ref, ref, ref)
    assert (report.delta_itd_chunked_us, report.delta_ild_chunked_db) == (0.0, 0.0)


def test_silent_estimate_chunk_keeps_chunked_deltas():
    ref = binaural_noise(RATE, seed=10)
    est_data = ref.data
    est_data[:, : RATE // 4] = 0.0
    report = evaluate(BinauralSignal.from_array(est_data, RATE), ref, ref)
    assert (report.delta_itd_chunked_us, report.delta_ild_chunked_db) == (0.0, 0.0)


def test_silent_reference_chunks_are_logged(caplog):
    ref_data = binaural_noise(RATE, seed=6).data
    ref_data[:, : RATE // 2] = 0.0
    ref_data[:, RATE // 2 :] *= 1e-4
    ref = BinauralSignal.from_array(ref_data, RATE)
    est = binaural_noise(RATE, seed=7)
    with caplog.at_level(logging.WARNING, logger="binaural_tse.metrics.report"):
        report = evaluate(est, ref, est)
    assert report.delta_itd_chunked_us is None
    assert "chunked spatial deltas unavailable" in caplog.text


def test_json_field_names():
    ref = binaural_noise(RATE, seed=8)
    report = evaluate(ref, ref, ref)
    data = json.loads(report.model_dump_json())
    assert set(data) == FIELDS
    assert MetricsReport.model_validate(data) == report
    assert np.isfinite(data["si_snr_db"])
