"""Tests for the SNR family and losses."""

import math

import numpy as np
import pytest

from binaural_tse.audio.signal import BinauralSignal, MonoSignal
from binaural_tse.exceptions import ArgumentError, MetricError, ShapeError
from binaural_tse.metrics import SATURATION_DB, mixed_loss, si_snr, si_snri, snr, snr_loss
from binaural_tse.synthesis import BackgroundSpec, EventSpec, SceneSpec, build_scene

from tests.conftest import RATE, noise


def mono(values):
    return MonoSignal(np.asarray(values, dtype=np.float32), RATE)


def pair(left, right):
    return BinauralSignal(mono(left), mono(right))


def test_saturation_is_80_db():
    assert SATURATION_DB == pytest.approx(80.0)


# ── snr ──────────────────────────────────────────────────────


def test_snr_direct_formula():
    assert snr(mono([1.0, math.sqrt(0.1)]), mono([1.0, 0.0])) == pytest.approx(10.0, abs=1e-5)


def test_snr_perfect_estimate_saturates():
    ref = mono(noise(100, seed=1))
    assert snr(ref, ref) == pytest.approx(SATURATION_DB)


def test_snr_of_silence_is_zero():
    assert snr(mono(np.zeros(4)), mono([1.0, -1.0, 0.5, 0.0])) == pytest.approx(0.0)


def test_snr_is_not_scale_invariant():
    ref = mono(noise(100, seed=2))
    assert snr(ref.scaled(2.0), ref) == pytest.approx(0.0, abs=1e-6)


def test_snr_hopeless_estimate_is_capped():
    ref = mono([1e-6, 0.0])
    assert snr(mono([1e6, 0.0]), ref) == pytest.approx(-SATURATION_DB)


def test_snr_errors():
    with pytest.raises(MetricError, match="snr"):
        snr(mono([1.0, 2.0]), mono([0.0, 0.0]))
    with pytest.raises(ShapeError):
        snr(mono([1.0, 2.0]), mono([1.0, 2.0, 3.0]))
    with pytest.raises(ArgumentError):
        snr(MonoSignal(np.ones(2, np.float32), 16_000), mono([1.0, 2.0]))


# ── si_snr ───────────────────────────────────────────────────


@pytest.mark.parametrize("alpha", [0.01, 1.0, 3.0])
def test_si_snr_of_scaled_reference_saturates(alpha):
    ref = mono(noise(200, seed=3))
    assert si_snr(ref.scaled(alpha), ref) == pytest.approx(SATURATION_DB, abs=1e-3)


def test_si_snr_orthogonal_noise():
    est = mono([1.0, 0.1, 0.0, 0.0])
    ref = mono([1.0, 0.0, 0.0, 0.0])
    assert si_snr(est, ref) == pytest.approx(20.0, abs=1e-3)


def test_si_snr_orthogonal_estimate_hits_the_floor():
    est = mono([0.0, 1.0, 0.0, 0.0])
    ref = mono([1.0, 0.0, 0.0, 0.0])
    assert si_snr(est, ref) == pytest.approx(-SATURATION_DB)


def test_si_snr_scale_invariance():
    est, ref = mono(noise(300, seed=4)), mono(noise(300, seed=5))
    assert si_snr(est.scaled(2.0), ref) == pytest.approx(si_snr(est, ref), abs=1e-9)
    assert si_snr(est.scaled(0.37), ref) == pytest.approx(si_snr(est, ref), abs=1e-3)


def test_si_snr_zero_inputs():
    with pytest.raises(MetricError, match="estimate"):
        si_snr(mono(np.zeros(3)), mono([1.0, 0.0, 1.0]))
    with pytest.raises(MetricError, match="reference"):
        si_snr(mono([1.0, 0.0, 1.0]), mono(np.zeros(3)))


# ── binaural ─────────────────────────────────────────────────


def test_snr_loss_both_ears_at_10_db():
    ref = pair([1.0, 0.0], [0.0, 1.0])
    est = pair([1.0, math.sqrt(0.1)], [math.sqrt(0.1), 1.0])
    assert snr_loss(est, ref) == pytest.approx(-10.0, abs=1e-5)


def test_snr_loss_averages_ears():
    ref = pair([1.0, 0.0], [1.0, 0.0])
    est = pair([1.0, 0.1], [0.0, 0.0])
    assert snr_loss(est, ref) == pytest.approx(-10.0, abs=1e-5)


def test_snr_loss_penalizes_scaling():
    ref = BinauralSignal(mono(noise(50, seed=6)), mono(noise(50, seed=7)))
    assert snr_loss(ref.scaled(2.0), ref) == pytest.approx(0.0, abs=1e-6)


def test_mixed_loss_endpoints():
    ref = BinauralSignal(mono(noise(50, seed=8)), mono(noise(50, seed=9)))
    est = BinauralSignal(mono(noise(50, seed=10)), mono(noise(50, seed=11))) + ref
    assert mixed_loss(est, ref, 1.0) == pytest.approx(snr_loss(est, ref))
    si = 0.5 * (si_snr(est.left, ref.left) + si_snr(est.right, ref.right))
    assert mixed_loss(est, ref, 0.0) == pytest.approx(-si)
    with pytest.raises(ArgumentError):
        mixed_loss(est, ref, 1.5)


def test_si_snri_identity_and_perfect():
    ref = BinauralSignal(mono(noise(400, seed=12)), mono(noise(400, seed=13)))
    mixture = ref + BinauralSignal(mono(noise(400, seed=14)), mono(noise(400, seed=15)))
    assert si_snri(mixture, mixture, ref) == 0.0
    baseline = 0.5 * (si_snr(mixture.left, ref.left) + si_snr(mixture.right, ref.right))
    assert si_snri(ref, mixture, ref) == pytest.approx(SATURATION_DB - baseline, abs=1e-6)


def test_si_snri_on_rendered_scene(ir_store, sources):
    spec = SceneSpec(
        duration_s=1.0,
        background=BackgroundSpec(source="bg.wav"),
        events=(
            EventSpec(
                label="dog",
                source="dog.wav",
                onset_s=0.0,
                duration_s=1.0,
                snr_db=5.0,
                subject="s01",
                room="r1",
                azimuth_deg=30.0,
            ),
        ),
    )
    scene = build_scene(spec, ir_store, sources)
    truth = scene.ground_truths["dog"]
    baseline = 0.5 * (
        si_snr(scene.mixture.left, truth.left) + si_snr(scene.mixture.right, truth.right)
    )
    improvement = si_snri(truth, scene.mixture, truth)
    assert improvement > 0
    assert improvement == pytest.approx(SATURATION_DB - baseline, abs=1e-6)


def test_binaural_length_mismatch():
    a = pair([1.0, 0.0], [1.0, 0.0])
    b = pair([1.0, 0.0, 1.0], [1.0, 0.0, 1.0])
    with pytest.raises(ShapeError):
        snr_loss(a, b)
