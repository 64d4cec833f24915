"""Tests for ITD, ILD and their deltas."""

import numpy as np
import pytest

from binaural_tse.audio.signal import BinauralSignal
from binaural_tse.exceptions import ArgumentError, MetricError, ShapeError
from binaural_tse.metrics import delta_spatial, delta_spatial_chunked, ild, itd

from tests.conftest import RATE, noise

CHUNK = round(0.25 * RATE)


def delayed(x, delay):
    """``x`` shifted later by ``delay`` samples, same length."""
    out = np.zeros_like(x)
    out[delay:] = x[: len(x) - delay]
    return out


def binaural(left, right, rate=RATE):
    return BinauralSignal.from_array(np.stack([left, right]).astype(np.float32), rate)


# ── itd ──────────────────────────────────────────────────────


def test_itd_of_delayed_right_ear():
    x = noise(4410, seed=1)
    assert itd(binaural(x, delayed(x, 10))) == pytest.approx(226.8, abs=0.05)


def test_itd_of_delayed_left_ear_is_negative():
    x = noise(4410, seed=2)
    assert itd(binaural(delayed(x, 10), x)) == pytest.approx(-226.8, abs=0.05)


def test_itd_identical_channels():
    x = noise(4410, seed=3)
    assert itd(binaural(x, x)) == 0.0


@pytest.mark.parametrize("delay", [0, 3, 17, 44])
def test_itd_within_half_sample(delay):
    x = noise(4410, seed=4)
    expected = delay / RATE * 1e6
    assert abs(itd(binaural(x, delayed(x, delay))) - expected) <= 0.5e6 / RATE


def test_itd_delay_beyond_window_matches_brute_force():
    left = noise(4410, seed=5)
    right = delayed(left, 60)
    max_lag = 44
    full = np.correlate(right.astype(np.float64), left.astype(np.float64), mode="full")
    lags = np.arange(-(len(left) - 1), len(right))
    window = np.abs(lags) <= max_lag
    best = lags[window][np.argmax(full[window])]
    value = itd(binaural(left, right))
    assert abs(value) <= 1000.0
    assert value == pytest.approx(best / RATE * 1e6)


def test_itd_prefers_smallest_lag_on_ties():
    left = np.array([0.0, 1.0, 0.0, 0.0])
    # lags 0 and +1 tie
    assert itd(binaural(left, np.array([0.0, 1.0, 1.0, 0.0]), rate=1000), max_lag_ms=2.0) == 0.0
    # lags +1 and -1 tie; the positive lag is searched first
    tied = binaural(left, np.array([1.0, 0.0, 1.0, 0.0]), rate=1000)
    assert itd(tied, max_lag_ms=2.0) == pytest.approx(1000.0)


def test_itd_silent_channel():
    with pytest.raises(MetricError, match="silent"):
        itd(binaural(noise(100), np.zeros(100)))


# ── ild ──────────────────────────────────────────────────────


def test_ild_half_amplitude_right():
    x = noise(1000, seed=6)
    assert ild(binaural(x, 0.5 * x)) == pytest.approx(6.02, abs=0.01)


def test_ild_identical_and_swapped():
    left, right = noise(1000, seed=7), noise(1000, seed=8)
    assert ild(binaural(left, left)) == 0.0
    assert ild(binaural(right, left)) == pytest.approx(-ild(binaural(left, right)), abs=1e-12)


@pytest.mark.parametrize("gain", [0.25, 2.0, 10.0])
def test_ild_gain(gain):
    left, right = noise(1000, seed=9), noise(1000, seed=10)
    shift = ild(binaural(gain * left, right)) - ild(binaural(left, right))
    assert shift == pytest.approx(20 * np.log10(gain), abs=0.01)


def test_ild_silent_channel():
    with pytest.raises(MetricError):
        ild(binaural(np.zeros(100), noise(100)))


# ── deltas ───────────────────────────────────────────────────


def test_delta_of_identical_signals():
    x, y = noise(4410, seed=11), noise(4410, seed=12)
    ref = binaural(x, delayed(x, 3) + 0.1 * y)
    assert delta_spatial(ref, ref) == (0.0, 0.0)


def test_delta_of_attenuated_right_ear():
    x = noise(4410, seed=13)
    ref = binaural(x, x)
    est = binaural(x, 0.5 * x)
    d = delta_spatial(est, ref)
    assert d.itd_us == 0.0
    assert d.ild_db == pytest.approx(6.02, abs=0.01)


def test_delta_of_delayed_right_ear():
    x = noise(4410, seed=14)
    d = delta_spatial(binaural(x, delayed(x, 5)), binaural(x, x))
    assert d.itd_us == pytest.approx(113.4, abs=0.05)
    assert d.ild_db == pytest.approx(0.0, abs=0.05)


def test_delta_is_symmetric():
    x, y = noise(4410, seed=15), noise(4410, seed=16)
    a, b = binaural(x, delayed(x, 7)), binaural(y, 0.3 * y)
    assert delta_spatial(a, b) == delta_spatial(b, a)


def test_delta_length_mismatch():
    with pytest.raises(ShapeError):
        delta_spatial(binaural(noise(10), noise(10)), binaural(noise(11), noise(11)))


# ── chunked ──────────────────────────────────────────────────


def test_chunked_stationary():
    x = noise(4 * CHUNK, seed=17)
    ref = binaural(x, delayed(x, 4))
    assert delta_spatial_chunked(ref, ref) == (0.0, 0.0)


def test_chunked_piecewise_delay():
    x = noise(4 * CHUNK, seed=18)
    ref = binaural(x, x)
    right = x.copy()
    for k in (2, 3):
        span = slice(k * CHUNK, (k + 1) * CHUNK)
        right[span] = delayed(x[span], 10)
    d = delta_spatial_chunked(binaural(x, right), ref)
    assert d.itd_us == pytest.approx(113.4, abs=0.05)


def test_chunked_skips_silent_reference():
    x = noise(4 * CHUNK, seed=19)
    x[2 * CHUNK :] = 0.0
    ref = binaural(x, x)
    est_left = noise(4 * CHUNK, seed=20)
    est = binaural(x + 0.1 * est_left, delayed(x, 2) + 0.1 * est_left)
    expected = [
        delta_spatial(
            BinauralSignal.from_array(est.data[:, k * CHUNK : (k + 1) * CHUNK], RATE),
            BinauralSignal.from_array(ref.data[:, k * CHUNK : (k + 1) * CHUNK], RATE),
        )
        for k in (0, 1)
    ]
    d = delta_spatial_chunked(est, ref)
    assert d.itd_us == pytest.approx(np.mean([e.itd_us for e in expected]))
    assert d.ild_db == pytest.approx(np.mean([e.ild_db for e in expected]))


def test_chunked_skips_silent_estimate_chunk():
    x = noise(4 * CHUNK, seed=22)
    ref = binaural(x, delayed(x, 3))
    est_data = ref.data
    est_data[:, :CHUNK] = 0.0
    d = delta_spatial_chunked(BinauralSignal.from_array(est_data, RATE), ref)
    assert d == (0.0, 0.0)


def test_chunked_skips_reference_with_one_silent_ear():
    x = noise(4 * CHUNK, seed=23)
    right = 0.5 * x
    right[:CHUNK] = 0.0
    ref = binaural(x, right)
    d = delta_spatial_chunked(ref, ref)
    assert d == (0.0, 0.0)


def test_chunked_undefined_everywhere():
    x = noise(2 * CHUNK, seed=24)
    ref = binaural(x, x)
    est = binaural(x, np.zeros_like(x))
    with pytest.raises(MetricError, match="silent channel"):
        delta_spatial_chunked(est, ref)


def test_chunked_ignores_partial_tail():
    x = noise(2 * CHUNK + 100, seed=21)
    ref = binaural(x, x)
    est = binaural(x, x).trimmed(2 * CHUNK + 100)
    assert delta_spatial_chunked(est, ref) == (0.0, 0.0)


def test_chunked_all_silent():
    silent = binaural(np.zeros(2 * CHUNK), np.zeros(2 * CHUNK))
    with pytest.raises(MetricError, match="silent"):
        delta_spatial_chunked(binaural(noise(2 * CHUNK), noise(2 * CHUNK)), silent)


def test_chunked_too_short():
    x = noise(CHUNK - 1)
    with pytest.raises(ArgumentError, match="shorter"):
        delta_spatial_chunked(binaural(x, x), binaural(x, x))
