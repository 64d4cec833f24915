"""Tests for MonoSignal and BinauralSignal."""

import numpy as np
import pytest

from binaural_tse.audio import BinauralSignal, MonoSignal
from binaural_tse.audio.signal import as_channels
from binaural_tse.exceptions import ArgumentError, ShapeError


def test_mono_stores_read_only_float32():
    sig = MonoSignal([0.0, 0.5, -0.5], 8000)
    assert sig.samples.dtype == np.float32
    assert not sig.samples.flags.writeable
    assert len(sig) == 3


def test_mono_copies_its_input():
    raw = np.zeros(4, np.float32)
    sig = MonoSignal(raw, 8000)
    raw[0] = 1.0
    assert sig.samples[0] == 0.0


def test_mono_rejects_bad_rate():
    with pytest.raises(ArgumentError):
        MonoSignal([0.0], 0)


def test_mono_rejects_non_finite():
    with pytest.raises(ArgumentError, match="finite"):
        MonoSignal([0.0, np.nan], 8000)


def test_mono_rejects_2d():
    with pytest.raises(ShapeError):
        MonoSignal(np.zeros((2, 3)), 8000)


def test_empty_mono_is_allowed():
    sig = MonoSignal([], 8000)
    assert len(sig) == 0
    assert sig.duration_s == 0.0


def test_binaural_length_mismatch():
    with pytest.raises(ShapeError):
        BinauralSignal(MonoSignal([0.0, 1.0], 8000), MonoSignal([0.0], 8000))


def test_binaural_rate_mismatch():
    with pytest.raises(ArgumentError, match="rates differ"):
        BinauralSignal(MonoSignal([0.0], 8000), MonoSignal([0.0], 16000))


def test_from_array_roundtrip():
    data = np.arange(10, dtype=np.float32).reshape(2, 5)
    sig = BinauralSignal.from_array(data, 8000)
    assert len(sig) == 5
    assert sig.sample_rate_hz == 8000
    np.testing.assert_array_equal(sig.data, data)


def test_from_array_requires_two_rows():
    with pytest.raises(ShapeError):
        BinauralSignal.from_array(np.zeros((3, 5)), 8000)


def test_data_is_a_copy():
    sig = BinauralSignal.from_array(np.zeros((2, 4)), 8000)
    d = sig.data
    d[0, 0] = 1.0
    assert sig.left.samples[0] == 0.0


def test_from_mono_duplicates():
    mono = MonoSignal([0.1, 0.2], 8000)
    sig = BinauralSignal.from_mono(mono)
    np.testing.assert_array_equal(sig.left.samples, sig.right.samples)


def test_scaled_and_trimmed():
    sig = BinauralSignal.from_array(np.ones((2, 6)), 8000)
    assert np.all(sig.scaled(0.5).data == 0.5)
    assert len(sig.trimmed(4)) == 4


def test_downmix_averages():
    sig = BinauralSignal.from_array([[1.0, 0.0], [0.0, 1.0]], 8000)
    np.testing.assert_array_equal(sig.downmix().samples, [0.5, 0.5])


def test_add_and_subtract():
    a = BinauralSignal.from_array(np.full((2, 3), 0.25), 8000)
    b = BinauralSignal.from_array(np.full((2, 3), 0.5), 8000)
    np.testing.assert_array_equal((a + b).data, np.full((2, 3), 0.75, np.float32))
    np.testing.assert_array_equal((b - a).data, np.full((2, 3), 0.25, np.float32))


def test_add_requires_equal_length():
    a = BinauralSignal.from_array(np.zeros((2, 3)), 8000)
    b = BinauralSignal.from_array(np.zeros((2, 4)), 8000)
    with pytest.raises(ShapeError):
        a + b


def test_is_silent():
    assert BinauralSignal.from_array(np.zeros((2, 3)), 8000).is_silent()
    assert not BinauralSignal.from_array([[0.0, 0.0], [0.0, 0.1]], 8000).is_silent()


def test_as_channels():
    mono = MonoSignal([0.0], 8000)
    assert as_channels(mono) == (mono,)
    sig = BinauralSignal.from_mono(mono)
    assert len(as_channels(sig)) == 2


def test_signals_are_frozen():
    sig = MonoSignal([0.0], 8000)
    with pytest.raises(AttributeError):
        sig.sample_rate_hz = 16000  # type: ignore[misc]
