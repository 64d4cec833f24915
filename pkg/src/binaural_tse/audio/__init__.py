"""Audio containers, WAV I/O, resampling and loudness."""

from binaural_tse.audio.loudness import LoudnessValue, loudness_lufs, scale_to_lufs
from binaural_tse.audio.resample import resample, resample_any
from binaural_tse.audio.signal import CANONICAL_RATE_HZ, BinauralSignal, MonoSignal, Signal
from binaural_tse.audio.wav import read_wav, write_wav

__all__ = [
    "CANONICAL_RATE_HZ",
    "BinauralSignal",
    "LoudnessValue",
    "MonoSignal",
    "Signal",
    "loudness_lufs",
    "read_wav",
    "resample",
    "resample_any",
    "scale_to_lufs",
    "write_wav",
]
