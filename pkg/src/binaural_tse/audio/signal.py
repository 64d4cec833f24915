"""Sample containers shared by every module.

Samples are stored as read-only ``float32`` arrays.  Containers are frozen,
so a signal can be handed to any number of concurrent consumers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TypeAlias

import numpy as np
import numpy.typing as npt

from binaural_tse.exceptions import ArgumentError, ShapeError

CANONICAL_RATE_HZ = 44_100


def _frozen_samples(samples: npt.ArrayLike, owner: str) -> npt.NDArray[np.float32]:
    arr = np.array(samples, dtype=np.float32)
    if arr.ndim != 1:
        raise ShapeError(owner, "1-D samples", arr.shape)
    if not np.all(np.isfinite(arr)):
        raise ArgumentError(owner, "samples must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class MonoSignal:
    """One channel of audio.

    Attributes:
        samples:        Real values, nominal full scale ``[-1, 1]``.
        sample_rate_hz: Positive sample rate in Hz.
    """

    samples: npt.NDArray[np.float32]
    sample_rate_hz: int

    def __post_init__(self) -> None:
        if self.sample_rate_hz <= 0:
            raise ArgumentError(
                "MonoSignal", f"sample rate must be positive, got {self.sample_rate_hz}"
            )
        object.__setattr__(self, "samples", _frozen_samples(self.samples, "MonoSignal"))

    def __len__(self) -> int:
        return int(self.samples.shape[0])

    @property
    def duration_s(self) -> float:
        return len(self) / self.sample_rate_hz

    def scaled(self, gain: float) -> MonoSignal:
        return MonoSignal(self.samples * np.float32(gain), self.sample_rate_hz)

    def is_silent(self) -> bool:
        return not np.any(self.samples)


@dataclass(frozen=True)
class BinauralSignal:
    """Two time-aligned channels (left ear, right ear) at one sample rate."""

    left: MonoSignal
    right: MonoSignal

    def __post_init__(self) -> None:
        if len(self.left) != len(self.right):
            raise ShapeError("BinauralSignal", f"{len(self.left)} right samples", len(self.right))
        if self.left.sample_rate_hz != self.right.sample_rate_hz:
            raise ArgumentError(
                "BinauralSignal",
                f"channel rates differ ({self.left.sample_rate_hz} vs "
                f"{self.right.sample_rate_hz})",
            )

    # ── construction ─────────────────────────────────────────

    @staticmethod
    def from_array(data: npt.ArrayLike, sample_rate_hz: int) -> BinauralSignal:
        """Build from a ``[2, T]`` array."""
        arr = np.asarray(data, dtype=np.float32)
        if arr.ndim != 2 or arr.shape[0] != 2:
            raise ShapeError("BinauralSignal.from_array", "[2, T]", arr.shape)
        return BinauralSignal(
            MonoSignal(arr[0], sample_rate_hz),
            MonoSignal(arr[1], sample_rate_hz),
        )

    @staticmethod
    def from_mono(signal: MonoSignal) -> BinauralSignal:
        """Duplicate a mono signal onto both ears."""
        return BinauralSignal(signal, signal)

    # ── accessors ────────────────────────────────────────────

    def __len__(self) -> int:
        return len(self.left)

    @property
    def sample_rate_hz(self) -> int:
        return self.left.sample_rate_hz

    @property
    def duration_s(self) -> float:
        return len(self) / self.sample_rate_hz

    @property
    def data(self) -> npt.NDArray[np.float32]:
        """A fresh ``[2, T]`` copy of the samples."""
        return np.stack([self.left.samples, self.right.samples])

    def channels(self) -> tuple[MonoSignal, MonoSignal]:
        return self.left, self.right

    # ── transforms ───────────────────────────────────────────

    def scaled(self, gain: float) -> BinauralSignal:
        return BinauralSignal(self.left.scaled(gain), self.right.scaled(gain))

    def trimmed(self, length: int) -> BinauralSignal:
        """First ``length`` samples of both channels."""
        return BinauralSignal.from_array(self.data[:, :length], self.sample_rate_hz)

    def downmix(self) -> MonoSignal:
        return MonoSignal((self.left.samples + self.right.samples) * 0.5, self.sample_rate_hz)

    def is_silent(self) -> bool:
        return self.left.is_silent() and self.right.is_silent()

    def _check_compatible(self, other: BinauralSignal, op: str) -> None:
        if len(self) != len(other):
            raise ShapeError(op, len(self), len(other))
        if self.sample_rate_hz != other.sample_rate_hz:
            raise ArgumentError(op, "sample rates differ")

    def __add__(self, other: BinauralSignal) -> BinauralSignal:
        self._check_compatible(other, "add")
        return BinauralSignal.from_array(self.data + other.data, self.sample_rate_hz)

    def __sub__(self, other: BinauralSignal) -> BinauralSignal:
        self._check_compatible(other, "subtract")
        return BinauralSignal.from_array(self.data - other.data, self.sample_rate_hz)


Signal: TypeAlias = MonoSignal | BinauralSignal


def as_channels(signal: Signal) -> tuple[MonoSignal, ...]:
    """Channels of either container type, in left/right order."""
    if isinstance(signal, BinauralSignal):
        return signal.channels()
    return (signal,)
