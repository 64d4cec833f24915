"""IRStore: lookup of stereo impulse responses by listener and direction."""

from __future__ import annotations

import logging
import threading
from abc import ABC, abstractmethod
from collections.abc import Collection, Iterable
from typing import NamedTuple

import numpy as np

from binaural_tse.audio.resample import resample_any
from binaural_tse.audio.signal import CANONICAL_RATE_HZ, BinauralSignal
from binaural_tse.exceptions import ArgumentError, SceneError

logger = logging.getLogger(__name__)

SPLIT_RATIOS: dict[str, float] = {"train": 0.7, "test": 0.2, "validation": 0.1}


class IRKey(NamedTuple):
    """One measured direction: listener ``subject`` in ``room`` at ``azimuth_deg``."""

    subject: str
    room: str
    azimuth_deg: float

    @property
    def group(self) -> tuple[str, str]:
        return self.subject, self.room


class IRStore(ABC):
    """Abstract base for impulse-response backends.

    Backends only list their keys and load raw responses; resampling and
    caching live here.  Lookups are thread-safe.
    """

    def __init__(self) -> None:
        self._cache: dict[tuple[IRKey, int], BinauralSignal] = {}
        self._lock = threading.Lock()

    @abstractmethod
    def keys(self) -> list[IRKey]:
        """Every direction this store can serve."""
        ...

    @abstractmethod
    def _load(self, key: IRKey) -> BinauralSignal:
        """Return the raw response for a known key, at its native rate."""
        ...

    def __contains__(self, key: object) -> bool:
        return key in set(self.keys())

    def __len__(self) -> int:
        return len(self.keys())

    def get(self, key: IRKey, sample_rate_hz: int = CANONICAL_RATE_HZ) -> BinauralSignal:
        """Response for ``key`` resampled to ``sample_rate_hz``.

        Raises:
            SceneError: If the store has no response for ``key``.
        """
        key = IRKey(key.subject, key.room, float(key.azimuth_deg))
        if key not in self:
            raise SceneError(
                f"no impulse response for subject '{key.subject}', room '{key.room}', "
                f"azimuth {key.azimuth_deg:g} deg"
            )
        with self._lock:
            cached = self._cache.get((key, sample_rate_hz))
        if cached is not None:
            return cached

        raw = self._load(key)
        ir = resample_any(raw, sample_rate_hz)
        assert isinstance(ir, BinauralSignal)
        with self._lock:
            self._cache[(key, sample_rate_hz)] = ir
        return ir

    def groups(self) -> list[tuple[str, str]]:
        """Distinct ``(subject, room)`` pairs, sorted."""
        return sorted({k.group for k in self.keys()})

    def directions(self, subject: str, room: str) -> list[float]:
        return sorted(k.azimuth_deg for k in self.keys() if k.group == (subject, room))

    def split(self, name: str, seed: int = 0) -> IRStore:
        """Deterministic 70/20/10 train/test/validation view.

        Whole ``(subject, room)`` groups are assigned to one split, so no
        listener-room pairing is shared between splits.

        Raises:
            ArgumentError: If ``name`` is not a known split.
        """
        if name not in SPLIT_RATIOS:
            raise ArgumentError(
                "IRStore.split", f"unknown split '{name}', use one of {list(SPLIT_RATIOS)}"
            )
        groups = self.groups()
        order = np.random.default_rng(seed).permutation(len(groups))
        n_train = round(SPLIT_RATIOS["train"] * len(groups))
        n_test = round(SPLIT_RATIOS["test"] * len(groups))
        bounds = {
            "train": (0, n_train),
            "test": (n_train, n_train + n_test),
            "validation": (n_train + n_test, len(groups)),
        }
        lo, hi = bounds[name]
        chosen = {groups[i] for i in order[lo:hi]}
        logger.debug("split '%s': %d of %d groups", name, len(chosen), len(groups))
        return _SplitView(self, chosen)


class _SplitView(IRStore):
    """Subset of a parent store restricted to some ``(subject, room)`` groups."""

    def __init__(self, parent: IRStore, groups: Collection[tuple[str, str]]) -> None:
        super().__init__()
        self._parent = parent
        self._groups = frozenset(groups)

    def keys(self) -> list[IRKey]:
        return [k for k in self._parent.keys() if k.group in self._groups]

    def _load(self, key: IRKey) -> BinauralSignal:
        return self._parent._load(key)


def keys_by_group(keys: Iterable[IRKey]) -> dict[tuple[str, str], list[IRKey]]:
    grouped: dict[tuple[str, str], list[IRKey]] = {}
    for key in sorted(keys):
        grouped.setdefault(key.group, []).append(key)
    return grouped
