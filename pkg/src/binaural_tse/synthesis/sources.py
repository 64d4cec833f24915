"""Source-audio loading for scene rendering."""

from __future__ import annotations

import threading
from collections.abc import Mapping
from pathlib import Path
from typing import Protocol

from binaural_tse.audio.signal import Signal
from binaural_tse.audio.wav import read_wav
from binaural_tse.exceptions import ResourceIOError


class SourceLoader(Protocol):
    """Resolve a source reference from a scene spec to audio.  Inject a fake in tests."""

    def load(self, source: str) -> Signal: ...


class WavSourceLoader:
    """Reads WAV files, relative references resolved against ``base_dir``.

    Decoded files are cached; the loader is safe to share between threads.
    """

    def __init__(self, base_dir: str | Path = ".") -> None:
        self._base = Path(base_dir)
        self._cache: dict[Path, Signal] = {}
        self._lock = threading.Lock()

    def resolve(self, source: str) -> Path:
        path = Path(source)
        return path if path.is_absolute() else self._base / path

    def load(self, source: str) -> Signal:
        path = self.resolve(source)
        with self._lock:
            cached = self._cache.get(path)
        if cached is None:
            cached = read_wav(path)
            with self._lock:
                self._cache[path] = cached
        return cached


class InMemorySourceLoader:
    """Sources held in a dict, keyed by reference."""

    def __init__(self, sources: Mapping[str, Signal]) -> None:
        self._sources = dict(sources)

    def load(self, source: str) -> Signal:
        try:
            return self._sources[source]
        except KeyError:
            raise ResourceIOError(source, "no such in-memory source") from None
