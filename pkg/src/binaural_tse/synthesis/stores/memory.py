"""InMemoryIRStore: dict-backed responses for tests and programmatic use."""

from __future__ import annotations

from collections.abc import Mapping

from binaural_tse.audio.signal import BinauralSignal
from binaural_tse.synthesis.stores.base import IRKey, IRStore


class InMemoryIRStore(IRStore):
    """Responses held in a dict.  Nothing touches the filesystem."""

    def __init__(self, responses: Mapping[IRKey, BinauralSignal] | None = None) -> None:
        super().__init__()
        self._data: dict[IRKey, BinauralSignal] = {}
        for key, ir in (responses or {}).items():
            self.add(key, ir)

    def add(self, key: IRKey, ir: BinauralSignal) -> None:
        self._data[IRKey(key.subject, key.room, float(key.azimuth_deg))] = ir

    def keys(self) -> list[IRKey]:
        return list(self._data)

    def _load(self, key: IRKey) -> BinauralSignal:
        return self._data[key]
