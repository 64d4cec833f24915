"""ManifestIRStore: responses listed in a JSON manifest next to WAV files.

Manifest layout (paths relative to the manifest's directory)::

    [
      {"subject": "s01", "room": "anechoic", "azimuth_deg": -30, "file": "s01/m30.wav"},
      ...
    ]

Real HRTF/BRIR collections are converted externally into one stereo WAV per
direction plus this manifest.
"""

from __future__ import annotations

import json
import logging
from collections.abc import Sequence
from pathlib import Path

from pydantic import BaseModel, ConfigDict, TypeAdapter, ValidationError

from binaural_tse.audio.signal import BinauralSignal
from binaural_tse.audio.wav import read_wav, write_wav
from binaural_tse.exceptions import ConfigError, FormatError, ResourceIOError, SceneError
from binaural_tse.synthesis.stores.base import IRKey, IRStore

logger = logging.getLogger(__name__)


class IRRecord(BaseModel):
    """One manifest entry."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    subject: str
    room: str
    azimuth_deg: float
    file: str

    @property
    def key(self) -> IRKey:
        return IRKey(self.subject, self.room, self.azimuth_deg)


_RECORDS = TypeAdapter(list[IRRecord])


class ManifestIRStore(IRStore):
    """Store backed by a JSON manifest.

    Every referenced file is checked for existence when the manifest is
    opened; the audio itself is read lazily on first lookup.

    Parameters:
        manifest_path: Path to the JSON manifest.

    Raises:
        ResourceIOError: If the manifest or a referenced file is missing.
        ConfigError: If the manifest is malformed or lists a key twice.
    """

    def __init__(self, manifest_path: str | Path) -> None:
        super().__init__()
        self._path = Path(manifest_path)
        self._base = self._path.parent
        try:
            raw = json.loads(self._path.read_text(encoding="utf-8"))
        except OSError as exc:
            raise ResourceIOError(str(self._path), str(exc)) from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(str(self._path), f"invalid JSON: {exc}") from exc
        try:
            records = _RECORDS.validate_python(raw)
        except ValidationError as exc:
            raise ConfigError(str(self._path), str(exc)) from exc

        self._files: dict[IRKey, Path] = {}
        for record in records:
            if record.key in self._files:
                raise ConfigError(str(self._path), f"duplicate entry for {record.key}")
            file = self._base / record.file
            if not file.is_file():
                raise ResourceIOError(str(file), "impulse response listed in manifest not found")
            self._files[record.key] = file
        logger.info("opened IR manifest %s: %d directions", self._path, len(self._files))

    @property
    def manifest_path(self) -> Path:
        return self._path

    def keys(self) -> list[IRKey]:
        return list(self._files)

    def _load(self, key: IRKey) -> BinauralSignal:
        path = self._files[key]
        signal = read_wav(path)
        if not isinstance(signal, BinauralSignal):
            raise FormatError(str(path), "impulse response must be stereo")
        if len(signal) == 0:
            raise SceneError(f"impulse response '{path}' is empty")
        return signal


def write_ir_manifest(
    responses: Sequence[tuple[IRKey, BinauralSignal]], directory: str | Path
) -> Path:
    """Write each response as float32 WAV plus ``manifest.json`` under ``directory``."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    records: list[dict[str, object]] = []
    for i, (key, ir) in enumerate(responses):
        name = f"ir_{i:04d}.wav"
        write_wav(ir, directory / name)
        records.append({**key._asdict(), "file": name})
    manifest = directory / "manifest.json"
    try:
        manifest.write_text(json.dumps(records, indent=2), encoding="utf-8")
    except OSError as exc:
        raise ResourceIOError(str(manifest), str(exc)) from exc
    return manifest
