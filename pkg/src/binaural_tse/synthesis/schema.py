"""Declarative scene description.

A scene spec is the JSON contract between ``btse synth`` runs: field names
are stable and written verbatim to ``spec.json`` in every scene directory.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from binaural_tse.audio.signal import CANONICAL_RATE_HZ
from binaural_tse.exceptions import ConfigError, ResourceIOError
from binaural_tse.synthesis.stores.base import IRKey

FIT_TOLERANCE_S = 1e-6

EventRole = Literal["target", "other"]


class BackgroundSpec(BaseModel):
    """Ambient bed that persists for the whole scene.

    Attributes:
        source: Source reference (WAV path for the default loader).
        lufs:   Loudness the background is scaled to.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    source: str
    lufs: float = -50.0


class EventSpec(BaseModel):
    """One spatialized sound event.

    Attributes:
        label:       Class identifier.
        source:      Source reference.
        onset_s:     Start time within the scene.
        duration_s:  Length of source audio used.
        snr_db:      Event loudness minus background loudness.
        subject:     Listener whose responses spatialize the event.
        room:        Room of the response.
        azimuth_deg: Direction of the response.
        role:        ``target`` events get a ground truth; ``other`` events are interference.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    label: str
    source: str
    onset_s: float = Field(ge=0.0)
    duration_s: float = Field(gt=0.0)
    snr_db: float
    subject: str
    room: str
    azimuth_deg: float
    role: EventRole = "target"

    @property
    def ir_key(self) -> IRKey:
        return IRKey(self.subject, self.room, self.azimuth_deg)


class SceneSpec(BaseModel):
    """A full mixture: background plus events placed in time and space."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    duration_s: float = Field(default=6.0, gt=0.0)
    sample_rate: int = Field(default=CANONICAL_RATE_HZ, gt=0)
    seed: int = 0
    background: BackgroundSpec
    events: tuple[EventSpec, ...] = ()

    @model_validator(mode="after")
    def _events_fit(self) -> SceneSpec:
        for i, event in enumerate(self.events):
            end = event.onset_s + event.duration_s
            if end > self.duration_s + FIT_TOLERANCE_S:
                raise ValueError(
                    f"event {i} ('{event.label}') ends at {end:.3f} s, "
                    f"after the scene's {self.duration_s:.3f} s"
                )
        return self

    @staticmethod
    def create(**fields: Any) -> SceneSpec:
        try:
            return SceneSpec(**fields)
        except ValidationError as exc:
            raise ConfigError("SceneSpec", str(exc)) from exc

    @staticmethod
    def from_json(path: str | Path) -> SceneSpec:
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ResourceIOError(str(path), str(exc)) from exc
        try:
            return SceneSpec.model_validate_json(text)
        except ValidationError as exc:
            raise ConfigError(str(path), str(exc)) from exc

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), indent=2)

    @property
    def n_samples(self) -> int:
        return round(self.duration_s * self.sample_rate)

    @property
    def targets(self) -> tuple[EventSpec, ...]:
        return tuple(e for e in self.events if e.role == "target")

    @property
    def target_labels(self) -> list[str]:
        """Distinct target labels in first-appearance order."""
        return list(dict.fromkeys(e.label for e in self.targets))
