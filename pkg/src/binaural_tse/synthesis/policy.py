"""Random scene drawing from a mixing policy and a source catalog."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from binaural_tse.audio.signal import CANONICAL_RATE_HZ
from binaural_tse.exceptions import ConfigError, ResourceIOError, SceneError
from binaural_tse.synthesis.schema import BackgroundSpec, EventRole, EventSpec, SceneSpec
from binaural_tse.synthesis.stores.base import IRKey, IRStore, keys_by_group

FloatRange = tuple[float, float]


class MixPolicy(BaseModel):
    """Ranges that random scenes are drawn from.

    The defaults are the training mix; :meth:`evaluation` gives the louder
    target mix used for spatial-cue evaluation.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    duration_s: float = Field(default=6.0, gt=0.0)
    sample_rate: int = Field(default=CANONICAL_RATE_HZ, gt=0)
    background_lufs: float = -50.0
    n_targets: int = Field(default=2, ge=1)
    target_snr_db: FloatRange = (5.0, 15.0)
    n_others: tuple[int, int] = (1, 2)
    other_snr_db: FloatRange = (0.0, 5.0)
    event_duration_s: FloatRange = (3.0, 5.0)

    @model_validator(mode="after")
    def _check_ranges(self) -> MixPolicy:
        for name in ("target_snr_db", "other_snr_db", "event_duration_s"):
            lo, hi = getattr(self, name)
            if not lo < hi:
                raise ValueError(f"{name} must satisfy low < high, got ({lo}, {hi})")
        lo_n, hi_n = self.n_others
        if not 0 <= lo_n <= hi_n:
            raise ValueError(f"n_others must satisfy 0 <= low <= high, got {self.n_others}")
        if self.event_duration_s[0] <= 0 or self.event_duration_s[1] > self.duration_s:
            raise ValueError("event_duration_s must lie within (0, duration_s]")
        return self

    @staticmethod
    def create(**fields: Any) -> MixPolicy:
        try:
            return MixPolicy(**fields)
        except ValidationError as exc:
            raise ConfigError("MixPolicy", str(exc)) from exc

    @staticmethod
    def evaluation() -> MixPolicy:
        """Targets at 15-25 dB and interference at 0-10 dB over a -50 LUFS background."""
        return MixPolicy(target_snr_db=(15.0, 25.0), other_snr_db=(0.0, 10.0))


class SceneCatalog(BaseModel):
    """What random scenes may draw from.

    Attributes:
        targets:     Target label -> source references.
        others:      Interference label -> source references.
        backgrounds: Background source references.
        directions:  Available impulse-response keys.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    targets: dict[str, list[str]]
    others: dict[str, list[str]] = Field(default_factory=dict)
    backgrounds: list[str]
    directions: list[IRKey] = Field(default_factory=list)

    @staticmethod
    def from_json(path: str | Path, store: IRStore | None = None) -> SceneCatalog:
        """Load ``{"targets", "others", "backgrounds"}``; directions come from ``store``."""
        path = Path(path)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except OSError as exc:
            raise ResourceIOError(str(path), str(exc)) from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(str(path), f"invalid JSON: {exc}") from exc
        if isinstance(data, dict) and store is not None:
            data = {**data, "directions": store.keys()}
        try:
            return SceneCatalog.model_validate(data)
        except ValidationError as exc:
            raise ConfigError(str(path), str(exc)) from exc

    def with_store(self, store: IRStore) -> SceneCatalog:
        return self.model_copy(update={"directions": store.keys()})


def _pick(rng: np.random.Generator, items: list[Any]) -> Any:
    return items[int(rng.integers(len(items)))]


def _uniform(rng: np.random.Generator, bounds: FloatRange) -> float:
    return float(rng.uniform(bounds[0], bounds[1]))


def make_random_scene_spec(seed: int, policy: MixPolicy, catalog: SceneCatalog) -> SceneSpec:
    """Draw one scene: ``n_targets`` distinct target classes and ``n_others`` interferers.

    All events share one randomly chosen ``(subject, room)`` pair; each
    event's direction is an independent draw, so two events may coincide.

    Raises:
        SceneError: If the catalog cannot satisfy the policy.
    """
    target_labels = sorted(label for label, files in catalog.targets.items() if files)
    other_labels = sorted(label for label, files in catalog.others.items() if files)
    if len(target_labels) < policy.n_targets:
        raise SceneError(
            f"catalog has {len(target_labels)} usable target classes, "
            f"policy needs {policy.n_targets}"
        )
    if policy.n_others[1] > 0 and not other_labels:
        raise SceneError("catalog has no usable other classes")
    if not catalog.backgrounds:
        raise SceneError("catalog has no backgrounds")
    if not catalog.directions:
        raise SceneError("catalog has no impulse-response directions")

    rng = np.random.default_rng(seed)
    groups = keys_by_group(catalog.directions)
    subject, room = _pick(rng, sorted(groups))
    azimuths = [k.azimuth_deg for k in groups[(subject, room)]]

    def event(label: str, files: list[str], role: EventRole, snr: FloatRange) -> EventSpec:
        duration = _uniform(rng, policy.event_duration_s)
        return EventSpec(
            label=label,
            source=_pick(rng, files),
            onset_s=float(rng.uniform(0.0, policy.duration_s - duration)),
            duration_s=duration,
            snr_db=_uniform(rng, snr),
            subject=subject,
            room=room,
            azimuth_deg=_pick(rng, azimuths),
            role=role,
        )

    background = BackgroundSpec(
        source=_pick(rng, catalog.backgrounds), lufs=policy.background_lufs
    )
    events: list[EventSpec] = []
    for i in rng.choice(len(target_labels), size=policy.n_targets, replace=False):
        label = target_labels[int(i)]
        events.append(event(label, catalog.targets[label], "target", policy.target_snr_db))

    n_others = int(rng.integers(policy.n_others[0], policy.n_others[1] + 1))
    n_others = min(n_others, len(other_labels))
    for i in rng.choice(len(other_labels), size=n_others, replace=False):
        label = other_labels[int(i)]
        events.append(event(label, catalog.others[label], "other", policy.other_snr_db))

    return SceneSpec(
        duration_s=policy.duration_s,
        sample_rate=policy.sample_rate,
        seed=seed,
        background=background,
        events=tuple(events),
    )
