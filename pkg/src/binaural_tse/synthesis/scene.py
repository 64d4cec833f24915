"""Scene rendering: spatialization, loudness-referenced mixing, ground truths."""

from __future__ import annotations

import logging
import shutil
from collections.abc import Mapping
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import numpy.typing as npt
from scipy.signal import fftconvolve

from binaural_tse.audio.loudness import scale_to_lufs
from binaural_tse.audio.resample import resample, resample_any
from binaural_tse.audio.signal import BinauralSignal, MonoSignal, Signal
from binaural_tse.audio.wav import WavEncoding, write_wav
from binaural_tse.exceptions import ArgumentError, ResourceIOError, SilentSignalError, TSEError
from binaural_tse.ontology import ClassRegistry
from binaural_tse.synthesis.schema import EventSpec, SceneSpec
from binaural_tse.synthesis.sources import SourceLoader
from binaural_tse.synthesis.stores.base import IRStore

logger = logging.getLogger(__name__)

CROSSFADE_S = 0.010

Frames = npt.NDArray[np.float32]


def spatialize(x: MonoSignal, h: BinauralSignal) -> BinauralSignal:
    """Convolve a mono source with a stereo impulse response.

    Returns the full ``len(x) + len(h) - 1`` samples per ear; callers trim.

    Raises:
        ArgumentError: If either input is empty or the rates differ.
    """
    if len(h) == 0:
        raise ArgumentError("spatialize", "impulse response is empty")
    if len(x) == 0:
        raise ArgumentError("spatialize", "source is empty")
    if x.sample_rate_hz != h.sample_rate_hz:
        raise ArgumentError(
            "spatialize",
            f"source at {x.sample_rate_hz} Hz, response at {h.sample_rate_hz} Hz",
        )
    src = x.samples.astype(np.float64)
    ears = [fftconvolve(src, ch.samples.astype(np.float64)) for ch in h.channels()]
    return BinauralSignal.from_array(np.stack(ears), x.sample_rate_hz)


def _as_binaural(signal: Signal) -> BinauralSignal:
    return signal if isinstance(signal, BinauralSignal) else BinauralSignal.from_mono(signal)


def _as_mono(signal: Signal) -> MonoSignal:
    return signal.downmix() if isinstance(signal, BinauralSignal) else signal


def loop_to_length(
    signal: BinauralSignal, n_samples: int, rng: np.random.Generator
) -> BinauralSignal:
    """Fit ``signal`` to exactly ``n_samples``.

    Longer input is cut at a random offset.  Shorter input is repeated with a
    linear crossfade of ``CROSSFADE_S`` at each seam.
    """
    data = signal.data
    length = data.shape[1]
    if length == 0:
        raise ArgumentError("loop_to_length", "cannot loop an empty signal")
    if length >= n_samples:
        offset = int(rng.integers(0, length - n_samples + 1))
        clip = data[:, offset : offset + n_samples]
        return BinauralSignal.from_array(clip, signal.sample_rate_hz)

    fade = min(round(CROSSFADE_S * signal.sample_rate_hz), length // 2)
    ramp = np.linspace(0.0, 1.0, fade, endpoint=False, dtype=np.float32) if fade else None
    out = data
    while out.shape[1] < n_samples:
        if ramp is None:
            out = np.concatenate([out, data], axis=1)
            continue
        seam = out[:, -fade:] * (1.0 - ramp) + data[:, :fade] * ramp
        out = np.concatenate([out[:, :-fade], seam, data[:, fade:]], axis=1)
    return BinauralSignal.from_array(out[:, :n_samples], signal.sample_rate_hz)


@dataclass(frozen=True)
class RenderedScene:
    """A rendered mixture with its components.

    Attributes:
        spec:          The scene description.
        mixture:       ``background + stems[0] + stems[1] + ...`` in float32,
                       summed in that order.
        background:    Looped, loudness-scaled background.
        stems:         One full-length spatialized stem per event, aligned
                       with ``spec.events``.
        ground_truths: Target label -> sum of that label's stems.
    """

    spec: SceneSpec
    mixture: BinauralSignal
    background: BinauralSignal
    stems: tuple[BinauralSignal, ...]
    ground_truths: Mapping[str, BinauralSignal]

    def remaining(self, label: str) -> BinauralSignal:
        """Mixture re-rendered without the target stems of ``label``."""
        total = self.background.data
        for event, stem in zip(self.spec.events, self.stems):
            if not (event.role == "target" and event.label == label):
                total += stem.data
        return BinauralSignal.from_array(total, self.mixture.sample_rate_hz)


def _render_event(
    event: EventSpec,
    spec: SceneSpec,
    store: IRStore,
    sources: SourceLoader,
) -> tuple[Frames, int]:
    rate = spec.sample_rate
    source = _as_mono(sources.load(event.source))
    if source.sample_rate_hz != rate:
        source = resample(source, rate)
    n = min(len(source), round(event.duration_s * rate))
    source = MonoSignal(source.samples[:n], rate)
    if source.is_silent():
        raise SilentSignalError(f"build_scene[{event.source}]")

    wet = spatialize(source, store.get(event.ir_key, rate)).trimmed(n)
    wet = scale_to_lufs(wet, spec.background.lufs + event.snr_db)
    assert isinstance(wet, BinauralSignal)

    stem = np.zeros((2, spec.n_samples), dtype=np.float32)
    start = min(round(event.onset_s * rate), spec.n_samples)
    end = min(start + n, spec.n_samples)
    stem[:, start:end] = wet.data[:, : end - start]
    return stem, n


def build_scene(
    spec: SceneSpec,
    store: IRStore,
    sources: SourceLoader,
    registry: ClassRegistry | None = None,
) -> RenderedScene:
    """Render ``spec`` into a mixture plus per-target ground truths.

    Each event is downmixed, resampled, cut to its duration, spatialized
    and scaled so its own span measures ``background.lufs + snr_db``.
    Nothing is clipped or normalized.

    Raises:
        UnknownLabelError: If a target label is not in ``registry``.
        SceneError: If an event's direction is missing from ``store``.
        SilentSignalError: If the background or an event source is silent.
    """
    if registry is not None:
        for event in spec.targets:
            registry.position(event.label)

    rng = np.random.default_rng(spec.seed)
    bg = _as_binaural(sources.load(spec.background.source))
    if bg.sample_rate_hz != spec.sample_rate:
        bg = _as_binaural(resample_any(bg, spec.sample_rate))
    bg = loop_to_length(bg, spec.n_samples, rng)
    if bg.is_silent():
        raise SilentSignalError(f"build_scene[{spec.background.source}]")
    background = scale_to_lufs(bg, spec.background.lufs)
    assert isinstance(background, BinauralSignal)

    mixture = background.data
    stems: list[BinauralSignal] = []
    truths: dict[str, Frames] = {}
    for event in spec.events:
        stem, n = _render_event(event, spec, store, sources)
        logger.debug(
            "event '%s' (%s): %d samples at %.3f s, %+.1f dB",
            event.label,
            event.role,
            n,
            event.onset_s,
            event.snr_db,
        )
        mixture += stem
        stems.append(BinauralSignal.from_array(stem, spec.sample_rate))
        if event.role == "target":
            truths[event.label] = truths[event.label] + stem if event.label in truths else stem

    return RenderedScene(
        spec=spec,
        mixture=BinauralSignal.from_array(mixture, spec.sample_rate),
        background=background,
        stems=tuple(stems),
        ground_truths={
            label: BinauralSignal.from_array(t, spec.sample_rate) for label, t in truths.items()
        },
    )


def write_scene(
    scene: RenderedScene,
    out_dir: str | Path,
    encoding: WavEncoding = "float32",
    *,
    peak_normalize: bool = False,
) -> list[Path]:
    """Write ``mixture.wav``, ``gt_<label>.wav`` and ``spec.json`` to ``out_dir``.

    With ``peak_normalize`` every file is scaled by the one gain that brings
    the mixture peak to 1.0, so ground truths stay additive inside the
    mixture on disk.  A directory left half-written by a failure is removed.
    """
    gain = 1.0
    if peak_normalize:
        peak = float(np.max(np.abs(scene.mixture.data)))
        if peak > 0:
            gain = 1.0 / peak
    out_dir = Path(out_dir)
    created = not out_dir.exists()
    written: list[Path] = []
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        mixture = out_dir / "mixture.wav"
        write_wav(scene.mixture.scaled(gain), mixture, encoding)
        written.append(mixture)
        for label, truth in scene.ground_truths.items():
            path = out_dir / f"gt_{label}.wav"
            write_wav(truth.scaled(gain), path, encoding)
            written.append(path)
        spec_path = out_dir / "spec.json"
        spec_path.write_text(scene.spec.to_json(), encoding="utf-8")
        written.append(spec_path)
    except (TSEError, OSError) as exc:
        if created:
            shutil.rmtree(out_dir, ignore_errors=True)
        if isinstance(exc, OSError):
            raise ResourceIOError(str(out_dir), str(exc)) from exc
        raise
    logger.info("wrote scene %s (%d files)", out_dir, len(written))
    return written
