"""WAV file I/O through ``scipy.io.wavfile``.

Reading accepts RIFF/WAVE files holding PCM16, PCM24 or float32 samples in
one or two channels.  Integer PCM is normalized by its full-scale magnitude
(``value / 32768`` for PCM16).  Writing supports PCM16 and float32; float32
round-trips bit-exactly and identical signals always produce identical bytes.
"""

from __future__ import annotations

import logging
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Literal

import numpy as np
import numpy.typing as npt
from scipy.io import wavfile

from binaural_tse.audio.signal import BinauralSignal, MonoSignal, Signal
from binaural_tse.exceptions import ArgumentError, FormatError, ResourceIOError

logger = logging.getLogger(__name__)

WavEncoding = Literal["pcm16", "float32"]

_FORMAT_PCM = 1
_FORMAT_FLOAT = 3
_FORMAT_EXTENSIBLE = 0xFFFE

# (format tag, bits per sample) -> full-scale divisor
_SUPPORTED: dict[tuple[int, int], float] = {
    (_FORMAT_PCM, 16): 32768.0,
    (_FORMAT_PCM, 24): 2.0**31,  # scipy left-justifies 24-bit samples in int32
    (_FORMAT_FLOAT, 32): 1.0,
}


@dataclass(frozen=True)
class WavHeader:
    format_tag: int
    channels: int
    sample_rate_hz: int
    bits_per_sample: int


def read_header(path: Path) -> WavHeader:
    """Parse the RIFF chunk list up to ``fmt `` and validate the declared size.

    Raises:
        ResourceIOError: If the file is shorter than its header declares.
        FormatError: If it is not RIFF/WAVE or has no ``fmt `` chunk.
    """
    blob = path.read_bytes()
    if len(blob) < 12:
        raise ResourceIOError(str(path), f"truncated header ({len(blob)} bytes)")
    if blob[:4] != b"RIFF" or blob[8:12] != b"WAVE":
        raise FormatError(str(path), "not a RIFF/WAVE container")
    (riff_size,) = struct.unpack("<I", blob[4:8])
    if riff_size + 8 > len(blob):
        raise ResourceIOError(
            str(path), f"truncated: header declares {riff_size + 8} bytes, file has {len(blob)}"
        )

    pos = 12
    while pos + 8 <= len(blob):
        chunk_id = blob[pos : pos + 4]
        (chunk_size,) = struct.unpack("<I", blob[pos + 4 : pos + 8])
        if chunk_id == b"fmt ":
            if chunk_size < 16:
                raise FormatError(str(path), f"fmt chunk too short ({chunk_size} bytes)")
            tag, channels, rate, _, _, bits = struct.unpack("<HHIIHH", blob[pos + 8 : pos + 24])
            if tag == _FORMAT_EXTENSIBLE and chunk_size >= 40:
                (tag,) = struct.unpack("<H", blob[pos + 32 : pos + 34])
            return WavHeader(tag, channels, rate, bits)
        pos += 8 + chunk_size + (chunk_size & 1)
    raise FormatError(str(path), "missing fmt chunk")


def read_wav(path: str | Path) -> Signal:
    """Read a WAV file into a :class:`MonoSignal` or :class:`BinauralSignal`.

    Raises:
        ResourceIOError: If the file is missing or truncated.
        FormatError: If the encoding or channel count is unsupported.
    """
    path = Path(path)
    if not path.is_file():
        raise ResourceIOError(str(path), "file not found")

    header = read_header(path)
    scale = _SUPPORTED.get((header.format_tag, header.bits_per_sample))
    if scale is None:
        raise FormatError(
            str(path),
            f"unsupported encoding (format {header.format_tag}, {header.bits_per_sample} bit)",
        )
    if header.channels not in (1, 2):
        raise FormatError(str(path), f"{header.channels} channels (only 1 or 2 supported)")

    try:
        rate, raw = wavfile.read(str(path))
    except (ValueError, OSError) as exc:
        raise ResourceIOError(str(path), str(exc)) from exc

    data = raw.astype(np.float32) if scale == 1.0 else (raw / scale).astype(np.float32)
    logger.debug("read %s: %d ch, %d frames @ %d Hz", path, header.channels, len(data), rate)
    if data.ndim == 1:
        return MonoSignal(data, int(rate))
    return BinauralSignal.from_array(data.T, int(rate))


def _quantize_pcm16(data: npt.NDArray[np.float32]) -> npt.NDArray[np.int16]:
    scaled = np.round(data.astype(np.float64) * 32768.0)
    return np.clip(scaled, -32768, 32767).astype(np.int16)


def write_wav(
    signal: Signal,
    path: str | Path,
    encoding: WavEncoding = "float32",
    *,
    peak_normalize: bool = False,
) -> None:
    """Write ``signal`` as a WAV file.

    Args:
        signal: Mono or binaural signal, non-empty.
        path: Destination file.
        encoding: ``"float32"`` (bit-exact) or ``"pcm16"`` (within 2**-15).
        peak_normalize: Scale so the largest magnitude is exactly 1.0 first.

    Raises:
        ArgumentError: If the signal is empty or the encoding is unknown.
        ResourceIOError: If the file cannot be written.
    """
    if encoding not in ("pcm16", "float32"):
        raise ArgumentError("write_wav", f"unknown encoding '{encoding}'")
    if len(signal) == 0:
        raise ArgumentError("write_wav", "cannot write a zero-length signal")

    frames = signal.data.T if isinstance(signal, BinauralSignal) else signal.samples
    if peak_normalize:
        peak = float(np.max(np.abs(frames)))
        if peak > 0:
            frames = frames / np.float32(peak)

    payload = _quantize_pcm16(frames) if encoding == "pcm16" else frames.astype(np.float32)

    path = Path(path)
    try:
        wavfile.write(str(path), signal.sample_rate_hz, np.ascontiguousarray(payload))
    except OSError as exc:
        raise ResourceIOError(str(path), str(exc)) from exc
    logger.debug("wrote %s (%s, %d frames)", path, encoding, len(signal))
