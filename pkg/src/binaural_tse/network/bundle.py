"""Weight bundle file format.

Layout::

    b"BTSE"                      4-byte magic
    u32 version                  little-endian, currently 1
    u32 manifest_length          bytes of UTF-8 JSON that follow
    manifest                     {"config": {...}, "registry": [...],
                                  "tensors": [{"name", "shape", "byte_offset"}]}
    tensor data                  float32 little-endian, offsets relative to
                                 the first byte after the manifest
"""

from __future__ import annotations

import json
import logging
import math
import struct
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import ValidationError

from binaural_tse.exceptions import FormatError, ResourceIOError, TSEError
from binaural_tse.network.config import ModelConfig
from binaural_tse.network.weights import Tensor, WeightBundle
from binaural_tse.ontology import ClassRegistry

logger = logging.getLogger(__name__)

MAGIC = b"BTSE"
VERSION = 1
_PREAMBLE = struct.Struct("<4sII")
_F32 = np.dtype("<f4")


def encode_bundle(bundle: WeightBundle) -> bytes:
    """Serialize ``bundle`` to the on-disk byte layout."""
    entries: list[dict[str, Any]] = []
    blobs: list[bytes] = []
    offset = 0
    for name, tensor in bundle.tensors.items():
        blob = np.ascontiguousarray(tensor, dtype=_F32).tobytes()
        entries.append({"name": name, "shape": list(tensor.shape), "byte_offset": offset})
        blobs.append(blob)
        offset += len(blob)

    manifest = json.dumps(
        {
            "config": bundle.config.model_dump(),
            "registry": list(bundle.registry.labels),
            "tensors": entries,
        },
        sort_keys=True,
    ).encode("utf-8")
    return _PREAMBLE.pack(MAGIC, VERSION, len(manifest)) + manifest + b"".join(blobs)


def decode_bundle(blob: bytes, source: str = "<bytes>") -> WeightBundle:
    """Parse bytes produced by :func:`encode_bundle`.

    Raises:
        FormatError: On a bad magic, unknown version, malformed manifest or
            truncated tensor data.
    """
    if len(blob) < _PREAMBLE.size:
        raise FormatError(source, "truncated preamble")
    magic, version, manifest_len = _PREAMBLE.unpack_from(blob)
    if magic != MAGIC:
        raise FormatError(source, f"bad magic {magic!r}")
    if version != VERSION:
        raise FormatError(source, f"unsupported version {version}")

    start = _PREAMBLE.size
    data_start = start + manifest_len
    if data_start > len(blob):
        raise FormatError(source, "truncated manifest")
    try:
        manifest = json.loads(blob[start:data_start].decode("utf-8"))
        config = ModelConfig(**manifest["config"])
        registry = ClassRegistry(tuple(manifest["registry"]))
        entries = list(manifest["tensors"])
    except (UnicodeDecodeError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise FormatError(source, f"malformed manifest: {exc}") from exc
    except (ValidationError, TSEError) as exc:
        raise FormatError(source, f"invalid manifest content: {exc}") from exc

    tensors: dict[str, Tensor] = {}
    for entry in entries:
        try:
            name = str(entry["name"])
            shape = tuple(int(s) for s in entry["shape"])
            offset = int(entry["byte_offset"])
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(source, f"malformed tensor entry: {exc}") from exc
        if not shape or any(s <= 0 for s in shape):
            raise FormatError(source, f"invalid shape {list(shape)} for tensor '{name}'")
        count = math.prod(shape)
        begin = data_start + offset
        if offset < 0 or begin + count * _F32.itemsize > len(blob):
            raise FormatError(source, f"truncated data for tensor '{name}'")
        try:
            raw = np.frombuffer(blob, dtype=_F32, count=count, offset=begin)
            tensors[name] = raw.reshape(shape).astype(np.float32)
        except ValueError as exc:
            raise FormatError(source, f"unreadable data for tensor '{name}': {exc}") from exc

    try:
        return WeightBundle(config, registry, tensors)
    except TSEError as exc:
        raise FormatError(source, str(exc)) from exc


def save_bundle(bundle: WeightBundle, path: str | Path) -> None:
    path = Path(path)
    try:
        path.write_bytes(encode_bundle(bundle))
    except OSError as exc:
        raise ResourceIOError(str(path), str(exc)) from exc
    logger.info("saved weight bundle %s (%d parameters)", path, bundle.param_count())


def load_bundle(path: str | Path) -> WeightBundle:
    path = Path(path)
    try:
        blob = path.read_bytes()
    except OSError as exc:
        raise ResourceIOError(str(path), str(exc)) from exc
    bundle = decode_bundle(blob, str(path))
    logger.debug("loaded weight bundle %s: %s", path, bundle.config)
    return bundle
