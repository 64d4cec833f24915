"""Impulse-response storage backends."""

from binaural_tse.synthesis.stores.base import SPLIT_RATIOS, IRKey, IRStore
from binaural_tse.synthesis.stores.manifest import IRRecord, ManifestIRStore, write_ir_manifest
from binaural_tse.synthesis.stores.memory import InMemoryIRStore

__all__ = [
    "SPLIT_RATIOS",
    "IRKey",
    "IRRecord",
    "IRStore",
    "InMemoryIRStore",
    "ManifestIRStore",
    "write_ir_manifest",
]
