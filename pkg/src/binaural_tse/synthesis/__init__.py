"""Binaural scene synthesis from impulse responses."""

from binaural_tse.synthesis.policy import MixPolicy, SceneCatalog, make_random_scene_spec
from binaural_tse.synthesis.scene import (
    RenderedScene,
    build_scene,
    loop_to_length,
    spatialize,
    write_scene,
)
from binaural_tse.synthesis.schema import BackgroundSpec, EventSpec, SceneSpec
from binaural_tse.synthesis.sources import InMemorySourceLoader, SourceLoader, WavSourceLoader
from binaural_tse.synthesis.stores import (
    InMemoryIRStore,
    IRKey,
    IRRecord,
    IRStore,
    ManifestIRStore,
    write_ir_manifest,
)

__all__ = [
    "BackgroundSpec",
    "EventSpec",
    "IRKey",
    "IRRecord",
    "IRStore",
    "InMemoryIRStore",
    "InMemorySourceLoader",
    "ManifestIRStore",
    "MixPolicy",
    "RenderedScene",
    "SceneCatalog",
    "SceneSpec",
    "SourceLoader",
    "WavSourceLoader",
    "build_scene",
    "loop_to_length",
    "make_random_scene_spec",
    "spatialize",
    "write_ir_manifest",
    "write_scene",
]
