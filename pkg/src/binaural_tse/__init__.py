"""binaural_tse: streaming binaural target sound extraction."""

from binaural_tse.audio import BinauralSignal, MonoSignal, read_wav, write_wav
from binaural_tse.exceptions import (
    ArgumentError,
    ConfigError,
    FormatError,
    MetricError,
    ResourceIOError,
    SceneError,
    ShapeError,
    SilentSignalError,
    TSEError,
    UnknownLabelError,
)
from binaural_tse.network import ModelConfig, WeightBundle, init_random, load_bundle, save_bundle
from binaural_tse.ontology import ClassRegistry, QueryVector, query_from_labels
from binaural_tse.streaming import StreamSession, algorithmic_latency, process_offline

__version__ = "0.1.0"

__all__ = [
    "ArgumentError",
    "BinauralSignal",
    "ClassRegistry",
    "ConfigError",
    "FormatError",
    "MetricError",
    "ModelConfig",
    "MonoSignal",
    "QueryVector",
    "ResourceIOError",
    "SceneError",
    "ShapeError",
    "SilentSignalError",
    "StreamSession",
    "TSEError",
    "UnknownLabelError",
    "WeightBundle",
    "algorithmic_latency",
    "init_random",
    "load_bundle",
    "process_offline",
    "query_from_labels",
    "read_wav",
    "save_bundle",
    "write_wav",
]
