"""Dual-channel latent-masking network: config, weights and forward stages."""

from binaural_tse.network.bundle import decode_bundle, encode_bundle, load_bundle, save_bundle
from binaural_tse.network.config import ModelConfig
from binaural_tse.network.layers import (
    DecoderState,
    EncoderState,
    LatentBlock,
    apply_mask,
    decode_mask,
    embed_query,
    encode_chunk,
    project_in,
    project_out,
)
from binaural_tse.network.model import ChunkOutput, forward_chunk
from binaural_tse.network.weights import (
    WeightBundle,
    init_random,
    init_zeros,
    param_count,
    tensor_shapes,
)

__all__ = [
    "ChunkOutput",
    "DecoderState",
    "EncoderState",
    "LatentBlock",
    "ModelConfig",
    "WeightBundle",
    "apply_mask",
    "decode_bundle",
    "decode_mask",
    "embed_query",
    "encode_bundle",
    "encode_chunk",
    "forward_chunk",
    "init_random",
    "init_zeros",
    "load_bundle",
    "param_count",
    "project_in",
    "project_out",
    "save_bundle",
    "tensor_shapes",
]
