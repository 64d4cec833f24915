"""One full chunk of the extraction pipeline."""

from __future__ import annotations

from typing import NamedTuple

import numpy.typing as npt

from binaural_tse.network.layers import (
    DecoderState,
    EncoderState,
    apply_mask,
    decode_mask,
    encode_chunk,
    project_in,
    project_out,
)
from binaural_tse.network.weights import Tensor, WeightBundle


class ChunkOutput(NamedTuple):
    samples: Tensor
    enc_state: EncoderState
    dec_state: DecoderState


def forward_chunk(
    samples: npt.ArrayLike,
    label: Tensor,
    enc_state: EncoderState,
    dec_state: DecoderState,
    weights: WeightBundle,
) -> ChunkOutput:
    """Run the five pipeline stages on ``2 x (K*L + L)`` input samples.

    Returns the ``2 x K*L`` output samples and both updated states.
    """
    x = project_in(samples, weights)
    e, enc_state = encode_chunk(x, enc_state, weights)
    m, dec_state = decode_mask(e, label, dec_state, weights)
    return ChunkOutput(project_out(apply_mask(x, m), weights), enc_state, dec_state)
