"""StreamSession: causal chunk-by-chunk extraction with cached state."""

from __future__ import annotations

import logging

import numpy as np
import numpy.typing as npt

from binaural_tse.audio.signal import BinauralSignal
from binaural_tse.exceptions import ArgumentError, ShapeError
from binaural_tse.network.layers import DecoderState, EncoderState, embed_query
from binaural_tse.network.model import forward_chunk
from binaural_tse.network.weights import Tensor, WeightBundle
from binaural_tse.ontology import QueryVector

logger = logging.getLogger(__name__)


class StreamSession:
    """Per-stream state for real-time extraction.

    A session is single-owner and not reentrant: calls to
    :meth:`push_samples` must be serialized.  Any number of sessions may
    share one :class:`WeightBundle` and run in parallel.

    Input accumulates in a bounded buffer of ``2 * (K*L + L)`` samples per
    ear.  Whenever ``K*L + L`` samples are pending, one chunk is processed
    and ``K*L`` output samples are emitted; the newest ``L`` samples stay
    behind as the next chunk's lookahead.

    Parameters:
        weights: Network parameters (carries the :class:`ModelConfig`).
        query:   Class selector with at least one bit set.
    """

    def __init__(self, weights: WeightBundle, query: QueryVector) -> None:
        if query.is_empty():
            raise ArgumentError("StreamSession", "query selects no class")
        self.weights = weights
        self.config = weights.config
        self.query = query
        self._label = embed_query(query, weights)
        self._need = self.config.input_samples
        self._pending = np.zeros((2, 2 * self._need), dtype=np.float32)
        self._fill = 0
        self.enc_state = EncoderState.zeros(self.config)
        self.dec_state = DecoderState.zeros(self.config)
        self.emitted_samples = 0

    # ── introspection ────────────────────────────────────────

    @property
    def pending(self) -> Tensor:
        """Copy of the samples waiting for the next emission."""
        return self._pending[:, : self._fill].copy()

    @property
    def capacity(self) -> int:
        return int(self._pending.shape[1])

    # ── processing ───────────────────────────────────────────

    def push_samples(self, samples: npt.ArrayLike) -> list[Tensor]:
        """Append ``2 x n`` samples and return every chunk that became ready.

        Raises:
            ShapeError: If ``samples`` is not a two-row array.
        """
        s = np.asarray(samples, dtype=np.float32)
        if s.ndim != 2 or s.shape[0] != 2:
            raise ShapeError("push_samples", "[2, n]", s.shape)

        emitted: list[Tensor] = []
        pos, n = 0, s.shape[1]
        while pos < n:
            take = min(n - pos, self.capacity - self._fill)
            self._pending[:, self._fill : self._fill + take] = s[:, pos : pos + take]
            self._fill += take
            pos += take
            while self._fill >= self._need:
                emitted.append(self._emit())
        return emitted

    def _emit(self) -> Tensor:
        hop = self.config.chunk_samples
        chunk = self._pending[:, : self._need].copy()
        out = forward_chunk(chunk, self._label, self.enc_state, self.dec_state, self.weights)
        self.enc_state, self.dec_state = out.enc_state, out.dec_state

        keep = self._fill - hop
        self._pending[:, :keep] = self._pending[:, hop : self._fill]
        self._fill = keep
        self.emitted_samples += hop
        return out.samples

    def reset(self) -> None:
        """Drop pending input and return to the zero state."""
        self._fill = 0
        self.enc_state = EncoderState.zeros(self.config)
        self.dec_state = DecoderState.zeros(self.config)
        self.emitted_samples = 0


def process_offline(
    weights: WeightBundle, signal: BinauralSignal, query: QueryVector
) -> BinauralSignal:
    """Reference whole-signal extraction through the same chunk loop.

    The input is zero-padded by one lookahead so that every complete chunk
    is emitted; the output holds ``floor(T / (K*L)) * K*L`` samples per ear,
    time-aligned with the input.

    Raises:
        ArgumentError: If the signal rate differs from the model rate.
    """
    cfg = weights.config
    if signal.sample_rate_hz != cfg.sample_rate_hz:
        raise ArgumentError(
            "process_offline",
            f"signal is {signal.sample_rate_hz} Hz, model runs at {cfg.sample_rate_hz} Hz",
        )

    n_chunks = len(signal) // cfg.chunk_samples
    n_out = n_chunks * cfg.chunk_samples
    padded = np.zeros((2, n_out + cfg.lookahead_samples), dtype=np.float32)
    take = min(len(signal), padded.shape[1])
    padded[:, :take] = signal.data[:, :take]

    session = StreamSession(weights, query)
    chunks = session.push_samples(padded)
    logger.debug("offline extraction: %d chunks of %d samples", len(chunks), cfg.chunk_samples)
    if not chunks:
        return BinauralSignal.from_array(np.zeros((2, 0), np.float32), signal.sample_rate_hz)
    return BinauralSignal.from_array(np.concatenate(chunks, axis=1), signal.sample_rate_hz)
