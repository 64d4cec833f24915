"""ModelConfig: architecture hyperparameters of the extraction network."""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from binaural_tse.exceptions import ConfigError


class ModelConfig(BaseModel):
    """Hyperparameters that, together with a weight bundle, fix the forward pass.

    Attributes:
        dim:            Latent dimensionality ``D`` (channels).
        stride:         Input stride ``L`` in samples; also the lookahead.
        chunk_frames:   Frames per chunk ``K``; a chunk is ``K * L`` samples.
        num_classes:    Query length ``N_c``.
        enc_layers:     Dilated convolution layers (dilations ``1, 2, ... 2**(n-1)``).
        enc_kernel:     Encoder kernel width; the context arithmetic assumes 3.
        heads:          Attention heads in the decoder; must divide ``dim``.
        ff_dim:         Decoder feed-forward width, ``4 * dim`` when omitted.
        sample_rate_hz: Rate the network runs at.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    dim: int = Field(default=128, ge=1)
    stride: int = Field(default=32, ge=1)
    chunk_frames: int = Field(default=13, ge=1)
    num_classes: int = Field(default=20, ge=1)
    enc_layers: int = Field(default=10, ge=1)
    enc_kernel: int = 3
    heads: int = Field(default=8, ge=1)
    ff_dim: int = Field(default=0, ge=0)
    sample_rate_hz: int = Field(default=44_100, gt=0)

    @model_validator(mode="before")
    @classmethod
    def _default_ff_dim(cls, data: Any) -> Any:
        if isinstance(data, dict) and not data.get("ff_dim"):
            data = {**data, "ff_dim": 4 * int(data.get("dim", 128))}
        return data

    @model_validator(mode="after")
    def _check_shapes(self) -> ModelConfig:
        if self.dim % self.heads != 0:
            raise ValueError(f"dim ({self.dim}) must be divisible by heads ({self.heads})")
        if self.enc_kernel != 3:
            raise ValueError(f"enc_kernel must be 3, got {self.enc_kernel}")
        return self

    @staticmethod
    def create(**fields: Any) -> ModelConfig:
        """Validate ``fields``, converting pydantic errors to :class:`ConfigError`."""
        try:
            return ModelConfig(**fields)
        except ValidationError as exc:
            raise ConfigError("ModelConfig", str(exc)) from exc

    # ── derived sizes ────────────────────────────────────────

    @property
    def head_dim(self) -> int:
        return self.dim // self.heads

    @property
    def chunk_samples(self) -> int:
        """Samples emitted per chunk, ``K * L``."""
        return self.chunk_frames * self.stride

    @property
    def lookahead_samples(self) -> int:
        return self.stride

    @property
    def input_samples(self) -> int:
        """Samples consumed per chunk including lookahead, ``K * L + L``."""
        return self.chunk_samples + self.stride

    @property
    def in_kernel(self) -> int:
        return 2 * self.stride

    def dilation(self, layer: int) -> int:
        return int(2**layer)

    def context_frames(self, layer: int) -> int:
        """Cached input frames for ``layer``: ``(kernel - 1) * dilation``."""
        return (self.enc_kernel - 1) * self.dilation(layer)

    @property
    def total_context_frames(self) -> int:
        return sum(self.context_frames(j) for j in range(self.enc_layers))
