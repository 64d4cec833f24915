"""WeightBundle: the named float32 tensors of one extraction network.

Linear layers follow the ``[out, in]`` convention.  Convolution kernels are
``[out_channels, in_channels, width]``; the output transposed convolution is
``[2, D, L]`` (ear, latent channel, tap).
"""

from __future__ import annotations

import math
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from binaural_tse.exceptions import ShapeError
from binaural_tse.network.config import ModelConfig
from binaural_tse.ontology import ClassRegistry

Tensor = npt.NDArray[np.float32]

ATTENTION_BLOCKS = ("self_attn", "cross_attn")
PROJECTIONS = ("q", "k", "v", "o")


def tensor_shapes(config: ModelConfig) -> dict[str, tuple[int, ...]]:
    """Name -> shape table, in the canonical (file and RNG) order."""
    d, ff = config.dim, config.ff_dim
    shapes: dict[str, tuple[int, ...]] = {
        "in_proj.weight": (d, 2, config.in_kernel),
        "in_proj.bias": (d,),
    }
    for j in range(config.enc_layers):
        shapes[f"encoder.{j}.weight"] = (d, d, config.enc_kernel)
        shapes[f"encoder.{j}.bias"] = (d,)
    shapes["query_embed.weight"] = (d, config.num_classes)
    for block in ATTENTION_BLOCKS:
        for proj in PROJECTIONS:
            shapes[f"decoder.{block}.{proj}.weight"] = (d, d)
            shapes[f"decoder.{block}.{proj}.bias"] = (d,)
    shapes["decoder.ff1.weight"] = (ff, d)
    shapes["decoder.ff1.bias"] = (ff,)
    shapes["decoder.ff2.weight"] = (d, ff)
    shapes["decoder.ff2.bias"] = (d,)
    for n in (1, 2, 3):
        shapes[f"decoder.norm{n}.gain"] = (d,)
        shapes[f"decoder.norm{n}.bias"] = (d,)
    shapes["out_proj.weight"] = (2, d, config.stride)
    shapes["out_proj.bias"] = (2,)
    return shapes


def _fan_in(name: str, config: ModelConfig) -> int:
    if name.startswith("in_proj"):
        return 2 * config.in_kernel
    if name.startswith("encoder."):
        return config.dim * config.enc_kernel
    if name.startswith("query_embed"):
        return config.num_classes
    if name.startswith("decoder.ff2"):
        return config.ff_dim
    return config.dim


def param_count(config: ModelConfig) -> int:
    """Exact number of scalar parameters implied by :func:`tensor_shapes`."""
    return sum(math.prod(shape) for shape in tensor_shapes(config).values())


@dataclass(frozen=True)
class WeightBundle:
    """Immutable network parameters plus the config and registry they belong to.

    Shareable across any number of concurrent streams.
    """

    config: ModelConfig
    registry: ClassRegistry
    tensors: Mapping[str, Tensor] = field(repr=False)

    def __post_init__(self) -> None:
        if len(self.registry) != self.config.num_classes:
            raise ShapeError(
                "WeightBundle", f"{self.config.num_classes} classes", len(self.registry)
            )
        expected = tensor_shapes(self.config)
        missing = sorted(set(expected) - set(self.tensors))
        extra = sorted(set(self.tensors) - set(expected))
        if missing or extra:
            raise ShapeError(
                "WeightBundle", "no missing or extra tensors", f"missing {missing}, extra {extra}"
            )

        frozen: dict[str, Tensor] = {}
        for name, shape in expected.items():
            arr = np.array(self.tensors[name], dtype=np.float32)
            if arr.shape != shape:
                raise ShapeError(f"WeightBundle[{name}]", shape, arr.shape)
            if not np.all(np.isfinite(arr)):
                raise ShapeError(f"WeightBundle[{name}]", "finite values", "non-finite values")
            arr.setflags(write=False)
            frozen[name] = arr
        object.__setattr__(self, "tensors", frozen)

    def __getitem__(self, name: str) -> Tensor:
        return self.tensors[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self.tensors)

    def replace(self, updates: Mapping[str, npt.ArrayLike]) -> WeightBundle:
        """Copy with some tensors swapped out."""
        merged: dict[str, npt.ArrayLike] = dict(self.tensors)
        merged.update(updates)
        return WeightBundle(self.config, self.registry, merged)  # type: ignore[arg-type]

    def without_biases(self) -> WeightBundle:
        """Copy with every ``*.bias`` tensor zeroed (normalization biases included)."""
        return self.replace(
            {name: np.zeros_like(t) for name, t in self.tensors.items() if name.endswith(".bias")}
        )

    def param_count(self) -> int:
        return sum(int(t.size) for t in self.tensors.values())


def init_random(
    config: ModelConfig,
    seed: int,
    registry: ClassRegistry | None = None,
) -> WeightBundle:
    """Deterministic random weights, each drawn from ``U(-1/sqrt(fan_in), 1/sqrt(fan_in))``."""
    rng = np.random.default_rng(seed)
    tensors: dict[str, Tensor] = {}
    for name, shape in tensor_shapes(config).items():
        bound = 1.0 / math.sqrt(_fan_in(name, config))
        tensors[name] = rng.uniform(-bound, bound, size=shape).astype(np.float32)
    return WeightBundle(config, registry or _registry_for(config), tensors)


def init_zeros(config: ModelConfig, registry: ClassRegistry | None = None) -> WeightBundle:
    tensors = {name: np.zeros(shape, np.float32) for name, shape in tensor_shapes(config).items()}
    return WeightBundle(config, registry or _registry_for(config), tensors)


def _registry_for(config: ModelConfig) -> ClassRegistry:
    default = ClassRegistry.default()
    if len(default) == config.num_classes:
        return default
    return ClassRegistry(tuple(f"class_{i}" for i in range(config.num_classes)))
