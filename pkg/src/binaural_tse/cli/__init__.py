"""Command-line interface: ``btse`` / ``python -m binaural_tse.cli``."""

from binaural_tse.cli.schema import RunManifest

__all__ = ["RunManifest"]
