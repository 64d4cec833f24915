"""Entry point for the btse command-line tool.

Usage:
    python -m binaural_tse.cli <command> [options]
    btse <command> [options]

Reports are JSON on stdout; summaries and diagnostics go to stderr.

Exit codes:
    0: Success, all outputs written
    1: Failure (diagnostic on stderr, partial output removed)
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Callable, Sequence
from typing import ClassVar

from binaural_tse import __version__
from binaural_tse._internal.clock import Clock, SystemClock
from binaural_tse.exceptions import TSEError
from binaural_tse.streaming.bench import DEFAULT_RUNS

from . import commands
from .commands import Handler

Configure = Callable[[argparse.ArgumentParser], None]


def _add_model_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--dim", type=int, default=128, help="latent channels D")
    parser.add_argument("--stride", type=int, default=32, help="stride L in samples")
    parser.add_argument("--chunk-frames", type=int, default=13, help="frames per chunk K")
    parser.add_argument("--heads", type=int, default=8, help="decoder attention heads")
    parser.add_argument("--seed", type=int, default=0)


def _configure_synth(p: argparse.ArgumentParser) -> None:
    p.add_argument("--spec", help="render one scene from this spec.json")
    p.add_argument("--catalog", help="catalog JSON for random scenes")
    p.add_argument("--count", type=int, default=1, help="random scenes to draw")
    p.add_argument("--seed", type=int, default=0, help="seed of the first random scene")
    p.add_argument("--eval-mix", action="store_true", help="use the evaluation SNR ranges")
    p.add_argument("--ir-manifest", required=True, help="impulse-response manifest JSON")
    p.add_argument("--split", choices=["train", "test", "validation"], help="IR store split")
    p.add_argument("--source-dir", help="base directory for relative source paths")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--encoding", choices=["float32", "pcm16"], default="float32")
    p.add_argument(
        "--peak-normalize", action="store_true", help="scale the scene so the mixture peak is 1.0"
    )


def _configure_extract(p: argparse.ArgumentParser) -> None:
    p.add_argument("--weights", required=True, help="weight bundle file")
    p.add_argument("--input", required=True, help="two-channel WAV at the model rate")
    p.add_argument("--labels", nargs="+", required=True, help="target classes")
    p.add_argument("--output", required=True)
    p.add_argument("--subtract", action="store_true", help="write input minus extraction")
    p.add_argument("--encoding", choices=["float32", "pcm16"], default="float32")


def _configure_eval(p: argparse.ArgumentParser) -> None:
    p.add_argument("--estimate", required=True)
    p.add_argument("--reference", required=True)
    p.add_argument("--mixture", required=True)
    p.add_argument("--output", help="also write the report to this JSON file")


def _configure_latency(p: argparse.ArgumentParser) -> None:
    p.add_argument("--chunk", type=int, default=416, help="chunk size K*L in samples")
    p.add_argument("--stride", type=int, default=32, help="lookahead L in samples")
    p.add_argument("--sample-rate", type=int, default=44_100)
    p.add_argument("--output", help="also write the breakdown to this JSON file")


def _configure_bench(p: argparse.ArgumentParser) -> None:
    p.add_argument("--weights", help="weight bundle; random weights when omitted")
    p.add_argument("--runs", type=int, default=DEFAULT_RUNS)
    p.add_argument("--output", help="also write the report to this JSON file")
    _add_model_flags(p)


def _configure_classes(p: argparse.ArgumentParser) -> None:
    p.add_argument("--weights", help="print this bundle's registry instead of the default")


def _configure_other_classes(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", required=True, help='JSON {"nodes": [...], "edges": [[p, c]]}')
    p.add_argument("--targets", nargs="+", required=True)


def _configure_init_weights(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", required=True, help="bundle file to write")
    p.add_argument("--zeros", action="store_true", help="all-zero weights")
    _add_model_flags(p)


class CommandRegistry:
    """Maps subcommand names to their parser setup and handler."""

    _registry: ClassVar[dict[str, tuple[str, Handler, Configure]]] = {
        "synth": ("render binaural scenes", commands.cmd_synth, _configure_synth),
        "extract": ("extract target classes", commands.cmd_extract, _configure_extract),
        "eval": ("compute separation metrics", commands.cmd_eval, _configure_eval),
        "latency": ("algorithmic latency", commands.cmd_latency, _configure_latency),
        "bench": ("per-chunk runtime", commands.cmd_bench, _configure_bench),
        "classes": ("list target classes", commands.cmd_classes, _configure_classes),
        "other-classes": (
            "classes unrelated to the targets",
            commands.cmd_other_classes,
            _configure_other_classes,
        ),
        "init-weights": (
            "write a random or zero weight bundle",
            commands.cmd_init_weights,
            _configure_init_weights,
        ),
    }

    @classmethod
    def names(cls) -> list[str]:
        return list(cls._registry)

    @classmethod
    def handler(cls, name: str) -> Handler:
        return cls._registry[name][1]

    @classmethod
    def build_parser(cls) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(
            prog="btse", description="Binaural target sound extraction"
        )
        parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
        parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
        sub = parser.add_subparsers(dest="command", required=True)
        for name, (help_text, _, configure) in cls._registry.items():
            configure(sub.add_parser(name, help=help_text))
        return parser


def main(argv: Sequence[str] | None = None, clock: Clock | None = None) -> int:
    """Main entry point.

    Returns:
        Exit code (0 for success, 1 for failure)
    """
    parser = CommandRegistry.build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return CommandRegistry.handler(args.command)(args, clock or SystemClock())
    except TSEError as exc:
        print(f"btse {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
