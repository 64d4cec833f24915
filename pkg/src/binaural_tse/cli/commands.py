"""Subcommand implementations.

Each command takes the parsed arguments and a clock, writes its report as
JSON to stdout and a one-line summary to stderr, and returns an exit code.
Errors propagate as :class:`TSEError`; the entry point turns them into a
diagnostic and exit code 1.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import shutil
import sys
from collections.abc import Callable, Iterator
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from pathlib import Path
from typing import Any

from pydantic import BaseModel

from binaural_tse import __version__
from binaural_tse._internal.clock import Clock
from binaural_tse.audio.signal import BinauralSignal, Signal
from binaural_tse.audio.wav import read_wav, write_wav
from binaural_tse.exceptions import ArgumentError, ConfigError
from binaural_tse.metrics.report import evaluate
from binaural_tse.network.bundle import load_bundle, save_bundle
from binaural_tse.network.config import ModelConfig
from binaural_tse.network.weights import WeightBundle, init_random, init_zeros
from binaural_tse.ontology import ClassRegistry, OntologyGraph, other_classes, query_from_labels
from binaural_tse.streaming.bench import bench_chunk
from binaural_tse.streaming.latency import algorithmic_latency
from binaural_tse.streaming.session import process_offline
from binaural_tse.synthesis.policy import MixPolicy, SceneCatalog, make_random_scene_spec
from binaural_tse.synthesis.scene import build_scene, write_scene
from binaural_tse.synthesis.schema import SceneSpec
from binaural_tse.synthesis.sources import WavSourceLoader
from binaural_tse.synthesis.stores.base import IRStore
from binaural_tse.synthesis.stores.manifest import ManifestIRStore

from .schema import RunManifest, write_json_report

logger = logging.getLogger(__name__)

THREADS_ENV = "BTSE_THREADS"

Handler = Callable[[argparse.Namespace, Clock], int]


# ── helpers ──────────────────────────────────────────────────


def _emit(report: BaseModel | list[Any], summary: str) -> None:
    if isinstance(report, BaseModel):
        print(report.model_dump_json(indent=2), file=sys.stdout)
    else:
        print(json.dumps(report), file=sys.stdout)
    print(summary, file=sys.stderr)


def synth_threads() -> int:
    """Worker cap from ``BTSE_THREADS``, else the CPU count."""
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return os.cpu_count() or 1
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(THREADS_ENV, f"expected an integer, got '{raw}'") from None
    if value < 1:
        raise ConfigError(THREADS_ENV, f"must be >= 1, got {value}")
    return value


@contextmanager
def _cleanup_on_error(out_dir: Path) -> Iterator[None]:
    """Remove ``out_dir`` if it did not exist before and the block fails."""
    created = not out_dir.exists()
    try:
        yield
    except BaseException:
        if created and out_dir.exists():
            logger.info("removing partial output %s", out_dir)
            shutil.rmtree(out_dir, ignore_errors=True)
        raise


def _manifest(
    command: str,
    clock: Clock,
    started: float,
    *,
    config: dict[str, Any] | None = None,
    inputs: dict[str, str] | None = None,
    outputs: list[Path] | None = None,
    seed: int = 0,
) -> RunManifest:
    return RunManifest(
        command=command,
        config=config or {},
        inputs=inputs or {},
        outputs=[str(p) for p in outputs or []],
        seed=seed,
        tool_version=__version__,
        started_at=clock.now(),
        wall_time_s=max(clock.perf_seconds() - started, 0.0),
    )


def _write_report(
    command: str,
    report: BaseModel,
    output: str,
    clock: Clock,
    started: float,
    **manifest: Any,
) -> Path:
    """Write ``report`` to ``output`` and its run manifest next to it."""
    out_path = write_json_report(report, output)
    _manifest(command, clock, started, outputs=[out_path], **manifest).write(
        out_path.with_name(out_path.name + ".manifest.json")
    )
    return out_path


def _require_binaural(signal: Signal, path: Path, operation: str) -> BinauralSignal:
    if not isinstance(signal, BinauralSignal):
        raise ArgumentError(operation, f"'{path}' is mono; a two-channel recording is required")
    return signal


# ── synth ────────────────────────────────────────────────────


def cmd_synth(args: argparse.Namespace, clock: Clock) -> int:
    started = clock.perf_seconds()
    out_dir = Path(args.out_dir)
    store: IRStore = ManifestIRStore(args.ir_manifest)
    if args.split:
        store = store.split(args.split, args.seed)

    if args.spec:
        specs = [SceneSpec.from_json(args.spec)]
        source_dir = Path(args.source_dir or Path(args.spec).parent)
        config: dict[str, Any] = {"spec": args.spec}
    else:
        if not args.catalog:
            raise ArgumentError("synth", "either --spec or --catalog is required")
        policy = MixPolicy.evaluation() if args.eval_mix else MixPolicy()
        catalog = SceneCatalog.from_json(args.catalog, store)
        specs = [make_random_scene_spec(args.seed + i, policy, catalog) for i in range(args.count)]
        source_dir = Path(args.source_dir or Path(args.catalog).parent)
        config = {"policy": policy.model_dump(mode="json"), "catalog": args.catalog}

    sources = WavSourceLoader(source_dir)
    registry = ClassRegistry.default()

    def render(index: int, spec: SceneSpec) -> Path:
        scene_dir = out_dir / f"scene_{index:04d}"
        scene_started = clock.perf_seconds()
        scene = build_scene(spec, store, sources, registry)
        written = write_scene(
            scene, scene_dir, args.encoding, peak_normalize=args.peak_normalize
        )
        _manifest(
            "synth",
            clock,
            scene_started,
            config=config,
            inputs={"ir_manifest": str(args.ir_manifest), "source_dir": str(source_dir)},
            outputs=written,
            seed=spec.seed,
        ).write(scene_dir / "manifest.json")
        return scene_dir

    threads = min(synth_threads(), max(len(specs), 1))
    with _cleanup_on_error(out_dir):
        out_dir.mkdir(parents=True, exist_ok=True)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            dirs = list(pool.map(render, range(len(specs)), specs))

    _emit(
        [str(d) for d in dirs],
        f"synth: {len(dirs)} scene(s) in {clock.perf_seconds() - started:.2f} s "
        f"({threads} worker(s))",
    )
    return 0


# ── extract ──────────────────────────────────────────────────


def cmd_extract(args: argparse.Namespace, clock: Clock) -> int:
    started = clock.perf_seconds()
    weights = load_bundle(args.weights)
    in_path = Path(args.input)
    signal = _require_binaural(read_wav(in_path), in_path, "extract")
    query = query_from_labels(args.labels, weights.registry)

    extracted = process_offline(weights, signal, query)
    result = signal.trimmed(len(extracted)) - extracted if args.subtract else extracted

    out_path = Path(args.output)
    write_wav(result, out_path, args.encoding)
    manifest_path = out_path.with_name(out_path.name + ".manifest.json")
    _manifest(
        "extract",
        clock,
        started,
        config={
            "model": weights.config.model_dump(),
            "labels": list(args.labels),
            "subtract": bool(args.subtract),
        },
        inputs={"weights": str(args.weights), "input": str(in_path)},
        outputs=[out_path],
    ).write(manifest_path)

    mode = "subtract" if args.subtract else "extract"
    print(
        f"extract: {mode} {', '.join(args.labels)} -> {out_path} ({len(result)} samples)",
        file=sys.stderr,
    )
    return 0


# ── eval ─────────────────────────────────────────────────────


def _load_trimmed(paths: list[Path]) -> list[BinauralSignal]:
    signals = [_require_binaural(read_wav(p), p, "eval") for p in paths]
    rates = {s.sample_rate_hz for s in signals}
    if len(rates) > 1:
        raise ArgumentError("eval", f"sample rates differ: {sorted(rates)}")
    shortest = min(len(s) for s in signals)
    if any(len(s) != shortest for s in signals):
        logger.warning("eval: lengths differ, trimming all inputs to %d samples", shortest)
        signals = [s.trimmed(shortest) for s in signals]
    return signals


def cmd_eval(args: argparse.Namespace, clock: Clock) -> int:
    started = clock.perf_seconds()
    paths = [Path(args.estimate), Path(args.reference), Path(args.mixture)]
    est, ref, mix = _load_trimmed(paths)
    report = evaluate(est, ref, mix)

    if args.output:
        _write_report(
            "eval",
            report,
            args.output,
            clock,
            started,
            inputs={
                "estimate": args.estimate,
                "reference": args.reference,
                "mixture": args.mixture,
            },
        )

    _emit(
        report,
        f"eval: SI-SNRi {report.si_snri_db:.2f} dB, dITD {report.delta_itd_us:.1f} us, "
        f"dILD {report.delta_ild_db:.2f} dB",
    )
    return 0


# ── latency / bench ──────────────────────────────────────────


def _config_from_args(args: argparse.Namespace) -> ModelConfig:
    if args.chunk % args.stride != 0:
        raise ArgumentError(
            "latency", f"--chunk ({args.chunk}) must be a multiple of --stride ({args.stride})"
        )
    return ModelConfig.create(
        stride=args.stride,
        chunk_frames=args.chunk // args.stride,
        sample_rate_hz=args.sample_rate,
    )


def cmd_latency(args: argparse.Namespace, clock: Clock) -> int:
    started = clock.perf_seconds()
    config = _config_from_args(args)
    breakdown = algorithmic_latency(config)
    if args.output:
        _write_report(
            "latency", breakdown, args.output, clock, started, config=config.model_dump()
        )
    _emit(
        breakdown,
        f"latency: chunk {breakdown.chunk_samples} + lookahead {breakdown.lookahead_samples} "
        f"samples = {breakdown.reported_ms:.1f} ms",
    )
    return 0


def _weights_from_args(args: argparse.Namespace) -> WeightBundle:
    if args.weights:
        return load_bundle(args.weights)
    config = ModelConfig.create(
        dim=args.dim, stride=args.stride, chunk_frames=args.chunk_frames, heads=args.heads
    )
    return init_random(config, args.seed)


def cmd_bench(args: argparse.Namespace, clock: Clock) -> int:
    started = clock.perf_seconds()
    weights = _weights_from_args(args)
    report = bench_chunk(weights, args.runs, seed=args.seed, clock=clock)
    if args.output:
        _write_report(
            "bench",
            report,
            args.output,
            clock,
            started,
            config={"model": weights.config.model_dump(), "runs": args.runs},
            inputs={"weights": str(args.weights)} if args.weights else {},
            seed=args.seed,
        )
    _emit(
        report,
        f"bench: mean {report.mean_ms:.3f} ms per {report.chunk_ms:.2f} ms chunk "
        f"({'real-time' if report.realtime else 'slower than real-time'})",
    )
    return 0


# ── registry / ontology / weights ────────────────────────────


def cmd_classes(args: argparse.Namespace, clock: Clock) -> int:
    registry = load_bundle(args.weights).registry if args.weights else ClassRegistry.default()
    _emit(list(registry.labels), f"classes: {len(registry)} labels")
    return 0


def cmd_other_classes(args: argparse.Namespace, clock: Clock) -> int:
    graph = OntologyGraph.from_json(args.graph)
    others = sorted(other_classes(graph, args.targets))
    _emit(others, f"other-classes: {len(others)} of {len(graph.nodes)} nodes")
    return 0


def cmd_init_weights(args: argparse.Namespace, clock: Clock) -> int:
    started = clock.perf_seconds()
    config = ModelConfig.create(
        dim=args.dim, stride=args.stride, chunk_frames=args.chunk_frames, heads=args.heads
    )
    bundle = init_zeros(config) if args.zeros else init_random(config, args.seed)
    out_path = Path(args.out)
    save_bundle(bundle, out_path)
    _manifest(
        "init-weights",
        clock,
        started,
        config=config.model_dump(),
        outputs=[out_path],
        seed=args.seed,
    ).write(out_path.with_name(out_path.name + ".manifest.json"))
    print(f"init-weights: {bundle.param_count()} parameters -> {out_path}", file=sys.stderr)
    return 0
