"""Tests for the impulse-response stores."""

import json

import numpy as np
import pytest

from binaural_tse.audio.signal import MonoSignal
from binaural_tse.audio.wav import write_wav
from binaural_tse.exceptions import (
    ArgumentError,
    ConfigError,
    FormatError,
    ResourceIOError,
    SceneError,
)
from binaural_tse.synthesis import InMemoryIRStore, IRKey, ManifestIRStore, write_ir_manifest

from tests.conftest import RATE, delayed_impulse_ir


ENTRY = {"subject": "a", "room": "b", "azimuth_deg": 0, "file": "ir.wav"}


@pytest.fixture
def many_groups():
    """Ten listeners in two rooms: twenty groups of two directions."""
    store = InMemoryIRStore()
    for s in range(10):
        for room in ("r1", "r2"):
            for azimuth in (0.0, 90.0):
                store.add(IRKey(f"s{s:02d}", room, azimuth), delayed_impulse_ir(s))
    return store


def test_memory_store_lookup(ir_store):
    assert len(ir_store) == 6
    assert IRKey("s01", "r1", 30.0) in ir_store
    ir = ir_store.get(IRKey("s01", "r2", 60))
    assert ir.sample_rate_hz == RATE
    assert ir.right.samples[10] == 1.0


def test_missing_direction(ir_store):
    with pytest.raises(SceneError, match="azimuth 45"):
        ir_store.get(IRKey("s01", "r1", 45.0))


def test_lookup_resamples_and_caches(ir_store):
    key = IRKey("s01", "r1", 0.0)
    ir = ir_store.get(key, 22_050)
    assert ir.sample_rate_hz == 22_050
    assert len(ir) == 32
    assert ir_store.get(key, 22_050) is ir


def test_groups_and_directions(ir_store):
    assert ir_store.groups() == [("s01", "r1"), ("s01", "r2")]
    assert ir_store.directions("s01", "r1") == [0.0, 30.0, 60.0]


def test_split_sizes_and_disjointness(many_groups):
    views = {name: many_groups.split(name, seed=4) for name in ("train", "test", "validation")}
    sizes = {name: len(view.groups()) for name, view in views.items()}
    assert sizes == {"train": 14, "test": 4, "validation": 2}
    seen = [set(view.groups()) for view in views.values()]
    assert set.union(*seen) == set(many_groups.groups())
    assert sum(len(g) for g in seen) == 20
    # every direction of a group travels with it
    assert len(views["test"]) == 8


def test_split_is_deterministic(many_groups):
    assert many_groups.split("test", 1).groups() == many_groups.split("test", 1).groups()


def test_split_view_serves_responses(many_groups):
    view = many_groups.split("validation", 0)
    key = view.keys()[0]
    np.testing.assert_array_equal(view.get(key).data, many_groups.get(key).data)
    other = next(k for k in many_groups.keys() if k.group not in set(view.groups()))
    with pytest.raises(SceneError):
        view.get(other)


def test_unknown_split(many_groups):
    with pytest.raises(ArgumentError, match="holdout"):
        many_groups.split("holdout")


# ── manifest store ───────────────────────────────────────────


def test_manifest_roundtrip(ir_store, tmp_path):
    responses = [(k, ir_store.get(k)) for k in ir_store.keys()]
    manifest = write_ir_manifest(responses, tmp_path / "irs")
    store = ManifestIRStore(manifest)
    assert sorted(store.keys()) == sorted(ir_store.keys())
    for key, ir in responses:
        np.testing.assert_array_equal(store.get(key).data, ir.data)


def test_manifest_missing(tmp_path):
    with pytest.raises(ResourceIOError):
        ManifestIRStore(tmp_path / "manifest.json")


def test_manifest_missing_wav(tmp_path):
    path = tmp_path / "manifest.json"
    path.write_text(json.dumps([{**ENTRY, "file": "x.wav"}]))
    with pytest.raises(ResourceIOError, match="x.wav"):
        ManifestIRStore(path)


@pytest.mark.parametrize(
    "content",
    [
        "not json",
        json.dumps({"subject": "a"}),
        json.dumps([{**ENTRY, "x": 1}]),
    ],
)
def test_manifest_malformed(tmp_path, content):
    write_wav(delayed_impulse_ir(0), tmp_path / "ir.wav")
    path = tmp_path / "manifest.json"
    path.write_text(content)
    with pytest.raises(ConfigError):
        ManifestIRStore(path)


def test_manifest_duplicate_key(tmp_path):
    write_wav(delayed_impulse_ir(0), tmp_path / "ir.wav")
    entry = ENTRY
    path = tmp_path / "manifest.json"
    path.write_text(json.dumps([entry, {**entry, "azimuth_deg": 0.0}]))
    with pytest.raises(ConfigError, match="duplicate"):
        ManifestIRStore(path)


def test_manifest_mono_response(tmp_path):
    write_wav(MonoSignal(np.ones(16, np.float32), RATE), tmp_path / "ir.wav")
    path = tmp_path / "manifest.json"
    path.write_text(json.dumps([ENTRY]))
    store = ManifestIRStore(path)
    with pytest.raises(FormatError, match="stereo"):
        store.get(IRKey("a", "b", 0.0))
