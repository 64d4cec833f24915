"""Report schemas written by the command-line tools."""

from __future__ import annotations

import json
from datetime import datetime
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field

from binaural_tse.exceptions import ResourceIOError


class RunManifest(BaseModel):
    """Provenance record written alongside every command's outputs.

    Attributes:
        command:      Subcommand name.
        config:       Resolved configuration (model config, policy or spec).
        inputs:       Role -> input path.
        outputs:      Paths written by the command.
        seed:         Seed used; always echoed, ``0`` by default.
        tool_version: Package version.
        started_at:   UTC start time.
        wall_time_s:  Elapsed seconds.
    """

    command: str
    config: dict[str, Any] = Field(default_factory=dict)
    inputs: dict[str, str] = Field(default_factory=dict)
    outputs: list[str] = Field(default_factory=list)
    seed: int = 0
    tool_version: str
    started_at: datetime
    wall_time_s: float = Field(ge=0.0)

    def write(self, path: str | Path) -> Path:
        path = Path(path)
        try:
            path.write_text(json.dumps(self.model_dump(mode="json"), indent=2), encoding="utf-8")
        except OSError as exc:
            raise ResourceIOError(str(path), str(exc)) from exc
        return path


def write_json_report(report: BaseModel, path: str | Path) -> Path:
    path = Path(path)
    try:
        path.write_text(report.model_dump_json(indent=2), encoding="utf-8")
    except OSError as exc:
        raise ResourceIOError(str(path), str(exc)) from exc
    return path
