"""Clock abstraction for testable timing."""

from __future__ import annotations

import time
from datetime import datetime, timezone
from typing import Protocol


class Clock(Protocol):
    """Wall time for manifests and a monotonic counter for benchmarks.

    Inject a fake in tests.
    """

    def now(self) -> datetime: ...

    def perf_seconds(self) -> float: ...


class SystemClock:
    """Default clock backed by the real system time."""

    def now(self) -> datetime:
        return datetime.now(timezone.utc)

    def perf_seconds(self) -> float:
        return time.perf_counter()
