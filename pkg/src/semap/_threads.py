"""Thread-count policy: SEMAP_THREADS caps internal parallelism."""
from __future__ import annotations

import os


def thread_cap() -> int:
    raw = os.environ.get("SEMAP_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    value = int(raw)
    if value < 1:
        raise ValueError(f"SEMAP_THREADS must be a positive integer, got {raw!r}")
    return value
