"""Timestamp helpers: UTC, millisecond precision, ISO-8601 wire format."""

import time
from datetime import datetime, timezone


def now_ms() -> int:
    return int(time.time() * 1000)


def format_ts(ms: int) -> str:
    """Epoch milliseconds -> '2024-01-01T09:30:00.000Z'."""
    dt = datetime.fromtimestamp(ms / 1000.0, tz=timezone.utc)
    return dt.strftime("%Y-%m-%dT%H:%M:%S.") + f"{ms % 1000:03d}Z"


def parse_ts(text: str) -> int:
    """ISO-8601 UTC string -> epoch milliseconds.

    Accepts a trailing 'Z' or an explicit offset; fractional seconds are
    optional and truncated to milliseconds.
    """
    raw = text.strip()
    if raw.endswith(("Z", "z")):
        raw = raw[:-1] + "+00:00"
    dt = datetime.fromisoformat(raw)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return round(dt.timestamp() * 1000)
