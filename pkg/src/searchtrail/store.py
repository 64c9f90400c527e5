"""Durable append-only event log with snapshot-accelerated loading.

One JSON Lines log per user under events/; one snapshot document per user
under snapshots/. Appends are flushed (and fsynced when durable) before
the call returns: an acknowledged event survives a process kill. Loading
replays every record through the activity-model fold; a torn trailing
line is discarded with a warning, any other unreadable record is fatal.
"""

import json
import logging
import os
from pathlib import Path

from searchtrail.activity import ActivityModel
from searchtrail.catalog import Catalog
from searchtrail.clock import format_ts, now_ms, parse_ts
from searchtrail.errors import CorruptLogError, StorageError
from searchtrail.events import EVENT_KINDS, ActivityEvent
from searchtrail.timeline import DEFAULT_IDLE_GAP_MS

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


def record_from_event(user_id: str, event: ActivityEvent) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "user_id": user_id,
        "topic_id": event.topic_id,
        "event_id": event.event_id,
        "at": format_ts(event.at),
        "kind": event.kind,
        "payload": event.payload,
    }


def event_from_record(record: dict) -> tuple[str, ActivityEvent]:
    """Validate a decoded record; raises ValueError on any shape problem."""
    if not isinstance(record, dict):
        raise ValueError("record is not an object")
    if record.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {record.get('schema_version')!r}")
    for key in ("user_id", "topic_id", "event_id", "at", "kind"):
        if not isinstance(record.get(key), str) or not record[key]:
            raise ValueError(f"missing field {key}")
    if record["kind"] not in EVENT_KINDS:
        raise ValueError(f"unknown kind {record['kind']!r}")
    payload = record.get("payload")
    if not isinstance(payload, dict):
        raise ValueError("missing payload")
    return record["user_id"], ActivityEvent(
        event_id=record["event_id"],
        topic_id=record["topic_id"],
        at=parse_ts(record["at"]),
        kind=record["kind"],
        payload=payload,
    )


class LogStore:
    """Filesystem-backed event log; single writer per user log."""

    def __init__(self, root, durable: bool = True):
        self.root = Path(root)
        self.durable = durable
        self.events_dir = self.root / "events"
        self.snapshots_dir = self.root / "snapshots"
        self.events_dir.mkdir(parents=True, exist_ok=True)
        self.snapshots_dir.mkdir(parents=True, exist_ok=True)
        self._handles: dict[str, object] = {}
        self._last_ids: dict[tuple[str, str], str] = {}

    # -- users ----------------------------------------------------------

    def log_path(self, user_id: str) -> Path:
        return self.events_dir / f"{user_id}.log"

    def register_user(self, user_id: str) -> None:
        """A user exists iff their log file exists, even when empty."""
        path = self.log_path(user_id)
        if not path.exists():
            path.touch()
            if self.durable:
                self._fsync_dir(self.events_dir)

    def has_user(self, user_id: str) -> bool:
        return self.log_path(user_id).exists()

    def user_ids(self) -> list[str]:
        return sorted(path.stem for path in self.events_dir.glob("*.log"))

    # -- appends --------------------------------------------------------

    def append_event(self, user_id: str, event: ActivityEvent) -> None:
        """Durably append one record; rejects out-of-order event ids."""
        key = (user_id, event.topic_id)
        last = self._last_ids.get(key)
        if last is not None and event.event_id <= last:
            raise StorageError(
                f"out-of-order event {event.event_id} for topic {event.topic_id} (last {last})"
            )
        line = json.dumps(record_from_event(user_id, event), sort_keys=True, ensure_ascii=False)
        handle = self._handles.get(user_id)
        if handle is None:
            handle = open(self.log_path(user_id), "a", encoding="utf-8")
            self._handles[user_id] = handle
        handle.write(line + "\n")
        handle.flush()
        if self.durable:
            os.fsync(handle.fileno())
        self._last_ids[key] = event.event_id

    def close(self) -> None:
        for handle in self._handles.values():
            handle.close()
        self._handles.clear()

    # -- reads ---------------------------------------------------------

    def read_records(self, user_id: str):
        """Yield (line_no, record) for one user's log, oldest first.

        The final line may be a torn partial write: it is dropped with a
        warning. Bad records anywhere else raise CorruptLogError.
        """
        path = self.log_path(user_id)
        try:
            data = path.read_text(encoding="utf-8")
        except FileNotFoundError:
            return
        lines = data.split("\n")
        last_content = max((i for i, line in enumerate(lines) if line.strip()), default=-1)
        for i, line in enumerate(lines):
            if not line.strip():
                continue
            line_no = i + 1
            try:
                record = json.loads(line)
                event_from_record(record)  # shape check only
            except (json.JSONDecodeError, ValueError) as exc:
                if i == last_content:
                    logger.warning(
                        "%s:%d: discarding torn trailing record (%s)", path, line_no, exc
                    )
                    return
                raise CorruptLogError(path, line_no, str(exc))
            self._last_ids[(user_id, record["topic_id"])] = record["event_id"]
            yield line_no, record

    def export_text(self, user_id: str) -> str:
        return self.log_path(user_id).read_text(encoding="utf-8")

    # -- snapshots -------------------------------------------------------

    def snapshot_path(self, user_id: str) -> Path:
        return self.snapshots_dir / f"{user_id}.json"

    def write_snapshot(self, model: ActivityModel, user_id: str) -> Path:
        """Serialize one user's replayable state; atomic replace."""
        topics = []
        as_of = {}
        for topic_id in model.topic_ids(user_id):
            events = model.events(topic_id)
            topics.append(
                {
                    "topic_id": topic_id,
                    "events": [
                        {
                            "topic_id": e.topic_id,
                            "event_id": e.event_id,
                            "at": format_ts(e.at),
                            "kind": e.kind,
                            "payload": e.payload,
                        }
                        for e in events
                    ],
                }
            )
            if events:
                as_of[topic_id] = events[-1].event_id
        snapshot = {
            "schema_version": SCHEMA_VERSION,
            "user_id": user_id,
            "ongoing_topic_id": model.ongoing_topic_id(user_id),
            "as_of": as_of,
            "topics": topics,
        }
        path = self.snapshot_path(user_id)
        tmp = path.with_suffix(".json.tmp")
        tmp.write_text(json.dumps(snapshot, sort_keys=True, ensure_ascii=False), encoding="utf-8")
        os.replace(tmp, path)
        return path

    def write_snapshots(self, model: ActivityModel) -> list[Path]:
        return [self.write_snapshot(model, uid) for uid in model.user_ids()]

    def read_snapshot(self, user_id: str) -> dict | None:
        """None when absent, unreadable, or version-mismatched (full replay)."""
        path = self.snapshot_path(user_id)
        if not path.exists():
            return None
        try:
            snapshot = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            logger.warning("%s: ignoring unreadable snapshot (%s)", path, exc)
            return None
        if not isinstance(snapshot, dict) or snapshot.get("schema_version") != SCHEMA_VERSION:
            logger.warning("%s: ignoring snapshot with mismatched schema_version", path)
            return None
        return snapshot

    @staticmethod
    def _fsync_dir(directory: Path) -> None:
        fd = os.open(directory, os.O_RDONLY)
        try:
            os.fsync(fd)
        finally:
            os.close(fd)


def load_model(
    store_dir,
    catalog: Catalog,
    idle_gap_ms: int = DEFAULT_IDLE_GAP_MS,
    clock=now_ms,
    durable: bool = True,
    use_snapshots: bool = True,
) -> tuple[ActivityModel, LogStore]:
    """Rebuild the full in-memory state, then wire the store as the sink.

    Per user: apply the snapshot when one is usable, then replay the log
    tail (records newer than the snapshot's per-topic as-of markers).
    """
    store = LogStore(store_dir, durable=durable)
    model = ActivityModel(catalog, idle_gap_ms=idle_gap_ms, clock=clock)
    for user_id in store.user_ids():
        model.register_user(user_id)
        as_of: dict[str, str] = {}
        snapshot = store.read_snapshot(user_id) if use_snapshots else None
        if snapshot is not None:
            _apply_snapshot(model, user_id, snapshot)
            as_of = dict(snapshot.get("as_of", {}))
        for line_no, record in store.read_records(user_id):
            record_user, event = event_from_record(record)
            if record_user != user_id:
                raise CorruptLogError(
                    store.log_path(user_id), line_no, f"record belongs to user {record_user}"
                )
            marker = as_of.get(event.topic_id)
            if marker is not None and event.event_id <= marker:
                continue  # already covered by the snapshot
            try:
                model.apply_event(user_id, event)
            except Exception as exc:
                raise CorruptLogError(store.log_path(user_id), line_no, str(exc))
    model.attach_sink(store)
    return model, store


def _apply_snapshot(model: ActivityModel, user_id: str, snapshot: dict) -> None:
    for topic in snapshot.get("topics", []):
        for raw in topic.get("events", []):
            event = ActivityEvent(
                event_id=raw["event_id"],
                topic_id=raw["topic_id"],
                at=parse_ts(raw["at"]),
                kind=raw["kind"],
                payload=raw["payload"],
            )
            model.apply_event(user_id, event)
    # Cross-topic event interleaving is not stored per-user, so the fold's
    # ongoing derivation is overridden by the recorded pointer.
    model.set_ongoing(user_id, snapshot.get("ongoing_topic_id"))
