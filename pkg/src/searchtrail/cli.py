"""Operator command line: ingest catalogs, serve the API, report sessions.

Flags fall back to environment variables named TS_<FLAG> (uppercased,
dashes to underscores), e.g. --store-dir / TS_STORE_DIR.
"""

import argparse
import json
import os
import sys
from pathlib import Path

from searchtrail.catalog import Catalog, load_catalog
from searchtrail.clock import format_ts
from searchtrail.errors import ServiceError
from searchtrail.store import LogStore, event_from_record, load_model
from searchtrail.textindex import build_index, load_index, save_index
from searchtrail.timeline import compute_session_durations, segment_sessions

CATALOG_FILE = "catalog.jsonl"
INDEX_FILE = "index.json"


def _env(name: str, default=None):
    return os.environ.get(f"TS_{name}", default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="searchtrail")
    sub = parser.add_subparsers(dest="command", required=True)

    ingest = sub.add_parser("ingest", help="ingest a catalog file and build the search index")
    ingest.add_argument("--catalog", default=_env("CATALOG"), help="catalog JSONL file")
    ingest.add_argument("--index-dir", default=_env("INDEX_DIR"), help="output directory")
    ingest.add_argument("--strict", action="store_true", help="abort on the first invalid record")
    ingest.add_argument("--format", default=_env("FORMAT", "text"), choices=("text", "json"))

    serve = sub.add_parser("serve", help="run the search service")
    serve.add_argument("--index-dir", default=_env("INDEX_DIR"))
    serve.add_argument("--store-dir", default=_env("STORE_DIR"))
    serve.add_argument("--host", default=_env("HOST", "127.0.0.1"))
    serve.add_argument("--port", type=int, default=int(_env("PORT", "8080")))
    serve.add_argument("--idle-gap-min", type=float, default=float(_env("IDLE_GAP_MIN", "30")))
    serve.add_argument("--cors-origin", default=_env("CORS_ORIGIN", "*"))

    sessions = sub.add_parser("sessions", help="report session durations for one topic")
    sessions.add_argument("--store-dir", default=_env("STORE_DIR"))
    sessions.add_argument("--user", required=True)
    sessions.add_argument("--topic", required=True)
    sessions.add_argument("--idle-gap-min", type=float, default=float(_env("IDLE_GAP_MIN", "30")))
    sessions.add_argument("--format", default=_env("FORMAT", "text"), choices=("text", "json"))

    return parser


def cmd_ingest(args) -> int:
    if not args.catalog or not args.index_dir:
        print("ingest requires --catalog and --index-dir", file=sys.stderr)
        return 1
    catalog_path = Path(args.catalog)
    if not catalog_path.is_file():
        print(f"catalog file not found: {catalog_path}", file=sys.stderr)
        return 1
    catalog, stats = load_catalog(catalog_path, strict=args.strict)
    index = build_index(catalog)
    index_dir = Path(args.index_dir)
    index_dir.mkdir(parents=True, exist_ok=True)
    from searchtrail.catalog import dump_catalog

    dump_catalog(catalog, index_dir / CATALOG_FILE)
    save_index(index, index_dir / INDEX_FILE)
    if args.format == "json":
        print(json.dumps({**stats.to_dict(), "index_dir": str(index_dir)}, sort_keys=True))
    else:
        print(
            f"read={stats.records_read} accepted={stats.records_accepted} "
            f"rejected={stats.records_rejected}"
        )
        for line_no, reason in stats.reject_reasons:
            print(f"  line {line_no}: {reason}")
    return 0


def load_index_dir(index_dir) -> tuple[Catalog, "object"]:
    index_dir = Path(index_dir)
    catalog_path = index_dir / CATALOG_FILE
    index_path = index_dir / INDEX_FILE
    if not catalog_path.is_file() or not index_path.is_file():
        raise FileNotFoundError(f"index dir {index_dir} is missing {CATALOG_FILE}/{INDEX_FILE}")
    catalog, _ = load_catalog(catalog_path)
    return catalog, load_index(index_path)


def cmd_serve(args) -> int:
    if not args.index_dir or not args.store_dir:
        print("serve requires --index-dir and --store-dir", file=sys.stderr)
        return 1
    if args.idle_gap_min <= 0:
        print("--idle-gap-min must be > 0", file=sys.stderr)
        return 1
    try:
        catalog, index = load_index_dir(args.index_dir)
    except FileNotFoundError as exc:
        print(str(exc), file=sys.stderr)
        return 1

    import signal

    import uvicorn

    from searchtrail.api import create_app

    idle_gap_ms = int(args.idle_gap_min * 60 * 1000)
    model, store = load_model(args.store_dir, catalog, idle_gap_ms=idle_gap_ms)
    app = create_app(catalog, index, model, store, cors_origins=(args.cors_origin,))

    # uvicorn re-raises a captured SIGTERM after its graceful shutdown; our
    # handler turns that into exit code 0, after the snapshot flush below.
    def exit_cleanly(signum, frame):
        raise SystemExit(0)

    try:
        previous = signal.signal(signal.SIGTERM, exit_cleanly)
    except ValueError:  # not in the main thread; rely on default behaviour
        previous = None
    try:
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    except KeyboardInterrupt:
        pass
    finally:
        if previous is not None:
            signal.signal(signal.SIGTERM, previous)
        store.write_snapshots(model)
        store.close()
    return 0


def cmd_sessions(args) -> int:
    if not args.store_dir:
        print("sessions requires --store-dir", file=sys.stderr)
        return 1
    if args.idle_gap_min <= 0:
        print("--idle-gap-min must be > 0", file=sys.stderr)
        return 1
    store = LogStore(args.store_dir)
    if not store.has_user(args.user):
        print(f"unknown user: {args.user}", file=sys.stderr)
        return 1
    events = []
    for _, record in store.read_records(args.user):
        _, event = event_from_record(record)
        if event.topic_id == args.topic:
            events.append(event)
    idle_gap_ms = int(args.idle_gap_min * 60 * 1000)
    sessions = segment_sessions(events, idle_gap_ms)
    durations = dict(compute_session_durations(events, idle_gap_ms))
    rows = [
        {
            "session_id": session.session_id,
            "start_at": format_ts(session.start_at),
            "end_at": format_ts(session.end_at),
            "duration_s": durations[session.session_id],
        }
        for session in sessions
    ]
    if args.format == "json":
        print(json.dumps({"user": args.user, "topic": args.topic, "sessions": rows}, sort_keys=True))
    else:
        print(f"{'session':<8} {'start':<24} {'end':<24} {'duration_s':>10}")
        for row in rows:
            print(
                f"{row['session_id']:<8} {row['start_at']:<24} {row['end_at']:<24} "
                f"{row['duration_s']:>10.1f}"
            )
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "ingest":
            return cmd_ingest(args)
        if args.command == "serve":
            return cmd_serve(args)
        if args.command == "sessions":
            return cmd_sessions(args)
    except ServiceError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    return 2


if __name__ == "__main__":
    sys.exit(main())
