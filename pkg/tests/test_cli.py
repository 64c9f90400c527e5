import json
import os
import signal
import socket
import subprocess
import sys
import time
import urllib.request

import pytest

from searchtrail.cli import main
from searchtrail.store import LogStore, event_from_record
from searchtrail.timeline import compute_session_durations

from conftest import DEMO_RECORDS, T0, make_model

MIN = 60_000
DAY = 24 * 60 * MIN


def write_catalog_file(path, records=DEMO_RECORDS):
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record) + "\n")
    return path


@pytest.fixture
def catalog_file(tmp_path):
    return write_catalog_file(tmp_path / "catalog.jsonl")


# -- ingest ----------------------------------------------------------------

def test_ingest_prints_stats(catalog_file, tmp_path, capsys):
    rc = main(["ingest", "--catalog", str(catalog_file), "--index-dir", str(tmp_path / "idx")])
    assert rc == 0
    out = capsys.readouterr().out
    assert f"accepted={len(DEMO_RECORDS)}" in out
    assert (tmp_path / "idx" / "index.json").is_file()
    assert (tmp_path / "idx" / "catalog.jsonl").is_file()


def test_ingest_json_format(catalog_file, tmp_path, capsys):
    rc = main(["ingest", "--catalog", str(catalog_file), "--index-dir", str(tmp_path / "idx"),
               "--format", "json"])
    assert rc == 0
    stats = json.loads(capsys.readouterr().out)
    assert stats["records_accepted"] == len(DEMO_RECORDS)
    assert stats["records_rejected"] == 0


def test_ingest_missing_file_fails(tmp_path, capsys):
    rc = main(["ingest", "--catalog", str(tmp_path / "nope.jsonl"), "--index-dir", str(tmp_path / "idx")])
    assert rc == 1
    assert "not found" in capsys.readouterr().err


def test_ingest_strict_aborts_on_bad_record(tmp_path, capsys):
    path = tmp_path / "catalog.jsonl"
    path.write_text(json.dumps(DEMO_RECORDS[0]) + "\n{broken\n")
    rc = main(["ingest", "--catalog", str(path), "--index-dir", str(tmp_path / "idx"), "--strict"])
    assert rc == 1


def test_ingest_rerun_is_byte_identical(catalog_file, tmp_path):
    for name in ("idx1", "idx2"):
        assert main(["ingest", "--catalog", str(catalog_file), "--index-dir", str(tmp_path / name)]) == 0
    for filename in ("index.json", "catalog.jsonl"):
        assert (tmp_path / "idx1" / filename).read_bytes() == (tmp_path / "idx2" / filename).read_bytes()


def test_format_env_fallback(catalog_file, tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("TS_FORMAT", "json")
    rc = main(["ingest", "--catalog", str(catalog_file), "--index-dir", str(tmp_path / "idx")])
    assert rc == 0
    json.loads(capsys.readouterr().out)  # parses -> env fallback applied


# -- sessions ---------------------------------------------------------------

@pytest.fixture
def two_burst_store(tmp_path, demo_catalog):
    """15-minute burst, 7-day gap, short resumed burst."""
    store = LogStore(tmp_path / "store", durable=False)
    model = make_model(demo_catalog, sink=store)
    user_id = model.create_user()
    topic_id, q1 = model.issue_query(user_id, "french revolution", at=T0)
    model.save_result(user_id, topic_id, q1, "b004", at=T0 + 5 * MIN)
    model.save_result(user_id, topic_id, q1, "b005", at=T0 + 15 * MIN)
    resume_at = T0 + 7 * DAY
    model.resume_topic(user_id, topic_id, at=resume_at)
    model.issue_query(user_id, "bastille", at=resume_at + 2 * MIN)
    store.close()
    return store, user_id, topic_id


def test_sessions_two_bursts_two_rows(two_burst_store, capsys):
    store, user_id, topic_id = two_burst_store
    rc = main(["sessions", "--store-dir", str(store.root), "--user", user_id,
               "--topic", topic_id, "--format", "json"])
    assert rc == 0
    rows = json.loads(capsys.readouterr().out)["sessions"]
    assert [row["session_id"] for row in rows] == [1, 2]
    assert rows[0]["duration_s"] == 900.0
    assert rows[1]["duration_s"] == 120.0


def test_sessions_text_table(two_burst_store, capsys):
    store, user_id, topic_id = two_burst_store
    rc = main(["sessions", "--store-dir", str(store.root), "--user", user_id, "--topic", topic_id])
    assert rc == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].split() == ["session", "start", "end", "duration_s"]
    assert len(lines) == 3


def test_sessions_empty_topic(two_burst_store, capsys):
    store, user_id, _ = two_burst_store
    rc = main(["sessions", "--store-dir", str(store.root), "--user", user_id,
               "--topic", "t-none", "--format", "json"])
    assert rc == 0
    assert json.loads(capsys.readouterr().out)["sessions"] == []


def test_sessions_unknown_user_fails(two_burst_store, capsys):
    store, _, topic_id = two_burst_store
    rc = main(["sessions", "--store-dir", str(store.root), "--user", "ghost", "--topic", topic_id])
    assert rc == 1
    assert "unknown user" in capsys.readouterr().err


def test_sessions_match_library_computation(two_burst_store, capsys):
    store, user_id, topic_id = two_burst_store
    main(["sessions", "--store-dir", str(store.root), "--user", user_id,
          "--topic", topic_id, "--format", "json"])
    rows = json.loads(capsys.readouterr().out)["sessions"]
    events = [event_from_record(r)[1] for _, r in LogStore(store.root).read_records(user_id)
              if r["topic_id"] == topic_id]
    expected = compute_session_durations(events)
    assert [(row["session_id"], row["duration_s"]) for row in rows] == expected


# -- serve -------------------------------------------------------------------

def free_port() -> int:
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        return sock.getsockname()[1]


def http_json(method, url, payload=None):
    data = json.dumps(payload).encode() if payload is not None else None
    request = urllib.request.Request(url, data=data, method=method,
                                     headers={"content-type": "application/json"})
    with urllib.request.urlopen(request) as response:
        return response.status, json.loads(response.read() or b"{}")


def wait_for_server(port, timeout=15.0):
    deadline = time.monotonic() + timeout
    while time.monotonic() < deadline:
        try:
            with socket.create_connection(("127.0.0.1", port), timeout=0.5):
                return
        except OSError:
            time.sleep(0.1)
    raise TimeoutError(f"server on port {port} never came up")


def serve_proc(index_dir, store_dir, port):
    return subprocess.Popen(
        [sys.executable, "-m", "searchtrail.cli", "serve",
         "--index-dir", str(index_dir), "--store-dir", str(store_dir), "--port", str(port)],
        stdout=subprocess.PIPE, stderr=subprocess.STDOUT,
    )


def test_serve_sigterm_clean_exit_and_state_resumes(catalog_file, tmp_path):
    index_dir = tmp_path / "idx"
    store_dir = tmp_path / "store"
    assert main(["ingest", "--catalog", str(catalog_file), "--index-dir", str(index_dir)]) == 0

    port = free_port()
    proc = serve_proc(index_dir, store_dir, port)
    try:
        wait_for_server(port)
        base = f"http://127.0.0.1:{port}"
        status, _ = None, None
        try:
            urllib.request.urlopen(f"{base}/api/users/ghost/topics")
        except urllib.error.HTTPError as exc:
            status = exc.code
        assert status == 404

        _, user = http_json("POST", f"{base}/api/users")
        _, serp = http_json("POST", f"{base}/api/users/{user['user_id']}/queries",
                            {"text": "indigenous people"})
        topic_id = serp["overview"]["topic_id"]
        http_json("POST", f"{base}/api/topics/{topic_id}/saves",
                  {"query_event_id": serp["query_event_id"], "resource_id": "b001"})
        _, timeline_before = http_json("GET", f"{base}/api/topics/{topic_id}/timeline?detail=detailed")
    finally:
        proc.send_signal(signal.SIGTERM)
        assert proc.wait(timeout=15) == 0

    # restart: state identical
    port2 = free_port()
    proc = serve_proc(index_dir, store_dir, port2)
    try:
        wait_for_server(port2)
        base = f"http://127.0.0.1:{port2}"
        _, timeline_after = http_json("GET", f"{base}/api/topics/{topic_id}/timeline?detail=detailed")
        assert timeline_after == timeline_before
    finally:
        proc.send_signal(signal.SIGTERM)
        assert proc.wait(timeout=15) == 0
