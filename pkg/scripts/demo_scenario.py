#!/usr/bin/env python3
"""Walk a two-session search flow and print the resulting timelines.

Simulates a search spread over two sittings: a 15-minute first sitting (queries
plus saves), a 7-day break, then a resumed sitting with a re-issued
query, a narrower query, and a removal. Prints the topic's overview and
detailed timelines as text.
"""

import argparse
import io
import json
import sys
import tempfile

from searchtrail.activity import ActivityModel
from searchtrail.catalog import Catalog
from searchtrail.clock import format_ts
from searchtrail.store import LogStore
from searchtrail.textindex import build_index, search

sys.path.insert(0, str(__import__("pathlib").Path(__file__).parent))
from generate_catalog import make_record  # noqa: E402

MIN = 60_000
DAY = 24 * 60 * MIN
T0 = 1_717_200_000_000


def render(view, indent="  "):
    lines = [f"timeline[{view.detail}] topic={view.topic_id}"]
    for session in view.sessions:
        lines.append(f"{indent}session {format_ts(session.start_at)} .. {format_ts(session.end_at)}")
        for group in session.query_groups:
            lines.append(f"{indent*2}[query] {group.query_text!r} @ {format_ts(group.issued_at)}")
            for entry in group.saves:
                marker = "x" if entry.removed else "+"
                lines.append(
                    f"{indent*3}{marker} ({entry.resource_type}) {entry.title}"
                    f" @ {format_ts(entry.saved_at)}"
                )
    return "\n".join(lines)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--store-dir", default=None, help="event store (default: temp dir)")
    args = parser.parse_args()

    import random

    rng = random.Random(7)
    catalog = Catalog()
    records = "\n".join(json.dumps(make_record(rng, i)) for i in range(150))
    catalog.ingest(io.BytesIO(records.encode()))
    index = build_index(catalog)

    store_dir = args.store_dir or tempfile.mkdtemp(prefix="searchtrail-demo-")
    store = LogStore(store_dir)
    model = ActivityModel(catalog, sink=store)
    user = model.create_user()

    def top_hits(text, k=3):
        return [rid for rid, _ in search(index, text, 1, 10).hits[:k]]

    # first sitting: explore and save
    topic, q1 = model.issue_query(user, "indigenous peoples", at=T0)
    for rid in top_hits("indigenous peoples", 2):
        model.save_result(user, topic, q1, rid, at=T0 + 2 * MIN)
    _, q2 = model.issue_query(user, "treaty history", at=T0 + 9 * MIN)
    saved = top_hits("treaty history", 1)
    if saved:
        model.save_result(user, topic, q2, saved[0], at=T0 + 15 * MIN)
    model.rename_topic(user, topic, "First Nations", at=T0 + 15 * MIN)

    # a week later: resume, revisit, narrow down, prune
    resumed = T0 + 7 * DAY
    model.resume_topic(user, topic, at=resumed)
    model.reissue_query(user, topic, q1, at=resumed + MIN)
    _, q3 = model.issue_query(user, "plains nations oral histories", at=resumed + 4 * MIN)
    state = model.get_topic_state(topic)
    drop = sorted(state.active_saves)[0]
    model.remove_result(user, topic, drop, at=resumed + 6 * MIN)

    print(render(model.build_timeline(topic, "overview")))
    print()
    print(render(model.build_timeline(topic, "detailed")))
    print()
    print(f"user={user}")
    print(f"event log: {store.log_path(user)}")
    print(f"replay with: searchtrail sessions --store-dir {store_dir} --user {user} --topic {topic}")
    store.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
