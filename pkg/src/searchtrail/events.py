"""Activity event vocabulary.

Events are immutable and append-only; they are the sole source of truth
for topic state and timelines. `event_id` is minted per topic as a fixed
width counter ("e00000001"), so lexicographic order equals append order.
"""

from dataclasses import dataclass

QUERY_ISSUED = "query_issued"
RESULT_SAVED = "result_saved"
RESULT_REMOVED = "result_removed"
TOPIC_RENAMED = "topic_renamed"
TOPIC_RESUMED = "topic_resumed"

EVENT_KINDS = (QUERY_ISSUED, RESULT_SAVED, RESULT_REMOVED, TOPIC_RENAMED, TOPIC_RESUMED)

SOURCE_FRESH = "fresh"
SOURCE_REISSUE = "reissue"


@dataclass(frozen=True)
class ActivityEvent:
    """One timestamped user action within a topic.

    `at` is epoch milliseconds UTC. `payload` is kind-specific:
      query_issued:   query_text, source ("fresh"|"reissue"), reissue_of?
      result_saved:   query_event_id, resource_id
      result_removed: save_event_id
      topic_renamed:  new_title
      topic_resumed:  (empty)
    """

    event_id: str
    topic_id: str
    at: int
    kind: str
    payload: dict


def make_event_id(seq: int) -> str:
    return f"e{seq:08d}"
