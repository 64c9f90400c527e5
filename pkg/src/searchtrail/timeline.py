"""Session segmentation and timeline construction.

Both are pure functions of a topic's event list (plus the catalog for
display fields), so rebuilding from a replayed log yields identical
structures. Sessions split where the inter-event idle gap exceeds the
configured threshold. Timelines are rendered newest-first: sessions
descending, query groups descending within a session, saves ascending
within their query group.
"""

from dataclasses import dataclass, field

from searchtrail.catalog import Catalog
from searchtrail.clock import format_ts
from searchtrail.events import QUERY_ISSUED, RESULT_REMOVED, RESULT_SAVED, ActivityEvent

DETAIL_OVERVIEW = "overview"
DETAIL_DETAILED = "detailed"
DETAIL_LEVELS = (DETAIL_OVERVIEW, DETAIL_DETAILED)

DEFAULT_IDLE_GAP_MS = 30 * 60 * 1000


@dataclass
class Session:
    """Maximal run of events with no gap above the idle threshold."""

    session_id: int
    start_at: int
    end_at: int
    events: list[ActivityEvent]

    @property
    def event_ids(self) -> list[str]:
        return [event.event_id for event in self.events]


def segment_sessions(events: list[ActivityEvent], idle_gap_ms: int = DEFAULT_IDLE_GAP_MS) -> list[Session]:
    """Greedy left-to-right partition; boundary where gap > idle_gap_ms."""
    if idle_gap_ms <= 0:
        raise ValueError("idle_gap_ms must be > 0")
    sessions: list[Session] = []
    current: list[ActivityEvent] = []
    for event in events:
        if current and event.at - current[-1].at > idle_gap_ms:
            sessions.append(
                Session(len(sessions) + 1, current[0].at, current[-1].at, current)
            )
            current = []
        current.append(event)
    if current:
        sessions.append(Session(len(sessions) + 1, current[0].at, current[-1].at, current))
    return sessions


def compute_session_durations(
    events: list[ActivityEvent], idle_gap_ms: int = DEFAULT_IDLE_GAP_MS
) -> list[tuple[int, float]]:
    """(session_id, duration in seconds) per session, oldest first."""
    return [
        (session.session_id, (session.end_at - session.start_at) / 1000.0)
        for session in segment_sessions(events, idle_gap_ms)
    ]


@dataclass
class SaveEntry:
    save_event_id: str
    resource_id: str
    resource_type: str
    title: str
    saved_at: int
    removed: bool = False
    removed_at: int | None = None
    card: dict | None = None

    def to_dict(self) -> dict:
        return {
            "save_event_id": self.save_event_id,
            "resource_id": self.resource_id,
            "resource_type": self.resource_type,
            "title": self.title,
            "saved_at": format_ts(self.saved_at),
            "removed": self.removed,
            "removed_at": format_ts(self.removed_at) if self.removed_at is not None else None,
            "card": self.card,
        }


@dataclass
class QueryGroup:
    query_event_id: str
    query_text: str
    issued_at: int
    saves: list[SaveEntry] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "query_event_id": self.query_event_id,
            "query_text": self.query_text,
            "issued_at": format_ts(self.issued_at),
            "saves": [entry.to_dict() for entry in self.saves],
        }


@dataclass
class SessionGroup:
    start_at: int
    end_at: int
    query_groups: list[QueryGroup] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "start_at": format_ts(self.start_at),
            "end_at": format_ts(self.end_at),
            "query_groups": [group.to_dict() for group in self.query_groups],
        }


@dataclass
class TimelineView:
    topic_id: str
    detail: str
    sessions: list[SessionGroup] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "topic_id": self.topic_id,
            "detail": self.detail,
            "sessions": [session.to_dict() for session in self.sessions],
        }


def build_timeline(
    topic_id: str,
    events: list[ActivityEvent],
    catalog: Catalog,
    detail: str = DETAIL_OVERVIEW,
    idle_gap_ms: int = DEFAULT_IDLE_GAP_MS,
) -> TimelineView:
    """Derive the timeline tree for one topic.

    Every query event yields a group, saved or not. Saves attach to the
    group of the query they were issued from, which may sit in an earlier
    session than the save itself. Removed saves stay in place with the
    removed flag set.
    """
    if detail not in DETAIL_LEVELS:
        raise ValueError(f"detail must be one of {DETAIL_LEVELS}")

    sessions = segment_sessions(events, idle_gap_ms)
    session_groups: list[SessionGroup] = []
    groups_by_query: dict[str, QueryGroup] = {}
    entries_by_save: dict[str, SaveEntry] = {}

    for session in sessions:
        session_group = SessionGroup(start_at=session.start_at, end_at=session.end_at)
        session_groups.append(session_group)
        for event in session.events:
            if event.kind == QUERY_ISSUED:
                group = QueryGroup(
                    query_event_id=event.event_id,
                    query_text=event.payload["query_text"],
                    issued_at=event.at,
                )
                groups_by_query[event.event_id] = group
                session_group.query_groups.append(group)
            elif event.kind == RESULT_SAVED:
                entry = _make_entry(event, catalog, detail)
                entries_by_save[event.event_id] = entry
                groups_by_query[event.payload["query_event_id"]].saves.append(entry)
            elif event.kind == RESULT_REMOVED:
                entry = entries_by_save[event.payload["save_event_id"]]
                entry.removed = True
                entry.removed_at = event.at
            # topic_renamed / topic_resumed delimit sessions but are not rendered

    for session_group in session_groups:
        session_group.query_groups.reverse()
    session_groups.reverse()
    return TimelineView(topic_id=topic_id, detail=detail, sessions=session_groups)


def _make_entry(event: ActivityEvent, catalog: Catalog, detail: str) -> SaveEntry:
    resource = catalog.get(event.payload["resource_id"])
    if resource is None:
        # Saves are validated against the catalog, so this only happens if
        # the service is restarted against a different catalog.
        return SaveEntry(
            save_event_id=event.event_id,
            resource_id=event.payload["resource_id"],
            resource_type="other",
            title="[unknown resource]",
            saved_at=event.at,
        )
    return SaveEntry(
        save_event_id=event.event_id,
        resource_id=resource.resource_id,
        resource_type=resource.resource_type,
        title=resource.title,
        saved_at=event.at,
        card=resource.to_dict() if detail == DETAIL_DETAILED else None,
    )
