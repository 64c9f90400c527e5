"""Per-user search topics and their append-only activity history.

All state transitions go through a single fold (`apply_event`): live
operations validate, persist through the sink, then apply; replay applies
the same records in order. That one code path is what makes live state
and replayed state identical.

Topic timestamps are kept monotone non-decreasing: client-supplied times
may lag the topic's latest event by at most a small skew (clamped up);
anything older is replaced by the server clock. Events within a topic are
therefore totally ordered by (at, event_id) and append order.
"""

import uuid
from dataclasses import dataclass, field

from searchtrail.catalog import Catalog
from searchtrail.clock import now_ms
from searchtrail.errors import BadRequestError, ConflictError, NotFoundError, NotOngoingError
from searchtrail.events import (
    QUERY_ISSUED,
    RESULT_REMOVED,
    RESULT_SAVED,
    SOURCE_FRESH,
    SOURCE_REISSUE,
    TOPIC_RENAMED,
    TOPIC_RESUMED,
    ActivityEvent,
    make_event_id,
)
from searchtrail.textindex import tokenize
from searchtrail.timeline import DEFAULT_IDLE_GAP_MS, TimelineView, build_timeline

CLOCK_SKEW_MS = 5_000


@dataclass
class Topic:
    topic_id: str
    user_id: str
    title: str
    created_at: int
    last_activity_at: int

    def to_dict(self) -> dict:
        from searchtrail.clock import format_ts

        return {
            "topic_id": self.topic_id,
            "user_id": self.user_id,
            "title": self.title,
            "created_at": format_ts(self.created_at),
            "last_activity_at": format_ts(self.last_activity_at),
        }


@dataclass
class TopicState:
    """A topic plus the derived indexes over its event list."""

    topic: Topic
    events: list[ActivityEvent] = field(default_factory=list)
    queries: dict[str, ActivityEvent] = field(default_factory=dict)
    saves: dict[str, ActivityEvent] = field(default_factory=dict)
    active_saves: dict[str, str] = field(default_factory=dict)  # resource_id -> save_event_id

    @property
    def last_at(self) -> int | None:
        return self.events[-1].at if self.events else None

    def next_event_id(self) -> str:
        return make_event_id(len(self.events) + 1)


@dataclass
class UserState:
    user_id: str
    ongoing_topic_id: str | None = None
    topic_ids: list[str] = field(default_factory=list)


class ActivityModel:
    """Topics, events, and the ongoing-topic pointer for all users."""

    def __init__(
        self,
        catalog: Catalog,
        idle_gap_ms: int = DEFAULT_IDLE_GAP_MS,
        clock=now_ms,
        sink=None,
        user_id_factory=None,
        topic_id_factory=None,
    ):
        self.catalog = catalog
        self.idle_gap_ms = idle_gap_ms
        self._clock = clock
        self._sink = sink
        self._new_user_id = user_id_factory or (lambda: uuid.uuid4().hex)
        self._new_topic_id = topic_id_factory or (lambda: "t-" + uuid.uuid4().hex[:16])
        self._users: dict[str, UserState] = {}
        self._topics: dict[str, TopicState] = {}

    # -- users -------------------------------------------------------------

    def create_user(self) -> str:
        user_id = self._new_user_id()
        while user_id in self._users:
            user_id = self._new_user_id()
        self._users[user_id] = UserState(user_id=user_id)
        if self._sink is not None:
            self._sink.register_user(user_id)
        return user_id

    def register_user(self, user_id: str) -> None:
        """Register a known id without persisting (replay path)."""
        self._users.setdefault(user_id, UserState(user_id=user_id))

    def has_user(self, user_id: str) -> bool:
        return user_id in self._users

    def user_ids(self) -> list[str]:
        return list(self._users)

    def ongoing_topic_id(self, user_id: str) -> str | None:
        user = self._users.get(user_id)
        return user.ongoing_topic_id if user else None

    def topic_ids(self, user_id: str) -> list[str]:
        """Topic ids in creation order."""
        user = self._users.get(user_id)
        return list(user.topic_ids) if user else []

    # -- operations ----------------------------------------------------------

    def issue_query(
        self, user_id: str, query_text: str, at: int | None = None, new_topic: bool = False
    ) -> tuple[str, str]:
        """Append a fresh query to the ongoing topic, creating one if needed.

        A topic is created when the user has no ongoing topic (or asked for
        a new one); its title is the query text.
        """
        user = self._require_user(user_id)
        if not tokenize(query_text):
            raise BadRequestError("query text has no searchable terms")

        if new_topic or user.ongoing_topic_id is None:
            topic_id = self._new_topic_id()
            while topic_id in self._topics:
                topic_id = self._new_topic_id()
            event = ActivityEvent(
                event_id=make_event_id(1),
                topic_id=topic_id,
                at=self._effective_at(None, at),
                kind=QUERY_ISSUED,
                payload={"query_text": query_text, "source": SOURCE_FRESH},
            )
        else:
            topic_id = user.ongoing_topic_id
            state = self._topics[topic_id]
            event = ActivityEvent(
                event_id=state.next_event_id(),
                topic_id=topic_id,
                at=self._effective_at(state.last_at, at),
                kind=QUERY_ISSUED,
                payload={"query_text": query_text, "source": SOURCE_FRESH},
            )
        self._commit(user_id, event)
        return topic_id, event.event_id

    def reissue_query(
        self, user_id: str, topic_id: str, query_event_id: str, at: int | None = None
    ) -> str:
        """Re-run a past query: appends a new event, never rewrites history."""
        state = self._require_owned_topic(user_id, topic_id)
        self._require_ongoing(user_id, topic_id)
        original = state.queries.get(query_event_id)
        if original is None:
            raise NotFoundError(f"no query event {query_event_id} in topic {topic_id}")
        event = ActivityEvent(
            event_id=state.next_event_id(),
            topic_id=topic_id,
            at=self._effective_at(state.last_at, at),
            kind=QUERY_ISSUED,
            payload={
                "query_text": original.payload["query_text"],
                "source": SOURCE_REISSUE,
                "reissue_of": query_event_id,
            },
        )
        self._commit(user_id, event)
        return event.event_id

    def save_result(
        self,
        user_id: str,
        topic_id: str,
        query_event_id: str,
        resource_id: str,
        at: int | None = None,
    ) -> str:
        state = self._require_owned_topic(user_id, topic_id)
        self._require_ongoing(user_id, topic_id)
        if query_event_id not in state.queries:
            raise NotFoundError(f"no query event {query_event_id} in topic {topic_id}")
        if resource_id not in self.catalog:
            raise NotFoundError(f"unknown resource {resource_id}")
        if resource_id in state.active_saves:
            raise ConflictError(f"resource {resource_id} already saved in topic {topic_id}")
        event = ActivityEvent(
            event_id=state.next_event_id(),
            topic_id=topic_id,
            at=self._effective_at(state.last_at, at),
            kind=RESULT_SAVED,
            payload={"query_event_id": query_event_id, "resource_id": resource_id},
        )
        self._commit(user_id, event)
        return event.event_id

    def remove_result(self, user_id: str, topic_id: str, resource_id: str, at: int | None = None) -> str:
        """Soft removal: flags the active save, keeps it in the history."""
        state = self._require_owned_topic(user_id, topic_id)
        save_event_id = state.active_saves.get(resource_id)
        if save_event_id is None:
            raise NotFoundError(f"resource {resource_id} has no active save in topic {topic_id}")
        event = ActivityEvent(
            event_id=state.next_event_id(),
            topic_id=topic_id,
            at=self._effective_at(state.last_at, at),
            kind=RESULT_REMOVED,
            payload={"save_event_id": save_event_id},
        )
        self._commit(user_id, event)
        return save_event_id

    def rename_topic(self, user_id: str, topic_id: str, new_title: str, at: int | None = None) -> None:
        state = self._require_owned_topic(user_id, topic_id)
        if not new_title.strip():
            raise BadRequestError("topic title must be non-empty")
        event = ActivityEvent(
            event_id=state.next_event_id(),
            topic_id=topic_id,
            at=self._effective_at(state.last_at, at),
            kind=TOPIC_RENAMED,
            payload={"new_title": new_title},
        )
        self._commit(user_id, event)

    def resume_topic(self, user_id: str, topic_id: str, at: int | None = None) -> None:
        """Make the topic the user's ongoing topic."""
        state = self._require_owned_topic(user_id, topic_id)
        event = ActivityEvent(
            event_id=state.next_event_id(),
            topic_id=topic_id,
            at=self._effective_at(state.last_at, at),
            kind=TOPIC_RESUMED,
            payload={},
        )
        self._commit(user_id, event)

    # -- queries over state --------------------------------------------------

    def list_topics(self, user_id: str) -> list[tuple[Topic, bool]]:
        """Topics ordered by most recent activity; ongoing one flagged."""
        user = self._users.get(user_id)
        if user is None:
            return []
        topics = [self._topics[tid].topic for tid in user.topic_ids]
        topics.sort(key=lambda t: (-t.last_activity_at, t.topic_id))
        return [(topic, topic.topic_id == user.ongoing_topic_id) for topic in topics]

    def get_topic_state(self, topic_id: str) -> TopicState:
        state = self._topics.get(topic_id)
        if state is None:
            raise NotFoundError(f"unknown topic {topic_id}")
        return state

    def events(self, topic_id: str) -> list[ActivityEvent]:
        return list(self.get_topic_state(topic_id).events)

    def build_timeline(self, topic_id: str, detail: str, user_id: str | None = None) -> TimelineView:
        state = self.get_topic_state(topic_id)
        if user_id is not None and state.topic.user_id != user_id:
            raise NotFoundError(f"unknown topic {topic_id}")
        return build_timeline(topic_id, state.events, self.catalog, detail, self.idle_gap_ms)

    # -- the fold --------------------------------------------------------------

    def apply_event(self, user_id: str, event: ActivityEvent) -> None:
        """Apply one event to in-memory state (used live and on replay).

        The first event of an unseen topic must be a query_issued; it
        creates the topic and makes it ongoing.
        """
        self.register_user(user_id)
        user = self._users[user_id]
        state = self._topics.get(event.topic_id)
        if state is None:
            if event.kind != QUERY_ISSUED:
                raise NotFoundError(
                    f"first event of topic {event.topic_id} must be a query, got {event.kind}"
                )
            state = TopicState(
                topic=Topic(
                    topic_id=event.topic_id,
                    user_id=user_id,
                    title=event.payload["query_text"],
                    created_at=event.at,
                    last_activity_at=event.at,
                )
            )
            self._topics[event.topic_id] = state
            user.topic_ids.append(event.topic_id)
            user.ongoing_topic_id = event.topic_id

        state.events.append(event)
        state.topic.last_activity_at = event.at

        if event.kind == QUERY_ISSUED:
            state.queries[event.event_id] = event
        elif event.kind == RESULT_SAVED:
            state.saves[event.event_id] = event
            state.active_saves[event.payload["resource_id"]] = event.event_id
        elif event.kind == RESULT_REMOVED:
            save_event = state.saves.get(event.payload["save_event_id"])
            if save_event is None:
                raise NotFoundError(f"removal references unknown save {event.payload['save_event_id']}")
            state.active_saves.pop(save_event.payload["resource_id"], None)
        elif event.kind == TOPIC_RENAMED:
            state.topic.title = event.payload["new_title"]
        elif event.kind == TOPIC_RESUMED:
            user.ongoing_topic_id = event.topic_id
        else:
            raise NotFoundError(f"unknown event kind {event.kind}")

    def set_ongoing(self, user_id: str, topic_id: str | None) -> None:
        """Force the ongoing pointer (snapshot load only)."""
        self.register_user(user_id)
        self._users[user_id].ongoing_topic_id = topic_id

    # -- internals ---------------------------------------------------------

    def _commit(self, user_id: str, event: ActivityEvent) -> None:
        # Persist before applying so an I/O failure leaves memory unchanged.
        if self._sink is not None:
            self._sink.append_event(user_id, event)
        self.apply_event(user_id, event)

    def _effective_at(self, last_at: int | None, at: int | None) -> int:
        if at is None:
            at = self._clock()
        elif last_at is not None and at < last_at - CLOCK_SKEW_MS:
            at = self._clock()
        if last_at is not None and at < last_at:
            at = last_at
        return at

    def _require_user(self, user_id: str) -> UserState:
        user = self._users.get(user_id)
        if user is None:
            raise NotFoundError(f"unknown user {user_id}")
        return user

    def _require_owned_topic(self, user_id: str, topic_id: str) -> TopicState:
        self._require_user(user_id)
        state = self._topics.get(topic_id)
        if state is None or state.topic.user_id != user_id:
            raise NotFoundError(f"unknown topic {topic_id}")
        return state

    def _require_ongoing(self, user_id: str, topic_id: str) -> None:
        if self._users[user_id].ongoing_topic_id != topic_id:
            raise NotOngoingError(f"topic {topic_id} is not the ongoing topic; resume it first")

    def attach_sink(self, sink) -> None:
        self._sink = sink
