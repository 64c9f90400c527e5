"""HTTP interface binding catalog search and the activity model.

Queries return the ranked page together with the refreshed overview
timeline so the client never needs a second round trip. Bodies are plain
JSON objects validated by hand: every error leaves through ServiceError
and maps to exactly one (status, code) pair, and the 422 machinery of
the framework is never triggered.

Mutations accept an optional X-Client-Time header (ISO-8601 UTC); the
activity model validates it against the topic's clock skew rule.
"""

import threading

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse

from searchtrail.activity import ActivityModel
from searchtrail.catalog import Catalog
from searchtrail.clock import parse_ts
from searchtrail.errors import BadRequestError, NotFoundError, ServiceError
from searchtrail.store import LogStore
from searchtrail.textindex import IndexedCatalog, search
from searchtrail.timeline import DETAIL_LEVELS, DETAIL_OVERVIEW

CODE_STATUS = {
    "bad_request": 400,
    "not_found": 404,
    "conflict": 409,
    "not_ongoing": 409,
    "io_error": 500,
}

DEFAULT_PAGE = 1
DEFAULT_PAGE_SIZE = 10


def create_app(
    catalog: Catalog,
    index: IndexedCatalog,
    model: ActivityModel,
    store: LogStore,
    cors_origins: tuple[str, ...] = ("*",),
) -> FastAPI:
    app = FastAPI(title="searchtrail", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )
    # Single writer: per-topic appends must be serialized; one process-wide
    # lock is the simplest correct implementation at prototype scale.
    lock = threading.RLock()

    @app.exception_handler(ServiceError)
    async def service_error(request: Request, exc: ServiceError):
        return JSONResponse(
            status_code=CODE_STATUS.get(exc.code, 500),
            content={"code": exc.code, "message": str(exc)},
        )

    def client_time(request: Request) -> int | None:
        raw = request.headers.get("X-Client-Time")
        if raw is None:
            return None
        try:
            return parse_ts(raw)
        except ValueError:
            raise BadRequestError(f"invalid X-Client-Time: {raw!r}")

    async def json_body(request: Request, allow_empty: bool = False) -> dict:
        body = await request.body()
        if not body and allow_empty:
            return {}
        try:
            data = await request.json()
        except Exception:
            raise BadRequestError("request body must be a JSON object")
        if not isinstance(data, dict):
            raise BadRequestError("request body must be a JSON object")
        return data

    def page_args(data: dict) -> tuple[int, int]:
        page = data.get("page", DEFAULT_PAGE)
        page_size = data.get("page_size", DEFAULT_PAGE_SIZE)
        for name, value in (("page", page), ("page_size", page_size)):
            if not isinstance(value, int) or isinstance(value, bool):
                raise BadRequestError(f"{name} must be an integer")
        return page, page_size

    def serp_response(topic_id: str, query_event_id: str, query_text: str, page: int, page_size: int) -> dict:
        try:
            result = search(index, query_text, page, page_size)
        except ValueError as exc:
            raise BadRequestError(str(exc))
        state = model.get_topic_state(topic_id)
        cards = []
        for resource_id, score in result.hits:
            card = catalog.get(resource_id).to_dict()
            card["score"] = score
            card["saved_now"] = resource_id in state.active_saves
            cards.append(card)
        return {
            "query_event_id": query_event_id,
            "page": {
                "query_text": result.query_text,
                "page": result.page,
                "page_size": result.page_size,
                "total_hits": result.total_hits,
                "hits": cards,
            },
            "overview": model.build_timeline(topic_id, DETAIL_OVERVIEW).to_dict(),
        }

    @app.post("/api/users", status_code=201)
    async def create_user():
        with lock:
            return {"user_id": model.create_user()}

    @app.post("/api/users/{user_id}/queries")
    async def post_query(user_id: str, request: Request):
        data = await json_body(request)
        at = client_time(request)
        text = data.get("text")
        if not isinstance(text, str) or not text.strip():
            raise BadRequestError("text must be a non-blank string")
        page, page_size = page_args(data)
        new_topic = data.get("new_topic", False)
        if not isinstance(new_topic, bool):
            raise BadRequestError("new_topic must be a boolean")
        with lock:
            topic_id, query_event_id = model.issue_query(user_id, text, at=at, new_topic=new_topic)
            return serp_response(topic_id, query_event_id, text, page, page_size)

    @app.post("/api/topics/{topic_id}/queries/{query_event_id}/reissue")
    async def reissue(topic_id: str, query_event_id: str, request: Request):
        data = await json_body(request, allow_empty=True)
        at = client_time(request)
        page, page_size = page_args(data)
        with lock:
            state = model.get_topic_state(topic_id)
            new_event_id = model.reissue_query(state.topic.user_id, topic_id, query_event_id, at=at)
            text = state.queries[new_event_id].payload["query_text"]
            return serp_response(topic_id, new_event_id, text, page, page_size)

    @app.post("/api/topics/{topic_id}/saves")
    async def save(topic_id: str, request: Request):
        data = await json_body(request)
        at = client_time(request)
        query_event_id = data.get("query_event_id")
        resource_id = data.get("resource_id")
        if not isinstance(query_event_id, str) or not isinstance(resource_id, str):
            raise BadRequestError("query_event_id and resource_id are required")
        with lock:
            state = model.get_topic_state(topic_id)
            model.save_result(state.topic.user_id, topic_id, query_event_id, resource_id, at=at)
            return model.build_timeline(topic_id, DETAIL_OVERVIEW).to_dict()

    @app.post("/api/topics/{topic_id}/removals")
    async def remove(topic_id: str, request: Request):
        data = await json_body(request)
        at = client_time(request)
        resource_id = data.get("resource_id")
        if not isinstance(resource_id, str):
            raise BadRequestError("resource_id is required")
        with lock:
            state = model.get_topic_state(topic_id)
            model.remove_result(state.topic.user_id, topic_id, resource_id, at=at)
            return model.build_timeline(topic_id, DETAIL_OVERVIEW).to_dict()

    @app.get("/api/users/{user_id}/topics")
    async def list_topics(user_id: str):
        with lock:
            if not model.has_user(user_id):
                raise NotFoundError(f"unknown user {user_id}")
            return {
                "topics": [
                    {**topic.to_dict(), "is_ongoing": is_ongoing}
                    for topic, is_ongoing in model.list_topics(user_id)
                ]
            }

    @app.get("/api/topics/{topic_id}/timeline")
    async def timeline(topic_id: str, detail: str = DETAIL_OVERVIEW):
        if detail not in DETAIL_LEVELS:
            raise BadRequestError(f"detail must be one of {DETAIL_LEVELS}")
        with lock:
            return model.build_timeline(topic_id, detail).to_dict()

    @app.post("/api/users/{user_id}/ongoing")
    async def set_ongoing(user_id: str, request: Request):
        data = await json_body(request)
        at = client_time(request)
        topic_id = data.get("topic_id")
        if not isinstance(topic_id, str):
            raise BadRequestError("topic_id is required")
        with lock:
            model.resume_topic(user_id, topic_id, at=at)
        return {}

    @app.patch("/api/topics/{topic_id}")
    async def rename(topic_id: str, request: Request):
        data = await json_body(request)
        at = client_time(request)
        title = data.get("title")
        if not isinstance(title, str):
            raise BadRequestError("title is required")
        with lock:
            state = model.get_topic_state(topic_id)
            model.rename_topic(state.topic.user_id, topic_id, title, at=at)
        return {}

    @app.get("/api/resources/{resource_id}")
    async def get_resource(resource_id: str):
        resource = catalog.get(resource_id)
        if resource is None:
            raise NotFoundError(f"unknown resource {resource_id}")
        return resource.to_dict()

    @app.get("/api/export/events")
    async def export_events(user: str):
        with lock:
            if not store.has_user(user):
                raise NotFoundError(f"unknown user {user}")
            text = store.export_text(user)
        return PlainTextResponse(text, media_type="application/x-ndjson")

    return app
