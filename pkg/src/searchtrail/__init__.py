"""Catalog search with per-topic activity timelines.

A small search service for digital-library catalogs: ranked full-text
retrieval over an embedded index, plus per-user topic workspaces whose
query/save history is an append-only event log rendered as deterministic
timeline views.
"""

__version__ = "0.1.0"

from searchtrail.activity import ActivityModel
from searchtrail.catalog import Catalog, CatalogStats, Resource
from searchtrail.textindex import IndexedCatalog, SearchPage, build_index, search, tokenize
from searchtrail.timeline import TimelineView, build_timeline, compute_session_durations, segment_sessions

__all__ = [
    "ActivityModel",
    "Catalog",
    "CatalogStats",
    "Resource",
    "IndexedCatalog",
    "SearchPage",
    "TimelineView",
    "build_index",
    "build_timeline",
    "compute_session_durations",
    "search",
    "segment_sessions",
    "tokenize",
]
