"""Embedded full-text index with deterministic BM25 ranking.

Indexes title + authors + description per resource. No stemming, no
stopwords; ranking is plain BM25 (k1=1.2, b=0.75) with ties broken by
resource_id so that result order is a total order. The index is immutable
after build and safe for concurrent queries.
"""

import json
import math
import re
from collections import Counter
from dataclasses import dataclass, field

from searchtrail.catalog import Catalog, Resource

K1 = 1.2
B = 0.75

MAX_PAGE_SIZE = 100

INDEX_SCHEMA_VERSION = 1

# Alphanumeric runs; \w minus underscore keeps Unicode letters and digits.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Lowercased alphanumeric runs; everything else separates."""
    return _TOKEN_RE.findall(text.lower())


def _resource_tokens(resource: Resource) -> list[str]:
    tokens = tokenize(resource.title)
    for author in resource.authors:
        tokens.extend(tokenize(author))
    if resource.description:
        tokens.extend(tokenize(resource.description))
    return tokens


@dataclass
class IndexedCatalog:
    """Inverted index: postings lists are sorted by resource_id."""

    postings: dict[str, list[tuple[str, int]]] = field(default_factory=dict)
    doc_lengths: dict[str, int] = field(default_factory=dict)
    doc_count: int = 0
    avg_doc_length: float = 0.0

    def document_frequency(self, term: str) -> int:
        return len(self.postings.get(term, ()))

    def to_dict(self) -> dict:
        return {
            "schema_version": INDEX_SCHEMA_VERSION,
            "postings": {
                term: [[doc_id, tf] for doc_id, tf in plist]
                for term, plist in self.postings.items()
            },
            "doc_lengths": self.doc_lengths,
            "doc_count": self.doc_count,
            "avg_doc_length": self.avg_doc_length,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "IndexedCatalog":
        if data.get("schema_version") != INDEX_SCHEMA_VERSION:
            raise ValueError(f"unsupported index schema_version: {data.get('schema_version')!r}")
        return cls(
            postings={
                term: [(doc_id, tf) for doc_id, tf in plist]
                for term, plist in data["postings"].items()
            },
            doc_lengths=dict(data["doc_lengths"]),
            doc_count=data["doc_count"],
            avg_doc_length=data["avg_doc_length"],
        )


@dataclass
class SearchPage:
    """One page of a ranked result list."""

    query_text: str
    hits: list[tuple[str, float]]
    page: int
    page_size: int
    total_hits: int


def build_index(catalog: Catalog) -> IndexedCatalog:
    """Build the inverted index; deterministic for a given catalog."""
    index = IndexedCatalog()
    for resource in catalog.resources():
        tokens = _resource_tokens(resource)
        index.doc_lengths[resource.resource_id] = len(tokens)
        for term, tf in Counter(tokens).items():
            index.postings.setdefault(term, []).append((resource.resource_id, tf))
    for plist in index.postings.values():
        plist.sort(key=lambda entry: entry[0])
    index.doc_count = len(index.doc_lengths)
    if index.doc_count:
        index.avg_doc_length = sum(index.doc_lengths.values()) / index.doc_count
    return index


def _idf(doc_count: int, df: int) -> float:
    return math.log((doc_count - df + 0.5) / (df + 0.5) + 1.0)


def rank(index: IndexedCatalog, query_text: str) -> list[tuple[str, float]]:
    """Full BM25 ranking of every document sharing a term with the query.

    Repeated query terms contribute once. Order: score descending,
    resource_id ascending.
    """
    terms = list(dict.fromkeys(tokenize(query_text)))
    scores: dict[str, float] = {}
    for term in terms:
        plist = index.postings.get(term)
        if not plist:
            continue
        idf = _idf(index.doc_count, len(plist))
        for doc_id, tf in plist:
            norm = tf + K1 * (1.0 - B + B * index.doc_lengths[doc_id] / index.avg_doc_length)
            scores[doc_id] = scores.get(doc_id, 0.0) + idf * (tf * (K1 + 1.0)) / norm
    return sorted(scores.items(), key=lambda item: (-item[1], item[0]))


def search(index: IndexedCatalog, query_text: str, page: int = 1, page_size: int = 10) -> SearchPage:
    """Ranked, paginated retrieval. Pagination slices the full ordering."""
    if page < 1:
        raise ValueError("page must be >= 1")
    if not 1 <= page_size <= MAX_PAGE_SIZE:
        raise ValueError(f"page_size must be in [1, {MAX_PAGE_SIZE}]")
    ranking = rank(index, query_text)
    start = (page - 1) * page_size
    return SearchPage(
        query_text=query_text,
        hits=ranking[start : start + page_size],
        page=page,
        page_size=page_size,
        total_hits=len(ranking),
    )


def save_index(index: IndexedCatalog, path) -> None:
    """Canonical JSON (sorted keys) so rebuilds are byte-identical."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(index.to_dict(), fh, sort_keys=True, ensure_ascii=False)
        fh.write("\n")


def load_index(path) -> IndexedCatalog:
    with open(path, "r", encoding="utf-8") as fh:
        return IndexedCatalog.from_dict(json.load(fh))
