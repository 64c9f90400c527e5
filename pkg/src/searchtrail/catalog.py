"""Library catalog: ingestion, validation, and lookup.

Catalog files are UTF-8 JSON Lines, one record per line:

    {"id": "...", "title": "...", "authors": ["..."], "year": 2015,
     "type": "book", "description": "...", "cover_ref": "covers/x.jpg"}

`id`, `title`, and `type` are required; `authors` defaults to an empty
list; `year`, `description`, and `cover_ref` are optional. Unknown keys
are ignored. The catalog is immutable once ingested, so concurrent reads
need no locking.
"""

import io
import json
from dataclasses import dataclass, field

from searchtrail.errors import BadRequestError

RESOURCE_TYPES = ("book", "dvd", "audiobook", "magazine", "music", "other")

YEAR_MIN = 1000
YEAR_MAX = 2100


@dataclass(frozen=True)
class Resource:
    """One catalog item; the unit of saving."""

    resource_id: str
    title: str
    authors: tuple[str, ...] = ()
    year: int | None = None
    resource_type: str = "other"
    description: str | None = None
    cover_ref: str | None = None

    def to_dict(self) -> dict:
        """API-facing representation."""
        return {
            "resource_id": self.resource_id,
            "title": self.title,
            "authors": list(self.authors),
            "year": self.year,
            "resource_type": self.resource_type,
            "description": self.description,
            "cover_ref": self.cover_ref,
        }

    def to_record(self) -> dict:
        """Catalog-file representation; optional fields omitted when unset."""
        rec = {
            "id": self.resource_id,
            "title": self.title,
            "authors": list(self.authors),
            "type": self.resource_type,
        }
        if self.year is not None:
            rec["year"] = self.year
        if self.description is not None:
            rec["description"] = self.description
        if self.cover_ref is not None:
            rec["cover_ref"] = self.cover_ref
        return rec


@dataclass
class CatalogStats:
    records_read: int = 0
    records_accepted: int = 0
    records_rejected: int = 0
    reject_reasons: list[tuple[int, str]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "records_read": self.records_read,
            "records_accepted": self.records_accepted,
            "records_rejected": self.records_rejected,
            "reject_reasons": [
                {"line": line_no, "reason": reason} for line_no, reason in self.reject_reasons
            ],
        }


def _parse_record(obj: dict) -> Resource:
    """Validate one decoded record; raises ValueError with a short reason."""
    if not isinstance(obj, dict):
        raise ValueError("record is not an object")

    resource_id = obj.get("id")
    if not isinstance(resource_id, str) or not resource_id.strip():
        raise ValueError("missing id")

    title = obj.get("title")
    if not isinstance(title, str) or not title.strip():
        raise ValueError("missing title")

    rtype = obj.get("type")
    if rtype not in RESOURCE_TYPES:
        raise ValueError("unknown resource type")

    authors = obj.get("authors", [])
    if not isinstance(authors, list) or any(not isinstance(a, str) for a in authors):
        raise ValueError("authors must be a list of strings")

    year = obj.get("year")
    if year is not None:
        if not isinstance(year, int) or isinstance(year, bool):
            raise ValueError("year must be an integer")
        if not YEAR_MIN <= year <= YEAR_MAX:
            raise ValueError("year out of range")

    description = obj.get("description")
    if description is not None and not isinstance(description, str):
        raise ValueError("description must be a string")

    cover_ref = obj.get("cover_ref")
    if cover_ref is not None and not isinstance(cover_ref, str):
        raise ValueError("cover_ref must be a string")

    return Resource(
        resource_id=resource_id,
        title=title,
        authors=tuple(authors),
        year=year,
        resource_type=rtype,
        description=description,
        cover_ref=cover_ref,
    )


class Catalog:
    """In-memory catalog keyed by resource_id."""

    def __init__(self):
        self._resources: dict[str, Resource] = {}

    def __len__(self) -> int:
        return len(self._resources)

    def __contains__(self, resource_id: str) -> bool:
        return resource_id in self._resources

    def get(self, resource_id: str) -> Resource | None:
        return self._resources.get(resource_id)

    def resources(self) -> list[Resource]:
        """All resources in acceptance order."""
        return list(self._resources.values())

    def ingest(self, source, strict: bool = False) -> CatalogStats:
        """Ingest line-delimited records from a text or binary stream.

        Invalid records are counted and skipped; in strict mode the first
        invalid record aborts the whole ingestion. Duplicate ids keep the
        first record (lenient) or abort (strict).
        """
        if isinstance(source, bytes):
            source = io.BytesIO(source)
        stats = CatalogStats()
        for line_no, line in enumerate(source, start=1):
            if isinstance(line, bytes):
                line = line.decode("utf-8")
            if not line.strip():
                continue
            stats.records_read += 1
            try:
                obj = json.loads(line)
            except json.JSONDecodeError:
                self._reject(stats, line_no, "invalid json", strict)
                continue
            try:
                resource = _parse_record(obj)
            except ValueError as exc:
                self._reject(stats, line_no, str(exc), strict)
                continue
            if resource.resource_id in self._resources:
                self._reject(stats, line_no, "duplicate id", strict)
                continue
            self._resources[resource.resource_id] = resource
            stats.records_accepted += 1
        return stats

    @staticmethod
    def _reject(stats: CatalogStats, line_no: int, reason: str, strict: bool):
        stats.records_rejected += 1
        stats.reject_reasons.append((line_no, reason))
        if strict:
            raise BadRequestError(f"line {line_no}: {reason}")


def load_catalog(path, strict: bool = False) -> tuple[Catalog, CatalogStats]:
    catalog = Catalog()
    with open(path, "rb") as fh:
        stats = catalog.ingest(fh, strict=strict)
    return catalog, stats


def dump_catalog(catalog: Catalog, path) -> None:
    """Write accepted records back out in canonical form (stable bytes)."""
    with open(path, "w", encoding="utf-8") as fh:
        for resource in catalog.resources():
            fh.write(json.dumps(resource.to_record(), sort_keys=True, ensure_ascii=False))
            fh.write("\n")
