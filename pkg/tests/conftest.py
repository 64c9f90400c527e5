import io
import itertools
import json

import pytest

from searchtrail.activity import ActivityModel
from searchtrail.catalog import Catalog

# A fixed mid-2024 instant; scenario timestamps build on this.
T0 = 1_717_200_000_000


def make_catalog(records) -> Catalog:
    catalog = Catalog()
    payload = "\n".join(json.dumps(r) for r in records)
    stats = catalog.ingest(io.BytesIO(payload.encode("utf-8")))
    assert stats.records_rejected == 0, stats.reject_reasons
    return catalog


DEMO_RECORDS = [
    {"id": "b001", "title": "Indigenous Peoples of the Plains", "authors": ["L. Crowfoot"], "year": 2015, "type": "book", "description": "History and culture of plains nations"},
    {"id": "b002", "title": "Indigenous People and the Law", "authors": ["M. Okimaw"], "year": 2019, "type": "book", "description": "Legal history survey"},
    {"id": "b003", "title": "Voices of First Nations Elders", "authors": ["A. Bearpaw", "J. Mills"], "year": 2011, "type": "book"},
    {"id": "b004", "title": "The French Revolution: A Short History", "authors": ["P. Duval"], "year": 2003, "type": "book", "description": "From 1789 to 1799"},
    {"id": "b005", "title": "Storming of the Bastille", "authors": ["C. Laurent"], "year": 1998, "type": "book", "description": "The revolution begins in Paris"},
    {"id": "b006", "title": "Marie Antoinette", "authors": ["H. Beaufort"], "year": 2007, "type": "book"},
    {"id": "d001", "title": "The Plains Speak", "authors": [], "year": 2018, "type": "dvd", "description": "Documentary on indigenous history"},
    {"id": "d002", "title": "Revolution in Paris", "authors": ["Studio Lumiere"], "year": 2012, "type": "dvd"},
    {"id": "a001", "title": "Bastille: An Audio History", "authors": ["C. Laurent"], "year": 2016, "type": "audiobook"},
    {"id": "m001", "title": "History Today: Revolutions Issue", "authors": [], "year": 2021, "type": "magazine"},
    {"id": "mu01", "title": "Songs of the Plains Nations", "authors": ["Various"], "year": 2009, "type": "music"},
    {"id": "o001", "title": "Map Collection: Revolutionary France", "authors": [], "type": "other"},
]


@pytest.fixture(scope="session")
def demo_catalog() -> Catalog:
    return make_catalog(DEMO_RECORDS)


def seq_factory(prefix: str):
    counter = itertools.count(1)
    return lambda: f"{prefix}{next(counter):04d}"


def make_model(catalog, **kwargs) -> ActivityModel:
    """Model with deterministic ids and a fixed default clock."""
    kwargs.setdefault("user_id_factory", seq_factory("user-"))
    kwargs.setdefault("topic_id_factory", seq_factory("topic-"))
    kwargs.setdefault("clock", lambda: T0)
    return ActivityModel(catalog, **kwargs)


@pytest.fixture
def model(demo_catalog) -> ActivityModel:
    return make_model(demo_catalog)
