"""Seeded random generators shared by the property and acceptance tests."""

from __future__ import annotations

import random

from vncourseqa.intent import (
    AUTHOR,
    BOOK_LIST,
    COUNT_BOOKS,
    PLACE_OF_PUBLICATION,
    PLACE_OF_PUBLISHER,
    PRICE,
    PUBLISHER,
    SUBJECT,
    YEAR_OF_PUBLISHING,
    YEAR_OF_WRITING,
    QueryIntent,
    SlotValue,
)
from vncourseqa.kb import CourseRecord, Graph, ingest_records

TITLE_POOL = ["Toan", "Van", "Su", "Dia", "Hoa", "Ly", "Sinh", "Tin", "Nhac", "Hoa hoc", "Co hoc", "Am nhac"]
AUTHOR_POOL = ["An", "Binh", "Chau", "Dung", "Ha", "Khang"]
PUBLISHER_POOL = ["Tre", "Giao duc", "Kim Dong", "Bach khoa"]
YEAR_POOL = ["2005", "2006", "2007", "2008", "2009", "2010"]
SUBJECT_POOL = ["Toan hoc", "Van hoc", "Tin hoc", "Su hoc"]
PLACE_POOL = ["Ha Noi", "Hue", "Da Nang"]
PRICE_POOL = ["10000 dong", "20000 dong", "30000 dong"]

ALL_TARGETS = (
    AUTHOR,
    PUBLISHER,
    YEAR_OF_WRITING,
    YEAR_OF_PUBLISHING,
    SUBJECT,
    BOOK_LIST,
    PLACE_OF_PUBLICATION,
    PLACE_OF_PUBLISHER,
    PRICE,
    COUNT_BOOKS,
)

_SLOT_POOLS = {
    "title": TITLE_POOL,
    "author": AUTHOR_POOL,
    "publisher": PUBLISHER_POOL,
    "year": YEAR_POOL,
    "subject": SUBJECT_POOL,
}

_OWN_SLOT = {
    AUTHOR: "author",
    PUBLISHER: "publisher",
    YEAR_OF_WRITING: "year",
    YEAR_OF_PUBLISHING: "year",
    SUBJECT: "subject",
    BOOK_LIST: "title",
    PLACE_OF_PUBLICATION: None,
    PLACE_OF_PUBLISHER: None,
    PRICE: None,
    COUNT_BOOKS: None,
}


def random_records(rng: random.Random, max_courses: int = 12) -> list[CourseRecord]:
    count = rng.randint(3, max_courses)
    names = rng.sample(TITLE_POOL, k=min(count, len(TITLE_POOL)))
    records = []
    for index, name in enumerate(names):
        records.append(
            CourseRecord(
                id=f"f{index}",
                name=name,
                authors=tuple(rng.sample(AUTHOR_POOL, k=rng.randint(1, 2))),
                publisher=rng.choice(PUBLISHER_POOL) if rng.random() < 0.8 else None,
                year=rng.choice(YEAR_POOL) if rng.random() < 0.8 else None,
                subject=rng.choice(SUBJECT_POOL) if rng.random() < 0.7 else None,
                place=rng.choice(PLACE_POOL) if rng.random() < 0.6 else None,
                price=rng.choice(PRICE_POOL) if rng.random() < 0.5 else None,
            )
        )
    return records


def random_graph(rng: random.Random, max_courses: int = 12) -> Graph:
    return ingest_records(random_records(rng, max_courses))


def random_intent(rng: random.Random, allow_multi: bool = True) -> QueryIntent:
    target = rng.choice(ALL_TARGETS)
    own = _OWN_SLOT[target]
    available = [s for s in ("title", "author", "publisher", "year", "subject") if s != own]
    # at most two constraint slots keeps every group within the oracle's
    # variable guard
    chosen = rng.sample(available, k=rng.randint(0, 2))
    slots: dict[str, SlotValue] = {}
    for name in chosen:
        pool = _SLOT_POOLS[name]
        if name == "title" and allow_multi and rng.random() < 0.4:
            values = rng.sample(pool, k=rng.randint(2, 3))
            slots[name] = SlotValue.multi(rng.choice(["and", "or"]), values)
        else:
            slots[name] = SlotValue.single(rng.choice(pool))
    return QueryIntent(target=target, slots=slots)


def strip_whitespace(text: str) -> str:
    return "".join(text.split())
