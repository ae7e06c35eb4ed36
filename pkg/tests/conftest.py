from __future__ import annotations

from pathlib import Path

import pytest

from strictmiz.generate import generate_articles
from strictmiz.notation import default_table, load_notation_table

ROOT = Path(__file__).resolve().parent.parent
ARTICLES = ROOT / "corpus" / "articles"
GOLDEN = ROOT / "corpus" / "golden"
DATA = Path(__file__).resolve().parent / "data"

REL_TABLE = "mode Relation 0 1 2\n"


def corpus_paths() -> list[Path]:
    return sorted(ARTICLES.glob("*.miz"))


@pytest.fixture(scope="session")
def table():
    return default_table()


@pytest.fixture(scope="session")
def rel_table():
    return load_notation_table(REL_TABLE)


@pytest.fixture(scope="session")
def corpus():
    return [(p.name, p.read_text(encoding="utf-8")) for p in corpus_paths()]


@pytest.fixture(scope="session")
def generated(table):
    return generate_articles(table, 500, seed=20240607, max_depth=4)
