from __future__ import annotations

import io
import random
from concurrent.futures import ThreadPoolExecutor

import httpx
import pytest
from fastapi.testclient import TestClient

from strictmiz.cli import run
from strictmiz.notation import default_table, load_notation_table
from strictmiz.service import MAX_BODY, create_app, load_tables

from .conftest import REL_TABLE, corpus_paths
from .live_server import live_server

EXAMPLE = "reserve P,R for Relation of X,Y;"


@pytest.fixture(scope="module")
def client():
    tables = {"default": default_table(), "rel": load_notation_table(REL_TABLE)}
    return TestClient(create_app(tables))


def _get(client, path, body="", **kw):
    return client.request("GET", path, content=body.encode("utf-8"), **kw)


def test_health(client):
    r = client.get("/health")
    assert r.status_code == 200 and r.text == "ok\n"
    assert r.headers["content-type"] == "text/plain; charset=utf-8"


def test_wsm_example_with_get_body(client):
    r = _get(client, "/wsm", EXAMPLE, headers={"X-Notation-Table": "rel"})
    assert r.status_code == 200
    assert r.text == "reserve P , R for ( Relation of X , Y ) ;\n"
    assert r.headers["content-type"] == "text/plain; charset=utf-8"
    assert int(r.headers["content-length"]) == len(r.content)


def test_post_matches_get(client):
    for view in ("parse", "pretty", "wsm", "msm"):
        a = _get(client, f"/{view}", EXAMPLE)
        b = client.post(f"/{view}", content=EXAMPLE.encode())
        assert (a.status_code, a.content) == (b.status_code, b.content)


def test_parse_empty(client):
    r = _get(client, "/parse")
    assert r.status_code == 200
    assert r.text == '<?xml version="1.0"?>\n<Article src=""/>\n'
    assert r.headers["content-type"] == "application/xml; charset=utf-8"


def test_lexical_error_document(client):
    r = _get(client, "/wsm", "reserve @;")
    assert r.status_code == 400
    assert r.text.splitlines()[:3] == ["error: lexical", "line: 1", "col: 9"]
    assert r.headers["content-type"] == "text/plain; charset=utf-8"


def test_format_query(client):
    r = _get(client, "/msm?format=xml", "reserve X for set; X = X;")
    assert r.status_code == 200 and r.headers["content-type"].startswith("application/xml")
    assert '<Label name="Label1"' in r.text
    assert _get(client, "/wsm?format=yaml", EXAMPLE).status_code == 400
    assert _get(client, "/wsm?colour=red", EXAMPLE).status_code == 400
    assert _get(client, "/parse?format=xml", EXAMPLE).status_code == 400


def test_unknown_table_and_path(client):
    r = _get(client, "/wsm", EXAMPLE, headers={"X-Notation-Table": "nope"})
    assert r.status_code == 400 and r.text.startswith("error: ")
    assert _get(client, "/unknown").status_code == 404


def test_bad_utf8(client):
    r = client.post("/wsm", content=b"\xff\xfe")
    assert r.status_code == 400 and r.text.startswith("error: encoding")


def test_body_limit(client):
    r = client.post("/wsm", content=b" " * (MAX_BODY + 1))
    assert r.status_code == 413


def test_tables_listing(client):
    r = client.get("/tables")
    assert r.status_code == 200
    names = [t["name"] for t in r.json()]
    assert names == ["default", "rel"]


def test_load_tables_from_directory(tmp_path, monkeypatch):
    (tmp_path / "rel.tab").write_text(REL_TABLE, encoding="utf-8")
    monkeypatch.setenv("STRICTMIZ_TABLES", str(tmp_path))
    assert sorted(load_tables()) == ["default", "rel"]


def _cli(view, text, fmt=None):
    argv = [view, "-"] + (["--format", fmt] if fmt else [])
    return run(argv, io.StringIO(text))


@pytest.mark.parametrize("path", corpus_paths()[:6], ids=lambda p: p.stem)
def test_cli_equivalence_in_process(client, path):
    text = path.read_text(encoding="utf-8")
    for view in ("parse", "pretty", "wsm", "msm"):
        r = _get(client, f"/{view}", text)
        code, out, _ = _cli(view, text)
        assert (r.status_code, r.text) == (200, out) and code == 0


def test_live_server_round_trip_and_statelessness():
    texts = [p.read_text(encoding="utf-8") for p in corpus_paths()]
    with live_server() as base, httpx.Client(base_url=base, timeout=30) as http:
        r = http.request("GET", "/parse", content=EXAMPLE.encode())
        assert r.status_code == 200 and r.text == _cli("parse", EXAMPLE)[1]
        assert http.get("/unknown").status_code == 404

        jobs = [(view, text) for view in ("parse", "pretty", "wsm", "msm") for text in texts]
        jobs = jobs + jobs
        random.Random(1).shuffle(jobs)

        def fetch(job):
            view, text = job
            return job, http.post(f"/{view}", content=text.encode()).text

        with ThreadPoolExecutor(max_workers=8) as pool:
            results = list(pool.map(fetch, jobs))
    for (view, text), body in results:
        assert body == _cli(view, text)[1]


def test_cli_thin_client(tmp_path):
    article = tmp_path / "a.miz"
    article.write_text("reserve X for set; A: X = X; then X = X;", encoding="utf-8")
    with live_server() as base:
        for view in ("pretty", "wsm", "msm"):
            assert run([view, "--server", base, str(article)]) == run([view, str(article)])
        code, out, _ = run(["msm", "--server", base, "--format", "xml", "-"], io.StringIO("1 = 1;"))
        assert code == 0 and out == _cli("msm", "1 = 1;", "xml")[1]
        code, out, err = run(["wsm", "--server", base, "-"], io.StringIO("reserve @;"))
        assert (code, out) == (1, "") and err.startswith("error: lexical\nline: 1\ncol: 9\n")
        code, _, err = run(["wsm", "--server", base, "--table-name", "nope", "-"], io.StringIO(""))
        assert code == 1 and "nope" in err
        assert run(["pretty", "--server", base, "--width", "40", "-"], io.StringIO(""))[0] == 2
    code, _, err = run(["wsm", "--server", base, "-"], io.StringIO("1 = 1;"))
    assert code == 2 and "cannot reach" in err
