"""HTTP parsing service.

Endpoints ``/parse``, ``/pretty``, ``/wsm`` and ``/msm`` take Mizar text in
the request body (GET or POST) and answer with the same bytes the CLI
prints. ``/wsm`` and ``/msm`` accept ``?format=text|xml``. The notation
table is picked by the ``X-Notation-Table`` header from the tables loaded at
startup.
"""

from __future__ import annotations

import os
import socket
import sys
from typing import Literal

from fastapi import FastAPI, Request
from fastapi.responses import Response
from pydantic import BaseModel, ConfigDict, ValidationError
from starlette.concurrency import run_in_threadpool

from .errors import MizarError
from .notation import NotationTable, default_table, load_table_dir
from .views import TEXT_PLAIN, VIEWS, render

MAX_BODY = 8 * 1024 * 1024
TABLES_ENV = "STRICTMIZ_TABLES"
TABLE_HEADER = "X-Notation-Table"


class ErrorDocument(BaseModel):
    category: str
    line: int = 0
    col: int = 0
    message: str

    def render(self) -> str:
        return f"error: {self.category}\nline: {self.line}\ncol: {self.col}\n{self.message}\n"

    @classmethod
    def from_exception(cls, exc: MizarError) -> ErrorDocument:
        return cls(category=exc.category, line=exc.line, col=exc.col, message=exc.message)


class NormalQuery(BaseModel):
    model_config = ConfigDict(extra="forbid")

    format: Literal["text", "xml"] = "text"


class PlainQuery(BaseModel):
    model_config = ConfigDict(extra="forbid")


class TableInfo(BaseModel):
    name: str
    symbols: list[str]


def load_tables(directory: str | None = None) -> dict[str, NotationTable]:
    """The bundled ``default`` table plus every table in *directory*."""
    tables = {"default": default_table()}
    directory = directory or os.environ.get(TABLES_ENV)
    if directory:
        tables.update(load_table_dir(directory))
    return tables


def _error(status: int, category: str, message: str, line: int = 0, col: int = 0) -> Response:
    doc = ErrorDocument(category=category, line=line, col=col, message=message)
    return Response(doc.render(), status_code=status, media_type=TEXT_PLAIN)


def create_app(tables: dict[str, NotationTable] | None = None) -> FastAPI:
    app = FastAPI(title="strictmiz", docs_url=None, redoc_url=None, openapi_url=None)
    app.state.tables = tables if tables is not None else load_tables()

    @app.get("/health")
    def health():
        return Response("ok\n", media_type=TEXT_PLAIN)

    @app.get("/tables", response_model=list[TableInfo])
    def list_tables():
        return [
            TableInfo(name=name, symbols=table.symbol_lexemes())
            for name, table in sorted(app.state.tables.items())
        ]

    @app.api_route("/{view}", methods=["GET", "POST"])
    async def handle(view: str, request: Request):
        if view not in VIEWS:
            return _error(404, "not-found", f"no service at /{view}")
        declared = request.headers.get("content-length")
        if declared is not None and declared.isdigit() and int(declared) > MAX_BODY:
            return _error(413, "too-large", f"request body exceeds {MAX_BODY} bytes")

        query_model = NormalQuery if view in ("wsm", "msm") else PlainQuery
        try:
            query = query_model.model_validate(dict(request.query_params))
        except ValidationError as exc:
            problem = exc.errors()[0]
            where = ".".join(str(p) for p in problem["loc"])
            return _error(400, "usage", f"bad query parameter {where!r}: {problem['msg']}")

        name = request.headers.get(TABLE_HEADER, "default")
        table = app.state.tables.get(name)
        if table is None:
            return _error(400, "usage", f"unknown notation table {name!r}")

        raw = await request.body()
        if len(raw) > MAX_BODY:
            return _error(413, "too-large", f"request body exceeds {MAX_BODY} bytes")
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            return _error(400, "encoding", f"body is not valid UTF-8: {exc.reason}")

        fmt = getattr(query, "format", "text")
        try:
            body, content_type = await run_in_threadpool(render, view, text, table, fmt)
        except MizarError as exc:
            doc = ErrorDocument.from_exception(exc)
            return Response(doc.render(), status_code=400, media_type=TEXT_PLAIN)
        return Response(body, media_type=content_type)

    return app


def serve(port: int, tables: dict[str, NotationTable], host: str = "127.0.0.1") -> int:
    """Run the service until interrupted. Returns a process exit code."""
    import uvicorn

    try:
        with socket.socket(socket.AF_INET, socket.SOCK_STREAM) as probe:
            probe.bind((host, port))
    except OSError as exc:
        print(f"strictmiz: cannot bind {host}:{port}: {exc}", file=sys.stderr)
        return 1
    uvicorn.run(create_app(tables), host=host, port=port, log_level="warning")
    return 0
