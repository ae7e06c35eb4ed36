"""Command-line front end.

    strictmiz parse|pretty|wsm|msm|analyze [FILE|-] [--table FILE] [--format text|xml] [--width N]
    strictmiz stats [--wsmify] FILE...
    strictmiz serve [--port N] [--table FILE] [--tables DIR]

Exit status: 0 on success, 1 when the input text is rejected (the error
document goes to stderr), 2 on usage errors. With ``--server URL`` the text
views are fetched from a running service instead of computed locally.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .corpus import corpus_stats
from .errors import MizarError, NotationError
from .msm import analyze
from .notation import default_table, load_table_file
from .parser import parse_text
from .views import VIEWS, render
from .wsm import to_wsm


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="strictmiz", description="Mizar-subset parser and normalizers")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    def add_table(p):
        p.add_argument("--table", action="append", metavar="FILE", help="notation table (last one wins)")

    for name in (*VIEWS, "analyze"):
        p = sub.add_parser(name)
        p.add_argument("input", nargs="?", default="-", help="article file, or - for stdin")
        add_table(p)
        if name in ("wsm", "msm"):
            p.add_argument("--format", choices=("text", "xml"), default="text")
        if name == "pretty":
            p.add_argument("--width", type=int, default=80)
        if name in VIEWS:
            p.add_argument("--server", metavar="URL", help="ask a running service instead")
            p.add_argument("--table-name", default="default", help="server-side table (with --server)")

    p = sub.add_parser("stats")
    p.add_argument("inputs", nargs="*", help="article files")
    p.add_argument("--wsmify", action="store_true", help="normalize each article to WSM first")
    add_table(p)

    p = sub.add_parser("serve")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--tables", metavar="DIR", help="directory of *.tab files")
    add_table(p)
    return parser


def _table(args):
    if not args.table:
        return default_table()
    path = args.table[-1]
    try:
        return load_table_file(path)
    except OSError as exc:
        raise UsageError(f"cannot read table {path}: {exc.strerror}") from None
    except NotationError as exc:
        raise UsageError(f"bad table {path}: {exc}") from None


def _read(name: str, stdin) -> str:
    if name == "-":
        return stdin.read()
    try:
        return Path(name).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {name}: {exc.strerror}") from None


def _source_name(name: str) -> str:
    return "" if name == "-" else Path(name).name


def _remote(args, text) -> tuple[int, str, str]:
    import httpx

    params = {"format": args.format} if args.command in ("wsm", "msm") else {}
    url = args.server.rstrip("/") + "/" + args.command
    try:
        response = httpx.request(
            "POST", url, params=params, content=text.encode("utf-8"),
            headers={"X-Notation-Table": args.table_name}, timeout=60,
        )
    except httpx.HTTPError as exc:
        return 2, "", f"strictmiz: cannot reach {url}: {exc}\n"
    if response.status_code == 200:
        return 0, response.text, ""
    return 1, "", response.text


def run(argv, stdin=None) -> tuple[int, str, str]:
    """Run one command; returns ``(exit_code, stdout_text, stderr_text)``."""
    stdin = stdin if stdin is not None else sys.stdin
    try:
        args = build_parser().parse_args(argv)
        if args.command == "serve":
            from .service import load_tables, serve

            tables = load_tables(args.tables)
            if args.table:
                tables["default"] = _table(args)
            return serve(args.port, tables, args.host), "", ""
        if args.command == "stats":
            table = _table(args) if args.wsmify else None
            texts = []
            for name in args.inputs or ["-"]:
                text = _read(name, stdin)
                if args.wsmify:
                    text = to_wsm(parse_text(text, table, _source_name(name)))
                texts.append((name, text))
            return 0, corpus_stats(texts).render(), ""
        if getattr(args, "server", None):
            if args.table:
                raise UsageError("--table and --server are exclusive; use --table-name")
            if getattr(args, "width", 80) != 80:
                raise UsageError("--width is not available with --server")
            return _remote(args, _read(args.input, stdin))
        table = _table(args)
        text = _read(args.input, stdin)
        if args.command == "analyze":
            article = parse_text(text, table, _source_name(args.input))
            return 0, analyze(article).render(), ""
        if getattr(args, "width", 80) < 20:
            raise UsageError("--width must be at least 20")
        body, _ = render(
            args.command,
            text,
            table,
            fmt=getattr(args, "format", "text"),
            width=getattr(args, "width", 80),
            source_name=_source_name(args.input),
        )
        return 0, body, ""
    except UsageError as exc:
        return 2, "", f"{exc}\n"
    except MizarError as exc:
        return 1, "", exc.document()


def main(argv=None) -> int:
    code, out, err = run(sys.argv[1:] if argv is None else argv)
    if out:
        sys.stdout.write(out)
    if err:
        sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
