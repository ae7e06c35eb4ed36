"""The four text views shared by the CLI and the HTTP service."""

from __future__ import annotations

from .msm import to_msm
from .notation import NotationTable
from .parser import parse_text
from .printer import PrintConfig, pretty
from .wsm import parse_wsm, to_wsm
from .xmlout import ast_to_xml

VIEWS = ("parse", "pretty", "wsm", "msm")
FORMATS = ("text", "xml")

TEXT_PLAIN = "text/plain; charset=utf-8"
APPLICATION_XML = "application/xml; charset=utf-8"


def render(
    view: str,
    text: str,
    table: NotationTable,
    fmt: str = "text",
    width: int = 80,
    source_name: str = "",
) -> tuple[str, str]:
    """Return ``(body, content_type)`` for *view* of *text*.

    The XML form of a normalized view describes the normalized text itself,
    so its positions point into the WSM or MSM output.
    """
    article = parse_text(text, table, source_name)
    if view == "parse":
        return ast_to_xml(article), APPLICATION_XML
    if view == "pretty":
        return pretty(article, PrintConfig(max_width=width), table), TEXT_PLAIN
    if view == "wsm":
        normalized = to_wsm(article)
    elif view == "msm":
        normalized = to_wsm(to_msm(article))
    else:
        raise ValueError(f"unknown view {view!r}")
    if fmt == "xml":
        reread = parse_wsm(normalized)
        return ast_to_xml(type(reread)(reread.items, source_name)), APPLICATION_XML
    return normalized, TEXT_PLAIN
