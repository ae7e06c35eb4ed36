"""Longest-match lexer driven by the notation table."""

from __future__ import annotations

import re
from functools import lru_cache
from typing import NamedTuple

from .errors import LexError
from .notation import NotationTable

KEYWORDS = frozenset(
    "reserve for of be being let assume thus then by proof end theorem holds "
    "ex st not & or implies iff is set =".split()
)
PUNCTUATION = frozenset(",;:()[]")

KEYWORD = "keyword"
IDENTIFIER = "identifier"
NUMERAL = "numeral"
SYMBOL = "declared-symbol"
PUNCT = "punctuation"

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_NUMERAL = re.compile(r"0|[1-9][0-9]*")
_SPACE = re.compile(r"(?:[ \t\r\f\v]+|::[^\n]*)+")
# Non-alphanumeric keywords; alphabetic ones are found via the identifier regex.
_OPERATOR_KEYWORDS = ("&", "=")


class Token(NamedTuple):
    kind: str
    text: str
    line: int
    column: int

    def __repr__(self):
        return f"{self.kind}({self.text})@{self.line}:{self.column}"


@lru_cache(maxsize=64)
def _symbol_regex(lexemes: tuple[str, ...]):
    spellings = sorted(
        set(lexemes) | set(_OPERATOR_KEYWORDS) | PUNCTUATION, key=lambda s: (-len(s), s)
    )
    return re.compile("|".join(re.escape(s) for s in spellings))


def tokenize(text: str, table: NotationTable) -> list[Token]:
    """Split *text* into tokens.

    At each position the longest lexeme among keywords, declared symbols,
    punctuation, identifiers and numerals wins. On equal length a keyword
    beats a declared symbol, which beats punctuation, identifier and numeral.
    ``::`` starts a comment running to the end of the line.
    """
    lexemes = table.symbol_lexemes()
    declared = frozenset(lexemes)
    symbols = _symbol_regex(tuple(lexemes))
    tokens: list[Token] = []
    append = tokens.append
    pos = 0
    line = 1
    line_start = 0
    n = len(text)
    while pos < n:
        m = _SPACE.match(text, pos)
        if m:
            pos = m.end()
            continue
        ch = text[pos]
        if ch == "\n":
            pos += 1
            line += 1
            line_start = pos
            continue
        best_len = 0
        best_kind = None
        m = _IDENT.match(text, pos)
        if m:
            best_len = m.end() - pos
            word = m.group()
            if word in KEYWORDS:
                best_kind = KEYWORD
            elif word in declared:
                best_kind = SYMBOL
            else:
                best_kind = IDENTIFIER
        else:
            m = _NUMERAL.match(text, pos)
            if m:
                best_len = m.end() - pos
                best_kind = NUMERAL
        m = symbols.match(text, pos)
        if m:
            length = m.end() - pos
            spelling = m.group()
            if length > best_len or (length == best_len and best_kind in (IDENTIFIER, NUMERAL)):
                best_len = length
                if spelling in KEYWORDS:
                    best_kind = KEYWORD
                elif spelling in declared:
                    best_kind = SYMBOL
                else:
                    best_kind = PUNCT
            elif length == best_len and spelling in KEYWORDS:
                best_kind = KEYWORD
        if not best_len:
            raise LexError(f"unexpected character {ch!r}", line, pos - line_start + 1)
        append(Token(best_kind, text[pos : pos + best_len], line, pos - line_start + 1))
        pos += best_len
    return tokens
