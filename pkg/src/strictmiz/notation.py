"""Notation tables: the explicit symbol environment the lexer and parser need.

A table declares modes (with a set of admissible arities), binary infix
predicates, and prefix or infix functors. The builtin mode ``set`` with
arity 0 is always present.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .errors import NotationError


# Keywords and punctuation cannot be redeclared; "=" is builtin but may be
# listed (the lexer then still reads it as the equality keyword).
RESERVED_SPELLINGS = frozenset(
    "reserve for of be being let assume thus then by proof end theorem holds "
    "ex st not & or implies iff is , ; : ( ) [ ]".split()
)


class Kind(str, Enum):
    MODE = "mode"
    PREDICATE = "predicate"
    FUNCTOR_PREFIX = "functor-prefix"
    FUNCTOR_INFIX = "functor-infix"


@dataclass(frozen=True)
class NotationEntry:
    symbol: str
    kind: Kind
    arities: frozenset[int]
    priority: int | None = None

    def __post_init__(self):
        if not self.symbol or any(c.isspace() for c in self.symbol):
            raise NotationError(f"bad symbol {self.symbol!r}")
        if self.symbol in RESERVED_SPELLINGS:
            raise NotationError(f"{self.symbol!r} is a keyword or punctuation")
        if not self.arities:
            raise NotationError(f"{self.symbol}: empty arity set")
        if self.kind in (Kind.PREDICATE, Kind.FUNCTOR_INFIX) and self.arities != {2}:
            raise NotationError(f"{self.symbol}: infix symbols are binary")
        if self.kind is Kind.FUNCTOR_PREFIX and (len(self.arities) != 1 or min(self.arities) < 1):
            raise NotationError(f"{self.symbol}: prefix functors take one arity >= 1")
        if self.kind is Kind.FUNCTOR_INFIX:
            if self.priority is None or not 0 <= self.priority <= 255:
                raise NotationError(f"{self.symbol}: infix priority must be in [0, 255]")
        elif self.priority is not None:
            raise NotationError(f"{self.symbol}: only infix functors carry a priority")


BUILTIN_SET = NotationEntry("set", Kind.MODE, frozenset({0}))


@dataclass(frozen=True)
class NotationTable:
    entries: dict[tuple[str, Kind], NotationEntry] = field(default_factory=dict)

    def __post_init__(self):
        by_symbol: dict[str, set[Kind]] = {}
        for symbol, kind in self.entries:
            by_symbol.setdefault(symbol, set()).add(kind)
        for symbol, kinds in by_symbol.items():
            if len(kinds) > 1 and kinds != {Kind.MODE, Kind.FUNCTOR_PREFIX}:
                raise NotationError(f"symbol {symbol!r} declared under incompatible kinds")
        # Lexer hot path reads these directly.
        object.__setattr__(self, "_by_symbol", {s: frozenset(k) for s, k in by_symbol.items()})
        object.__setattr__(self, "_lexemes", _sorted_lexemes(by_symbol))

    @classmethod
    def from_entries(cls, entries) -> NotationTable:
        table: dict[tuple[str, Kind], NotationEntry] = {}
        for entry in entries:
            key = (entry.symbol, entry.kind)
            if key in table:
                raise NotationError(f"duplicate declaration of {entry.symbol!r} as {entry.kind.value}")
            table[key] = entry
        return cls(table)

    def entry(self, symbol: str, kind: Kind) -> NotationEntry | None:
        if symbol == "set" and kind is Kind.MODE:
            return BUILTIN_SET
        return self.entries.get((symbol, kind))

    def lookup(self, symbol: str, kind: Kind) -> frozenset[int]:
        entry = self.entry(symbol, kind)
        return entry.arities if entry else frozenset()

    def kinds(self, symbol: str) -> frozenset[Kind]:
        return self._by_symbol.get(symbol, frozenset())

    def priority(self, symbol: str) -> int | None:
        entry = self.entries.get((symbol, Kind.FUNCTOR_INFIX))
        return entry.priority if entry else None

    def symbol_lexemes(self) -> list[str]:
        return list(self._lexemes)


def _sorted_lexemes(symbols) -> tuple[str, ...]:
    return tuple(sorted(symbols, key=lambda s: (-len(s), s)))


def symbol_lexemes(table: NotationTable) -> list[str]:
    """Declared symbols, longest first, ties broken lexicographically."""
    return table.symbol_lexemes()


def lookup(table: NotationTable, symbol: str, kind: Kind | str) -> frozenset[int]:
    return table.lookup(symbol, Kind(kind))


def load_notation_table(source: str) -> NotationTable:
    entries = []
    seen: set[tuple[str, Kind]] = set()
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        entry = _parse_declaration(line.split(), lineno)
        key = (entry.symbol, entry.kind)
        if key in seen:
            raise NotationError(
                f"duplicate declaration of {entry.symbol!r} as {entry.kind.value}", lineno, 1
            )
        seen.add(key)
        entries.append(entry)
    try:
        return NotationTable.from_entries(entries)
    except NotationError as exc:
        raise NotationError(exc.message) from None


def _parse_declaration(fields: list[str], lineno: int) -> NotationEntry:
    def fail(msg):
        raise NotationError(f"line {lineno}: {msg}", lineno, 1)

    def integer(text):
        try:
            return int(text)
        except ValueError:
            fail(f"expected an integer, got {text!r}")

    head = fields[0]
    if len(fields) > 1 and fields[1] == "set":
        fail("set is the builtin mode and cannot be redeclared")
    try:
        if head == "mode":
            if len(fields) < 3:
                fail("mode declaration needs a symbol and at least one arity")
            arities = [integer(f) for f in fields[2:]]
            if len(set(arities)) != len(arities):
                fail(f"repeated arity for mode {fields[1]!r}")
            if min(arities) < 0:
                fail("arities are non-negative")
            return NotationEntry(fields[1], Kind.MODE, frozenset(arities))
        if head == "pred":
            if len(fields) != 2:
                fail("pred declaration takes exactly one symbol")
            return NotationEntry(fields[1], Kind.PREDICATE, frozenset({2}))
        if head == "func":
            if len(fields) != 4:
                fail("func declaration is: func <symbol> prefix|infix <number>")
            number = integer(fields[3])
            if fields[2] == "prefix":
                return NotationEntry(fields[1], Kind.FUNCTOR_PREFIX, frozenset({number}))
            if fields[2] == "infix":
                return NotationEntry(fields[1], Kind.FUNCTOR_INFIX, frozenset({2}), number)
            fail(f"unknown functor fixity {fields[2]!r}")
    except NotationError as exc:
        if exc.line:
            raise
        fail(exc.message)
    fail(f"unknown declaration keyword {head!r}")


def load_table_file(path: str | Path) -> NotationTable:
    return load_notation_table(Path(path).read_text(encoding="utf-8"))


def default_table() -> NotationTable:
    return load_table_file(Path(__file__).with_name("tables") / "default.tab")


def load_table_dir(directory: str | Path) -> dict[str, NotationTable]:
    """Every ``*.tab`` file in *directory*, keyed by file stem."""
    return {p.stem: load_table_file(p) for p in sorted(Path(directory).glob("*.tab"))}
