"""Human-oriented pretty-printer.

Parentheses appear only where the parser would otherwise read a different
tree. Items longer than the configured width are broken before ``by``, then
before the outermost connectives, then between a quantifier header and its
body; continuation lines get one extra indentation level.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import ast as A
from .notation import Kind, NotationTable

_FORMULA_PREC = {A.IFF: 1, A.IMPLIES: 2, A.OR: 3, A.AND: 4}
_NOT_PREC = 5
_RIGHT_ASSOC = {A.IFF, A.IMPLIES}
_TIGHT_BEFORE = {")", ",", ";", ":"}

# Break ranks compare as (nesting level, kind); lower ranks break first.
_BY = (0, 0)
_SEGMENT = (0, 1)
_CONNECTIVE = 1
_QUANTIFIER = 2


@dataclass(frozen=True)
class PrintConfig:
    max_width: int = 80
    indent: int = 2

    def __post_init__(self):
        if self.max_width < 20:
            raise ValueError("max_width must be at least 20")
        if self.indent < 1:
            raise ValueError("indent must be positive")


class _Parts:
    """Tokens of one item with the separator before each and optional break rank."""

    def __init__(self):
        self.parts: list[tuple[str, str, tuple | None]] = []

    def tok(self, text, rank=None, glue=False):
        if not self.parts:
            sep = ""
        elif glue or text in _TIGHT_BEFORE or self.parts[-1][1] == "(":
            sep = ""
        else:
            sep = " "
        self.parts.append((sep, text, rank if sep else None))


class _Printer:
    def __init__(self, config: PrintConfig, table: NotationTable | None):
        self.config = config
        self.table = table
        self.lines: list[str] = []

    # terms and types

    def term(self, out, t, need=0):
        if isinstance(t, A.Var):
            out.tok(t.name)
        elif isinstance(t, A.Num):
            out.tok(t.value)
        elif isinstance(t, A.PrefixApp):
            out.tok(t.functor)
            out.tok("(", glue=True)
            for i, arg in enumerate(t.args):
                if i:
                    out.tok(",")
                self.term(out, arg)
            out.tok(")")
        else:
            prec = self.table.priority(t.functor) if self.table is not None else None
            if prec is None:
                # Unknown priority: parenthesize every nested infix application.
                wrap = need > 0
                left_need = right_need = 1000
            else:
                wrap = prec < need
                left_need, right_need = prec, prec + 1
            if wrap:
                out.tok("(")
            self.term(out, t.left, left_need)
            out.tok(t.functor)
            self.term(out, t.right, right_need)
            if wrap:
                out.tok(")")

    def type_expr(self, out, t, wrap=False):
        if wrap:
            out.tok("(")
        out.tok(t.mode)
        if t.args:
            out.tok("of")
            for i, arg in enumerate(t.args):
                if i:
                    out.tok(",")
                self.term(out, arg)
        if wrap:
            out.tok(")")

    # formulas

    def formula(self, out, f, need=0, open_ok=True, level=0, parent_op=None):
        if isinstance(f, A.Binary):
            prec = _FORMULA_PREC[f.op]
            wrap = prec < need
            if wrap:
                out.tok("(")
                open_ok = True
            if f.op != parent_op or wrap:
                level += 1
            if f.op in _RIGHT_ASSOC:
                left_need, right_need = prec + 1, prec
            else:
                left_need, right_need = prec, prec + 1
            self.formula(out, f.left, left_need, False, level, f.op)
            out.tok(f.op, rank=(level, _CONNECTIVE))
            self.formula(out, f.right, right_need, open_ok, level, f.op)
            if wrap:
                out.tok(")")
        elif isinstance(f, A.Not):
            wrap = _NOT_PREC < need
            if wrap:
                out.tok("(")
                open_ok = True
            out.tok("not")
            self.formula(out, f.arg, _NOT_PREC, open_ok, level + 1)
            if wrap:
                out.tok(")")
        elif isinstance(f, A.Quantified):
            wrap = not open_ok
            if wrap:
                out.tok("(")
            level += 1
            out.tok(f.kind)
            for i, v in enumerate(f.variables):
                if i:
                    out.tok(",")
                out.tok(v.name)
            out.tok("being")
            self.type_expr(out, f.type)
            out.tok("holds" if f.kind == A.FOR else "st")
            first = len(out.parts)
            self.formula(out, f.body, 0, True, level)
            sep, text, _ = out.parts[first]
            out.parts[first] = (sep, text, (level, _QUANTIFIER))
            if wrap:
                out.tok(")")
        elif isinstance(f, A.Eq):
            self.term(out, f.left)
            out.tok("=")
            self.term(out, f.right)
        elif isinstance(f, A.Pred):
            self.term(out, f.left)
            out.tok(f.symbol)
            self.term(out, f.right)
        else:
            self.term(out, f.term)
            out.tok("is")
            self.type_expr(out, f.type)

    # items

    def _segment_type_needs_parens(self, seg, following):
        """A non-final segment type with arguments must not swallow names of the next segment."""
        if not seg.type.args or following is None:
            return False
        k = len(seg.type.args)
        spare = len(following.variables)
        if self.table is None:
            return spare >= 2
        arities = self.table.lookup(seg.type.mode, Kind.MODE)
        return any(a > k and a - k < spare for a in arities)

    def segments(self, out, segments, keyword):
        for i, seg in enumerate(segments):
            for j, v in enumerate(seg.variables):
                if j:
                    out.tok(",")
                out.tok(v.name, rank=_SEGMENT if i and not j else None)
            out.tok(keyword)
            following = segments[i + 1] if i + 1 < len(segments) else None
            self.type_expr(out, seg.type, self._segment_type_needs_parens(seg, following))
            if following is not None:
                out.tok(",")

    def items(self, items, depth):
        for item in items:
            out = _Parts()
            if isinstance(item, (A.Reservation, A.Let)):
                reserve = isinstance(item, A.Reservation)
                out.tok("reserve" if reserve else "let")
                self.segments(out, item.segments, "for" if reserve else "be")
                out.tok(";")
                self.emit(out, depth)
                continue
            if isinstance(item, A.Assume):
                out.tok("assume")
            elif isinstance(item, A.Thus):
                out.tok("thus")
            elif isinstance(item, A.Theorem):
                out.tok("theorem")
            elif item.then:
                out.tok("then")
            if item.label is not None:
                out.tok(item.label.name)
                out.tok(":")
            self.formula(out, item.formula)
            just = getattr(item, "justification", None)
            if isinstance(just, A.Proof):
                out.tok("proof")
                self.emit(out, depth)
                self.items(just.items, depth + 1)
                end = _Parts()
                end.tok("end")
                end.tok(";")
                self.emit(end, depth)
                continue
            if isinstance(just, A.By):
                out.tok("by", rank=_BY)
                for i, ref in enumerate(just.refs):
                    if i:
                        out.tok(",")
                    out.tok(ref.name)
            out.tok(";")
            self.emit(out, depth)

    # layout

    def emit(self, out: _Parts, depth):
        indent = " " * (self.config.indent * depth)
        cont = " " * (self.config.indent * (depth + 1))
        self.lines.extend(self._layout(out.parts, indent, cont))

    def _layout(self, parts, indent, cont):
        text = _join(parts)
        width = self.config.max_width
        if len(indent) + len(text) <= width:
            return [indent + text]
        ranks = [p[2] for p in parts[1:] if p[2] is not None]
        if not ranks:
            return [indent + text]
        lowest = min(ranks)
        groups = [[parts[0]]]
        for part in parts[1:]:
            if part[2] == lowest:
                groups.append([part])
            else:
                groups[-1].append(part)
        lines = []
        current = groups[0]
        current_indent = indent
        for group in groups[1:]:
            if len(current_indent) + len(_join(current + group)) <= width:
                current = current + group
                continue
            lines.extend(self._layout(current, current_indent, cont))
            current = [("",) + group[0][1:]] + group[1:]
            current_indent = cont
        lines.extend(self._layout(current, current_indent, cont))
        return lines


def _join(parts):
    return "".join(sep + text for sep, text, _ in parts).lstrip(" ")


def pretty(article: A.Article, config: PrintConfig | None = None, table: NotationTable | None = None) -> str:
    """Pretty-print *article*.

    With *table*, parentheses around reservation types use the declared
    arities; without it they are added conservatively.
    """
    printer = _Printer(config or PrintConfig(), table)
    printer.items(article.items, 0)
    return "\n".join(printer.lines) + "\n" if printer.lines else ""


def overflow_lines(text: str, width: int) -> int:
    return sum(1 for line in text.split("\n") if len(line) > width)
