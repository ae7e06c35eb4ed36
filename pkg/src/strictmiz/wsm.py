"""Weakly strict normal form: one item per line, fully parenthesized.

``to_wsm`` writes an article so that every argument-bearing type, infix
term, atomic or binary formula and quantified formula sits inside its own
parentheses, with exactly one space between tokens. ``parse_wsm`` reads
such text back without any notation table: the role of every symbol
follows from where it stands.
"""

from __future__ import annotations

import re

from . import ast as A
from .errors import LabelError, MizarError, WsmFormatError
from .lexer import KEYWORDS

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")
_LINE = re.compile(r"\S+(?: \S+)*")
_NUMERAL = re.compile(r"(?:0|[1-9][0-9]*)\Z")
_PUNCT = frozenset(",;:()[]")
_BINOPS = frozenset((A.AND, A.OR, A.IMPLIES, A.IFF))


# emitter


def _commas(out, nodes, emit):
    for i, node in enumerate(nodes):
        if i:
            out.append(",")
        emit(out, node)


def _type(out, t):
    if not t.args:
        out.append(t.mode)
        return
    out += ("(", t.mode, "of")
    _commas(out, t.args, _term)
    out.append(")")


def _term(out, t):
    if isinstance(t, A.Var):
        out.append(t.name)
    elif isinstance(t, A.Num):
        out.append(t.value)
    elif isinstance(t, A.PrefixApp):
        out += (t.functor, "(")
        _commas(out, t.args, _term)
        out.append(")")
    else:
        out.append("(")
        _term(out, t.left)
        out.append(t.functor)
        _term(out, t.right)
        out.append(")")


def _name(out, v):
    out.append(v.name)


def _formula(out, f):
    if isinstance(f, A.Eq):
        out.append("(")
        _term(out, f.left)
        out.append("=")
        _term(out, f.right)
        out.append(")")
    elif isinstance(f, A.Pred):
        out.append("(")
        _term(out, f.left)
        out.append(f.symbol)
        _term(out, f.right)
        out.append(")")
    elif isinstance(f, A.Is):
        out.append("(")
        _term(out, f.term)
        out.append("is")
        _type(out, f.type)
        out.append(")")
    elif isinstance(f, A.Not):
        out.append("not")
        _formula(out, f.arg)
    elif isinstance(f, A.Binary):
        out.append("(")
        _formula(out, f.left)
        out.append(f.op)
        _formula(out, f.right)
        out.append(")")
    else:
        out += ("(", f.kind)
        _commas(out, f.variables, _name)
        out.append("being")
        _type(out, f.type)
        out.append("holds" if f.kind == A.FOR else "st")
        _formula(out, f.body)
        out.append(")")


def _segments(out, segments, keyword):
    for i, seg in enumerate(segments):
        if i:
            out.append(",")
        _commas(out, seg.variables, _name)
        out.append(keyword)
        _type(out, seg.type)


def _items(lines, items):
    for item in items:
        out: list[str] = []
        if isinstance(item, A.Reservation):
            out.append("reserve")
            _segments(out, item.segments, "for")
            out.append(";")
        elif isinstance(item, A.Let):
            out.append("let")
            _segments(out, item.segments, "be")
            out.append(";")
        else:
            if isinstance(item, A.Assume):
                out.append("assume")
            elif isinstance(item, A.Thus):
                out.append("thus")
            elif isinstance(item, A.Theorem):
                out.append("theorem")
            elif item.then:
                out.append("then")
            if item.label is not None:
                out += (item.label.name, ":")
            _formula(out, item.formula)
            just = getattr(item, "justification", None)
            if isinstance(just, A.Proof):
                out.append("proof")
                lines.append(" ".join(out))
                _items(lines, just.items)
                lines.append("end ;")
                continue
            if isinstance(just, A.By):
                out.append("by")
                _commas(out, just.refs, _name)
            out.append(";")
        lines.append(" ".join(out))


def wsm_lines(article: A.Article) -> list[str]:
    lines: list[str] = []
    _items(lines, article.items)
    return lines


def to_wsm(article: A.Article) -> str:
    lines = wsm_lines(article)
    return "\n".join(lines) + "\n" if lines else ""


# table-free reader


class _Reader:
    def __init__(self, text: str):
        toks = []
        first = []
        lines = text.split("\n")
        if lines[-1]:
            raise WsmFormatError("text does not end with a newline", len(lines), 1)
        for lineno, line in enumerate(lines[:-1], start=1):
            if not _LINE.fullmatch(line):
                raise WsmFormatError("tokens must be separated by exactly one space", lineno, 1)
            for k, m in enumerate(re.finditer(r"\S+", line)):
                toks.append((m.group(), lineno, m.start() + 1))
                first.append(k == 0)
        self.toks = toks
        self.first = first
        self.n = len(toks)
        self.pos = 0
        self.match = [None] * self.n
        stack = []
        for i, (t, _, _) in enumerate(toks):
            if t == "(":
                stack.append(i)
            elif t == ")" and stack:
                self.match[stack.pop()] = i
        self.scopes = [set()]
        self.may_break = True  # whether the next token may start a new line

    def fail(self, message, index=None):
        i = self.pos if index is None else index
        if i < self.n:
            _, line, col = self.toks[i]
        elif self.toks:
            _, line, col = self.toks[-1]
        else:
            line, col = 1, 1
        return WsmFormatError(message, line, col)

    def peek(self, offset=0):
        i = self.pos + offset
        return self.toks[i][0] if i < self.n else None

    def advance(self):
        if self.pos >= self.n:
            raise self.fail("unexpected end of text")
        if self.first[self.pos] and not self.may_break:
            raise self.fail("item continues on the next line")
        self.may_break = False
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def expect(self, text):
        if self.peek() != text:
            found = self.peek()
            raise self.fail(f"expected {text!r}, found {found!r}" if found else f"expected {text!r}")
        return self.advance()

    def end_of_line(self):
        """The token just consumed must be the last one on its line."""
        if self.pos < self.n and not self.first[self.pos]:
            raise self.fail("more than one item on a line")
        self.may_break = True

    # items

    def article(self):
        items = []
        while self.pos < self.n:
            items.append(self.item())
        return A.Article(tuple(items))

    def item(self):
        if not self.first[self.pos]:
            raise self.fail("item does not start a line")
        word = self.peek()
        if word in ("reserve", "let"):
            self.advance()
            segs = self.segments("for" if word == "reserve" else "be")
            self.end_of_line()
            return A.Reservation(segs) if word == "reserve" else A.Let(segs)
        if word == "assume":
            self.advance()
            label = self.label()
            formula = self.formula()
            self.expect(";")
            self.end_of_line()
            return A.Assume(label, formula)
        if word in ("thus", "theorem"):
            self.advance()
            label, formula, just = self.claim()
            return (A.Thus if word == "thus" else A.Theorem)(label, formula, just)
        then = word == "then"
        if then:
            self.advance()
        start = self.pos
        label, formula, just = self.claim()
        if then and isinstance(just, A.Proof):
            raise self.fail("'then' cannot link to a statement justified by a proof", start)
        return A.Statement(then, label, formula, just)

    def segments(self, keyword):
        segs = []
        while True:
            names = [self.variable()]
            while self.peek() == ",":
                self.advance()
                names.append(self.variable())
            self.expect(keyword)
            segs.append(A.Segment(tuple(names), self.type_expr(restricted=True)))
            if self.peek() == ",":
                self.advance()
                continue
            self.expect(";")
            return tuple(segs)

    def label(self):
        if self.peek(1) == ":" and self._is_ident(self.peek()):
            text, line, col = self.advance()
            self.advance()
            if text in self.scopes[-1]:
                raise LabelError(f"label {text!r} already defined in this block", line, col)
            self.scopes[-1].add(text)
            return A.Label(text, line, col)
        return None

    def claim(self):
        label = self.label()
        formula = self.formula()
        if self.peek() == "proof":
            self.advance()
            self.end_of_line()
            self.scopes.append(set())
            items = []
            while self.peek() != "end":
                if self.pos >= self.n:
                    raise self.fail("proof without 'end'")
                items.append(self.item())
            if not items:
                raise self.fail("empty proof")
            if not self.first[self.pos]:
                raise self.fail("'end' does not start a line")
            self.advance()
            self.scopes.pop()
            self.expect(";")
            self.end_of_line()
            return label, formula, A.Proof(tuple(items))
        just = None
        if self.peek() == "by":
            self.advance()
            refs = [self.ref()]
            while self.peek() == ",":
                self.advance()
                refs.append(self.ref())
            just = A.By(tuple(refs))
        self.expect(";")
        self.end_of_line()
        return label, formula, just

    @staticmethod
    def _is_ident(text):
        return text is not None and text not in KEYWORDS and _IDENT.match(text) is not None

    def variable(self):
        if not self._is_ident(self.peek()):
            raise self.fail(f"expected a variable, found {self.peek()!r}")
        text, line, col = self.advance()
        return A.Variable(text, line, col)

    def ref(self):
        if not self._is_ident(self.peek()):
            raise self.fail(f"expected a label, found {self.peek()!r}")
        text, line, col = self.advance()
        return A.Ref(text, line, col)

    # types, terms, formulas

    def _symbolic(self, text):
        return text is not None and text not in KEYWORDS and text not in _PUNCT

    def type_expr(self, restricted=False):
        if self.peek() == "(":
            self.advance()
            mode = self.peek()
            if not (mode == "set" or self._symbolic(mode)):
                raise self.fail(f"expected a mode, found {mode!r}")
            self.advance()
            self.expect("of")
            arg = self.restricted_term if restricted else self.term
            args = [arg()]
            while self.peek() == ",":
                self.advance()
                args.append(arg())
            self.expect(")")
            return A.TypeExpr(mode, tuple(args))
        mode = self.peek()
        if not (mode == "set" or self._symbolic(mode)):
            raise self.fail(f"expected a mode, found {mode!r}")
        self.advance()
        if self.peek() == "of":
            raise self.fail("type with arguments must be parenthesized")
        return A.TypeExpr(mode, ())

    def restricted_term(self):
        text = self.peek()
        if text is not None and self._is_ident(text):
            _, line, col = self.advance()
            return A.Var(text, line, col)
        if text is not None and _NUMERAL.match(text):
            _, line, col = self.advance()
            return A.Num(text, line, col)
        raise self.fail(f"expected a variable or numeral, found {text!r}")

    def term(self):
        text = self.peek()
        if text == "(":
            self.advance()
            left = self.term()
            op = self.peek()
            if not self._symbolic(op):
                raise self.fail(f"expected an infix functor, found {op!r}")
            _, line, col = self.advance()
            right = self.term()
            self.expect(")")
            return A.InfixApp(op, left, right, line, col)
        if not self._symbolic(text):
            raise self.fail(f"expected a term, found {text!r}")
        if self.peek(1) == "(":
            _, line, col = self.advance()
            self.advance()
            args = [self.term()]
            while self.peek() == ",":
                self.advance()
                args.append(self.term())
            self.expect(")")
            return A.PrefixApp(text, tuple(args), line, col)
        _, line, col = self.advance()
        if _NUMERAL.match(text):
            return A.Num(text, line, col)
        if _IDENT.match(text):
            return A.Var(text, line, col)
        raise self.fail(f"expected a term, found {text!r}", self.pos - 1)

    def formula(self):
        text = self.peek()
        if text == "not":
            self.advance()
            return A.Not(self.formula())
        if text != "(":
            raise self.fail(f"expected a parenthesized formula, found {text!r}")
        inner = self.peek(1)
        if inner in (A.FOR, A.EX):
            self.advance()
            quantified = self.quantified()
            self.expect(")")
            return quantified
        if inner == "not" or (
            inner == "("
            and self.match[self.pos + 1] is not None
            and self.match[self.pos + 1] + 1 < self.n
            and self.toks[self.match[self.pos + 1] + 1][0] in _BINOPS
        ):
            self.advance()
            left = self.formula()
            op = self.peek()
            if op not in _BINOPS:
                raise self.fail(f"expected a connective, found {op!r}")
            self.advance()
            right = self.formula()
            self.expect(")")
            return A.Binary(op, left, right)
        self.advance()
        left = self.term()
        op = self.peek()
        if op == "=":
            self.advance()
            result = A.Eq(left, self.term())
        elif op == "is":
            self.advance()
            result = A.Is(left, self.type_expr())
        elif self._symbolic(op):
            _, line, col = self.advance()
            result = A.Pred(op, left, self.term(), line, col)
        else:
            raise self.fail(f"expected '=', 'is' or a predicate, found {op!r}")
        self.expect(")")
        return result

    def quantified(self):
        kind = self.advance()[0]
        names = [self.variable()]
        while self.peek() == ",":
            self.advance()
            names.append(self.variable())
        self.expect("being")
        type_expr = self.type_expr()
        self.expect("holds" if kind == A.FOR else "st")
        return A.Quantified(kind, tuple(names), type_expr, self.formula())


def parse_wsm(text: str) -> A.Article:
    """Read WSM text back into an article. No notation table is involved."""
    return _Reader(text).article()


def is_wsm(text: str) -> bool:
    try:
        article = parse_wsm(text)
    except MizarError:
        return False
    return to_wsm(article) == text
