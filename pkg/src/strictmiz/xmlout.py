"""Parse-tree XML serialization.

Element vocabulary: Article, Reservation, LetItem, Assume, Thus, Theorem,
Statement, Label, Justification, Ref, Proof, Variables, Variable, Type,
Pred, Eq, Is, Not, And, Or, Implies, Iff, For, Ex, Var, Num, PrefixApp,
InfixApp. A variable given directly as a type argument is written as
``Variable``; deeper inside terms it is ``Var``. Attributes appear in a fixed order: name/mode/symbol/value, then
args, then line and col (only for nodes that came from source text).
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from . import ast as A

DECLARATION = '<?xml version="1.0"?>'

_BINARY_TAGS = {A.AND: "And", A.OR: "Or", A.IMPLIES: "Implies", A.IFF: "Iff"}
_ITEM_TAGS = {A.Assume: "Assume", A.Statement: "Statement", A.Thus: "Thus", A.Theorem: "Theorem"}


def xml_escape(text: str) -> str:
    return escape(text, {'"': "&quot;", "'": "&apos;"})


class _Writer:
    def __init__(self):
        self.lines: list[str] = []
        self.depth = 0

    def _open(self, tag, attrs, empty):
        parts = [tag]
        for key, value in attrs:
            if value is None:
                continue
            parts.append(f'{key}="{xml_escape(str(value))}"')
        close = "/>" if empty else ">"
        self.lines.append("  " * self.depth + "<" + " ".join(parts) + close)

    def leaf(self, tag, *attrs):
        self._open(tag, attrs, empty=True)

    def start(self, tag, *attrs):
        self._open(tag, attrs, empty=False)
        self.depth += 1

    def end(self, tag):
        self.depth -= 1
        self.lines.append("  " * self.depth + f"</{tag}>")


def _pos(node):
    if node.line:
        return ("line", node.line), ("col", node.col)
    return ()


def ast_to_xml(article: A.Article) -> str:
    w = _Writer()
    w.lines.append(DECLARATION)
    if not article.items:
        w.leaf("Article", ("src", article.source_name))
    else:
        w.start("Article", ("src", article.source_name))
        for item in article.items:
            _item(w, item)
        w.end("Article")
    return "\n".join(w.lines) + "\n"


def _item(w, item):
    if isinstance(item, (A.Reservation, A.Let)):
        tag = "Reservation" if isinstance(item, A.Reservation) else "LetItem"
        w.start(tag)
        for seg in item.segments:
            _variables(w, seg.variables)
            _type(w, seg.type)
        w.end(tag)
        return
    tag = _ITEM_TAGS[type(item)]
    w.start(tag, ("then", "true" if getattr(item, "then", False) else None))
    if item.label is not None:
        w.leaf("Label", ("name", item.label.name), *_pos(item.label))
    _formula(w, item.formula)
    just = getattr(item, "justification", None)
    if isinstance(just, A.By):
        w.start("Justification", ("kind", "by"))
        for ref in just.refs:
            w.leaf("Ref", ("name", ref.name), *_pos(ref))
        w.end("Justification")
    elif isinstance(just, A.Proof):
        w.start("Justification", ("kind", "proof"))
        w.start("Proof")
        for sub in just.items:
            _item(w, sub)
        w.end("Proof")
        w.end("Justification")
    w.end(tag)


def _variables(w, variables):
    w.start("Variables")
    for v in variables:
        w.leaf("Variable", ("name", v.name), *_pos(v))
    w.end("Variables")


def _type(w, t: A.TypeExpr):
    if not t.args:
        w.leaf("Type", ("mode", t.mode), ("args", 0))
        return
    w.start("Type", ("mode", t.mode), ("args", len(t.args)))
    for arg in t.args:
        # A bare variable argument names a variable, as in a declaration.
        if isinstance(arg, A.Var):
            w.leaf("Variable", ("name", arg.name), *_pos(arg))
        else:
            _term(w, arg)
    w.end("Type")


def _term(w, t):
    if isinstance(t, A.Var):
        w.leaf("Var", ("name", t.name), *_pos(t))
    elif isinstance(t, A.Num):
        w.leaf("Num", ("value", t.value), *_pos(t))
    elif isinstance(t, A.PrefixApp):
        w.start("PrefixApp", ("symbol", t.functor), ("args", len(t.args)), *_pos(t))
        for arg in t.args:
            _term(w, arg)
        w.end("PrefixApp")
    else:
        w.start("InfixApp", ("symbol", t.functor), *_pos(t))
        _term(w, t.left)
        _term(w, t.right)
        w.end("InfixApp")


def _formula(w, f):
    if isinstance(f, A.Pred):
        w.start("Pred", ("symbol", f.symbol), *_pos(f))
        _term(w, f.left)
        _term(w, f.right)
        w.end("Pred")
    elif isinstance(f, A.Eq):
        w.start("Eq")
        _term(w, f.left)
        _term(w, f.right)
        w.end("Eq")
    elif isinstance(f, A.Is):
        w.start("Is")
        _term(w, f.term)
        _type(w, f.type)
        w.end("Is")
    elif isinstance(f, A.Not):
        w.start("Not")
        _formula(w, f.arg)
        w.end("Not")
    elif isinstance(f, A.Binary):
        tag = _BINARY_TAGS[f.op]
        w.start(tag)
        _formula(w, f.left)
        _formula(w, f.right)
        w.end(tag)
    else:
        tag = "For" if f.kind == A.FOR else "Ex"
        w.start(tag)
        _variables(w, f.variables)
        _type(w, f.type)
        _formula(w, f.body)
        w.end(tag)
