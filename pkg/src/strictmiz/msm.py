"""More strict normal form.

Four passes over the tree:

* ``expand_sugar`` splits multi-variable quantifiers, reservations and
  ``let`` items into single-variable ones;
* ``eliminate_then`` turns every ``then`` into an explicit reference;
* ``relabel`` labels every formula ``Label1``, ``Label2``, ... in textual
  order and remaps references;
* ``rename_variables`` renames reserved, bound and fixed variables to
  ``RV<k>``, ``BV<k>`` and ``CV<k>``.

``to_msm`` runs them in that order, doing the ``then`` and label work in one
coordinated pass.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from enum import Enum

from . import ast as A
from .errors import UnresolvedVariableError
from .parser import resolve_links


class Category(str, Enum):
    RESERVED = "reserved"
    BOUND = "bound"
    FIXED = "fixed"


PREFIX = {Category.RESERVED: "RV", Category.BOUND: "BV", Category.FIXED: "CV"}
CATEGORY_OF_PREFIX = {v: k for k, v in PREFIX.items()}


@dataclass(frozen=True)
class Introduction:
    index: int  # serial number among all introductions, textual order
    name: str
    category: Category
    line: int
    col: int
    in_proof: bool


@dataclass(frozen=True)
class Occurrence:
    index: int  # position in the textual walk over all variable names
    name: str
    binding: bool
    line: int
    col: int


class _Scopes:
    """Walks an article resolving every variable name to its introduction.

    With ``rename`` set, it also rebuilds the tree with category-encoding
    names.
    """

    def __init__(self, rename=False):
        self.rename = rename
        self.introductions: list[Introduction] = []
        self.occurrences: list[tuple[Occurrence, Introduction]] = []
        self.counters = {c: itertools.count(1) for c in Category}
        self.new_names: dict[int, str] = {}
        self.depth = 0

    def _occur(self, name, line, col, intro, binding):
        occ = Occurrence(len(self.occurrences), name, binding, line, col)
        self.occurrences.append((occ, intro))
        return self.new_names[intro.index] if self.rename else name

    def introduce(self, v: A.Variable, category, env):
        intro = Introduction(len(self.introductions), v.name, category, v.line, v.col, self.depth > 0)
        self.introductions.append(intro)
        self.new_names[intro.index] = f"{PREFIX[category]}{next(self.counters[category])}"
        env[v.name] = intro
        return replace(v, name=self._occur(v.name, v.line, v.col, intro, True))

    def use(self, name, line, col, env):
        intro = env.get(name)
        if intro is None:
            raise UnresolvedVariableError(f"variable {name!r} is not introduced", line, col)
        return self._occur(name, line, col, intro, False)

    # walkers; env maps a source name to its Introduction

    def items(self, items, env):
        env = dict(env)
        out = []
        for item in items:
            if isinstance(item, (A.Reservation, A.Let)):
                category = Category.RESERVED if isinstance(item, A.Reservation) else Category.FIXED
                segs = []
                for seg in item.segments:
                    outer = dict(env)
                    names = tuple(self.introduce(v, category, env) for v in seg.variables)
                    segs.append(A.Segment(names, self.type_expr(seg.type, outer)))
                out.append(type(item)(tuple(segs)))
                continue
            formula = self.formula(item.formula, env)
            just = getattr(item, "justification", None)
            if isinstance(just, A.Proof):
                self.depth += 1
                just = A.Proof(tuple(self.items(just.items, env)))
                self.depth -= 1
            if isinstance(item, A.Assume):
                out.append(replace(item, formula=formula))
            else:
                out.append(replace(item, formula=formula, justification=just))
        return out

    def type_expr(self, t, env):
        if not t.args:
            return t
        return A.TypeExpr(t.mode, tuple(self.term(a, env) for a in t.args))

    def term(self, t, env):
        if isinstance(t, A.Var):
            return replace(t, name=self.use(t.name, t.line, t.col, env))
        if isinstance(t, A.Num):
            return t
        if isinstance(t, A.PrefixApp):
            return replace(t, args=tuple(self.term(a, env) for a in t.args))
        return replace(t, left=self.term(t.left, env), right=self.term(t.right, env))

    def formula(self, f, env):
        if isinstance(f, A.Eq):
            return A.Eq(self.term(f.left, env), self.term(f.right, env))
        if isinstance(f, A.Pred):
            return replace(f, left=self.term(f.left, env), right=self.term(f.right, env))
        if isinstance(f, A.Is):
            return A.Is(self.term(f.term, env), self.type_expr(f.type, env))
        if isinstance(f, A.Not):
            return A.Not(self.formula(f.arg, env))
        if isinstance(f, A.Binary):
            return A.Binary(f.op, self.formula(f.left, env), self.formula(f.right, env))
        inner = dict(env)
        names = tuple(self.introduce(v, Category.BOUND, inner) for v in f.variables)
        type_expr = self.type_expr(f.type, env)
        return A.Quantified(f.kind, names, type_expr, self.formula(f.body, inner))


def _walk_scopes(article, rename=False):
    walker = _Scopes(rename)
    items = walker.items(article.items, {})
    return walker, A.Article(tuple(items), article.source_name)


def classify_variables(article: A.Article) -> dict[Occurrence, Category]:
    """Category of every variable occurrence, binding sites included, in textual order."""
    walker, _ = _walk_scopes(article)
    return {occ: intro.category for occ, intro in walker.occurrences}


def introductions(article: A.Article) -> list[Introduction]:
    walker, _ = _walk_scopes(article)
    return walker.introductions


def rename_variables(article: A.Article) -> A.Article:
    _, renamed = _walk_scopes(article, rename=True)
    return renamed


# sugar


def _check_no_capture(variables, type_expr, where):
    """Splitting ``x, y for T`` must not let T see an earlier x of the same list."""
    names = {v.name for v in variables[:-1]}
    for var in _type_vars(type_expr):
        if var.name in names:
            raise UnresolvedVariableError(
                f"cannot split {where}: type argument {var.name!r} would be captured",
                var.line,
                var.col,
            )


def _type_vars(t):
    stack = list(t.args)
    while stack:
        term = stack.pop()
        if isinstance(term, A.Var):
            yield term
        elif isinstance(term, A.PrefixApp):
            stack.extend(term.args)
        elif isinstance(term, A.InfixApp):
            stack += (term.left, term.right)


def _expand_formula(f):
    if isinstance(f, A.Not):
        return A.Not(_expand_formula(f.arg))
    if isinstance(f, A.Binary):
        return A.Binary(f.op, _expand_formula(f.left), _expand_formula(f.right))
    if isinstance(f, A.Quantified):
        if len(f.variables) > 1:
            _check_no_capture(f.variables, f.type, "quantifier")
        body = _expand_formula(f.body)
        for v in reversed(f.variables):
            body = A.Quantified(f.kind, (v,), f.type, body)
        return body
    return f


def _expand_items(items):
    out = []
    for item in items:
        if isinstance(item, (A.Reservation, A.Let)):
            kind = type(item)
            for seg in item.segments:
                if len(seg.variables) > 1:
                    _check_no_capture(seg.variables, seg.type, "declaration")
                out.extend(kind((A.Segment((v,), seg.type),)) for v in seg.variables)
            continue
        formula = _expand_formula(item.formula)
        just = getattr(item, "justification", None)
        if isinstance(just, A.Proof):
            out.append(replace(item, formula=formula, justification=A.Proof(tuple(_expand_items(just.items)))))
        else:
            out.append(replace(item, formula=formula))
    return out


def expand_sugar(article: A.Article) -> A.Article:
    return A.Article(tuple(_expand_items(article.items)), article.source_name)


# labels and links


def _existing_labels(article):
    return {item.label.name for _, item in A.walk_items(article.items) if getattr(item, "label", None)}


def _link_pass(article: A.Article, relabel_all: bool, drop_then: bool) -> A.Article:
    links = resolve_links(article)
    ordinal = {link.path: k for k, link in enumerate(links, start=1)}
    taken = _existing_labels(article)
    cited = {link.then_target for link in links if link.then_target is not None}
    names: dict[tuple, str] = {}
    for link in links:
        if relabel_all:
            names[link.path] = f"Label{ordinal[link.path]}"
        elif link.item.label is not None:
            names[link.path] = link.item.label.name
        elif drop_then and link.path in cited:
            fresh = f"Label{ordinal[link.path]}"
            while fresh in taken:
                fresh += "'"
            taken.add(fresh)
            names[link.path] = fresh
    by_path = {link.path: link for link in links}

    def rebuild(items, path):
        out = []
        for i, item in enumerate(items):
            here = path + (i,)
            link = by_path.get(here)
            if link is None:
                out.append(item)
                continue
            changes = {}
            if here in names:
                old = item.label
                changes["label"] = A.Label(names[here], old.line if old else 0, old.col if old else 0)
            just = getattr(item, "justification", None)
            if isinstance(just, A.Proof):
                changes["justification"] = A.Proof(tuple(rebuild(just.items, here)))
            elif isinstance(item, A.Assume):
                pass
            elif relabel_all or (drop_then and link.then_target is not None):
                refs = [A.Ref(names[t]) for t in link.ref_targets]
                if relabel_all:
                    refs = [replace(r, line=o.line, col=o.col) for r, o in zip(refs, just.refs)] if just else []
                if drop_then and link.then_target is not None:
                    refs.insert(0, A.Ref(names[link.then_target]))
                seen = set()
                unique = []
                for ref in refs:
                    if ref.name not in seen:
                        seen.add(ref.name)
                        unique.append(ref)
                changes["justification"] = A.By(tuple(unique)) if unique else None
            if drop_then and getattr(item, "then", False):
                changes["then"] = False
            out.append(replace(item, **changes))
        return out

    return A.Article(tuple(rebuild(article.items, ())), article.source_name)


def eliminate_then(article: A.Article) -> A.Article:
    """Replace each ``then`` by a reference to the previous formula's label.

    Existing labels are kept; a cited formula without a label receives a
    fresh ``Label<n>`` (n being its position among formula items).
    """
    return _link_pass(article, relabel_all=False, drop_then=True)


def relabel(article: A.Article) -> A.Article:
    return _link_pass(article, relabel_all=True, drop_then=False)


def to_msm(article: A.Article) -> A.Article:
    expanded = expand_sugar(article)
    linked = _link_pass(expanded, relabel_all=True, drop_then=True)
    return rename_variables(linked)


def unused_labels(article: A.Article) -> list[str]:
    cited = set()
    defined = []
    for _, item in A.walk_items(article.items):
        label = getattr(item, "label", None)
        if label is not None:
            defined.append(label.name)
        just = getattr(item, "justification", None)
        if isinstance(just, A.By):
            cited.update(ref.name for ref in just.refs)
    return [name for name in defined if name not in cited]


@dataclass
class Report:
    labels: list  # (label, used)
    variables: list  # (Introduction, msm name)

    def render(self) -> str:
        lines = [f"label {name} {'used' if used else 'unused'}" for name, used in self.labels]
        for intro, new in self.variables:
            where = "proof" if intro.in_proof else "top"
            lines.append(f"variable {intro.name} {intro.category.value} {intro.line}:{intro.col} {where} {new}")
        return "\n".join(lines) + "\n" if lines else ""


def analyze(article: A.Article) -> Report:
    """Label usage after MSM normalization and the origin of every variable."""
    expanded = expand_sugar(article)
    msm = rename_variables(_link_pass(expanded, relabel_all=True, drop_then=True))
    unused = set(unused_labels(msm))
    labels = [
        (item.label.name, item.label.name not in unused)
        for _, item in A.walk_items(msm.items)
        if getattr(item, "label", None) is not None
    ]
    walker, _ = _walk_scopes(expanded, rename=True)
    variables = [(intro, walker.new_names[intro.index]) for intro in walker.introductions]
    return Report(labels, variables)
