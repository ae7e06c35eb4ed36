"""Recursive-descent parser for the Mizar subset.

Grammar (EBNF)::

    Article     ::= {TextItem}
    TextItem    ::= Reservation | LetItem | AssumeItem | ThusItem | TheoremItem | Statement
    Reservation ::= "reserve" IdList "for" TypeExpr {"," IdList "for" TypeExpr} ";"
    LetItem     ::= "let" IdList "be" TypeExpr {"," IdList "be" TypeExpr} ";"
    AssumeItem  ::= "assume" [Label ":"] Formula ";"
    Statement   ::= ["then"] [Label ":"] Formula Justification ";"
    ThusItem    ::= "thus" [Label ":"] Formula Justification ";"
    TheoremItem ::= "theorem" [Label ":"] Formula Justification ";"
    Justification ::= | "by" Label {"," Label} | "proof" TextItem {TextItem} "end"
    TypeExpr    ::= Mode ["of" Term {"," Term}] | "(" TypeExpr ")"
    Formula     ::= Implies ["iff" Formula]
    Implies     ::= Or ["implies" Implies]
    Or          ::= And {"or" And}
    And         ::= Neg {"&" Neg}
    Neg         ::= "not" Neg | Atomic
    Atomic      ::= Term "=" Term | Term Pred Term | Term "is" TypeExpr
                  | "(" Formula ")" | Quantified
    Quantified  ::= "for" IdList "being" TypeExpr "holds" Formula
                  | "ex" IdList "being" TypeExpr "st" Formula
    Term        ::= Primary {InfixFunctor Primary}      (precedence climbing)
    Primary     ::= Identifier | Numeral | PrefixFunctor "(" Term {"," Term} ")" | "(" Term ")"

Type arguments inside ``reserve`` and ``let`` are limited to variables and
numerals. How many arguments a mode takes is decided by trying its declared
arities from largest to smallest and keeping the first one that lets the
whole enclosing item parse.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import ast as A
from .errors import LabelError, LinkError, ParseError, ReferenceError_, ResolutionError
from .lexer import IDENTIFIER, KEYWORD, NUMERAL, PUNCT, SYMBOL, Token, tokenize
from .notation import Kind, NotationTable


class _Choices:
    """Arity choices taken while parsing one item; drives depth-first retry."""

    def __init__(self, plan):
        self.plan = plan
        self.taken = []  # (options, mode, token) per choice point, in order

    def pick(self, options, mode, token):
        i = len(self.taken)
        idx = self.plan[i] if i < len(self.plan) else 0
        self.taken.append((options, mode, token))
        return options[idx]

    def next_plan(self):
        plan = [self.plan[i] if i < len(self.plan) else 0 for i in range(len(self.taken))]
        for j in range(len(plan) - 1, -1, -1):
            if plan[j] + 1 < len(self.taken[j][0]):
                return plan[:j] + [plan[j] + 1]
        return None


def _match_parens(tokens):
    match = [None] * len(tokens)
    stack = []
    for i, tok in enumerate(tokens):
        if tok.kind == PUNCT:
            if tok.text == "(":
                stack.append(i)
            elif tok.text == ")" and stack:
                match[stack.pop()] = i
    return match


class Parser:
    def __init__(self, tokens: list[Token], table: NotationTable):
        self.toks = tokens
        self.n = len(tokens)
        self.pos = 0
        self.table = table
        self.match = _match_parens(tokens)
        self.choices: _Choices | None = None
        self.scopes: list[set[str]] = [set()]
        self.label_log: list[tuple[set, str]] = []  # undo journal for retries
        entries = table.entries
        self.infix_prec = {s: e.priority for (s, k), e in entries.items() if k is Kind.FUNCTOR_INFIX}
        self.prefix_arity = {
            s: next(iter(e.arities)) for (s, k), e in entries.items() if k is Kind.FUNCTOR_PREFIX
        }
        self.predicates = {s for (s, k) in entries if k is Kind.PREDICATE}

    # token helpers

    def peek(self, offset=0) -> Token | None:
        i = self.pos + offset
        return self.toks[i] if i < self.n else None

    def at(self, kind, text=None, offset=0) -> bool:
        tok = self.peek(offset)
        return tok is not None and tok.kind == kind and (text is None or tok.text == text)

    def at_kw(self, text) -> bool:
        if self.pos >= self.n:
            return False
        tok = self.toks[self.pos]
        return tok.text == text and tok.kind == KEYWORD

    def at_punct(self, text) -> bool:
        if self.pos >= self.n:
            return False
        tok = self.toks[self.pos]
        return tok.text == text and tok.kind == PUNCT

    def advance(self) -> Token:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def error(self, expected: str, cls=ParseError):
        tok = self.peek()
        if tok is None:
            last = self.toks[-1] if self.toks else None
            line, col = (last.line, last.column + len(last.text)) if last else (1, 1)
            return cls(f"expected {expected}, found end of input", line, col)
        return cls(f"expected {expected}, found {tok.text!r}", tok.line, tok.column)

    def expect_kw(self, text) -> Token:
        if not self.at_kw(text):
            raise self.error(repr(text))
        return self.advance()

    def expect_punct(self, text) -> Token:
        if not self.at_punct(text):
            raise self.error(repr(text))
        return self.advance()

    def identifier(self, what="identifier") -> Token:
        if not self.at(IDENTIFIER):
            raise self.error(what)
        return self.advance()

    # article and items

    def article(self, source_name="") -> A.Article:
        items = []
        while self.pos < self.n:
            items.append(self.item())
        return A.Article(tuple(items), source_name)

    def item(self):
        start = self.pos
        outer = self.choices
        journal = len(self.label_log)
        depth = len(self.scopes)
        plan: list[int] = []
        furthest: ParseError | None = None
        first_ctx: _Choices | None = None
        while True:
            ctx = _Choices(plan)
            self.choices = ctx
            try:
                node = self._item()
            except LabelError:
                self.choices = outer
                raise
            except ParseError as exc:
                if furthest is None or (exc.line, exc.col) > (furthest.line, furthest.col):
                    furthest = exc
                if first_ctx is None:
                    first_ctx = ctx
                self.pos = start
                del self.scopes[depth:]
                while len(self.label_log) > journal:
                    owner, name = self.label_log.pop()
                    owner.discard(name)
                plan = ctx.next_plan()
                if plan is None:
                    self.choices = outer
                    raise self._resolution_failure(first_ctx, furthest) from None
                continue
            self.choices = outer
            return node

    @staticmethod
    def _resolution_failure(ctx: _Choices, furthest: ParseError) -> ParseError:
        if not ctx.taken or isinstance(furthest, ResolutionError):
            return furthest
        options, mode, tok = ctx.taken[0]
        tried = ", ".join(str(a) for a in options)
        return ResolutionError(
            f"no declared arity of mode {mode!r} lets the item parse (tried {tried}); "
            f"last failure: {furthest}",
            tok.line,
            tok.column,
            mode=mode,
            attempted=options,
        )

    def _item(self):
        tok = self.peek()
        if tok.kind == KEYWORD:
            word = tok.text
            if word == "reserve":
                self.advance()
                return A.Reservation(self.segments("for"))
            if word == "let":
                self.advance()
                return A.Let(self.segments("be"))
            if word == "assume":
                self.advance()
                label = self.label()
                formula = self.formula()
                self.expect_punct(";")
                return A.Assume(label, formula)
            if word == "thus":
                self.advance()
                label, formula, just = self.claim()
                return A.Thus(label, formula, just)
            if word == "theorem":
                self.advance()
                label, formula, just = self.claim()
                return A.Theorem(label, formula, just)
            if word == "then":
                then_tok = self.advance()
                label, formula, just = self.claim()
                if isinstance(just, A.Proof):
                    raise ParseError(
                        "'then' cannot link to a statement justified by a proof",
                        then_tok.line,
                        then_tok.column,
                    )
                return A.Statement(True, label, formula, just)
        label, formula, just = self.claim()
        return A.Statement(False, label, formula, just)

    def segments(self, keyword):
        segments = []
        while True:
            names = [self.identifier()]
            while self.at_punct(","):
                self.advance()
                names.append(self.identifier())
            self.expect_kw(keyword)
            type_expr = self.type_expr(restricted=True)
            segments.append(
                A.Segment(tuple(A.Variable(t.text, t.line, t.column) for t in names), type_expr)
            )
            if self.at_punct(","):
                self.advance()
                continue
            self.expect_punct(";")
            return tuple(segments)

    def label(self) -> A.Label | None:
        if self.at(IDENTIFIER) and self.at(PUNCT, ":", offset=1):
            tok = self.advance()
            self.advance()
            scope = self.scopes[-1]
            if tok.text in scope:
                raise LabelError(f"label {tok.text!r} already defined in this block", tok.line, tok.column)
            scope.add(tok.text)
            self.label_log.append((scope, tok.text))
            return A.Label(tok.text, tok.line, tok.column)
        return None

    def claim(self):
        label = self.label()
        formula = self.formula()
        just = self.justification()
        self.expect_punct(";")
        return label, formula, just

    def justification(self):
        if self.at_kw("by"):
            self.advance()
            refs = [self.identifier("label")]
            while self.at_punct(","):
                self.advance()
                refs.append(self.identifier("label"))
            return A.By(tuple(A.Ref(t.text, t.line, t.column) for t in refs))
        if self.at_kw("proof"):
            self.advance()
            self.scopes.append(set())
            items = []
            while not self.at_kw("end"):
                if self.pos >= self.n:
                    raise self.error("'end'")
                items.append(self.item())
            if not items:
                raise self.error("a text item")
            self.advance()
            self.scopes.pop()
            return A.Proof(tuple(items))
        return None

    # types

    def type_expr(self, restricted=False) -> A.TypeExpr:
        if self.at_punct("("):
            self.advance()
            inner = self.type_expr(restricted)
            self.expect_punct(")")
            return inner
        tok = self.peek()
        if tok is None:
            raise self.error("a mode")
        if tok.kind == KEYWORD and tok.text == "set":
            mode = "set"
        elif tok.kind == SYMBOL and Kind.MODE in self.table.kinds(tok.text):
            mode = tok.text
        elif tok.kind in (IDENTIFIER, SYMBOL):
            raise ParseError(f"undeclared mode symbol {tok.text!r}", tok.line, tok.column)
        else:
            raise self.error("a mode")
        self.advance()
        arities = self.table.lookup(mode, Kind.MODE)
        if self.at_kw("of"):
            options = sorted((a for a in arities if a >= 1), reverse=True)
            if not options:
                raise ResolutionError(
                    f"mode {mode!r} takes no arguments", tok.line, tok.column, mode=mode
                )
            self.advance()
            k = self.choices.pick(options, mode, tok)
            argument = self.restricted_term if restricted else self.term
            args = [argument()]
            for _ in range(k - 1):
                self.expect_punct(",")
                args.append(argument())
            return A.TypeExpr(mode, tuple(args))
        if 0 not in arities:
            raise ResolutionError(
                f"mode {mode!r} needs arguments (declared arities {sorted(arities)})",
                tok.line,
                tok.column,
                mode=mode,
                attempted=(0,),
            )
        return A.TypeExpr(mode, ())

    def restricted_term(self):
        tok = self.peek()
        if tok is not None and tok.kind == IDENTIFIER:
            self.advance()
            return A.Var(tok.text, tok.line, tok.column)
        if tok is not None and tok.kind == NUMERAL:
            self.advance()
            return A.Num(tok.text, tok.line, tok.column)
        raise self.error("a variable or numeral")

    # terms

    def term(self, min_prec=0):
        left = self.primary()
        infix_prec = self.infix_prec
        while True:
            tok = self.toks[self.pos] if self.pos < self.n else None
            if tok is None or tok.kind != SYMBOL:
                return left
            prec = infix_prec.get(tok.text)
            if prec is None or prec < min_prec:
                return left
            self.advance()
            right = self.term(prec + 1)
            left = A.InfixApp(tok.text, left, right, tok.line, tok.column)

    def primary(self):
        if self.pos >= self.n:
            raise self.error("a term")
        tok = self.toks[self.pos]
        kind = tok.kind
        if kind == IDENTIFIER:
            self.pos += 1
            return A.Var(tok.text, tok.line, tok.column)
        if kind == NUMERAL:
            self.pos += 1
            return A.Num(tok.text, tok.line, tok.column)
        if kind == SYMBOL and tok.text in self.prefix_arity:
            self.pos += 1
            arity = self.prefix_arity[tok.text]
            self.expect_punct("(")
            args = [self.term()]
            for _ in range(arity - 1):
                self.expect_punct(",")
                args.append(self.term())
            self.expect_punct(")")
            return A.PrefixApp(tok.text, tuple(args), tok.line, tok.column)
        if tok.kind == PUNCT and tok.text == "(":
            self.advance()
            inner = self.term()
            self.expect_punct(")")
            return inner
        raise self.error("a term")

    # formulas

    def formula(self):
        left = self.implies()
        if self.at_kw("iff"):
            self.advance()
            return A.Binary(A.IFF, left, self.formula())
        return left

    def implies(self):
        left = self.or_()
        if self.at_kw("implies"):
            self.advance()
            return A.Binary(A.IMPLIES, left, self.implies())
        return left

    def or_(self):
        left = self.and_()
        while self.at_kw("or"):
            self.advance()
            left = A.Binary(A.OR, left, self.and_())
        return left

    def and_(self):
        left = self.neg()
        while self.at_kw("&"):
            self.advance()
            left = A.Binary(A.AND, left, self.neg())
        return left

    def neg(self):
        if self.at_kw("not"):
            self.advance()
            return A.Not(self.neg())
        return self.atomic()

    def atomic(self):
        tok = self.peek()
        if tok is None:
            raise self.error("a formula")
        if tok.kind == KEYWORD and tok.text in (A.FOR, A.EX):
            return self.quantified()
        if tok.kind == PUNCT and tok.text == "(":
            close = self.match[self.pos]
            if close is None or not self._term_continues(close + 1):
                self.advance()
                inner = self.formula()
                self.expect_punct(")")
                return inner
        return self.relation()

    def _term_continues(self, i) -> bool:
        """Whether the token at *i* can follow a parenthesized term."""
        if i >= self.n:
            return False
        tok = self.toks[i]
        if tok.kind == KEYWORD:
            return tok.text in ("=", "is")
        if tok.kind == SYMBOL:
            return tok.text in self.predicates or tok.text in self.infix_prec
        return False

    def relation(self):
        left = self.term()
        tok = self.toks[self.pos] if self.pos < self.n else None
        if tok is not None:
            if tok.kind == KEYWORD and tok.text == "=":
                self.advance()
                return A.Eq(left, self.term())
            if tok.kind == KEYWORD and tok.text == "is":
                self.advance()
                return A.Is(left, self.type_expr())
            if tok.kind == SYMBOL and tok.text in self.predicates:
                self.advance()
                return A.Pred(tok.text, left, self.term(), tok.line, tok.column)
        raise self.error("'=', 'is' or a predicate")

    def quantified(self):
        kind = self.advance().text
        names = [self.identifier()]
        while self.at_punct(","):
            self.advance()
            names.append(self.identifier())
        self.expect_kw("being")
        type_expr = self.type_expr()
        self.expect_kw("holds" if kind == A.FOR else "st")
        body = self.formula()
        variables = tuple(A.Variable(t.text, t.line, t.column) for t in names)
        return A.Quantified(kind, variables, type_expr, body)


def parse_article(tokens: list[Token], table: NotationTable, source_name: str = "") -> A.Article:
    return Parser(tokens, table).article(source_name)


def parse_text(text: str, table: NotationTable, source_name: str = "") -> A.Article:
    return parse_article(tokenize(text, table), table, source_name)


def resolve_type_arguments(suffix: list[Token], mode_symbol: str, table: NotationTable):
    """Resolve the arguments of *mode_symbol* at the start of *suffix*.

    *suffix* holds the tokens following the mode symbol, up to the end of the
    enclosing item. Returns the argument terms and the tokens left over.
    Arities are tried from largest to smallest; the first one whose leftover
    tokens complete the item wins.
    """
    if not table.lookup(mode_symbol, Kind.MODE):
        raise ParseError(f"undeclared mode symbol {mode_symbol!r}")
    head = Token(SYMBOL if mode_symbol != "set" else KEYWORD, mode_symbol, 0, 0)
    probe = Parser([head] + list(suffix), table)
    outcome = {}

    def attempt():
        outcome["type"] = probe.type_expr(restricted=True)
        outcome["rest"] = probe.pos
        _check_item_tail(probe)
        return None

    probe._item = attempt
    probe.item()
    return list(outcome["type"].args), list(suffix[outcome["rest"] - 1 :])


def _check_item_tail(p: Parser):
    """Accept the remainder of a reserve/let item: more segments, then ';'."""
    keyword = None
    while True:
        if p.at_punct(";"):
            p.advance()
            if p.pos != p.n:
                raise p.error("end of item")
            return
        p.expect_punct(",")
        p.identifier()
        while p.at_punct(","):
            p.advance()
            p.identifier()
        tok = p.peek()
        if tok is None or tok.kind != KEYWORD or tok.text not in ("for", "be"):
            raise p.error("'for' or 'be'")
        if keyword is not None and tok.text != keyword:
            raise p.error(repr(keyword))
        keyword = tok.text
        p.advance()
        p.type_expr(restricted=True)


# justification links


@dataclass
class LinkGraph:
    """Justification dependencies between formula-bearing items.

    Nodes are item paths (index tuples into nested proof bodies), listed in
    pre-order. An edge ``(a, b)`` means item *a* is justified by item *b*.
    """

    nodes: list = field(default_factory=list)
    edges: set = field(default_factory=set)

    def successors(self, node):
        return sorted(b for a, b in self.edges if a == node)


@dataclass
class _Link:
    path: tuple
    item: object
    then_target: tuple | None
    ref_targets: list  # target path per by-reference, in order


def resolve_links(article: A.Article) -> list[_Link]:
    """Resolve every ``then`` and ``by`` in *article* to the item it cites.

    Labels are block scoped: a label is visible after its item, in its own
    block and in proof bodies nested later in that block.
    """
    links: list[_Link] = []

    def block(items, path, env):
        env = dict(env)
        previous = None
        for i, item in enumerate(items):
            here = path + (i,)
            if not isinstance(item, A.LABELABLE):
                continue
            then_target = None
            if getattr(item, "then", False):
                if previous is None:
                    raise LinkError("'then' has no previous statement in its block", *_item_pos(item))
                then_target = previous
            targets = []
            just = getattr(item, "justification", None)
            if isinstance(just, A.By):
                for ref in just.refs:
                    if ref.name not in env:
                        raise ReferenceError_(f"reference to undefined label {ref.name!r}", ref.line, ref.col)
                    targets.append(env[ref.name])
            links.append(_Link(here, item, then_target, targets))
            if isinstance(just, A.Proof):
                block(just.items, here, env)
            if item.label is not None:
                env[item.label.name] = here
            previous = here

    block(article.items, (), {})
    return links


def _item_pos(item):
    # items carry no position of their own; use the first positioned name inside
    stack = [item]
    while stack:
        node = stack.pop()
        if getattr(node, "line", 0):
            return node.line, node.col
        if isinstance(node, tuple):
            stack.extend(reversed(node))
        elif hasattr(node, "__dataclass_fields__"):
            stack.extend(reversed([getattr(node, f) for f in node.__dataclass_fields__]))
    return 0, 0


def link_graph(article: A.Article) -> LinkGraph:
    graph = LinkGraph()
    for link in resolve_links(article):
        graph.nodes.append(link.path)
        if link.then_target is not None:
            graph.edges.add((link.path, link.then_target))
        for target in link.ref_targets:
            graph.edges.add((link.path, target))
    return graph
