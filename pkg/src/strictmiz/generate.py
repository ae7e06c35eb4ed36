"""Random well-formed articles for round-trip and invariant testing.

Generated trees respect every rule the parser and the MSM passes enforce:
variables are introduced before use, labels are unique per block and only
cited after their definition, ``then`` never opens a block or precedes a
proof, and type arguments in ``reserve``/``let`` are plain names or numerals.
"""

from __future__ import annotations

import random

from . import ast as A
from .notation import Kind, NotationTable

VARIABLE_NAMES = ("x", "y", "z", "a", "b", "X", "Y", "Z", "R1", "u_1", "x'")
LABEL_NAMES = ("A1", "A2", "A3", "B", "C1", "Th1", "L2", "Z0")


class ArticleGenerator:
    def __init__(self, table: NotationTable, seed=None, max_depth: int = 4):
        self.table = table
        self.rng = random.Random(seed)
        self.max_depth = max_depth
        self.modes = [("set", (0,))] + sorted(
            (s, tuple(sorted(e.arities))) for (s, k), e in table.entries.items() if k is Kind.MODE
        )
        self.preds = sorted(s for (s, k) in table.entries if k is Kind.PREDICATE)
        self.infix = sorted(s for (s, k) in table.entries if k is Kind.FUNCTOR_INFIX)
        self.prefix = sorted(
            (s, next(iter(e.arities))) for (s, k), e in table.entries.items() if k is Kind.FUNCTOR_PREFIX
        )

    # terms and types

    def term(self, env, depth):
        rng = self.rng
        roll = rng.random()
        if depth <= 0 or roll < 0.5:
            if env and rng.random() < 0.85:
                return A.Var(rng.choice(sorted(env)))
            return A.Num(str(rng.choice((0, 1, 2, 7, 42))))
        if self.prefix and roll < 0.7:
            functor, arity = rng.choice(self.prefix)
            return A.PrefixApp(functor, tuple(self.term(env, depth - 1) for _ in range(arity)))
        if self.infix:
            functor = rng.choice(self.infix)
            return A.InfixApp(functor, self.term(env, depth - 1), self.term(env, depth - 1))
        return self.term(env, 0)

    def type_expr(self, env, restricted, depth=1):
        mode, arities = self.rng.choice(self.modes)
        k = self.rng.choice(arities)
        if restricted:
            args = tuple(self.term(env, 0) for _ in range(k))
        else:
            args = tuple(self.term(env, depth) for _ in range(k))
        return A.TypeExpr(mode, args)

    # formulas

    def atomic(self, env):
        rng = self.rng
        roll = rng.random()
        if roll < 0.45:
            return A.Eq(self.term(env, 2), self.term(env, 2))
        if roll < 0.8 and self.preds:
            return A.Pred(rng.choice(self.preds), self.term(env, 2), self.term(env, 2))
        return A.Is(self.term(env, 1), self.type_expr(env, restricted=False))

    def formula(self, env, depth=None):
        depth = self.max_depth if depth is None else depth
        rng = self.rng
        if depth <= 1 or rng.random() < 0.25:
            return self.atomic(env)
        roll = rng.random()
        if roll < 0.5:
            op = rng.choice((A.AND, A.AND, A.OR, A.IMPLIES, A.IFF))
            return A.Binary(op, self.formula(env, depth - 1), self.formula(env, depth - 1))
        if roll < 0.65:
            return A.Not(self.formula(env, depth - 1))
        names = self._fresh_list(rng.randint(1, 2))
        type_expr = self._type_avoiding(env, names, restricted=False)
        inner = env | set(names)
        body = self.formula(inner, depth - 1)
        kind = rng.choice((A.FOR, A.EX))
        return A.Quantified(kind, tuple(A.Variable(n) for n in names), type_expr, body)

    def _fresh_list(self, n):
        return self.rng.sample(VARIABLE_NAMES, n)

    def _type_avoiding(self, env, names, restricted):
        # Arguments never mention the names being introduced, so splitting the
        # list into single declarations cannot capture them.
        visible = env - set(names)
        return self.type_expr(visible, restricted)

    # items

    def article(self, n_items=8) -> A.Article:
        items = self.block(set(), {}, n_items, nesting=0)
        return A.Article(tuple(items))

    def block(self, env, visible_labels, n_items, nesting):
        rng = self.rng
        env = set(env)
        visible = dict(visible_labels)
        block_labels: set[str] = set()
        has_previous = False
        items = []
        for _ in range(n_items):
            roll = rng.random()
            if roll < 0.2 or not env:
                segments = []
                for _ in range(rng.randint(1, 2)):
                    names = self._fresh_list(rng.randint(1, 3))
                    segments.append(
                        A.Segment(tuple(A.Variable(n) for n in names), self._type_avoiding(env, names, True))
                    )
                    env |= set(names)
                kind = rng.choice((A.Reservation, A.Reservation, A.Let)) if nesting == 0 else A.Let
                items.append(kind(tuple(segments)))
                continue
            label = None
            if rng.random() < 0.6:
                free = [n for n in LABEL_NAMES if n not in block_labels]
                if free:
                    label = A.Label(rng.choice(free))
            formula = self.formula(env)
            if nesting > 0 and roll < 0.3:
                item = A.Assume(label, formula)
            else:
                just = None
                then = False
                jroll = rng.random()
                if jroll < 0.2 and nesting < 2:
                    body = self.block(env, visible, rng.randint(1, 3), nesting + 1)
                    just = A.Proof(tuple(body))
                elif jroll < 0.7 and visible:
                    refs = rng.sample(sorted(visible), min(len(visible), rng.randint(1, 2)))
                    just = A.By(tuple(A.Ref(r) for r in refs))
                if not isinstance(just, A.Proof) and has_previous and rng.random() < 0.4:
                    then = True
                if nesting > 0 and roll > 0.85 and not then:
                    item = A.Thus(label, formula, just)
                elif nesting == 0 and roll > 0.8 and not then:
                    item = A.Theorem(label, formula, just)
                else:
                    item = A.Statement(then, label, formula, just)
            items.append(item)
            has_previous = True
            if label is not None:
                block_labels.add(label.name)
                visible[label.name] = True
        if nesting > 0 and not any(isinstance(i, A.LABELABLE) for i in items):
            items.append(A.Thus(None, self.formula(env, 2), None))
        return items


def generate_articles(table: NotationTable, count: int, seed: int = 0, max_depth: int = 4):
    gen = ArticleGenerator(table, seed, max_depth)
    return [gen.article(gen.rng.randint(1, 10)) for _ in range(count)]
