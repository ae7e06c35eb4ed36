"""Immutable syntax tree for the Mizar subset.

Source positions are excluded from equality, so two trees compare equal
when they are structurally equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

_pos = dict(default=0, compare=False, repr=False)


# Terms

@dataclass(frozen=True)
class Var:
    name: str
    line: int = field(**_pos)
    col: int = field(**_pos)


@dataclass(frozen=True)
class Num:
    value: str
    line: int = field(**_pos)
    col: int = field(**_pos)


@dataclass(frozen=True)
class PrefixApp:
    functor: str
    args: tuple
    line: int = field(**_pos)
    col: int = field(**_pos)


@dataclass(frozen=True)
class InfixApp:
    functor: str
    left: Term
    right: Term
    line: int = field(**_pos)
    col: int = field(**_pos)


Term = Union[Var, Num, PrefixApp, InfixApp]


@dataclass(frozen=True)
class TypeExpr:
    mode: str
    args: tuple = ()


# Formulas

@dataclass(frozen=True)
class Variable:
    """A name at its introduction site (reserve, let or quantifier)."""

    name: str
    line: int = field(**_pos)
    col: int = field(**_pos)


@dataclass(frozen=True)
class Pred:
    symbol: str
    left: Term
    right: Term
    line: int = field(**_pos)
    col: int = field(**_pos)


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Is:
    term: Term
    type: TypeExpr


@dataclass(frozen=True)
class Not:
    arg: Formula


AND, OR, IMPLIES, IFF = "&", "or", "implies", "iff"


@dataclass(frozen=True)
class Binary:
    op: str
    left: Formula
    right: Formula


FOR, EX = "for", "ex"


@dataclass(frozen=True)
class Quantified:
    kind: str
    variables: tuple
    type: TypeExpr
    body: Formula


Formula = Union[Pred, Eq, Is, Not, Binary, Quantified]


# Text items

@dataclass(frozen=True)
class Label:
    name: str
    line: int = field(**_pos)
    col: int = field(**_pos)


@dataclass(frozen=True)
class Ref:
    name: str
    line: int = field(**_pos)
    col: int = field(**_pos)


@dataclass(frozen=True)
class By:
    refs: tuple


@dataclass(frozen=True)
class Proof:
    items: tuple


Justification = Union[None, By, Proof]


@dataclass(frozen=True)
class Segment:
    variables: tuple
    type: TypeExpr


@dataclass(frozen=True)
class Reservation:
    segments: tuple


@dataclass(frozen=True)
class Let:
    segments: tuple


@dataclass(frozen=True)
class Assume:
    label: Label | None
    formula: Formula


@dataclass(frozen=True)
class Statement:
    then: bool
    label: Label | None
    formula: Formula
    justification: Justification = None


@dataclass(frozen=True)
class Thus:
    label: Label | None
    formula: Formula
    justification: Justification = None


@dataclass(frozen=True)
class Theorem:
    label: Label | None
    formula: Formula
    justification: Justification = None


TextItem = Union[Reservation, Let, Assume, Statement, Thus, Theorem]
LABELABLE = (Assume, Statement, Thus, Theorem)


@dataclass(frozen=True)
class Article:
    items: tuple
    source_name: str = field(default="", compare=False)


def walk_items(items, path=()):
    """Yield ``(path, item)`` for every item in pre-order, descending into proofs."""
    for i, item in enumerate(items):
        here = path + (i,)
        yield here, item
        just = getattr(item, "justification", None)
        if isinstance(just, Proof):
            yield from walk_items(just.items, here)
