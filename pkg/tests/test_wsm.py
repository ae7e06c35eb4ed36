from __future__ import annotations

import inspect

import pytest

from strictmiz import WsmFormatError, is_wsm, parse_text, parse_wsm, to_wsm
from strictmiz import ast as A
from strictmiz.wsm import wsm_lines

from .conftest import GOLDEN, corpus_paths


def _wsm(text, table):
    return to_wsm(parse_text(text, table))


def test_reserve_relation(rel_table):
    assert _wsm("reserve P,R for Relation of X,Y;", rel_table) == "reserve P , R for ( Relation of X , Y ) ;\n"


def test_zero_argument_type_unwrapped(rel_table):
    assert _wsm("reserve X for set;", rel_table) == "reserve X for set ;\n"


def test_formula_fully_parenthesized(table):
    text = "reserve X, Y, Z for set; X = X & Y = Y or Z = Z;"
    assert _wsm(text, table).splitlines()[1] == "( ( ( X = X ) & ( Y = Y ) ) or ( Z = Z ) ) ;"


def test_terms_and_quantifiers(table):
    line = _wsm("for x being Element of a + b holds dom(x) = x + x * 2 & not x in x;", table)
    assert line == (
        "( for x being ( Element of ( a + b ) ) holds ( ( dom ( x ) = ( x + ( x * 2 ) ) )"
        " & not ( x in x ) ) ) ;\n"
    )


def test_proof_layout(table):
    text = "theorem T: a = a proof\n  let x be set;\n  thus x = x;\nend;"
    assert _wsm(text, table) == (
        "theorem T : ( a = a ) proof\nlet x be set ;\nthus ( x = x ) ;\nend ;\n"
    )


def test_empty_article():
    assert to_wsm(A.Article(())) == ""
    assert parse_wsm("") == A.Article(())
    assert is_wsm("")


def test_parse_wsm_reserve():
    article = parse_wsm("reserve P , R for ( Relation of X , Y ) ;\n")
    assert article.items[0] == A.Reservation(
        (A.Segment((A.Variable("P"), A.Variable("R")), A.TypeExpr("Relation", (A.Var("X"), A.Var("Y")))),)
    )
    assert parse_wsm("reserve X for set ;\n").items[0].segments[0].type == A.TypeExpr("set", ())


def test_is_wsm_rejects_surface_text():
    assert not is_wsm("reserve P,R for Relation of X,Y;")
    assert is_wsm("reserve P , R for ( Relation of X , Y ) ;\n")


@pytest.mark.parametrize(
    "text",
    [
        "( a = a ) ; ( b = b ) ;\n",  # two items on one line
        "a = a ;\n",  # atom without parentheses
        "( a = a & b = b ) ;\n",  # binary formula missing inner parens
        "( a = a )\n;\n",  # item split over lines
        "reserve R for Relation of X ;\n",  # type with argument unwrapped
        "( a  = a ) ;\n",  # double space
        "( a = a ) ; \n",  # trailing space
        "\n( a = a ) ;\n",  # blank line
        "( a = ( b + c * d ) ) ;\n",  # infix chain not nested
        "T : ( a = a ) proof\n( b = b ) ;\n",  # unterminated proof
    ],
)
def test_format_errors(text):
    with pytest.raises(WsmFormatError) as info:
        parse_wsm(text)
    assert info.value.line >= 1
    assert not is_wsm(text)


def test_parse_wsm_takes_no_table():
    assert list(inspect.signature(parse_wsm).parameters) == ["text"]
    assert list(inspect.signature(is_wsm).parameters) == ["text"]


def test_roles_from_position():
    # the same spelling as a mode, a prefix functor and a predicate
    text = "( F ( x ) F ( x is ( F of x ) ) ) ;\n"
    article = parse_wsm("( x F x ) ;\n( F ( x ) = x ) ;\n( x is ( F of x ) ) ;\n")
    f1, f2, f3 = (item.formula for item in article.items)
    assert f1 == A.Pred("F", A.Var("x"), A.Var("x"))
    assert f2 == A.Eq(A.PrefixApp("F", (A.Var("x"),)), A.Var("x"))
    assert f3 == A.Is(A.Var("x"), A.TypeExpr("F", (A.Var("x"),)))
    with pytest.raises(WsmFormatError):
        parse_wsm(text)


@pytest.mark.parametrize("path", corpus_paths(), ids=lambda p: p.stem)
def test_corpus_golden_and_roundtrip(path, table):
    article = parse_text(path.read_text(encoding="utf-8"), table)
    text = to_wsm(article)
    assert text == (GOLDEN / f"{path.stem}.wsm").read_text(encoding="utf-8")
    assert parse_wsm(text) == article
    assert to_wsm(parse_wsm(text)) == text
    assert is_wsm(text)


def _count_items(items):
    n = 0
    for item in items:
        n += 1
        just = getattr(item, "justification", None)
        if isinstance(just, A.Proof):
            n += 1 + _count_items(just.items)  # body plus the closing line
    return n


def test_line_discipline(generated):
    for article in generated:
        text = to_wsm(article)
        lines = text.splitlines()
        assert lines == wsm_lines(article)
        assert len(lines) == _count_items(article.items)
        for line in lines:
            assert line and line == line.strip() and "  " not in line
            assert line.endswith(" ;") or line == ";" or line.endswith(" proof")


def test_main_parser_reads_wsm(generated, table):
    for article in generated[:200]:
        assert parse_text(to_wsm(article), table) == article
