from __future__ import annotations

import pytest

from strictmiz import MizarError, PrintConfig, parse_text, parse_wsm, pretty, tokenize
from strictmiz import ast as A
from strictmiz.generate import generate_articles
from strictmiz.notation import Kind
from strictmiz.printer import overflow_lines

from .conftest import GOLDEN, corpus_paths


def test_redundant_parens_dropped():
    article = parse_wsm("( ( X = X ) & ( Y = Y ) ) ;\n")
    assert pretty(article) == "X = X & Y = Y;\n"


def test_needed_parens_kept_tight():
    article = parse_wsm("( ( ( X = X ) & ( Y = Y ) ) or ( Z = Z ) ) ;\n")
    assert pretty(article) == "X = X & Y = Y or Z = Z;\n"
    article = parse_wsm("( ( ( X = X ) or ( Y = Y ) ) & ( Z = Z ) ) ;\n")
    assert pretty(article) == "(X = X or Y = Y) & Z = Z;\n"


def test_empty_article():
    assert pretty(A.Article(())) == ""


def test_config_bounds():
    with pytest.raises(ValueError):
        PrintConfig(max_width=19)
    with pytest.raises(ValueError):
        PrintConfig(indent=0)


def test_spacing_and_indentation(table):
    text = "reserve x,y for set;theorem T:x=y proof A:x=x;thus x=y by A;end;"
    assert pretty(parse_text(text, table), table=table) == (
        "reserve x, y for set;\n"
        "theorem T: x = y proof\n"
        "  A: x = x;\n"
        "  thus x = y by A;\n"
        "end;\n"
    )


def test_quantifier_inside_conjunction_is_wrapped(table):
    text = "(for x being set holds x = x) & 1 = 1;"
    assert pretty(parse_text(text, table)) == "(for x being set holds x = x) & 1 = 1;\n"
    text = "1 = 1 & for x being set holds x = x;"
    assert pretty(parse_text(text, table)) == "1 = 1 & for x being set holds x = x;\n"


def test_term_parens(table):
    text = "(a + b) * c = a - (b - c) & a + b * c = (a + b) + c;"
    assert pretty(parse_text(text, table), table=table) == "(a + b) * c = a - (b - c) & a + b * c = a + b + c;\n"


def test_segment_types_protected(table):
    # taking X, S would leave the last segment without names, so no parens
    text = "reserve X, Y for set, R for (Relation of X), S for Relation of X, Y;"
    out = pretty(parse_text(text, table), table=table)
    assert out == "reserve X, Y for set, R for Relation of X, S for Relation of X, Y;\n"
    assert parse_text(out, table) == parse_text(text, table)
    # here S, T could be read as arguments of the first type
    text = "reserve X for set, R for (Relation of X), S, T for Relation of X, X;"
    out = pretty(parse_text(text, table), table=table)
    assert out == "reserve X for set, R for (Relation of X), S, T for Relation of X, X;\n"
    assert parse_text(out, table) == parse_text(text, table)


def test_wrapping_prefers_by(table):
    text = "reserve a for set; L: a = a; " + "M: a = a & a = a & a = a by L;"
    out = pretty(parse_text(text, table), PrintConfig(max_width=29), table)
    assert out.splitlines()[2:] == ["M: a = a & a = a & a = a", "  by L;"]


def test_wrapping_then_connectives(table):
    text = "reserve a for set; a = a & a = a implies a = a & a = a;"
    out = pretty(parse_text(text, table), PrintConfig(max_width=24), table)
    assert out.splitlines()[1:] == ["a = a & a = a", "  implies a = a & a = a;"]


@pytest.mark.parametrize("path", corpus_paths(), ids=lambda p: p.stem)
def test_corpus_golden(path, table):
    article = parse_text(path.read_text(encoding="utf-8"), table)
    out = pretty(article, table=table)
    assert out == (GOLDEN / f"{path.stem}.pretty").read_text(encoding="utf-8")
    assert overflow_lines(out, 80) == 0
    assert parse_text(out, table) == article
    for line in out.splitlines():
        assert line == line.rstrip()


@pytest.mark.parametrize("width", [20, 33, 80, 200])
def test_reparse_fidelity_generated(generated, table, width):
    config = PrintConfig(max_width=width)
    for article in generated:
        assert parse_text(pretty(article, config, table), table) == article
        assert parse_text(pretty(article, config), table) == article


def _paren_pairs(tokens):
    stack, pairs = [], []
    for i, t in enumerate(tokens):
        if t.text == "(":
            stack.append(i)
        elif t.text == ")":
            pairs.append((stack.pop(), i))
    return pairs


def test_paren_minimality(table):
    checked = 0
    for article in generate_articles(table, 150, seed=3, max_depth=3):
        text = pretty(article, PrintConfig(max_width=10_000), table)
        tokens = tokenize(text, table)
        for i, j in _paren_pairs(tokens):
            if i > 0 and Kind.FUNCTOR_PREFIX in table.kinds(tokens[i - 1].text):
                continue  # argument list, not a grouping
            stripped = " ".join(t.text for k, t in enumerate(tokens) if k not in (i, j))
            checked += 1
            try:
                reparsed = parse_text(stripped, table)
            except MizarError:
                continue
            assert reparsed != article, f"redundant parentheses in {text!r}"
    assert checked > 100
