from __future__ import annotations

import xml.etree.ElementTree as ET

import pytest

from strictmiz import Article, ast_to_xml, parse_text, xml_escape
from strictmiz.generate import generate_articles

from .conftest import GOLDEN, corpus_paths


def test_empty_article():
    assert ast_to_xml(Article(())) == '<?xml version="1.0"?>\n<Article src=""/>\n'


def test_reserve_set(rel_table):
    xml = ast_to_xml(parse_text("reserve X for set;", rel_table))
    assert xml == (
        '<?xml version="1.0"?>\n'
        '<Article src="">\n'
        "  <Reservation>\n"
        "    <Variables>\n"
        '      <Variable name="X" line="1" col="9"/>\n'
        "    </Variables>\n"
        '    <Type mode="set" args="0"/>\n'
        "  </Reservation>\n"
        "</Article>\n"
    )


def test_relation_type_has_two_variable_children(rel_table):
    root = ET.fromstring(ast_to_xml(parse_text("reserve P,R for Relation of X,Y;", rel_table)))
    (type_el,) = root.iter("Type")
    assert type_el.attrib == {"mode": "Relation", "args": "2"}
    assert [(c.tag, c.get("name")) for c in type_el] == [("Variable", "X"), ("Variable", "Y")]


@pytest.mark.parametrize(
    "raw, escaped", [("a&b", "a&amp;b"), ("x<y", "x&lt;y"), ("plain", "plain"), ("\"'>", "&quot;&apos;&gt;")]
)
def test_escape(raw, escaped):
    assert xml_escape(raw) == escaped


def test_attribute_order(table):
    xml = ast_to_xml(parse_text("a <= b & union(a, 2) = a + 1;", table))
    assert '<Pred symbol="&lt;=" line="1" col="3">' in xml
    assert '<PrefixApp symbol="union" args="2" line="1" col="10">' in xml
    assert '<Num value="2" line="1" col="19"/>' in xml
    assert '<InfixApp symbol="+" line="1" col="26">' in xml


@pytest.mark.parametrize("path", corpus_paths(), ids=lambda p: p.stem)
def test_corpus_golden(path, table):
    article = parse_text(path.read_text(encoding="utf-8"), table, path.name)
    assert ast_to_xml(article) == (GOLDEN / f"{path.stem}.xml").read_text(encoding="utf-8")


def test_generated_well_formed_and_deterministic(generated):
    for article in generated:
        xml = ast_to_xml(article)
        assert xml.startswith('<?xml version="1.0"?>\n')
        root = ET.fromstring(xml)
        assert root.tag == "Article"
        assert ast_to_xml(article) == xml


def test_injective_on_small_trees(table):
    seen: dict[str, object] = {}
    for article in generate_articles(table, 3000, seed=11, max_depth=2):
        xml = ast_to_xml(article)
        if xml in seen:
            assert seen[xml] == article
        seen[xml] = article
    assert len(seen) > 1000


def test_every_node_has_an_element(table):
    root = ET.fromstring(ast_to_xml(parse_text("theorem T: not (for x being set holds x = x) proof "
                                               "thus not (for x being set holds x = x); end;", table)))
    tags = [el.tag for el in root.iter()]
    for tag in ("Theorem", "Label", "Not", "For", "Variables", "Variable", "Type", "Eq", "Var",
                "Justification", "Proof", "Thus"):
        assert tag in tags
