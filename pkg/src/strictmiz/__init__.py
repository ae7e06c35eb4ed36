"""Parse a Mizar subset against an explicit notation table and derive four
views of a text: parse-tree XML, pretty-printed text, and the weakly strict
(WSM) and more strict (MSM) normal forms."""

from .ast import Article
from .corpus import CorpusStats, corpus_stats
from .errors import (
    LabelError,
    LexError,
    LinkError,
    MizarError,
    NotationError,
    ParseError,
    ResolutionError,
    UnresolvedVariableError,
    WsmFormatError,
)
from .lexer import Token, tokenize
from .msm import (
    Category,
    analyze,
    classify_variables,
    eliminate_then,
    expand_sugar,
    relabel,
    rename_variables,
    to_msm,
    unused_labels,
)
from .notation import (
    Kind,
    NotationEntry,
    NotationTable,
    default_table,
    load_notation_table,
    lookup,
    symbol_lexemes,
)
from .parser import LinkGraph, link_graph, parse_article, parse_text, resolve_type_arguments
from .printer import PrintConfig, pretty
from .wsm import is_wsm, parse_wsm, to_wsm
from .xmlout import ast_to_xml, xml_escape

__version__ = "0.1.0"
