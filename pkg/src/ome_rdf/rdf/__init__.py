"""Deterministic RDF core: terms, graphs, canonical Turtle/N-Triples."""

from .model import (
    BlankNode,
    Graph,
    Iri,
    Literal,
    Term,
    Triple,
    graph_insert,
    graph_merge,
    make_iri,
    term_sort_key,
)
from .isomorphism import brute_force_isomorphic, graph_isomorphic
from .parse import parse, parse_ntriples, parse_turtle
from .serialize import serialize, serialize_ntriples, serialize_turtle, term_to_ntriples

__all__ = [
    "BlankNode",
    "Graph",
    "Iri",
    "Literal",
    "Term",
    "Triple",
    "brute_force_isomorphic",
    "graph_insert",
    "graph_isomorphic",
    "graph_merge",
    "make_iri",
    "parse",
    "parse_ntriples",
    "parse_turtle",
    "serialize",
    "serialize_ntriples",
    "serialize_turtle",
    "term_sort_key",
    "term_to_ntriples",
]
