import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ome_rdf.errors import RdfSyntaxError, UnsupportedConstructError
from ome_rdf.namespaces import XSD_INTEGER
from ome_rdf.rdf import (
    BlankNode,
    Graph,
    Iri,
    Literal,
    Triple,
    brute_force_isomorphic,
    parse,
    serialize,
)

from genutil import random_graph

EX = "http://ex.org/"


def t(s, p, o):
    return Triple(Iri(EX + s), Iri(EX + p), Iri(EX + o))


class TestNtriplesSerialize:
    def test_empty_graph_empty_document(self):
        assert serialize(Graph(), "ntriples") == ""

    def test_single_ground_triple_single_line(self):
        text = serialize(Graph([t("s", "p", "o")]), "ntriples")
        lines = text.splitlines()
        assert len(lines) == 1
        assert lines[0] == f"<{EX}s> <{EX}p> <{EX}o> ."

    def test_lines_sorted_bytewise_no_trailing_blank(self):
        g = Graph([t("z", "p", "o"), t("a", "p", "o"), t("m", "p", "o")])
        text = serialize(g, "ntriples")
        lines = text.split("\n")
        assert lines[-1] == ""  # final LF, nothing after it
        body = lines[:-1]
        assert body == sorted(body, key=lambda s: s.encode("utf-8"))

    def test_random_ground_graph_roundtrip_sorted_lines(self):
        # derived oracle: compare the sorted N-Triples line lists directly
        rng = random.Random(1234)
        g = random_graph(rng, max_triples=30, max_blanks=0)
        text = serialize(g, "ntriples")
        reparsed = parse(text, "ntriples")
        assert sorted(serialize(reparsed, "ntriples").splitlines()) == sorted(
            text.splitlines()
        )
        assert reparsed == g

    def test_literal_forms(self):
        g = Graph(
            [
                Triple(Iri(EX + "s"), Iri(EX + "p"), Literal('say "hi"\n')),
                Triple(Iri(EX + "s"), Iri(EX + "q"), Literal("5", Iri(XSD_INTEGER))),
                Triple(Iri(EX + "s"), Iri(EX + "r"), Literal("bonjour", language="fr")),
            ]
        )
        text = serialize(g, "ntriples")
        assert '"say \\"hi\\"\\n"' in text
        assert f'"5"^^<{XSD_INTEGER}>' in text
        assert '"bonjour"@fr' in text

    def test_canonical_across_construction_orders(self):
        triples = [t(f"s{i}", "p", f"o{i}") for i in range(12)]
        rng = random.Random(7)
        reference = serialize(Graph(triples), "ntriples")
        for _ in range(5):
            shuffled = triples[:]
            rng.shuffle(shuffled)
            assert serialize(Graph(shuffled), "ntriples") == reference
            assert serialize(Graph(shuffled), "turtle") == serialize(
                Graph(triples), "turtle"
            )


class TestParseNtriples:
    def test_empty_document(self):
        g = parse("", "ntriples")
        assert len(g) == 0

    def test_single_line(self):
        g = parse(f"<{EX}s> <{EX}p> <{EX}o> .\n", "ntriples")
        assert len(g) == 1
        assert t("s", "p", "o") in g

    def test_comments_and_blank_lines_tolerated(self):
        text = f"# header\n\n<{EX}s> <{EX}p> \"v\" .\n"
        assert len(parse(text, "ntriples")) == 1

    def test_syntax_error_carries_position(self):
        with pytest.raises(RdfSyntaxError) as err:
            parse(f"<{EX}s> <{EX}p> .\n", "ntriples")
        assert err.value.line == 1

    def test_literal_subject_rejected(self):
        with pytest.raises(RdfSyntaxError):
            parse(f'"lit" <{EX}p> <{EX}o> .\n', "ntriples")

    def test_bad_numeric_literal_rejected(self):
        with pytest.raises(RdfSyntaxError):
            parse(f'<{EX}s> <{EX}p> "abc"^^<{XSD_INTEGER}> .\n', "ntriples")

    def test_uchar_escapes(self):
        g = parse(f'<{EX}s> <{EX}p> "\\u00e9\\U0001F600" .\n', "ntriples")
        (triple,) = g
        assert triple.object.lexical == "é\U0001F600"


class TestParseTurtle:
    def test_prefix_and_three_statements(self):
        text = (
            "@prefix ex: <http://ex.org/> .\n"
            "ex:s ex:p ex:o .\n"
            "ex:s ex:q \"v\" .\n"
            "ex:o2 a ex:Thing .\n"
        )
        g = parse(text, "turtle")
        assert len(g) == 3
        assert len(g.prefixes) == 1
        # oracle: the same content written out N-Triples by hand
        expanded = (
            "<http://ex.org/s> <http://ex.org/p> <http://ex.org/o> .\n"
            '<http://ex.org/s> <http://ex.org/q> "v" .\n'
            "<http://ex.org/o2> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> "
            "<http://ex.org/Thing> .\n"
        )
        assert g == parse(expanded, "ntriples")

    def test_semicolons_and_commas(self):
        text = "@prefix ex: <http://ex.org/> .\nex:s ex:p ex:a, ex:b ; ex:q ex:c .\n"
        assert len(parse(text, "turtle")) == 3

    def test_sparql_prefix_form(self):
        g = parse("PREFIX ex: <http://ex.org/>\nex:s ex:p ex:o .", "turtle")
        assert len(g) == 1

    def test_undeclared_prefix_is_error(self):
        with pytest.raises(RdfSyntaxError):
            parse("ex:s ex:p ex:o .", "turtle")

    @pytest.mark.parametrize(
        "doc",
        [
            "@base <http://ex.org/> .",
            "@prefix ex: <http://ex.org/> .\nex:s ex:p (1 2) .",
            "@prefix ex: <http://ex.org/> .\nex:s ex:p [] .",
            "@prefix ex: <http://ex.org/> .\nex:s ex:p 42 .",
            "@prefix ex: <http://ex.org/> .\nex:s ex:p true .",
            '@prefix ex: <http://ex.org/> .\nex:s ex:p """long""" .',
        ],
    )
    def test_out_of_subset_constructs(self, doc):
        with pytest.raises(UnsupportedConstructError):
            parse(doc, "turtle")

    def test_blank_node_labels(self):
        g = parse(
            "@prefix ex: <http://ex.org/> .\n_:a ex:p _:b .\n_:b ex:p ex:o .",
            "turtle",
        )
        assert g.blank_labels() == {"a", "b"}

    def test_digit_leading_local_name(self):
        g = parse("@prefix ex: <http://ex.org/> .\nex:s ex:p ex:0a .", "turtle")
        (triple,) = g
        assert triple.object.value == "http://ex.org/0a"


class TestRoundTrip:
    @given(st.integers(0, 2**32))
    @settings(max_examples=60, deadline=None)
    def test_roundtrip_both_formats(self, seed):
        g = random_graph(random.Random(seed), max_triples=30, with_prefixes=True)
        for fmt in ("ntriples", "turtle"):
            again = parse(serialize(g, fmt), fmt)
            assert brute_force_isomorphic(g, again)

    @given(st.integers(0, 2**32))
    @settings(max_examples=40, deadline=None)
    def test_serialize_deterministic_under_shuffle(self, seed):
        rng = random.Random(seed)
        g = random_graph(rng, max_triples=20, with_prefixes=True)
        triples = list(g)
        rng.shuffle(triples)
        h = Graph(triples, dict(g.prefixes))
        assert serialize(h, "ntriples") == serialize(g, "ntriples")
        assert serialize(h, "turtle") == serialize(g, "turtle")
