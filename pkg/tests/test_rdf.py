"""Terms, triples, and the indexed graph."""

from __future__ import annotations

import itertools
import random

import pytest

from wdsparql.rdf import (
    BlankNode,
    Graph,
    Iri,
    Literal,
    Triple,
    format_term,
    format_triple,
)

from testkit import gen_graph

FOAF = "http://xmlns.com/foaf/0.1/"
EX = "http://example.org/"


class TestTerms:
    def test_iri_requires_text(self):
        with pytest.raises(ValueError):
            Iri("")

    def test_blank_node_requires_label(self):
        with pytest.raises(ValueError):
            BlankNode("")

    def test_literal_rejects_datatype_plus_language(self):
        with pytest.raises(ValueError):
            Literal("x", datatype=Iri(EX + "dt"), language="en")

    def test_equality_is_structural(self):
        assert Iri(EX + "a") == Iri(EX + "a")
        assert Iri(EX + "a") != Iri(EX + "b")
        assert Literal("1") != Literal("1", datatype=Iri(EX + "int"))
        assert Literal("x", language="en") != Literal("x", language="de")
        assert Literal("a") != Iri("a")

    def test_terms_are_hashable(self):
        assert len({Iri(EX + "a"), Iri(EX + "a"), Literal("a"), BlankNode("a")}) == 3


class TestFormatTerm:
    def test_iri(self):
        assert format_term(Iri(EX + "a")) == f"<{EX}a>"

    def test_blank(self):
        assert format_term(BlankNode("b0")) == "_:b0"

    def test_plain_literal(self):
        assert format_term(Literal("hi")) == '"hi"'

    def test_datatype_literal(self):
        dt = Iri("http://www.w3.org/2001/XMLSchema#integer")
        assert format_term(Literal("4", datatype=dt)) == f'"4"^^<{dt.value}>'

    def test_language_literal(self):
        assert format_term(Literal("hallo", language="de")) == '"hallo"@de'

    def test_escapes(self):
        assert format_term(Literal('say "hi"\n\t\\')) == '"say \\"hi\\"\\n\\t\\\\"'


class TestTriple:
    def test_literal_subject_rejected(self):
        with pytest.raises(ValueError):
            Triple(Literal("x"), Iri(EX + "p"), Iri(EX + "o"))

    def test_non_iri_predicate_rejected(self):
        with pytest.raises(ValueError):
            Triple(Iri(EX + "s"), BlankNode("p"), Iri(EX + "o"))
        with pytest.raises(ValueError):
            Triple(Iri(EX + "s"), Literal("p"), Iri(EX + "o"))

    def test_blank_subject_and_literal_object_allowed(self):
        t = Triple(BlankNode("s"), Iri(EX + "p"), Literal("o"))
        assert format_triple(t) == f'_:s <{EX}p> "o" .'


def _triple(s: int, p: int, o: int) -> Triple:
    return Triple(Iri(f"{EX}s{s}"), Iri(f"{EX}p{p}"), Iri(f"{EX}o{o}"))


class TestGraph:
    def test_set_semantics(self):
        g = Graph([_triple(1, 1, 1), _triple(1, 1, 1), _triple(1, 1, 2)])
        assert len(g) == 2

    def test_iteration_and_membership(self):
        triples = {_triple(i, 0, 0) for i in range(5)}
        g = Graph(triples)
        assert set(g) == triples
        assert _triple(0, 0, 0) in g
        assert _triple(9, 0, 0) not in g

    def test_triples_property_is_frozen(self):
        g = Graph([_triple(1, 1, 1)])
        assert isinstance(g.triples, frozenset)

    def test_equality_ignores_construction_order(self):
        a, b = _triple(1, 1, 1), _triple(2, 2, 2)
        assert Graph([a, b]) == Graph([b, a, a])
        assert Graph([a]) != Graph([b])
        assert len({Graph([a, b]), Graph([b, a])}) == 1

    def test_empty(self):
        g = Graph()
        assert len(g) == 0
        assert list(g.lookup()) == []

    def test_lookup_single_bound(self):
        g = Graph([_triple(1, 1, 1), _triple(1, 2, 1), _triple(2, 1, 1)])
        assert len(list(g.lookup(subject=Iri(f"{EX}s1")))) == 2
        assert len(list(g.lookup(predicate=Iri(f"{EX}p1")))) == 2
        assert len(list(g.lookup(object=Iri(f"{EX}o1")))) == 3

    def test_lookup_absent_term(self):
        g = Graph([_triple(1, 1, 1)])
        assert list(g.lookup(subject=Iri(f"{EX}nope"))) == []
        assert list(g.lookup(predicate=Iri(f"{EX}nope"))) == []
        assert list(g.lookup(object=Iri(f"{EX}nope"))) == []

    def test_lookup_fully_bound(self):
        t = _triple(1, 1, 1)
        g = Graph([t, _triple(2, 2, 2)])
        assert list(g.lookup(t.subject, t.predicate, t.object)) == [t]
        assert list(g.lookup(t.subject, t.predicate, Iri(f"{EX}o9"))) == []


def test_lookup_matches_linear_scan_on_every_bound_combination():
    """Every index path returns exactly what a full-scan filter would."""
    probe_terms = [Iri(f"{EX}x"), Literal("lit0")]
    for seed in range(40):
        g = gen_graph(seed, 50)
        pool_s = {t.subject for t in g} | set(probe_terms)
        pool_p = {t.predicate for t in g} | {Iri(f"{EX}x")}
        pool_o = {t.object for t in g} | set(probe_terms)
        rng = random.Random(seed)
        for mask in itertools.product((False, True), repeat=3):
            s = rng.choice(sorted(pool_s, key=format_term)) if mask[0] else None
            p = rng.choice(sorted(pool_p, key=format_term)) if mask[1] else None
            o = rng.choice(sorted(pool_o, key=format_term)) if mask[2] else None
            expected = {
                t for t in g
                if (s is None or t.subject == s)
                and (p is None or t.predicate == p)
                and (o is None or t.object == o)
            }
            got = list(g.lookup(s, p, o))
            assert set(got) == expected
            assert len(got) == len(expected), "lookup must not yield duplicates"
            assert g.count(s, p, o) == len(expected)


def test_bloggers_fixture_lookups(bloggers_graph):
    assert len(bloggers_graph) == 7
    maker = list(bloggers_graph.lookup(predicate=Iri(FOAF + "maker")))
    assert maker == [
        Triple(Iri("http://foobar.xx/blog.rdf"), Iri(FOAF + "maker"), Iri(EX + "id1"))
    ]
    assert bloggers_graph.count(subject=Iri(EX + "id1")) == 3
