"""Walk through evaluating three queries over a tiny FOAF graph.

The data describes one blogger: an agent with a name and a weblog, the
weblog's RSS channel, and the channel's maker. Three queries over it show
the core behaviors: a plain join, an OPTIONAL that extends rows when it
can, and a query whose OPTIONAL leaks a variable and is therefore refused
by the planner.

Run with: python3 demos/bloggers_walkthrough.py
"""

from wdsparql import (
    NotWellDesignedError,
    format_term,
    parse_ntriples,
    parse_query,
    run_query,
)

DATA = """\
<http://example.org/id1> <http://xmlns.com/foaf/0.1/name> "Jon Foobar" .
<http://example.org/id1> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://xmlns.com/foaf/0.1/Agent> .
<http://example.org/id1> <http://xmlns.com/foaf/0.1/weblog> <http://foobar.xx/blog> .
<http://foobar.xx/blog> <http://purl.org/dc/elements/1.1/title> "title" .
<http://foobar.xx/blog> <http://www.w3.org/2000/01/rdf-schema#seeAlso> <http://foobar.xx/blog.rdf> .
<http://foobar.xx/blog.rdf> <http://xmlns.com/foaf/0.1/maker> <http://example.org/id1> .
<http://foobar.xx/blog.rdf> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://purl.org/rss/1.0/channel> .
"""

PREFIXES = """\
PREFIX foaf: <http://xmlns.com/foaf/0.1/>
PREFIX rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#>
"""

JOIN_QUERY = PREFIXES + """\
SELECT * WHERE { ?x foaf:maker ?y . ?z foaf:name ?u }
"""

OPTIONAL_QUERY = PREFIXES + """\
SELECT * WHERE {
  { ?x foaf:maker ?y OPTIONAL { ?y rdf:type ?v } }
  ?z foaf:name ?u
}
"""

LEAKY_QUERY = PREFIXES + """\
SELECT * WHERE {
  { ?x foaf:maker ?y OPTIONAL { ?y rdf:type ?z } }
  ?z foaf:name ?u
}
"""


def show(title: str, solutions) -> None:
    print(f"\n{title}")
    if not solutions:
        print("  (no solutions)")
    for mapping in sorted(solutions, key=str):
        row = ", ".join(
            f"?{var.name} -> {format_term(term)}" for var, term in sorted(
                mapping.items(), key=lambda item: item[0].name
            )
        )
        print(f"  {{ {row} }}")


def main() -> None:
    graph = parse_ntriples(DATA)
    print(f"Loaded {len(graph)} triples about one blogger.")

    # A two-pattern join: the maker of the channel is also the named agent,
    # so ?y and ?z land on the same IRI in the single solution.
    result = run_query(parse_query(JOIN_QUERY), graph)
    show("Join query:", result.solutions)

    # Adding OPTIONAL { ?y rdf:type ?v } extends that row with the maker's
    # type. Had the type triple been absent, the row would survive unchanged
    # with ?v unbound; OPTIONAL never removes solutions.
    result = run_query(parse_query(OPTIONAL_QUERY), graph)
    show("Optional-type query:", result.solutions)

    # Reusing ?z inside the OPTIONAL couples it to the outer name pattern:
    # the variable appears in the optional side and outside it, but not in
    # the required side. Such a pattern is not well-designed and the planner
    # refuses it up front.
    print("\nLeaky query:")
    try:
        run_query(parse_query(LEAKY_QUERY), graph)
    except NotWellDesignedError as exc:
        print(f"  rejected: {exc}")

    # The direct semantics still assigns it a meaning; opting into the
    # fallback evaluates it without a plan. Here the coupling makes the
    # optional part incompatible with every outer row, so nothing survives.
    result = run_query(parse_query(LEAKY_QUERY), graph, mode="oracle-fallback")
    show("Leaky query under the direct-evaluation fallback:", result.solutions)


if __name__ == "__main__":
    main()
