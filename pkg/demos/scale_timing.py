"""Time the pipeline phases on a synthetic 100,000-triple graph.

The graph models 21,000 entities with types, names, group memberships,
random links, and sparse notes. Four query shapes of increasing OPTIONAL
count run over it; for each, the per-phase wall times and the row counts
flowing out of every BGP leaf and left-outer join are printed. The same
numbers are available from the command line via `wdsparql --time`.

Run with: python3 demos/scale_timing.py
"""

import random
import time

from wdsparql import Graph, Iri, Literal, Triple, parse_query, run_query

SCALE = "http://example.org/scale#"
RDF_TYPE = Iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type")

PREFIXES = (
    f"PREFIX s: <{SCALE}>\n"
    "PREFIX rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#>\n"
)
REQUIRED = "?x rdf:type s:Person . ?x s:memberOf s:g5 . ?x s:name ?n"

QUERIES = {
    "one optional": (
        f"{PREFIXES}SELECT * WHERE {{ {REQUIRED} OPTIONAL {{ ?x s:note ?o }} }}"
    ),
    "three optionals": (
        f"{PREFIXES}SELECT * WHERE {{"
        f" {{ {REQUIRED} OPTIONAL {{ ?x s:note ?o }} }}"
        " OPTIONAL { ?x s:linksTo ?t OPTIONAL { ?t s:name ?tn } } }"
    ),
    "two optionals, chained": (
        f"{PREFIXES}SELECT * WHERE {{"
        f" {{ {REQUIRED} OPTIONAL {{ ?x s:note ?o }} }}"
        " OPTIONAL { ?x s:linksTo ?t } }"
    ),
    "two optionals, nested": (
        f"{PREFIXES}SELECT * WHERE {{ ?x s:memberOf s:g7"
        " OPTIONAL { { ?x rdf:type s:Person . ?x s:name ?n . ?x s:linksTo ?t }"
        " OPTIONAL { ?t s:note ?o } } }"
    ),
}


def build_graph(size: int = 100_000, seed: int = 424242) -> Graph:
    rng = random.Random(seed)
    person, org = Iri(SCALE + "Person"), Iri(SCALE + "Organization")
    name, member = Iri(SCALE + "name"), Iri(SCALE + "memberOf")
    links, note = Iri(SCALE + "linksTo"), Iri(SCALE + "note")
    entities = [Iri(f"{SCALE}e{i}") for i in range(21_000)]
    groups = [Iri(f"{SCALE}g{i}") for i in range(20)]
    triples = set()
    for i, entity in enumerate(entities):
        triples.add(Triple(entity, RDF_TYPE, person if i % 10 < 8 else org))
        triples.add(Triple(entity, name, Literal(f"entity {i}")))
        triples.add(Triple(entity, member, groups[i % 20]))
        triples.add(Triple(entity, links, rng.choice(entities)))
        if i % 10 < 3:
            triples.add(Triple(entity, note, Literal(f"note {i}")))
    while len(triples) < size:
        triples.add(Triple(rng.choice(entities), links, rng.choice(entities)))
    return Graph(triples)


def main() -> None:
    t0 = time.perf_counter()
    graph = build_graph()
    print(f"Built {len(graph):,} triples in {time.perf_counter() - t0:.2f}s.")

    for label, text in QUERIES.items():
        query = parse_query(text)
        t0 = time.perf_counter()
        result = run_query(query, graph)
        total = time.perf_counter() - t0
        print(f"\n{label}: {len(result.solutions):,} rows in {total:.3f}s")
        phases = ", ".join(
            f"{phase} {seconds * 1000:.1f}ms"
            for phase, seconds in result.wall_times.items()
        )
        print(f"  phases: {phases}")
        leaves = ", ".join(f"#{i}: {n:,}" for i, n in result.per_leaf_counts)
        joins = ", ".join(f"#{i}: {n:,}" for i, n in result.per_join_counts)
        print(f"  rows per leaf:  {leaves}")
        print(f"  rows per join:  {joins}")


if __name__ == "__main__":
    main()
