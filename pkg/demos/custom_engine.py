"""Plug a custom BGP engine into the evaluation pipeline.

The evaluator only ever hands an engine a graph and one basic graph
pattern, so swapping the matching strategy is a matter of implementing
`evaluate` and registering the instance. The engine below orders patterns
by how many positions are constant before folding the join, a cheap static
heuristic; the registry then makes it available by name, and a differential
check against the reference engine confirms it returns identical sets.

Run with: python3 demos/custom_engine.py
"""

import random

from wdsparql import (
    Graph,
    ReferenceEngine,
    Variable,
    engine_names,
    get_engine,
    join,
    match_triple,
    parse_ntriples,
    parse_query,
    register_engine,
    run_query,
)
from wdsparql.algebra import UNIT


class ConstantsFirstEngine:
    """Naive fold, but most-constrained patterns join first."""

    def evaluate(self, graph, bgp):
        def constants(tp):
            positions = (tp.subject, tp.predicate, tp.object)
            return sum(not isinstance(pos, Variable) for pos in positions)

        result = UNIT
        for tp in sorted(bgp, key=constants, reverse=True):
            matches = frozenset(
                m for triple in graph
                if (m := match_triple(tp, triple)) is not None
            )
            result = join(result, matches)
        return result


DATA = """\
<http://example.org/a> <http://example.org/knows> <http://example.org/b> .
<http://example.org/b> <http://example.org/knows> <http://example.org/c> .
<http://example.org/c> <http://example.org/knows> <http://example.org/a> .
<http://example.org/a> <http://example.org/name> "alice" .
<http://example.org/b> <http://example.org/name> "bob" .
"""

QUERY = """\
PREFIX ex: <http://example.org/>
SELECT ?x ?n WHERE {
  ?x ex:knows ?y . ?y ex:name ?n
  OPTIONAL { ?x ex:name ?xn }
}
"""


def main() -> None:
    register_engine("constants-first", ConstantsFirstEngine())
    print(f"Registered engines: {', '.join(engine_names())}")

    graph = parse_ntriples(DATA)
    query = parse_query(QUERY)
    result = run_query(query, graph, engine=get_engine("constants-first"))
    print(f"\nSolutions under the custom engine ({len(result.solutions)} rows):")
    for mapping in sorted(result.solutions, key=str):
        print(f"  {mapping}")

    # Any engine must produce the same sets as the reference; order and
    # strategy are free, the result is not. Spot-check on random BGPs.
    reference = ReferenceEngine()
    custom = ConstantsFirstEngine()
    rng = random.Random(7)
    terms = [f"<http://example.org/{c}>" for c in "abc"]
    checked = 0
    for _ in range(200):
        triples = "".join(
            f"{rng.choice(terms)} <http://example.org/p{rng.randrange(2)}> "
            f"{rng.choice(terms)} .\n"
            for _ in range(rng.randrange(1, 8))
        )
        g = parse_ntriples(triples)
        pattern = parse_query(
            "SELECT * WHERE { "
            + " . ".join(
                f"?v{rng.randrange(3)} <http://example.org/p{rng.randrange(2)}> "
                f"?v{rng.randrange(3)}"
                for _ in range(rng.randrange(1, 4))
            )
            + " }"
        ).pattern
        bgp = pattern.bgp
        assert custom.evaluate(g, bgp) == reference.evaluate(g, bgp)
        checked += 1
    print(f"\nDifferential check: {checked} random BGPs agree with the reference.")


if __name__ == "__main__":
    main()
