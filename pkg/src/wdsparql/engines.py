"""BGP matching engines behind a common interface.

The evaluator treats BGP matching as a black box: anything with an
`evaluate(graph, bgp)` returning the full solution set can plug in through
the registry. Two engines ship here: a backtracking matcher meant for real
use and a deliberately naive fold kept as its differential baseline.
"""

from __future__ import annotations

from typing import Protocol

from .algebra import Bgp, Mapping, UNIT, Variable, join, match_triple
from .rdf import Graph


class BgpEngine(Protocol):
    def evaluate(self, graph: Graph, bgp: Bgp) -> frozenset[Mapping]:
        """All mappings with domain vars(bgp) embedding the BGP in the graph.

        Distinct variables may bind the same term. Implementations must not
        mutate the graph and must be safe for concurrent calls.
        """


class ReferenceEngine:
    """Backtracking matcher with a fewest-candidates-first pattern order.

    At each step the pattern with the smallest candidate count under the
    bindings so far is expanded (ties broken by source order); candidates
    come from the graph index with bound positions substituted. The
    heuristic changes only the visit order, never the result set.
    """

    def evaluate(self, graph: Graph, bgp: Bgp) -> frozenset[Mapping]:
        if not bgp:
            return UNIT
        results: set[Mapping] = set()
        self._search(graph, list(bgp), Mapping(), results)
        return frozenset(results)

    def _search(self, graph: Graph, remaining: list, binding: Mapping, results: set) -> None:
        if not remaining:
            results.add(binding)
            return
        best_index = 0
        best_count = None
        for i, tp in enumerate(remaining):
            count = graph.count(*_substitute(tp, binding))
            if best_count is None or count < best_count:
                best_index, best_count = i, count
                if count == 0:
                    break
        tp = remaining[best_index]
        rest = remaining[:best_index] + remaining[best_index + 1:]
        for triple in graph.lookup(*_substitute(tp, binding)):
            found = match_triple(tp, triple)
            # lookup already enforced the bound positions, so the merge
            # cannot conflict; repeated-variable mismatches return None
            if found is not None:
                self._search(graph, rest, binding.merge(found), results)


class NaiveEngine:
    """Literal fold of the algebra join over one full scan per pattern."""

    def evaluate(self, graph: Graph, bgp: Bgp) -> frozenset[Mapping]:
        result = UNIT
        for tp in bgp:
            matches = frozenset(
                m for triple in graph
                if (m := match_triple(tp, triple)) is not None
            )
            result = join(result, matches)
        return result


def _substitute(tp, binding: Mapping):
    """Lookup arguments for a pattern under a partial binding.

    Constants pass through; bound variables become their terms; unbound
    variables become None (wildcard).
    """
    out = []
    for pos in (tp.subject, tp.predicate, tp.object):
        if isinstance(pos, Variable):
            out.append(binding.get(pos))
        else:
            out.append(pos)
    return out


_REGISTRY: dict[str, BgpEngine] = {
    "reference": ReferenceEngine(),
    "naive": NaiveEngine(),
}


def get_engine(name: str) -> BgpEngine:
    engine = _REGISTRY.get(name)
    if engine is None:
        known = ", ".join(sorted(_REGISTRY))
        raise ValueError(f"unknown engine {name!r} (registered: {known})")
    return engine


def register_engine(name: str, engine: BgpEngine) -> None:
    _REGISTRY[name] = engine


def engine_names() -> list[str]:
    return sorted(_REGISTRY)
