"""Ground-truth evaluator: the pattern semantics transcribed literally.

Every operator is implemented as a nested loop straight off its
definition, with no indexes, no hashing, and no plan rewriting. This is
the correctness anchor for the differential suites, and the fallback
evaluator for patterns the plan pipeline refuses, so it stays deliberately
independent of the optimized code paths.
"""

from __future__ import annotations

from typing import Optional

from .algebra import (
    And,
    Filter,
    Leaf,
    Mapping,
    Opt,
    PatternNode,
    TriplePattern,
    TruthValue,
    Variable,
    eval_constraint,
)
from .engines import register_engine
from .rdf import Graph, Triple


def eval_direct(pattern: PatternNode, graph: Graph) -> frozenset[Mapping]:
    """Evaluate any pattern, well-designed or not, by structural recursion."""
    if isinstance(pattern, Leaf):
        result = frozenset((Mapping(),))
        for tp in pattern.bgp:
            result = _join(result, _match_all(tp, graph))
        return result
    if isinstance(pattern, And):
        return _join(eval_direct(pattern.left, graph), eval_direct(pattern.right, graph))
    if isinstance(pattern, Opt):
        left = eval_direct(pattern.left, graph)
        right = eval_direct(pattern.right, graph)
        return _join(left, right) | _difference(left, right)
    if isinstance(pattern, Filter):
        return frozenset(
            m for m in eval_direct(pattern.pattern, graph)
            if eval_constraint(pattern.constraint, m) is TruthValue.TRUE
        )
    raise TypeError(f"not a pattern: {pattern!r}")


def _match_all(tp: TriplePattern, graph: Graph) -> frozenset[Mapping]:
    out = set()
    for triple in graph:
        m = _match_one(tp, triple)
        if m is not None:
            out.add(m)
    return frozenset(out)


def _match_one(tp: TriplePattern, triple: Triple) -> Optional[Mapping]:
    bindings: dict[Variable, object] = {}
    for pos, value in (
        (tp.subject, triple.subject),
        (tp.predicate, triple.predicate),
        (tp.object, triple.object),
    ):
        if isinstance(pos, Variable):
            if pos in bindings and bindings[pos] != value:
                return None
            bindings[pos] = value
        elif pos != value:
            return None
    return Mapping(bindings)


def _agree(m1: Mapping, m2: Mapping) -> bool:
    for var, term in m1.items():
        if var in m2 and m2.get(var) != term:
            return False
    return True


def _join(o1: frozenset[Mapping], o2: frozenset[Mapping]) -> frozenset[Mapping]:
    out = set()
    for m1 in o1:
        for m2 in o2:
            if _agree(m1, m2):
                out.add(m1.merge(m2))
    return frozenset(out)


def _difference(o1: frozenset[Mapping], o2: frozenset[Mapping]) -> frozenset[Mapping]:
    out = set()
    for m1 in o1:
        if not any(_agree(m1, m2) for m2 in o2):
            out.add(m1)
    return frozenset(out)


class OracleEngine:
    """The ground-truth evaluator exposed as a plain BGP engine."""

    def evaluate(self, graph: Graph, bgp) -> frozenset[Mapping]:
        return eval_direct(Leaf(tuple(bgp)), graph)


register_engine("oracle", OracleEngine())
