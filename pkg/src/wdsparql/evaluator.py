"""Plan execution and the end-to-end query pipeline.

A plan tree evaluates by post-order traversal over an explicit result
stack: each BGP leaf pushes its engine result (filtered by any attached
constraint), each OPT node pops the right result, then the left, and
pushes their left-outer join. The traversal leaves exactly one solution
set on the stack.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from .algebra import Mapping, filter_solutions, left_outer_join, project
from .analysis import NotWellDesignedError, find_violation
from .engines import BgpEngine, get_engine
from .oracle import eval_direct
from .parser import Query
from .rdf import Graph
from .rewrite import (
    BgpLeaf,
    OptNode,
    PlanError,
    PlanTree,
    build_grammar_tree,
    merge_and,
    rewrite_to_onf,
)


@dataclass
class EvalReport:
    """Evaluation result plus per-node counts and per-phase wall times.

    per_leaf_counts pairs each leaf (numbered left to right) with its
    engine result size; per_join_counts pairs each OPT node (post-order)
    with its join result size, so its last entry is the pre-projection
    row count whenever the plan has an OPT at the root. Patterns routed
    to the fallback evaluator report no per-node counts.
    """

    solutions: frozenset[Mapping]
    per_leaf_counts: list = field(default_factory=list)
    per_join_counts: list = field(default_factory=list)
    wall_times: dict = field(default_factory=dict)


def evaluate(tree: PlanTree, graph: Graph, engine: BgpEngine) -> frozenset[Mapping]:
    """Solutions of a plan tree: engine results joined bottom-up."""
    solutions, _, _ = _run(tree, graph, engine)
    return solutions


def evaluate_with_stats(
    tree: PlanTree, graph: Graph, engine: BgpEngine
) -> tuple[frozenset[Mapping], list, list, float, float]:
    times = [0.0, 0.0]
    solutions, leaf_counts, join_counts = _run(tree, graph, engine, times)
    return solutions, leaf_counts, join_counts, times[0], times[1]


def _run(
    tree: PlanTree, graph: Graph, engine: BgpEngine, times: Optional[list] = None
) -> tuple[frozenset[Mapping], list, list]:
    stack: list[frozenset[Mapping]] = []
    leaf_counts: list[tuple[int, int]] = []
    join_counts: list[tuple[int, int]] = []
    leaves_seen = 0
    opts_seen = 0
    for node in _postorder(tree):
        if isinstance(node, BgpLeaf):
            t0 = time.perf_counter()
            solutions = engine.evaluate(graph, node.bgp)
            if node.constraint is not None:
                solutions = filter_solutions(solutions, node.constraint)
            if times is not None:
                times[0] += time.perf_counter() - t0
            leaf_counts.append((leaves_seen, len(solutions)))
            stack.append(solutions)
            leaves_seen += 1
        else:
            t0 = time.perf_counter()
            right = stack.pop()
            left = stack.pop()
            joined = left_outer_join(left, right)
            if times is not None:
                times[1] += time.perf_counter() - t0
            join_counts.append((opts_seen, len(joined)))
            stack.append(joined)
            opts_seen += 1
        # stack discipline: one entry per leaf, one consumed per OPT
        assert len(stack) == leaves_seen - opts_seen
    assert len(stack) == 1, "malformed plan tree left a partial stack"
    return stack[0], leaf_counts, join_counts


def _postorder(tree: PlanTree):
    if isinstance(tree, OptNode):
        yield from _postorder(tree.left)
        yield from _postorder(tree.right)
    yield tree


def run_query(
    query: Query,
    graph: Graph,
    engine: Optional[BgpEngine] = None,
    mode: str = "strict",
) -> EvalReport:
    """Full pipeline: analyze, plan, evaluate, project.

    Well-designed patterns compile to a plan tree and run through the
    engine. In strict mode anything else raises NotWellDesignedError; in
    oracle-fallback mode it runs through the direct evaluator instead
    (correct on every pattern, just unoptimized). The fallback also covers
    degenerate patterns the planner rejects, such as an empty group.

    Projection applies last; SELECT * keeps every variable.
    """
    if mode not in ("strict", "oracle-fallback"):
        raise ValueError(f"unknown mode {mode!r}")
    if engine is None:
        engine = get_engine("reference")
    report = EvalReport(solutions=frozenset())
    violation = find_violation(query.pattern)
    if violation is not None and mode == "strict":
        raise NotWellDesignedError(violation)
    plan = None
    if violation is None:
        t0 = time.perf_counter()
        try:
            plan = merge_and(rewrite_to_onf(build_grammar_tree(query.pattern)))
        except PlanError:
            if mode == "strict":
                raise
        report.wall_times["rewrite"] = time.perf_counter() - t0
    if plan is not None:
        solutions, leaf_counts, join_counts, t_leaves, t_joins = evaluate_with_stats(
            plan, graph, engine
        )
        report.per_leaf_counts = leaf_counts
        report.per_join_counts = join_counts
        report.wall_times["leaves"] = t_leaves
        report.wall_times["joins"] = t_joins
    else:
        t0 = time.perf_counter()
        solutions = eval_direct(query.pattern, graph)
        report.wall_times["oracle"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    if query.projection is not None:
        solutions = project(solutions, query.projection)
    report.wall_times["project"] = time.perf_counter() - t0
    report.solutions = solutions
    return report
