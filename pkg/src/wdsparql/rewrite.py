"""Plan construction: grammar tree, OPT-hoisting rewrite, and the plan tree.

A well-designed pattern is compiled in three steps. First the pattern AST
is expanded into a grammar tree whose leaves are single triple patterns.
Then three equivalence-preserving rules hoist every OPT above the ANDs and
FILTERs around it, reaching OPT normal form. Finally maximal AND-connected
leaf groups collapse into BGP leaves, leaving a binary plan tree whose
inner nodes are all OPT. The evaluator consumes that tree bottom-up.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .algebra import (
    And,
    AndC,
    Bgp,
    Constraint,
    Filter,
    Leaf,
    Opt,
    PatternNode,
    TriplePattern,
    format_constraint,
    format_triple_pattern,
)
from .analysis import NotWellDesignedError, find_violation


class PlanError(ValueError):
    """Pattern cannot be compiled to a plan tree."""


# --- grammar tree ---


@dataclass(frozen=True)
class GLeaf:
    tp: TriplePattern


@dataclass(frozen=True)
class GAnd:
    left: "GrammarTree"
    right: "GrammarTree"


@dataclass(frozen=True)
class GOpt:
    left: "GrammarTree"
    right: "GrammarTree"


@dataclass(frozen=True)
class GFilter:
    child: "GrammarTree"
    constraint: Constraint


GrammarTree = Union[GLeaf, GAnd, GOpt, GFilter]


# --- plan tree ---


@dataclass(frozen=True)
class BgpLeaf:
    bgp: Bgp
    constraint: Optional[Constraint] = None


@dataclass(frozen=True)
class OptNode:
    left: "PlanTree"
    right: "PlanTree"


PlanTree = Union[BgpLeaf, OptNode]


def build_grammar_tree(pattern: PatternNode) -> GrammarTree:
    """Expand a pattern into a grammar tree of single-triple leaves.

    A BGP of k triple patterns becomes a left-deep AND chain of k leaves.
    An empty BGP has no leaf representation, so it is rejected here.
    """
    if isinstance(pattern, Leaf):
        if not pattern.bgp:
            raise PlanError("empty group pattern has no plan representation")
        tree: GrammarTree = GLeaf(pattern.bgp[0])
        for tp in pattern.bgp[1:]:
            tree = GAnd(tree, GLeaf(tp))
        return tree
    if isinstance(pattern, And):
        return GAnd(build_grammar_tree(pattern.left), build_grammar_tree(pattern.right))
    if isinstance(pattern, Opt):
        return GOpt(build_grammar_tree(pattern.left), build_grammar_tree(pattern.right))
    if isinstance(pattern, Filter):
        return GFilter(build_grammar_tree(pattern.pattern), pattern.constraint)
    raise TypeError(f"not a pattern: {pattern!r}")


def apply_first_rule(tree: GrammarTree) -> Optional[GrammarTree]:
    """Apply one OPT-hoisting rule at the leftmost-outermost redex.

    The rules, each an equivalence on well-designed patterns:
      (P OPT R) AND Q  =>  (P AND Q) OPT R
      P AND (Q OPT R)  =>  (P AND Q) OPT R
      (P OPT R) FILTER C  =>  (P FILTER C) OPT R
    Returns None when no rule applies anywhere.
    """
    if isinstance(tree, GAnd):
        if isinstance(tree.left, GOpt):
            return GOpt(GAnd(tree.left.left, tree.right), tree.left.right)
        if isinstance(tree.right, GOpt):
            return GOpt(GAnd(tree.left, tree.right.left), tree.right.right)
    if isinstance(tree, GFilter) and isinstance(tree.child, GOpt):
        return GOpt(GFilter(tree.child.left, tree.constraint), tree.child.right)
    if isinstance(tree, (GAnd, GOpt)):
        left = apply_first_rule(tree.left)
        if left is not None:
            return type(tree)(left, tree.right)
        right = apply_first_rule(tree.right)
        if right is not None:
            return type(tree)(tree.left, right)
        return None
    if isinstance(tree, GFilter):
        child = apply_first_rule(tree.child)
        if child is not None:
            return GFilter(child, tree.constraint)
        return None
    return None


def rewrite_to_onf(tree: GrammarTree) -> GrammarTree:
    """Hoist OPTs to a fixpoint: no OPT remains beneath an AND or FILTER.

    Every step removes at least one (AND-or-FILTER above OPT) ancestor
    pair, so the loop is bounded by their product.
    """
    n = _count(tree, (GAnd, GFilter))
    m = _count(tree, (GOpt,))
    budget = n * m + n + m + 1
    for _ in range(budget):
        step = apply_first_rule(tree)
        if step is None:
            return tree
        tree = step
    raise AssertionError("rewrite failed to reach a fixpoint within its bound")


def _count(tree: GrammarTree, kinds: tuple) -> int:
    hit = 1 if isinstance(tree, kinds) else 0
    if isinstance(tree, GLeaf):
        return hit
    if isinstance(tree, GFilter):
        return hit + _count(tree.child, kinds)
    return hit + _count(tree.left, kinds) + _count(tree.right, kinds)


def merge_and(tree: GrammarTree) -> PlanTree:
    """Collapse AND/FILTER blocks of an OPT-normal-form tree into BGP leaves.

    Triple patterns keep their left-to-right order; stacked filter
    constraints conjoin in inside-out order.
    """
    if isinstance(tree, GOpt):
        return OptNode(merge_and(tree.left), merge_and(tree.right))
    tps: list[TriplePattern] = []
    constraints: list[Constraint] = []
    _collect(tree, tps, constraints)
    constraint: Optional[Constraint] = None
    for c in constraints:
        constraint = c if constraint is None else AndC(constraint, c)
    return BgpLeaf(tuple(tps), constraint)


def _collect(tree: GrammarTree, tps: list, constraints: list) -> None:
    if isinstance(tree, GLeaf):
        tps.append(tree.tp)
        return
    if isinstance(tree, GAnd):
        _collect(tree.left, tps, constraints)
        _collect(tree.right, tps, constraints)
        return
    if isinstance(tree, GFilter):
        _collect(tree.child, tps, constraints)
        constraints.append(tree.constraint)
        return
    raise PlanError("OPT beneath AND or FILTER: tree is not in OPT normal form")


def build_plan(pattern: PatternNode) -> PlanTree:
    """Compile a well-designed pattern to its plan tree.

    Raises NotWellDesignedError otherwise: the hoisting rules only preserve
    semantics on well-designed patterns.
    """
    violation = find_violation(pattern)
    if violation is not None:
        raise NotWellDesignedError(violation)
    return merge_and(rewrite_to_onf(build_grammar_tree(pattern)))


# --- conversions back to the pattern AST ---


def flatten_plan(tree: PlanTree) -> PatternNode:
    if isinstance(tree, BgpLeaf):
        leaf: PatternNode = Leaf(tree.bgp)
        if tree.constraint is not None:
            leaf = Filter(leaf, tree.constraint)
        return leaf
    return Opt(flatten_plan(tree.left), flatten_plan(tree.right))


def flatten_grammar(tree: GrammarTree) -> PatternNode:
    if isinstance(tree, GLeaf):
        return Leaf((tree.tp,))
    if isinstance(tree, GAnd):
        return And(flatten_grammar(tree.left), flatten_grammar(tree.right))
    if isinstance(tree, GOpt):
        return Opt(flatten_grammar(tree.left), flatten_grammar(tree.right))
    if isinstance(tree, GFilter):
        return Filter(flatten_grammar(tree.child), tree.constraint)
    raise TypeError(f"not a grammar tree: {tree!r}")


# --- shape measurements ---


def plan_inner_count(tree: PlanTree) -> int:
    if isinstance(tree, BgpLeaf):
        return 0
    return 1 + plan_inner_count(tree.left) + plan_inner_count(tree.right)


def plan_leaf_count(tree: PlanTree) -> int:
    if isinstance(tree, BgpLeaf):
        return 1
    return plan_leaf_count(tree.left) + plan_leaf_count(tree.right)


def plan_height(tree: PlanTree) -> int:
    """Nodes on the longest root-to-leaf path."""
    if isinstance(tree, BgpLeaf):
        return 1
    return 1 + max(plan_height(tree.left), plan_height(tree.right))


def grammar_height(tree: GrammarTree) -> int:
    if isinstance(tree, GLeaf):
        return 1
    if isinstance(tree, GFilter):
        return 1 + grammar_height(tree.child)
    return 1 + max(grammar_height(tree.left), grammar_height(tree.right))


def opt_count(pattern: PatternNode) -> int:
    if isinstance(pattern, Leaf):
        return 0
    if isinstance(pattern, Filter):
        return opt_count(pattern.pattern)
    inner = opt_count(pattern.left) + opt_count(pattern.right)
    return inner + (1 if isinstance(pattern, Opt) else 0)


# --- rendering ---


def format_plan(tree: PlanTree) -> str:
    """Indented plan listing, one node per line, stable for golden tests.

    Inner nodes print as `OPT` with children indented two spaces; leaves
    print their triple patterns joined by ` . ` inside braces, followed by
    ` FILTER (...)` when a constraint is attached.
    """
    lines: list[str] = []
    _format_into(tree, 0, lines)
    return "".join(line + "\n" for line in lines)


def _format_into(tree: PlanTree, depth: int, lines: list) -> None:
    pad = "  " * depth
    if isinstance(tree, BgpLeaf):
        body = " . ".join(format_triple_pattern(tp) for tp in tree.bgp)
        line = f"{pad}BGP {{ {body} }}"
        if tree.constraint is not None:
            line += f" FILTER ({format_constraint(tree.constraint)})"
        lines.append(line)
        return
    lines.append(f"{pad}OPT")
    _format_into(tree.left, depth + 1, lines)
    _format_into(tree.right, depth + 1, lines)
