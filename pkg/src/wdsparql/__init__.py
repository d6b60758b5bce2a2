"""Evaluate SPARQL SELECT queries over in-memory RDF graphs.

Queries whose patterns are well-designed are rewritten into a plan tree
whose inner nodes are all OPTIONAL and whose leaves are basic graph
patterns; leaves run through a pluggable BGP engine and results combine
bottom-up with left-outer joins. A direct implementation of the pattern
semantics doubles as differential-test oracle and as fallback for
everything else.
"""

from .algebra import (
    And,
    AndC,
    Bgp,
    Bound,
    ConstEq,
    Constraint,
    Filter,
    Leaf,
    Mapping,
    Not,
    Opt,
    OrC,
    PatternNode,
    TriplePattern,
    TruthValue,
    VarEq,
    Variable,
    compatible,
    difference,
    eval_constraint,
    filter_solutions,
    format_constraint,
    format_pattern,
    join,
    left_outer_join,
    match_triple,
    project,
    vars_of,
)
from .analysis import (
    NotWellDesignedError,
    Violation,
    find_violation,
    is_opt_normal_form,
    is_safe,
    is_well_designed,
)
from .engines import (
    BgpEngine,
    NaiveEngine,
    ReferenceEngine,
    engine_names,
    get_engine,
    register_engine,
)
from .errors import ParseError
from .evaluator import EvalReport, evaluate, evaluate_with_stats, run_query
from .ntriples import NTriplesError, parse_ntriples, serialize_graph
from .oracle import OracleEngine, eval_direct
from .parser import Query, QueryParseError, format_query, parse_query
from .rdf import BlankNode, Graph, Iri, Literal, Term, Triple, format_term, format_triple
from .rewrite import (
    BgpLeaf,
    OptNode,
    PlanError,
    PlanTree,
    build_plan,
    flatten_plan,
    format_plan,
)

__version__ = "0.1.0"

__all__ = [
    "And", "AndC", "Bgp", "BgpEngine", "BgpLeaf", "BlankNode", "Bound",
    "ConstEq", "Constraint", "EvalReport", "Filter", "Graph", "Iri", "Leaf",
    "Literal", "Mapping", "NaiveEngine", "Not", "NotWellDesignedError",
    "NTriplesError", "Opt", "OptNode", "OracleEngine", "OrC", "ParseError",
    "PatternNode", "PlanError", "PlanTree", "Query", "QueryParseError",
    "ReferenceEngine", "Term", "Triple", "TriplePattern", "TruthValue",
    "VarEq", "Variable", "Violation", "build_plan", "compatible",
    "difference", "engine_names", "eval_constraint", "eval_direct",
    "evaluate", "evaluate_with_stats", "filter_solutions", "find_violation",
    "flatten_plan", "format_constraint", "format_pattern", "format_plan",
    "format_query", "format_term", "format_triple", "get_engine",
    "is_opt_normal_form", "is_safe", "is_well_designed", "join",
    "left_outer_join", "match_triple", "parse_ntriples", "parse_query",
    "project", "register_engine", "run_query", "serialize_graph", "vars_of",
]
