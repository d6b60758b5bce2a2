"""Safety and well-designedness checks."""

from __future__ import annotations

import pytest

from wdsparql.algebra import (
    And,
    Bound,
    Filter,
    Leaf,
    Opt,
    TriplePattern,
    Variable,
)
from wdsparql.analysis import (
    NotWellDesignedError,
    find_violation,
    is_opt_normal_form,
    is_safe,
    is_well_designed,
)
from wdsparql.parser import parse_query
from wdsparql.rdf import Iri

from testkit import PatternGenConfig, gen_non_well_designed, gen_well_designed

X, Y, Z, U, V = (Variable(n) for n in "xyzuv")
P = Iri("t:p")


def leaf(*tps) -> Leaf:
    return Leaf(tps)


def tp(s, o, p=P) -> TriplePattern:
    return TriplePattern(s, p, o)


class TestSafety:
    def test_safe_filter(self):
        q = Filter(leaf(tp(X, Y)), Bound(X))
        assert is_safe(q)

    def test_unsafe_filter(self):
        q = Filter(leaf(tp(X, Y)), Bound(Z))
        assert not is_safe(q)
        violation = find_violation(q)
        assert violation.kind == "unsafe_filter"
        assert violation.variable == Z

    def test_nested_filters_checked_everywhere(self):
        q = Opt(leaf(tp(X, Y)), Filter(leaf(tp(Y, Z)), Bound(U)))
        assert not is_safe(q)


class TestWellDesigned:
    def test_single_leaf(self):
        assert is_well_designed(leaf(tp(X, Y)))

    def test_optional_only_variable_is_fine(self, optional_type_query):
        assert is_well_designed(optional_type_query.pattern)
        assert find_violation(optional_type_query.pattern) is None

    def test_leaked_variable_reported(self, leaky_var_query):
        violation = find_violation(leaky_var_query.pattern)
        assert violation is not None
        assert violation.kind == "optional_leak"
        assert violation.variable == Z
        assert not is_well_designed(leaky_var_query.pattern)

    def test_violation_message_names_variable(self, leaky_var_query):
        violation = find_violation(leaky_var_query.pattern)
        assert "?z" in violation.message()

    def test_leak_into_left_sibling(self):
        # ?z appears left of the OPT but not on its required side
        q = And(leaf(tp(Z, U)), Opt(leaf(tp(X, Y)), leaf(tp(Y, Z))))
        violation = find_violation(q)
        assert violation.kind == "optional_leak"
        assert violation.variable == Z

    def test_constraint_variable_counts_as_occurrence(self):
        # bound(?z) outside the OPT touches ?z, so the leak is real
        q = Filter(Opt(leaf(tp(X, Y)), leaf(tp(Y, Z))), Bound(Z))
        violation = find_violation(q)
        assert violation is not None
        assert violation.kind == "optional_leak"
        assert violation.variable == Z

    def test_safe_constraint_over_optional_variable_inside(self):
        # the same filter placed inside the optional side is fine
        q = Opt(leaf(tp(X, Y)), Filter(leaf(tp(Y, Z)), Bound(Z)))
        assert is_well_designed(q)

    def test_innermost_violation_wins(self):
        # inner leak (?u) must be reported before the outer one (?z)
        inner_bad = And(Opt(leaf(tp(X, Y)), leaf(tp(Y, U))), leaf(tp(U, V)))
        q = And(Opt(leaf(tp(V, X)), And(inner_bad, leaf(tp(X, Z)))), leaf(tp(Z, V)))
        violation = find_violation(q)
        assert violation.variable == U

    def test_variable_tie_break_is_alphabetical(self):
        q = And(Opt(leaf(tp(X, X)), leaf(tp(Z, Y))), leaf(tp(Y, Z)))
        violation = find_violation(q)
        assert violation.variable == Y

    def test_unsafe_filter_also_rejects(self):
        q = Filter(leaf(tp(X, Y)), Bound(Z))
        assert not is_well_designed(q)
        assert find_violation(q).kind == "unsafe_filter"

    def test_error_wraps_violation(self, leaky_var_query):
        violation = find_violation(leaky_var_query.pattern)
        err = NotWellDesignedError(violation)
        assert err.violation is violation
        assert "?z" in str(err)


class TestGeneratedCorpus:
    def test_generator_agreement(self):
        for seed in range(200):
            good = gen_well_designed(PatternGenConfig(seed=seed))
            assert find_violation(good) is None, seed
            bad = gen_non_well_designed(seed)
            assert find_violation(bad) is not None, seed


class TestOptNormalForm:
    def test_leaf_is_normal(self):
        assert is_opt_normal_form(leaf(tp(X, Y)))

    def test_opt_over_leaves(self):
        assert is_opt_normal_form(Opt(leaf(tp(X, Y)), leaf(tp(Y, Z))))

    def test_nested_opts_are_normal(self):
        q = Opt(Opt(leaf(tp(X, Y)), leaf(tp(Y, Z))), leaf(tp(X, U)))
        assert is_opt_normal_form(q)

    def test_and_above_opt_is_not_normal(self, optional_type_query):
        assert not is_opt_normal_form(optional_type_query.pattern)

    def test_and_of_leaves_is_normal(self):
        assert is_opt_normal_form(And(leaf(tp(X, Y)), leaf(tp(Y, Z))))

    def test_filter_above_opt_is_not_normal(self):
        q = Filter(Opt(leaf(tp(X, Y)), leaf(tp(Y, Z))), Bound(X))
        assert not is_opt_normal_form(q)

    def test_filter_inside_opt_free_part_is_normal(self):
        q = Opt(Filter(leaf(tp(X, Y)), Bound(X)), leaf(tp(Y, Z)))
        assert is_opt_normal_form(q)

    def test_parsed_nested_opts_are_normal(self):
        q = parse_query(
            "SELECT * WHERE { { ?x <t:p> ?y OPTIONAL { ?y <t:q> ?z } } "
            "OPTIONAL { ?x <t:r> ?u } }"
        )
        assert is_opt_normal_form(q.pattern)

    def test_parsed_trailing_triples_break_normal_form(self):
        q = parse_query(
            "SELECT * WHERE { { ?x <t:p> ?y OPTIONAL { ?y <t:q> ?z } } "
            "?x <t:r> ?u }"
        )
        assert not is_opt_normal_form(q.pattern)
