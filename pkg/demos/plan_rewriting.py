"""Show how a well-designed pattern becomes an OPT-normal-form plan.

A pattern mixing AND, FILTER, and OPTIONAL is first checked for
well-designedness, then normalized by hoisting every OPTIONAL above the
joins and filters it is entangled with, one rewrite step at a time. The
result is a plan tree whose inner nodes are all OPTIONAL and whose leaves
are basic graph patterns ready for a BGP engine.

Run with: python3 demos/plan_rewriting.py
"""

from wdsparql import (
    find_violation,
    format_pattern,
    format_plan,
    is_opt_normal_form,
    parse_query,
)
from wdsparql.rewrite import (
    apply_first_rule,
    build_grammar_tree,
    build_plan,
    flatten_grammar,
)

QUERY = """\
PREFIX ex: <http://example.org/voc#>
SELECT * WHERE {
  { ?article ex:author ?who OPTIONAL { ?who ex:homepage ?page } }
  ?article ex:year ?year
  FILTER (?year = "2023" || ?year = "2024")
}
"""

LEAKY_QUERY = """\
PREFIX ex: <http://example.org/voc#>
SELECT * WHERE {
  ?article ex:author ?who
  OPTIONAL { ?who ex:homepage ?page }
  FILTER (?page = "http://example.org/")
}
"""


def main() -> None:
    query = parse_query(QUERY)
    print("Pattern as written:")
    print(f"  {format_pattern(query.pattern)}")

    violation = find_violation(query.pattern)
    print(f"\nWell-designed: {violation is None}")
    print(f"Already in OPT normal form: {is_opt_normal_form(query.pattern)}")

    # The OPTIONAL sits under a join and a filter, so neither rule target
    # is normal yet. Each step hoists one OPTIONAL above the operator
    # directly over it; the loop reaches a fixpoint in a handful of steps.
    tree = build_grammar_tree(query.pattern)
    step = 0
    print("\nHoisting, one rule application per line:")
    while (rewritten := apply_first_rule(tree)) is not None:
        tree = rewritten
        step += 1
        print(f"  step {step}: {format_pattern(flatten_grammar(tree))}")
    print(f"Fixpoint after {step} steps.")

    # build_plan runs the same loop internally, then merges each maximal
    # AND/FILTER block into a single BGP leaf with an attached condition.
    plan = build_plan(query.pattern)
    print("\nFinal plan tree:")
    print(format_plan(plan), end="")

    # Rewriting is only sound for well-designed patterns, so the planner
    # checks first and reports which variable breaks the condition.
    leaky = parse_query(LEAKY_QUERY)
    violation = find_violation(leaky.pattern)
    print("\nA pattern the planner refuses:")
    print(f"  {format_pattern(leaky.pattern)}")
    print(f"  {violation.message()}")


if __name__ == "__main__":
    main()
