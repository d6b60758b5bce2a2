"""Static pattern classification: filter safety, well-designedness, OPT normal form.

Well-designedness is the gate for the plan rewriter: a pattern qualifies
when it is safe and, for every OPTIONAL subpattern, no variable of the
optional side is shared with the surrounding pattern unless the required
side binds it too. Patterns built from this library's AST are UNION-free
by construction, so that part of the definition needs no code.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .algebra import (
    And,
    Filter,
    Leaf,
    Opt,
    PatternNode,
    Variable,
    constraint_vars,
    format_pattern,
    vars_of,
)


@dataclass(frozen=True)
class Violation:
    """Why a pattern fails the well-designedness check.

    kind is "unsafe_filter" (a filter mentions a variable its pattern never
    binds) or "optional_leak" (a variable of an optional side is shared
    with the outside but missing from the required side). node is the
    offending Filter or Opt subpattern.
    """

    kind: str
    node: PatternNode
    variable: Variable

    def message(self) -> str:
        if self.kind == "unsafe_filter":
            return (
                f"unsafe filter: ?{self.variable.name} appears in the condition "
                f"but not in the filtered pattern {format_pattern(self.node)}"
            )
        return (
            f"variable ?{self.variable.name} appears in the optional side of "
            f"{format_pattern(self.node)} and outside it, but not in its required side"
        )


class NotWellDesignedError(Exception):
    def __init__(self, violation: Violation):
        super().__init__(violation.message())
        self.violation = violation


def is_safe(pattern: PatternNode) -> bool:
    """True when every filter's variables occur in the pattern it wraps."""
    if isinstance(pattern, Leaf):
        return True
    if isinstance(pattern, (And, Opt)):
        return is_safe(pattern.left) and is_safe(pattern.right)
    if isinstance(pattern, Filter):
        return (
            constraint_vars(pattern.constraint) <= vars_of(pattern.pattern)
            and is_safe(pattern.pattern)
        )
    raise TypeError(f"not a pattern: {pattern!r}")


def find_violation(pattern: PatternNode) -> Optional[Violation]:
    """First well-designedness violation in leftmost-innermost order, or None.

    Checks subpatterns before their parents and left subtrees before right
    ones, so the reported node is the deepest leftmost offender. When one
    node leaks several variables, the alphabetically first is reported.
    """
    return _find(pattern, frozenset())


def _find(pattern: PatternNode, outside: frozenset[Variable]) -> Optional[Violation]:
    # `outside` holds every variable occurring in the query outside this
    # subtree; it grows as the traversal descends past siblings.
    if isinstance(pattern, Leaf):
        return None
    if isinstance(pattern, (And, Opt)):
        left_vars = vars_of(pattern.left)
        right_vars = vars_of(pattern.right)
        v = _find(pattern.left, outside | right_vars)
        if v is not None:
            return v
        v = _find(pattern.right, outside | left_vars)
        if v is not None:
            return v
        if isinstance(pattern, Opt):
            leaked = (right_vars & outside) - left_vars
            if leaked:
                worst = min(leaked, key=lambda var: var.name)
                return Violation("optional_leak", pattern, worst)
        return None
    if isinstance(pattern, Filter):
        cvars = constraint_vars(pattern.constraint)
        v = _find(pattern.pattern, outside | cvars)
        if v is not None:
            return v
        unsafe = cvars - vars_of(pattern.pattern)
        if unsafe:
            worst = min(unsafe, key=lambda var: var.name)
            return Violation("unsafe_filter", pattern, worst)
        return None
    raise TypeError(f"not a pattern: {pattern!r}")


def is_well_designed(pattern: PatternNode) -> bool:
    return find_violation(pattern) is None


def is_opt_normal_form(pattern: PatternNode) -> bool:
    """True when no OPT sits beneath an AND or FILTER."""
    if isinstance(pattern, Opt):
        return is_opt_normal_form(pattern.left) and is_opt_normal_form(pattern.right)
    return _opt_free(pattern)


def _opt_free(pattern: PatternNode) -> bool:
    if isinstance(pattern, Leaf):
        return True
    if isinstance(pattern, Opt):
        return False
    if isinstance(pattern, And):
        return _opt_free(pattern.left) and _opt_free(pattern.right)
    if isinstance(pattern, Filter):
        return _opt_free(pattern.pattern)
    raise TypeError(f"not a pattern: {pattern!r}")
