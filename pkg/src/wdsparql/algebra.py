"""Pattern algebra: mappings, solution sets, and the operators over them.

Solutions are partial functions from variables to terms, evaluated under
set semantics (no duplicate rows, no row ordering). Constraints evaluate in
a three-valued logic where comparisons over unbound variables produce an
error value that propagates through negation and can be absorbed by
conjunction with false or disjunction with true.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Union

from .rdf import Term, format_term


@dataclass(frozen=True)
class Variable:
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("variable name must be non-empty")

    def __repr__(self) -> str:
        return f"?{self.name}"


@dataclass(frozen=True)
class TriplePattern:
    subject: Union[Variable, Term]
    predicate: Union[Variable, Term]
    object: Union[Variable, Term]

    def variables(self) -> frozenset[Variable]:
        return frozenset(
            pos for pos in (self.subject, self.predicate, self.object)
            if isinstance(pos, Variable)
        )

    def __repr__(self) -> str:
        return f"({self.subject!r} {self.predicate!r} {self.object!r})"


Bgp = tuple  # tuple[TriplePattern, ...]; the empty tuple is the unit pattern


# --- constraint AST ---


@dataclass(frozen=True)
class Bound:
    var: Variable


@dataclass(frozen=True)
class VarEq:
    left: Variable
    right: Variable


@dataclass(frozen=True)
class ConstEq:
    var: Variable
    term: Term


@dataclass(frozen=True)
class Not:
    inner: "Constraint"


@dataclass(frozen=True)
class AndC:
    left: "Constraint"
    right: "Constraint"


@dataclass(frozen=True)
class OrC:
    left: "Constraint"
    right: "Constraint"


Constraint = Union[Bound, VarEq, ConstEq, Not, AndC, OrC]


# --- pattern AST ---


@dataclass(frozen=True)
class Leaf:
    bgp: Bgp


@dataclass(frozen=True)
class And:
    left: "PatternNode"
    right: "PatternNode"


@dataclass(frozen=True)
class Opt:
    left: "PatternNode"
    right: "PatternNode"


@dataclass(frozen=True)
class Filter:
    pattern: "PatternNode"
    constraint: Constraint


PatternNode = Union[Leaf, And, Opt, Filter]


def constraint_vars(constraint: Constraint) -> frozenset[Variable]:
    if isinstance(constraint, Bound):
        return frozenset((constraint.var,))
    if isinstance(constraint, VarEq):
        return frozenset((constraint.left, constraint.right))
    if isinstance(constraint, ConstEq):
        return frozenset((constraint.var,))
    if isinstance(constraint, Not):
        return constraint_vars(constraint.inner)
    if isinstance(constraint, (AndC, OrC)):
        return constraint_vars(constraint.left) | constraint_vars(constraint.right)
    raise TypeError(f"not a constraint: {constraint!r}")


def vars_of(pattern: PatternNode) -> frozenset[Variable]:
    """All variables occurring in a pattern.

    Variables mentioned only in a filter condition count as occurrences:
    the well-designedness check depends on seeing them, and the rewrite
    rules are only sound under that reading.
    """
    if isinstance(pattern, Leaf):
        out: frozenset[Variable] = frozenset()
        for tp in pattern.bgp:
            out |= tp.variables()
        return out
    if isinstance(pattern, (And, Opt)):
        return vars_of(pattern.left) | vars_of(pattern.right)
    if isinstance(pattern, Filter):
        return vars_of(pattern.pattern) | constraint_vars(pattern.constraint)
    raise TypeError(f"not a pattern: {pattern!r}")


# --- mappings and solution sets ---


class Mapping:
    """Immutable partial assignment of variables to terms."""

    __slots__ = ("_bindings", "_hash")

    def __init__(self, bindings: Union[dict, Iterable[tuple]] = ()):
        d = dict(bindings)
        self._bindings = d
        self._hash: Optional[int] = None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mapping):
            return NotImplemented
        return self._bindings == other._bindings

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._bindings.items()))
        return self._hash

    def __len__(self) -> int:
        return len(self._bindings)

    def __contains__(self, var: Variable) -> bool:
        return var in self._bindings

    def get(self, var: Variable) -> Optional[Term]:
        return self._bindings.get(var)

    def domain(self) -> frozenset[Variable]:
        return frozenset(self._bindings)

    def items(self) -> Iterator[tuple[Variable, Term]]:
        return iter(self._bindings.items())

    def merge(self, other: "Mapping") -> "Mapping":
        """Union of two compatible mappings. Callers check compatibility first."""
        merged = dict(self._bindings)
        merged.update(other._bindings)
        return Mapping(merged)

    def restrict(self, variables: frozenset[Variable]) -> "Mapping":
        return Mapping({v: t for v, t in self._bindings.items() if v in variables})

    def extend(self, var: Variable, term: Term) -> "Mapping":
        merged = dict(self._bindings)
        merged[var] = term
        return Mapping(merged)

    def __repr__(self) -> str:
        inner = ", ".join(
            f"{v!r} -> {format_term(t)}"
            for v, t in sorted(self._bindings.items(), key=lambda kv: kv[0].name)
        )
        return "{" + inner + "}"


EMPTY_MAPPING = Mapping()

# SolutionSet values are frozensets of Mapping; the unit has one empty row.
UNIT: frozenset[Mapping] = frozenset((EMPTY_MAPPING,))
EMPTY: frozenset[Mapping] = frozenset()


def compatible(m1: Mapping, m2: Mapping) -> bool:
    """True when the mappings agree on every shared variable."""
    a, b = m1._bindings, m2._bindings
    if len(b) < len(a):
        a, b = b, a
    for var, term in a.items():
        other = b.get(var)
        if other is not None and other != term:
            return False
    return True


def _certain_vars(omega: frozenset[Mapping]) -> frozenset[Variable]:
    """Variables bound in every row. Empty for the empty set."""
    it = iter(omega)
    try:
        acc = set(next(it).domain())
    except StopIteration:
        return frozenset()
    for m in it:
        acc &= m._bindings.keys()
        if not acc:
            break
    return frozenset(acc)


def _compatible_pairs(
    o1: frozenset[Mapping], o2: frozenset[Mapping]
) -> Iterator[tuple[Mapping, Mapping]]:
    """Yield every compatible (m1, m2) pair.

    Rows of o2 are hashed on variables certain in both sides; any compatible
    pair agrees on those, so probing the bucket loses nothing. With no
    shared certain variables this degrades to the nested loop.
    """
    if not o1 or not o2:
        return
    key_vars = sorted(_certain_vars(o1) & _certain_vars(o2), key=lambda v: v.name)
    if not key_vars:
        for m1 in o1:
            for m2 in o2:
                if compatible(m1, m2):
                    yield m1, m2
        return
    buckets: dict[tuple, list[Mapping]] = {}
    for m2 in o2:
        key = tuple(m2.get(v) for v in key_vars)
        buckets.setdefault(key, []).append(m2)
    for m1 in o1:
        key = tuple(m1.get(v) for v in key_vars)
        for m2 in buckets.get(key, ()):
            if compatible(m1, m2):
                yield m1, m2


def join(o1: frozenset[Mapping], o2: frozenset[Mapping]) -> frozenset[Mapping]:
    return frozenset(m1.merge(m2) for m1, m2 in _compatible_pairs(o1, o2))


def difference(o1: frozenset[Mapping], o2: frozenset[Mapping]) -> frozenset[Mapping]:
    """Rows of o1 with no compatible partner in o2."""
    matched = {m1 for m1, _ in _compatible_pairs(o1, o2)}
    return frozenset(m1 for m1 in o1 if m1 not in matched)


def left_outer_join(o1: frozenset[Mapping], o2: frozenset[Mapping]) -> frozenset[Mapping]:
    """Join, plus the o1 rows that found no compatible partner."""
    out = set()
    matched = set()
    for m1, m2 in _compatible_pairs(o1, o2):
        out.add(m1.merge(m2))
        matched.add(m1)
    for m1 in o1:
        if m1 not in matched:
            out.add(m1)
    return frozenset(out)


def project(omega: frozenset[Mapping], variables: frozenset[Variable]) -> frozenset[Mapping]:
    """Restrict every row to the given variables. Collapsing rows merge."""
    return frozenset(m.restrict(variables) for m in omega)


# --- three-valued constraint evaluation ---


class TruthValue(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    ERROR = "error"


_T, _F, _E = TruthValue.TRUE, TruthValue.FALSE, TruthValue.ERROR

# Conjunction: false absorbs error, otherwise error propagates.
_AND_TABLE = {
    (_T, _T): _T, (_T, _F): _F, (_T, _E): _E,
    (_F, _T): _F, (_F, _F): _F, (_F, _E): _F,
    (_E, _T): _E, (_E, _F): _F, (_E, _E): _E,
}

# Disjunction: true absorbs error, otherwise error propagates.
_OR_TABLE = {
    (_T, _T): _T, (_T, _F): _T, (_T, _E): _T,
    (_F, _T): _T, (_F, _F): _F, (_F, _E): _E,
    (_E, _T): _T, (_E, _F): _E, (_E, _E): _E,
}

_NOT_TABLE = {_T: _F, _F: _T, _E: _E}


def eval_constraint(constraint: Constraint, mapping: Mapping) -> TruthValue:
    if isinstance(constraint, Bound):
        return _T if constraint.var in mapping else _F
    if isinstance(constraint, VarEq):
        left = mapping.get(constraint.left)
        right = mapping.get(constraint.right)
        if left is None or right is None:
            return _E
        return _T if left == right else _F
    if isinstance(constraint, ConstEq):
        value = mapping.get(constraint.var)
        if value is None:
            return _E
        return _T if value == constraint.term else _F
    if isinstance(constraint, Not):
        return _NOT_TABLE[eval_constraint(constraint.inner, mapping)]
    if isinstance(constraint, AndC):
        return _AND_TABLE[
            eval_constraint(constraint.left, mapping),
            eval_constraint(constraint.right, mapping),
        ]
    if isinstance(constraint, OrC):
        return _OR_TABLE[
            eval_constraint(constraint.left, mapping),
            eval_constraint(constraint.right, mapping),
        ]
    raise TypeError(f"not a constraint: {constraint!r}")


def filter_solutions(
    omega: frozenset[Mapping], constraint: Constraint
) -> frozenset[Mapping]:
    """Keep the rows where the constraint is true; false and error both drop."""
    return frozenset(m for m in omega if eval_constraint(constraint, m) is _T)


# --- triple pattern matching ---


def match_triple(tp: TriplePattern, triple) -> Optional[Mapping]:
    """Binding that makes the pattern equal the triple, or None.

    Repeated variables must take a single value; distinct variables may
    share one (pattern matching is a homomorphism, not an embedding).
    """
    bindings: dict[Variable, Term] = {}
    for pos, value in (
        (tp.subject, triple.subject),
        (tp.predicate, triple.predicate),
        (tp.object, triple.object),
    ):
        if isinstance(pos, Variable):
            seen = bindings.get(pos)
            if seen is None:
                bindings[pos] = value
            elif seen != value:
                return None
        elif pos != value:
            return None
    return Mapping(bindings)


# --- rendering ---


def format_constraint(constraint: Constraint) -> str:
    if isinstance(constraint, Bound):
        return f"bound(?{constraint.var.name})"
    if isinstance(constraint, VarEq):
        return f"?{constraint.left.name} = ?{constraint.right.name}"
    if isinstance(constraint, ConstEq):
        return f"?{constraint.var.name} = {format_term(constraint.term)}"
    if isinstance(constraint, Not):
        return f"!({format_constraint(constraint.inner)})"
    if isinstance(constraint, AndC):
        return f"({format_constraint(constraint.left)} && {format_constraint(constraint.right)})"
    if isinstance(constraint, OrC):
        return f"({format_constraint(constraint.left)} || {format_constraint(constraint.right)})"
    raise TypeError(f"not a constraint: {constraint!r}")


def format_triple_pattern(tp: TriplePattern) -> str:
    def part(pos) -> str:
        if isinstance(pos, Variable):
            return f"?{pos.name}"
        return format_term(pos)

    return f"{part(tp.subject)} {part(tp.predicate)} {part(tp.object)}"


def format_pattern(pattern: PatternNode) -> str:
    """One-line rendering used in messages and reports."""
    if isinstance(pattern, Leaf):
        if not pattern.bgp:
            return "{}"
        return "{ " + " . ".join(format_triple_pattern(tp) for tp in pattern.bgp) + " }"
    if isinstance(pattern, And):
        return f"({format_pattern(pattern.left)} AND {format_pattern(pattern.right)})"
    if isinstance(pattern, Opt):
        return f"({format_pattern(pattern.left)} OPT {format_pattern(pattern.right)})"
    if isinstance(pattern, Filter):
        return f"({format_pattern(pattern.pattern)} FILTER {format_constraint(pattern.constraint)})"
    raise TypeError(f"not a pattern: {pattern!r}")
