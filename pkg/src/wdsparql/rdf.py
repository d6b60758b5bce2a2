"""RDF terms, triples, and an indexed in-memory graph.

Terms compare structurally: two literals are the same term only if their
lexical form, datatype, and language tag all match. There is no value-space
coercion anywhere in the library.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Union


@dataclass(frozen=True)
class Iri:
    value: str

    def __post_init__(self):
        if not self.value:
            raise ValueError("IRI must be non-empty")

    def __repr__(self) -> str:
        return f"<{self.value}>"


@dataclass(frozen=True)
class BlankNode:
    label: str

    def __post_init__(self):
        if not self.label:
            raise ValueError("blank node label must be non-empty")

    def __repr__(self) -> str:
        return f"_:{self.label}"


@dataclass(frozen=True)
class Literal:
    lexical: str
    datatype: Optional[Iri] = None
    language: Optional[str] = None

    def __post_init__(self):
        if self.datatype is not None and self.language is not None:
            raise ValueError("a literal carries at most one of datatype and language tag")

    def __repr__(self) -> str:
        return format_term(self)


Term = Union[Iri, BlankNode, Literal]


_LITERAL_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}


def format_term(term: Term) -> str:
    """Serialize a term in N-Triples syntax (the same encoding the loader reads)."""
    if isinstance(term, Iri):
        return f"<{term.value}>"
    if isinstance(term, BlankNode):
        return f"_:{term.label}"
    if isinstance(term, Literal):
        quoted = "".join(_LITERAL_ESCAPES.get(ch, ch) for ch in term.lexical)
        if term.datatype is not None:
            return f'"{quoted}"^^<{term.datatype.value}>'
        if term.language is not None:
            return f'"{quoted}"@{term.language}'
        return f'"{quoted}"'
    raise TypeError(f"not an RDF term: {term!r}")


@dataclass(frozen=True)
class Triple:
    subject: Term
    predicate: Term
    object: Term

    def __post_init__(self):
        if isinstance(self.subject, Literal):
            raise ValueError("triple subject cannot be a literal")
        if not isinstance(self.predicate, Iri):
            raise ValueError("triple predicate must be an IRI")

    def __repr__(self) -> str:
        return f"({self.subject!r} {self.predicate!r} {self.object!r})"


def format_triple(triple: Triple) -> str:
    return (
        f"{format_term(triple.subject)} {format_term(triple.predicate)} "
        f"{format_term(triple.object)} ."
    )


class Graph:
    """Immutable set of triples with three prefix-indexed access paths.

    The indexes are keyed subject->predicate, predicate->object, and
    object->subject, so every combination of bound positions in a lookup is
    served by the index whose bound prefix is longest. Construction is
    single-threaded; afterwards the graph is read-only and safe to share
    across threads.
    """

    __slots__ = ("_triples", "_spo", "_pos", "_osp")

    def __init__(self, triples: Iterable[Triple] = ()):
        self._triples = frozenset(triples)
        spo: dict[Term, dict[Term, set[Term]]] = {}
        pos: dict[Term, dict[Term, set[Term]]] = {}
        osp: dict[Term, dict[Term, set[Term]]] = {}
        for t in self._triples:
            spo.setdefault(t.subject, {}).setdefault(t.predicate, set()).add(t.object)
            pos.setdefault(t.predicate, {}).setdefault(t.object, set()).add(t.subject)
            osp.setdefault(t.object, {}).setdefault(t.subject, set()).add(t.predicate)
        self._spo = spo
        self._pos = pos
        self._osp = osp

    @property
    def triples(self) -> frozenset[Triple]:
        return self._triples

    def __len__(self) -> int:
        return len(self._triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._triples)

    def __contains__(self, triple: object) -> bool:
        return triple in self._triples

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._triples == other._triples

    def __hash__(self) -> int:
        return hash(self._triples)

    def __repr__(self) -> str:
        return f"Graph({len(self._triples)} triples)"

    def lookup(
        self,
        subject: Optional[Term] = None,
        predicate: Optional[Term] = None,
        object: Optional[Term] = None,
    ) -> Iterator[Triple]:
        """Yield exactly the triples matching every bound position.

        All positions unbound yields every triple. Matches what a linear
        scan with equality filters would return, in no particular order.
        """
        s, p, o = subject, predicate, object
        if s is not None:
            by_pred = self._spo.get(s)
            if by_pred is None:
                return
            if p is not None:
                objects = by_pred.get(p)
                if objects is None:
                    return
                if o is not None:
                    if o in objects:
                        yield Triple(s, p, o)
                    return
                for obj in objects:
                    yield Triple(s, p, obj)
                return
            if o is not None:
                # (s, -, o): OS index holds the predicate set
                preds = self._osp.get(o, {}).get(s)
                if preds is None:
                    return
                for pred in preds:
                    yield Triple(s, pred, o)
                return
            for pred, objects in by_pred.items():
                for obj in objects:
                    yield Triple(s, pred, obj)
            return
        if p is not None:
            by_obj = self._pos.get(p)
            if by_obj is None:
                return
            if o is not None:
                for subj in by_obj.get(o, ()):
                    yield Triple(subj, p, o)
                return
            for obj, subjects in by_obj.items():
                for subj in subjects:
                    yield Triple(subj, p, obj)
            return
        if o is not None:
            for subj, preds in self._osp.get(o, {}).items():
                for pred in preds:
                    yield Triple(subj, pred, o)
            return
        yield from self._triples

    def count(
        self,
        subject: Optional[Term] = None,
        predicate: Optional[Term] = None,
        object: Optional[Term] = None,
    ) -> int:
        """Number of triples lookup() would yield, without materializing them."""
        s, p, o = subject, predicate, object
        if s is not None:
            by_pred = self._spo.get(s)
            if by_pred is None:
                return 0
            if p is not None:
                objects = by_pred.get(p, ())
                if o is not None:
                    return 1 if o in objects else 0
                return len(objects)
            if o is not None:
                return len(self._osp.get(o, {}).get(s, ()))
            return sum(len(objects) for objects in by_pred.values())
        if p is not None:
            by_obj = self._pos.get(p)
            if by_obj is None:
                return 0
            if o is not None:
                return len(by_obj.get(o, ()))
            return sum(len(subjects) for subjects in by_obj.values())
        if o is not None:
            return sum(len(preds) for preds in self._osp.get(o, {}).values())
        return len(self._triples)
