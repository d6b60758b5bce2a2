"""Line-oriented N-Triples reader and writer.

Covers the ground syntax needed for test data: IRIs, blank nodes, and
literals with optional datatype or language tag. Comment lines start with
`#`. The first malformed line aborts the parse with a position-carrying
error; there is no recovery mode.
"""

from __future__ import annotations

from .errors import ParseError
from .rdf import BlankNode, Graph, Iri, Literal, Term, Triple, format_triple


class NTriplesError(ParseError):
    """Malformed N-Triples input."""


_UNESCAPES = {"\\": "\\", '"': '"', "n": "\n", "r": "\r", "t": "\t"}


class _LineParser:
    """Cursor over a single logical line. Columns are 1-based."""

    def __init__(self, text: str, line_no: int):
        self.text = text
        self.line_no = line_no
        self.pos = 0

    def error(self, message: str) -> NTriplesError:
        return NTriplesError(message, self.line_no, self.pos + 1)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def parse_term(self) -> Term:
        ch = self.peek()
        if ch == "<":
            return self.parse_iri()
        if ch == "_":
            return self.parse_blank()
        if ch == '"':
            return self.parse_literal()
        if ch == "":
            raise self.error("unexpected end of line, expected a term")
        raise self.error(f"unexpected character {ch!r}, expected a term")

    def parse_iri(self) -> Iri:
        self.expect("<")
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] != ">":
            ch = self.text[self.pos]
            if ch in ' "{}|^`' or ch == "<" or ord(ch) <= 0x20:
                raise self.error(f"character {ch!r} not allowed inside an IRI")
            self.pos += 1
        if self.pos >= len(self.text):
            raise self.error("unterminated IRI")
        value = self.text[start:self.pos]
        if not value:
            raise self.error("empty IRI")
        self.pos += 1
        return Iri(value)

    def parse_blank(self) -> BlankNode:
        self.expect("_")
        self.expect(":")
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] in "_-"
        ):
            self.pos += 1
        label = self.text[start:self.pos]
        if not label:
            raise self.error("empty blank node label")
        return BlankNode(label)

    def parse_literal(self) -> Literal:
        self.expect('"')
        chars: list[str] = []
        while True:
            if self.pos >= len(self.text):
                raise self.error("unterminated string literal")
            ch = self.text[self.pos]
            if ch == '"':
                self.pos += 1
                break
            if ch == "\\":
                self.pos += 1
                chars.append(self.parse_escape())
                continue
            self.pos += 1
            chars.append(ch)
        lexical = "".join(chars)
        if self.peek() == "^":
            self.expect("^")
            self.expect("^")
            dt = self.parse_iri()
            return Literal(lexical, datatype=dt)
        if self.peek() == "@":
            self.pos += 1
            start = self.pos
            while self.pos < len(self.text) and (
                self.text[self.pos].isalnum() or self.text[self.pos] == "-"
            ):
                self.pos += 1
            tag = self.text[start:self.pos]
            if not tag:
                raise self.error("empty language tag")
            return Literal(lexical, language=tag)
        return Literal(lexical)

    def parse_escape(self) -> str:
        if self.pos >= len(self.text):
            raise self.error("dangling backslash")
        ch = self.text[self.pos]
        if ch in _UNESCAPES:
            self.pos += 1
            return _UNESCAPES[ch]
        if ch == "u":
            return self.parse_hex_escape(4)
        if ch == "U":
            return self.parse_hex_escape(8)
        raise self.error(f"unknown escape sequence \\{ch}")

    def parse_hex_escape(self, width: int) -> str:
        self.pos += 1
        digits = self.text[self.pos:self.pos + width]
        if len(digits) < width or any(d not in "0123456789abcdefABCDEF" for d in digits):
            raise self.error(f"\\{'u' if width == 4 else 'U'} escape needs {width} hex digits")
        self.pos += width
        code = int(digits, 16)
        if code > 0x10FFFF:
            raise self.error("escape is not a valid code point")
        return chr(code)


def parse_ntriples(text: str) -> Graph:
    """Parse N-Triples text into a Graph.

    Duplicate statements collapse silently (the graph is a set). Raises
    NTriplesError with 1-based line and column on the first malformed line.
    """
    triples: list[Triple] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        lp = _LineParser(raw, line_no)
        lp.skip_ws()
        if lp.at_end() or lp.peek() == "#":
            continue
        subject = lp.parse_term()
        if isinstance(subject, Literal):
            raise NTriplesError("triple subject cannot be a literal", line_no, 1)
        lp.skip_ws()
        pred_col = lp.pos + 1
        predicate = lp.parse_term()
        if not isinstance(predicate, Iri):
            raise NTriplesError("triple predicate must be an IRI", line_no, pred_col)
        lp.skip_ws()
        obj = lp.parse_term()
        lp.skip_ws()
        lp.expect(".")
        lp.skip_ws()
        if not lp.at_end() and lp.peek() != "#":
            raise lp.error("trailing content after '.'")
        triples.append(Triple(subject, predicate, obj))
    return Graph(triples)


def serialize_graph(graph: Graph) -> str:
    """Write a graph as sorted N-Triples lines (deterministic, round-trips exactly)."""
    lines = sorted(format_triple(t) for t in graph)
    return "".join(line + "\n" for line in lines)
