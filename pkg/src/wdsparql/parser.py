"""Parser for the SPARQL SELECT subset the evaluator understands.

Grammar, informally: optional PREFIX declarations, SELECT with `*` or
variables, then a WHERE group. A group is `{ ... }` containing triple
blocks, nested groups, OPTIONAL groups, and FILTER conditions. Elements
fold left to right, so `{ A OPTIONAL { B } }` means A OPT B and
`{ A B }` means A AND B. UNION is deliberately absent.

Blank nodes are valid in data but rejected in query patterns: the algebra
treats every pattern position as a constant or a variable, nothing else.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .algebra import (
    And,
    AndC,
    Bound,
    ConstEq,
    Constraint,
    Filter,
    Leaf,
    Not,
    Opt,
    OrC,
    PatternNode,
    TriplePattern,
    VarEq,
    Variable,
    format_constraint,
    format_triple_pattern,
)
from .errors import ParseError
from .rdf import Iri, Literal, Term

RDF_TYPE = Iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type")

_KEYWORDS = frozenset(("PREFIX", "SELECT", "WHERE", "OPTIONAL", "FILTER", "BOUND"))

_PUNCT = {
    "{": "LBRACE", "}": "RBRACE", "(": "LPAREN", ")": "RPAREN",
    ".": "DOT", "*": "STAR", "=": "EQ", "!": "BANG",
}


class QueryParseError(ParseError):
    """Malformed query text."""


@dataclass(frozen=True)
class Query:
    projection: Optional[frozenset[Variable]]  # None means SELECT *
    pattern: PatternNode
    prefixes: dict

    def __post_init__(self):
        object.__setattr__(self, "prefixes", dict(self.prefixes))


@dataclass(frozen=True)
class _Token:
    kind: str
    value: object
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)

    def err(message: str, l: int, c: int) -> QueryParseError:
        return QueryParseError(message, l, c)

    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_line, start_col = line, col
        if ch == "<":
            j = i + 1
            while j < n and text[j] not in ">\n":
                j += 1
            if j >= n or text[j] != ">":
                raise err("unterminated IRI", start_line, start_col)
            value = text[i + 1:j]
            if not value:
                raise err("empty IRI", start_line, start_col)
            tokens.append(_Token("IRIREF", value, start_line, start_col))
            col += j + 1 - i
            i = j + 1
            continue
        if ch == "?":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            name = text[i + 1:j]
            if not name:
                raise err("'?' must be followed by a variable name", start_line, start_col)
            tokens.append(_Token("VAR", name, start_line, start_col))
            col += j - i
            i = j
            continue
        if ch == '"':
            value, j = _scan_string(text, i, start_line, start_col)
            tokens.append(_Token("STRING", value, start_line, start_col))
            col += j - i
            i = j
            continue
        if ch == "@":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "-"):
                j += 1
            tag = text[i + 1:j]
            if not tag:
                raise err("empty language tag", start_line, start_col)
            tokens.append(_Token("LANGTAG", tag, start_line, start_col))
            col += j - i
            i = j
            continue
        if ch == "^":
            if text[i:i + 2] != "^^":
                raise err("'^' must be doubled as '^^'", start_line, start_col)
            tokens.append(_Token("DCARET", "^^", start_line, start_col))
            i += 2
            col += 2
            continue
        if ch == "&":
            if text[i:i + 2] != "&&":
                raise err("'&' must be doubled as '&&'", start_line, start_col)
            tokens.append(_Token("ANDAND", "&&", start_line, start_col))
            i += 2
            col += 2
            continue
        if ch == "|":
            if text[i:i + 2] != "||":
                raise err("'|' must be doubled as '||'", start_line, start_col)
            tokens.append(_Token("OROR", "||", start_line, start_col))
            i += 2
            col += 2
            continue
        if ch == "_":
            if i + 1 >= n or text[i + 1] != ":":
                raise err("'_' must start a blank node label '_:name'", start_line, start_col)
            j = i + 2
            while j < n and (text[j].isalnum() or text[j] in "_-"):
                j += 1
            tokens.append(_Token("BLANK", text[i + 2:j], start_line, start_col))
            col += j - i
            i = j
            continue
        if ch in _PUNCT:
            tokens.append(_Token(_PUNCT[ch], ch, start_line, start_col))
            i += 1
            col += 1
            continue
        if ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] in "_-"):
                j += 1
            name = text[i:j]
            if j < n and text[j] == ":":
                j += 1
                k = j
                while k < n and (text[k].isalnum() or text[k] in "_-"):
                    k += 1
                tokens.append(_Token("PNAME", (name, text[j:k]), start_line, start_col))
                col += k - i
                i = k
                continue
            upper = name.upper()
            if upper in _KEYWORDS:
                tokens.append(_Token(upper, name, start_line, start_col))
            else:
                tokens.append(_Token("IDENT", name, start_line, start_col))
            col += j - i
            i = j
            continue
        raise err(f"unexpected character {ch!r}", start_line, start_col)
    tokens.append(_Token("EOF", None, line, col))
    return tokens


_STRING_UNESCAPES = {"\\": "\\", '"': '"', "n": "\n", "r": "\r", "t": "\t"}


def _scan_string(text: str, i: int, line: int, col: int) -> tuple[str, int]:
    # i points at the opening quote; returns (value, index past closing quote)
    j = i + 1
    chars: list[str] = []
    n = len(text)
    while True:
        if j >= n or text[j] == "\n":
            raise QueryParseError("unterminated string literal", line, col)
        ch = text[j]
        if ch == '"':
            return "".join(chars), j + 1
        if ch == "\\":
            j += 1
            if j >= n:
                raise QueryParseError("dangling backslash", line, col)
            esc = text[j]
            if esc in _STRING_UNESCAPES:
                chars.append(_STRING_UNESCAPES[esc])
                j += 1
                continue
            if esc in "uU":
                width = 4 if esc == "u" else 8
                digits = text[j + 1:j + 1 + width]
                if len(digits) < width or any(
                    d not in "0123456789abcdefABCDEF" for d in digits
                ):
                    raise QueryParseError(
                        f"\\{esc} escape needs {width} hex digits", line, col
                    )
                chars.append(chr(int(digits, 16)))
                j += 1 + width
                continue
            raise QueryParseError(f"unknown escape sequence \\{esc}", line, col)
        chars.append(ch)
        j += 1


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0
        self.prefixes: dict[str, str] = {}

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message: str, tok: Optional[_Token] = None) -> QueryParseError:
        tok = tok or self.peek()
        return QueryParseError(message, tok.line, tok.column)

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise self.error(f"expected {what}", tok)
        return self.advance()

    # --- query structure ---

    def parse_query(self) -> Query:
        while self.peek().kind == "PREFIX":
            self.parse_prefix_decl()
        self.expect("SELECT", "SELECT")
        projection = self.parse_projection()
        self.expect("WHERE", "WHERE")
        pattern = self.parse_group()
        tok = self.peek()
        if tok.kind != "EOF":
            raise self.error("trailing content after query", tok)
        return Query(projection, pattern, self.prefixes)

    def parse_prefix_decl(self) -> None:
        self.advance()
        tok = self.expect("PNAME", "a prefix label 'name:'")
        name, local = tok.value
        if local:
            raise self.error("prefix label must end at the colon", tok)
        iri = self.expect("IRIREF", "an IRI in angle brackets")
        self.prefixes[name] = iri.value

    def parse_projection(self) -> Optional[frozenset[Variable]]:
        tok = self.peek()
        if tok.kind == "STAR":
            self.advance()
            return None
        if tok.kind != "VAR":
            raise self.error("expected '*' or at least one ?variable", tok)
        out = set()
        while self.peek().kind == "VAR":
            out.add(Variable(self.advance().value))
        return frozenset(out)

    # --- groups and patterns ---

    def parse_group(self) -> PatternNode:
        open_tok = self.expect("LBRACE", "'{'")
        acc: Optional[PatternNode] = None
        while True:
            tok = self.peek()
            if tok.kind == "RBRACE":
                self.advance()
                break
            if tok.kind == "EOF":
                raise self.error("unterminated group, expected '}'", tok)
            if tok.kind == "OPTIONAL":
                self.advance()
                inner = self.parse_group()
                acc = Opt(acc if acc is not None else Leaf(()), inner)
                continue
            if tok.kind == "FILTER":
                self.advance()
                self.expect("LPAREN", "'(' after FILTER")
                constraint = self.parse_expr()
                self.expect("RPAREN", "')' closing the FILTER condition")
                acc = Filter(acc if acc is not None else Leaf(()), constraint)
                continue
            if tok.kind == "LBRACE":
                inner = self.parse_group()
                acc = inner if acc is None else And(acc, inner)
                continue
            block = self.parse_triples_block()
            acc = block if acc is None else And(acc, block)
        if acc is None:
            raise self.error("empty group", open_tok)
        return acc

    def parse_triples_block(self) -> PatternNode:
        tps = [self.parse_triple_pattern()]
        while self.peek().kind == "DOT":
            self.advance()
            if self.peek().kind in ("VAR", "IRIREF", "PNAME", "BLANK", "STRING"):
                tps.append(self.parse_triple_pattern())
            else:
                break
        return Leaf(tuple(tps))

    def parse_triple_pattern(self) -> TriplePattern:
        subject = self.parse_term_or_var(position="subject")
        predicate = self.parse_predicate()
        obj = self.parse_term_or_var(position="object")
        return TriplePattern(subject, predicate, obj)

    def parse_predicate(self) -> Union[Variable, Term]:
        tok = self.peek()
        if tok.kind == "IDENT" and tok.value == "a":
            self.advance()
            return RDF_TYPE
        term = self.parse_term_or_var(position="predicate")
        if isinstance(term, Literal):
            raise self.error("a literal cannot be a predicate", tok)
        return term

    def parse_term_or_var(self, position: str) -> Union[Variable, Term]:
        tok = self.peek()
        if tok.kind == "VAR":
            self.advance()
            return Variable(tok.value)
        if tok.kind == "BLANK":
            raise self.error("blank nodes are not allowed in query patterns", tok)
        if tok.kind == "STRING":
            if position != "object":
                raise self.error(f"a literal cannot be a triple {position}", tok)
            return self.parse_literal()
        if tok.kind in ("IRIREF", "PNAME"):
            return self.parse_iri()
        raise self.error(f"expected a term or variable as triple {position}", tok)

    def parse_iri(self) -> Iri:
        tok = self.advance()
        if tok.kind == "IRIREF":
            return Iri(tok.value)
        if tok.kind == "PNAME":
            name, local = tok.value
            base = self.prefixes.get(name)
            if base is None:
                raise self.error(f"undeclared prefix '{name}:'", tok)
            return Iri(base + local)
        raise self.error("expected an IRI", tok)

    def parse_literal(self) -> Literal:
        tok = self.expect("STRING", "a string literal")
        if self.peek().kind == "DCARET":
            self.advance()
            dtype_tok = self.peek()
            if dtype_tok.kind not in ("IRIREF", "PNAME"):
                raise self.error("expected a datatype IRI after '^^'", dtype_tok)
            return Literal(tok.value, datatype=self.parse_iri())
        if self.peek().kind == "LANGTAG":
            return Literal(tok.value, language=self.advance().value)
        return Literal(tok.value)

    # --- filter expressions (|| lowest, then &&, then !) ---

    def parse_expr(self) -> Constraint:
        left = self.parse_and_expr()
        while self.peek().kind == "OROR":
            self.advance()
            left = OrC(left, self.parse_and_expr())
        return left

    def parse_and_expr(self) -> Constraint:
        left = self.parse_unary_expr()
        while self.peek().kind == "ANDAND":
            self.advance()
            left = AndC(left, self.parse_unary_expr())
        return left

    def parse_unary_expr(self) -> Constraint:
        if self.peek().kind == "BANG":
            self.advance()
            return Not(self.parse_unary_expr())
        return self.parse_primary_expr()

    def parse_primary_expr(self) -> Constraint:
        tok = self.peek()
        if tok.kind == "BOUND":
            self.advance()
            self.expect("LPAREN", "'(' after BOUND")
            var = self.expect("VAR", "a ?variable inside BOUND")
            self.expect("RPAREN", "')' closing BOUND")
            return Bound(Variable(var.value))
        if tok.kind == "LPAREN":
            self.advance()
            inner = self.parse_expr()
            self.expect("RPAREN", "')'")
            return inner
        if tok.kind == "VAR":
            self.advance()
            left = Variable(tok.value)
            self.expect("EQ", "'=' in comparison")
            right_tok = self.peek()
            if right_tok.kind == "VAR":
                self.advance()
                return VarEq(left, Variable(right_tok.value))
            if right_tok.kind == "STRING":
                return ConstEq(left, self.parse_literal())
            if right_tok.kind in ("IRIREF", "PNAME"):
                return ConstEq(left, self.parse_iri())
            raise self.error("expected a ?variable or term after '='", right_tok)
        raise self.error("expected a filter condition", tok)


def parse_query(text: str) -> Query:
    """Parse query text; raises QueryParseError with 1-based position."""
    return _Parser(_tokenize(text)).parse_query()


# --- rendering back to surface syntax ---


def format_query(query: Query) -> str:
    """Render a query so that parsing it again gives the same projection
    and pattern. Prefixes are not reconstructed; IRIs print in full.

    Every non-leftmost AND operand renders as a braced group: adjacent bare
    triple blocks would otherwise fuse into one BGP on the way back in.
    """
    if query.projection is None:
        head = "SELECT *"
    else:
        names = " ".join(f"?{v.name}" for v in sorted(query.projection, key=lambda v: v.name))
        head = f"SELECT {names}"
    return f"{head} WHERE {{ {_group_body(query.pattern)} }}"


def _group_body(pattern: PatternNode) -> str:
    return " ".join(_elements(pattern))


def _elements(pattern: PatternNode) -> list[str]:
    if isinstance(pattern, Leaf):
        if not pattern.bgp:
            return []
        return [" . ".join(format_triple_pattern(tp) for tp in pattern.bgp)]
    if isinstance(pattern, And):
        return _elements(pattern.left) + [f"{{ {_group_body(pattern.right)} }}"]
    if isinstance(pattern, Opt):
        return _elements(pattern.left) + [f"OPTIONAL {{ {_group_body(pattern.right)} }}"]
    if isinstance(pattern, Filter):
        return _elements(pattern.pattern) + [f"FILTER ({format_constraint(pattern.constraint)})"]
    raise TypeError(f"not a pattern: {pattern!r}")
