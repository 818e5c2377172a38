"""Pencil definition files and the polynomial expression grammar.

Files are line-oriented `key = value`; the polynomial itself is a quoted
expression over integers and declared identifiers with + - * ^ and
parentheses.  ^ binds tighter than *, * tighter than + and -, unary minus
is allowed, implicit multiplication is not.  Exponents must be nonnegative
integers.  An optional endomorphism matrix is given row-wise, entries as
expressions: "0, -1; 1, 0".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ParseError, PencilError
from .exact.poly import MultiPoly

_KNOWN_KEYS = {
    "name",
    "variables",
    "polynomial",
    "truncation",
    "tolerance",
    "degree_bound",
    "samples",
    "seed",
    "endomorphism",
}


@dataclass
class PencilFile:
    name: str
    variables: tuple[str, ...]
    polynomial_src: str
    options: dict = field(default_factory=dict)
    endomorphism_src: list | None = None  # rows of expression strings


# ----------------------------------------------------------------------
# tokenizer / recursive descent parser


@dataclass
class _Token:
    kind: str  # INT IDENT OP END
    text: str
    line: int
    column: int


def _tokenize(src: str, line0: int = 1):
    tokens = []
    line = line0
    col = 1
    i = 0
    while i < len(src):
        ch = src[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(src) and src[j].isdigit():
                j += 1
            if j < len(src) and (src[j].isalpha() or src[j] == "_"):
                raise ParseError("implicit multiplication is not allowed", line, col)
            tokens.append(_Token("INT", src[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(src) and (src[j].isalnum() or src[j] == "_"):
                j += 1
            tokens.append(_Token("IDENT", src[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in "+-*^()/":
            tokens.append(_Token("OP", ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("END", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens, allowed):
        self.tokens = tokens
        self.pos = 0
        self.allowed = allowed

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, text: str) -> _Token:
        tok = self.peek()
        if tok.kind == "OP" and tok.text == text:
            return self.take()
        raise ParseError(f"expected {text!r}", tok.line, tok.column)

    # expr := term (('+' | '-') term)*
    def expr(self) -> MultiPoly:
        acc = self.term()
        while True:
            tok = self.peek()
            if tok.kind == "OP" and tok.text in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if tok.text == "+" else acc - rhs
            else:
                return acc

    # term := factor ('*' factor)*
    def term(self) -> MultiPoly:
        acc = self.factor()
        while True:
            tok = self.peek()
            if tok.kind == "OP" and tok.text == "*":
                self.take()
                acc = acc * self.factor()
            elif tok.kind in ("INT", "IDENT") or (tok.kind == "OP" and tok.text == "("):
                # catches implicit multiplication like "2x" or ")("
                raise ParseError("implicit multiplication is not allowed", tok.line, tok.column)
            else:
                return acc

    # factor := '-' factor | power
    def factor(self) -> MultiPoly:
        tok = self.peek()
        if tok.kind == "OP" and tok.text == "-":
            self.take()
            return -self.factor()
        return self.power()

    # power := atom ('^' exponent)?
    def power(self) -> MultiPoly:
        base = self.atom()
        tok = self.peek()
        if tok.kind == "OP" and tok.text == "^":
            self.take()
            n = self.exponent()
            return base ** n
        return base

    def exponent(self) -> int:
        tok = self.peek()
        if tok.kind == "INT":
            self.take()
            return int(tok.text)
        if tok.kind == "OP" and tok.text == "(":
            self.take()
            value = self._const_fraction()
            self.expect_op(")")
            if value.denominator != 1:
                raise ParseError("non-integer exponent", tok.line, tok.column)
            if value < 0:
                raise ParseError("negative exponent", tok.line, tok.column)
            return int(value)
        raise ParseError("expected integer exponent", tok.line, tok.column)

    def _const_fraction(self) -> Fraction:
        """Constant arithmetic inside an exponent; tolerates '/' so that
        x^(1/2) reports the right error instead of a bare syntax error."""
        tok = self.peek()
        sign = 1
        while tok.kind == "OP" and tok.text == "-":
            self.take()
            sign = -sign
            tok = self.peek()
        if tok.kind != "INT":
            raise ParseError("expected integer exponent", tok.line, tok.column)
        self.take()
        value = Fraction(sign * int(tok.text))
        while True:
            tok = self.peek()
            if tok.kind == "OP" and tok.text == "/":
                self.take()
                den = self.peek()
                if den.kind != "INT":
                    raise ParseError("expected integer", den.line, den.column)
                self.take()
                value /= int(den.text)
            else:
                return value

    def atom(self) -> MultiPoly:
        tok = self.take()
        if tok.kind == "INT":
            return MultiPoly.const(int(tok.text))
        if tok.kind == "IDENT":
            if self.allowed is not None and tok.text not in self.allowed:
                raise ParseError(f"unknown identifier {tok.text!r}", tok.line, tok.column)
            return MultiPoly.var(tok.text)
        if tok.kind == "OP" and tok.text == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if tok.kind == "OP" and tok.text == "/":
            raise ParseError("division is not part of the grammar", tok.line, tok.column)
        raise ParseError(f"unexpected token {tok.text!r}", tok.line, tok.column)


def parse_polynomial(src: str, allowed=None, line0: int = 1) -> MultiPoly:
    """Parse an expression into a canonical MultiPoly.

    Printing a canonical integer-coefficient polynomial and reparsing it is
    the identity.
    """
    tokens = _tokenize(src, line0)
    parser = _Parser(tokens, set(allowed) if allowed is not None else None)
    poly = parser.expr()
    tail = parser.peek()
    if tail.kind != "END":
        raise ParseError(f"unexpected trailing input {tail.text!r}", tail.line, tail.column)
    return poly


# ----------------------------------------------------------------------
# pencil files

_INT_KEYS = {"truncation", "degree_bound", "samples", "seed"}
_FLOAT_KEYS = {"tolerance"}


def parse_pencil_text(text: str, origin: str = "<string>") -> PencilFile:
    entries: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError("expected 'key = value'", lineno, 1)
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _KNOWN_KEYS:
            raise ParseError(f"unknown key {key!r}", lineno, 1)
        if key in entries:
            raise ParseError(f"duplicate key {key!r}", lineno, 1)
        if value.startswith('"') and value.endswith('"') and len(value) >= 2:
            value = value[1:-1]
        entries[key] = (value, lineno)
    if "polynomial" not in entries:
        raise PencilError(f"{origin}: missing 'polynomial' entry")
    variables: tuple[str, ...] = ()
    if "variables" in entries:
        raw_vars = entries["variables"][0].replace(",", " ").split()
        variables = tuple(raw_vars)
    options: dict = {}
    for key in _INT_KEYS:
        if key in entries:
            value, lineno = entries[key]
            try:
                options[key] = int(value)
            except ValueError:
                raise ParseError(f"{key} must be an integer", lineno, 1) from None
    for key in _FLOAT_KEYS:
        if key in entries:
            value, lineno = entries[key]
            try:
                options[key] = float(value)
            except ValueError:
                raise ParseError(f"{key} must be a number", lineno, 1) from None
    endo = None
    if "endomorphism" in entries:
        value, _ = entries["endomorphism"]
        endo = [
            [cell.strip() for cell in row.split(",")]
            for row in value.split(";")
        ]
    return PencilFile(
        name=entries.get("name", ("unnamed",))[0],
        variables=variables,
        polynomial_src=entries["polynomial"][0],
        options=options,
        endomorphism_src=endo,
    )


def load_pencil_file(path: str) -> PencilFile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise PencilError(f"cannot read pencil file: {exc}") from exc
    return parse_pencil_text(text, origin=path)
