"""Tokenizer and recursive-descent parser for operator expressions.

The grammar is deliberately small::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := INT | IDENT | '(' expr ')'

Products are folded strictly left to right, so ``dx*x`` means the
composition of ``dx`` after multiplication by ``x``.  The parser builds a
tiny AST that is later evaluated against either the coefficient field or
the operator ring.
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


@dataclass(frozen=True)
class Token:
    kind: str   # "int", "ident", "op", "end"
    text: str
    pos: int


def tokenize(text):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:
            break  # only trailing whitespace is left
        if m.group(1) is not None:
            tokens.append(Token("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(Token("ident", m.group(2), m.start(2)))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3), text)
            tokens.append(Token("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(Token("end", "", n))
    return tokens


# AST nodes are plain tuples: (tag, pos, *children)

class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def advance(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, text):
        if self.tok.text != text or self.tok.kind != "op":
            self.error(f"expected {text!r}")
        return self.advance()

    def error(self, msg):
        found = self.tok.text or "end of input"
        raise ParseError(f"{msg}, found {found!r}", self.tok.pos, self.text)

    def parse(self):
        if self.tok.kind == "end":
            self.error("empty expression")
        node = self.expr()
        if self.tok.kind != "end":
            self.error("unexpected token")
        return node

    def expr(self):
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            t = self.advance()
            rhs = self.term()
            node = ("add" if t.text == "+" else "sub", t.pos, node, rhs)
        return node

    def term(self):
        node = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            t = self.advance()
            rhs = self.unary()
            node = ("mul" if t.text == "*" else "div", t.pos, node, rhs)
        return node

    def unary(self):
        if self.tok.kind == "op" and self.tok.text in "+-":
            t = self.advance()
            node = self.unary()
            return ("neg", t.pos, node) if t.text == "-" else node
        return self.power()

    def power(self):
        node = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            t = self.advance()
            if self.tok.kind != "int":
                self.error("exponent must be a nonnegative integer")
            node = ("pow", t.pos, node, int(self.advance().text))
        return node

    def atom(self):
        t = self.tok
        if t.kind == "int":
            self.advance()
            return ("num", t.pos, Fraction(int(t.text)))
        if t.kind == "ident":
            self.advance()
            return ("name", t.pos, t.text)
        if t.kind == "op" and t.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        self.error("expected a number, a name or '('")


def parse(text):
    """Parse ``text`` into an expression tree."""
    return _Parser(text).parse()


def evaluate(node, number, symbol, divide):
    """Fold an expression tree.

    ``number(Fraction)`` and ``symbol(name, pos)`` build leaves;
    ``divide(a, b, pos)`` implements ``/``.  Sums, products and powers use
    the Python operators of whatever the leaves return.
    """
    tag, pos = node[0], node[1]
    if tag == "num":
        return number(node[2])
    if tag == "name":
        return symbol(node[2], pos)
    if tag == "neg":
        return -evaluate(node[2], number, symbol, divide)
    if tag == "pow":
        base = evaluate(node[2], number, symbol, divide)
        result = number(Fraction(1))
        for _ in range(node[3]):
            result = result * base
        return result
    a = evaluate(node[2], number, symbol, divide)
    b = evaluate(node[3], number, symbol, divide)
    if tag == "add":
        return a + b
    if tag == "sub":
        return a - b
    if tag == "mul":
        return a * b
    return divide(a, b, pos)


def names_in(node):
    """Set of identifiers appearing in an expression tree."""
    if node[0] == "name":
        return {node[2]}
    out = set()
    for child in node[2:]:
        if isinstance(child, tuple):
            out |= names_in(child)
    return out
