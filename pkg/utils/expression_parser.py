"""
Recursive-descent parser for chart expressions.

Grammar (whitespace ignored):
    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | power
    power  := atom ('^' INTEGER)?
    atom   := NUMBER | VARIABLE | '(' expr ')'
Variables are x1..xn (leaf) and v1..vq (transverse); numbers are decimal
literals and are read exactly.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from models.expression import Const, Expr, Var, make_add, make_mul, make_neg, make_pow
from utils.exceptions import InputError

_TOKEN = re.compile(r"\s*(?:(?P<number>\d+(?:\.\d*)?|\.\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()]))")
_VARIABLE = re.compile(r"^(?P<kind>[xv])(?P<index>[1-9]\d*)$")


@dataclass(frozen=True)
class Token:
    kind: str  # 'number', 'name', 'op' or 'end'
    text: str
    column: int  # 1-based


def tokenize(source: str) -> List[Token]:
    tokens = []
    position = 0
    while position < len(source):
        if source[position:].strip() == "":
            break
        match = _TOKEN.match(source, position)
        if not match:
            column = position + 1 + (len(source[position:]) - len(source[position:].lstrip()))
            raise InputError(f"Unexpected character '{source[column - 1]}'", column=column)
        kind = match.lastgroup
        text = match.group(kind)
        tokens.append(Token(kind, text, match.start(kind) + 1))
        position = match.end()
    tokens.append(Token("end", "", len(source) + 1))
    return tokens


class ExpressionParser:
    """Parses one expression for a chart with the given dimensions"""

    def __init__(self, leaf_dim: int, transverse_dim: int = 0):
        if leaf_dim < 1 or transverse_dim < 0:
            raise InputError("Leaf dimension must be positive and transverse dimension non-negative")
        self.leaf_dim = leaf_dim
        self.transverse_dim = transverse_dim
        self._tokens: List[Token] = []
        self._index = 0

    def parse(self, source: str) -> Expr:
        if not source or not source.strip():
            raise InputError("Empty expression", column=1)
        self._tokens = tokenize(source)
        self._index = 0
        expr = self._expr()
        token = self._peek()
        if token.kind != "end":
            raise InputError(f"Unexpected '{token.text}'", column=token.column)
        return expr

    def _peek(self) -> Token:
        return self._tokens[self._index]

    def _advance(self) -> Token:
        token = self._tokens[self._index]
        self._index += 1
        return token

    def _accept(self, op: str) -> Optional[Token]:
        token = self._peek()
        if token.kind == "op" and token.text == op:
            return self._advance()
        return None

    def _expr(self) -> Expr:
        terms = [self._term()]
        while True:
            if self._accept("+"):
                terms.append(self._term())
            elif self._accept("-"):
                terms.append(make_neg(self._term()))
            else:
                return make_add(terms) if len(terms) > 1 else terms[0]

    def _term(self) -> Expr:
        factors = [self._unary()]
        while self._accept("*"):
            factors.append(self._unary())
        return make_mul(factors) if len(factors) > 1 else factors[0]

    def _unary(self) -> Expr:
        if self._accept("-"):
            return make_neg(self._unary())
        return self._power()

    def _power(self) -> Expr:
        base = self._atom()
        if self._accept("^"):
            token = self._advance()
            if token.kind != "number" or not token.text.isdigit():
                raise InputError("Exponent must be a non-negative integer literal", column=token.column)
            return make_pow(base, int(token.text))
        return base

    def _atom(self) -> Expr:
        token = self._advance()
        if token.kind == "number":
            return Const(Fraction(token.text))
        if token.kind == "name":
            return self._variable(token)
        if token.kind == "op" and token.text == "(":
            inner = self._expr()
            if not self._accept(")"):
                closing = self._peek()
                raise InputError("Missing closing parenthesis", column=closing.column)
            return inner
        if token.kind == "end":
            raise InputError("Unexpected end of expression", column=token.column)
        raise InputError(f"Unexpected '{token.text}'", column=token.column)

    def _variable(self, token: Token) -> Var:
        match = _VARIABLE.match(token.text)
        if not match:
            raise InputError(f"Unknown identifier '{token.text}'", column=token.column)
        kind, index = match.group("kind"), int(match.group("index"))
        limit = self.leaf_dim if kind == "x" else self.transverse_dim
        if index > limit:
            raise InputError(
                f"Variable '{token.text}' outside the chart ({kind}1..{kind}{limit})", column=token.column)
        return Var(kind, index)


def parse_expression(source: str, leaf_dim: int, transverse_dim: int = 0) -> Expr:
    """Parse ``source`` for a chart with n leaf and q transverse coordinates"""
    return ExpressionParser(leaf_dim, transverse_dim).parse(source)
