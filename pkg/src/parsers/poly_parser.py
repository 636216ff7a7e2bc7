"""Parser for the polynomial text syntax (e.g. ``x^2*y - 3/2*z``)."""

import re
from typing import List, NamedTuple, Optional

from src.algebra.poly import Polynomial, PolynomialRing
from src.errors import ParseError, UndefinedNameError


class Token(NamedTuple):
    kind: str  # "int", "name", "op" or "end"
    value: str
    column: int


class PolynomialParser:
    """Recursive-descent parser producing canonical polynomials of one ring."""

    TOKEN_PATTERN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")

    def __init__(self, ring: PolynomialRing, line: int = 1, column_offset: int = 0):
        """
        Initialize the parser.

        Args:
            ring: Ring whose variables may appear in the text
            line: Line number reported in diagnostics
            column_offset: Column of the first character of the text
        """
        self.ring = ring
        self.line = line
        self.column_offset = column_offset
        self.tokens: List[Token] = []
        self.position = 0

    def tokenize(self, text: str) -> List[Token]:
        tokens = []
        for match in self.TOKEN_PATTERN.finditer(text):
            column = match.start() + len(match.group(0)) - len(match.group(0).lstrip())
            if match.group(1):
                tokens.append(Token("int", match.group(1), column))
            elif match.group(2):
                tokens.append(Token("name", match.group(2), column))
            elif match.group(3):
                tokens.append(Token("op", match.group(3), column))
        tokens.append(Token("end", "", len(text)))
        return tokens

    def parse(self, text: str) -> Polynomial:
        """
        Parse a polynomial.

        Args:
            text: Polynomial expression

        Returns:
            Canonical Polynomial over the parser's ring
        """
        self.tokens = self.tokenize(text)
        self.position = 0
        if self._peek().kind == "end":
            raise self._error("empty polynomial", {"integer", "variable", "("})
        result = self._expression()
        if self._peek().kind != "end":
            raise self._error(f"unexpected {self._peek().value!r}", {"+", "-", "*", "/", "^"})
        return result

    def _peek(self) -> Token:
        return self.tokens[self.position]

    def _advance(self) -> Token:
        token = self.tokens[self.position]
        self.position += 1
        return token

    def _accept(self, op: str) -> bool:
        token = self._peek()
        if token.kind == "op" and token.value == op:
            self.position += 1
            return True
        return False

    def _error(self, message: str, expected: Optional[set] = None) -> ParseError:
        column = self.column_offset + self._peek().column + 1
        return ParseError(message, self.line, column, expected)

    def _expression(self) -> Polynomial:
        result = self._term()
        while True:
            if self._accept("+"):
                result = result + self._term()
            elif self._accept("-"):
                result = result - self._term()
            else:
                return result

    def _term(self) -> Polynomial:
        result = self._unary()
        while True:
            if self._accept("*"):
                result = result * self._unary()
            elif self._accept("/"):
                divisor = self._unary()
                if divisor.is_zero() or not divisor.is_constant():
                    raise self._error("division is only allowed by a nonzero constant")
                field = self.ring.field
                result = result.scale(field.inv(divisor.coefficient(self.ring.unit_monomial)))
            else:
                return result

    def _unary(self) -> Polynomial:
        if self._accept("-"):
            return -self._unary()
        if self._accept("+"):
            return self._unary()
        return self._power()

    def _power(self) -> Polynomial:
        base = self._atom()
        if self._accept("^"):
            token = self._peek()
            if token.kind != "int":
                raise self._error("exponent must be a non-negative integer", {"integer"})
            self._advance()
            return base ** int(token.value)
        return base

    def _atom(self) -> Polynomial:
        token = self._peek()
        if token.kind == "int":
            self._advance()
            return self.ring.constant(int(token.value))
        if token.kind == "name":
            self._advance()
            if token.value not in self.ring.variables:
                raise UndefinedNameError(
                    f"unknown variable {token.value!r} in {self.ring}",
                    self.line,
                    self.column_offset + token.column + 1,
                )
            return self.ring.gen(token.value)
        if self._accept("("):
            inner = self._expression()
            if not self._accept(")"):
                raise self._error("unbalanced parenthesis", {")"})
            return inner
        raise self._error(
            f"unexpected {token.value or 'end of input'!r}", {"integer", "variable", "("}
        )


def parse_polynomial(ring: PolynomialRing, text: str) -> Polynomial:
    """Parse ``text`` as a polynomial of ``ring``."""
    return PolynomialParser(ring).parse(text)
