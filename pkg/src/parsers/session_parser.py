"""Parser for the session language.

A session is a sequence of ``;``-terminated statements::

    ring R = QQ[x,y,z] / (x^2, x*y);
    ideal I = (x, y*z);
    closure c = standardize(radical; witnesses=[z]);
    print standardized_radical(I);
    check axioms(radical; samples=20);

Names are resolved while parsing: every reference must name an earlier
declaration, and polynomials may only use the variables of the ring
declared most recently.
"""

import re
from pathlib import Path
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple

from src.algebra.fields import QQ
from src.algebra.poly import PolynomialRing
from src.errors import ArityError, ParseError, UndefinedNameError
from src.models.session import Expr, ExprKind, RingSpec, Session, Statement, StatementKind
from src.parsers.poly_parser import PolynomialParser


class Token(NamedTuple):
    kind: str  # "int", "name", "op" or "end"
    value: str
    line: int
    column: int
    offset: int

    @property
    def end(self) -> int:
        return self.offset + len(self.value)


STATEMENT_KEYWORDS = ("ring", "ideal", "frac", "closure", "witnesses", "print", "check", "decompose")
BUILTIN_CLOSURES = ("identity", "radical", "integral", "integral_monomial", "frobenius")
CLOSURE_FUNCTIONS = ("standardize", "finitize")

# Argument kinds: ideal, poly, element (polynomial or fraction r/z),
# ideal_or_poly, target (ideal or fractional ideal), closure, operator
# (closure or the b-operation) and int.
IDEAL_FUNCTIONS: Dict[str, Tuple[str, ...]] = {
    "sum": ("ideal", "ideal"),
    "product": ("ideal", "ideal"),
    "intersect": ("ideal", "ideal"),
    "power": ("ideal", "int"),
    "colon": ("ideal", "ideal_or_poly"),
    "radical": ("ideal",),
    "closure": ("closure", "ideal"),
    "standardized_radical": ("ideal",),
}
VALUE_FUNCTIONS: Dict[str, Tuple[str, ...]] = {
    "member": ("operator", "element", "target"),
    "radical_member": ("poly", "ideal"),
    "is_regular": ("poly",),
    "compare": ("ideal", "ideal"),
}
PARAMETERS: Dict[str, Dict[str, str]] = {
    "frobenius": {"e_max": "int"},
    "standardize": {"witnesses": "witnesses"},
    "check axioms": {"samples": "int", "witnesses": "witnesses"},
    "check correspondence": {"samples": "int", "larger": "closure"},
}


class SessionParser:
    """Recursive-descent parser producing a name-resolved :class:`Session`."""

    TOKEN_PATTERN = re.compile(
        r"(?P<skip>[ \t\r]+|#[^\n]*)|(?P<newline>\n)|(?P<int>\d+)"
        r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>\S)"
    )

    def __init__(self) -> None:
        """Initialize the session parser."""
        self.text = ""
        self.tokens: List[Token] = []
        self.position = 0
        self.scope: Dict[str, str] = {}  # name -> declaration kind
        self.ring_variables: Dict[str, PolynomialRing] = {}
        self.current_ring: Optional[str] = None
        self.statistics: Dict[str, int] = {}

    # Tokens

    def tokenize(self, text: str) -> List[Token]:
        tokens = []
        line, line_start = 1, 0
        for match in self.TOKEN_PATTERN.finditer(text):
            kind = match.lastgroup
            if kind == "newline":
                line, line_start = line + 1, match.end()
                continue
            if kind == "skip" or kind is None:
                continue
            column = match.start() - line_start + 1
            tokens.append(Token(kind, match.group(0), line, column, match.start()))
        column = len(text) - line_start + 1
        tokens.append(Token("end", "", line, column, len(text)))
        return tokens

    def _peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.position + ahead, len(self.tokens) - 1)]

    def _advance(self) -> Token:
        token = self._peek()
        self.position += 1
        return token

    def _is_op(self, value: str, ahead: int = 0) -> bool:
        token = self._peek(ahead)
        return token.kind == "op" and token.value == value

    def _accept(self, value: str) -> bool:
        if self._is_op(value) or (self._peek().kind == "name" and self._peek().value == value):
            self.position += 1
            return True
        return False

    def _expect(self, value: str) -> Token:
        token = self._peek()
        if not self._accept(value):
            raise self._error(f"unexpected {self._describe(token)}", {value})
        return token

    def _expect_name(self, what: str = "name") -> Token:
        token = self._peek()
        if token.kind != "name":
            raise self._error(f"unexpected {self._describe(token)}", {what})
        return self._advance()

    def _describe(self, token: Token) -> str:
        return "end of input" if token.kind == "end" else repr(token.value)

    def _error(self, message: str, expected: Optional[Sequence[str]] = None, token: Optional[Token] = None) -> ParseError:
        token = token or self._peek()
        return ParseError(message, token.line, token.column, expected)

    # Entry points

    def parse(self, text: str) -> Session:
        """
        Parse a session.

        Args:
            text: Session source

        Returns:
            Session with statements in source order

        Raises:
            ParseError, UndefinedNameError, ArityError: with line and column
        """
        self.text = text
        self.tokens = self.tokenize(text)
        self.position = 0
        self.scope = {}
        self.ring_variables = {}
        self.current_ring = None
        self.statistics = {}
        statements = []
        while self._peek().kind != "end":
            statement = self._statement()
            statements.append(statement)
            self.statistics[statement.kind.value] = self.statistics.get(statement.kind.value, 0) + 1
        return Session(statements=statements)

    def parse_file(self, file_path: Path) -> Session:
        with open(file_path, "r", encoding="utf-8") as f:
            return self.parse(f.read())

    def get_statistics(self) -> Dict[str, Any]:
        """Statement counts by kind for the last parse."""
        return {"total_statements": sum(self.statistics.values()), **self.statistics}

    # Statements

    def _statement(self) -> Statement:
        start = self._peek()
        if start.kind != "name" or start.value not in STATEMENT_KEYWORDS:
            raise self._error(f"unexpected {self._describe(start)}", STATEMENT_KEYWORDS)
        self._advance()
        fields: Dict[str, Any] = {}
        if start.value == "ring":
            kind = StatementKind.RING
            fields["name"], fields["ring_spec"] = self._ring_declaration()
        elif start.value in ("ideal", "frac", "closure", "witnesses"):
            kind = StatementKind(start.value)
            fields.update(self._declaration(kind))
        elif start.value == "print":
            kind = StatementKind.PRINT
            fields["expr"] = self._printable()
        elif start.value == "decompose":
            kind = StatementKind.DECOMPOSE
            fields["expr"] = self._ideal()
        else:
            which = self._peek()
            if not (self._accept("axioms") or self._accept("correspondence")):
                raise self._error(f"unexpected {self._describe(which)}", {"axioms", "correspondence"})
            kind = StatementKind(f"check {which.value}")
            self._expect("(")
            fields["expr"] = self._closure()
            fields["params"] = self._parameters(kind.value)
            self._expect(")")
        end = self._expect(";")
        source = " ".join(self.text[start.offset : end.offset].split())
        return Statement(
            kind=kind,
            source=source,
            line=start.line,
            column=start.column,
            ring=self.current_ring,
            **fields,
        )

    def _declare(self, token: Token, kind: str) -> str:
        if token.value in self.scope:
            raise self._error(f"{token.value!r} is already declared", token=token)
        if token.value in STATEMENT_KEYWORDS or token.value in BUILTIN_CLOSURES:
            raise self._error(f"{token.value!r} is reserved", {"name"}, token=token)
        self.scope[token.value] = kind
        return token.value

    def _ring_declaration(self) -> Tuple[str, RingSpec]:
        name_token = self._expect_name("ring name")
        self._expect("=")
        field_token = self._peek()
        modulus = None
        if self._accept("QQ"):
            field = "QQ"
        elif self._accept("GF"):
            field = "GF"
            self._expect("(")
            if self._peek().kind != "int":
                raise self._error("modulus must be an integer", {"integer"})
            modulus = int(self._advance().value)
            self._expect(")")
        else:
            raise self._error(f"unexpected {self._describe(field_token)}", {"QQ", "GF"})
        self._expect("[")
        variables: List[str] = []
        while True:
            token = self._expect_name("variable")
            if token.value in variables:
                raise self._error(f"duplicate variable {token.value!r}", token=token)
            variables.append(token.value)
            if not self._accept(","):
                break
        self._expect("]")
        name = self._declare(name_token, "ring")
        self.ring_variables[name] = PolynomialRing(QQ, tuple(variables))
        self.current_ring = name
        relations: List[Expr] = []
        if self._accept("/"):
            relations = self._ideal_literal().args
        return name, RingSpec(field=field, modulus=modulus, variables=variables, relations=relations)

    def _declaration(self, kind: StatementKind) -> Dict[str, Any]:
        name_token = self._expect_name(f"{kind.value} name")
        self._require_ring(name_token)
        self._expect("=")
        fields: Dict[str, Any] = {}
        if kind == StatementKind.IDEAL:
            fields["expr"] = self._ideal()
        elif kind == StatementKind.FRAC:
            fields["expr"] = self._fractional()
        elif kind == StatementKind.CLOSURE:
            fields["expr"] = self._closure()
        else:
            fields["expr"] = self._witnesses()
            if self._accept("closed"):
                fields["params"] = {"closed": Expr(kind=ExprKind.INT, value="1")}
        fields["name"] = self._declare(name_token, kind.value)
        return fields

    def _require_ring(self, token: Token) -> str:
        if self.current_ring is None:
            raise UndefinedNameError("no ring has been declared", token.line, token.column)
        return self.current_ring

    # Expressions

    def _printable(self) -> Expr:
        token = self._peek()
        if token.kind == "name" and self._is_op("(", 1):
            if token.value in VALUE_FUNCTIONS:
                return self._call(token.value, VALUE_FUNCTIONS[token.value])
            if token.value in IDEAL_FUNCTIONS:
                return self._ideal()
        if token.kind == "name" and token.value in self.scope:
            self._advance()
            return self._name(token)
        if token.kind == "name":
            raise UndefinedNameError(f"undefined name {token.value!r}", token.line, token.column)
        if self._is_op("("):
            return self._ideal_literal()
        raise self._error(
            f"unexpected {self._describe(token)}",
            ["(", "name"] + sorted(IDEAL_FUNCTIONS) + sorted(VALUE_FUNCTIONS),
        )

    def _name(self, token: Token) -> Expr:
        return Expr(kind=ExprKind.NAME, value=token.value, line=token.line, column=token.column)

    def _reference(self, kind: str) -> Optional[Expr]:
        """A declared name of ``kind``, or None when the next token is not a name."""
        token = self._peek()
        if token.kind != "name":
            return None
        declared = self.scope.get(token.value)
        if declared is None:
            return None
        if declared != kind:
            article = "an" if kind[0] in "aeiou" else "a"
            raise ArityError(
                f"{token.value!r} is a {declared}, not {article} {kind}", token.line, token.column
            )
        self._advance()
        return self._name(token)

    def _ideal(self) -> Expr:
        token = self._peek()
        if token.kind == "name" and token.value in IDEAL_FUNCTIONS and self._is_op("(", 1):
            return self._call(token.value, IDEAL_FUNCTIONS[token.value])
        reference = self._reference("ideal")
        if reference is not None:
            return reference
        if token.kind == "name":
            raise UndefinedNameError(f"undefined ideal {token.value!r}", token.line, token.column)
        if self._is_op("("):
            return self._ideal_literal()
        raise self._error(f"unexpected {self._describe(token)}", ["(", "ideal"] + sorted(IDEAL_FUNCTIONS))

    def _ideal_literal(self) -> Expr:
        start = self._expect("(")
        ring = self._require_ring(start)
        gens = []
        if not self._is_op(")"):
            while True:
                gens.append(self._poly(ring))
                if not self._accept(","):
                    break
        self._expect(")")
        return Expr(kind=ExprKind.IDEAL, args=gens, line=start.line, column=start.column)

    def _span(self, stops: Sequence[str]) -> List[Token]:
        """Tokens up to a top-level stop symbol."""
        span: List[Token] = []
        depth = 0
        while True:
            token = self._peek()
            if token.kind == "end":
                break
            if token.kind == "op":
                if depth == 0 and token.value in stops:
                    break
                if token.value == "(":
                    depth += 1
                elif token.value == ")":
                    depth -= 1
            span.append(self._advance())
        if not span:
            raise self._error(f"unexpected {self._describe(self._peek())}", {"polynomial"})
        return span

    def _poly_from(self, span: List[Token], ring: str) -> Expr:
        first, last = span[0], span[-1]
        text = self.text[first.offset : last.end]
        PolynomialParser(self.ring_variables[ring], first.line, first.column - 1).parse(text)
        return Expr(kind=ExprKind.POLY, value=text, line=first.line, column=first.column)

    def _poly(self, ring: Optional[str] = None) -> Expr:
        ring = ring or self._require_ring(self._peek())
        return self._poly_from(self._span((",", ")", "]", ";")), ring)

    def _element(self) -> Expr:
        """A polynomial, or a fraction r/z whose denominator is not a constant."""
        ring = self._require_ring(self._peek())
        span = self._span((",", ")", "]", ";"))
        depth = 0
        for i, token in enumerate(span):
            if token.kind == "op" and token.value in "()":
                depth += 1 if token.value == "(" else -1
            elif depth == 0 and token.kind == "op" and token.value == "/" and i + 1 < len(span):
                following = span[i + 1]
                if following.kind == "name" or (following.kind == "op" and following.value == "("):
                    numerator = self._poly_from(span[:i], ring) if i else None
                    if numerator is None:
                        raise self._error("missing numerator", {"polynomial"}, token=token)
                    denominator = self._poly_from(span[i + 1 :], ring)
                    return Expr(
                        kind=ExprKind.FRACTION,
                        args=[numerator, denominator],
                        line=span[0].line,
                        column=span[0].column,
                    )
        return self._poly_from(span, ring)

    def _fractional(self) -> Expr:
        start = self._peek()
        numerator = self._ideal()
        args = [numerator]
        if self._accept("/"):
            args.append(self._poly())
        return Expr(kind=ExprKind.CALL, value="frac", args=args, line=start.line, column=start.column)

    def _witnesses(self) -> Expr:
        reference = self._reference("witnesses")
        if reference is not None:
            return reference
        token = self._peek()
        if token.kind == "name":
            raise UndefinedNameError(f"undefined witness set {token.value!r}", token.line, token.column)
        start = self._expect("[")
        ring = self._require_ring(start)
        elements = []
        if not self._is_op("]"):
            while True:
                elements.append(self._poly(ring))
                if not self._accept(","):
                    break
        self._expect("]")
        return Expr(kind=ExprKind.LIST, args=elements, line=start.line, column=start.column)

    def _closure(self) -> Expr:
        token = self._peek()
        reference = self._reference("closure")
        if reference is not None:
            return reference
        if token.kind != "name":
            raise self._error(f"unexpected {self._describe(token)}", BUILTIN_CLOSURES + CLOSURE_FUNCTIONS)
        self._require_ring(token)
        if token.value in BUILTIN_CLOSURES:
            self._advance()
            params: Dict[str, Expr] = {}
            if self._is_op("("):
                self._advance()
                params = self._named_parameters(token.value)
                self._expect(")")
            return Expr(kind=ExprKind.CALL, value=token.value, params=params, line=token.line, column=token.column)
        if token.value in CLOSURE_FUNCTIONS and self._is_op("(", 1):
            self._advance()
            self._expect("(")
            inner = self._closure()
            params = self._parameters(token.value)
            self._expect(")")
            return Expr(
                kind=ExprKind.CALL,
                value=token.value,
                args=[inner],
                params=params,
                line=token.line,
                column=token.column,
            )
        raise UndefinedNameError(f"undefined closure {token.value!r}", token.line, token.column)

    def _operator(self) -> Expr:
        token = self._peek()
        if token.kind == "name" and token.value == "b" and "b" not in self.scope:
            self._advance()
            return self._name(token)
        return self._closure()

    def _target(self) -> Expr:
        reference = None
        token = self._peek()
        if token.kind == "name" and self.scope.get(token.value) == "frac":
            reference = self._reference("frac")
        return reference if reference is not None else self._ideal()

    def _ideal_or_poly(self) -> Expr:
        token = self._peek()
        if token.kind == "name" and (self.scope.get(token.value) == "ideal" or (
            token.value in IDEAL_FUNCTIONS and self._is_op("(", 1)
        )):
            return self._ideal()
        if self._is_op("("):
            return self._ideal_literal()
        return self._poly()

    def _argument(self, kind: str) -> Expr:
        if kind == "ideal":
            return self._ideal()
        if kind == "poly":
            return self._poly()
        if kind == "element":
            return self._element()
        if kind == "ideal_or_poly":
            return self._ideal_or_poly()
        if kind == "target":
            return self._target()
        if kind == "closure":
            return self._closure()
        if kind == "operator":
            return self._operator()
        if kind == "witnesses":
            return self._witnesses()
        token = self._peek()
        if token.kind != "int":
            raise self._error(f"unexpected {self._describe(token)}", {"integer"})
        self._advance()
        return Expr(kind=ExprKind.INT, value=token.value, line=token.line, column=token.column)

    def _call(self, name: str, signature: Tuple[str, ...]) -> Expr:
        start = self._advance()
        self._expect("(")
        args = []
        for i, kind in enumerate(signature):
            if i and not self._accept(","):
                raise ArityError(
                    f"{name} takes {len(signature)} argument(s), got {i}",
                    self._peek().line,
                    self._peek().column,
                )
            args.append(self._argument(kind))
        if self._is_op(","):
            raise ArityError(
                f"{name} takes {len(signature)} argument(s)", self._peek().line, self._peek().column
            )
        self._expect(")")
        expr = Expr(kind=ExprKind.CALL, value=name, args=args, line=start.line, column=start.column)
        if name == "member" and args[1].kind == ExprKind.FRACTION and args[2].kind != ExprKind.NAME:
            raise ArityError("a fraction can only be tested against a fractional ideal", args[1].line, args[1].column)
        if name == "standardized_radical" and self._accept("with"):
            self._expect("decomposition")
            expr.params["decomposition"] = self._decomposition()
        return expr

    def _decomposition(self) -> Expr:
        start = self._expect("[")
        pairs = []
        while True:
            pair_start = self._expect("(")
            primary = self._ideal()
            self._expect(",")
            prime = self._ideal()
            self._expect(")")
            pairs.append(
                Expr(kind=ExprKind.LIST, args=[primary, prime], line=pair_start.line, column=pair_start.column)
            )
            if not self._accept(","):
                break
        self._expect("]")
        return Expr(kind=ExprKind.LIST, args=pairs, line=start.line, column=start.column)

    def _parameters(self, owner: str) -> Dict[str, Expr]:
        """Optional ``; name=value, ...`` suffix of a call."""
        if not self._accept(";"):
            return {}
        return self._named_parameters(owner)

    def _named_parameters(self, owner: str) -> Dict[str, Expr]:
        allowed = PARAMETERS.get(owner, {})
        params: Dict[str, Expr] = {}
        while True:
            token = self._peek()
            if token.kind != "name" or token.value not in allowed:
                if token.kind == "name":
                    raise ArityError(
                        f"{owner} has no parameter {token.value!r}"
                        + (f" (parameters: {', '.join(sorted(allowed))})" if allowed else ""),
                        token.line,
                        token.column,
                    )
                raise self._error(f"unexpected {self._describe(token)}", sorted(allowed))
            self._advance()
            if token.value in params:
                raise ArityError(f"parameter {token.value!r} given twice", token.line, token.column)
            self._expect("=")
            params[token.value] = self._argument(allowed[token.value])
            if not self._accept(","):
                return params


def parse_session(text: str) -> Session:
    """Parse session source text."""
    return SessionParser().parse(text)
