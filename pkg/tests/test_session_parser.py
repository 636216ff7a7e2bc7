"""Tests for the session parser."""

import pytest

from src.errors import ArityError, ParseError, UndefinedNameError
from src.models.session import ExprKind, StatementKind
from src.parsers.session_parser import SessionParser, parse_session


class TestSessionParser:
    """Test parsing of well-formed sessions."""

    @pytest.fixture
    def parser(self):
        return SessionParser()

    def test_parse_worked_session(self, parser, worked_session):
        """Test the three statements of the worked example."""
        session = parser.parse(worked_session)

        assert len(session) == 3
        assert [s.kind for s in session.statements] == [
            StatementKind.RING,
            StatementKind.IDEAL,
            StatementKind.PRINT,
        ]
        ring = session.statements[0]
        assert ring.name == "R"
        assert ring.source == "ring R = QQ[x,y,z]/(x^2, x*y)"
        assert ring.ring_spec.field == "QQ"
        assert ring.ring_spec.variables == ["x", "y", "z"]
        assert [r.value for r in ring.ring_spec.relations] == ["x^2", "x*y"]
        assert session.statements[2].ring == "R"
        assert session.statements[2].line == 3

    def test_statistics(self, parser, worked_session):
        """Test statement counts."""
        parser.parse(worked_session)
        stats = parser.get_statistics()
        assert stats["total_statements"] == 3
        assert stats["ring"] == 1
        assert stats["print"] == 1

    def test_declarations_and_commands(self, worked_session):
        """Test the declaration/command split."""
        session = parse_session(worked_session)
        assert [s.name for s in session.declarations] == ["R", "I"]
        assert [s.kind for s in session.commands] == [StatementKind.PRINT]

    def test_prime_field_and_comments(self, parser):
        """Test GF(p) rings and comment lines."""
        session = parser.parse("# a comment\nring F = GF(101)[x, y]; # trailing\n")
        spec = session.statements[0].ring_spec
        assert spec.field == "GF"
        assert spec.modulus == 101
        assert session.statements[0].line == 2

    def test_closure_expressions(self, parser):
        """Test standardize with witnesses and frobenius parameters."""
        session = parser.parse(
            "ring F = GF(3)[x,y];\n"
            "closure c = standardize(radical; witnesses=[x, y + 1]);\n"
            "closure d = frobenius(e_max=3);\n"
        )
        c = session.statements[1].expr
        assert c.kind == ExprKind.CALL
        assert c.value == "standardize"
        assert c.args[0].value == "radical"
        assert [w.value for w in c.params["witnesses"].args] == ["x", "y + 1"]
        d = session.statements[2].expr
        assert d.params["e_max"].value == "3"

    def test_check_parameters(self, parser):
        """Test check statements and their parameters."""
        session = parser.parse(
            "ring R = QQ[x,y];\n"
            "check axioms(radical; samples=20);\n"
            "check correspondence(identity; samples=3, larger=integral);\n"
        )
        axioms, correspondence = session.commands
        assert axioms.kind == StatementKind.CHECK_AXIOMS
        assert axioms.params["samples"].value == "20"
        assert correspondence.kind == StatementKind.CHECK_CORRESPONDENCE
        assert correspondence.params["larger"].value == "integral"

    def test_closed_witnesses(self, parser):
        """Test a witness set closed under products."""
        session = parser.parse("ring R = QQ[x,y];\nwitnesses W = [x, y] closed;\n")
        assert "closed" in session.statements[1].params

    def test_fractions(self, parser):
        """Test fractional ideals and fraction elements."""
        session = parser.parse(
            "ring S = QQ[x,y];\n"
            "frac A = (x)/y;\n"
            "print member(identity, x/y, A);\n"
            "print member(identity, x/2, (x));\n"
        )
        frac = session.statements[1].expr
        assert frac.value == "frac"
        assert frac.args[1].value == "y"
        element = session.statements[2].expr.args[1]
        assert element.kind == ExprKind.FRACTION
        assert [a.value for a in element.args] == ["x", "y"]
        assert session.statements[3].expr.args[1].kind == ExprKind.POLY

    def test_supplied_decomposition(self, parser):
        """Test the decomposition suffix of standardized_radical."""
        session = parser.parse(
            "ring R = QQ[x,y];\n"
            "print standardized_radical((x^2 - y^2)) with decomposition [((x - y), (x - y)), ((x + y), (x + y))];\n"
        )
        expr = session.statements[1].expr
        pairs = expr.params["decomposition"].args
        assert len(pairs) == 2
        assert [g.value for g in pairs[1].args[0].args] == ["x + y"]

    def test_ideal_operations(self, parser):
        """Test nested ideal calls."""
        session = parser.parse(
            "ring R = QQ[x,y];\nideal I = (x, y);\nprint intersect(power(I, 2), colon(I, x));\n"
        )
        expr = session.statements[2].expr
        assert expr.value == "intersect"
        assert [a.value for a in expr.args] == ["power", "colon"]
        assert expr.args[0].args[1].kind == ExprKind.INT
        assert expr.args[1].args[1].kind == ExprKind.POLY


class TestSessionErrors:
    """Test positions and kinds of session errors."""

    def test_ideal_without_ring(self):
        """Test that a declaration before any ring is an undefined name."""
        with pytest.raises(UndefinedNameError) as excinfo:
            parse_session("ideal I = (x);")
        assert (excinfo.value.line, excinfo.value.column) == (1, 7)

    def test_missing_polynomial(self):
        """Test the position and expected set of an empty generator."""
        with pytest.raises(ParseError) as excinfo:
            parse_session("ring R = QQ[x,y];\nideal I = (x, );")
        assert (excinfo.value.line, excinfo.value.column) == (2, 15)
        assert excinfo.value.expected == ["polynomial"]

    def test_unknown_variable(self):
        """Test that polynomial errors point into the session text."""
        with pytest.raises(UndefinedNameError) as excinfo:
            parse_session("ring R = QQ[x]; ideal I = (y);")
        assert (excinfo.value.line, excinfo.value.column) == (1, 28)

    def test_wrong_arity(self):
        """Test a binary function called with one argument."""
        with pytest.raises(ArityError):
            parse_session("ring R = QQ[x];\nideal I = (x);\nprint sum(I);")

    def test_too_many_arguments(self):
        """Test a unary function called with two arguments."""
        with pytest.raises(ArityError):
            parse_session("ring R = QQ[x];\nideal I = (x);\nprint radical(I, I);")

    def test_duplicate_name(self):
        """Test that names cannot be redeclared."""
        with pytest.raises(ParseError):
            parse_session("ring R = QQ[x];\nideal R = (x);")

    def test_reserved_name(self):
        """Test that built-in closure names cannot be declared."""
        with pytest.raises(ParseError):
            parse_session("ring radical = QQ[x];")

    def test_duplicate_variable(self):
        """Test that ring variables are distinct."""
        with pytest.raises(ParseError):
            parse_session("ring R = QQ[x, x];")

    def test_kind_mismatch(self):
        """Test that a closure name is not accepted as an ideal."""
        with pytest.raises(ArityError):
            parse_session("ring R = QQ[x];\nclosure c = radical;\nideal J = c;")

    def test_undefined_closure(self):
        """Test an unknown closure name."""
        with pytest.raises(UndefinedNameError):
            parse_session("ring R = QQ[x];\nprint closure(foo, (x));")

    def test_unknown_parameter(self):
        """Test that parameters are checked by name."""
        with pytest.raises(ArityError):
            parse_session("ring R = QQ[x];\ncheck axioms(radical; bogus=1);")

    def test_unknown_statement(self):
        """Test that a bad keyword lists the statement keywords."""
        with pytest.raises(ParseError) as excinfo:
            parse_session("foo;")
        assert "ring" in excinfo.value.expected

    def test_missing_semicolon(self):
        """Test a statement cut off at end of input."""
        with pytest.raises(ParseError) as excinfo:
            parse_session("ring R = QQ[x]")
        assert excinfo.value.expected == [";"]

    def test_fraction_against_ideal(self):
        """Test that fractions need a fractional ideal target."""
        with pytest.raises(ArityError):
            parse_session("ring S = QQ[x,y];\nprint member(identity, x/y, (x));")
