"""Tests for polynomial arithmetic, orders and fields."""

import random
from fractions import Fraction

import pytest

from src.algebra.fields import QQ, prime_field
from src.algebra.poly import GREVLEX, LEX, MonomialOrder, PolynomialRing, monomial_mul
from src.errors import IncompatibleRingError, RingDeclarationError, ZeroPolynomialError


class TestMonomialOrder:
    """Test monomial orders."""

    def test_grevlex_ranks_variables(self):
        """Test that x > y > z in grevlex."""
        x, y, z = (1, 0, 0), (0, 1, 0), (0, 0, 1)
        assert GREVLEX.compare(x, y) == 1
        assert GREVLEX.compare(y, z) == 1

    def test_grevlex_breaks_degree_ties_reverse(self):
        """Test that y^2 > x*z in grevlex but not in lex."""
        assert GREVLEX.compare((0, 2, 0), (1, 0, 1)) == 1
        assert LEX.compare((0, 2, 0), (1, 0, 1)) == -1

    def test_block_order_eliminates_leading_block(self):
        """Test that any monomial with t beats every t-free monomial."""
        order = MonomialOrder.elimination(1)
        assert order.compare((1, 0, 0), (0, 5, 5)) == 1

    def test_unknown_order_rejected(self):
        """Test that unknown order tags raise."""
        with pytest.raises(ValueError):
            MonomialOrder("weird")


class TestPolynomial:
    """Test Polynomial arithmetic and printing."""

    def test_canonical_printing(self, poly_ring):
        """Test that terms print descending in the order."""
        f = poly_ring.parse("x^2*y - 3/2*z")
        assert str(f) == "x^2*y - 3/2*z"
        assert str(poly_ring.parse("x + y*z")) == "y*z + x"

    def test_zero_prints_as_zero(self, poly_ring):
        """Test the printed form of zero."""
        assert str(poly_ring.parse("x - x")) == "0"

    def test_arithmetic(self, poly_ring):
        """Test ring operations."""
        x, y, _ = poly_ring.gens()
        assert (x + y) ** 2 == x**2 + 2 * x * y + y**2
        assert (x - y) * (x + y) == poly_ring.parse("x^2 - y^2")
        assert -x + x == 0
        assert 1 - x == poly_ring.parse("1 - x")

    def test_degree_and_leading_term(self, poly_ring):
        """Test total degree and leading data."""
        f = poly_ring.parse("2*x*y + z^3 + 1")
        assert f.degree() == 3
        assert f.leading_monomial() == (0, 0, 3)
        assert f.leading_coefficient() == 1
        assert f.leading_monomial(LEX) == (1, 1, 0)

    def test_zero_has_no_leading_term(self, poly_ring):
        """Test ZeroPolynomialError."""
        with pytest.raises(ZeroPolynomialError):
            poly_ring.zero().leading_term()

    def test_monic(self, poly_ring):
        """Test normalizing the leading coefficient."""
        f = poly_ring.parse("2*x + 4")
        assert f.monic() == poly_ring.parse("x + 2")

    def test_divide_exact(self, poly_ring):
        """Test exact division."""
        f = poly_ring.parse("x^2 - y^2")
        assert f.divide_exact(poly_ring.parse("x - y")) == poly_ring.parse("x + y")

    def test_divide_exact_with_remainder(self, poly_ring):
        """Test that a nonzero remainder raises."""
        with pytest.raises(ValueError):
            poly_ring.parse("x").divide_exact(poly_ring.parse("y"))

    def test_divide_returns_quotient_and_remainder(self, poly_ring):
        """Test single-divisor division."""
        f = poly_ring.parse("x^2 + y")
        quotient, remainder = f.divide(poly_ring.parse("x"))
        assert quotient == poly_ring.parse("x")
        assert remainder == poly_ring.parse("y")

    def test_negative_power_rejected(self, poly_ring):
        """Test that negative exponents raise."""
        with pytest.raises(ValueError):
            poly_ring.parse("x") ** -1

    def test_embed_and_restrict(self, poly_ring):
        """Test moving polynomials into a ring with a new leading variable."""
        f = poly_ring.parse("x*y + z")
        extended = poly_ring.extend(("t",), GREVLEX)
        embedded = f.embed(extended, 1)
        assert embedded.ring.variables == ("t", "x", "y", "z")
        assert embedded.restrict(poly_ring, 1) == f

    def test_restrict_rejects_eliminated_variables(self, poly_ring):
        """Test that polynomials using the dropped variable cannot restrict."""
        extended = poly_ring.extend(("t",), GREVLEX)
        with pytest.raises(IncompatibleRingError):
            extended.gen(0).restrict(poly_ring, 1)

    def test_incompatible_fields(self, poly_ring):
        """Test that mixing QQ and GF(p) polynomials raises."""
        other = PolynomialRing(prime_field(101), ("x", "y", "z"))
        with pytest.raises(IncompatibleRingError):
            poly_ring.parse("x") + other.parse("x")

    def test_incompatible_variable_names(self, poly_ring):
        """Test that rings with other variable names do not mix."""
        other = PolynomialRing(QQ, ("a", "b", "c"))
        assert not poly_ring.compatible_with(other)
        assert poly_ring.compatible_with(poly_ring.with_order(LEX))
        with pytest.raises(IncompatibleRingError):
            poly_ring.parse("x") + other.parse("a")


class TestPrimeField:
    """Test arithmetic over GF(p)."""

    def test_rational_coefficients_reduce(self):
        """Test that 1/2 maps to its inverse mod p."""
        ring = PolynomialRing(prime_field(101), ("x",))
        f = ring.parse("1/2*x")
        assert f.coefficient((1,)) == 51
        assert str(f) == "51*x"

    def test_characteristic_wraps(self):
        """Test that p*x is zero."""
        ring = PolynomialRing(prime_field(7), ("x",))
        assert ring.parse("7*x").is_zero()

    def test_frobenius_power(self):
        """Test that (x + y)^3 = x^3 + y^3 in characteristic 3."""
        ring = PolynomialRing(prime_field(3), ("x", "y"))
        f = ring.parse("x + y")
        assert f.frobenius_power(3) == f**3
        assert f.frobenius_power(9) == ring.parse("x^9 + y^9")

    def test_frobenius_power_needs_power_of_p(self):
        """Test that q must be a power of the characteristic."""
        ring = PolynomialRing(prime_field(3), ("x",))
        with pytest.raises(ValueError):
            ring.parse("x").frobenius_power(2)

    def test_frobenius_power_over_rationals(self, poly_ring):
        """Test that QQ has no Frobenius."""
        with pytest.raises(ValueError):
            poly_ring.parse("x").frobenius_power(2)

    def test_invalid_modulus(self):
        """Test that composite and oversized moduli are rejected."""
        with pytest.raises(RingDeclarationError):
            prime_field(100)
        with pytest.raises(RingDeclarationError):
            prime_field(2**31 + 11)

    def test_largest_modulus(self):
        """Test the largest admissible prime."""
        assert prime_field(2**31 - 1).characteristic == 2**31 - 1

    def test_rationals(self):
        """Test QQ conversion."""
        assert QQ.convert(3) == Fraction(3)
        assert QQ.inv(Fraction(2, 3)) == Fraction(3, 2)


def _random_polynomial(ring, rng):
    terms = {}
    for _ in range(rng.randint(0, 4)):
        m = tuple(rng.randint(0, 3) for _ in range(ring.nvars))
        terms[m] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return ring.from_terms(terms)


class TestRingLaws:
    """Test the ring axioms on seeded random polynomials."""

    def test_random_triples(self, poly_ring):
        """Test associativity, commutativity and distributivity on 1000 triples."""
        rng = random.Random(1000)
        for _ in range(1000):
            f, g, h = (_random_polynomial(poly_ring, rng) for _ in range(3))
            assert (f + g) + h == f + (g + h)
            assert f * g == g * f
            assert f * (g + h) == f * g + f * h
            assert (f * g) * h == f * (g * h)

    def test_canonical_form_is_idempotent(self, poly_ring):
        """Test that rebuilding a polynomial from its terms changes nothing."""
        rng = random.Random(3)
        for _ in range(100):
            f = _random_polynomial(poly_ring, rng)
            again = poly_ring.from_terms(f.as_dict())
            assert again == f
            assert again.terms == f.terms
            assert str(again) == str(f)

    @pytest.mark.parametrize("order", [GREVLEX, LEX])
    def test_order_respects_multiplication(self, order):
        """Test that m1 < m2 implies m1*m < m2*m."""
        rng = random.Random(5)
        for _ in range(500):
            m1, m2, m = (tuple(rng.randint(0, 4) for _ in range(3)) for _ in range(3))
            shifted = order.compare(monomial_mul(m1, m), monomial_mul(m2, m))
            assert shifted == order.compare(m1, m2)
