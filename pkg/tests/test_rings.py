"""Tests for presented rings, elements and ideal operations."""

import random
from itertools import product

import pytest

from src.algebra.fields import prime_field
from src.algebra.rings import IdealRelation, PresentedRing, is_regular, power_member, radical_member
from src.closures.axioms import random_monomial_ideal
from src.errors import IncompatibleRingError, RingDeclarationError, UnsupportedComputationError


class TestPresentedRing:
    """Test ring construction and structure."""

    def test_polynomial_ring(self, qq_xy):
        """Test a ring without relations."""
        assert qq_xy.is_polynomial_ring
        assert qq_xy.is_domain
        assert str(qq_xy) == "QQ[x,y]"

    def test_quotient_display(self, example_ring):
        """Test that relations print from their reduced basis."""
        assert not example_ring.is_polynomial_ring
        assert str(example_ring) == "QQ[x,y,z]/(x*y, x^2)"

    def test_domain_by_variables(self):
        """Test that a quotient by variables is recognized as a domain."""
        assert PresentedRing.quotient(["x", "y"], ["x"]).is_domain

    def test_non_domain(self, example_ring):
        """Test that nilpotents rule out a domain."""
        assert not example_ring.is_domain

    def test_unit_relations_rejected(self):
        """Test that relations generating (1) are rejected."""
        with pytest.raises(RingDeclarationError):
            PresentedRing.quotient(["x"], ["x", "x - 1"])

    def test_duplicate_variables_rejected(self):
        """Test that repeated variable names are rejected."""
        with pytest.raises(RingDeclarationError):
            PresentedRing.polynomial_ring(["x", "x"])

    def test_equality_by_relation_basis(self):
        """Test that rings compare by their relation ideal."""
        first = PresentedRing.quotient(["x", "y"], ["x^2", "x*y"])
        second = PresentedRing.quotient(["x", "y"], ["x*y + x^2", "x^2"])
        assert first == second
        assert hash(first) == hash(second)

    def test_covering_ring(self, example_ring):
        """Test the covering polynomial ring."""
        covering = example_ring.covering_ring()
        assert covering.is_polynomial_ring
        assert covering.variables == example_ring.variables


class TestRingElement:
    """Test arithmetic modulo the relations."""

    def test_reduction(self, example_ring):
        """Test that elements are kept as normal forms."""
        assert example_ring.element("x^2 + z").poly == example_ring.base.parse("z")
        assert example_ring.element("x") * "y" == 0

    def test_arithmetic(self, example_ring):
        """Test sums, powers and comparison with text."""
        z = example_ring.element("z")
        assert (z + 1) ** 2 == "z^2 + 2*z + 1"
        assert str(example_ring.element("x") * "x + z") == "x*z"

    def test_mixed_rings_rejected(self, example_ring, qq_xyz):
        """Test that elements of different rings do not mix."""
        with pytest.raises(IncompatibleRingError):
            example_ring.element("x") + qq_xyz.element("x")


class TestIdeal:
    """Test ideal operations."""

    def test_canonical_generators(self, example_ring):
        """Test that relations are hidden from the generators."""
        ideal = example_ring.ideal(["y*z", "x", "x^2"])
        assert ideal.generator_strings() == ["x", "y*z"]
        assert str(ideal) == "(x, y*z)"

    def test_zero_and_unit(self, example_ring):
        """Test the zero and unit ideals."""
        assert example_ring.zero_ideal().is_zero()
        assert str(example_ring.ideal(["x^2"])) == "(0)"
        assert example_ring.ideal(["z + 1", "z"]).is_unit()
        assert example_ring.unit_ideal().generator_strings() == ["1"]

    def test_membership(self, qq_xy):
        """Test ideal membership."""
        ideal = qq_xy.ideal(["x^2 - y", "x^3"])
        assert ideal.contains("x*y")
        assert "y^2" in ideal
        assert not ideal.contains("y")

    def test_compare(self, qq_xy):
        """Test inclusion relations."""
        small = qq_xy.ideal(["x"])
        large = qq_xy.ideal(["x", "y"])
        other = qq_xy.ideal(["y"])
        assert small.compare(large) == IdealRelation.SUBSET
        assert large.compare(small) == IdealRelation.SUPERSET
        assert small.compare(other) == IdealRelation.INCOMPARABLE
        assert small.compare(qq_xy.ideal(["2*x"])) == IdealRelation.EQUAL

    def test_sum_and_product(self, qq_xy):
        """Test sums and products."""
        i = qq_xy.ideal(["x"])
        j = qq_xy.ideal(["y"])
        assert (i + j).generator_strings() == ["x", "y"]
        assert (i * j).generator_strings() == ["x*y"]
        assert (i + j).power(2).generator_strings() == ["x^2", "x*y", "y^2"]
        assert i.power(0).is_unit()

    def test_monomial_intersection(self, qq_xy):
        """Test that the lcm fast path agrees with elimination."""
        i = qq_xy.ideal(["x^2", "y"])
        j = qq_xy.ideal(["x", "y^3"])
        meet = i.intersect(j)
        assert meet.generator_strings() == ["x^2", "x*y", "y^3"]
        assert meet == i.intersect_by_elimination(j)

    def test_intersection_by_elimination(self, qq_xy):
        """Test a non-monomial intersection."""
        meet = qq_xy.ideal(["x + y"]).intersect(qq_xy.ideal(["x - y"]))
        assert meet.generator_strings() == ["x^2 - y^2"]

    def test_intersection_with_unit(self, qq_xy):
        """Test that the unit ideal is neutral."""
        i = qq_xy.ideal(["x*y"])
        assert i.intersect(qq_xy.unit_ideal()) == i

    def test_monomial_colon(self, qq_xy):
        """Test (x^2, x*y) : x = (x, y)."""
        assert qq_xy.ideal(["x^2", "x*y"]).colon("x").generator_strings() == ["x", "y"]

    def test_polynomial_colon(self, qq_xy):
        """Test (x^2 + x*y) : (x + y) = (x)."""
        assert qq_xy.ideal(["x^2 + x*y"]).colon("x + y").generator_strings() == ["x"]

    def test_colon_by_member(self, qq_xy):
        """Test that (I : f) = (1) when f is in I, including f = 0."""
        i = qq_xy.ideal(["x"])
        assert i.colon("x*y").is_unit()
        assert i.colon(0).is_unit()

    def test_annihilator_in_quotient(self, example_ring):
        """Test (0 : x) = (x, y) in QQ[x,y,z]/(x^2, x*y)."""
        assert example_ring.zero_ideal().colon("x").generator_strings() == ["x", "y"]

    def test_colon_ideal(self, qq_xy):
        """Test the colon by an ideal."""
        i = qq_xy.ideal(["x^2", "x*y"])
        assert i.colon_ideal(qq_xy.ideal(["x", "y"])).generator_strings() == ["x"]

    def test_scale(self, qq_xy):
        """Test w*I."""
        assert qq_xy.ideal(["x", "y"]).scale("y").generator_strings() == ["x*y", "y^2"]

    def test_frobenius_bracket(self):
        """Test the bracket power over GF(3)."""
        ring = PresentedRing.polynomial_ring(["x", "y"], field=prime_field(3))
        bracket = ring.ideal(["x + y"]).frobenius_bracket(3)
        assert bracket.generator_strings() == ["x^3 + y^3"]

    def test_monomial_radical(self, qq_xy):
        """Test radical generators of a monomial ideal."""
        assert qq_xy.ideal(["x^2*y", "y^3"]).radical().generator_strings() == ["y"]

    def test_radical_needs_monomial(self, qq_xy):
        """Test that non-monomial radicals only support membership."""
        with pytest.raises(UnsupportedComputationError):
            qq_xy.ideal(["x^2 - y^2"]).radical()


class TestRadicalAndRegularity:
    """Test radical membership, power membership and regularity."""

    def test_power_member(self, qq_xy):
        """Test that (x + y)^3 is the first power inside (x^2, y^2)."""
        ideal = qq_xy.ideal(["x^2", "y^2"])
        assert power_member("x + y", ideal, 5) == 3
        assert power_member("x + y", ideal, 2) is None

    def test_radical_member_rabinowitsch(self, qq_xy):
        """Test radical membership for a non-monomial element."""
        ideal = qq_xy.ideal(["x^2", "y^2"])
        assert radical_member("x + y", ideal)
        assert not radical_member("x + 1", ideal)

    def test_radical_member_monomial(self, qq_xyz):
        """Test the support criterion for monomials."""
        ideal = qq_xyz.ideal(["x^2*y", "z^3"])
        assert radical_member("x*y", ideal)
        assert radical_member("z", ideal)
        assert not radical_member("x", ideal)

    def test_regular_elements(self, example_ring):
        """Test zero-divisors of QQ[x,y,z]/(x^2, x*y)."""
        assert is_regular("z", example_ring)
        assert is_regular("y + z", example_ring)
        assert not is_regular("x", example_ring)
        assert not is_regular("y", example_ring)
        assert not is_regular(0, example_ring)

    def test_regular_needs_ring(self):
        """Test that bare polynomials need a ring."""
        with pytest.raises(ValueError):
            is_regular("x")

    def test_regular_in_domain(self, qq_xy):
        """Test that every nonzero element of a domain is regular."""
        assert is_regular(qq_xy.element("x^2 - y"))

    def test_relation_decomposition(self, example_ring):
        """Test the computed decomposition of (x^2, x*y)."""
        decomposition = example_ring.relation_decomposition()
        # x^2 lies in the relations, so only the lifted form shows it
        assert [c.primary.generator_strings() for c in decomposition.components] == [["x"], ["y"]]
        assert [c.primary.lifted_generator_strings() for c in decomposition.components] == [
            ["x"],
            ["y", "x^2"],
        ]
        assert [c.lifted for c in decomposition.report().components] == [["x"], ["y", "x^2"]]
        assert [p.generator_strings() for p in decomposition.primes()] == [["x"], ["x", "y"]]

    def test_relation_decomposition_needs_monomial(self):
        """Test that non-monomial relations need a supplied decomposition."""
        ring = PresentedRing.quotient(["x", "y"], ["x^2 - y^2"])
        with pytest.raises(UnsupportedComputationError):
            ring.relation_decomposition()

    def test_supplied_relation_decomposition(self):
        """Test attaching a verified decomposition of J."""
        ring = PresentedRing.quotient(["x", "y"], ["x^2 - y^2"])
        components = [
            (ring.ideal(["x - y"]), ring.ideal(["x - y"])),
            (ring.ideal(["x + y"]), ring.ideal(["x + y"])),
        ]
        decorated = ring.with_relation_decomposition(components)
        decomposition = decorated.relation_decomposition()
        assert len(decomposition.components) == 2
        assert decomposition.assumed_components() == [0, 1]


def _random_element(ring, rng, max_degree):
    """Sum of one or two random terms of degree <= max_degree."""
    f = ring.base.zero()
    for _ in range(rng.randint(1, 2)):
        exps = [0] * ring.nvars
        for _ in range(rng.randint(0, max_degree)):
            exps[rng.randrange(ring.nvars)] += 1
        f = f + ring.base.monomial(tuple(exps), rng.choice([-2, -1, 1, 3]))
    return f


def _random_ideal(ring, rng):
    return ring.ideal([_random_element(ring, rng, 3) for _ in range(rng.randint(1, 2))])


class TestIdealProperties:
    """Test ideal operations on seeded random inputs."""

    def test_colon_times_element(self, qq_xy, example_ring):
        """Test (I : f)*f in I and I in (I : f) on 100 samples."""
        rng = random.Random(100)
        for ring in (qq_xy, example_ring):
            for _ in range(50):
                ideal = _random_ideal(ring, rng)
                f = _random_element(ring, rng, 2)
                colon = ideal.colon(f)
                assert colon.scale(f).is_subset(ideal), (ideal, f)
                assert ideal.is_subset(colon)

    def test_monomial_intersection_by_membership(self, qq_xyz):
        """Test I ∩ J against monomial membership up to degree 6 on 50 pairs."""
        rng = random.Random(50)
        monomials = [m for m in product(range(7), repeat=3) if sum(m) <= 6]
        for index in range(50):
            first = random_monomial_ideal(qq_xyz, rng, 4, 5)
            second = random_monomial_ideal(qq_xyz, rng, 4, 5)
            meet = first.intersect(second)
            assert meet.is_monomial()
            for m in monomials:
                f = qq_xyz.base.monomial(m)
                assert meet.contains(f) == (first.contains(f) and second.contains(f)), (first, second, m)
            if index < 10:
                assert meet == first.intersect_by_elimination(second)

    def test_intersection_contains_product(self, qq_xy):
        """Test I*J in I ∩ J in I for random binomial ideals."""
        rng = random.Random(8)
        for _ in range(20):
            first, second = _random_ideal(qq_xy, rng), _random_ideal(qq_xy, rng)
            meet = first.intersect(second)
            assert first.product(second).is_subset(meet)
            assert meet.is_subset(first) and meet.is_subset(second)

    def test_radical_member_agrees_with_power_search(self, qq_xy, example_ring):
        """Test that a found power never contradicts the Rabinowitsch answer."""
        rng = random.Random(13)
        for ring in (qq_xy, example_ring):
            for _ in range(30):
                ideal = _random_ideal(ring, rng)
                f = _random_element(ring, rng, 2)
                power = power_member(f, ideal, 8)
                if power is not None:
                    assert radical_member(f, ideal), (f, ideal, power)
                if not radical_member(f, ideal):
                    assert power is None
        assert power_member("x", example_ring.zero_ideal(), 8) == 2
        assert radical_member("x", example_ring.zero_ideal())

    def test_generators_are_radical_members(self, qq_xy, example_ring):
        """Test I in rad(I) on generators."""
        rng = random.Random(21)
        for ring in (qq_xy, example_ring):
            for _ in range(20):
                ideal = _random_ideal(ring, rng)
                assert all(radical_member(g, ideal) for g in ideal.elements())

    def test_regularity_is_multiplicative(self, example_ring):
        """Test is_regular(u*v) = is_regular(u) and is_regular(v)."""
        pool = ["1", "x", "y", "z", "z + 1", "y + z", "x + z", "z^2", "y*z + 1", "x + y", "2*z - 1"]
        elements = [example_ring.element(text) for text in pool]
        rng = random.Random(4)
        for _ in range(40):
            u, v = rng.choice(elements), rng.choice(elements)
            assert is_regular(u * v) == (is_regular(u) and is_regular(v)), (u, v)

    def test_printed_generators_parse_back(self, qq_xy, example_ring):
        """Test that an ideal rebuilt from its printed generators is equal."""
        rng = random.Random(30)
        for ring in (qq_xy, example_ring):
            for _ in range(20):
                ideal = _random_ideal(ring, rng)
                assert ring.ideal(ideal.generator_strings()) == ideal
                assert ring.ideal(ideal.lifted_generator_strings()) == ideal
