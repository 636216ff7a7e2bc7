"""Tests for the standardized radical."""

import random
from itertools import combinations

import pytest

from src.algebra.fields import prime_field
from src.algebra.monomial import Provenance
from src.algebra.rings import PresentedRing, is_regular
from src.closures.axioms import random_monomial_ideal
from src.closures.closure import WitnessSet, radical_closure, standardize_witnessed
from src.closures.stdrad import (
    ComponentVerdict,
    classify_component,
    relation_primes,
    standardized_radical,
    standardized_radical_report,
    verify_decomposition,
)
from src.errors import UnsupportedComputationError, VerificationError
from src.models.reports import ExactnessKind


class TestWorkedExample:
    """Test I = (x, y*z) in QQ[x,y,z]/(x^2, x*y)."""

    @pytest.mark.parametrize("ring_fixture", ["example_ring", "gf_example_ring"])
    def test_result(self, request, ring_fixture):
        """Test that the standardized radical is (x, y) over QQ and GF(101)."""
        ring = request.getfixturevalue(ring_fixture)
        assert standardized_radical(ring.ideal(["x", "y*z"])).generator_strings() == ["x", "y"]

    def test_evidence(self, example_ring):
        """Test the decomposition and component classification."""
        result = standardized_radical_report(example_ring.ideal(["x", "y*z"]))
        assert [c.primary.generator_strings() for c in result.decomposition.components] == [
            ["x", "y"],
            ["x", "z"],
        ]
        first, second = result.classifications
        assert first.verdict == ComponentVerdict.ALL_ZERO_DIVISORS
        assert first.associated_prime.generator_strings() == ["x", "y"]
        assert second.verdict == ComponentVerdict.CONTAINS_REGULAR
        assert str(second.witness) == "z"
        assert result.exactness.kind == ExactnessKind.EXACT

    def test_report_model(self, example_ring):
        """Test the serializable report."""
        report = standardized_radical_report(example_ring.ideal(["x", "y*z"])).report()
        assert report.result == ["x", "y"]
        assert report.classifications[1].witness == "z"
        assert report.decomposition.provenance == "computed-monomial"

    def test_relation_primes(self, example_ring):
        """Test the associated primes of (x^2, x*y)."""
        assert [p.generator_strings() for p in relation_primes(example_ring)] == [["x"], ["x", "y"]]

    def test_agrees_with_witnessed_standardization(self, example_ring):
        """Test that standardizing radical over {z} reaches the same ideal."""
        ideal = example_ring.ideal(["x", "y*z"])
        c = standardize_witnessed(radical_closure(example_ring), WitnessSet.build(example_ring, ["z"]))
        assert c.apply(ideal) == standardized_radical(ideal)


class TestEdgeCases:
    """Test fixed points and degenerate inputs."""

    def test_zero_divisor_prime_is_fixed(self, example_ring):
        """Test that (x, y) is its own standardized radical."""
        ideal = example_ring.ideal(["x", "y"])
        assert standardized_radical(ideal) == ideal

    def test_domain_sends_proper_ideals_to_unit(self, qq_xy):
        """Test that in a domain every nonzero proper ideal contains a regular element."""
        assert standardized_radical(qq_xy.ideal(["x"])).is_unit()
        assert standardized_radical(qq_xy.ideal(["x^2", "x*y"])).is_unit()

    def test_unit_ideal(self, example_ring):
        """Test that (1) has no components."""
        result = standardized_radical_report(example_ring.unit_ideal())
        assert result.result.is_unit()
        assert result.classifications == ()

    def test_zero_ideal(self, example_ring):
        """Test that the zero ideal maps to the nilradical."""
        assert standardized_radical(example_ring.zero_ideal()).generator_strings() == ["x"]

    def test_non_monomial_needs_decomposition(self, qq_xy):
        """Test that non-monomial ideals need a supplied decomposition."""
        with pytest.raises(UnsupportedComputationError):
            standardized_radical(qq_xy.ideal(["x^2 - y^2"]))


class TestFiniteRing:
    """Test F_2[x]/(x^2) by enumerating every ideal."""

    @pytest.fixture
    def ring(self):
        return PresentedRing.quotient(["x"], ["x^2"], field=prime_field(2))

    def test_units_are_the_regular_elements(self, ring):
        """Test that the regular elements are exactly the units 1 and 1 + x."""
        assert [str(e) for e in ("1", "x", "x + 1") if is_regular(e, ring)] == ["1", "x + 1"]

    def test_standardized_radical_is_radical(self, ring):
        """Test that every regular element is a unit, so rad_s = rad."""
        elements = ["x", "1", "x + 1"]
        for size in range(0, len(elements) + 1):
            for gens in combinations(elements, size):
                ideal = ring.ideal(gens)
                assert standardized_radical(ideal) == ideal.radical()


class TestIntersection:
    """Test rad_s(I ∩ J) = rad_s(I) ∩ rad_s(J)."""

    def test_random_pairs(self, example_ring):
        """Test the intersection property on 20 seeded pairs of degree <= 5."""
        rng = random.Random(17)
        checked = 0
        while checked < 20:
            first = random_monomial_ideal(example_ring, rng, 3, 5)
            second = random_monomial_ideal(example_ring, rng, 3, 5)
            if first.is_zero() or second.is_zero():
                continue
            checked += 1
            left = standardized_radical(first.intersect(second))
            right = standardized_radical(first).intersect(standardized_radical(second))
            assert left == right


class TestStandardizedRadicalProperties:
    """Test rad(I) <= rad_s(I), stability under rad and the witnessed lower bound."""

    def test_random_ideals(self, example_ring):
        """Test the three invariants on 20 seeded monomial ideals."""
        rng = random.Random(23)
        witnesses = WitnessSet.build(example_ring, ["z"])
        witnessed = standardize_witnessed(radical_closure(example_ring), witnesses)
        checked = 0
        while checked < 20:
            ideal = random_monomial_ideal(example_ring, rng, 3, 4)
            if ideal.is_zero():
                continue
            checked += 1
            result = standardized_radical(ideal)
            assert ideal.radical().is_subset(result)
            assert result.radical() == result
            assert witnessed.apply(ideal).is_subset(result)


class TestSuppliedDecomposition:
    """Test verification of user-supplied decompositions."""

    def test_verified(self, example_ring):
        """Test that a correct decomposition is accepted."""
        r = example_ring
        ideal = r.ideal(["x", "y*z"])
        decomposition = verify_decomposition(
            ideal,
            [(r.ideal(["x", "y"]), r.ideal(["x", "y"])), (r.ideal(["x", "z"]), r.ideal(["x", "z"]))],
        )
        assert decomposition.provenance == Provenance.USER_SUPPLIED
        assert standardized_radical(ideal, decomposition).generator_strings() == ["x", "y"]

    def test_intersection_mismatch(self, example_ring):
        """Test that a missing component is detected."""
        r = example_ring
        with pytest.raises(VerificationError) as excinfo:
            verify_decomposition(r.ideal(["x", "y*z"]), [(r.ideal(["x", "y"]), r.ideal(["x", "y"]))])
        assert "not in the ideal" in excinfo.value.certificate

    def test_component_not_contained(self, example_ring):
        """Test that q must lie in its prime."""
        r = example_ring
        with pytest.raises(VerificationError) as excinfo:
            verify_decomposition(
                r.ideal(["x", "y*z"]),
                [(r.ideal(["x", "y"]), r.ideal(["x", "z"])), (r.ideal(["x", "z"]), r.ideal(["x", "z"]))],
            )
        assert excinfo.value.component == 0

    def test_wrong_ideal_refused(self, example_ring):
        """Test that a decomposition of another ideal is refused."""
        r = example_ring
        decomposition = verify_decomposition(r.ideal(["x", "y"]), [(r.ideal(["x", "y"]), r.ideal(["x", "y"]))])
        with pytest.raises(VerificationError):
            standardized_radical(r.ideal(["x", "y*z"]), decomposition)

    def test_assumed_primary_components(self, qq_xy):
        """Test the assumed-primary label for non-monomial components."""
        ideal = qq_xy.ideal(["x^2 - y^2"])
        decomposition = verify_decomposition(
            ideal,
            [
                (qq_xy.ideal(["x - y"]), qq_xy.ideal(["x - y"])),
                (qq_xy.ideal(["x + y"]), qq_xy.ideal(["x + y"])),
            ],
        )
        result = standardized_radical_report(ideal, decomposition)
        assert result.result.is_unit()
        assert result.exactness.kind == ExactnessKind.ASSUMED_PRIMARY
        assert result.exactness.components == [0, 1]
        assert result.exactness.label == "assumed-primary components [0, 1]"

    def test_classify_component(self, example_ring):
        """Test classification against a given prime list."""
        ass = relation_primes(example_ring)
        verdict = classify_component(example_ring.ideal(["x", "z"]), ass, index=3)
        assert verdict.index == 3
        assert verdict.verdict == ComponentVerdict.CONTAINS_REGULAR
