"""Tests for the sampling axiom checker."""

import random

import pytest

from src.algebra.fields import prime_field
from src.algebra.rings import PresentedRing
from src.closures.axioms import (
    check_axioms,
    random_monomial_ideal,
    replay_witness,
    sample_universe,
    shrink,
)
from src.closures.closure import (
    WitnessSet,
    frobenius_closure,
    identity_closure,
    integral_monomial_closure,
    radical_closure,
)
from src.config.settings import SampleConfig, Settings
from src.models.reports import AxiomName, AxiomWitness, VerdictStatus


class TestSampling:
    """Test the sample universe."""

    def test_universe_starts_with_variables(self, qq_xy, small_sample_config):
        """Test that principal variable ideals come first."""
        samples = sample_universe(qq_xy, small_sample_config)
        assert len(samples) == small_sample_config.samples
        assert samples[0].generator_strings() == ["x"]
        assert samples[1].generator_strings() == ["y"]

    def test_universe_is_seeded(self, qq_xyz, small_sample_config):
        """Test that the same seed gives the same ideals."""
        first = sample_universe(qq_xyz, small_sample_config)
        second = sample_universe(qq_xyz, small_sample_config)
        assert first == second

    def test_random_ideals_are_monomial_and_proper(self, qq_xyz):
        """Test the random monomial ideal generator."""
        rng = random.Random(5)
        for _ in range(20):
            ideal = random_monomial_ideal(qq_xyz, rng, 3, 4)
            assert ideal.is_monomial()
            assert not ideal.is_unit()


class TestCheckAxioms:
    """Test axiom verdicts and their witnesses."""

    def test_radical_is_not_standard(self, qq_xy, small_sample_config):
        """Test that radical fails standardness at I = (x), w = x."""
        report = check_axioms(radical_closure(qq_xy), small_sample_config)
        assert not report.passed
        assert [v.axiom for v in report.failures()] == [AxiomName.STANDARD]
        witness = report.verdict(AxiomName.STANDARD).witness
        assert witness.ideals == [["x"]]
        assert witness.regular == "x"
        assert witness.element == "1"

    def test_radical_other_axioms_pass(self, qq_xy, small_sample_config):
        """Test that radical is a weakly prime closure."""
        report = check_axioms(radical_closure(qq_xy), small_sample_config)
        for axiom in (
            AxiomName.EXTENSION,
            AxiomName.ORDER_PRESERVATION,
            AxiomName.IDEMPOTENCE,
            AxiomName.WEAKLY_PRIME,
        ):
            assert report.verdict(axiom).status == VerdictStatus.PASSED

    def test_witness_replays(self, qq_xy, small_sample_config):
        """Test that a failure witness reproduces on its own."""
        c = radical_closure(qq_xy)
        witness = check_axioms(c, small_sample_config).verdict(AxiomName.STANDARD).witness
        assert replay_witness(c, witness)

    def test_replay_rejects_false_witness(self, qq_xy):
        """Test that a witness which does not violate the axiom does not replay."""
        witness = AxiomWitness(axiom=AxiomName.STANDARD, ideals=[["x"]], element="x", regular="x")
        assert not replay_witness(radical_closure(qq_xy), witness)

    def test_identity_passes(self, qq_xy, small_sample_config):
        """Test that identity satisfies every axiom on a domain."""
        assert check_axioms(identity_closure(qq_xy), small_sample_config).passed

    def test_integral_passes(self, qq_xy, small_sample_config):
        """Test that integral closure of monomial ideals satisfies every axiom."""
        report = check_axioms(integral_monomial_closure(qq_xy), small_sample_config)
        assert report.passed
        assert report.verdict(AxiomName.STANDARD).status == VerdictStatus.PASSED

    def test_deterministic(self, qq_xy, small_sample_config):
        """Test that equal seeds give identical reports."""
        c = radical_closure(qq_xy)
        first = check_axioms(c, small_sample_config).model_dump()
        second = check_axioms(c, small_sample_config).model_dump()
        assert first == second

    def test_explicit_witnesses(self, qq_xy, small_sample_config):
        """Test that an explicit witness set is reported and used."""
        report = check_axioms(
            radical_closure(qq_xy), small_sample_config, WitnessSet.build(qq_xy, ["y"])
        )
        assert report.witnesses == ["y"]
        assert report.verdict(AxiomName.STANDARD).witness.regular == "y"

    def test_quotient_ring_pool(self, example_ring):
        """Test that zero-divisors never enter the witness pool."""
        cfg = SampleConfig(seed=1, samples=5, max_generators=2, max_degree=2, degree_bound=3)
        report = check_axioms(identity_closure(example_ring), cfg)
        assert report.witnesses == ["z"]
        assert report.passed

    def test_oracle_only_idempotence(self):
        """Test that oracle-only closures cannot refute idempotence."""
        ring = PresentedRing.polynomial_ring(["x", "y"], field=prime_field(3))
        cfg = SampleConfig(seed=2, samples=3, max_generators=2, max_degree=2, degree_bound=2)
        report = check_axioms(frobenius_closure(ring, e_max=1), cfg)
        assert report.verdict(AxiomName.IDEMPOTENCE).status == VerdictStatus.NOT_REFUTED
        assert report.passed


class TestShrink:
    """Test witness minimization."""

    def test_shrink_drops_generators(self, qq_xy):
        """Test that generators irrelevant to the failure are removed."""
        ideal = qq_xy.ideal(["x^3", "y^2"])

        def falsify(candidate):
            if candidate.contains("x^3") and not candidate.contains("x^2"):
                return candidate.ring.one()
            return None

        small, element = shrink(ideal, falsify)
        assert small.generator_strings() == ["x^3"]
        assert element == 1

    def test_shrink_requires_failure(self, qq_xy):
        """Test that shrinking a passing ideal is a programming error."""
        with pytest.raises(AssertionError):
            shrink(qq_xy.ideal(["x"]), lambda candidate: None)


class TestDefaultSizeSuites:
    """Test the axiom suites at the configured sample sizes."""

    def test_radical_on_100_samples(self, qq_xy):
        """Test radical: four axioms pass and standardness fails at I = (x), w = x."""
        cfg = Settings().sample_config()
        assert cfg.samples == 100
        c = radical_closure(qq_xy)
        report = check_axioms(c, cfg)
        for axiom in (
            AxiomName.EXTENSION,
            AxiomName.ORDER_PRESERVATION,
            AxiomName.IDEMPOTENCE,
            AxiomName.WEAKLY_PRIME,
        ):
            verdict = report.verdict(axiom)
            assert verdict.status == VerdictStatus.PASSED
            assert verdict.samples >= 100
        witness = report.verdict(AxiomName.STANDARD).witness
        assert (witness.ideals, witness.regular) == ([["x"]], "x")
        assert replay_witness(c, witness)

    def test_integral_on_50_samples(self, qq_xy):
        """Test that integral closure passes every axiom, standardness included."""
        report = check_axioms(integral_monomial_closure(qq_xy), Settings().sample_config(50))
        assert report.passed
        assert all(verdict.samples >= 50 for verdict in report.verdicts)
