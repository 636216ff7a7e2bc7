"""Standardized radical from a primary decomposition.

A component consisting of zero-divisors is one contained in an associated
prime of J (prime avoidance); the standardized radical is the intersection
of the radicals of exactly those components, or R when there are none.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from src.algebra.monomial import (
    PrimaryDecomposition,
    Provenance,
    Verification,
    associated_primes,
    certify_component,
    monomial_primary_decomposition,
)
from src.algebra.rings import Ideal, PresentedRing, RingElement, is_regular
from src.errors import UnsupportedComputationError, VerificationError
from src.models.reports import (
    ClassificationReport,
    Exactness,
    ExactnessKind,
    StandardizedRadicalReport,
)

logger = logging.getLogger(__name__)


class ComponentVerdict(str, Enum):
    ALL_ZERO_DIVISORS = "all-zero-divisors"
    CONTAINS_REGULAR = "contains-regular"


@dataclass(frozen=True)
class ComponentClassification:
    index: int
    primary: Ideal
    verdict: ComponentVerdict
    associated_prime: Optional[Ideal] = None
    witness: Optional[RingElement] = None

    def report(self) -> ClassificationReport:
        return ClassificationReport(
            index=self.index,
            primary=self.primary.generator_strings(),
            verdict=self.verdict.value,
            associated_prime=(
                self.associated_prime.generator_strings() if self.associated_prime else None
            ),
            witness=str(self.witness) if self.witness is not None else None,
        )


def relation_primes(ring: PresentedRing) -> List[Ideal]:
    """Verified associated primes of the relation ideal J."""
    return associated_primes(ring.relation_decomposition())


def classify_component(q: Ideal, ass: Sequence[Ideal], index: int = 0) -> ComponentClassification:
    """
    Classify a primary component by containment in the associated primes of J.

    Args:
        q: Primary component
        ass: Associated primes of J, from :func:`relation_primes`
        index: Component index recorded in the classification

    Returns:
        all-zero-divisors citing the containing prime, or contains-regular
        with a regular canonical generator when one exists
    """
    for p in ass:
        if q.is_subset(p):
            return ComponentClassification(index, q, ComponentVerdict.ALL_ZERO_DIVISORS, p)
    witness = next((g for g in q.elements() if is_regular(g)), None)
    return ComponentClassification(index, q, ComponentVerdict.CONTAINS_REGULAR, witness=witness)


def verify_decomposition(
    ideal: Ideal, components: Sequence[Tuple[Ideal, Ideal]]
) -> PrimaryDecomposition:
    """
    Verify a user-supplied primary decomposition.

    Checks the intersection of the q_i against the ideal, q_i ⊆ p_i and
    p_i ⊆ rad(q_i) exactly; primality is certified for monomial p_i and
    recorded as assumed otherwise.

    Raises:
        VerificationError: naming the failing component and a certificate
    """
    checked = []
    for i, (q, p) in enumerate(components):
        ideal.ring.check_same(q.ring)
        ideal.ring.check_same(p.ring)
        try:
            checked.append(certify_component(q, p))
        except VerificationError as e:
            raise VerificationError(f"component {i}: {e}", component=i, certificate=e.certificate) from e
        if checked[-1].prime_status == Verification.ASSUMED:
            logger.warning(f"primality of component {i} prime {p} is assumed")

    meet = ideal.ring.unit_ideal()
    for q, _ in components:
        meet = meet.intersect(q)
    if meet != ideal:
        missing = next((g for g in ideal.generators if not meet.contains(g)), None)
        extra = next((g for g in meet.generators if not ideal.contains(g)), None)
        certificate = f"{missing} is not in the intersection" if missing is not None else (
            f"{extra} is in the intersection but not in the ideal"
        )
        raise VerificationError(
            f"intersection of components is {meet}, not {ideal}", certificate=certificate
        )
    return PrimaryDecomposition(ideal, tuple(checked), Provenance.USER_SUPPLIED)


@dataclass(frozen=True)
class StandardizedRadicalResult:
    ideal: Ideal
    result: Ideal
    decomposition: PrimaryDecomposition
    classifications: Tuple[ComponentClassification, ...]
    exactness: Exactness

    def report(self) -> StandardizedRadicalReport:
        return StandardizedRadicalReport(
            ideal=self.ideal.generator_strings(),
            result=self.result.generator_strings(),
            decomposition=self.decomposition.report(),
            classifications=[c.report() for c in self.classifications],
            exactness=self.exactness,
        )


def _decomposition_for(ideal: Ideal, decomposition: Optional[PrimaryDecomposition]) -> PrimaryDecomposition:
    if decomposition is None:
        if not ideal.is_monomial():
            raise UnsupportedComputationError(
                f"no primary decomposition is available for {ideal}; supply one with "
                "`with decomposition [(q1, p1), ...]`"
            )
        return monomial_primary_decomposition(ideal)
    if decomposition.ideal != ideal:
        raise VerificationError(f"decomposition is of {decomposition.ideal}, not of {ideal}")
    if not decomposition.is_verified:
        raise VerificationError(f"refusing to use an unverified decomposition of {ideal}")
    return decomposition


def standardized_radical_report(
    ideal: Ideal, decomposition: Optional[PrimaryDecomposition] = None
) -> StandardizedRadicalResult:
    """
    Compute the standardized radical with its evidence.

    Args:
        ideal: Ideal of a presented ring
        decomposition: Verified decomposition; computed for monomial ideals

    Returns:
        StandardizedRadicalResult with per-component classifications
    """
    decomposition = _decomposition_for(ideal, decomposition)
    ass = relation_primes(ideal.ring)
    classifications = tuple(
        classify_component(c.primary, ass, i) for i, c in enumerate(decomposition.components)
    )
    result = ideal.ring.unit_ideal()
    for component, verdict in zip(decomposition.components, classifications):
        if verdict.verdict == ComponentVerdict.ALL_ZERO_DIVISORS:
            result = result.intersect(component.prime)
    assumed = decomposition.assumed_components()
    if assumed:
        exactness = Exactness(kind=ExactnessKind.ASSUMED_PRIMARY, components=assumed)
    else:
        exactness = Exactness.exact()
    logger.debug(f"standardized radical of {ideal} is {result}")
    return StandardizedRadicalResult(ideal, result, decomposition, classifications, exactness)


def standardized_radical(ideal: Ideal, decomposition: Optional[PrimaryDecomposition] = None) -> Ideal:
    return standardized_radical_report(ideal, decomposition).result
