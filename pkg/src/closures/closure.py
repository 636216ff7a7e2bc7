"""Closure operations on ideals: built-ins, finitization and standardization."""

import logging
from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Callable, Iterable, Iterator, List, Optional, Sequence, Tuple

from src.algebra.monomial import (
    integral_closure_member,
    integral_power_member,
    monomial_integral_closure,
)
from src.algebra.rings import ElementLike, Ideal, PresentedRing, RingElement, is_regular, radical_member
from src.config.settings import get_settings
from src.errors import CapabilityError, NonRegularElementError, UnsupportedComputationError
from src.models.reports import Exactness, ExactnessKind

logger = logging.getLogger(__name__)

MembershipOracle = Callable[[RingElement, Ideal], Optional[bool]]
ClosureComputer = Callable[[Ideal], Ideal]

BUILTIN_NAMES = ("identity", "radical", "integral_monomial", "frobenius")
# identity <= integral_monomial <= radical wherever all three exist
ORDER_CHAIN = ("identity", "integral_monomial", "radical")


def _always(ideal: Ideal) -> bool:
    return True


def _never(ideal: Ideal) -> bool:
    return False


@dataclass(frozen=True)
class Capability:
    """Decision power of a membership oracle.

    ``total`` oracles always answer; otherwise the oracle is a sound
    semi-decision that searches up to ``bound`` and may answer None.
    """

    total: bool = True
    bound: Optional[int] = None
    approximation: ExactnessKind = ExactnessKind.SEMI_DECISION


@dataclass(frozen=True)
class Claims:
    """Properties an operation is declared to have."""

    is_closure: bool = True
    finite_type: bool = True
    weakly_prime: bool = True
    standard: bool = False


@dataclass(frozen=True)
class ClosureOp:
    """A named (pre)closure operation on the ideals of one presented ring."""

    name: str
    ring: PresentedRing
    oracle: MembershipOracle
    computer: Optional[ClosureComputer] = None
    supports: Callable[[Ideal], bool] = _always
    exact_on: Callable[[Ideal], bool] = _always
    capability: Capability = field(default_factory=Capability)
    claims: Claims = field(default_factory=Claims)
    standardizes: Optional["ClosureOp"] = None

    def member(self, f: ElementLike, ideal: Ideal) -> Optional[bool]:
        """True/False, or None when a semi-decision finds no certificate."""
        self.ring.check_same(ideal.ring)
        element = self.ring.element(f)
        if ideal.contains(element):
            return True
        answer = self.oracle(element, ideal)
        if answer is None:
            logger.warning(f"{self.name}: membership of {element} in {ideal} is unknown")
        return answer

    def can_apply(self, ideal: Ideal) -> bool:
        return self.computer is not None and self.supports(ideal)

    def apply(self, ideal: Ideal) -> Ideal:
        """The closure of ``ideal`` as an ideal."""
        self.ring.check_same(ideal.ring)
        if not self.can_apply(ideal):
            raise UnsupportedComputationError(
                f"{self.name} has no closure computer for {ideal}; "
                f"use member({self.name}, f, I) for membership"
            )
        assert self.computer is not None
        return self.computer(ideal)

    def is_exact_for(self, ideal: Ideal) -> Exactness:
        if self.capability.total or self.exact_on(ideal):
            return Exactness.exact()
        return Exactness(kind=self.capability.approximation, bound=self.capability.bound)

    def is_exact_everywhere(self) -> bool:
        return self.capability.total

    def __str__(self) -> str:
        return self.name


def identity_closure(ring: PresentedRing) -> ClosureOp:
    return ClosureOp(
        name="identity",
        ring=ring,
        oracle=lambda f, ideal: ideal.contains(f),
        computer=lambda ideal: ideal,
        claims=Claims(standard=True),
    )


def radical_closure(ring: PresentedRing) -> ClosureOp:
    return ClosureOp(
        name="radical",
        ring=ring,
        oracle=radical_member,
        computer=Ideal.radical,
        supports=Ideal.is_monomial,
        claims=Claims(standard=False),
    )


def integral_monomial_closure(ring: PresentedRing, bound: Optional[int] = None) -> ClosureOp:
    """Integral closure: exact on monomial ideals, bounded power search otherwise."""
    if not ring.is_polynomial_ring:
        raise CapabilityError(
            f"integral_monomial needs a polynomial ring, not {ring}"
        )
    k_max = bound or get_settings().power_oracle_bound

    def oracle(f: RingElement, ideal: Ideal) -> Optional[bool]:
        if ideal.is_monomial():
            return integral_closure_member(f.poly, ideal.to_monomial_ideal())
        return integral_power_member(f.poly, ideal, k_max)

    def computer(ideal: Ideal) -> Ideal:
        return monomial_integral_closure(ideal.to_monomial_ideal()).to_ideal(ring)

    return ClosureOp(
        name="integral_monomial",
        ring=ring,
        oracle=oracle,
        computer=computer,
        supports=Ideal.is_monomial,
        exact_on=Ideal.is_monomial,
        capability=Capability(total=False, bound=k_max),
        claims=Claims(standard=True),
    )


def frobenius_closure(ring: PresentedRing, e_max: Optional[int] = None) -> ClosureOp:
    """Frobenius closure: f^(p^e) ∈ I^[p^e] for some e <= e_max."""
    p = ring.field.characteristic
    if p == 0:
        raise CapabilityError(f"frobenius needs a prime field, not {ring.field.name}")
    if e_max is None:
        e_max = get_settings().frobenius_e_max

    def oracle(f: RingElement, ideal: Ideal) -> Optional[bool]:
        for e in range(e_max + 1):
            q = p**e
            if ideal.frobenius_bracket(q).contains(f.poly.frobenius_power(q)):
                return True
        return None

    return ClosureOp(
        name=f"frobenius(e_max={e_max})",
        ring=ring,
        oracle=oracle,
        exact_on=_never,
        capability=Capability(total=False, bound=e_max),
        claims=Claims(standard=True),
    )


def construct_builtin(name: str, ring: PresentedRing, e_max: Optional[int] = None) -> ClosureOp:
    """
    Build one of the built-in closure operations.

    Args:
        name: identity, radical, integral_monomial (or integral) or frobenius
        ring: Ring the operation acts on
        e_max: Frobenius exponent bound

    Returns:
        The ClosureOp
    """
    if name == "identity":
        return identity_closure(ring)
    if name == "radical":
        return radical_closure(ring)
    if name in ("integral_monomial", "integral"):
        return integral_monomial_closure(ring)
    if name == "frobenius":
        return frobenius_closure(ring, e_max)
    raise ValueError(f"unknown closure {name!r}; expected one of {', '.join(BUILTIN_NAMES)}")


def next_builtin(c: ClosureOp) -> Optional[ClosureOp]:
    """The next built-in above c in ORDER_CHAIN that the ring supports, if any."""
    if c.name not in ORDER_CHAIN:
        return None
    for name in ORDER_CHAIN[ORDER_CHAIN.index(c.name) + 1 :]:
        try:
            return construct_builtin(name, c.ring)
        except CapabilityError:
            logger.debug(f"{name} is not available over {c.ring}")
    return None


def apply_closure(c: ClosureOp, ideal: Ideal) -> Ideal:
    return c.apply(ideal)


def finitize(c: ClosureOp) -> ClosureOp:
    """The largest finite-type preclosure below c.

    Every representable ideal is finitely generated, so the union over
    finitely generated subideals J ⊆ I is attained at J = I.
    """
    return replace(c, name=f"finitize({c.name})", claims=replace(c.claims, finite_type=True))


def check_finite_type(c: ClosureOp, pairs: Iterable[Tuple[Ideal, Ideal]]) -> List[Tuple[Ideal, Ideal, str]]:
    """
    Check J^c ⊆ I^c for f.g. J ⊆ I on closure generators of J^c.

    Returns:
        Violations as (J, I, generator) triples; pairs with J ⊄ I are skipped
    """
    violations = []
    for sub, ideal in pairs:
        if not sub.is_subset(ideal) or not c.can_apply(sub):
            continue
        for g in c.apply(sub).generators:
            if c.member(g, ideal) is False:
                violations.append((sub, ideal, str(g)))
    return violations


@dataclass(frozen=True)
class WitnessSet:
    """Finite set of regular elements indexing the standardization union."""

    ring: PresentedRing
    elements: Tuple[RingElement, ...]
    closed_under_products: bool = False

    @classmethod
    def build(
        cls,
        ring: PresentedRing,
        elements: Iterable[ElementLike],
        closed_under_products: bool = False,
    ) -> "WitnessSet":
        """
        Validate witnesses and optionally close them under products.

        Raises:
            NonRegularElementError: if a witness is a zero-divisor
        """
        checked: List[RingElement] = []
        for w in elements:
            element = ring.element(w)
            if not is_regular(element):
                raise NonRegularElementError(str(element), "witness")
            if element not in checked:
                checked.append(element)
        if closed_under_products:
            products: List[RingElement] = list(checked)
            for size in range(2, len(checked) + 1):
                for subset in combinations(checked, size):
                    prod = ring.one()
                    for w in subset:
                        prod = prod * w
                    if prod not in products:
                        products.append(prod)
            checked = products
        return cls(ring, tuple(checked), closed_under_products)

    @classmethod
    def default_pool(cls, ring: PresentedRing, extra: Sequence[ElementLike] = ()) -> "WitnessSet":
        """Regular variables, their pairwise products, and extra elements."""
        variables = ring.variables_as_elements()
        candidates: List[RingElement] = list(variables)
        candidates += [a * b for a, b in combinations(variables, 2)]
        for w in extra:
            candidates.append(ring.element(w))
        regular = []
        for w in candidates:
            if w.is_zero() or w in regular:
                continue
            if is_regular(w):
                regular.append(w)
            elif any(w == ring.element(e) for e in extra):
                logger.warning(f"witness {w} is a zero-divisor in {ring} and was dropped")
        return cls(ring, tuple(regular))

    def with_unit(self) -> List[RingElement]:
        """W ∪ {1}, with 1 first."""
        one = self.ring.one()
        return [one] + [w for w in self.elements if w != one]

    def is_subset(self, other: "WitnessSet") -> bool:
        return all(w in other.elements for w in self.elements)

    def __iter__(self) -> Iterator[RingElement]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __str__(self) -> str:
        return "[" + ", ".join(str(w) for w in self.elements) + "]"


def standardize_witnessed(c: ClosureOp, witnesses: WitnessSet) -> ClosureOp:
    """
    Witnessed standardization I ↦ Σ_{w ∈ W ∪ {1}} ((wI)^c : w).

    Always contains I^c and grows with W; it under-approximates the full
    standardization, which ranges over every regular element.

    Raises:
        CapabilityError: if c is not claimed weakly prime
    """
    if not c.claims.weakly_prime:
        raise CapabilityError(f"{c.name} is not weakly prime; its standardization is not a preclosure")
    c.ring.check_same(witnesses.ring)
    pool = witnesses.with_unit()

    def oracle(f: RingElement, ideal: Ideal) -> Optional[bool]:
        unknown = False
        for w in pool:
            answer = c.member(w * f, ideal.scale(w))
            if answer:
                return True
            unknown = unknown or answer is None
        return None if unknown else False

    def computer(ideal: Ideal) -> Ideal:
        result = ideal
        for w in pool:
            result = result.sum(c.apply(ideal.scale(w)).colon(w))
        return result

    def supports(ideal: Ideal) -> bool:
        return all(c.can_apply(ideal.scale(w)) for w in pool)

    return ClosureOp(
        name=f"standardize({c.name}; witnesses={witnesses})",
        ring=c.ring,
        oracle=oracle,
        computer=computer if c.computer is not None else None,
        supports=supports,
        exact_on=_never,
        capability=Capability(
            total=False, bound=len(pool), approximation=ExactnessKind.UNDER_APPROXIMATION
        ),
        claims=Claims(is_closure=False, finite_type=c.claims.finite_type, standard=False),
        standardizes=c,
    )
