"""Fractional ideals, semistar operations and the closure correspondence.

A fractional ideal (N, d) stands for the submodule (1/d)·N of the total ring
of fractions, with d regular. For finitely generated A the union defining
σ_f(c) is attained at A itself, so σ_f(c) membership is the π test
d·r ∈ (z·N)^c.
"""

import logging
import random
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Any, Callable, Dict, List, Optional

from src.algebra.poly import Monomial
from src.algebra.rings import ElementLike, Ideal, PresentedRing, RingElement, is_regular
from src.closures.axioms import random_monomial_ideal
from src.closures.closure import (
    Capability,
    Claims,
    ClosureOp,
    identity_closure,
    integral_monomial_closure,
    next_builtin,
)
from src.config.settings import CorrespondenceConfig
from src.errors import CapabilityError, NonRegularElementError, UnsupportedComputationError
from src.models.reports import CorrespondenceCheck, CorrespondenceReport, VerdictStatus

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RingFraction:
    """The fraction r/z of the total quotient ring, z regular."""

    numerator: RingElement
    denominator: RingElement

    @classmethod
    def build(cls, ring: PresentedRing, r: ElementLike, z: ElementLike = 1) -> "RingFraction":
        denominator = ring.element(z)
        if not is_regular(denominator):
            raise NonRegularElementError(str(denominator), "denominator")
        return cls(ring.element(r), denominator)

    @property
    def ring(self) -> PresentedRing:
        return self.numerator.ring

    def __str__(self) -> str:
        if self.denominator == 1:
            return f"{self.numerator}/1"
        return f"({self.numerator})/({self.denominator})"


@dataclass(frozen=True, eq=False)
class FractionalIdeal:
    """(1/d)·N for an ideal N and a regular element d.

    Equality compares the submodules of the total ring of fractions, so
    (x)/1 == (x*y)/y.
    """

    numerator: Ideal
    denominator: RingElement

    @classmethod
    def build(cls, numerator: Ideal, denominator: ElementLike = 1) -> "FractionalIdeal":
        d = numerator.ring.element(denominator)
        if not is_regular(d):
            raise NonRegularElementError(str(d), "denominator")
        return cls(numerator, d)

    @property
    def ring(self) -> PresentedRing:
        return self.numerator.ring

    def contains(self, f: RingFraction) -> bool:
        """r/z ∈ (1/d)·N iff d·r ∈ z·N."""
        return self.numerator.scale(f.denominator).contains(self.denominator * f.numerator)

    def scale(self, u: RingFraction) -> "FractionalIdeal":
        return frac_scale(self, u)

    def canonical(self) -> "FractionalIdeal":
        """Cancel regular variables dividing both d and every element of N."""
        numerator, d = self.numerator, self.denominator
        for v in self.ring.variables_as_elements():
            if not is_regular(v):
                continue
            while True:
                quotient, remainder = d.poly.divide(v.poly)
                if not remainder.is_zero() or numerator.is_zero():
                    break
                reduced = numerator.colon(v)
                if reduced.scale(v) != numerator:
                    break
                numerator, d = reduced, self.ring.element(quotient)
        return FractionalIdeal(numerator, d)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FractionalIdeal):
            return NotImplemented
        return self.ring == other.ring and frac_equal(self, other)

    def __hash__(self) -> int:
        # equal submodules can have different representations
        return hash(self.ring)

    def __str__(self) -> str:
        if self.denominator == 1:
            return f"{self.numerator}/1"
        return f"{self.numerator}/({self.denominator})"


def frac_equal(a: FractionalIdeal, b: FractionalIdeal) -> bool:
    """Cross-multiplied equality d_b·N_a = d_a·N_b."""
    a.ring.check_same(b.ring)
    return a.numerator.scale(b.denominator) == b.numerator.scale(a.denominator)


def frac_scale(a: FractionalIdeal, u: RingFraction) -> FractionalIdeal:
    """u·A for a regular fraction u = r/z: ((r·N), z·d)."""
    if not is_regular(u.numerator):
        raise NonRegularElementError(str(u.numerator), "scale factor")
    return FractionalIdeal(a.numerator.scale(u.numerator), a.denominator * u.denominator)


SemistarOracle = Callable[[RingFraction, FractionalIdeal], Optional[bool]]


@dataclass(frozen=True)
class SemistarOp:
    """Finite-type semistar operation given by a membership oracle."""

    name: str
    ring: PresentedRing
    oracle: SemistarOracle
    finite_type: bool = True
    source: Optional[ClosureOp] = None

    def member(self, f: RingFraction, a: FractionalIdeal) -> Optional[bool]:
        self.ring.check_same(a.ring)
        return self.oracle(f, a)

    def __str__(self) -> str:
        return self.name


def pi_member(c: ClosureOp, f: RingFraction, a: FractionalIdeal) -> Optional[bool]:
    """
    Decide r/z ∈ A_{π(c)}, i.e. d·r ∈ (z·N)^c with d the denominator of A.

    Raises:
        NonRegularElementError: if z is a zero-divisor
    """
    if not is_regular(f.denominator):
        raise NonRegularElementError(str(f.denominator), "denominator")
    return c.member(a.denominator * f.numerator, a.numerator.scale(f.denominator))


def sigma_f(c: ClosureOp) -> SemistarOp:
    return SemistarOp(
        name=f"sigma_f({c.name})",
        ring=c.ring,
        oracle=lambda f, a: pi_member(c, f, a),
        source=c,
    )


def identity_semistar(ring: PresentedRing) -> SemistarOp:
    """The semistar operation A ↦ A."""
    return SemistarOp(
        name="identity",
        ring=ring,
        oracle=lambda f, a: a.contains(f),
        source=identity_closure(ring),
    )


def kappa(star: SemistarOp) -> ClosureOp:
    """The closure I ↦ I_⋆ ∩ R; r is a member iff r/1 ∈ (I, 1)_⋆."""
    ring = star.ring
    one = ring.one()
    source = star.source

    def oracle(f: RingElement, ideal: Ideal) -> Optional[bool]:
        return star.member(RingFraction(f, one), FractionalIdeal(ideal, one))

    return ClosureOp(
        name=f"kappa({star.name})",
        ring=ring,
        oracle=oracle,
        computer=source.computer if source is not None else None,
        supports=source.supports if source is not None else (lambda ideal: False),
        exact_on=source.exact_on if source is not None else (lambda ideal: True),
        capability=source.capability if source is not None else Capability(),
        claims=Claims(finite_type=star.finite_type, standard=True),
    )


def kappa_ideal(star: SemistarOp, ideal: Ideal) -> Ideal:
    """Generators of I^{κ(⋆)} when the underlying closure can compute them."""
    op = kappa(star)
    if not op.can_apply(ideal):
        raise UnsupportedComputationError(
            f"{star.name} has no generator recovery for {ideal}; use kappa membership instead"
        )
    return op.apply(ideal)


def b_member(f: RingFraction, a: FractionalIdeal) -> Optional[bool]:
    """Membership in A_b, the b-operation: π of integral closure."""
    ring = a.ring
    if not ring.is_domain:
        raise CapabilityError(f"the b-operation needs a domain; {ring} has zero-divisors")
    return pi_member(integral_monomial_closure(ring), f, a)


# Correspondence checks


def monomials_up_to(nvars: int, degree: int) -> List[Monomial]:
    result = []
    for d in range(degree + 1):
        for combo in combinations_with_replacement(range(nvars), d):
            exps = [0] * nvars
            for i in combo:
                exps[i] += 1
            result.append(tuple(exps))
    return result


def regular_denominators(ring: PresentedRing) -> List[RingElement]:
    """1, each regular variable, and the product of the first two of them."""
    variables = [v for v in ring.variables_as_elements() if is_regular(v)]
    denominators = [ring.one()] + variables
    if len(variables) >= 2:
        denominators.append(variables[0] * variables[1])
    return denominators


def _correspondence_samples(ring: PresentedRing, cfg: CorrespondenceConfig) -> List[Ideal]:
    rng = random.Random(cfg.seed)
    samples: List[Ideal] = []
    while len(samples) < cfg.samples:
        ideal = random_monomial_ideal(ring, rng, cfg.max_generators, cfg.max_degree)
        if not ideal.is_zero() and not ideal.is_unit():
            samples.append(ideal)
    return samples


def _check(name: str, samples: int, witness: Optional[Dict[str, Any]] = None) -> CorrespondenceCheck:
    status = VerdictStatus.FAILED if witness else VerdictStatus.PASSED
    return CorrespondenceCheck(name=name, status=status, samples=samples, witness=witness)


def _frac_witness(f: RingFraction, a: FractionalIdeal, **extra: Any) -> Dict[str, Any]:
    return {"fraction": str(f), "fractional_ideal": str(a), **extra}


def check_correspondence(
    c: ClosureOp, cfg: CorrespondenceConfig, larger: Optional[ClosureOp] = None
) -> CorrespondenceReport:
    """
    Check that c and σ_f(c) correspond on a sample of monomial ideals.

    Covers the round trips κ(σ_f(c)) = c and σ_f(κ(σ_f(c))) = σ_f(c),
    extension and divisibility of σ_f(c), independence of π from the
    chosen representatives, and that c ≤ larger implies σ_f(c) ≤ σ_f(larger).
    Without ``larger`` the next operation in identity ≤ integral_monomial ≤
    radical is used; other operations get no order check.
    """
    ring = c.ring
    if larger is None:
        larger = next_builtin(c)
    star = sigma_f(c)
    round_trip = sigma_f(kappa(star))
    kappa_op = kappa(star)
    ideals = _correspondence_samples(ring, cfg)
    denominators = regular_denominators(ring)
    numerators = [ring.base.monomial(m) for m in monomials_up_to(ring.nvars, cfg.numerator_degree)]
    logger.info(f"checking correspondence of {c.name} on {len(ideals)} ideals over {ring}")

    checks: List[CorrespondenceCheck] = []

    witness: Optional[Dict[str, Any]] = None
    count = 0
    for ideal in ideals:
        count += 1
        expected = c.apply(ideal) if c.can_apply(ideal) else None
        for r in numerators:
            ours = kappa_op.member(r, ideal)
            theirs = expected.contains(r) if expected is not None else c.member(r, ideal)
            if bool(ours) != bool(theirs):
                witness = {"ideal": str(ideal), "element": str(r), "kappa": ours, "closure": theirs}
                break
        if witness:
            break
    checks.append(_check("kappa-sigma", count, witness))

    fractional = [
        FractionalIdeal(ideal, denominators[i % len(denominators)]) for i, ideal in enumerate(ideals)
    ]
    fractions = [RingFraction(ring.element(r), z) for r in numerators for z in denominators]
    # Divisibility and well-definedness sweep low-degree numerators only.
    low_degree = [f for f in fractions if f.numerator.poly.degree() <= 2]

    def sweep(
        name: str,
        test: Callable[[RingFraction, FractionalIdeal], Optional[Dict[str, Any]]],
        pool: List[RingFraction] = fractions,
    ) -> None:
        count = 0
        for a in fractional:
            for f in pool:
                count += 1
                found = test(f, a)
                if found:
                    checks.append(_check(name, count, found))
                    return
        checks.append(_check(name, count))

    def round_trip_test(f: RingFraction, a: FractionalIdeal) -> Optional[Dict[str, Any]]:
        first, second = star.member(f, a), round_trip.member(f, a)
        if bool(first) != bool(second):
            return _frac_witness(f, a, sigma=first, round_trip=second)
        return None

    def extension_test(f: RingFraction, a: FractionalIdeal) -> Optional[Dict[str, Any]]:
        if a.contains(f) and star.member(f, a) is False:
            return _frac_witness(f, a)
        return None

    units = [RingFraction(r, z) for r in denominators[1:] for z in denominators if r != z]

    def divisibility_test(f: RingFraction, a: FractionalIdeal) -> Optional[Dict[str, Any]]:
        before = star.member(f, a)
        for u in units:
            moved = RingFraction(u.numerator * f.numerator, u.denominator * f.denominator)
            after = star.member(moved, frac_scale(a, u))
            if bool(before) != bool(after):
                return _frac_witness(f, a, unit=str(u), before=before, after=after)
        return None

    def well_defined_test(f: RingFraction, a: FractionalIdeal) -> Optional[Dict[str, Any]]:
        before = star.member(f, a)
        for w in denominators[1:]:
            other_witness = FractionalIdeal(a.numerator.scale(w), a.denominator * w)
            other_fraction = RingFraction(f.numerator * w, f.denominator * w)
            for g, b in ((f, other_witness), (other_fraction, a)):
                answer = star.member(g, b)
                if bool(before) != bool(answer):
                    return _frac_witness(g, b, original=str(f), regular=str(w))
        return None

    sweep("sigma-kappa-sigma", round_trip_test)
    sweep("extension", extension_test)
    sweep("divisibility", divisibility_test, low_degree)
    sweep("well-defined", well_defined_test, low_degree)

    if larger is not None:
        bigger = sigma_f(larger)

        def order_test(f: RingFraction, a: FractionalIdeal) -> Optional[Dict[str, Any]]:
            if star.member(f, a) and bigger.member(f, a) is False:
                return _frac_witness(f, a, smaller=c.name, larger=larger.name)
            return None

        sweep(f"order({c.name} <= {larger.name})", order_test)

    report = CorrespondenceReport(closure=c.name, ring=str(ring), config=cfg, checks=checks)
    logger.info(
        f"correspondence of {c.name}: "
        + ", ".join(f"{check.name}={check.status.value}" for check in report.checks)
    )
    return report
