"""Exact algorithms for monomial ideals.

Minimal generators, radicals, primary decomposition by generator splitting,
and integral closure through the facets of the Newton polyhedron.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import gcd, lcm
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from sympy import Matrix

from src.algebra.poly import (
    Monomial,
    Polynomial,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
)
from src.algebra.rings import Ideal, PresentedRing, radical_member
from src.errors import VerificationError
from src.models.reports import ComponentReport, DecompositionReport

logger = logging.getLogger(__name__)

# A facet inequality <c, e> >= b with integer c >= 0.
Facet = Tuple[Tuple[int, ...], int]


def _grevlex_key(m: Monomial) -> Tuple:
    return (sum(m), tuple(-e for e in reversed(m)))


def _canonical(monomials: Iterable[Monomial]) -> Tuple[Monomial, ...]:
    ordered = sorted(monomials, key=_grevlex_key, reverse=True)
    return tuple(sorted(ordered, key=sum))


def _minimalize(monomials: Iterable[Monomial]) -> List[Monomial]:
    kept: List[Monomial] = []
    for m in sorted(set(monomials), key=_grevlex_key):
        if not any(monomial_divides(g, m) for g in kept):
            kept.append(m)
    return kept


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal given by its minimal generators (an antichain)."""

    generators: Tuple[Monomial, ...]
    nvars: int

    @classmethod
    def from_monomials(cls, monomials: Iterable[Monomial], nvars: int) -> "MonomialIdeal":
        return cls(_canonical(_minimalize(tuple(m) for m in monomials)), nvars)

    @classmethod
    def unit(cls, nvars: int) -> "MonomialIdeal":
        return cls(((0,) * nvars,), nvars)

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return any(sum(m) == 0 for m in self.generators)

    def contains(self, m: Monomial) -> bool:
        return any(monomial_divides(g, m) for g in self.generators)

    def contains_polynomial(self, f: Polynomial) -> bool:
        """A polynomial lies in a monomial ideal iff each of its terms does."""
        return all(self.contains(m) for m in f.monomials())

    def is_subset(self, other: "MonomialIdeal") -> bool:
        return all(other.contains(m) for m in self.generators)

    def sum(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal.from_monomials(self.generators + other.generators, self.nvars)

    def product(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal.from_monomials(
            (monomial_mul(a, b) for a in self.generators for b in other.generators), self.nvars
        )

    def power(self, n: int) -> "MonomialIdeal":
        result = MonomialIdeal.unit(self.nvars)
        for _ in range(n):
            result = result.product(self)
        return result

    def intersect(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal.from_monomials(
            (monomial_lcm(a, b) for a in self.generators for b in other.generators), self.nvars
        )

    def colon(self, m: Monomial) -> "MonomialIdeal":
        return MonomialIdeal.from_monomials(
            (monomial_div(monomial_lcm(g, m), m) for g in self.generators), self.nvars
        )

    def support(self) -> List[int]:
        return sorted({i for m in self.generators for i, e in enumerate(m) if e})

    def is_prime(self) -> bool:
        """Monomial primes are exactly the ideals generated by variables."""
        return not self.is_unit() and all(sum(m) == 1 for m in self.generators)

    def is_primary(self) -> bool:
        """Every variable occurring in a generator occurs as a pure power generator."""
        if self.is_unit():
            return False
        pure = {i for m in self.generators for i, e in enumerate(m) if e and sum(m) == e}
        return set(self.support()) <= pure

    def with_added(self, m: Monomial) -> "MonomialIdeal":
        return MonomialIdeal.from_monomials(self.generators + (m,), self.nvars)

    def to_ideal(self, ring: PresentedRing) -> Ideal:
        return Ideal(ring, [ring.base.monomial(m) for m in self.generators])

    def format(self, names: Sequence[str]) -> str:
        if self.is_zero():
            return "(0)"
        pieces = []
        for m in self.generators:
            factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e]
            pieces.append("*".join(factors) or "1")
        return "(" + ", ".join(pieces) + ")"


def minimal_generators(gens: Sequence[Monomial]) -> MonomialIdeal:
    """Divisibility-minimal generating antichain of the given monomials."""
    if not gens:
        raise ValueError("minimal_generators needs at least one monomial")
    return MonomialIdeal.from_monomials(gens, len(gens[0]))


def monomial_radical(ideal: MonomialIdeal) -> MonomialIdeal:
    """Radical: squarefree parts of the minimal generators, re-minimalized."""
    return MonomialIdeal.from_monomials(
        (tuple(min(e, 1) for e in m) for m in ideal.generators), ideal.nvars
    )


# Primary decomposition


class Verification(str, Enum):
    VERIFIED = "verified"
    ASSUMED = "assumed"


class Provenance(str, Enum):
    COMPUTED_MONOMIAL = "computed-monomial"
    USER_SUPPLIED = "user-supplied"


@dataclass(frozen=True)
class DecompositionComponent:
    """A primary component q with its radical p and per-property statuses."""

    primary: Ideal
    prime: Ideal
    contained: Verification = Verification.VERIFIED
    radical: Verification = Verification.VERIFIED
    prime_status: Verification = Verification.VERIFIED
    primary_status: Verification = Verification.VERIFIED

    @property
    def is_certified(self) -> bool:
        return self.prime_status == Verification.VERIFIED and (
            self.primary_status == Verification.VERIFIED
        )


@dataclass(frozen=True)
class PrimaryDecomposition:
    ideal: Ideal
    components: Tuple[DecompositionComponent, ...]
    provenance: Provenance
    intersection: Verification = Verification.VERIFIED

    @property
    def is_verified(self) -> bool:
        """Intersection, containments and radicals all checked exactly."""
        return self.intersection == Verification.VERIFIED and all(
            c.contained == Verification.VERIFIED and c.radical == Verification.VERIFIED
            for c in self.components
        )

    def assumed_components(self) -> List[int]:
        return [i for i, c in enumerate(self.components) if not c.is_certified]

    def primes(self) -> List[Ideal]:
        return [c.prime for c in self.components]

    def report(self) -> DecompositionReport:
        return DecompositionReport(
            ideal=self.ideal.generator_strings(),
            provenance=self.provenance.value,
            intersection=self.intersection.value,
            verified=self.is_verified,
            components=[
                ComponentReport(
                    index=i,
                    primary=c.primary.generator_strings(),
                    prime=c.prime.generator_strings(),
                    lifted=c.primary.lifted_generator_strings(),
                    contained=c.contained.value,
                    radical=c.radical.value,
                    prime_status=c.prime_status.value,
                    primary_status=c.primary_status.value,
                )
                for i, c in enumerate(self.components)
            ],
        )


def _irreducible_components(ideal: MonomialIdeal) -> List[MonomialIdeal]:
    """Split on the first generator that is not a pure power until every
    generator is one: I = (I + x_i^a) ∩ (I + m / x_i^a)."""
    for m in ideal.generators:
        support = [i for i, e in enumerate(m) if e]
        if len(support) > 1:
            i = support[0]
            pure = tuple(e if j == i else 0 for j, e in enumerate(m))
            rest = tuple(0 if j == i else e for j, e in enumerate(m))
            logger.debug(f"splitting {m} into {pure} and {rest}")
            return _irreducible_components(ideal.with_added(pure)) + _irreducible_components(
                ideal.with_added(rest)
            )
    return [ideal]


def _prime_key(ideal: MonomialIdeal) -> Tuple:
    support = ideal.support()
    return (len(support), tuple(support))


def _drop_redundant(components: List[MonomialIdeal]) -> List[MonomialIdeal]:
    kept = list(components)
    changed = True
    while changed:
        changed = False
        for q in kept:
            others = [p for p in kept if p is not q]
            if not others:
                break
            meet = others[0]
            for p in others[1:]:
                meet = meet.intersect(p)
            if meet.is_subset(q):
                kept = others
                changed = True
                break
    return kept


def decompose_monomial_ideal(ideal: MonomialIdeal) -> List[Tuple[MonomialIdeal, MonomialIdeal]]:
    """Irredundant primary decomposition as (primary, prime) monomial pairs."""
    if ideal.is_unit():
        return []
    if ideal.is_zero():
        return [(ideal, ideal)]
    irreducible: List[MonomialIdeal] = []
    for q in _irreducible_components(ideal):
        if q not in irreducible:
            irreducible.append(q)
    irreducible = [
        q for q in irreducible if not any(p != q and p.is_subset(q) for p in irreducible)
    ]
    merged: Dict[MonomialIdeal, MonomialIdeal] = {}
    for q in irreducible:
        p = monomial_radical(q)
        merged[p] = merged[p].intersect(q) if p in merged else q
    primaries = _drop_redundant([merged[p] for p in sorted(merged, key=_prime_key)])
    return [(q, monomial_radical(q)) for q in primaries]


def monomial_primary_decomposition(
    ideal: Union[Ideal, MonomialIdeal], ring: Optional[PresentedRing] = None
) -> PrimaryDecomposition:
    """
    Primary decomposition of a monomial ideal.

    Args:
        ideal: Monomial ideal of a presented ring (its lift must be monomial),
            or a bare MonomialIdeal together with ``ring``
        ring: Ring for a bare MonomialIdeal

    Returns:
        Irredundant decomposition with every component certified primary
    """
    if isinstance(ideal, MonomialIdeal):
        if ring is None:
            raise ValueError("a bare monomial ideal needs a ring")
        monomial = ideal
        ideal = monomial.to_ideal(ring)
    else:
        ring = ideal.ring
        monomial = ideal.to_monomial_ideal()
    components = []
    for q, p in decompose_monomial_ideal(monomial):
        if not q.is_zero() and not q.is_primary():
            raise VerificationError(f"component {q.format(ring.variables)} is not primary")
        components.append(DecompositionComponent(q.to_ideal(ring), p.to_ideal(ring)))
    logger.debug(f"decomposed {ideal} into {len(components)} components")
    return PrimaryDecomposition(ideal, tuple(components), Provenance.COMPUTED_MONOMIAL)


def certify_component(q: Ideal, p: Ideal) -> DecompositionComponent:
    """
    Check a (primary, prime) pair exactly where possible.

    q ⊆ p and p ⊆ rad(q) are decided on generators; primality and
    primaryness are certified for monomial components and assumed otherwise.
    """
    if not q.is_subset(p):
        raise VerificationError(f"{q} is not contained in {p}")
    for g in p.polynomials:
        if not radical_member(g, q):
            raise VerificationError(f"{p} is not inside the radical of {q}", certificate=str(g))
    prime_status = Verification.ASSUMED
    primary_status = Verification.ASSUMED
    if p.is_monomial():
        mp = p.to_monomial_ideal()
        if not (mp.is_prime() or mp.is_zero()):
            raise VerificationError(f"{p} is a monomial ideal but not prime")
        prime_status = Verification.VERIFIED
    if q.is_monomial():
        mq = q.to_monomial_ideal()
        if not (mq.is_primary() or mq.is_zero()):
            raise VerificationError(f"{q} is a monomial ideal but not primary")
        primary_status = Verification.VERIFIED
    return DecompositionComponent(q, p, Verification.VERIFIED, Verification.VERIFIED, prime_status, primary_status)


def associated_primes(decomposition: PrimaryDecomposition) -> List[Ideal]:
    """Distinct radicals of the components, canonically ordered.

    Refuses decompositions whose intersection or radicals were not verified.
    """
    if not decomposition.is_verified:
        raise VerificationError(
            f"decomposition of {decomposition.ideal} is not verified: "
            f"{decomposition.report().model_dump_json()}"
        )
    for i in decomposition.assumed_components():
        logger.warning(f"component {i} of {decomposition.ideal} is assumed primary")
    primes: List[Ideal] = []
    for p in decomposition.primes():
        if p not in primes:
            primes.append(p)
    return sorted(primes, key=lambda p: (len(p.generators), p.generator_strings()))


# Integral closure


def _primitive(vector: Sequence[Fraction]) -> Tuple[int, ...]:
    scale = lcm(*(v.denominator for v in vector))
    ints = [int(v * scale) for v in vector]
    divisor = gcd(*ints) or 1
    return tuple(v // divisor for v in ints)


@lru_cache(maxsize=1024)
def newton_facets(ideal: MonomialIdeal) -> Tuple[Facet, ...]:
    """
    Inequalities <c, e> >= b (c >= 0) cutting out the Newton polyhedron
    conv(exponents) + R_{>=0}^n of a nonzero, proper monomial ideal.

    Each candidate hyperplane passes through k generator exponents and is
    parallel to n - k coordinate directions; candidates with a
    one-dimensional null space, nonnegative normal, and all exponents on
    the positive side are kept.
    """
    n = ideal.nvars
    points = ideal.generators
    facets = set()
    for k in range(1, min(n, len(points)) + 1):
        for chosen in combinations(points, k):
            for flat in combinations(range(n), n - k):
                rows = [list(p) + [-1] for p in chosen]
                rows += [[1 if j == i else 0 for j in range(n)] + [0] for i in flat]
                space = Matrix(rows).nullspace()
                if len(space) != 1:
                    continue
                vector = [Fraction(int(v.p), int(v.q)) for v in space[0]]
                normal = vector[:n]
                if all(c <= 0 for c in normal):
                    vector = [-v for v in vector]
                    normal = vector[:n]
                if any(c < 0 for c in normal) or not any(normal):
                    continue
                primitive = _primitive(vector)
                c, b = primitive[:n], primitive[n]
                if all(sum(ci * pi for ci, pi in zip(c, p)) >= b for p in points):
                    facets.add((c, b))
    return tuple(sorted(facets))


def in_newton_polyhedron(m: Monomial, ideal: MonomialIdeal) -> bool:
    if ideal.is_zero():
        return False
    if ideal.is_unit() or ideal.contains(m):
        return True
    return all(sum(c * e for c, e in zip(normal, m)) >= b for normal, b in newton_facets(ideal))


@lru_cache(maxsize=1024)
def monomial_integral_closure(ideal: MonomialIdeal) -> MonomialIdeal:
    """Integral closure: monomials whose exponent lies in the Newton polyhedron.

    Minimal generators of the closure lie in the box bounded by the largest
    generator exponent in each coordinate.
    """
    if ideal.is_zero() or ideal.is_unit():
        return ideal
    bounds = [max(m[i] for m in ideal.generators) for i in range(ideal.nvars)]
    found: List[Monomial] = []
    for m in sorted(product(*(range(b + 1) for b in bounds)), key=sum):
        if any(monomial_divides(g, m) for g in found):
            continue
        if in_newton_polyhedron(m, ideal):
            found.append(m)
    return MonomialIdeal.from_monomials(found, ideal.nvars)


def integral_closure_member(f: Polynomial, ideal: MonomialIdeal) -> bool:
    """Exact membership in the (monomial) integral closure of a monomial ideal."""
    closure = monomial_integral_closure(ideal)
    return closure.contains_polynomial(f)


def integral_power_member(f: Polynomial, ideal: Ideal, k_max: int) -> Optional[bool]:
    """Semi-decision for integral dependence: True if f^k ∈ I^k for some
    k <= k_max, None (unknown) otherwise."""
    element = ideal.ring.element(f)
    power = ideal.ring.one()
    ideal_power = ideal.ring.unit_ideal()
    for _ in range(k_max):
        power = power * element
        ideal_power = ideal_power.product(ideal)
        if ideal_power.contains(power):
            return True
    return None
