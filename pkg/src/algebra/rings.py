"""Presented rings R = k[x_1..x_n]/J, their elements and ideals.

Ideals of R are stored as preimages in the covering polynomial ring S that
contain J; every computation runs in S and is read modulo J.
"""

import logging
from enum import Enum
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import TYPE_CHECKING, Iterable, List, Optional, Sequence, Tuple, Union

from src.algebra.fields import QQ, Field
from src.algebra.groebner import GroebnerBasis, eliminate, normal_form, reduced_groebner_basis
from src.algebra.poly import (
    GREVLEX,
    Polynomial,
    PolynomialRing,
    monomial_div,
    monomial_lcm,
)
from src.errors import (
    IncompatibleRingError,
    RingDeclarationError,
    UnsupportedComputationError,
)

if TYPE_CHECKING:
    from src.algebra.monomial import MonomialIdeal, PrimaryDecomposition

logger = logging.getLogger(__name__)

ElementLike = Union["RingElement", Polynomial, int, Fraction, str]


class IdealRelation(str, Enum):
    """Result of comparing two ideals."""

    EQUAL = "equal"
    SUBSET = "subset"
    SUPERSET = "superset"
    INCOMPARABLE = "incomparable"


def _fresh_name(taken: Sequence[str], stem: str = "t") -> str:
    name = f"_{stem}"
    while name in taken:
        name = f"_{name}"
    return name


def _intersect_polys(
    first: Sequence[Polynomial], second: Sequence[Polynomial], base: PolynomialRing
) -> List[Polynomial]:
    """Generators of <first> ∩ <second> in ``base`` via t*I + (1 - t)*K."""
    if not first or not second:
        return []
    tag = _fresh_name(base.variables)
    extended = base.extend((tag,), GREVLEX)
    t = extended.gen(0)
    gens = [t * f.embed(extended, 1) for f in first]
    gens += [(1 - t) * g.embed(extended, 1) for g in second]
    return [g.with_ring(base) for g in eliminate(gens, 1, ring=extended)]


def _monomial_intersect(
    first: Sequence[Polynomial], second: Sequence[Polynomial], base: PolynomialRing
) -> List[Polynomial]:
    """Intersection of monomial ideals: pairwise lcms of generators."""
    return [
        base.monomial(monomial_lcm(f.leading_monomial(), g.leading_monomial()))
        for f in first
        for g in second
    ]


class PresentedRing:
    """The ring R = k[x_1..x_n]/J with the reduced Groebner basis of J cached."""

    def __init__(self, base: PolynomialRing, relations: Sequence[Polynomial] = (), name: str = ""):
        """
        Initialize a presented ring.

        Args:
            base: Covering polynomial ring S
            relations: Generators of the relation ideal J
            name: Optional display name
        """
        self.base = base
        self.name = name
        for r in relations:
            if r.ring.variables != base.variables or r.ring.field != base.field:
                raise IncompatibleRingError(f"relation {r} is not a polynomial of {base}")
        self.relations: Tuple[Polynomial, ...] = tuple(
            r.with_ring(base) for r in relations if not r.is_zero()
        )
        self._relation_basis = reduced_groebner_basis(list(self.relations), ring=base)
        if self._relation_basis.is_unit():
            raise RingDeclarationError(f"relations of {self} generate the unit ideal")
        self._decomposition: Optional["PrimaryDecomposition"] = None

    @classmethod
    def polynomial_ring(
        cls, variables: Sequence[str], field: Field = QQ, name: str = ""
    ) -> "PresentedRing":
        """The polynomial ring k[variables] (J = 0)."""
        try:
            return cls(PolynomialRing(field, tuple(variables), GREVLEX), (), name)
        except ValueError as e:
            raise RingDeclarationError(str(e)) from e

    @classmethod
    def quotient(
        cls,
        variables: Sequence[str],
        relations: Iterable[Union[Polynomial, str]],
        field: Field = QQ,
        name: str = "",
    ) -> "PresentedRing":
        """The quotient k[variables]/(relations); relations may be given as text."""
        try:
            base = PolynomialRing(field, tuple(variables), GREVLEX)
        except ValueError as e:
            raise RingDeclarationError(str(e)) from e
        polys = [base.parse(r) if isinstance(r, str) else r for r in relations]
        return cls(base, polys, name)

    # Structure

    @property
    def field(self) -> Field:
        return self.base.field

    @property
    def variables(self) -> Tuple[str, ...]:
        return self.base.variables

    @property
    def nvars(self) -> int:
        return self.base.nvars

    @property
    def relation_basis(self) -> GroebnerBasis:
        return self._relation_basis

    @property
    def is_polynomial_ring(self) -> bool:
        return len(self._relation_basis) == 0

    @cached_property
    def is_domain(self) -> bool:
        """True when J is zero or a verified prime (generated by variables)."""
        if self.is_polynomial_ring:
            return True
        basis = self._relation_basis
        return basis.is_monomial() and all(sum(m) == 1 for m in basis.leading_monomials())

    def covering_ring(self) -> "PresentedRing":
        """The polynomial ring S covering this ring."""
        if self.is_polynomial_ring:
            return self
        return PresentedRing(self.base, (), self.name and f"{self.name}~")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PresentedRing):
            return NotImplemented
        return (
            self.base.field == other.base.field
            and self.base.variables == other.base.variables
            and self._relation_basis.polynomials == other._relation_basis.polynomials
        )

    def __hash__(self) -> int:
        return hash((self.base.field, self.base.variables, self._relation_basis.polynomials))

    def __str__(self) -> str:
        if self.is_polynomial_ring:
            return str(self.base)
        relations = ", ".join(str(g) for g in self._relation_basis)
        return f"{self.base}/({relations})"

    def __repr__(self) -> str:
        return f"PresentedRing({self})"

    def check_same(self, other: "PresentedRing") -> None:
        if other is not self and other != self:
            raise IncompatibleRingError(f"{other} is not the ring {self}")

    # Constructors

    def lift(self, value: ElementLike) -> Polynomial:
        """Polynomial of S representing ``value`` (not reduced modulo J)."""
        if isinstance(value, RingElement):
            self.check_same(value.ring)
            return value.poly
        if isinstance(value, Polynomial):
            if value.ring.variables != self.variables or value.ring.field != self.field:
                raise IncompatibleRingError(f"{value} is not a polynomial of {self.base}")
            return value.with_ring(self.base)
        if isinstance(value, str):
            return self.base.parse(value)
        if isinstance(value, (int, Fraction)):
            return self.base.constant(value)
        raise TypeError(f"cannot interpret {value!r} as an element of {self}")

    def element(self, value: ElementLike) -> "RingElement":
        return RingElement(self, self.lift(value))

    def one(self) -> "RingElement":
        return self.element(1)

    def zero(self) -> "RingElement":
        return self.element(0)

    def variables_as_elements(self) -> List["RingElement"]:
        return [RingElement(self, g) for g in self.base.gens()]

    def ideal(self, gens: Iterable[ElementLike]) -> "Ideal":
        return Ideal(self, [self.lift(g) for g in gens])

    def unit_ideal(self) -> "Ideal":
        return Ideal(self, [self.base.one()])

    def zero_ideal(self) -> "Ideal":
        return Ideal(self, [])

    # Decomposition of J

    def relation_decomposition(self) -> "PrimaryDecomposition":
        """Verified primary decomposition of J, as ideals of this ring.

        Computed by the monomial engine when J is monomial; otherwise it must
        have been supplied through :meth:`with_relation_decomposition`.
        """
        if self._decomposition is None:
            zero = self.zero_ideal()
            if not zero.is_monomial():
                raise UnsupportedComputationError(
                    f"the relation ideal of {self} is not monomial; supply its primary "
                    "decomposition with with_relation_decomposition"
                )
            from src.algebra.monomial import monomial_primary_decomposition

            self._decomposition = monomial_primary_decomposition(zero)
        return self._decomposition

    def with_relation_decomposition(
        self, components: Sequence[Tuple["Ideal", "Ideal"]]
    ) -> "PresentedRing":
        """Copy of this ring carrying a verified decomposition of J."""
        from src.closures.stdrad import verify_decomposition

        ring = PresentedRing(self.base, self.relations, self.name)
        ring._decomposition = verify_decomposition(self.zero_ideal(), components)
        return ring


class RingElement:
    """Element of a presented ring, kept as its normal form modulo J."""

    __slots__ = ("ring", "poly")

    def __init__(self, ring: PresentedRing, poly: Polynomial):
        self.ring = ring
        self.poly = normal_form(poly.with_ring(ring.base), ring.relation_basis)

    def _other(self, other: ElementLike) -> Polynomial:
        return self.ring.lift(other)

    def __add__(self, other: ElementLike) -> "RingElement":
        return RingElement(self.ring, self.poly + self._other(other))

    __radd__ = __add__

    def __sub__(self, other: ElementLike) -> "RingElement":
        return RingElement(self.ring, self.poly - self._other(other))

    def __rsub__(self, other: ElementLike) -> "RingElement":
        return RingElement(self.ring, self._other(other) - self.poly)

    def __mul__(self, other: ElementLike) -> "RingElement":
        return RingElement(self.ring, self.poly * self._other(other))

    __rmul__ = __mul__

    def __neg__(self) -> "RingElement":
        return RingElement(self.ring, -self.poly)

    def __pow__(self, n: int) -> "RingElement":
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def is_monomial(self) -> bool:
        return self.poly.is_monomial()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, Polynomial, str)):
            other = self.ring.element(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring == other.ring and self.poly == other.poly

    def __hash__(self) -> int:
        return hash((self.ring, self.poly))

    def __str__(self) -> str:
        return str(self.poly)

    def __repr__(self) -> str:
        return f"RingElement({self.poly}, {self.ring})"


def _display_order(ring: PresentedRing, polys: Iterable[Polynomial]) -> List[Polynomial]:
    key = ring.base.order.key
    ordered = sorted(polys, key=lambda g: key(g.leading_monomial()), reverse=True)
    return sorted(ordered, key=lambda g: g.degree())


class Ideal:
    """Finitely generated ideal of a presented ring, stored as a preimage in S."""

    def __init__(self, ring: PresentedRing, gens: Sequence[Polynomial]):
        """
        Initialize an ideal.

        Args:
            ring: Owning presented ring
            gens: Lifted generators in the covering ring (J is added)
        """
        self.ring = ring
        polys = [ring.lift(g) for g in gens]
        self.basis = reduced_groebner_basis(
            polys + list(ring.relation_basis), ring=ring.base
        )

    @property
    def polynomials(self) -> Tuple[Polynomial, ...]:
        """Reduced basis of the lifted ideal (contains J)."""
        return self.basis.polynomials

    @cached_property
    def generators(self) -> Tuple[Polynomial, ...]:
        """Canonical generators: basis elements outside J, redundancies
        removed, degree ascending then descending in the monomial order."""
        ring = self.ring
        if self.basis.is_unit():
            return (ring.base.one(),)
        candidates = [g for g in self.basis if not ring.relation_basis.contains(g)]
        candidates = _display_order(ring, candidates)
        if not self.basis.is_monomial():
            kept = list(candidates)
            for g in reversed(candidates):
                rest = [h for h in kept if h is not g]
                if Ideal(ring, rest).contains(g):
                    kept = rest
            candidates = kept
        return tuple(candidates)

    def elements(self) -> List[RingElement]:
        return [RingElement(self.ring, g) for g in self.generators]

    def generator_strings(self) -> List[str]:
        if self.is_zero():
            return []
        return [str(g) for g in self.generators]

    def lifted_generator_strings(self) -> List[str]:
        """Generators of the preimage in the covering ring, relations included."""
        return [str(g) for g in _display_order(self.ring, self.basis)]

    # Predicates

    def is_unit(self) -> bool:
        return self.basis.is_unit()

    def is_zero(self) -> bool:
        return self.basis.polynomials == self.ring.relation_basis.polynomials

    def is_monomial(self) -> bool:
        return self.basis.is_monomial()

    def contains(self, f: ElementLike) -> bool:
        return self.basis.contains(self.ring.lift(f))

    def __contains__(self, f: ElementLike) -> bool:
        return self.contains(f)

    def is_subset(self, other: "Ideal") -> bool:
        self.ring.check_same(other.ring)
        return all(other.basis.contains(g) for g in self.basis)

    def contains_ideal(self, other: "Ideal") -> bool:
        return other.is_subset(self)

    def compare(self, other: "Ideal") -> IdealRelation:
        below = self.is_subset(other)
        above = other.is_subset(self)
        if below and above:
            return IdealRelation.EQUAL
        if below:
            return IdealRelation.SUBSET
        if above:
            return IdealRelation.SUPERSET
        return IdealRelation.INCOMPARABLE

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.basis.polynomials == other.basis.polynomials

    def __hash__(self) -> int:
        return hash((self.ring, self.basis.polynomials))

    def __le__(self, other: "Ideal") -> bool:
        return self.is_subset(other)

    def __str__(self) -> str:
        if self.is_zero():
            return "(0)"
        return "(" + ", ".join(self.generator_strings()) + ")"

    def __repr__(self) -> str:
        return f"Ideal{self} of {self.ring}"

    # Arithmetic

    def sum(self, other: "Ideal") -> "Ideal":
        self.ring.check_same(other.ring)
        return Ideal(self.ring, list(self.basis) + list(other.basis))

    __add__ = sum

    def product(self, other: "Ideal") -> "Ideal":
        self.ring.check_same(other.ring)
        return Ideal(self.ring, [f * g for f in self.basis for g in other.basis])

    __mul__ = product

    def power(self, n: int) -> "Ideal":
        if n < 0:
            raise ValueError("ideal powers need a non-negative exponent")
        result = self.ring.unit_ideal()
        for _ in range(n):
            result = result.product(self)
        return result

    __pow__ = power

    def scale(self, w: ElementLike) -> "Ideal":
        """The ideal w*I."""
        return _scaled(self, self.ring.element(w).poly)

    def frobenius_bracket(self, q: int) -> "Ideal":
        """The ideal generated by q-th powers of generators (q a power of p)."""
        return Ideal(self.ring, [g.frobenius_power(q) for g in self.basis])

    def intersect(self, other: "Ideal") -> "Ideal":
        """Exact intersection; monomial pairs use generator lcms."""
        self.ring.check_same(other.ring)
        if self.is_unit():
            return other
        if other.is_unit():
            return self
        base = self.ring.base
        if self.is_monomial() and other.is_monomial():
            gens = _monomial_intersect(self.polynomials, other.polynomials, base)
        else:
            gens = _intersect_polys(self.polynomials, other.polynomials, base)
        return Ideal(self.ring, gens)

    def intersect_by_elimination(self, other: "Ideal") -> "Ideal":
        """Intersection through tag-variable elimination, for any inputs."""
        self.ring.check_same(other.ring)
        return Ideal(self.ring, _intersect_polys(self.polynomials, other.polynomials, self.ring.base))

    def colon(self, f: ElementLike) -> "Ideal":
        """(I : f) = {g : g*f in I}; (I : 0) is the unit ideal."""
        lifted = self.ring.lift(f)
        reduced = normal_form(lifted, self.ring.relation_basis)
        if reduced.is_zero() or self.basis.contains(lifted):
            return self.ring.unit_ideal()
        base = self.ring.base
        if self.is_monomial() and reduced.is_monomial():
            m = reduced.leading_monomial()
            gens = [
                base.monomial(monomial_div(monomial_lcm(g.leading_monomial(), m), m))
                for g in self.polynomials
            ]
            return Ideal(self.ring, gens)
        meet = _intersect_polys(self.polynomials, [reduced], base)
        return Ideal(self.ring, [g.divide_exact(reduced) for g in meet])

    def colon_ideal(self, other: "Ideal") -> "Ideal":
        """(I : K), the intersection of (I : g) over generators g of K."""
        self.ring.check_same(other.ring)
        result = self.ring.unit_ideal()
        for g in other.generators if not other.is_zero() else ():
            result = result.intersect(self.colon(g))
        return result

    # Monomial views

    def to_monomial_ideal(self) -> "MonomialIdeal":
        from src.algebra.monomial import MonomialIdeal

        if not self.is_monomial():
            raise ValueError(f"{self} is not a monomial ideal")
        return MonomialIdeal.from_monomials(self.basis.leading_monomials(), self.ring.nvars)

    def radical(self) -> "Ideal":
        """Radical of a monomial ideal (generator form)."""
        if not self.is_monomial():
            raise UnsupportedComputationError(
                f"radical generators of {self} are only computed for monomial ideals; "
                "use radical_member for membership"
            )
        from src.algebra.monomial import monomial_radical

        return monomial_radical(self.to_monomial_ideal()).to_ideal(self.ring)


@lru_cache(maxsize=4096)
def _scaled(ideal: Ideal, w: Polynomial) -> Ideal:
    if w == 1:
        return ideal
    return Ideal(ideal.ring, [w * g for g in ideal.basis])


def _rabinowitsch(f: Polynomial, ideal: Ideal) -> bool:
    base = ideal.ring.base
    tag = _fresh_name(base.variables)
    extended = base.extend((tag,), GREVLEX)
    t = extended.gen(0)
    gens = [g.embed(extended, 1) for g in ideal.polynomials]
    gens.append(1 - t * f.embed(extended, 1))
    return reduced_groebner_basis(gens, ring=extended).is_unit()


def radical_member(f: ElementLike, ideal: Ideal) -> bool:
    """
    Decide whether some power of f lies in the ideal.

    Args:
        f: Element of the ideal's ring
        ideal: Ideal of a presented ring

    Returns:
        True iff f^n is in the ideal for some n (Rabinowitsch test)
    """
    lifted = ideal.ring.lift(f)
    if ideal.basis.contains(lifted):
        return True
    if lifted.is_zero():
        return True
    if ideal.is_monomial() and lifted.is_monomial():
        support = {i for i, e in enumerate(lifted.leading_monomial()) if e}
        return any(
            {i for i, e in enumerate(m) if e} <= support for m in ideal.basis.leading_monomials()
        )
    return _rabinowitsch(lifted, ideal)


def power_member(f: ElementLike, ideal: Ideal, n_max: int) -> Optional[int]:
    """Smallest n <= n_max with f^n in the ideal, or None if there is none."""
    element = ideal.ring.element(f)
    power = ideal.ring.one()
    for n in range(1, n_max + 1):
        power = power * element
        if ideal.contains(power):
            return n
    return None


@lru_cache(maxsize=4096)
def _is_regular(ring: PresentedRing, poly: Polynomial) -> bool:
    zero = ring.zero_ideal()
    return zero.colon(poly) == zero


def is_regular(w: ElementLike, ring: Optional[PresentedRing] = None) -> bool:
    """
    Decide whether w is a non-zerodivisor, i.e. (J : w) = J.

    Args:
        w: Ring element (or a polynomial/text together with ``ring``)
        ring: Ring to interpret w in when it is not a RingElement

    Returns:
        True iff w is regular
    """
    if isinstance(w, RingElement):
        ring = w.ring
        poly = w.poly
    else:
        if ring is None:
            raise ValueError("is_regular needs a ring for a bare polynomial")
        poly = ring.element(w).poly
    if poly.is_zero():
        return False
    if ring.is_domain:
        return True
    return _is_regular(ring, poly)
