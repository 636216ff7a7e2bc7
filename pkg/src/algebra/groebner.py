"""Buchberger's algorithm, normal forms and elimination."""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from src.algebra.fields import Field, Scalar
from src.algebra.poly import (
    Monomial,
    MonomialOrder,
    Polynomial,
    PolynomialRing,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
)
from src.config.settings import get_settings
from src.errors import (
    GroebnerBudgetExceeded,
    IncompatibleOrderError,
    IncompatibleRingError,
    InvalidEliminationError,
)

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis: monic, inter-reduced, ascending by leading monomial."""

    ring: PolynomialRing
    polynomials: Tuple[Polynomial, ...]
    reduced: bool = True
    pairs_processed: int = field(default=0, compare=False)

    @property
    def order(self) -> MonomialOrder:
        return self.ring.order

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self.polynomials)

    def __len__(self) -> int:
        return len(self.polynomials)

    def leading_monomials(self) -> List[Monomial]:
        return [g.leading_monomial() for g in self.polynomials]

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.polynomials)

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.polynomials)

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f.with_order(self.order), self).is_zero()


class _Divisor:
    __slots__ = ("lm", "lc_inv", "terms")

    def __init__(self, g: Polynomial, f: Field):
        lm, lc = g.leading_term()
        self.lm = lm
        self.lc_inv = f.inv(lc)
        self.terms = g.as_dict()


def _reduce(
    terms: Dict[Monomial, Scalar],
    divisors: Sequence[_Divisor],
    f: Field,
    order: MonomialOrder,
) -> Dict[Monomial, Scalar]:
    """Full multivariate division remainder of ``terms`` by ``divisors``."""
    p = dict(terms)
    remainder: Dict[Monomial, Scalar] = {}
    key = order.key
    zero = f.zero()
    while p:
        m = max(p, key=key)
        c = p[m]
        for d in divisors:
            if monomial_divides(d.lm, m):
                q = monomial_div(m, d.lm)
                factor = f.mul(c, d.lc_inv)
                for gm, gc in d.terms.items():
                    target = monomial_mul(gm, q)
                    value = f.sub(p.get(target, zero), f.mul(factor, gc))
                    if value == 0:
                        p.pop(target, None)
                    else:
                        p[target] = value
                break
        else:
            remainder[m] = c
            del p[m]
    return remainder


def normal_form(f: Polynomial, basis: GroebnerBasis) -> Polynomial:
    """
    Remainder of f on division by a Groebner basis.

    Args:
        f: Polynomial over the basis' ring and order
        basis: Groebner basis

    Returns:
        The unique remainder; zero iff f lies in the ideal
    """
    if not f.ring.compatible_with(basis.ring):
        raise IncompatibleRingError(f"cannot reduce a polynomial over {f.ring} by a basis over {basis.ring}")
    if f.ring.order != basis.order:
        raise IncompatibleOrderError(
            f"polynomial uses {f.ring.order}, basis uses {basis.order}"
        )
    field_ = basis.ring.field
    divisors = [_Divisor(g, field_) for g in basis.polynomials]
    return Polynomial(f.ring, _reduce(f.as_dict(), divisors, field_, basis.order), clean=True)


def _spolynomial(f: Polynomial, g: Polynomial, field_: Field) -> Polynomial:
    lmf, lcf = f.leading_term()
    lmg, lcg = g.leading_term()
    lcm = monomial_lcm(lmf, lmg)
    left = f.mul_term(monomial_div(lcm, lmf), field_.inv(lcf))
    right = g.mul_term(monomial_div(lcm, lmg), field_.inv(lcg))
    return left - right


def _update(
    lms: List[Monomial], pairs: Set[Pair], lmf: Monomial, order: MonomialOrder
) -> Set[Pair]:
    """Gebauer-Moeller update of the pair set when a polynomial with
    leading monomial ``lmf`` joins the basis at index ``len(lms)``."""
    new = len(lms)
    kept = {
        (i, j)
        for (i, j) in pairs
        if not monomial_divides(lmf, monomial_lcm(lms[i], lms[j]))
        or monomial_lcm(lms[i], lms[j]) == monomial_lcm(lms[i], lmf)
        or monomial_lcm(lms[i], lms[j]) == monomial_lcm(lms[j], lmf)
    }
    by_lcm: Dict[Monomial, List[int]] = {}
    for i, lm in enumerate(lms):
        by_lcm.setdefault(monomial_lcm(lm, lmf), []).append(i)
    minimal: List[Monomial] = []
    for lcm in sorted(by_lcm, key=order.key):
        if all(not monomial_divides(other, lcm) for other in minimal):
            minimal.append(lcm)
    for lcm in minimal:
        indices = by_lcm[lcm]
        # Buchberger's product criterion: a coprime pair reduces to zero.
        if not any(monomial_lcm(lms[i], lmf) == monomial_mul(lms[i], lmf) for i in indices):
            kept.add((min(indices), new))
    return kept


def _minimalize(polys: List[Polynomial], order: MonomialOrder) -> List[Polynomial]:
    kept: List[Polynomial] = []
    for f in sorted(polys, key=lambda h: order.key(h.leading_monomial())):
        if all(not monomial_divides(g.leading_monomial(), f.leading_monomial()) for g in kept):
            kept.append(f)
    return kept


def _interreduce(polys: List[Polynomial], field_: Field, order: MonomialOrder) -> List[Polynomial]:
    reduced = []
    for i, g in enumerate(polys):
        others = [_Divisor(h, field_) for j, h in enumerate(polys) if j != i]
        r = Polynomial(g.ring, _reduce(g.as_dict(), others, field_, order), clean=True)
        reduced.append(r.monic())
    return reduced


def _buchberger(
    polys: List[Polynomial], ring: PolynomialRing, max_pairs: int
) -> Tuple[List[Polynomial], int]:
    field_ = ring.field
    order = ring.order
    basis: List[Polynomial] = []
    lms: List[Monomial] = []
    pairs: Set[Pair] = set()
    for f in polys:
        g = f.monic()
        pairs = _update(lms, pairs, g.leading_monomial(), order)
        basis.append(g)
        lms.append(g.leading_monomial())

    processed = 0
    while pairs:
        i, j = min(pairs, key=lambda p: (order.key(monomial_lcm(lms[p[0]], lms[p[1]])), p))
        pairs.remove((i, j))
        processed += 1
        if processed > max_pairs:
            raise GroebnerBudgetExceeded(
                f"Buchberger exceeded {max_pairs} critical pairs (basis size {len(basis)})"
            )
        s = _spolynomial(basis[i], basis[j], field_)
        divisors = [_Divisor(g, field_) for g in basis]
        r = Polynomial(ring, _reduce(s.as_dict(), divisors, field_, order), clean=True)
        if r.is_zero():
            continue
        r = r.monic()
        if r.is_constant():
            return [ring.one()], processed
        pairs = _update(lms, pairs, r.leading_monomial(), order)
        basis.append(r)
        lms.append(r.leading_monomial())
    return basis, processed


def reduced_groebner_basis(
    gens: Sequence[Polynomial],
    order: Optional[MonomialOrder] = None,
    ring: Optional[PolynomialRing] = None,
    max_pairs: Optional[int] = None,
) -> GroebnerBasis:
    """
    Compute the reduced Groebner basis of the ideal generated by ``gens``.

    Args:
        gens: Generators (zero polynomials are discarded)
        order: Monomial order; defaults to the generators' ring order
        ring: Ring to use when ``gens`` is empty
        max_pairs: Critical-pair ceiling; defaults to the configured ceiling

    Returns:
        Canonical reduced GroebnerBasis
    """
    if ring is None:
        if not gens:
            raise ValueError("an empty generator list needs an explicit ring")
        ring = gens[0].ring
    if order is not None:
        ring = ring.with_order(order)
    for g in gens:
        if not g.ring.compatible_with(ring):
            raise IncompatibleRingError(f"generator over {g.ring} does not belong to {ring}")
    polys = [g.with_ring(ring) for g in gens if not g.is_zero()]
    if max_pairs is None:
        max_pairs = get_settings().groebner_pair_ceiling

    processed = 0
    if any(p.is_constant() for p in polys):
        result = [ring.one()]
    elif all(p.is_monomial() for p in polys):
        result = [ring.monomial(p.leading_monomial()) for p in _minimalize(polys, ring.order)]
    else:
        basis, processed = _buchberger(polys, ring, max_pairs)
        result = _interreduce(_minimalize(basis, ring.order), ring.field, ring.order)
    result.sort(key=lambda g: ring.order.key(g.leading_monomial()))
    logger.debug(
        f"Groebner basis over {ring} ({ring.order}): {len(polys)} generators -> "
        f"{len(result)} elements, {processed} pairs"
    )
    return GroebnerBasis(ring, tuple(result), True, processed)


def eliminate(gens: Sequence[Polynomial], k: int, ring: Optional[PolynomialRing] = None) -> List[Polynomial]:
    """
    Generators of the ideal intersected with k[x_{k+1}, ..., x_n].

    Args:
        gens: Generators over k[x_1..x_n]
        k: Number of leading variables to eliminate
        ring: Ring to use when ``gens`` is empty

    Returns:
        Reduced basis elements free of the first k variables, as polynomials
        of the ring of the remaining variables (grevlex)
    """
    ring = ring or gens[0].ring
    if k < 1 or k >= ring.nvars:
        raise InvalidEliminationError(f"cannot eliminate {k} of {ring.nvars} variables")
    basis = reduced_groebner_basis(gens, MonomialOrder.elimination(k), ring=ring)
    target = ring.drop_leading(k)
    kept = [g.restrict(target, k) for g in basis if not any(g.leading_monomial()[:k])]
    kept.sort(key=lambda g: target.order.key(g.leading_monomial()))
    return kept
