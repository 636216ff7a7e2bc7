"""Exact multivariate polynomial arithmetic with monomial orders.

Polynomials are immutable. The term map is keyed by dense exponent tuples;
the canonical (order-sorted) term list is derived from it on demand.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from src.algebra.fields import QQ, Field, Scalar
from src.errors import IncompatibleRingError, ZeroPolynomialError

Monomial = Tuple[int, ...]
Coefficient = Union[int, Fraction]


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_div(a: Monomial, b: Monomial) -> Monomial:
    """Return a / b; the caller guarantees that b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    """True if a divides b."""
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_degree(a: Monomial) -> int:
    return sum(a)


def monomial_coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _grevlex_key(m: Sequence[int]) -> Tuple:
    return (sum(m), tuple(-e for e in reversed(m)))


@dataclass(frozen=True)
class MonomialOrder:
    """A multiplicative well-order on monomials.

    ``tag`` is one of ``lex``, ``grevlex`` or ``block``. A block order ranks the
    first ``block`` variables (grevlex among themselves) above the rest
    (grevlex among themselves), which is what elimination needs. An optional
    ``permutation`` lists the variable indices from most to least significant.
    """

    tag: str = "grevlex"
    block: int = 0
    permutation: Optional[Tuple[int, ...]] = None

    def __post_init__(self) -> None:
        if self.tag not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown monomial order {self.tag!r}")
        if self.tag == "block" and self.block < 1:
            raise ValueError("block order needs at least one eliminated variable")

    @classmethod
    def lex(cls, permutation: Optional[Tuple[int, ...]] = None) -> "MonomialOrder":
        return cls("lex", 0, permutation)

    @classmethod
    def grevlex(cls, permutation: Optional[Tuple[int, ...]] = None) -> "MonomialOrder":
        return cls("grevlex", 0, permutation)

    @classmethod
    def elimination(cls, k: int) -> "MonomialOrder":
        return cls("block", k)

    def key(self, m: Monomial) -> Tuple:
        """Sort key: a larger key means a larger monomial."""
        if self.permutation is not None:
            m = tuple(m[i] for i in self.permutation)
        if self.tag == "lex":
            return m
        if self.tag == "grevlex":
            return _grevlex_key(m)
        return (_grevlex_key(m[: self.block]), _grevlex_key(m[self.block :]))

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __str__(self) -> str:
        return f"block({self.block})" if self.tag == "block" else self.tag


GREVLEX = MonomialOrder.grevlex()
LEX = MonomialOrder.lex()


@dataclass(frozen=True)
class PolynomialRing:
    """The covering ring k[x_1..x_n] with a fixed monomial order."""

    field: Field = QQ
    variables: Tuple[str, ...] = ("x", "y", "z")
    order: MonomialOrder = GREVLEX

    def __post_init__(self) -> None:
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def unit_monomial(self) -> Monomial:
        return (0,) * self.nvars

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: Coefficient) -> "Polynomial":
        return Polynomial(self, {self.unit_monomial: c})

    def gen(self, index: Union[int, str]) -> "Polynomial":
        if isinstance(index, str):
            index = self.variables.index(index)
        exps = [0] * self.nvars
        exps[index] = 1
        return Polynomial(self, {tuple(exps): 1})

    def gens(self) -> List["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, m: Monomial, c: Coefficient = 1) -> "Polynomial":
        if len(m) != self.nvars:
            raise IncompatibleRingError(f"monomial {m} has wrong length for {self.nvars} variables")
        return Polynomial(self, {tuple(m): c})

    def from_terms(self, terms: Dict[Monomial, Coefficient]) -> "Polynomial":
        return Polynomial(self, terms)

    def parse(self, text: str) -> "Polynomial":
        from src.parsers.poly_parser import PolynomialParser

        return PolynomialParser(self).parse(text)

    def with_order(self, order: MonomialOrder) -> "PolynomialRing":
        return PolynomialRing(self.field, self.variables, order)

    def extend(self, names: Sequence[str], order: MonomialOrder) -> "PolynomialRing":
        """Ring with ``names`` prepended as new leading variables."""
        return PolynomialRing(self.field, tuple(names) + self.variables, order)

    def drop_leading(self, k: int, order: MonomialOrder = GREVLEX) -> "PolynomialRing":
        return PolynomialRing(self.field, self.variables[k:], order)

    def compatible_with(self, other: "PolynomialRing") -> bool:
        return self.field == other.field and self.variables == other.variables

    def __str__(self) -> str:
        return f"{self.field.name}[{','.join(self.variables)}]"


class Polynomial:
    """Immutable polynomial over a :class:`PolynomialRing`."""

    def __init__(self, ring: PolynomialRing, terms: Dict[Monomial, Coefficient], clean: bool = False):
        self.ring = ring
        if clean:
            self._terms: Dict[Monomial, Scalar] = terms
        else:
            convert = ring.field.convert
            normalized: Dict[Monomial, Scalar] = {}
            for m, c in terms.items():
                value = convert(c)
                if value != 0:
                    normalized[tuple(m)] = value
            self._terms = normalized

    # Inspection

    @cached_property
    def terms(self) -> Tuple[Tuple[Monomial, Scalar], ...]:
        """Terms sorted descending in the ring's order."""
        key = self.ring.order.key
        return tuple(sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True))

    def as_dict(self) -> Dict[Monomial, Scalar]:
        return dict(self._terms)

    def monomials(self) -> List[Monomial]:
        return [m for m, _ in self.terms]

    def coefficient(self, m: Monomial) -> Scalar:
        return self._terms.get(tuple(m), self.ring.field.zero())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, Scalar]]:
        return iter(self.terms)

    def is_monomial(self) -> bool:
        """True for a single term (any nonzero coefficient)."""
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def variables_used(self) -> List[int]:
        return [i for i in range(self.ring.nvars) if any(m[i] for m in self._terms)]

    def leading_term(self, order: Optional[MonomialOrder] = None) -> Tuple[Monomial, Scalar]:
        if not self._terms:
            raise ZeroPolynomialError("the zero polynomial has no leading term")
        if order is None or order == self.ring.order:
            return self.terms[0]
        m = max(self._terms, key=order.key)
        return m, self._terms[m]

    def leading_monomial(self, order: Optional[MonomialOrder] = None) -> Monomial:
        return self.leading_term(order)[0]

    def leading_coefficient(self, order: Optional[MonomialOrder] = None) -> Scalar:
        return self.leading_term(order)[1]

    # Arithmetic

    def _check_compatible(self, other: "Polynomial") -> None:
        if not self.ring.compatible_with(other.ring):
            raise IncompatibleRingError(
                f"cannot combine polynomials over {self.ring} and {other.ring}"
            )

    def _coerce(self, other: Union["Polynomial", int, Fraction]) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check_compatible(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other: Union["Polynomial", int, Fraction]) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        f = self.ring.field
        result = dict(self._terms)
        for m, c in other._terms.items():
            value = f.add(result.get(m, f.zero()), c)
            if value == 0:
                result.pop(m, None)
            else:
                result[m] = value
        return Polynomial(self.ring, result, clean=True)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        neg = self.ring.field.neg
        return Polynomial(self.ring, {m: neg(c) for m, c in self._terms.items()}, clean=True)

    def __sub__(self, other: Union["Polynomial", int, Fraction]) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Union[int, Fraction]) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other: Union["Polynomial", int, Fraction]) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_compatible(other)
        f = self.ring.field
        result: Dict[Monomial, Scalar] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = monomial_mul(m1, m2)
                value = f.add(result.get(m, f.zero()), f.mul(c1, c2))
                if value == 0:
                    result.pop(m, None)
                else:
                    result[m] = value
        return Polynomial(self.ring, result, clean=True)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c: Coefficient) -> "Polynomial":
        f = self.ring.field
        value = f.convert(c)
        if value == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {m: f.mul(v, value) for m, v in self._terms.items()}, clean=True)

    def mul_term(self, monomial: Monomial, c: Scalar) -> "Polynomial":
        """Multiply by the single term c * monomial (c already a field element)."""
        f = self.ring.field
        return Polynomial(
            self.ring,
            {monomial_mul(m, monomial): f.mul(v, c) for m, v in self._terms.items()},
            clean=True,
        )

    def monic(self) -> "Polynomial":
        if not self._terms:
            return self
        lc = self.leading_coefficient()
        if self.ring.field.is_one(lc):
            return self
        return self.scale(self.ring.field.inv(lc))

    def divide(self, divisor: "Polynomial") -> Tuple["Polynomial", "Polynomial"]:
        """Division by a single polynomial: returns (quotient, remainder)."""
        self._check_compatible(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        f = self.ring.field
        order = self.ring.order
        lm, lc = divisor.leading_term(order)
        lc_inv = f.inv(lc)
        p = dict(self._terms)
        quotient: Dict[Monomial, Scalar] = {}
        remainder: Dict[Monomial, Scalar] = {}
        while p:
            m = max(p, key=order.key)
            c = p[m]
            if monomial_divides(lm, m):
                q = monomial_div(m, lm)
                factor = f.mul(c, lc_inv)
                quotient[q] = factor
                for gm, gc in divisor._terms.items():
                    target = monomial_mul(gm, q)
                    value = f.sub(p.get(target, f.zero()), f.mul(factor, gc))
                    if value == 0:
                        p.pop(target, None)
                    else:
                        p[target] = value
            else:
                remainder[m] = c
                del p[m]
        return Polynomial(self.ring, quotient, clean=True), Polynomial(self.ring, remainder, clean=True)

    def divide_exact(self, divisor: "Polynomial") -> "Polynomial":
        """Quotient of an exact division; raises ValueError if a remainder is left."""
        quotient, remainder = self.divide(divisor)
        if not remainder.is_zero():
            raise ValueError(f"{divisor} does not divide {self}")
        return quotient

    def frobenius_power(self, q: int) -> "Polynomial":
        """f^q for q a power of the characteristic p of a prime field.

        In characteristic p, (a + b)^p = a^p + b^p and c^p = c for c in F_p,
        so f^q is obtained by scaling exponents.
        """
        p = self.ring.field.characteristic
        if p == 0:
            raise ValueError("Frobenius powers need a prime field")
        n = q
        while n % p == 0 and n > 1:
            n //= p
        if n != 1:
            raise ValueError(f"{q} is not a power of the characteristic {p}")
        return Polynomial(
            self.ring, {tuple(e * q for e in m): c for m, c in self._terms.items()}, clean=True
        )

    # Change of ring

    def with_ring(self, ring: PolynomialRing) -> "Polynomial":
        """Same polynomial viewed in a compatible ring (e.g. another order)."""
        if not self.ring.compatible_with(ring):
            raise IncompatibleRingError(f"cannot move a polynomial from {self.ring} to {ring}")
        if ring == self.ring:
            return self
        return Polynomial(ring, self._terms, clean=True)

    def with_order(self, order: MonomialOrder) -> "Polynomial":
        return self.with_ring(self.ring.with_order(order))

    def embed(self, ring: PolynomialRing, shift: int) -> "Polynomial":
        """Embed into ``ring`` whose first ``shift`` variables are new."""
        if ring.field != self.ring.field or ring.nvars != self.ring.nvars + shift:
            raise IncompatibleRingError(f"cannot embed {self.ring} into {ring}")
        pad = (0,) * shift
        return Polynomial(ring, {pad + m: c for m, c in self._terms.items()}, clean=True)

    def restrict(self, ring: PolynomialRing, drop: int) -> "Polynomial":
        """Inverse of :meth:`embed`; the dropped variables must not occur."""
        if ring.field != self.ring.field or ring.nvars + drop != self.ring.nvars:
            raise IncompatibleRingError(f"cannot restrict {self.ring} to {ring}")
        if any(any(m[:drop]) for m in self._terms):
            raise IncompatibleRingError("polynomial involves eliminated variables")
        return Polynomial(ring, {m[drop:]: c for m, c in self._terms.items()}, clean=True)

    # Comparison and printing

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self._terms == self.ring.constant(other)._terms
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (
            self.ring.field == other.ring.field
            and self.ring.variables == other.ring.variables
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self.ring.variables, frozenset(self._terms.items())))

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({self}, {self.ring})"


def _format_monomial(m: Monomial, names: Sequence[str]) -> str:
    factors = []
    for name, e in zip(names, m):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors)


def format_polynomial(f: Polynomial) -> str:
    """Canonical text form, e.g. ``x^2*y - 3/2*z``; parses back to ``f``."""
    if f.is_zero():
        return "0"
    field_ = f.ring.field
    pieces: List[str] = []
    for i, (m, c) in enumerate(f.terms):
        negative = isinstance(c, Fraction) and c < 0
        magnitude = -c if negative else c
        body = _format_monomial(m, f.ring.variables)
        coeff = field_.format(magnitude)
        if not body:
            text = coeff
        elif field_.is_one(magnitude):
            text = body
        else:
            text = f"{coeff}*{body}"
        if i == 0:
            pieces.append(f"-{text}" if negative else text)
        else:
            pieces.append(f" - {text}" if negative else f" + {text}")
    return "".join(pieces)


def polynomial_sum(ring: PolynomialRing, polys: Iterable[Polynomial]) -> Polynomial:
    total = ring.zero()
    for p in polys:
        total = total + p
    return total
