"""Coefficient fields: exact rationals and prime fields F_p."""

from fractions import Fraction
from typing import Any, Union

from sympy import isprime

from src.errors import RingDeclarationError

Scalar = Union[Fraction, int]

MAX_PRIME = 2**31


class RationalField:
    """The field QQ with arbitrary-precision rational coefficients."""

    __slots__ = ()

    characteristic = 0
    name = "QQ"

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")

    def __repr__(self) -> str:
        return "QQ"

    def convert(self, value: Union[int, Fraction]) -> Fraction:
        return Fraction(value)

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def add(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def sub(self, a: Fraction, b: Fraction) -> Fraction:
        return a - b

    def mul(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def neg(self, a: Fraction) -> Fraction:
        return -a

    def inv(self, a: Fraction) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in QQ")
        return 1 / a

    def div(self, a: Fraction, b: Fraction) -> Fraction:
        return a / b

    def power(self, a: Fraction, n: int) -> Fraction:
        return a**n

    def is_one(self, a: Fraction) -> bool:
        return a == 1

    def format(self, a: Fraction) -> str:
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"


class PrimeField:
    """The prime field F_p; residues are plain ints in [0, p)."""

    __slots__ = ("characteristic",)

    def __init__(self, p: int):
        if p >= MAX_PRIME or not isprime(p):
            raise RingDeclarationError(f"GF({p}): modulus must be a prime below 2^31")
        self.characteristic = p

    @property
    def name(self) -> str:
        return f"GF({self.characteristic})"

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, PrimeField) and other.characteristic == self.characteristic

    def __hash__(self) -> int:
        return hash(("GF", self.characteristic))

    def __repr__(self) -> str:
        return self.name

    def convert(self, value: Union[int, Fraction]) -> int:
        p = self.characteristic
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise ZeroDivisionError(f"{value} has no image in {self.name}")
            return value.numerator * pow(value.denominator, -1, p) % p
        return value % p

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.characteristic

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.characteristic

    def mul(self, a: int, b: int) -> int:
        return a * b % self.characteristic

    def neg(self, a: int) -> int:
        return -a % self.characteristic

    def inv(self, a: int) -> int:
        if a % self.characteristic == 0:
            raise ZeroDivisionError(f"inverse of zero in {self.name}")
        return pow(a, -1, self.characteristic)

    def div(self, a: int, b: int) -> int:
        return a * self.inv(b) % self.characteristic

    def power(self, a: int, n: int) -> int:
        return pow(a, n, self.characteristic)

    def is_one(self, a: int) -> bool:
        return a == 1

    def format(self, a: int) -> str:
        return str(a)


Field = Union[RationalField, PrimeField]

QQ = RationalField()


def prime_field(p: int) -> PrimeField:
    """Return the prime field with p elements."""
    return PrimeField(p)
