"""Exact rational functions in Q(t), stored as reduced ratios of integer polynomials."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ..errors import DivisionByZeroFunction
from ..fp_arith import FieldElement, as_prime, batch_inverse_ints
from .poly import IntPolynomial, format_poly, poly_gcd, rank_fraction


class _PoleType:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Pole"

    def __bool__(self):
        return False


Pole = _PoleType()


class RationalFunction:
    """a(t)/b(t) with gcd(a, b) = 1 in Q[t], joint content 1 and lc(b) > 0.

    Construct through :meth:`from_polys` (or the arithmetic operators) so the
    invariants always hold; instances are immutable and hashable.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: IntPolynomial, denominator: IntPolynomial, *, _normalized=False):
        if not _normalized:
            numerator, denominator = _normalize(numerator, denominator)
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "denominator", denominator)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def from_polys(cls, numerator, denominator=1) -> "RationalFunction":
        return cls(_as_poly(numerator), _as_poly(denominator))

    @classmethod
    def constant(cls, c) -> "RationalFunction":
        c = Fraction(c)
        return cls(IntPolynomial((c.numerator,)), IntPolynomial((c.denominator,)))

    @classmethod
    def variable(cls) -> "RationalFunction":
        return cls(IntPolynomial((0, 1)), IntPolynomial((1,)), _normalized=True)

    @classmethod
    def parse(cls, text: str) -> "RationalFunction":
        from .parser import parse_rational_function

        return parse_rational_function(text)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalFunction.constant(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.numerator == other.numerator and self.denominator == other.denominator

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        num = format_poly(self.numerator.coefficients)
        if self.denominator == 1:
            return num
        den = format_poly(self.denominator.coefficients)
        return f"{_group(num)}/{_group(den)}"

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def is_polynomial(self) -> bool:
        return self.denominator.degree == 0 and self.denominator.leading == 1

    @staticmethod
    def _lift(x):
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, (int, Fraction)):
            return RationalFunction.constant(x)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return RationalFunction(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.numerator, self.denominator, _normalized=True)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return RationalFunction(self.numerator * other.numerator, self.denominator * other.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise DivisionByZeroFunction(f"division of {self} by the zero function")
        return RationalFunction(self.numerator * other.denominator, self.denominator * other.numerator)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, n: int):
        if n < 0:
            if self.is_zero():
                raise DivisionByZeroFunction("negative power of the zero function")
            return RationalFunction(self.denominator**-n, self.numerator**-n)
        return RationalFunction(self.numerator**n, self.denominator**n)

    def derivative(self) -> "RationalFunction":
        a, b = self.numerator, self.denominator
        return RationalFunction(a.derivative() * b - a * b.derivative(), b * b)

    def __call__(self, x):
        """Exact evaluation at a rational point; returns ``Pole`` where b(x) = 0."""
        x = Fraction(x)
        den = self.denominator(x)
        if den == 0:
            return Pole
        return Fraction(self.numerator(x)) / den

    def evaluate_mod_p(self, y: FieldElement):
        """a(y) * b(y)^-1 in F_p, or ``Pole`` when b(y) = 0 mod p."""
        p = y.modulus.p
        den = self.denominator.eval_mod(y.value, p)
        if den == 0:
            return Pole
        num = self.numerator.eval_mod(y.value, p)
        return FieldElement(num * pow(den, -1, p) % p, y.modulus)

    def value_table(self, p) -> tuple[np.ndarray, np.ndarray]:
        """Values on all of F_p plus a pole mask; pole slots hold 0.

        Denominators are inverted together with a single Montgomery batch.
        """
        p = as_prime(p).p
        nums = [self.numerator.eval_mod(y, p) for y in range(p)]
        dens = [self.denominator.eval_mod(y, p) for y in range(p)]
        pole = np.array([d == 0 for d in dens], dtype=bool)
        live = [y for y in range(p) if dens[y]]
        inv = batch_inverse_ints([dens[y] for y in live], p)
        values = np.zeros(p, dtype=np.int64)
        for y, d_inv in zip(live, inv):
            values[y] = nums[y] * d_inv % p
        return values, pole

    def poles_mod_p(self, p) -> frozenset[int]:
        p = as_prime(p).p
        return frozenset(y for y in range(p) if self.denominator.eval_mod(y, p) == 0)


def _group(text: str) -> str:
    return f"({text})" if " " in text or "*" in text else text


def _as_poly(x) -> IntPolynomial:
    if isinstance(x, IntPolynomial):
        return x
    if isinstance(x, int):
        return IntPolynomial((x,))
    return IntPolynomial(x)


def _normalize(a: IntPolynomial, b: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
    if b.is_zero():
        raise DivisionByZeroFunction("denominator is the zero polynomial")
    if a.is_zero():
        return IntPolynomial(), IntPolynomial((1,))
    g = poly_gcd(a, b)
    if g.degree > 0:
        a, b = a.exact_div(g), b.exact_div(g)
    c = math.gcd(a.content(), b.content())
    if b.leading < 0:
        c = -c
    if c != 1:
        a, b = a.scale_div(c), b.scale_div(c)
    return a, b


def normalize(R: RationalFunction) -> RationalFunction:
    return RationalFunction(R.numerator, R.denominator)


def derivative(R: RationalFunction) -> RationalFunction:
    return R.derivative()


def evaluate_mod_p(R: RationalFunction, y: FieldElement):
    return R.evaluate_mod_p(y)


def check_linear_independence(F: RationalFunction, G: RationalFunction) -> bool:
    """True iff 1, F, G are linearly independent over Q.

    All three are written over the common denominator lcm(b_F, b_G); the
    numerator coefficient vectors then have rank 3 exactly when independent.
    """
    L = F.denominator * G.denominator
    rows = [
        L.coefficients,
        (F.numerator * G.denominator).coefficients,
        (G.numerator * F.denominator).coefficients,
    ]
    return rank_fraction([[Fraction(c) for c in r] for r in rows]) == 3


def is_nonconstant(R: RationalFunction) -> bool:
    """True iff R - R(t0) is not the zero function, for a non-pole rational point t0."""
    t0 = 0
    while R.denominator(t0) == 0:
        t0 += 1
    c = R(t0)
    # R - c = (a - c b)/b; compare numerators exactly
    diff = R.numerator * c.denominator - R.denominator * c.numerator
    return not diff.is_zero()
