"""Dense univariate polynomials over Z with arbitrary-precision coefficients."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence


def _strip(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = [int(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class IntPolynomial:
    """Immutable polynomial; ``coefficients[i]`` multiplies t**i."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Sequence[int] = ()):
        object.__setattr__(self, "coefficients", _strip(coefficients))

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    @classmethod
    def constant(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "IntPolynomial":
        return cls((0,) * degree + (coeff,))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> int:
        return self.coefficients[-1] if self.coefficients else 0

    def is_zero(self) -> bool:
        return not self.coefficients

    def is_constant(self) -> bool:
        return self.degree <= 0

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coefficients == other.coefficients
        if isinstance(other, int):
            return self.coefficients == _strip((other,))
        return NotImplemented

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        return f"IntPolynomial({list(self.coefficients)})"

    def __str__(self):
        return format_poly(self.coefficients)

    def __bool__(self):
        return bool(self.coefficients)

    @staticmethod
    def _lift(x) -> "IntPolynomial":
        if isinstance(x, IntPolynomial):
            return x
        if isinstance(x, int):
            return IntPolynomial((x,))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-c for c in self.coefficients)

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
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result, base = IntPolynomial((1,)), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(i * c for i, c in enumerate(self.coefficients) if i)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def eval_mod(self, x: int, p: int) -> int:
        acc = 0
        for c in reversed(self.coefficients):
            acc = (acc * x + c) % p
        return acc

    def reduce_mod(self, p: int) -> tuple[int, ...]:
        return _strip(c % p for c in self.coefficients)

    def content(self) -> int:
        g = 0
        for c in self.coefficients:
            g = math.gcd(g, c)
        return g

    def primitive_part(self) -> "IntPolynomial":
        """Divide out the content and make the leading coefficient positive."""
        if self.is_zero():
            return self
        g = self.content()
        if self.leading < 0:
            g = -g
        return IntPolynomial(c // g for c in self.coefficients)

    def scale_div(self, k: int) -> "IntPolynomial":
        if any(c % k for c in self.coefficients):
            raise ArithmeticError(f"{self} is not divisible by {k}")
        return IntPolynomial(c // k for c in self.coefficients)

    def pseudo_remainder(self, divisor: "IntPolynomial") -> "IntPolynomial":
        if divisor.is_zero():
            raise ZeroDivisionError("pseudo-remainder by zero polynomial")
        r = list(self.coefficients)
        db, lb = divisor.degree, divisor.leading
        dcoef = divisor.coefficients
        while len(r) - 1 >= db and r:
            shift = len(r) - 1 - db
            lr = r[-1]
            r = [lb * c for c in r]
            for i, c in enumerate(dcoef):
                r[i + shift] -= lr * c
            r = list(_strip(r))
        return IntPolynomial(r)

    def exact_div(self, divisor: "IntPolynomial") -> "IntPolynomial":
        """Quotient over Z; raises unless ``divisor`` divides exactly."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        r = list(self.coefficients)
        db, lb = divisor.degree, divisor.leading
        if len(r) - 1 < db:
            if r:
                raise ArithmeticError("inexact polynomial division")
            return IntPolynomial()
        q = [0] * (len(r) - db)
        for shift in range(len(r) - 1 - db, -1, -1):
            lr = r[shift + db]
            if lr % lb:
                raise ArithmeticError("inexact polynomial division")
            k = lr // lb
            q[shift] = k
            if k:
                for i, c in enumerate(divisor.coefficients):
                    r[i + shift] -= k * c
        if any(r):
            raise ArithmeticError("inexact polynomial division")
        return IntPolynomial(q)


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Primitive gcd in Z[t] (equal to the Q[t] gcd up to a unit), positive leading term."""
    a, b = a.primitive_part(), b.primitive_part()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        a, b = b, a.pseudo_remainder(b).primitive_part()
    return a.primitive_part()


def poly_lcm(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Primitive lcm of primitive parts."""
    g = poly_gcd(a, b)
    return (a.primitive_part() * b.primitive_part()).exact_div(g).primitive_part()


def _det_fraction(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    m = [list(r) for r in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] * inv
            if f:
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return det


def resultant(a: IntPolynomial, b: IntPolynomial) -> int:
    """Res(a, b) as the Sylvester determinant; res(a, c) = c**deg(a) for a constant c."""
    if a.is_zero() or b.is_zero():
        return 0
    m, n = a.degree, b.degree
    if m == 0 and n == 0:
        return 1
    if n == 0:
        return b.leading**m
    if m == 0:
        return a.leading**n
    size = m + n
    rows = []
    ar = list(reversed(a.coefficients))
    br = list(reversed(b.coefficients))
    for i in range(n):
        rows.append([Fraction(0)] * i + [Fraction(c) for c in ar] + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + [Fraction(c) for c in br] + [Fraction(0)] * (size - n - 1 - i))
    det = _det_fraction(rows)
    assert det.denominator == 1
    return int(det)


def rank_fraction(rows: list[list[Fraction]]) -> int:
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = max(len(r) for r in m)
    for r in m:
        r.extend([Fraction(0)] * (ncols - len(r)))
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col] / m[rank][col]
                for c in range(col, ncols):
                    m[r][c] -= f * m[rank][c]
        rank += 1
    return rank


def format_poly(coeffs: Sequence[int], var: str = "t") -> str:
    if not coeffs:
        return "0"
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            power = var if i == 1 else f"{var}^{i}"
            body = power if mag == 1 else f"{mag}*{power}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
