"""Prime-field arithmetic and additive characters.

Primes are capped at 2**20 so that every product of two residues fits in a
signed 64-bit word; the numba kernels downstream rely on that.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import NotPrime, PrimeMismatch, ZeroInverse

MAX_PRIME = 2**20


def is_prime(n: int) -> bool:
    """Deterministic trial division, adequate below MAX_PRIME."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_in_range(lo: int, hi: int) -> list[int]:
    """Odd primes in the closed interval [lo, hi]."""
    return [n for n in range(max(lo, 3), hi + 1) if is_prime(n)]


@dataclass(frozen=True, order=True)
class Prime:
    p: int

    def __post_init__(self):
        p = self.p
        if isinstance(p, bool) or not isinstance(p, (int, np.integer)):
            raise TypeError(f"prime must be an integer, got {type(p).__name__}")
        if p < 3:
            raise NotPrime(f"p must be an odd prime >= 3, got {p}")
        if p > MAX_PRIME:
            raise NotPrime(f"p = {p} exceeds the cap 2**20")
        if not is_prime(int(p)):
            raise NotPrime(f"{p} is not prime")
        object.__setattr__(self, "p", int(p))

    def __int__(self):
        return self.p

    def __index__(self):
        return self.p

    def __str__(self):
        return str(self.p)

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(value % self.p, self)


def as_prime(p) -> Prime:
    return p if isinstance(p, Prime) else Prime(int(p))


@dataclass(frozen=True)
class FieldElement:
    value: int
    modulus: Prime

    def __post_init__(self):
        if not 0 <= self.value < self.modulus.p:
            raise ValueError(f"{self.value} is not reduced modulo {self.modulus.p}")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.modulus != self.modulus:
                raise PrimeMismatch(f"mod {self.modulus} vs mod {other.modulus}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other)
        return NotImplemented

    def _wrap(self, v: int) -> "FieldElement":
        return FieldElement(v % self.modulus.p, self.modulus)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(-self.value)

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.modulus.p})"


def _egcd_inverse(a: int, p: int) -> int:
    # Extended Euclid on (a, p); the only place an actual inversion happens.
    old_r, r = a % p, p
    old_s, s = 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    if old_r != 1:
        raise ZeroInverse(f"{a} is not invertible modulo {p}")
    return old_s % p


def mod_inverse(a: FieldElement) -> FieldElement:
    if a.value == 0:
        raise ZeroInverse()
    return FieldElement(_egcd_inverse(a.value, a.modulus.p), a.modulus)


def batch_inverse_ints(values: Sequence[int], p: int) -> list[int]:
    """Montgomery's trick on plain residues: one inversion, 3(n-1) products."""
    n = len(values)
    if n == 0:
        return []
    prefix = [0] * n
    acc = 1
    for i, v in enumerate(values):
        v %= p
        if v == 0:
            raise ZeroInverse(f"entry {i} is 0 modulo {p}", index=i)
        acc = acc * v % p
        prefix[i] = acc
    inv = _egcd_inverse(acc, p)
    out = [0] * n
    for i in range(n - 1, 0, -1):
        out[i] = inv * prefix[i - 1] % p
        inv = inv * values[i] % p
    out[0] = inv
    return out


def batch_inverse(values: Sequence[FieldElement]) -> list[FieldElement]:
    values = list(values)
    if not values:
        return []
    modulus = values[0].modulus
    for v in values:
        if v.modulus != modulus:
            raise PrimeMismatch("batch_inverse needs a single modulus")
    inv = batch_inverse_ints([v.value for v in values], modulus.p)
    return [FieldElement(x, modulus) for x in inv]


@lru_cache(maxsize=64)
def character_table(p: int) -> np.ndarray:
    """The p roots of unity e_p(k) = exp(2 pi i k / p), k = 0..p-1 (read-only)."""
    k = np.arange(p, dtype=np.float64)
    # use the symmetric representative so the angle stays in [-pi, pi]
    k = np.where(k > p / 2, k - p, k)
    theta = 2.0 * np.pi * k / p
    table = np.cos(theta) + 1j * np.sin(theta)
    table[0] = 1.0
    table.setflags(write=False)
    return table


def additive_character(a: FieldElement) -> complex:
    return complex(character_table(a.modulus.p)[a.value])


def primitive_root(p: int) -> int:
    """Smallest generator of the multiplicative group mod p."""
    p = int(p)
    m = p - 1
    factors = set()
    n = m
    f = 2
    while f * f <= n:
        while n % f == 0:
            factors.add(f)
            n //= f
        f += 1
    if n > 1:
        factors.add(n)
    for g in range(2, p):
        if all(pow(g, m // q, p) != 1 for q in factors):
            return g
    return 1  # p = 2: trivial group

