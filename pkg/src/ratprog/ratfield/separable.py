"""Multivariate expressions built from univariate rational-function leaves.

Every stratification function is a signed sum of products of one-variable
pieces, e.g. ratio(y1)*ratio(y4) - ratio(y2)*ratio(y3).  Keeping that shape
avoids multivariate gcds entirely: clearing denominators only needs a
per-variable lcm, and the cleared numerator is a dense integer tensor whose
axes are the variables.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from itertools import permutations
from typing import Mapping, Sequence

import numpy as np

from .poly import IntPolynomial, poly_lcm
from .rational import Pole, RationalFunction

Factors = tuple  # tuple[tuple[int, RationalFunction], ...], sorted by variable


class SeparableSum:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Factors, Fraction] | None = None):
        clean = {}
        for factors, c in (terms or {}).items():
            c = Fraction(c)
            if c == 0 or any(R.is_zero() for _, R in factors):
                continue
            factors = tuple((v, R) for v, R in factors if R != 1)
            clean[factors] = clean.get(factors, Fraction(0)) + c
        object.__setattr__(self, "terms", {k: v for k, v in clean.items() if v != 0})

    def __setattr__(self, name, value):
        raise AttributeError("SeparableSum is immutable")

    @classmethod
    def leaf(cls, var: int, R: RationalFunction) -> "SeparableSum":
        return cls({((var, R),): Fraction(1)})

    @classmethod
    def constant(cls, c) -> "SeparableSum":
        return cls({(): Fraction(c)})

    @property
    def variables(self) -> tuple[int, ...]:
        return tuple(sorted({v for factors in self.terms for v, _ in factors}))

    def __repr__(self):
        parts = []
        for factors, c in self.terms.items():
            body = "*".join(f"[{R}](y{v})" for v, R in factors) or "1"
            parts.append(f"{c}*{body}")
        return "SeparableSum(" + " + ".join(parts or ["0"]) + ")"

    def __add__(self, other):
        other = _lift(other)
        merged = dict(self.terms)
        for k, c in other.terms.items():
            merged[k] = merged.get(k, Fraction(0)) + c
        return SeparableSum(merged)

    __radd__ = __add__

    def __neg__(self):
        return SeparableSum({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        out: dict = {}
        for fa, ca in self.terms.items():
            for fb, cb in other.terms.items():
                k = _merge(fa, fb)
                out[k] = out.get(k, Fraction(0)) + ca * cb
        return SeparableSum(out)

    __rmul__ = __mul__

    def __call__(self, point: Mapping[int, Fraction] | Sequence):
        """Exact value at a rational point (``point[v]`` is y_v); Pole if any leaf has one."""
        total = Fraction(0)
        for factors, c in self.terms.items():
            term = c
            for v, R in factors:
                val = R(point[v])
                if val is Pole:
                    return Pole
                term *= val
            total += term
        return total

    def evaluate_mod_p(self, point: Mapping[int, int] | Sequence, p: int):
        total = 0
        for factors, c in self.terms.items():
            term = c.numerator * pow(c.denominator, -1, p) % p
            for v, R in factors:
                y = int(point[v]) % p
                den = R.denominator.eval_mod(y, p)
                if den == 0:
                    return Pole
                term = term * R.numerator.eval_mod(y, p) * pow(den, -1, p) % p
            total = (total + term) % p
        return total

    def clearing_denominators(self) -> dict[int, IntPolynomial]:
        """Per-variable lcm of every leaf denominator."""
        out = {}
        for factors in self.terms:
            for v, R in factors:
                out[v] = poly_lcm(out.get(v, IntPolynomial((1,))), R.denominator)
        return out

    def numerator_tensor(self, variables: Sequence[int] | None = None, lcms=None) -> np.ndarray:
        """Primitive integer tensor of the numerator after multiplying by prod_v lcm_v(y_v).

        Axis k indexes powers of ``variables[k]``.
        """
        variables = tuple(variables if variables is not None else self.variables)
        lcms = lcms if lcms is not None else self.clearing_denominators()
        pieces = []
        shape = [1] * len(variables)
        for factors, c in self.terms.items():
            fmap = dict(factors)
            polys = []
            for axis, v in enumerate(variables):
                L = lcms.get(v, IntPolynomial((1,)))
                R = fmap.get(v)
                if R is None:
                    poly = L
                else:
                    # the lcm only carries primitive parts; move the content into c
                    den = R.denominator.primitive_part()
                    c = c / Fraction(R.denominator.leading, den.leading)
                    poly = R.numerator * L.exact_div(den)
                polys.append(poly.coefficients or (0,))
                shape[axis] = max(shape[axis], len(polys[-1]))
            extra = set(fmap) - set(variables)
            if extra:
                raise ValueError(f"variables {sorted(extra)} missing from tensor axes")
            pieces.append((c, polys))
        coef_den = reduce(lambda a, b: a * b // math.gcd(a, b), (c.denominator for c, _ in pieces), 1)
        pieces = [(int(c * coef_den), polys) for c, polys in pieces]
        total = np.zeros(shape, dtype=object)
        total[...] = 0
        for scale, polys in pieces:
            block = np.array(scale, dtype=object)
            for coeffs in polys:
                block = np.multiply.outer(block, np.array(coeffs, dtype=object))
            total[tuple(slice(0, n) for n in block.shape)] += block
        g = 0
        for x in total.flat:
            g = math.gcd(g, int(x))
        if g > 1:
            total //= g
        return total

    def is_zero(self) -> bool:
        """Exact symbolic zero test."""
        if not self.terms:
            return True
        return not any(int(x) for x in self.numerator_tensor().flat)

    def numerator_is_zero_mod(self, p: int) -> bool:
        if not self.terms:
            return True
        return not any(int(x) % p for x in self.numerator_tensor().flat)

    def equals(self, other) -> bool:
        return (self - _lift(other)).is_zero()


def _lift(x) -> SeparableSum:
    if isinstance(x, SeparableSum):
        return x
    if isinstance(x, (int, Fraction)):
        return SeparableSum.constant(x)
    raise TypeError(f"cannot combine SeparableSum with {type(x).__name__}")


def _merge(fa: Factors, fb: Factors) -> Factors:
    d = dict(fa)
    for v, R in fb:
        d[v] = d[v] * R if v in d else R
    return tuple(sorted(d.items(), key=lambda kv: kv[0]))


def _perm_sign(perm: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def leibniz_determinant(matrix: Sequence[Sequence[SeparableSum | int]]) -> SeparableSum:
    """Sum over permutations of signed entry products; zero entries are skipped."""
    n = len(matrix)
    entries = [[_lift(x) for x in row] for row in matrix]
    total = SeparableSum()
    for perm in permutations(range(n)):
        if any(not entries[i][perm[i]].terms for i in range(n)):
            continue
        prod = SeparableSum.constant(_perm_sign(perm))
        for i in range(n):
            prod = prod * entries[i][perm[i]]
        total = total + prod
    return total
