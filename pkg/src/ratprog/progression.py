"""The three-term counting operator, its kernel and dual function, and the U^2 inequality check.

Starred averages E*_y run over y in F_p that are poles of none of the rational
functions being averaged, but are still normalised by 1/p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DependentInput, PrimeMismatch
from .fp_arith import FieldElement, Prime, as_prime, character_table
from .ratfield.rational import RationalFunction, check_linear_independence
from .roth.counting import exp_sum_table
from .spectral import GridFunction, csum, dft, norm
from .tables import pair_tables

PET_RTOL = 1e-9


def shared_prime(*fs: GridFunction) -> Prime:
    primes = {f.prime for f in fs}
    if len(primes) != 1:
        raise PrimeMismatch("functions live over different primes: " + ", ".join(sorted(str(q) for q in primes)))
    return primes.pop()


def _shift_indices(F: RationalFunction, G: RationalFunction, p: int):
    """Index matrices (x + F(y)) and (x + G(y)) mod p, one row per live y."""
    t = pair_tables(F, G, p)
    x = np.arange(p)
    Fy = t.F_values[t.live_ys]
    Gy = t.G_values[t.live_ys]
    return (x[None, :] + Fy[:, None]) % p, (x[None, :] + Gy[:, None]) % p


def lambda_counting(F: RationalFunction, G: RationalFunction, f0: GridFunction, f1: GridFunction,
                    f2: GridFunction) -> complex:
    """(1/p^2) sum_x sum*_y f0(x) f1(x + F(y)) f2(x + G(y))."""
    p = shared_prime(f0, f1, f2).p
    i1, i2 = _shift_indices(F, G, p)
    terms = f0.values[None, :] * f1.values[i1] * f2.values[i2]
    return csum(terms) / p**2


def count_progressions_in_set(F: RationalFunction, G: RationalFunction, A, p) -> int:
    """#{(x, y): y not a pole, x, x + F(y), x + G(y) all in A}."""
    p = as_prime(p).p
    member = np.zeros(p, dtype=bool)
    for a in A:
        member[int(a) % p] = True
    i1, i2 = _shift_indices(F, G, p)
    return int(np.count_nonzero(member[None, :] & member[i1] & member[i2]))


@dataclass(frozen=True, eq=False)
class KernelTable:
    entries: np.ndarray  # entries[n1, n2] = K(n1, n2)
    excluded_count: int
    prime: Prime

    def __getitem__(self, key):
        n1, n2 = key
        p = self.prime.p
        return complex(self.entries[n1 % p, n2 % p])


def kernel_table(F: RationalFunction, G: RationalFunction, p) -> KernelTable:
    """K(n1, n2) = E*_y e_p(n1 F(y) + n2 G(y)) for every (n1, n2)."""
    p = as_prime(p)
    entries = exp_sum_table(F, G, p.p) / p.p
    entries.setflags(write=False)
    return KernelTable(entries=entries, excluded_count=pair_tables(F, G, p).excluded_count, prime=p)


def _xi_value(xi, p: int) -> int:
    if isinstance(xi, FieldElement):
        if xi.modulus.p != p:
            raise PrimeMismatch(f"frequency lives in F_{xi.modulus.p}, functions in F_{p}")
        return xi.value
    return int(xi) % p


def twisted_two_term(F: RationalFunction, R: RationalFunction, f0: GridFunction, f1: GridFunction, xi) -> complex:
    """E*_{x,y} f0(x) f1(x + F(y)) e_p(xi R(y)), poles of F and R excluded."""
    if not check_linear_independence(F, R):
        raise DependentInput(f"1, {F}, {R} are linearly dependent over Q")
    p = shared_prime(f0, f1).p
    xi = _xi_value(xi, p)
    t = pair_tables(F, R, p)
    Fy = t.F_values[t.live_ys]
    phases = character_table(p)[(xi * t.G_values[t.live_ys]) % p]
    # sum_x f0(x) f1(x + F(y)) for each live y, then weight by the phase
    x = np.arange(p)
    terms = f0.values[None, :] * f1.values[(x[None, :] + Fy[:, None]) % p] * phases[:, None]
    return csum(terms) / p**2


def base_error_statistic(F: RationalFunction, R: RationalFunction, f0: GridFunction, f1: GridFunction, xi) -> float:
    """sqrt(p) |twisted - 1_{xi=0} E f0 E f1| / (||f0||_2 ||f1||_2); 0 when a norm vanishes."""
    p = shared_prime(f0, f1).p
    value = twisted_two_term(F, R, f0, f1, xi)
    main = f0.mean() * f1.mean() if _xi_value(xi, p) == 0 else 0.0
    scale = norm(f0, 2) * norm(f1, 2)
    if scale == 0:
        return 0.0
    return math.sqrt(p) * abs(value - main) / scale


def dual_function(F: RationalFunction, G: RationalFunction, f1: GridFunction, f2: GridFunction) -> GridFunction:
    """x -> E*_y f1(x + F(y)) f2(x + G(y))."""
    prime = shared_prime(f1, f2)
    p = prime.p
    i1, i2 = _shift_indices(F, G, p)
    terms = f1.values[i1] * f2.values[i2]
    values = [csum(terms[:, x]) / p for x in range(p)]
    return GridFunction(values, prime)


def dual_spectrum_constant(F: RationalFunction, G: RationalFunction, f1: GridFunction, f2: GridFunction) -> float:
    """||D^||_{l^inf} sqrt(p) / (||f1||_2 ||f2||_2), the recorded flat-spectrum constant."""
    D = dual_function(F, G, f1, f2)
    scale = norm(f1, 2) * norm(f2, 2)
    if scale == 0:
        return 0.0
    return norm(dft(D), math.inf) * math.sqrt(D.p) / scale


@dataclass(frozen=True)
class PetReport:
    lhs: float
    rhs: float
    y_count: int
    ratio: float
    holds: bool


def pet_bound(f0: GridFunction, f1: GridFunction, f2: GridFunction, y_count: int) -> float:
    """||f0||_2^1/2 ||f0^||_l4^1/2 ||f1||_2 ||f2||_2 (|Y| / p^3)^(1/8)."""
    p = shared_prime(f0, f1, f2).p
    return (
        math.sqrt(norm(f0, 2)) * math.sqrt(norm(dft(f0), 4)) * norm(f1, 2) * norm(f2, 2)
        * (y_count / p**3) ** 0.125
    )


def verify_pet_inequality(F: RationalFunction, G: RationalFunction, f0: GridFunction, f1: GridFunction,
                          f2: GridFunction, y_count: int) -> PetReport:
    lhs = abs(lambda_counting(F, G, f0, f1, f2))
    rhs = pet_bound(f0, f1, f2, y_count)
    if rhs > 0:
        ratio = lhs / rhs
    else:
        ratio = 0.0 if lhs == 0 else math.inf
    return PetReport(lhs=lhs, rhs=rhs, y_count=int(y_count), ratio=ratio, holds=ratio <= 1 + PET_RTOL)
