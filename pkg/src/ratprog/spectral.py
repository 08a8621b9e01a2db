"""Fourier analysis on F_p with the averaging normalization.

    f^(xi) = E_x f(x) e_p(-x xi),    f(x) = sum_xi f^(xi) e_p(xi x)

so Parseval reads ||f||_2 = ||f^||_{l^2}, with ||.||_r taken against the
uniform probability measure and ||.||_{l^r} against counting measure.
All accumulations go through :func:`csum` (``math.fsum`` on each part), which
makes every result independent of summation order.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import BoundViolation, NonpositiveEpsilon, PrimeMismatch, UnsupportedExponent
from .fp_arith import Prime, as_prime, character_table

# slack for bounds that can hold with equality (flat spectra at the threshold)
BOUND_RTOL = 1e-12


def csum(values) -> complex:
    """Correctly rounded sum of a complex array."""
    a = np.asarray(values)
    if np.iscomplexobj(a):
        return complex(math.fsum(a.real.ravel()), math.fsum(a.imag.ravel()))
    return complex(math.fsum(a.ravel()), 0.0)


def rsum(values) -> float:
    return math.fsum(np.asarray(values, dtype=np.float64).ravel())


def _frozen(values, p: int) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128)
    if arr.shape != (p,):
        raise ValueError(f"expected {p} values, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class GridFunction:
    """A function F_p -> C, stored as its p values."""

    values: np.ndarray
    prime: Prime

    def __post_init__(self):
        object.__setattr__(self, "prime", as_prime(self.prime))
        object.__setattr__(self, "values", _frozen(self.values, self.prime.p))

    @property
    def p(self) -> int:
        return self.prime.p

    @classmethod
    def ones(cls, p) -> "GridFunction":
        p = as_prime(p)
        return cls(np.ones(p.p), p)

    @classmethod
    def zeros(cls, p) -> "GridFunction":
        p = as_prime(p)
        return cls(np.zeros(p.p), p)

    @classmethod
    def delta(cls, p, a: int = 0) -> "GridFunction":
        p = as_prime(p)
        v = np.zeros(p.p)
        v[a % p.p] = 1.0
        return cls(v, p)

    @classmethod
    def indicator(cls, p, members) -> "GridFunction":
        p = as_prime(p)
        v = np.zeros(p.p)
        for a in members:
            v[int(a) % p.p] = 1.0
        return cls(v, p)

    @classmethod
    def character(cls, p, c: int) -> "GridFunction":
        """x -> e_p(c x)."""
        p = as_prime(p)
        x = np.arange(p.p)
        return cls(character_table(p.p)[(c * x) % p.p], p)

    def mean(self) -> complex:
        return csum(self.values) / self.p

    def __add__(self, other: "GridFunction") -> "GridFunction":
        _same_prime(self, other)
        return GridFunction(self.values + other.values, self.prime)

    def __sub__(self, other: "GridFunction") -> "GridFunction":
        _same_prime(self, other)
        return GridFunction(self.values - other.values, self.prime)

    def __mul__(self, c) -> "GridFunction":
        return GridFunction(self.values * c, self.prime)

    __rmul__ = __mul__

    def conj(self) -> "GridFunction":
        return GridFunction(np.conj(self.values), self.prime)

    def balanced(self) -> "GridFunction":
        """f - E f, the mean-zero part."""
        return GridFunction(self.values - self.mean(), self.prime)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Fourier coefficients indexed by frequency xi in F_p."""

    coefficients: np.ndarray
    prime: Prime

    def __post_init__(self):
        object.__setattr__(self, "prime", as_prime(self.prime))
        object.__setattr__(self, "coefficients", _frozen(self.coefficients, self.prime.p))

    @property
    def p(self) -> int:
        return self.prime.p

    @property
    def values(self) -> np.ndarray:
        return self.coefficients

    def __add__(self, other: "Spectrum") -> "Spectrum":
        _same_prime(self, other)
        return Spectrum(self.coefficients + other.coefficients, self.prime)


def _same_prime(a, b):
    if a.prime != b.prime:
        raise PrimeMismatch(f"functions live over F_{a.p} and F_{b.p}")


def _phase_matrix(p: int, sign: int) -> np.ndarray:
    k = np.arange(p)
    return character_table(p)[(sign * np.outer(k, k)) % p]


def dft(f: GridFunction) -> Spectrum:
    """Direct O(p^2) transform, one correctly rounded sum per frequency."""
    p = f.p
    terms = _phase_matrix(p, -1) * f.values[None, :]
    coeffs = np.array([csum(row) for row in terms]) / p
    return Spectrum(coeffs, f.prime)


def inverse_dft(S: Spectrum) -> GridFunction:
    p = S.p
    terms = _phase_matrix(p, 1) * S.coefficients[None, :]
    return GridFunction(np.array([csum(row) for row in terms]), S.prime)


def _moment(values: np.ndarray, r) -> float:
    mod = np.abs(values)
    if r == math.inf:
        return float(mod.max()) if mod.size else 0.0
    return rsum(mod**r)


def norm(obj, r) -> float:
    """L^r norm of a GridFunction (probability measure) or l^r norm of a Spectrum (counting)."""
    if r not in (1, 2, 4, math.inf):
        raise UnsupportedExponent(f"r must be 1, 2, 4 or inf, got {r}")
    if isinstance(obj, GridFunction):
        if r == math.inf:
            return _moment(obj.values, r)
        return (_moment(obj.values, r) / obj.p) ** (1.0 / r)
    if isinstance(obj, Spectrum):
        if r == math.inf:
            return _moment(obj.coefficients, r)
        return _moment(obj.coefficients, r) ** (1.0 / r)
    raise TypeError(f"norm expects a GridFunction or Spectrum, got {type(obj).__name__}")


def L2(f: GridFunction) -> float:
    return norm(f, 2)


@dataclass(frozen=True, eq=False)
class LevelSplit:
    g: Spectrum
    h: Spectrum
    epsilon: float
    threshold: float
    f_norm: float

    @property
    def g_l1_bound(self) -> float:
        return self.epsilon * math.sqrt(self.g.p) * self.f_norm

    @property
    def h_l4_bound(self) -> float:
        return self.epsilon**-0.5 * self.g.p**-0.25 * self.f_norm


def level_set_split(f: GridFunction, epsilon: float, spectrum: Spectrum | None = None) -> LevelSplit:
    """Split f^ at ||f||_2 / (eps sqrt p): strictly larger coefficients go to g, the rest to h.

    Both norm bounds ||g||_{l1} <= eps sqrt(p) ||f||_2 and
    ||h||_{l4} <= eps^(-1/2) p^(-1/4) ||f||_2 are checked before returning.
    """
    if not epsilon > 0:
        raise NonpositiveEpsilon(f"epsilon must be positive, got {epsilon}")
    S = spectrum if spectrum is not None else dft(f)
    p = f.p
    f_norm = norm(f, 2)
    # same value as f_norm / (eps sqrt p) with fewer roundings, so flat spectra sit exactly on it
    threshold = math.sqrt(_moment(f.values, 2)) / (epsilon * p)
    large = np.abs(S.coefficients) > threshold
    g = Spectrum(np.where(large, S.coefficients, 0), f.prime)
    h = Spectrum(np.where(large, 0, S.coefficients), f.prime)
    split = LevelSplit(g=g, h=h, epsilon=float(epsilon), threshold=threshold, f_norm=f_norm)
    g_l1, h_l4 = norm(g, 1), norm(h, 4)
    if g_l1 > split.g_l1_bound * (1 + BOUND_RTOL):
        raise BoundViolation(f"||g||_l1 = {g_l1!r} exceeds {split.g_l1_bound!r}")
    if h_l4 > split.h_l4_bound * (1 + BOUND_RTOL):
        raise BoundViolation(f"||h||_l4 = {h_l4!r} exceeds {split.h_l4_bound!r}")
    return split


def read_grid_csv(path, p) -> GridFunction:
    """Read ``index,re,im`` rows; every x in [0, p) must appear exactly once."""
    p = as_prime(p)
    values = np.full(p.p, np.nan + 0j)
    seen = set()
    with open(Path(path), newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or [c.strip() for c in reader.fieldnames] != ["index", "re", "im"]:
            raise ValueError(f"{path}: header must be 'index,re,im'")
        for line, row in enumerate(reader, start=2):
            x = int(row["index"])
            if not 0 <= x < p.p:
                raise ValueError(f"{path}:{line}: index {x} outside [0, {p.p})")
            if x in seen:
                raise ValueError(f"{path}:{line}: duplicate index {x}")
            seen.add(x)
            values[x] = complex(float(row["re"]), float(row["im"]))
    missing = sorted(set(range(p.p)) - seen)
    if missing:
        raise ValueError(f"{path}: missing rows for indices {missing[:10]}{'...' if len(missing) > 10 else ''}")
    return GridFunction(values, p)


def write_grid_csv(path, f: GridFunction) -> None:
    with open(Path(path), "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["index", "re", "im"])
        for x, v in enumerate(f.values):
            w.writerow([x, repr(float(v.real)), repr(float(v.imag))])
