"""Three independent point counts for the Roth variety, and the stratified count."""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np

from .. import kernels
from ..errors import PrimeTooLarge, RoundingFailure
from ..fp_arith import as_prime, character_table
from ..ratfield.rational import RationalFunction
from ..ratfield.stratification import build_stratification_bundle
from ..tables import pair_tables, preimage_multimap
from .equations import RothEquations, ensure_good_prime, specialize_equations

BRUTE_MAX_PRIME = 11
STRATIFY_MAX_PRIME = 31
ROUNDING_LIMIT = 0.4


def count_points_brute(eqs: RothEquations, threads: int = 1) -> int:
    """|Y(F_p)| by scanning every live 8-tuple; p <= 11 only."""
    if eqs.p > BRUTE_MAX_PRIME:
        raise PrimeTooLarge(f"brute force needs p <= {BRUTE_MAX_PRIME}, got {eqs.p}")
    t = eqs.tables
    ys = np.ascontiguousarray(t.live_ys)
    Fv, Gv = np.ascontiguousarray(t.F_values), np.ascontiguousarray(t.G_values)
    parts = kernels.map_slices(
        lambda lo, hi: kernels.brute_count(lo, hi, ys, Fv, Gv, eqs.p), len(ys), threads
    )
    return int(sum(parts))


def _staged(eqs: RothEquations, threads: int, strat=None) -> np.ndarray:
    t = eqs.tables
    p = eqs.p
    ys = np.ascontiguousarray(t.live_ys)
    Fv, Gv = np.ascontiguousarray(t.F_values), np.ascontiguousarray(t.G_values)
    Fptr, Fidx = preimage_multimap(Fv, ys, p)
    Gptr, Gidx = preimage_multimap(Gv, ys, p)
    classify = strat is not None
    if strat is None:
        strat = np.zeros((6, 1), dtype=np.int64)
    parts = kernels.map_slices(
        lambda lo, hi: kernels.staged_count(lo, hi, ys, Fv, Gv, Fptr, Fidx, Gptr, Gidx, p, classify, strat),
        len(ys),
        threads,
    )
    return np.sum(parts, axis=0) if parts else np.zeros(6, dtype=np.int64)


def count_points_staged(eqs: RothEquations, F: RationalFunction | None = None,
                        G: RationalFunction | None = None, threads: int = 1) -> int:
    """|Y(F_p)| following the y1..y5 -> y7 -> y8 -> y6 solving order.

    ``F`` and ``G`` are optional and only checked against the pair ``eqs`` was built from.
    """
    if (F is not None and F != eqs.F) or (G is not None and G != eqs.G):
        raise ValueError("F, G differ from the pair the equations were specialised for")
    return int(_staged(eqs, threads)[0])


@dataclass(frozen=True)
class CharsumCount:
    count: int
    value: float  # p^-5 * sum |U|^2 before rounding
    imag: float
    rounding_distance: float


@lru_cache(maxsize=32)
def exp_sum_table(F: RationalFunction, G: RationalFunction, p: int) -> np.ndarray:
    """T[a, b] = sum over non-pole y of e_p(a F(y) + b G(y)); read-only p x p array."""
    t = pair_tables(F, G, p)
    chars = character_table(p)
    F_live = np.ascontiguousarray(t.F_values[t.live_ys])
    G_live = np.ascontiguousarray(t.G_values[t.live_ys])
    re, im = np.ascontiguousarray(chars.real), np.ascontiguousarray(chars.imag)
    rows = kernels.map_slices(
        lambda lo, hi: kernels.exp_sum_rows(lo, hi, F_live, G_live, re, im, p), p, chunk=p
    )
    T = np.vstack(rows)
    T.setflags(write=False)
    return T


def charsum_count_details(F: RationalFunction, G: RationalFunction, p, threads: int = 1) -> CharsumCount:
    p = ensure_good_prime(F, G, p).p
    T = exp_sum_table(F, G, p)
    partials = kernels.map_slices(lambda lo, hi: kernels.charsum_partials(lo, hi, T, p), p, threads)
    total = math.fsum(float(x) for part in partials for x in part)
    value = total / p**5
    nearest = round(value)
    distance = abs(value - nearest)
    if distance > ROUNDING_LIMIT:
        raise RoundingFailure(f"character sum gave {value!r}, {distance:.3g} from the nearest integer")
    # sum of |U|^2 is real by construction
    return CharsumCount(count=int(nearest), value=value, imag=0.0, rounding_distance=distance)


def count_points_charsum(F: RationalFunction, G: RationalFunction, p, threads: int = 1) -> int:
    """|Y(F_p)| = p^-5 sum_{a,b,b'} |U(a,b,b')|^2 via character orthogonality, O(p^4)."""
    return charsum_count_details(F, G, p, threads).count


@dataclass(frozen=True)
class StratumCounts:
    total: int
    y_gen: int
    y_low: int
    z_good: int
    z_bad: int
    z_low: int
    prime: int

    def as_dict(self) -> dict:
        d = asdict(self)
        d.pop("prime")
        return d

    def partition_holds(self) -> bool:
        return self.total == self.y_gen + self.y_low + self.z_good + self.z_bad + self.z_low


def stratum_tables(F: RationalFunction, G: RationalFunction, p: int) -> np.ndarray:
    """Rows indexed by y: F', G', derivatives-defined, curvature-zero-or-undefined,
    E-tilde summand value, summand-defined."""
    b = build_stratification_bundle(F, G, verify_determinant=False)
    dF, dF_pole = b.dF.value_table(p)
    dG, dG_pole = b.dG.value_table(p)
    curv_num = np.array([b.curvature.numerator.eval_mod(y, p) for y in range(p)])
    curv_den = np.array([b.curvature.denominator.eval_mod(y, p) for y in range(p)])
    S, S_pole = b.summand.value_table(p)
    strat = np.zeros((6, p), dtype=np.int64)
    strat[0] = dF
    strat[1] = dG
    strat[2] = ~(dF_pole | dG_pole)
    strat[3] = (curv_num == 0) | (curv_den == 0)
    strat[4] = S
    strat[5] = ~S_pole
    return strat


def stratify_points(F: RationalFunction, G: RationalFunction, p, threads: int = 1,
                    max_prime: int = STRATIFY_MAX_PRIME) -> StratumCounts:
    """Assign every point of Y(F_p) to exactly one of the five strata.

    Cascade: D != 0 -> y_gen; F'(y1..y4)(G'-F')(y5) = 0 -> y_low;
    (G'/F')'(y1)(G'/F')'(y4) = 0 -> z_low; E-tilde(y1, y4) = 0 -> z_bad;
    otherwise z_good.  Points where a needed derivative is undefined go to
    y_low, and where the summand of E-tilde is undefined to z_low.
    """
    eqs = specialize_equations(F, G, p)
    if eqs.p > max_prime:
        raise PrimeTooLarge(f"stratification is limited to p <= {max_prime}, got {eqs.p}")
    counts = _staged(eqs, threads, stratum_tables(F, G, eqs.p))
    return StratumCounts(
        total=int(counts[0]),
        y_gen=int(counts[1 + kernels.Y_GEN]),
        y_low=int(counts[1 + kernels.Y_LOW]),
        z_good=int(counts[1 + kernels.Z_GOOD]),
        z_bad=int(counts[1 + kernels.Z_BAD]),
        z_low=int(counts[1 + kernels.Z_LOW]),
        prime=eqs.p,
    )


def diagonal_lower_bound(F: RationalFunction, G: RationalFunction, p) -> int:
    """(p - |poles|)^2: tuples with y1 = y2 = y3 = y4 and y5 = y6 = y7 = y8 always lie on Y."""
    t = pair_tables(F, G, as_prime(p))
    return len(t.live_ys) ** 2


METHODS = ("brute", "staged", "charsum")


def count_points(F: RationalFunction, G: RationalFunction, p, method: str = "charsum", threads: int = 1) -> dict:
    """Run one counter and return the JSON record {prime, method, count, wall_time_ms}."""
    start = time.perf_counter()
    if method == "charsum":
        count = count_points_charsum(F, G, p, threads=threads)
    elif method in ("brute", "staged"):
        eqs = specialize_equations(F, G, p)
        if method == "brute":
            count = count_points_brute(eqs, threads=threads)
        else:
            count = count_points_staged(eqs, threads=threads)
    else:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    return {
        "prime": int(p),
        "method": method,
        "count": count,
        "wall_time_ms": round((time.perf_counter() - start) * 1000.0, 3),
    }


@lru_cache(maxsize=128)
def variety_size(F: RationalFunction, G: RationalFunction, p: int) -> int:
    """Memoised |Y(F_p)|: staged enumeration for p <= 61, character sums above."""
    p = as_prime(p).p
    if p <= 61:
        return count_points_staged(specialize_equations(F, G, p))
    return count_points_charsum(F, G, p)
