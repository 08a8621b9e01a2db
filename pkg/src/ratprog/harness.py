"""Seeded experiments: slope fits, error sweeps, the proof-chain report and extremal set search.

Every random object is drawn from a Philox stream keyed by (seed, prime, trial),
so any single record can be regenerated without replaying the rest of a sweep.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import DependentInput, InsufficientData
from .fp_arith import FieldElement, as_prime, primitive_root
from .kernels import map_slices
from .progression import (
    count_progressions_in_set,
    base_error_statistic,
    dual_function,
    lambda_counting,
    pet_bound,
    shared_prime,
)
from .ratfield.rational import Pole, RationalFunction, check_linear_independence
from .roth.counting import variety_size
from .spectral import GridFunction, csum, dft, inverse_dft, level_set_split, norm
from .tables import pair_tables

CHAIN_RTOL = 1e-9

# stream ids keep unrelated draws for the same (seed, prime, trial) independent
STREAM_SIGNS, STREAM_SET, STREAM_SEARCH = 0, 1, 2


def rng_for(seed: int, p: int, trial: int, stream: int = STREAM_SIGNS) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=int(seed), counter=[int(stream), int(trial), int(p), 0]))


def random_sign_function(p, rng: np.random.Generator) -> GridFunction:
    p = as_prime(p)
    return GridFunction(rng.choice(np.array([-1.0, 1.0]), size=p.p), p)


def random_set(p, density: float, rng: np.random.Generator) -> list[int]:
    p = as_prime(p).p
    return [int(x) for x in np.flatnonzero(rng.random(p) < density)]


def _as_float(z) -> float | dict:
    return {"re": float(z.real), "im": float(z.imag)} if isinstance(z, complex) else float(z)


# ---------------------------------------------------------------- slope fits

@dataclass(frozen=True)
class SlopeFit:
    primes: tuple
    counts: tuple
    slope: float
    constant: float
    residual: float


def fit_slope(primes, counts) -> SlopeFit:
    """Least squares line through (log p, log count); constant is the geometric mean of count / p^slope."""
    primes, counts = tuple(int(q) for q in primes), tuple(int(c) for c in counts)
    if len(primes) < 3:
        raise InsufficientData(f"a slope fit needs at least 3 primes, got {len(primes)}")
    if len(primes) != len(counts):
        raise ValueError("primes and counts differ in length")
    if any(b <= a for a, b in zip(primes, primes[1:])):
        raise ValueError("primes must be strictly increasing")
    if any(c <= 0 for c in counts):
        raise ValueError("counts must be positive")
    x = np.log(np.array(primes, dtype=float))
    y = np.log(np.array(counts, dtype=float))
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    constant = math.exp(float(np.mean(y - slope * x)))
    return SlopeFit(primes, counts, float(slope), constant, float(math.sqrt(float(resid @ resid))))


def slope_regression(F: RationalFunction, G: RationalFunction, primes, threads: int = 1) -> SlopeFit:
    primes = sorted(int(q) for q in primes)
    if len(primes) < 3:
        raise InsufficientData(f"a slope fit needs at least 3 primes, got {len(primes)}")
    from .roth.counting import count_points_charsum, count_points_staged
    from .roth.equations import specialize_equations

    counts = []
    for q in primes:
        if q <= 61:
            counts.append(count_points_staged(specialize_equations(F, G, q), threads=threads))
        else:
            counts.append(count_points_charsum(F, G, q, threads=threads))
    return fit_slope(primes, counts)


# ---------------------------------------------------------------- error sweeps

@dataclass
class ErrorSweep:
    experiment: str
    exponent: float
    seed: int
    parameters: dict
    records: list = field(default_factory=list)

    def max_by_prime(self) -> dict[int, float]:
        out: dict[int, float] = {}
        for r in self.records:
            out[r["prime"]] = max(out.get(r["prime"], 0.0), r["statistic"])
        return out

    def summary(self) -> dict:
        by_prime = self.max_by_prime()
        primes = sorted(by_prime)
        s = {"max_statistic_by_prime": {str(q): by_prime[q] for q in primes}}
        if len(primes) >= 2 and by_prime[primes[0]] > 0:
            s["growth_ratio"] = by_prime[primes[-1]] / by_prime[primes[0]]
        return s

    def report(self) -> dict:
        return make_report(self.experiment, dict(self.parameters, exponent=self.exponent), self.seed,
                           self.records, self.summary())


def main_theorem_sweep(F: RationalFunction, G: RationalFunction, primes, trials: int, density: float,
                       seed: int, threads: int = 1) -> ErrorSweep:
    """p^(1/10) |Lambda*(1_A, 1_A, 1_A) - (|A|/p)^3| / ||1_A||_2^3 for random A of the given density."""
    primes = [int(q) for q in primes]

    def one(p: int, trial: int) -> dict:
        A = random_set(p, density, rng_for(seed, p, trial, STREAM_SET))
        ind = GridFunction.indicator(p, A)
        lam = lambda_counting(F, G, ind, ind, ind)
        mean = len(A) / p
        error = abs(lam - mean**3)
        nrm = math.sqrt(mean)
        stat = 0.0 if not A else p**0.1 * error / nrm**3
        return {"prime": p, "trial": trial, "seed": seed, "size": len(A), "lambda": _as_float(lam),
                "main": mean**3, "error": error, "norm_product": nrm**3, "statistic": stat}

    records = _run_trials(one, primes, trials, threads)
    return ErrorSweep("main", 0.1, seed, {"F": str(F), "G": str(G), "primes": primes, "trials": trials,
                                          "density": density}, records)


def base_constant_sweep(F: RationalFunction, R: RationalFunction, primes, trials: int, seed: int,
                        threads: int = 1) -> ErrorSweep:
    """sqrt(p)-normalised error of the twisted two-term average at xi in {0, 1, g}, g a primitive root."""
    if not check_linear_independence(F, R):
        raise DependentInput(f"1, {F}, {R} are linearly dependent over Q")
    primes = [int(q) for q in primes]

    def one(p: int, trial: int) -> list[dict]:
        rng = rng_for(seed, p, trial)
        f0, f1 = random_sign_function(p, rng), random_sign_function(p, rng)
        out = []
        for xi in sorted({0, 1, primitive_root(p)}):
            stat = base_error_statistic(F, R, f0, f1, xi)
            out.append({"prime": p, "trial": trial, "seed": seed, "xi": xi, "statistic": stat})
        return out

    records = [r for group in _run_trials(one, primes, trials, threads) for r in group]
    return ErrorSweep("base", 0.5, seed, {"F": str(F), "R": str(R), "primes": primes, "trials": trials}, records)


def _run_trials(one, primes, trials: int, threads: int) -> list:
    jobs = [(p, t) for p in primes for t in range(trials)]
    parts = map_slices(lambda lo, hi: [one(*jobs[i]) for i in range(lo, hi)], len(jobs), threads)
    return [r for part in parts for r in part]


# ---------------------------------------------------------------- proof chain

@dataclass(frozen=True)
class ProofChainReport:
    epsilon: float
    g_term: float
    h_term: float
    base_term: float
    actual_lambda: complex
    main_term: complex
    deviation: float
    bound_total: float
    dual_constant: float
    y_count: int
    checks: dict
    holds: bool

    def as_dict(self) -> dict:
        d = asdict(self)
        d["actual_lambda"] = _as_float(self.actual_lambda)
        d["main_term"] = _as_float(self.main_term)
        return d


def _le(a: float, b: float, scale: float) -> bool:
    return a <= b * (1 + CHAIN_RTOL) + CHAIN_RTOL * scale


def proof_chain_report(F: RationalFunction, G: RationalFunction, f0: GridFunction, f1: GridFunction,
                       f2: GridFunction, epsilon: float | None = None, y_count: int | None = None) -> ProofChainReport:
    """Run the degree-lowering argument on concrete inputs.

    Lambda - main = E f2 (Lambda2(f0, f1) - E f0 E f1) + Lambda(g, f1, f2') + Lambda(h, f1, f2'),
    with f2' = f2 - E f2 and f0 = g + h split at the Fourier level ||f0||_2 / (eps sqrt p).
    The first piece is bounded by its exact modulus, the second through the
    dual function's spectrum and the third by the U^2 inequality.
    """
    prime = shared_prime(f0, f1, f2)
    p = prime.p
    eps = p**-0.1 if epsilon is None else float(epsilon)
    Y = variety_size(F, G, p) if y_count is None else int(y_count)
    ones = GridFunction.ones(prime)
    scale = norm(f0, 2) * norm(f1, 2) * norm(f2, 2)

    lam = lambda_counting(F, G, f0, f1, f2)
    m0, m1, m2 = f0.mean(), f1.mean(), f2.mean()
    main = m0 * m1 * m2
    f2b = f2.balanced()

    base_piece = m2 * (lambda_counting(F, G, f0, f1, ones) - m0 * m1)
    split = level_set_split(f0, eps)
    g_fn, h_fn = inverse_dft(split.g), inverse_dft(split.h)
    D = dual_function(F, G, f1, f2b)
    D_hat = dft(D)

    g_piece = lambda_counting(F, G, g_fn, f1, f2b)
    g_via_dual = csum(g_fn.values * D.values) / p
    h_piece = lambda_counting(F, G, h_fn, f1, f2b)

    base_term = abs(base_piece)
    g_term = norm(split.g, 1) * norm(D_hat, math.inf)
    h_term = pet_bound(h_fn, f1, f2b, Y)
    f12 = norm(f1, 2) * norm(f2b, 2)
    dual_constant = norm(D_hat, math.inf) * math.sqrt(p) / f12 if f12 > 0 else 0.0

    deviation = abs(lam - main)
    bound_total = base_term + g_term + h_term
    checks = {
        "decomposition": abs(lam - main - (base_piece + g_piece + h_piece)) <= CHAIN_RTOL * max(scale, 1e-300),
        "duality": abs(g_piece - g_via_dual) <= CHAIN_RTOL * max(scale, 1e-300),
        "g_split_bound": _le(norm(split.g, 1), split.g_l1_bound, 0.0),
        "h_split_bound": _le(norm(split.h, 4), split.h_l4_bound, 0.0),
        "g_dual_control": _le(abs(g_piece), g_term, scale),
        "g_flat_spectrum": _le(g_term, eps * norm(f0, 2) * f12 * dual_constant, scale),
        "h_gowers_control": _le(abs(h_piece), h_term, scale),
    }
    holds = _le(deviation, bound_total, scale) and all(checks.values())
    return ProofChainReport(eps, g_term, h_term, base_term, lam, main, deviation, bound_total,
                            dual_constant, Y, checks, holds)


# ---------------------------------------------------------------- progression-free sets

def nontrivial_shifts(F: RationalFunction, G: RationalFunction, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Distinct (F(y), G(y)) over non-pole y, minus (0, 0)."""
    t = pair_tables(F, G, p)
    pairs = {(int(t.F_values[y]), int(t.G_values[y])) for y in t.live_ys}
    pairs.discard((0, 0))
    pairs = sorted(pairs)
    return np.array([a for a, _ in pairs], dtype=np.int64), np.array([b for _, b in pairs], dtype=np.int64)


def _creates_progression(member: np.ndarray, x: int, a: np.ndarray, b: np.ndarray, p: int) -> bool:
    m = member.copy()
    m[x] = True
    if (m[(x + a) % p] & m[(x + b) % p]).any():
        return True
    z = (x - a) % p
    if (m[z] & m[(z + b) % p]).any():
        return True
    z = (x - b) % p
    return bool((m[z] & m[(z + a) % p]).any())


def _greedy_fill(member: np.ndarray, order, a, b, p) -> None:
    for x in order:
        x = int(x)
        if not member[x] and not _creates_progression(member, x, a, b, p):
            member[x] = True


def is_progression_free(F: RationalFunction, G: RationalFunction, A, p) -> bool:
    """Exhaustive check in exact field arithmetic, independent of the search's value tables."""
    prime = as_prime(p)
    A = {int(x) % prime.p for x in A}
    for y in range(prime.p):
        fy, gy = F.evaluate_mod_p(FieldElement(y, prime)), G.evaluate_mod_p(FieldElement(y, prime))
        if fy is Pole or gy is Pole or (fy.value == 0 and gy.value == 0):
            continue
        for x in A:
            if (x + fy.value) % prime.p in A and (x + gy.value) % prime.p in A:
                return False
    return True


@dataclass(frozen=True)
class ExtremalResult:
    members: tuple
    size: int
    verified: bool
    trivial_only: bool
    restart_sizes: tuple
    strategy: str

    def as_dict(self) -> dict:
        return asdict(self)


STRATEGIES = ("greedy", "hill")


def extremal_search(F: RationalFunction, G: RationalFunction, p, strategy: str = "greedy", restarts: int = 1,
                    seed: int = 0, steps: int = 200) -> ExtremalResult:
    """Largest progression-free set found over ``restarts`` seeded runs.

    greedy inserts in a random order whenever no progression appears; hill starts
    from a greedy set and repeatedly drops one element then refills greedily,
    keeping moves that do not shrink the set.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    p = as_prime(p).p
    a, b = nontrivial_shifts(F, G, p)
    best, sizes = None, []
    for r in range(restarts):
        rng = rng_for(seed, p, r, STREAM_SEARCH)
        member = np.zeros(p, dtype=bool)
        _greedy_fill(member, rng.permutation(p), a, b, p)
        if strategy == "hill":
            for _ in range(steps):
                current = np.flatnonzero(member)
                trial = member.copy()
                if current.size:
                    trial[int(rng.choice(current))] = False
                _greedy_fill(trial, rng.permutation(p), a, b, p)
                if trial.sum() >= member.sum():
                    member = trial
        sizes.append(int(member.sum()))
        if best is None or member.sum() > best.sum():
            best = member
    members = tuple(int(x) for x in np.flatnonzero(best))
    t = pair_tables(F, G, p)
    zero_pairs = int(np.count_nonzero((t.F_values[t.live_ys] == 0) & (t.G_values[t.live_ys] == 0)))
    trivial_only = count_progressions_in_set(F, G, members, p) == len(members) * zero_pairs
    return ExtremalResult(members, len(members), is_progression_free(F, G, members, p), trivial_only,
                          tuple(sizes), strategy)


# ---------------------------------------------------------------- density probe

def density_probe(F: RationalFunction, G: RationalFunction, primes, densities, trials: int, seed: int,
                  threads: int = 1) -> dict:
    """For random A of each density, compare the progression count with |A|^3 / (2p).

    The summary gives, per prime, the smallest density at which every trial
    reaches that level.
    """
    primes = [int(q) for q in primes]
    densities = sorted(float(d) for d in densities)

    def one(p: int, trial: int) -> list[dict]:
        out = []
        for k, d in enumerate(densities):
            A = random_set(p, d, rng_for(seed, p, trial * len(densities) + k, STREAM_SET))
            count = count_progressions_in_set(F, G, A, p)
            target = 0.5 * len(A) ** 3 / p
            out.append({"prime": p, "trial": trial, "seed": seed, "density": d, "size": len(A),
                        "count": count, "target": target, "reached": bool(A) and count >= target})
        return out

    records = [r for group in _run_trials(one, primes, trials, threads) for r in group]
    smallest = {}
    for q in primes:
        ok = [d for d in densities if all(r["reached"] for r in records if r["prime"] == q and r["density"] == d)]
        smallest[str(q)] = ok[0] if ok else None
    return make_report("density", {"F": str(F), "G": str(G), "primes": primes, "densities": densities,
                                   "trials": trials}, seed, records, {"smallest_density": smallest})


# ---------------------------------------------------------------- reports

def make_report(experiment: str, parameters: dict, seed, records: list, summary: dict) -> dict:
    return {"experiment": experiment, "parameters": parameters, "seed": seed, "records": records, "summary": summary}


def _flatten(record: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in record.items():
        if isinstance(v, dict):
            out.update(_flatten(v, f"{prefix}{k}."))
        elif isinstance(v, (list, tuple)):
            out[prefix + k] = " ".join(str(x) for x in v)
        else:
            out[prefix + k] = v
    return out


def records_to_csv(records: list) -> str:
    rows = [_flatten(r) for r in records]
    columns = []
    for r in rows:
        columns.extend(c for c in r if c not in columns)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def report_to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False)
