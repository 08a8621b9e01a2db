"""Computable surrogate for the finitely many primes excluded for a pair (F, G)."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DependentInput
from .fp_arith import as_prime
from .ratfield.poly import resultant
from .ratfield.rational import RationalFunction, check_linear_independence


@dataclass(frozen=True)
class GoodPrimeVerdict:
    prime: int
    good: bool
    reasons: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.good


def _constant_mod_p(R: RationalFunction, p: int) -> bool:
    # a/b is constant mod p iff the coefficient rows of a and b are proportional
    a, b = R.numerator.reduce_mod(p), R.denominator.reduce_mod(p)
    if not a or not b:
        return True
    n = max(len(a), len(b))
    rows = [list(a) + [0] * (n - len(a)), list(b) + [0] * (n - len(b))]
    # rank over F_p of a 2 x n matrix: some 2x2 minor nonzero mod p
    for i in range(n):
        for j in range(i + 1, n):
            if (rows[0][i] * rows[1][j] - rows[0][j] * rows[1][i]) % p:
                return False
    return True


def is_good_prime(F: RationalFunction, G: RationalFunction, p) -> GoodPrimeVerdict:
    """True iff p leaves every listed invariant of (F, G) intact.

    Checked: leading coefficients and num/den resultants of F, G, F', G',
    G'-F' and (G'/F')', plus nonconstancy mod p of G'/F' (the D-tilde
    witness) and of the E-tilde summand (F'-G')(G'/F')/(G'/F')'.
    """
    p = as_prime(p).p
    if not check_linear_independence(F, G):
        raise DependentInput(f"1, {F}, {G} are linearly dependent over Q")
    dF, dG = F.derivative(), G.derivative()
    ratio = dG / dF
    curvature = ratio.derivative()
    summand = (dF - dG) * ratio / curvature
    reasons = []
    named = {"F": F, "G": G, "F'": dF, "G'": dG, "G'-F'": dG - dF, "(G'/F')'": curvature}
    for name, R in named.items():
        for part, poly in (("numerator", R.numerator), ("denominator", R.denominator)):
            if poly.leading % p == 0:
                reasons.append(f"p divides the leading coefficient {poly.leading} of the {part} of {name}")
        res = resultant(R.numerator, R.denominator)
        if res % p == 0:
            reasons.append(f"p divides the resultant {res} of numerator and denominator of {name}")
    if _constant_mod_p(ratio, p):
        reasons.append("G'/F' is constant mod p, so D-tilde vanishes identically")
    if _constant_mod_p(summand, p):
        reasons.append("the E-tilde summand is constant mod p, so E-tilde vanishes identically")
    return GoodPrimeVerdict(prime=p, good=not reasons, reasons=reasons)


def good_primes(F: RationalFunction, G: RationalFunction, primes) -> tuple[list[int], list[GoodPrimeVerdict]]:
    """Split ``primes`` into the good ones and verdicts for the rejected ones."""
    good, bad = [], []
    for q in primes:
        v = is_good_prime(F, G, q)
        (good if v else bad).append(q if v else v)
    return good, bad
