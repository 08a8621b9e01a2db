from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..errors import BadPrime
from ..fp_arith import Prime, as_prime
from ..goodprime import is_good_prime
from ..ratfield.rational import Pole, RationalFunction
from ..tables import PairTables, pair_tables


@dataclass(frozen=True, eq=False)
class RothEquations:
    """The five Roth equations specialised to F_p, backed by value tables.

    A tuple (y1, ..., y8) is a point of Y(F_p) iff no coordinate is a pole of
    F or G and all five residuals vanish.
    """

    F: RationalFunction
    G: RationalFunction
    prime: Prime
    tables: PairTables

    @property
    def p(self) -> int:
        return self.prime.p

    @property
    def pole_set(self) -> frozenset[int]:
        return self.tables.poles

    def residuals(self, ys: Sequence[int]):
        """The five left-hand sides mod p, or ``Pole`` if a coordinate is a pole."""
        if len(ys) != 8:
            raise ValueError("a Roth tuple has 8 coordinates")
        t = self.tables
        ys = [int(y) % self.p for y in ys]
        if not all(t.live[y] for y in ys):
            return Pole
        F = [int(t.F_values[y]) for y in ys]
        G = [int(t.G_values[y]) for y in ys]
        H = [f - g for f, g in zip(F, G)]
        p = self.p
        return (
            (H[0] - H[1] - H[2] + H[3]) % p,
            (H[4] - H[5] - H[6] + H[7]) % p,
            (F[0] - F[2] - F[4] + F[6]) % p,
            (F[1] - F[3] - F[5] + F[7]) % p,
            (G[2] - G[3] - G[6] + G[7]) % p,
        )

    def is_point(self, ys: Sequence[int]) -> bool:
        r = self.residuals(ys)
        return r is not Pole and not any(r)


def ensure_good_prime(F: RationalFunction, G: RationalFunction, p) -> Prime:
    p = as_prime(p)
    verdict = is_good_prime(F, G, p)
    if not verdict:
        raise BadPrime(f"p = {p.p} is excluded for ({F}, {G}): " + "; ".join(verdict.reasons))
    return p


def specialize_equations(F: RationalFunction, G: RationalFunction, p) -> RothEquations:
    p = ensure_good_prime(F, G, p)
    return RothEquations(F=F, G=G, prime=p, tables=pair_tables(F, G, p))
