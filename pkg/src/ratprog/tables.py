"""Per-(F, G, p) value tables with the union of both pole sets removed."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .fp_arith import as_prime
from .ratfield.rational import RationalFunction


@dataclass(frozen=True, eq=False)
class PairTables:
    p: int
    F_values: np.ndarray  # int64, meaningful only where live
    G_values: np.ndarray
    live: np.ndarray  # bool: y is a pole of neither F nor G
    live_ys: np.ndarray  # int64 indices of live points, ascending

    @property
    def poles(self) -> frozenset[int]:
        return frozenset(int(y) for y in np.flatnonzero(~self.live))

    @property
    def excluded_count(self) -> int:
        return self.p - len(self.live_ys)


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@lru_cache(maxsize=256)
def _pair_tables(F: RationalFunction, G: RationalFunction, p: int) -> PairTables:
    Fv, Fpole = F.value_table(p)
    Gv, Gpole = G.value_table(p)
    live = ~(Fpole | Gpole)
    return PairTables(
        p=p,
        F_values=_readonly(Fv),
        G_values=_readonly(Gv),
        live=_readonly(live),
        live_ys=_readonly(np.flatnonzero(live).astype(np.int64)),
    )


def pair_tables(F: RationalFunction, G: RationalFunction, p) -> PairTables:
    return _pair_tables(F, G, as_prime(p).p)


def preimage_multimap(values: np.ndarray, live_ys: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """CSR layout of v -> {y live : values[y] = v}: ys[ptr[v]:ptr[v+1]]."""
    v = values[live_ys]
    order = np.argsort(v, kind="stable")
    ys = live_ys[order].astype(np.int64)
    counts = np.bincount(v, minlength=p)
    ptr = np.zeros(p + 1, dtype=np.int64)
    np.cumsum(counts, out=ptr[1:])
    return ptr, ys
