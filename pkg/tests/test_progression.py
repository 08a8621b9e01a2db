import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ratprog.errors import DependentInput, PrimeMismatch
from ratprog.fp_arith import Prime
from ratprog.progression import (
    base_error_statistic,
    count_progressions_in_set,
    dual_function,
    dual_spectrum_constant,
    kernel_table,
    lambda_counting,
    twisted_two_term,
    verify_pet_inequality,
)
from ratprog.ratfield import parse_rational_function as P
from ratprog.spectral import GridFunction, csum, dft

T, T2 = P("t"), P("t^2")


def signs(p, rng):
    return GridFunction(rng.choice([-1.0, 1.0], size=p), p)


def test_lambda_examples():
    one5 = GridFunction.ones(5)
    assert lambda_counting(T, T2, one5, one5, one5) == 1
    one7 = GridFunction.ones(7)
    assert math.isclose(lambda_counting(P("1/t"), P("1/t^2"), one7, one7, one7).real, 6 / 7, rel_tol=1e-15)
    d = GridFunction.delta(5)
    assert math.isclose(lambda_counting(T, T2, d, d, d).real, 1 / 25)
    with pytest.raises(PrimeMismatch):
        lambda_counting(T, T2, one5, one7, one5)


def test_set_count_examples():
    assert count_progressions_in_set(T, T2, range(7), 7) == 49
    assert count_progressions_in_set(T, T2, [], 7) == 0
    assert count_progressions_in_set(T, T2, [0], 5) == 1


@pytest.mark.parametrize("p", [5, 11, 31])
def test_set_count_matches_operator(p, corpus):
    rng = np.random.default_rng(p)
    for F, G in corpus:
        A = np.flatnonzero(rng.random(p) < 0.5)
        ind = GridFunction.indicator(p, A)
        lam = lambda_counting(F, G, ind, ind, ind)
        assert abs(p**2 * lam - count_progressions_in_set(F, G, A, p)) < 1e-6


def test_kernel_examples():
    K = kernel_table(T, T2, 5)
    assert K[0, 0] == 1
    assert abs(K[1, 0]) < 1e-15
    assert math.isclose(abs(K[0, 1]), 5**-0.5, rel_tol=1e-12)
    Kinv = kernel_table(P("1/t"), P("1/t^2"), 7)
    assert Kinv.excluded_count == 1 and Kinv[0, 0] == 6 / 7


@pytest.mark.parametrize("p", [5, 13, 31])
def test_kernel_symmetry_and_size(p, corpus):
    for F, G in corpus:
        K = kernel_table(F, G, p).entries
        neg = (-np.arange(p)) % p
        assert np.max(np.abs(K[np.ix_(neg, neg)] - np.conj(K))) < 1e-12
        assert np.all(np.abs(K) <= 1 + 1e-12)


def test_twisted_examples():
    one = GridFunction.ones(5)
    assert twisted_two_term(T, T2, one, one, 0) == 1
    assert math.isclose(abs(twisted_two_term(T, T2, one, one, 1)), 5**-0.5, rel_tol=1e-12)
    assert twisted_two_term(T, T2, GridFunction.zeros(5), one, 2) == 0
    assert twisted_two_term(T, T2, one, one, Prime(5)(1)) == twisted_two_term(T, T2, one, one, 1)
    assert math.isclose(base_error_statistic(T, T2, one, one, 1), 1.0, rel_tol=1e-12)
    assert base_error_statistic(T, T2, one, one, 0) == 0
    with pytest.raises(DependentInput):
        twisted_two_term(T, P("3t - 1"), one, one, 1)


def test_dual_examples():
    p = 11
    one = GridFunction.ones(p)
    assert np.allclose(dual_function(T, T2, one, one).values, 1)
    rng = np.random.default_rng(0)
    f2 = signs(p, rng).balanced()
    assert abs(dual_function(T, T2, one, f2).mean()) < 1e-15
    c = dual_spectrum_constant(T, T2, signs(p, rng), signs(p, rng))
    assert math.isfinite(c) and c > 0


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([5, 11, 31]), st.integers(0, 2**32 - 1), st.sampled_from(range(4)))
def test_duality(p, seed, which):
    from conftest import CORPUS

    F, G = (P(s) for s in CORPUS[which])
    rng = np.random.default_rng(seed)
    f0, f1, f2 = (GridFunction(rng.normal(size=p) + 1j * rng.normal(size=p), p) for _ in range(3))
    lhs = csum(f0.values * dual_function(F, G, f1, f2).values) / p
    lam = lambda_counting(F, G, f0, f1, f2)
    assert abs(lhs - lam) <= 1e-9 * max(abs(lam), 1e-3)


def test_pet_examples():
    one = GridFunction.ones(5)
    r = verify_pet_inequality(T, T2, one, one, one, 409)
    assert r.lhs == 1 and math.isclose(r.rhs, (409 / 125) ** 0.125) and r.holds
    z = verify_pet_inequality(T, T2, GridFunction.zeros(5), one, one, 409)
    assert z.lhs == 0 and z.ratio == 0 and z.holds


def test_pet_random_at_11():
    from ratprog.roth import variety_size

    rng = np.random.default_rng(5)
    Y = variety_size(T, T2, 11)
    worst = max(verify_pet_inequality(T, T2, *(signs(11, rng) for _ in range(3)), Y).ratio for _ in range(200))
    assert worst <= 1 + 1e-9


def test_dual_of_deltas():
    # D(x) = (1/p) #{y : x + y = 0 = x + y^2}: y = -x with x in {0, -1}
    p = 7
    d = GridFunction.delta(p)
    D = dual_function(T, T2, d, d)
    expected = np.zeros(p)
    expected[[0, p - 1]] = 1 / p
    assert np.allclose(D.values, expected, atol=1e-15)
    assert math.isclose(abs(dft(D).values[0]), 2 / p**2)
