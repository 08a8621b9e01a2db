import cmath

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ratprog.errors import NotPrime, PrimeMismatch, ZeroInverse
from ratprog.fp_arith import (
    FieldElement,
    Prime,
    additive_character,
    batch_inverse,
    character_table,
    is_prime,
    mod_inverse,
    primes_in_range,
    primitive_root,
)

SMALL_PRIMES = [3, 5, 7, 11, 13, 31, 101]


def fe(v, p):
    return Prime(p)(v)


def test_prime_validation():
    assert Prime(7).p == 7
    for bad in (1, 2, 9, 2**20 + 7):
        with pytest.raises(NotPrime):
            Prime(bad)
    assert primes_in_range(10, 31) == [11, 13, 17, 19, 23, 29, 31]
    assert [n for n in range(50) if is_prime(n)][:6] == [2, 3, 5, 7, 11, 13]


def test_mod_inverse_examples():
    assert mod_inverse(fe(3, 7)).value == 5
    assert mod_inverse(fe(1, 13)).value == 1
    with pytest.raises(ZeroInverse):
        mod_inverse(fe(0, 7))


@given(st.sampled_from(SMALL_PRIMES), st.data())
def test_inverse_is_involution(p, data):
    a = data.draw(st.integers(1, p - 1))
    x = fe(a, p)
    assert (mod_inverse(x) * x).value == 1
    assert mod_inverse(mod_inverse(x)) == x


def test_batch_inverse_examples():
    assert [x.value for x in batch_inverse([fe(2, 5), fe(3, 5)])] == [3, 2]
    assert batch_inverse([]) == []
    inv = [x.value for x in batch_inverse([fe(a, 11) for a in range(1, 11)])]
    assert sorted(inv) == list(range(1, 11))


def test_batch_inverse_reports_first_zero():
    with pytest.raises(ZeroInverse) as exc:
        batch_inverse([fe(1, 7), fe(0, 7), fe(0, 7)])
    assert exc.value.index == 1


def test_batch_inverse_single_egcd(monkeypatch):
    import ratprog.fp_arith as fa

    calls = []
    real = fa._egcd_inverse
    monkeypatch.setattr(fa, "_egcd_inverse", lambda a, p: calls.append(a) or real(a, p))
    batch_inverse([fe(a, 31) for a in range(1, 31)])
    assert len(calls) == 1


@pytest.mark.parametrize("p", [5, 11, 101])
def test_batch_inverse_matches_single(p):
    rng = np.random.default_rng(p)
    values = [fe(int(a), p) for a in rng.integers(1, p, size=1000)]
    assert batch_inverse(values) == [mod_inverse(v) for v in values]


def test_mixed_moduli_rejected():
    with pytest.raises(PrimeMismatch):
        fe(1, 5) + fe(1, 7)
    with pytest.raises(PrimeMismatch):
        batch_inverse([fe(1, 5), fe(1, 7)])


def test_field_ops():
    a, b = fe(4, 7), fe(5, 7)
    assert (a + b).value == 2 and (a - b).value == 6 and (a * b).value == 6 and (-a).value == 3
    with pytest.raises(ValueError):
        FieldElement(7, Prime(7))


def test_character_examples():
    assert additive_character(fe(0, 5)) == 1 + 0j
    assert abs(sum(additive_character(fe(a, 7)) for a in range(7))) < 1e-12
    for k in range(4):
        assert additive_character(fe(5 * k % 5, 5)) == 1 + 0j
    assert abs(additive_character(fe(1, 5)) - cmath.exp(2j * cmath.pi / 5)) < 1e-15


@pytest.mark.parametrize("p", [q for q in primes_in_range(3, 31)])
def test_character_table_is_a_homomorphism(p):
    e = character_table(p)
    assert np.all(np.abs(np.abs(e) - 1) < 1e-12)
    a = np.arange(p)
    assert np.max(np.abs(e[:, None] * e[None, :] - e[(a[:, None] + a[None, :]) % p])) < 1e-12
    assert not e.flags.writeable


@settings(max_examples=30)
@given(st.sampled_from(SMALL_PRIMES))
def test_primitive_root_generates(p):
    g = primitive_root(p)
    assert len({pow(g, k, p) for k in range(p - 1)}) == p - 1
