import pytest
from hypothesis import given, strategies as st

from hoca_lab.modring import (
    InvalidModulus,
    Modulus,
    factorize,
    is_prime_trial,
    is_probable_prime,
    mod_reduce,
    prime_power,
)


@pytest.mark.parametrize(
    "m, factors",
    [(49, ((7, 2),)), (12, ((2, 2), (3, 1))), (2, ((2, 1),)), (60, ((2, 2), (3, 1), (5, 1)))],
)
def test_factorize_examples(m, factors):
    assert factorize(m).factors == factors


@pytest.mark.parametrize("bad", [1, 0, -5])
def test_factorize_rejects_small(bad):
    with pytest.raises(InvalidModulus):
        factorize(bad)


@pytest.mark.parametrize("x, m, want", [(80, 49, 31), (-1, 8, 7), (7424, 49, 25), (768, 49, 33)])
def test_mod_reduce(x, m, want):
    assert mod_reduce(x, m) == want


@given(st.integers(), st.integers(min_value=2, max_value=10**6))
def test_mod_reduce_is_canonical(x, m):
    r = mod_reduce(x, m)
    assert 0 <= r < m
    assert (x - r) % m == 0


@given(st.integers(min_value=2, max_value=10**6))
def test_factorization_reconstructs(m):
    mod = factorize(m)
    prod = 1
    for p, k in mod.factors:
        # two unrelated primality tests must agree on every factor
        assert is_prime_trial(p) and is_probable_prime(p)
        prod *= p**k
    assert prod == m
    assert mod.primes == sorted(set(mod.primes))


def test_primality_tests_agree():
    assert [n for n in range(2000) if is_prime_trial(n)] == [
        n for n in range(2000) if is_probable_prime(n)
    ]


def test_modulus_rejects_wrong_factors():
    with pytest.raises(InvalidModulus):
        Modulus(12, ((2, 1), (3, 1)))
    with pytest.raises(InvalidModulus):
        Modulus(12, ((3, 1), (2, 2)))


def test_prime_power():
    assert prime_power(27) == (3, 3)
    assert prime_power(12) is None
