import math
from collections import Counter
from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alladi.core import IDENTITY, mobius
from alladi.integers import (
    GaussianSemigroup,
    IntegerSemigroup,
    OutOfRangeError,
    gaussian_ideal_counts_bruteforce,
    mobius_sieve,
    residue_prime_set,
    sieve_primes,
    smallest_prime_factors,
    split_type_prime_set,
    totient,
    totient_sieve,
    two_squares,
)
from oracles import MERTENS, PRIME_PI, gaussian_norm_counts, is_prime, mertens, trial_factor, trial_mobius


def test_frozen_values_match_oracle():
    assert {x: mertens(x) for x in (10, 100, 1000)} == {x: MERTENS[x] for x in (10, 100, 1000)}
    assert sum(is_prime(n) for n in range(1001)) == PRIME_PI[1000]


def test_sieves():
    for x, count in PRIME_PI.items():
        assert len(sieve_primes(x)) == count
    assert [int(p) for p in sieve_primes(30)] == [n for n in range(31) if is_prime(n)]
    spf = smallest_prime_factors(2000)
    assert all(int(spf[n]) == min(trial_factor(n)) for n in range(2, 2001))
    mu = mobius_sieve(10 ** 4)
    assert all(int(mu[n]) == trial_mobius(n) for n in range(1, 2001))
    for x, value in MERTENS.items():
        assert int(mu[1:x + 1].sum()) == value
    phi = totient_sieve(500)
    assert all(int(phi[n]) == sum(math.gcd(n, k) == 1 for k in range(1, n + 1)) for n in range(1, 501))
    assert totient(12) == 4 and totient(1) == 1


def test_factor_examples(ints):
    assert ints.factor_integer(1) == IDENTITY
    g = ints.factor_integer(360)
    assert [(p.data, m) for p, m in g.factors] == [(2, 3), (3, 2), (5, 1)]
    assert ints.integer(g) == 360
    with pytest.raises(OutOfRangeError):
        ints.factor_integer(0)
    with pytest.raises(OutOfRangeError):
        ints.factor_integer(10 ** 8 + 1)


def test_factor_grows_table():
    S = IntegerSemigroup(200)
    g = S.factor_integer(2 * 9973)
    assert [p.data for p in g.primes] == [2, 9973]
    assert all(p.id == i for i, p in enumerate(S.primes))
    assert S.prime(9973).id == PRIME_PI[10000] - 1


@lru_cache(maxsize=None)
def _ints():
    return IntegerSemigroup(1000)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 10 ** 6))
def test_factor_round_trip(n):
    S = _ints()
    g = S.factor_integer(n)
    assert S.integer(g) == n
    assert {p.data: m for p, m in g.factors} == trial_factor(n)


def test_element_counts_match_oracle(ints):
    counts = Counter(int(g.norm) for g in ints.elements(1000))
    assert all(counts[n] == 1 for n in range(1, 1001)) and len(counts) == 1000
    assert sum(mobius(g) for g in ints.elements(10 ** 4)) == MERTENS[10 ** 4]


def test_residue_density():
    assert residue_prime_set(4, 1).known_density == Fraction(1, 2)
    assert residue_prime_set(10, 3).known_density == Fraction(1, 4)
    with pytest.raises(ValueError):
        residue_prime_set(4, 2)


def test_residue_classes_partition(ints):
    sets = [ints.residue_prime_set(5, l) for l in range(1, 5)]
    assert sum(s.known_density for s in sets) == 1
    for P in ints.primes[3:]:
        assert sum(P in s for s in sets) == 1


def test_two_squares():
    for p in (5, 13, 17, 29, 9973):
        a, b = two_squares(p)
        assert a * a + b * b == p and a > b > 0


def test_gaussian_table(gauss):
    assert gauss.primes[0].label == "(1+1i)"
    assert [p.norm for p in gauss.primes[:4]] == [2, 5, 5, 9]
    norms = [p.norm for p in gauss.primes]
    assert norms == sorted(norms)
    for P in gauss.primes:
        x, y, kind, p = P.data
        assert x > 0 and y >= 0 and x * x + y * y == P.norm
        assert kind == {True: "ramified", False: "split" if p % 4 == 1 else "inert"}[p == 2]


def test_gaussian_counts_match_oracle(gauss):
    counts = Counter(int(g.norm) for g in gauss.ideals(2000))
    brute = gaussian_norm_counts(2000)
    assert gaussian_ideal_counts_bruteforce(2000) == brute
    assert all(counts[n] == brute[n] for n in range(1, 2001))


@lru_cache(maxsize=None)
def _gauss():
    return GaussianSemigroup(10 ** 4)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 60), st.integers(0, 60))
def test_gaussian_factor_norm(x, y):
    S = _gauss()
    g = S.factor(x, y)
    assert g.norm == x * x + y * y


def test_gaussian_factor_examples(gauss):
    g = gauss.factor(2, 0)  # (2) = (1+i)^2
    assert [(p.label, m) for p, m in g.factors] == [("(1+1i)", 2)]
    assert gauss.factor(3, 0).factors[0][0].data[2] == "inert"
    assert gauss.factor(1, 0) == IDENTITY
    with pytest.raises(ValueError):
        gauss.factor(0, 0)
    small = GaussianSemigroup(100)
    with pytest.raises(OutOfRangeError):
        small.factor(10, 1)  # 101 is prime, outside the table
    with pytest.raises(OutOfRangeError):
        GaussianSemigroup(10 ** 7)


def test_split_types_partition(gauss):
    sets = [split_type_prime_set(k) for k in ("split", "inert", "ramified")]
    for P in gauss.primes:
        assert sum(P in s for s in sets) == 1
    s8 = gauss.split_type_prime_set("split8")
    assert all(P.data[3] % 8 == 1 for P in gauss.primes if P in s8)
    with pytest.raises(ValueError):
        split_type_prime_set("weird")
