import itertools
from collections import Counter
from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import given
from hypothesis import strategies as st

from alladi.core import mobius
from alladi.poly import (
    SUPPORTED_Q,
    FiniteField,
    FqPoly,
    PolySemigroup,
    UnsupportedFieldError,
    enumerate_irreducibles,
    parse_poly,
    poly_text,
    units_count,
)
from oracles import F2_IRREDUCIBLE_COUNTS, F3_IRREDUCIBLE_COUNTS, irreducible_counts, poly_mobius, poly_rem


@pytest.mark.parametrize("q", SUPPORTED_Q)
def test_field_axioms(q):
    F = FiniteField(q)
    els = range(q)
    for a, b, c in itertools.product(els, repeat=3):
        assert F._mul[a][F._add[b][c]] == F._add[F._mul[a][b]][F._mul[a][c]]
    for a in els:
        assert F._add[a][0] == a and F._mul[a][1] == a
        assert F._add[a][F.neg[a]] == 0
        if a:
            assert F._mul[a][F.inv[a]] == 1
    assert all(F._mul[a][b] == F._mul[b][a] for a, b in itertools.product(els, repeat=2))


def test_unsupported_field():
    with pytest.raises(UnsupportedFieldError):
        FiniteField(6)
    with pytest.raises(UnsupportedFieldError):
        PolySemigroup(6, 3)


def test_frozen_counts_match_oracle():
    assert irreducible_counts(2, 8) == F2_IRREDUCIBLE_COUNTS[:8]
    assert irreducible_counts(3, 5) == F3_IRREDUCIBLE_COUNTS[:5]


def test_irreducible_counts(f2, f3):
    assert list(Counter(p.degree for p in f2.primes).values()) == F2_IRREDUCIBLE_COUNTS
    assert [c for _, c in sorted(Counter(p.degree for p in f3.primes).items())] == F3_IRREDUCIBLE_COUNTS[:6]


@pytest.mark.parametrize("q,n", [(4, 4), (5, 4), (7, 3), (8, 3), (9, 3)])
def test_necklace_counts(q, n):
    # number of monic irreducibles of degree d is (1/d) sum_{e|d} mu(d/e) q^e
    mu = {1: 1, 2: -1, 3: -1, 4: 0}
    got = Counter(p.degree for p in enumerate_irreducibles(q, n))
    for d in range(1, n + 1):
        assert got[d] == sum(mu[d // e] * q ** e for e in range(1, d + 1) if d % e == 0) // d


def test_primes_ordered_and_labelled(f2):
    assert [p.label for p in f2.primes[:5]] == ["x", "x+1", "x^2+x+1", "x^3+x^2+1", "x^3+x+1"]
    keys = [(p.degree, p.data) for p in f2.primes]
    assert keys == sorted(keys)
    assert all(p.id == i for i, p in enumerate(f2.primes))


def test_mobius_against_trial_division(f2):
    for d in range(1, 7):
        for low in itertools.product(range(2), repeat=d):
            f = tuple(low) + (1,)
            assert mobius(f2.factor(f)) == poly_mobius(f, 2)


@lru_cache(maxsize=None)
def _f3():
    return PolySemigroup(3, 6)


@given(st.lists(st.integers(0, 2), min_size=1, max_size=6))
def test_factor_round_trip(low):
    S = _f3()
    f = tuple(low) + (1,)
    g = S.factor(f)
    assert S.polynomial(g).coeffs == f
    assert g.degree == len(f) - 1


def test_factor_rejects():
    S = PolySemigroup(2, 4)
    with pytest.raises(ValueError):
        S.factor((1, 1, 0, 0, 0, 0, 1))
    with pytest.raises(ValueError):
        S.factor(())


def test_residue_sets_partition(f2, f3):
    for S, q, g in [(f2, 2, (1, 1, 1)), (f3, 3, (0, 0, 1))]:
        classes = [f for f in itertools.product(range(q), repeat=len(g) - 1)
                   if S.field._add[f[0]][0] != 0 or any(f[1:])]
        sets = []
        for f in classes:
            try:
                sets.append(S.residue_class_prime_set(g, f))
            except ValueError:
                continue
        assert sum(s.known_density for s in sets) == 1
        assert all(s.known_density == Fraction(1, units_count(q, g)) for s in sets)
        for P in S.primes:
            if poly_rem(g, P.data, q):  # P does not divide the modulus
                hits = sum(P in s for s in sets)
                assert hits == 1, P.label


def test_residue_set_errors(f2):
    with pytest.raises(ValueError):
        f2.residue_class_prime_set((0, 1), (0,))
    with pytest.raises(ValueError):
        f2.residue_class_prime_set((1, 1), (0, 1))


def test_units_count():
    assert units_count(2, (1, 1, 1)) == 3
    assert units_count(2, (0, 0, 1)) == 2
    assert units_count(3, (1, 0, 1)) == 8
    assert units_count(2, (1, 0, 1)) == 2  # (x+1)^2


def test_parse_and_print():
    assert parse_poly("x^2+x+1", 2) == (1, 1, 1)
    assert parse_poly("1,0,1", 3) == (1, 0, 1)
    assert parse_poly("2x^3+1", 3) == (1, 0, 0, 2)
    assert poly_text((1, 0, 2, 1)) == "x^3+2x^2+1"
    assert str(FqPoly.parse(5, "x^4+3x")) == "x^4+3x"
    for bad in ["", "x^2+", "y+1", "3x", "1,2"]:
        with pytest.raises(ValueError):
            parse_poly(bad, 2)


@given(st.lists(st.integers(0, 6), min_size=1, max_size=7))
def test_text_round_trip(coeffs):
    text = poly_text(coeffs)
    if text != "0":
        assert parse_poly(text, 7) == FqPoly(7, tuple(coeffs)).coeffs
