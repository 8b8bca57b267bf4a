import math
import random
from fractions import Fraction

import pytest

from alladi.core import IDENTITY, CONVOLUTION_IDENTITY, Element, LaurentPoly, PrimeSet
from alladi.experiments import (
    ExperimentError,
    LimitError,
    alladi_partial_sums,
    b_transform_check,
    convolution_arith_fn,
    density_estimate,
    duality_fuzz,
    element_counts,
    equidistribution_check,
    finite_support_fn,
    fit_axiom_constants,
    hashed_prime_set,
    partial_sum_statistics,
    random_arith_fn,
    summability_increments,
)
from alladi.integers import residue_prime_set, split_type_prime_set
from oracles import MERTENS, alladi_direct


def test_first_poly_partial_sum(f2):
    rep = alladi_partial_sums(f2, PrimeSet.all(), cutoffs=[1, 2, 3])
    assert rep.rows[0].exact == 1
    assert rep.target == 1 and rep.target_source == "known"


@pytest.mark.parametrize("fixture,cutoffs", [("f2", [1, 4, 8]), ("ints", [10, 100]), ("k4", [3, 6])])
def test_empty_set_sums_vanish(request, fixture, cutoffs):
    rep = alladi_partial_sums(request.getfixturevalue(fixture), PrimeSet.empty(), cutoffs=cutoffs)
    assert all(r.value == 0 for r in rep.rows)


def test_integer_sums_match_direct_oracle(ints):
    S = residue_prime_set(4, 1)
    exact = alladi_partial_sums(ints, S, cutoffs=[100, 1000, 10 ** 4], method="generic")
    sieve = alladi_partial_sums(ints, S, cutoffs=[100, 1000, 10 ** 4], method="sieve")
    for x, r, s in zip([100, 1000, 10 ** 4], exact.rows, sieve.rows):
        want = alladi_direct(x, 4, 1)
        assert float(r.exact) == pytest.approx(want, abs=1e-12)
        assert s.value == pytest.approx(want, abs=1e-12)


def test_sieve_power_decay_matches_exact(ints):
    S = residue_prime_set(4, 3)
    a = convolution_arith_fn(ints, S, 1)
    exact = alladi_partial_sums(ints, S, a, cutoffs=[500, 5000], method="generic")
    sieve = alladi_partial_sums(ints, S, a, cutoffs=[500, 5000], method="sieve")
    for r, s in zip(exact.rows, sieve.rows):
        assert s.value == pytest.approx(float(r.exact), abs=1e-12)


def test_partial_sum_validation(f2, ints):
    with pytest.raises(ExperimentError):
        alladi_partial_sums(f2, PrimeSet.all(), cutoffs=[3, 2])
    with pytest.raises(ExperimentError):
        alladi_partial_sums(f2, PrimeSet.all(), cutoffs=[2], weight="other")
    with pytest.raises(ExperimentError):
        alladi_partial_sums(ints, PrimeSet.all(), cutoffs=[1])
    with pytest.raises(LimitError):
        alladi_partial_sums(f2, PrimeSet.all(), cutoffs=[13])
    with pytest.raises(ExperimentError):
        convolution_arith_fn(f2, PrimeSet.all(), 0)


def test_power_decay_examples(f2):
    S = PrimeSet.from_ids([0])
    a = convolution_arith_fn(f2, S, 1)
    x, x1 = f2.primes[0], f2.primes[1]
    assert a(IDENTITY) == 1
    assert a(Element.of(x)) == Fraction(1, 2)
    assert a(Element.of(x1)) == 0
    assert convolution_arith_fn(f2, S, Fraction(1, 2))(Element.of(x)) == pytest.approx(2 ** -0.5)


def test_graph_values_are_symbolic(k4):
    rep = alladi_partial_sums(k4, PrimeSet.all(), convolution_arith_fn(k4, PrimeSet.all(), 1), cutoffs=[3, 4])
    assert isinstance(rep.rows[-1].exact, LaurentPoly)
    assert "sum_poly" in rep.to_csv().splitlines()[0]
    assert rep.rows[-1].value == pytest.approx(rep.rows[-1].exact.evaluate(Fraction(1, 2)))


def test_csv_columns(f2):
    rep = alladi_partial_sums(f2, PrimeSet.all(), cutoffs=[1, 2])
    lines = rep.to_csv().splitlines()
    assert lines[0] == "cutoff,sum_num,sum_den,sum_float,target,abs_error,seconds"
    assert lines[1].startswith("1,1,1,1.0,1,0.0,") and lines[1].endswith(",")
    assert rep.to_csv(timings=True).splitlines()[1].split(",")[-1] != ""


def test_finite_support_and_random_fn(f2):
    S = PrimeSet.all()
    x = Element.of(f2.primes[0])
    a = finite_support_fn(f2, S, {x: Fraction(3, 4)})
    assert a(x) == Fraction(3, 4) and a(IDENTITY) == 1 and a(Element.of(f2.primes[1])) == 0
    with pytest.raises(ExperimentError):
        finite_support_fn(f2, S, {Element.of(f2.primes[0], f2.primes[1]): 1})
    r = random_arith_fn(f2, S, 3)
    assert r(x) == r(x)


def test_b_transform_examples(f2, ints):
    x = Element.of(f2.primes[0])
    assert b_transform_check(f2, PrimeSet.all(), CONVOLUTION_IDENTITY, IDENTITY) == 0
    assert b_transform_check(f2, PrimeSet.all(), CONVOLUTION_IDENTITY, x) == 0
    rng = random.Random(5)
    S = hashed_prime_set(11)
    a = random_arith_fn(ints, S, 5)
    for _ in range(50):
        g = ints.factor_integer(rng.randint(1, 10 ** 4))
        assert b_transform_check(ints, S, a, g) == 0


def test_b_transform_rejects_graphs(k4):
    with pytest.raises(ExperimentError):
        b_transform_check(k4, PrimeSet.all(), CONVOLUTION_IDENTITY, IDENTITY)


def test_equidistribution_examples(f2):
    assert all(r.lhs == 0 for r in equidistribution_check(f2, PrimeSet.empty(), [1, 2, 3], delta=0))
    rows = equidistribution_check(f2, PrimeSet.all(), [1, 2])
    assert rows[0].lhs == 2
    assert rows[0].ref_fitted == pytest.approx(1.0) and rows[0].ref_closed == 1.0


def test_stats_examples(f2, ints):
    s = partial_sum_statistics(f2, 3, 5)
    assert (s.C, s.M, s.R, s.Phi) == (0, 1, 1, 1)
    assert partial_sum_statistics(f2, 1, 0).R == 0
    assert partial_sum_statistics(ints, 100, 1).M == MERTENS[100]


@pytest.mark.parametrize("m", [0, 1, 2])
def test_stats_consistency(f2, m):
    rows = [partial_sum_statistics(f2, n, m) for n in range(0, 9)]
    for n in range(1, 9):
        assert rows[n].M == sum(r.C for r in rows[1:n + 1]) + (1 if m < math.inf else 0)
        assert rows[n].Phi >= abs(rows[n].M)
        # R increases by the degree-n layer, which is C(n, m) / 2^n
        assert rows[n].R - rows[n - 1].R == Fraction(rows[n].C, 2 ** n)


def test_norm_and_degree_modes_agree(f2):
    S = f2.residue_class_prime_set((1, 1, 1), (1,))
    by_degree = alladi_partial_sums(f2, S, cutoffs=[4, 8])
    by_norm = alladi_partial_sums(f2, S, cutoffs=[4, 8], order="norm")
    assert [r.exact for r in by_degree.rows] == [r.exact for r in by_norm.rows]


@pytest.mark.parametrize("fixture,S,cutoffs", [
    ("f2", lambda b: b.residue_class_prime_set((1, 1, 1), (1,)), list(range(2, 13))),
    ("ints", lambda b: residue_prime_set(4, 1), [10 ** 3, 5000, 10 ** 4]),
    ("gauss", lambda b: split_type_prime_set("split"), [10 ** 3, 5000, 10 ** 4]),
])
def test_convolution_bridge(request, fixture, S, cutoffs):
    backend = request.getfixturevalue(fixture)
    S = S(backend)
    plain = alladi_partial_sums(backend, S, cutoffs=cutoffs)
    conv = alladi_partial_sums(backend, S, convolution_arith_fn(backend, S, 1), cutoffs=cutoffs)
    step = abs(plain.rows[-1].value - plain.rows[-2].value)
    assert abs(conv.final.value - plain.final.value) < 2 * step


def test_parallel_generic_path_is_deterministic(f2):
    S = hashed_prime_set(4)
    one = alladi_partial_sums(f2, S, cutoffs=[6, 9], workers=1)
    four = alladi_partial_sums(f2, S, cutoffs=[6, 9], workers=4)
    assert one.to_csv() == four.to_csv()


def test_summability_increments(f2):
    S = PrimeSet.all()
    totals, decaying = summability_increments(f2, S, convolution_arith_fn(f2, S, 2), list(range(2, 11)))
    assert decaying and totals == sorted(totals)


def test_density_examples(f2, gauss, k4):
    assert all(r.ratio == 1 for r in density_estimate(f2, PrimeSet.all(), 8))
    assert all(r.ratio == 0 for r in density_estimate(f2, PrimeSet.empty(), 8))
    split = density_estimate(gauss, split_type_prime_set("split"))
    assert split[-1].ratio > split[0].ratio and split[-1].ratio > Fraction(9, 10)
    assert [r.cutoff for r in density_estimate(k4, PrimeSet.all(), 6)] == [3, 4, 6]  # no primes of length 5


def test_fits(f2, ints, k4):
    fit = fit_axiom_constants(f2, element_counts(f2, 12))
    assert fit.exact_c == 1 and all(r == 0 for r in fit.residuals)
    assert fit_axiom_constants(ints, element_counts(ints, 2000)).c == pytest.approx(1.0, abs=1e-3)
    assert fit_axiom_constants(k4, element_counts(k4, 30)).q == pytest.approx(2.0, rel=0.01)
    assert fit_axiom_constants(f2, [1, 2, 4]).degenerate


def test_duality_fuzz_small(f3, gauss):
    assert duality_fuzz(f3, 4, triples=300, seed=2).max_residual == 0
    res = duality_fuzz(gauss, 2000, triples=300, seed=2)
    assert res.failure is None and res.summary() == "300 triples, max residual 0"
