"""Density sums, identity checks and statistics over any backend.

Partial sums are accumulated per size bucket (degree or integer norm) in
exact arithmetic and reduced in ascending bucket order, so the result does
not depend on how buckets are spread over worker processes.  The integer
backend also has a sieve path for large ``x``; it keeps the convolution
numerators as exact integers and only rounds once per term, then sums the
terms with ``math.fsum``, which is correctly rounded and order independent.
"""

from __future__ import annotations

import csv
import io
import math
import multiprocessing
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence, Union

import numpy as np

from .core import (
    CONVOLUTION_IDENTITY,
    IDENTITY,
    INF,
    ArithFn,
    Element,
    LaurentPoly,
    Prime,
    PrimeSet,
    Semigroup,
    duality_residual,
    euler_phi,
    is_distinguished,
    mobius,
    mobius_convolve,
)
from .graph import GraphSemigroup, ihara_zeta_series
from .integers import (
    GaussianSemigroup,
    IntegerSemigroup,
    mobius_sieve,
    sieve_primes,
    smallest_prime_factors,
    totient_sieve,
)
from .poly import PolySemigroup
from .series import euler_transform

# integer cutoffs above this use the sieve path unless told otherwise
EXACT_NORM_LIMIT = 10 ** 4
SIEVE_LIMIT = 10 ** 8
WEIGHTS = ("norm", "phi")

Value = Union[Fraction, LaurentPoly, float]


class ExperimentError(ValueError):
    pass


class LimitError(ExperimentError):
    pass


# -- arithmetic functions ----------------------------------------------------


@dataclass(frozen=True)
class PowerDecayFn(ArithFn):
    """``a(g) = ||g||^-alpha`` on ``D(G, S)``, ``a(e) = 1``, zero elsewhere."""

    alpha: Fraction = Fraction(1)
    prime_set: Optional[PrimeSet] = None
    order: str = "degree"


def _power_of_norm(g: Element, alpha: Fraction) -> Value:
    n = g.norm
    if isinstance(n, LaurentPoly):
        (e, c), = n.terms
        return LaurentPoly.monomial(e * alpha, c)
    if alpha.denominator == 1:
        return Fraction(1, int(n) ** int(alpha))
    # irrational powers of rational norms: float, flagged in the report
    return float(n) ** -float(alpha)


def convolution_arith_fn(backend: Semigroup, S: PrimeSet, alpha=1) -> PowerDecayFn:
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ExperimentError("alpha must be positive")
    by = backend.by

    def value(g: Element):
        if g.is_identity:
            return 1
        if not is_distinguished(g, S, by):
            return 0
        return _power_of_norm(g, alpha)

    return PowerDecayFn(value, "distinguished-only", True, f"power-decay({alpha})", alpha, S, by)


def finite_support_fn(backend: Semigroup, S: PrimeSet, values: dict[Element, Fraction], name: str = "finite") -> ArithFn:
    """``a`` given on finitely many elements of ``D(G, S)``; ``a(e) = 1``."""
    table = {g.key(): Fraction(v) for g, v in values.items() if not g.is_identity}
    for g in values:
        if not g.is_identity and not is_distinguished(g, S, backend.by):
            raise ExperimentError(f"{g} is not in D(G, S)")
    if IDENTITY in values and values[IDENTITY] != 1:
        raise ExperimentError("a(e) must be 1")
    return ArithFn(lambda g: 1 if g.is_identity else table.get(g.key(), 0), "distinguished-only", True, name)


def random_arith_fn(backend: Semigroup, S: PrimeSet, seed: int) -> ArithFn:
    """Random rational values on ``D(G, S)``, memoised so repeated calls agree."""
    rng = random.Random(seed)
    memo: dict = {}

    def value(g: Element):
        if g.is_identity:
            return 1
        if not is_distinguished(g, S, backend.by):
            return 0
        k = g.key()
        if k not in memo:
            memo[k] = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        return memo[k]

    return ArithFn(value, "distinguished-only", True, f"random({seed})")


def _is_identity_fn(a: ArithFn) -> bool:
    return a is CONVOLUTION_IDENTITY or a.support_hint == "identity-only"


# -- helpers -----------------------------------------------------------------


def _distinguished_sorted(g: Element, S: PrimeSet, by: str) -> bool:
    # backends number primes in size order, so the first factor is minimal
    p = g.factors[0][0]
    if len(g.factors) > 1:
        q = g.factors[1][0]
        if (q.degree if by == "degree" else q.norm) == (p.degree if by == "degree" else p.norm):
            return False
    return p in S


def backend_limit(backend: Semigroup):
    if isinstance(backend, PolySemigroup):
        return backend.max_degree
    if isinstance(backend, GraphSemigroup):
        return backend.max_len
    return backend.limit


def u_value(backend: Semigroup) -> Optional[Fraction]:
    """Numeric value of the symbolic variable for graph norms."""
    return backend.radius.R if isinstance(backend, GraphSemigroup) else None


def to_float(v: Value, u: Optional[Fraction] = None) -> float:
    if isinstance(v, LaurentPoly):
        if u is None:
            raise ExperimentError("symbolic value needs R_G")
        return float(v.evaluate(u))
    return float(v)


def format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else str(v.numerator)
    if isinstance(v, float):
        return repr(v)
    return str(v)


def format_poly(p: Union[LaurentPoly, Fraction]) -> str:
    """``exponent:coefficient`` pairs in the variable ``u = R_G``."""
    if not isinstance(p, LaurentPoly):
        p = LaurentPoly.monomial(0, p)
    if p.is_zero():
        return "0"
    return " ".join(f"{format_value(e)}:{format_value(c)}" for e, c in p.terms)


def _run_parallel(fn: Callable, chunks: list, workers: int) -> list:
    if workers <= 1 or len(chunks) <= 1:
        return [fn(c) for c in chunks]
    ctx = multiprocessing.get_context("fork")
    with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
        return list(pool.map(fn, chunks))


# -- reports -----------------------------------------------------------------


@dataclass
class ReportRow:
    cutoff: int
    exact: Optional[Union[Fraction, LaurentPoly]]
    value: float
    abs_error: Optional[float]
    seconds: float = 0.0


@dataclass
class ExperimentReport:
    backend: str
    prime_set: str
    function: str
    weight: str
    target: Optional[Union[Fraction, float]]
    target_source: str
    rows: list[ReportRow] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def cutoffs(self) -> list[int]:
        return [r.cutoff for r in self.rows]

    @property
    def final(self) -> ReportRow:
        return self.rows[-1]

    def to_csv(self, timings: bool = False) -> str:
        """CSV text; the ``seconds`` column stays blank unless ``timings``."""
        symbolic = any(isinstance(r.exact, LaurentPoly) for r in self.rows)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        head = ["cutoff", "sum_num", "sum_den", "sum_float", "target", "abs_error", "seconds"]
        if symbolic:
            head.insert(4, "sum_poly")
        w.writerow(head)
        for r in self.rows:
            num = den = ""
            if isinstance(r.exact, Fraction):
                num, den = r.exact.numerator, r.exact.denominator
            row = [r.cutoff, num, den, repr(r.value), format_value(self.target),
                   "" if r.abs_error is None else repr(r.abs_error),
                   f"{r.seconds:.3f}" if timings else ""]
            if symbolic:
                row.insert(4, format_poly(r.exact) if r.exact is not None else "")
            w.writerow(row)
        return buf.getvalue()

    def table(self) -> str:
        lines = [f"{self.backend}  S: {self.prime_set}  a: {self.function}  weight: {self.weight}  "
                 f"target: {format_value(self.target)} ({self.target_source})"]
        lines.append(f"{'cutoff':>10} {'partial sum':>22} {'abs error':>12}")
        for r in self.rows:
            err = "" if r.abs_error is None else f"{r.abs_error:.3e}"
            lines.append(f"{r.cutoff:>10} {r.value:>22.15f} {err:>12}")
        lines.extend(f"note: {n}" for n in self.notes)
        return "\n".join(lines)


def resolve_target(backend: Semigroup, S: PrimeSet, horizon: Optional[int] = None) -> tuple[Optional[Union[Fraction, float]], str]:
    if S.known_density is not None:
        return S.known_density, "known"
    est = density_estimate(backend, S, horizon)
    if not est:
        return None, "unavailable"
    return est[-1].ratio, "estimated"


# -- Alladi partial sums ------------------------------------------------------


@dataclass
class _SumContext:
    backend: Semigroup
    S: PrimeSet
    a: ArithFn
    weight: str
    cutoff: Any
    by: str
    u: Optional[Fraction]


_CTX: Optional[_SumContext] = None


def _bucket_sums(indices: Sequence[int]) -> dict:
    ctx = _CTX
    assert ctx is not None
    plain = _is_identity_fn(ctx.a)
    additive = ctx.backend.axiom == "A#"
    exact: dict[Any, Any] = {}
    floats: dict[Any, list] = {}
    for g in ctx.backend.elements(ctx.cutoff, squarefree=plain, first=indices):
        if not _distinguished_sorted(g, ctx.S, ctx.by):
            continue
        v = mobius(g) if plain else mobius_convolve(ctx.a, g)
        if v == 0:
            continue
        key = g.degree if additive else int(g.norm)
        if ctx.weight == "norm":
            w = g.norm
        else:
            w = euler_phi(g)
        if isinstance(v, float) or (isinstance(w, LaurentPoly) and len(w.terms) > 1):
            # irrational weights: evaluate once here
            floats.setdefault(key, []).append(to_float(v, ctx.u) / to_float(w, ctx.u))
            continue
        term = (Fraction(v) if isinstance(v, int) else v) / w
        exact[key] = exact.get(key, 0) + term
    return {"exact": exact, "floats": floats}


def _generic_sums(backend, S, a, cutoffs, weight, workers, by) -> list[tuple[Optional[Value], float]]:
    global _CTX
    top = max(cutoffs)
    _CTX = _SumContext(backend, S, a, weight, top, by, u_value(backend))
    n_primes = len(backend.primes_upto(top))
    workers = max(1, workers)
    chunks = [list(range(w, n_primes, workers)) for w in range(workers)] if workers > 1 else [list(range(n_primes))]
    try:
        parts = _run_parallel(_bucket_sums, chunks, workers)
    finally:
        _CTX = None
    exact: dict = {}
    floats: dict = {}
    for part in parts:
        for k, v in part["exact"].items():
            exact[k] = exact.get(k, 0) + v
        for k, v in part["floats"].items():
            floats.setdefault(k, []).extend(v)
    u = u_value(backend)
    out = []
    for c in cutoffs:
        keys = sorted(k for k in exact if k <= c)
        total = sum((exact[k] for k in keys), Fraction(0))
        fl = [x for k in sorted(floats) if k <= c for x in floats[k]]
        if fl:
            value = -(math.fsum(fl) + to_float(total, u))
            out.append((None, value))
        else:
            total = -total
            if isinstance(total, LaurentPoly):
                out.append((total, to_float(total, u)))
            else:
                out.append((Fraction(total), float(total)))
    return out


_SIEVE: dict = {}


def _sieve_numerators(ds: np.ndarray) -> np.ndarray:
    mu, kpow, X = _SIEVE["mu"], _SIEVE["kpow"], _SIEVE["X"]
    c = np.zeros(X + 1, dtype=np.int64)
    weighted = mu * kpow
    for d in ds:
        d = int(d)
        k = X // d
        c[d::d] += weighted[1:k + 1]
    return c


def integer_sieve_sums(S: PrimeSet, cutoffs: Sequence[int], weight: str = "norm", alpha: Optional[Fraction] = None,
                       workers: int = 1) -> list[float]:
    """Alladi sums over the positive integers for large ``x``.

    With ``a = ||.||^-alpha`` on ``D`` the convolution is
    ``(mu * a)(n) = n^-alpha * c(n)``, ``c(n) = sum_{d | n, d in D} mu(n/d) (n/d)^alpha``,
    an integer; ``c`` is accumulated exactly, split over workers by ``d``.
    """
    X = max(cutoffs)
    if X > SIEVE_LIMIT:
        raise LimitError(f"cutoff {X} exceeds the sieve limit {SIEVE_LIMIT}")
    spf = smallest_prime_factors(X)
    mu = mobius_sieve(X).astype(np.int64)
    member = np.zeros(X + 1, dtype=bool)
    for i, p in enumerate(int(v) for v in sieve_primes(X)):
        member[p] = Prime(i, None, p, str(p), p) in S
    in_d = member[spf]
    in_d[0], in_d[1] = False, True
    n = np.arange(X + 1, dtype=np.int64)
    if weight == "norm":
        w = n.copy()
    elif weight == "phi":
        w = totient_sieve(X)
    else:
        raise ExperimentError(f"weight must be one of {WEIGHTS}")
    if alpha is None:
        num = mu
        den = w
    else:
        if alpha.denominator != 1 or alpha < 1 or float(X) ** (int(alpha) + 1) * 256 > 2.0 ** 63:
            raise ExperimentError("the sieve path supports integer alpha with exact 64-bit numerators")
        kpow = n ** int(alpha)
        _SIEVE.update(mu=mu, kpow=kpow, X=X)
        ds = np.flatnonzero(in_d)
        chunks = [ds[i::workers] for i in range(workers)] if workers > 1 else [ds]
        try:
            parts = _run_parallel(_sieve_numerators, chunks, workers)
        finally:
            _SIEVE.clear()
        num = sum(parts[1:], parts[0].copy())
        den = kpow * w
    mask = in_d.copy()
    mask[:2] = False
    mask &= num != 0
    terms = np.zeros(X + 1)
    terms[mask] = num[mask].astype(np.float64) / den[mask].astype(np.float64)
    return [-math.fsum(terms[2:c + 1].tolist()) for c in cutoffs]


def alladi_partial_sums(backend: Semigroup, S: PrimeSet, a: Optional[ArithFn] = None, cutoffs: Sequence[int] = (),
                        weight: str = "norm", workers: int = 1, method: str = "auto",
                        order: Optional[str] = None, target=None) -> ExperimentReport:
    """``-sum_{g in D(G,S), in range} (mu * a)(g) / weight(g)`` at each cutoff."""
    t0 = time.perf_counter()
    a = a or CONVOLUTION_IDENTITY
    if weight not in WEIGHTS:
        raise ExperimentError(f"weight must be one of {WEIGHTS}")
    if a(IDENTITY) != 1:
        raise ExperimentError("a(e) must equal 1")
    cutoffs = [int(c) for c in cutoffs]
    if not cutoffs or any(b <= c for c, b in zip(cutoffs, cutoffs[1:])):
        raise ExperimentError("cutoffs must be a nonempty strictly increasing sequence")
    lowest = 1 if backend.axiom == "A#" else 2
    if cutoffs[0] < lowest:
        raise ExperimentError(f"cutoffs start at {lowest} for this backend")
    by = order or backend.by
    notes = []
    sieve = isinstance(backend, IntegerSemigroup) and (
        method == "sieve" or (method == "auto" and cutoffs[-1] > EXACT_NORM_LIMIT))
    if sieve:
        plain = _is_identity_fn(a)
        if not plain and not isinstance(a, PowerDecayFn):
            raise ExperimentError("the sieve path handles the identity and power-decay functions only")
        alpha = None if plain else a.alpha
        values = [(None, v) for v in integer_sieve_sums(S, cutoffs, weight, alpha, workers)]
        notes.append("sieve path: exact integer numerators, one rounding per term, fsum reduction")
    else:
        limit = backend_limit(backend)
        if cutoffs[-1] > limit:
            raise LimitError(f"cutoff {cutoffs[-1]} exceeds backend limit {limit}")
        values = _generic_sums(backend, S, a, cutoffs, weight, workers, by)
    if isinstance(a, PowerDecayFn) and a.alpha.denominator != 1 and not isinstance(backend, GraphSemigroup):
        notes.append("non-integer alpha: values are floating point")
    if target is None:
        target, source = resolve_target(backend, S)
    else:
        source = "given"
    elapsed = time.perf_counter() - t0
    report = ExperimentReport(backend.name, S.description, a.name or "a", weight, target, source, notes=notes)
    for c, (ex, val) in zip(cutoffs, values):
        err = None if target is None else abs(val - float(target))
        report.rows.append(ReportRow(c, ex, val, err, elapsed))
    return report


def summability_increments(backend: Semigroup, S: PrimeSet, a: ArithFn, cutoffs: Sequence[int]) -> tuple[list[float], bool]:
    """Cumulative ``sum |a(g)|/||g|| loglog ||g||`` per cutoff and whether increments decay.

    ``loglog t`` is taken as 0 for ``t < e^e``.
    """
    u = u_value(backend)
    top = max(cutoffs)
    additive = backend.axiom == "A#"
    buckets: dict = {}
    for g in backend.elements(top):
        if g.is_identity:
            continue
        v = a(g)
        if v == 0:
            continue
        nrm = to_float(g.norm, u)
        ll = math.log(math.log(nrm)) if nrm >= math.e ** math.e else 0.0
        key = g.degree if additive else int(g.norm)
        buckets.setdefault(key, []).append(abs(to_float(v, u)) / nrm * ll)
    totals = [math.fsum(x for k in sorted(buckets) if k <= c for x in buckets[k]) for c in cutoffs]
    incs = [b - a_ for a_, b in zip(totals, totals[1:])]
    tail = incs[len(incs) // 2:]
    decaying = len(tail) < 2 or tail[-1] <= max(tail[:-1])
    return totals, decaying


# -- b-transform ---------------------------------------------------------------


def b_transform_check(backend: Semigroup, S: PrimeSet, a: ArithFn, g: Element) -> Fraction:
    """``(mu*a)(g)/phi(g) - (mu*b)(g)/||g||`` with ``b(h) = sum_{k|h} (mu*a)(k) ||k|| / phi(k)``."""
    if isinstance(backend, GraphSemigroup):
        raise ExperimentError("the b-transform check needs rational norms")
    ma_cache: dict = {}

    def ma(h: Element) -> Fraction:
        k = h.key()
        if k not in ma_cache:
            ma_cache[k] = Fraction(mobius_convolve(a, h))
        return ma_cache[k]

    def inner(h: Element) -> Fraction:
        return ma(h) * Fraction(h.norm) / euler_phi(h)

    from .core import divisors

    def b(h: Element) -> Fraction:
        return sum((inner(k) for k, _ in divisors(h)), Fraction(0))

    return ma(g) / euler_phi(g) - Fraction(mobius_convolve(b, g)) / Fraction(g.norm)


# -- Q_S equidistribution -------------------------------------------------------


@dataclass
class EquidistributionRow:
    cutoff: int
    lhs: int
    ratio: float
    ref_fitted: Optional[float]
    ref_closed: Optional[float]


def closed_form_constant(backend: Semigroup) -> Optional[float]:
    """``c_G`` where a closed form is known."""
    if isinstance(backend, (PolySemigroup, IntegerSemigroup)):
        return 1.0
    if isinstance(backend, GaussianSemigroup):
        return math.pi / 4
    return None


def growth_base(backend: Semigroup) -> float:
    if isinstance(backend, PolySemigroup):
        return float(backend.q)
    if isinstance(backend, GraphSemigroup):
        return 1.0 / backend.radius.R_float
    return 1.0


def element_counts(backend: Semigroup, horizon: int) -> list[int]:
    """``G#(0..horizon)`` for A# backends, ``N(1..horizon)`` (cumulative) for A backends."""
    if isinstance(backend, GraphSemigroup):
        # the determinant series is exact at any horizon, unlike the class table
        return [int(c) for c in ihara_zeta_series(backend.graph, horizon)]
    if backend.axiom == "A#":
        pi = [0] * horizon
        for p in backend.primes:
            if p.degree <= horizon:
                pi[p.degree - 1] += 1
        return euler_transform(pi, horizon)
    counts = [0] * (horizon + 1)
    for g in backend.elements(horizon):
        counts[int(g.norm)] += 1
    return list(np.cumsum(counts[1:]).tolist())


def equidistribution_check(backend: Semigroup, S: PrimeSet, n_range: Sequence[int],
                           delta=None) -> list[EquidistributionRow]:
    """Per-degree (or cumulative by norm) sums of ``Q_S(g)`` against ``c_G delta(S) q^n``."""
    n_range = list(n_range)
    top = max(n_range)
    by = backend.by
    if delta is None:
        delta, _ = resolve_target(backend, S)
    delta = float(delta) if delta is not None else None
    additive = backend.axiom == "A#"
    sums: dict[int, int] = {}
    for g in backend.elements(top):
        if g.is_identity:
            continue
        p = g.factors[-1][0]
        size = p.degree if by == "degree" else p.norm
        q = sum(1 for P, _ in reversed(g.factors) if (P.degree if by == "degree" else P.norm) == size and P in S)
        if q:
            key = g.degree if additive else int(g.norm)
            sums[key] = sums.get(key, 0) + q
    fit_horizon = max(top, 6)
    fit = fit_axiom_constants(backend, element_counts(backend, fit_horizon))
    c_fit = None if fit.degenerate else fit.c
    c_closed = closed_form_constant(backend)
    base = growth_base(backend)
    rows = []
    for n in n_range:
        if additive:
            lhs = sums.get(n, 0)
            scale = base ** n
        else:
            lhs = sum(v for k, v in sums.items() if 2 <= k <= n)
            scale = float(n)
        ref = lambda c: None if c is None or delta is None else c * delta
        rows.append(EquidistributionRow(n, lhs, lhs / scale, ref(c_fit), ref(c_closed)))
    return rows


# -- partial-sum statistics -------------------------------------------------------


@dataclass
class Statistics:
    C: int
    M: int
    R: Value
    Phi: int
    R_float: float


def partial_sum_statistics(backend: Semigroup, n: int, m) -> Statistics:
    """``C, M, R, Phi`` over elements of size ``<= n`` whose smallest prime exceeds ``m``."""
    if n > backend_limit(backend):
        raise LimitError(f"{n} exceeds backend limit")
    by = backend.by
    additive = backend.axiom == "A#"
    C = M = Phi = 0
    R: Any = Fraction(0)
    for g in backend.elements(n):
        if g.is_identity:
            low = INF
        else:
            p = g.factors[0][0]
            low = p.degree if by == "degree" else p.norm
        if not low > m:
            continue
        Phi += 1
        mu = mobius(g)
        if mu:
            M += mu
            R = R + Fraction(mu) / g.norm if not isinstance(g.norm, LaurentPoly) else R + mu * g.norm ** -1
            if (g.degree if additive else g.norm) == n:
                C += mu
    return Statistics(C, M, R, Phi, to_float(R, u_value(backend)))


# -- density ------------------------------------------------------------------------


@dataclass
class DensityRow:
    cutoff: int
    count_S: int
    count_all: int
    ratio: Fraction


def density_estimate(backend: Semigroup, S: PrimeSet, horizon: Optional[int] = None,
                     cutoffs: Optional[Sequence[int]] = None) -> list[DensityRow]:
    """``pi_S / pi`` per degree (A#; graph lengths re-indexed by ``Delta_G``) or per norm cutoff (A)."""
    horizon = horizon or backend_limit(backend)
    rows = []
    if backend.axiom == "A#":
        delta = backend.radius.delta if isinstance(backend, GraphSemigroup) else 1
        per = {}
        for p in backend.primes:
            if p.degree <= horizon:
                c = per.setdefault(p.degree, [0, 0])
                c[1] += 1
                c[0] += p in S
        for nu in sorted(per):
            if nu % delta == 0 and per[nu][1]:
                rows.append(DensityRow(nu // delta, per[nu][0], per[nu][1], Fraction(per[nu][0], per[nu][1])))
        return rows
    if cutoffs is None:
        cutoffs = [c for c in (10 ** k for k in range(1, 10)) if c < horizon] + [horizon]
    primes = sorted(backend.primes, key=lambda p: p.norm)
    i = s_count = 0
    for c in sorted(cutoffs):
        while i < len(primes) and primes[i].norm <= c:
            s_count += primes[i] in S
            i += 1
        if i:
            rows.append(DensityRow(c, s_count, i, Fraction(s_count, i)))
    return rows


# -- constant fits ---------------------------------------------------------------------


@dataclass
class FitResult:
    c: float
    q: float
    eta: Optional[float]
    residuals: list[float]
    degenerate: bool = False
    note: str = ""
    exact_c: Optional[Fraction] = None
    q_reindexed: Optional[float] = None


def fit_axiom_constants(backend: Semigroup, counts: Sequence[int]) -> FitResult:
    """Diagnostic fit of ``c_G`` (and ``q``, ``eta``) from element counts.

    A#: ``counts = G#(0..N)``.  A: ``counts = N(1..N)`` cumulative.
    """
    counts = list(counts)
    if len(counts) < 6:
        return FitResult(float("nan"), float("nan"), None, [], True, "need at least 6 counts")
    if backend.axiom == "A":
        x = np.arange(1, len(counts) + 1, dtype=float)
        y = np.asarray(counts, dtype=float)
        c = float(x @ y / (x @ x))
        res = (y - c * x).tolist()
        eta = _slope_log(x, np.abs(np.asarray(res)))
        return FitResult(c, 1.0, eta, res)
    base = getattr(backend, "q", None)
    n = np.arange(len(counts))
    y = np.asarray(counts, dtype=float)
    if base is not None:
        ratios = {Fraction(counts[k], base ** k) for k in range(1, len(counts))}
        if len(ratios) == 1:
            c = ratios.pop()
            return FitResult(float(c), float(base), 0.0, [0.0] * (len(counts) - 1), exact_c=c)
    keep = (n >= 1) & (y > 0)
    if keep.sum() < 3:
        return FitResult(float("nan"), float("nan"), None, [], True, "too few nonzero counts")
    tail = np.flatnonzero(keep)
    tail = tail[len(tail) // 2:]
    slope, intercept = np.polyfit(n[tail], np.log(y[tail]), 1)
    q = float(base) if base is not None else float(math.exp(slope))
    c = float(np.mean(y[tail] / q ** n[tail]))
    res = [float(y[k] - c * q ** k) for k in range(1, len(counts))]
    eta = _slope_log(q ** n[1:].astype(float), np.abs(np.asarray(res)))
    delta = backend.radius.delta if isinstance(backend, GraphSemigroup) else 1
    return FitResult(c, q, eta, res, q_reindexed=q ** delta)


def _slope_log(x: np.ndarray, r: np.ndarray) -> Optional[float]:
    ok = (r > 0) & (x > 1)
    if ok.sum() < 2:
        return None
    slope, _ = np.polyfit(np.log(x[ok]), np.log(r[ok]), 1)
    return float(slope)


# -- duality fuzz ------------------------------------------------------------------------


class RandomWeight:
    """Admissible ``f``: random rationals, zero at the base size and at infinity."""

    def __init__(self, rng: random.Random, base: int):
        self.rng = rng
        self.base = base
        self.values: dict = {}

    def __call__(self, k):
        if k == INF or k == self.base:
            return 0
        if k not in self.values:
            self.values[k] = Fraction(self.rng.randint(-20, 20), self.rng.randint(1, 12))
        return self.values[k]


@dataclass
class FuzzResult:
    triples: int
    max_residual: Fraction
    failure: Optional[dict] = None

    def summary(self) -> str:
        return f"{self.triples} triples, max residual {self.max_residual}"


def hashed_prime_set(salt: int) -> PrimeSet:
    # deterministic pseudo-random subset: membership from a salted integer hash
    def member(p: Prime) -> bool:
        h = (p.id * 0x9E3779B97F4A7C15 + salt * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
        h ^= h >> 31
        return bool((h * 0x94D049BB133111EB >> 29) & 1)

    return PrimeSet(member, None, f"hashed({salt})")


def duality_fuzz(backend: Semigroup, cutoff, triples: int = 10_000, seed: int = 0,
                 elements: Optional[list[Element]] = None) -> FuzzResult:
    rng = random.Random(seed)
    pool = elements if elements is not None else list(backend.elements(cutoff))
    by = backend.by
    base = 0 if by == "degree" else 1
    worst = Fraction(0)
    for i in range(triples):
        g = pool[rng.randrange(len(pool))]
        choice = rng.random()
        if choice < 0.1:
            S = PrimeSet.all()
        elif choice < 0.2:
            S = PrimeSet.empty()
        else:
            S = hashed_prime_set(rng.getrandbits(32))
        f = RandomWeight(rng, base)
        r = duality_residual(g, S, f, by)
        if abs(r) > worst:
            worst = abs(r)
        if r != 0:
            return FuzzResult(i + 1, worst, {"g": repr(g), "S": S.description, "f": {str(k): str(v) for k, v in f.values.items()},
                                             "residual": str(r)})
    return FuzzResult(triples, worst)
