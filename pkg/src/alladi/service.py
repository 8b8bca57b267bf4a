"""Command implementations and the FastAPI app that exposes them.

Each ``do_*`` function takes a validated ``RunConfig`` and returns a
response model; the CLI calls them in process or over HTTP.
"""

from __future__ import annotations

from fractions import Fraction

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .config import ConfigError, RunConfig, build_backend, parse_function, parse_prime_set
from .core import INF, LaurentPoly, mobius
from .experiments import (
    SIEVE_LIMIT,
    ExperimentError,
    alladi_partial_sums,
    density_estimate,
    duality_fuzz,
    format_poly,
    format_value,
    partial_sum_statistics,
)
from .graph import closed_walk_counts, ihara_polynomial, ihara_zeta_series, prime_class_counts
from .integers import IntegerSemigroup
from .schemas import (
    DensityResponse,
    DensityRowModel,
    FuzzResponse,
    GraphInfo,
    RunResponse,
    StatsResponse,
    StatsRow,
    SumRow,
    ZetaResponse,
    ZetaRow,
)
from .series import PowerSeries, assumption_check_minus_q_inverse, euler_transform

# default fuzz ranges per backend: degree for A#, norm for A
FUZZ_RANGE = {"poly": {2: 10, 3: 6}, "int": 10 ** 4, "graph": 8}


def do_run(cfg: RunConfig) -> RunResponse:
    cutoffs = cfg.resolved_cutoffs()
    backend = build_backend(cfg, cutoffs[-1])
    S = parse_prime_set(cfg.prime_set, backend)
    a = parse_function(cfg.function, backend, S)
    report = alladi_partial_sums(backend, S, a, cutoffs, cfg.weight, cfg.workers)
    rows = []
    for r in report.rows:
        rows.append(SumRow(
            cutoff=r.cutoff,
            sum_exact=format_value(r.exact) if isinstance(r.exact, Fraction) else None,
            sum_poly=format_poly(r.exact) if isinstance(r.exact, LaurentPoly) else None,
            sum_float=r.value,
            abs_error=r.abs_error,
        ))
    return RunResponse(
        backend=report.backend, prime_set=report.prime_set, function=report.function, weight=report.weight,
        target=format_value(report.target) or None, target_source=report.target_source, rows=rows,
        notes=report.notes, csv=report.to_csv(cfg.timings), table=report.table(),
    )


def fuzz_range(cfg: RunConfig):
    if cfg.cutoff is not None:
        return int(cfg.cutoff)
    if cfg.backend == "poly":
        return FUZZ_RANGE["poly"].get(cfg.q, 4)
    return FUZZ_RANGE[cfg.backend]


def do_duality_fuzz(cfg: RunConfig) -> FuzzResponse:
    top = fuzz_range(cfg)
    backend = build_backend(cfg, top)
    result = duality_fuzz(backend, top, cfg.triples, cfg.seed)
    return FuzzResponse(backend=backend.name, triples=result.triples, max_residual=str(result.max_residual),
                        passed=result.failure is None, failure=result.failure, summary=result.summary())


def do_zeta(cfg: RunConfig) -> ZetaResponse:
    if cfg.cutoff is not None:
        N = int(cfg.cutoff)
    else:
        N = {"poly": cfg.max_degree or 12, "graph": cfg.max_len or 12, "int": 30}[cfg.backend]
    info = None
    assumption = None
    if cfg.backend == "int":
        backend = build_backend(cfg, N)
        primes, elems, mus = [0] * (N + 1), [0] * (N + 1), [0] * (N + 1)
        for p in backend.primes:
            if p.norm <= N:
                primes[p.norm] += 1
        for g in backend.elements(N):
            k = int(g.norm)
            elems[k] += 1
            mus[k] += mobius(g)
        rows = [ZetaRow(n=k, primes=primes[k], elements=elems[k], mobius_sum=mus[k]) for k in range(1, N + 1)]
        header = "norm"
    elif cfg.backend == "graph":
        backend = build_backend(cfg, min(N, 10))
        G = backend.graph
        pi = prime_class_counts(G, N, closed_walk_counts(G, N))
        Z = ihara_zeta_series(G, N)
        recip = PowerSeries(ihara_polynomial(G), N)
        rows = [ZetaRow(n=k, primes=pi[k - 1], elements=int(Z[k]), mobius_sum=int(recip[k])) for k in range(1, N + 1)]
        ri = backend.radius
        info = GraphInfo(R=format_value(ri.R), R_float=ri.R_float, exact=ri.exact, delta=ri.delta,
                         kotani_lower=format_value(ri.kotani_bounds[0]), kotani_upper=format_value(ri.kotani_bounds[1]))
        assumption = assumption_check_minus_q_inverse(Z, 1 / ri.R) if ri.exact else None
        header = "length"
    else:
        backend = build_backend(cfg, N)
        pi = [0] * N
        for p in backend.primes:
            if p.degree <= N:
                pi[p.degree - 1] += 1
        counts = euler_transform(pi, N)
        Z = PowerSeries(counts, N)
        recip = Z.reciprocal()
        rows = [ZetaRow(n=k, primes=pi[k - 1], elements=counts[k], mobius_sum=int(recip[k])) for k in range(1, N + 1)]
        assumption = assumption_check_minus_q_inverse(Z, cfg.q)
        header = "degree"
    lines = [f"{backend.name}", f"{header:>8} {'pi#':>10} {'G#':>14} {'C_mu':>10}"]
    lines += [f"{r.n:>8} {r.primes:>10} {r.elements:>14} {r.mobius_sum:>10}" for r in rows]
    if info:
        lines.append(f"R_G = {info.R} ({info.R_float!r}, exact={info.exact})  Delta_G = {info.delta}  "
                     f"Kotani-Sunada bounds [{info.kotani_lower}, {info.kotani_upper}]")
    if assumption is not None or cfg.backend == "poly":
        lines.append(f"Z(-1/q) nonzero: {'inconclusive' if assumption is None else assumption}")
    return ZetaResponse(backend=backend.name, rows=rows, graph=info, assumption_nonzero=assumption, table="\n".join(lines))


def do_density(cfg: RunConfig) -> DensityResponse:
    horizon = int(cfg.cutoff) if cfg.cutoff is not None else None
    if cfg.backend == "int" and cfg.field == "Q" and horizon is not None:
        # counting primes only needs the sieve, so the table may exceed the exact-sum limit
        if horizon > SIEVE_LIMIT:
            raise ConfigError(f"cutoff {horizon} exceeds {SIEVE_LIMIT}")
        backend = IntegerSemigroup(max(horizon, cfg.limit or 0))
    else:
        backend = build_backend(cfg, horizon)
    S = parse_prime_set(cfg.prime_set, backend)
    rows = density_estimate(backend, S, horizon, cfg.cutoffs)
    models = [DensityRowModel(cutoff=r.cutoff, count_S=r.count_S, count_all=r.count_all,
                              ratio=format_value(r.ratio), ratio_float=float(r.ratio)) for r in rows]
    lines = [f"{backend.name}  S: {S.description}", f"{'cutoff':>10} {'pi_S':>10} {'pi':>10} {'ratio':>12}"]
    lines += [f"{r.cutoff:>10} {r.count_S:>10} {r.count_all:>10} {r.ratio_float:>12.6f}" for r in models]
    return DensityResponse(backend=backend.name, prime_set=S.description, rows=models, table="\n".join(lines))


def do_stats(cfg: RunConfig) -> StatsResponse:
    n = cfg.n if cfg.n is not None else (int(cfg.cutoff) if cfg.cutoff is not None else 8)
    m = cfg.m if cfg.m is not None else 0
    m = INF if m == float("inf") else (int(m) if float(m).is_integer() else m)
    backend = build_backend(cfg, n)
    levels = range(0, n + 1) if backend.axiom == "A#" else [n]
    rows = []
    for k in levels:
        st = partial_sum_statistics(backend, k, m)
        R = format_poly(st.R) if isinstance(st.R, LaurentPoly) else format_value(Fraction(st.R))
        rows.append(StatsRow(n=k, C=st.C, M=st.M, R=R, R_float=st.R_float, Phi=st.Phi))
    lines = [f"{backend.name}  m = {m}", f"{'n':>8} {'C':>8} {'M':>8} {'Phi':>10} {'R':>20}"]
    lines += [f"{r.n:>8} {r.C:>8} {r.M:>8} {r.Phi:>10} {r.R_float:>20.12f}" for r in rows]
    return StatsResponse(backend=backend.name, m=float(m), rows=rows, table="\n".join(lines))


COMMANDS = {
    "run": do_run,
    "duality-fuzz": do_duality_fuzz,
    "zeta": do_zeta,
    "density": do_density,
    "stats": do_stats,
}

USAGE_ERRORS = (ConfigError, ExperimentError, ValueError)

app = FastAPI(title="alladi", description="Alladi-type partial sums over arithmetical semigroups")


@app.exception_handler(ConfigError)
@app.exception_handler(ExperimentError)
async def _usage_error(request, exc):
    return JSONResponse(status_code=422, content={"detail": str(exc)})


@app.post("/run", response_model=RunResponse)
def run_endpoint(cfg: RunConfig) -> RunResponse:
    return do_run(cfg)


@app.post("/duality-fuzz", response_model=FuzzResponse)
def fuzz_endpoint(cfg: RunConfig) -> FuzzResponse:
    return do_duality_fuzz(cfg)


@app.post("/zeta", response_model=ZetaResponse)
def zeta_endpoint(cfg: RunConfig) -> ZetaResponse:
    return do_zeta(cfg)


@app.post("/density", response_model=DensityResponse)
def density_endpoint(cfg: RunConfig) -> DensityResponse:
    return do_density(cfg)


@app.post("/stats", response_model=StatsResponse)
def stats_endpoint(cfg: RunConfig) -> StatsResponse:
    return do_stats(cfg)


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}
