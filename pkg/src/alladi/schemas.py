"""Response models shared by the HTTP service and the CLI (requests use ``RunConfig``)."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel


class SumRow(BaseModel):
    cutoff: int
    sum_exact: Optional[str] = None
    sum_poly: Optional[str] = None
    sum_float: float
    abs_error: Optional[float] = None


class RunResponse(BaseModel):
    backend: str
    prime_set: str
    function: str
    weight: str
    target: Optional[str]
    target_source: str
    rows: list[SumRow]
    notes: list[str] = []
    csv: str
    table: str


class FuzzResponse(BaseModel):
    backend: str
    triples: int
    max_residual: str
    passed: bool
    failure: Optional[dict] = None
    summary: str


class ZetaRow(BaseModel):
    n: int
    primes: int
    elements: int
    mobius_sum: int


class GraphInfo(BaseModel):
    R: str
    R_float: float
    exact: bool
    delta: int
    kotani_lower: str
    kotani_upper: str


class ZetaResponse(BaseModel):
    backend: str
    rows: list[ZetaRow]
    graph: Optional[GraphInfo] = None
    assumption_nonzero: Optional[bool] = None
    table: str


class DensityRowModel(BaseModel):
    cutoff: int
    count_S: int
    count_all: int
    ratio: str
    ratio_float: float


class DensityResponse(BaseModel):
    backend: str
    prime_set: str
    rows: list[DensityRowModel]
    table: str


class StatsRow(BaseModel):
    n: int
    C: int
    M: int
    R: str
    R_float: float
    Phi: int


class StatsResponse(BaseModel):
    backend: str
    m: float
    rows: list[StatsRow]
    table: str


class ErrorResponse(BaseModel):
    detail: str
