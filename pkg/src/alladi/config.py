"""Run configuration: validation, key=value files and the small spec languages."""

from __future__ import annotations

import math
import re
from fractions import Fraction
from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .core import Element, PrimeSet
from .experiments import (
    EXACT_NORM_LIMIT,
    convolution_arith_fn,
    finite_support_fn,
)
from .graph import NAMED_GRAPHS, Graph, GraphSemigroup, named_graph, parse_edge_list
from .integers import GaussianSemigroup, IntegerSemigroup, residue_prime_set, split_type_prime_set
from .poly import SUPPORTED_Q, PolySemigroup, parse_poly

# dotted config-file keys accepted as aliases of flat field names
KEY_ALIASES = {
    "backend.poly.q": "q",
    "backend.poly.max_degree": "max_degree",
    "backend.int.limit": "limit",
    "backend.int.field": "field",
    "backend.graph.source": "graph",
    "backend.graph.max_len": "max_len",
    "set": "prime_set",
    "a": "function",
    "fn": "function",
    "cutoff": "cutoff",
}


class ConfigError(ValueError):
    pass


class RunConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    backend: Literal["poly", "int", "graph"] = "poly"
    q: int = 2
    max_degree: Optional[int] = None
    field: Literal["Q", "Qi"] = "Q"
    limit: Optional[int] = None
    graph: str = "k4"
    max_len: Optional[int] = None
    prime_set: str = "all"
    function: str = "identity"
    cutoff: Optional[float] = None
    cutoffs: Optional[list[int]] = None
    weight: Literal["norm", "phi"] = "norm"
    output: Optional[str] = None
    workers: int = Field(1, ge=1, le=256)
    seed: int = 0
    triples: int = Field(10_000, ge=1)
    timings: bool = False
    n: Optional[int] = None
    m: Optional[float] = None

    @field_validator("q")
    @classmethod
    def _q(cls, v: int) -> int:
        if v not in SUPPORTED_Q:
            raise ValueError(f"q must be one of {SUPPORTED_Q}")
        return v

    @field_validator("cutoffs")
    @classmethod
    def _cutoffs(cls, v):
        if v is not None and (not v or any(b <= a for a, b in zip(v, v[1:]))):
            raise ValueError("cutoffs must be strictly increasing")
        return v

    @model_validator(mode="after")
    def _graph_source(self):
        if self.backend == "graph" and self.graph not in NAMED_GRAPHS and not Path(self.graph).is_file():
            raise ValueError(f"graph must be one of {sorted(NAMED_GRAPHS)} or an edge-list file")
        return self

    @property
    def axiom(self) -> str:
        return "A" if self.backend == "int" else "A#"

    def resolved_cutoffs(self) -> list[int]:
        if self.cutoffs:
            return list(self.cutoffs)
        if self.axiom == "A#":
            top = int(self.cutoff) if self.cutoff is not None else (12 if self.backend == "poly" else 10)
            if top < 1:
                raise ConfigError("cutoff must be at least 1")
            return list(range(1, top + 1))
        top = int(self.cutoff) if self.cutoff is not None else EXACT_NORM_LIMIT
        if top < 2:
            raise ConfigError("cutoff must be at least 2")
        # decades up to the cutoff, then the cutoff itself
        out = [10 ** k for k in range(1, int(math.log10(top)) + 1) if 10 ** k < top]
        return out + [top]


def parse_config_file(text: str) -> dict:
    """``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"config line {lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = KEY_ALIASES.get(key, key).replace("-", "_")
        if key == "cutoffs":
            out[key] = [int(float(c)) for c in value.split(",") if c.strip()]
        else:
            out[key] = value
    return out


def build_config(file_values: dict, flag_values: dict) -> RunConfig:
    """Flags win over file values; ``None`` flags are treated as unset."""
    merged = dict(file_values)
    merged.update({k: v for k, v in flag_values.items() if v is not None})
    try:
        return RunConfig(**merged)
    except Exception as exc:  # pydantic.ValidationError and friends
        raise ConfigError(str(exc)) from exc


# -- backends -------------------------------------------------------------------


def load_graph(source: str) -> Graph:
    if source in NAMED_GRAPHS:
        return named_graph(source)
    path = Path(source)
    return parse_edge_list(path.read_text(), path.stem)


def build_backend(cfg: RunConfig, size: Optional[int] = None):
    """Backend sized for cutoffs up to ``size``."""
    if cfg.backend == "poly":
        return PolySemigroup(cfg.q, max(size or 0, cfg.max_degree or 12))
    if cfg.backend == "graph":
        return GraphSemigroup(load_graph(cfg.graph), max(size or 0, cfg.max_len or 10))
    limit = cfg.limit or min(max(size or 0, 100), EXACT_NORM_LIMIT)
    if cfg.field == "Qi":
        return GaussianSemigroup(max(limit, size or 0))
    return IntegerSemigroup(limit)


# -- prime sets ------------------------------------------------------------------------


_POLY_MOD = re.compile(r"^mod:(\[[^\]]*\]|[^,\[]+),(\[[^\]]*\]|[^,\[]+)$")


def parse_prime_set(spec: str, backend) -> PrimeSet:
    """``all | none | ids:i,j,... | mod:k,l (int) | mod:g,f (poly) | split | inert | ramified | split8 (Qi)``."""
    spec = spec.strip()
    if spec == "all":
        return PrimeSet.all()
    if spec in ("none", "empty"):
        return PrimeSet.empty()
    if spec.startswith("ids:"):
        try:
            ids = [int(s) for s in spec[4:].split(",") if s.strip()]
        except ValueError:
            raise ConfigError(f"bad prime ids in {spec!r}") from None
        return PrimeSet.from_ids(ids, spec)
    if spec.startswith("lengths:") and isinstance(backend, GraphSemigroup):
        lengths = {int(s) for s in spec[8:].split(",")}
        return PrimeSet(lambda p: p.degree in lengths, None, f"classes of length in {sorted(lengths)}")
    if isinstance(backend, GaussianSemigroup) and spec in ("split", "inert", "ramified", "split8"):
        return split_type_prime_set(spec)
    if spec.startswith("mod:") and isinstance(backend, IntegerSemigroup):
        try:
            k, l = (int(s) for s in spec[4:].split(","))
            return residue_prime_set(k, l)
        except ValueError as exc:
            raise ConfigError(f"bad residue class {spec!r}: {exc}") from None
    if spec.startswith("mod:") and isinstance(backend, PolySemigroup):
        m = _POLY_MOD.match(spec)
        if not m:
            raise ConfigError(f"bad polynomial residue class {spec!r}; use mod:G,F or mod:[c0,..],[c0,..]")
        try:
            g, f = (parse_poly(s.strip("[]"), backend.q) for s in m.groups())
            return backend.residue_class_prime_set(g, f)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    raise ConfigError(f"prime set {spec!r} not understood for backend {backend.name}")


# -- elements and arithmetic functions -------------------------------------------------


def parse_element(text: str, backend) -> Element:
    text = text.strip()
    try:
        if isinstance(backend, PolySemigroup):
            return backend.factor(parse_poly(text, backend.q))
        if isinstance(backend, GaussianSemigroup):
            m = re.fullmatch(r"\(?(-?\d+)\s*(?:([+-])\s*(\d*)i)?\)?", text)
            if not m:
                raise ValueError(f"bad Gaussian integer {text!r}")
            x = int(m.group(1))
            y = 0 if not m.group(2) else int(m.group(3) or 1) * (1 if m.group(2) == "+" else -1)
            return backend.factor(x, y)
        if isinstance(backend, IntegerSemigroup):
            return backend.factor_integer(int(text))
        if isinstance(backend, GraphSemigroup):
            if text in ("e", "1"):
                return Element()
            by_label = {p.label: p for p in backend.primes}
            counts = {}
            for part in text.split("*"):
                part = part.strip()
                p = backend.primes[int(part[1:])] if part.startswith("#") else by_label[part]
                counts[p] = counts.get(p, 0) + 1
            return Element.from_counts(counts)
    except (KeyError, IndexError, ValueError) as exc:
        raise ConfigError(f"cannot parse element {text!r}: {exc}") from None
    raise ConfigError("unknown backend")


def parse_function(spec: str, backend, S: PrimeSet):
    """``identity | power:alpha | file:path`` (file lines: ``element value``)."""
    from .core import CONVOLUTION_IDENTITY

    spec = spec.strip()
    if spec == "identity":
        return CONVOLUTION_IDENTITY
    if spec.startswith("power:"):
        try:
            alpha = Fraction(spec[6:])
        except ValueError:
            raise ConfigError(f"bad exponent in {spec!r}") from None
        if alpha <= 0:
            raise ConfigError("power-decay exponent must be positive")
        return convolution_arith_fn(backend, S, alpha)
    if spec.startswith("file:"):
        path = Path(spec[5:])
        if not path.is_file():
            raise ConfigError(f"function file {path} not found")
        values = {}
        for lineno, line in enumerate(path.read_text().splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            elem, _, val = line.rpartition(" ")
            if not elem:
                raise ConfigError(f"{path}:{lineno}: expected 'element value'")
            try:
                values[parse_element(elem, backend)] = Fraction(val)
            except ValueError:
                raise ConfigError(f"{path}:{lineno}: bad value {val!r}") from None
        try:
            return finite_support_fn(backend, S, values, f"file({path.name})")
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    raise ConfigError(f"arithmetic function {spec!r} not understood")
