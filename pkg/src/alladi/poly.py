"""Monic polynomials over F_q as an additive arithmetical semigroup.

Field elements are encoded as integers ``0..q-1``.  For prime ``q`` this is
the residue itself; for ``q = 4, 8, 9`` an element ``a_0 + a_1 t + ...`` of
``F_p[t]/(m(t))`` is encoded as ``sum a_i p^i`` with the fixed moduli below.
Polynomials are coefficient tuples, lowest degree first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .core import Element, Prime, PrimeSet, Semigroup

SUPPORTED_Q = (2, 3, 4, 5, 7, 8, 9)
# modulus coefficients over F_p, lowest first
FIELD_MODULI = {4: (2, (1, 1, 1)), 8: (2, (1, 1, 0, 1)), 9: (3, (1, 0, 1))}
DEFAULT_MAX_DEGREE = 20
# upper bound on q**degree for exhaustive sieving
WORK_LIMIT = 1 << 21


class UnsupportedFieldError(ValueError):
    pass


class FiniteField:
    """Addition/multiplication tables for F_q, q <= 9."""

    def __init__(self, q: int):
        if q not in SUPPORTED_Q:
            raise UnsupportedFieldError(f"q={q} not supported (choose from {SUPPORTED_Q})")
        self.q = q
        if q in FIELD_MODULI:
            p, modulus = FIELD_MODULI[q]
        else:
            p, modulus = q, (0, 1)
        self.p = p
        k = len(modulus) - 1

        def digits(a):
            return [(a // p ** i) % p for i in range(k)]

        def encode(ds):
            return sum(d * p ** i for i, d in enumerate(ds))

        def mul(a, b):
            da, db = digits(a), digits(b)
            prod = [0] * (2 * k - 1)
            for i, x in enumerate(da):
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
            for i in range(len(prod) - 1, k - 1, -1):
                c = prod[i]
                if c:
                    for j in range(k + 1):
                        prod[i - k + j] = (prod[i - k + j] - c * modulus[j]) % p
            return encode(prod[:k])

        self.add = np.array([[encode([(x + y) % p for x, y in zip(digits(a), digits(b))])
                              for b in range(q)] for a in range(q)], dtype=np.int64)
        self.mul = np.array([[mul(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
        self.neg = [int(np.where(self.add[a] == 0)[0][0]) for a in range(q)]
        self.inv = [None] + [int(np.where(self.mul[a] == 1)[0][0]) for a in range(1, q)]
        self._add = self.add.tolist()
        self._mul = self.mul.tolist()

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self.neg[b]]


@lru_cache(maxsize=None)
def get_field(q: int) -> FiniteField:
    return FiniteField(q)


def _trim(c: Sequence[int]) -> tuple[int, ...]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_mul(F: FiniteField, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    add, mul = F._add, F._mul
    for i, x in enumerate(a):
        if x:
            row = mul[x]
            for j, y in enumerate(b):
                out[i + j] = add[out[i + j]][row[y]]
    return _trim(out)


def poly_divmod(F: FiniteField, a: Sequence[int], b: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(_trim(a))
    db = len(b) - 1
    inv_lead = F.inv[b[-1]]
    quot = [0] * max(len(rem) - db, 0)
    add, mul, neg = F._add, F._mul, F.neg
    while len(rem) - 1 >= db and rem:
        shift = len(rem) - 1 - db
        c = mul[rem[-1]][inv_lead]
        quot[shift] = c
        for j, y in enumerate(b):
            rem[shift + j] = add[rem[shift + j]][neg[mul[c][y]]]
        while rem and rem[-1] == 0:
            rem.pop()
    return _trim(quot), tuple(rem)


def poly_gcd(F: FiniteField, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, poly_divmod(F, a, b)[1]
    if a:
        inv = F.inv[a[-1]]
        a = tuple(F._mul[inv][c] for c in a)
    return a


@dataclass(frozen=True)
class FqPoly:
    """A polynomial over F_q; ``coeffs`` lowest degree first, trailing zeros stripped."""

    q: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.q not in SUPPORTED_Q:
            raise UnsupportedFieldError(f"q={self.q} not supported")
        object.__setattr__(self, "coeffs", _trim(self.coeffs))
        if any(not 0 <= c < self.q for c in self.coeffs):
            raise ValueError("coefficients must lie in 0..q-1")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __mul__(self, other: "FqPoly") -> "FqPoly":
        return FqPoly(self.q, poly_mul(get_field(self.q), self.coeffs, other.coeffs))

    def __mod__(self, other: "FqPoly") -> "FqPoly":
        return FqPoly(self.q, poly_divmod(get_field(self.q), self.coeffs, other.coeffs)[1])

    def coefficient_string(self) -> str:
        return ",".join(str(c) for c in self.coeffs) if self.coeffs else "0"

    def __str__(self) -> str:
        return poly_text(self.coeffs)

    @classmethod
    def parse(cls, q: int, text: str) -> "FqPoly":
        return cls(q, parse_poly(text, q))


def poly_text(coeffs: Sequence[int]) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) if terms else "0"


_TERM = re.compile(r"^(\d*)(x(?:\^(\d+))?)?$")


def parse_poly(text: str, q: int) -> tuple[int, ...]:
    """Parse ``"c0,c1,...,cn"`` or ``"x^2+x+1"`` into a coefficient tuple."""
    text = text.strip().replace(" ", "")
    if not text:
        raise ValueError("empty polynomial")
    if "x" not in text and "+" not in text:
        coeffs = [int(t) for t in text.split(",")]
    else:
        coeffs = [0] * 1
        for term in text.split("+"):
            m = _TERM.match(term)
            if not term or not m or (not m.group(1) and not m.group(2)):
                raise ValueError(f"cannot parse term {term!r}")
            c = int(m.group(1)) if m.group(1) else 1
            k = 0 if not m.group(2) else (int(m.group(3)) if m.group(3) else 1)
            if len(coeffs) <= k:
                coeffs += [0] * (k + 1 - len(coeffs))
            if c >= q:
                raise ValueError(f"coefficient {c} outside F_{q}")
            coeffs[k] = get_field(q)._add[coeffs[k]][c]
    if any(not 0 <= c < q for c in coeffs):
        raise ValueError(f"coefficients must lie in 0..{q - 1}")
    return _trim(coeffs)


def _digits(indices: np.ndarray, q: int, length: int) -> np.ndarray:
    out = np.empty((indices.size, length), dtype=np.int64)
    rest = indices.copy()
    for j in range(length):
        out[:, j] = rest % q
        rest //= q
    return out


def _sieve_irreducibles(q: int, max_degree: int) -> list[tuple[int, ...]]:
    F = get_field(q)
    found: list[tuple[int, ...]] = []
    by_degree: dict[int, list[tuple[int, ...]]] = {}
    weights = q ** np.arange(max_degree + 1, dtype=np.int64)
    for d in range(1, max_degree + 1):
        composite = np.zeros(q ** d, dtype=bool)
        for k in range(1, d // 2 + 1):
            others = _digits(np.arange(q ** (d - k), dtype=np.int64), q, d - k)
            others = np.concatenate([others, np.ones((others.shape[0], 1), dtype=np.int64)], axis=1)
            for P in by_degree.get(k, []):
                prod = np.zeros((others.shape[0], d + 1), dtype=np.int64)
                for i, c in enumerate(P):
                    if c:
                        seg = prod[:, i:i + d - k + 1]
                        prod[:, i:i + d - k + 1] = F.add[seg, F.mul[c][others]]
                composite[prod[:, :d] @ weights[:d]] = True
        lows = _digits(np.flatnonzero(~composite), q, d)
        polys = sorted(tuple(int(x) for x in row) + (1,) for row in lows)
        by_degree[d] = polys
        found.extend(polys)
    return found


def enumerate_irreducibles(q: int, max_degree: int, limit: int = DEFAULT_MAX_DEGREE) -> list[Prime]:
    """Monic irreducibles of degree <= ``max_degree`` ordered by (degree, coefficients)."""
    if q not in SUPPORTED_Q:
        raise UnsupportedFieldError(f"q={q} not supported (choose from {SUPPORTED_Q})")
    if max_degree > limit or q ** max_degree > WORK_LIMIT:
        raise ValueError(f"max_degree={max_degree} exceeds the enumeration limit for q={q}")
    return [Prime(i, len(c) - 1, q ** (len(c) - 1), poly_text(c), c)
            for i, c in enumerate(_sieve_irreducibles(q, max_degree))]


def units_count(q: int, g: Sequence[int]) -> int:
    """``phi(g) = #(F_q[x]/(g))^*`` for monic ``g``."""
    F = get_field(q)
    rest = _trim(g)
    result = 1
    d = 1
    while 2 * d <= len(rest) - 1:
        # candidates run in increasing degree, so any divisor found is irreducible
        for idx in range(q ** d):
            cand = tuple((idx // q ** j) % q for j in range(d)) + (1,)
            e = 0
            while True:
                quo, r = poly_divmod(F, rest, cand)
                if r:
                    break
                rest, e = quo, e + 1
            if e:
                result *= q ** (d * (e - 1)) * (q ** d - 1)
        d += 1
    if len(rest) > 1:
        result *= q ** (len(rest) - 1) - 1
    return result


class PolySemigroup(Semigroup):
    """Monic polynomials over F_q graded by degree, norm ``q**deg``."""

    axiom = "A#"

    def __init__(self, q: int, max_degree: int = 12):
        self.q = q
        self.field = get_field(q)
        self.max_degree = max_degree
        self.name = f"poly(q={q})"
        self.primes = enumerate_irreducibles(q, max_degree)
        self._by_coeffs = {p.data: p for p in self.primes}

    @property
    def base(self) -> int:
        return self.q

    def prime_of(self, coeffs: Sequence[int]) -> Prime:
        return self._by_coeffs[_trim(coeffs)]

    def factor(self, F: FqPoly | Sequence[int]) -> Element:
        coeffs = F.coeffs if isinstance(F, FqPoly) else _trim(F)
        if not coeffs or coeffs[-1] != 1:
            raise ValueError("factor expects a monic polynomial")
        if len(coeffs) - 1 > self.max_degree:
            raise ValueError("degree exceeds the irreducible table")
        counts: dict[Prime, int] = {}
        rest = coeffs
        for P in self.primes:
            if 2 * P.degree > len(rest) - 1:
                break
            while True:
                quo, r = poly_divmod(self.field, rest, P.data)
                if r:
                    break
                rest = quo
                counts[P] = counts.get(P, 0) + 1
        if len(rest) > 1:
            P = self._by_coeffs[rest]
            counts[P] = counts.get(P, 0) + 1
        return Element.from_counts(counts)

    def polynomial(self, g: Element) -> FqPoly:
        out: tuple[int, ...] = (1,)
        for p, m in g.factors:
            for _ in range(m):
                out = poly_mul(self.field, out, p.data)
        return FqPoly(self.q, out)

    def residue_class_prime_set(self, g: FqPoly | Sequence[int], f: FqPoly | Sequence[int]) -> PrimeSet:
        return residue_class_prime_set(self.q, g, f)


def residue_class_prime_set(q: int, g: FqPoly | Sequence[int], f: FqPoly | Sequence[int]) -> PrimeSet:
    """Irreducibles ``P`` with ``P = f (mod g)``; density ``1/phi(g)``."""
    F = get_field(q)
    gc = g.coeffs if isinstance(g, FqPoly) else _trim(g)
    fc = f.coeffs if isinstance(f, FqPoly) else _trim(f)
    if not gc or gc[-1] != 1:
        raise ValueError("modulus must be monic")
    if len(fc) >= len(gc):
        raise ValueError("residue must have degree below the modulus")
    if poly_gcd(F, fc, gc) != (1,):
        raise ValueError("residue and modulus are not coprime")
    cache: dict[int, bool] = {}

    def member(p: Prime) -> bool:
        hit = cache.get(p.id)
        if hit is None:
            hit = cache[p.id] = poly_divmod(F, p.data, gc)[1] == fc
        return hit

    phi = units_count(q, gc)
    return PrimeSet(member, Fraction(1, phi), f"P = {poly_text(fc)} mod {poly_text(gc)} over F_{q}")
