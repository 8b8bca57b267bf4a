"""Axiom A backends: positive integers (K = Q) and ideals of Z[i] (K = Q(i))."""

from __future__ import annotations

import math
from bisect import bisect_right
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from .core import Element, Prime, PrimeSet, Semigroup

DEFAULT_LIMIT = 10 ** 4
GAUSSIAN_LIMIT = 10 ** 6


def sieve_primes(limit: int) -> np.ndarray:
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if flags[p]:
            flags[p * p::2 * p] = False
    return np.flatnonzero(flags)


def smallest_prime_factors(limit: int) -> np.ndarray:
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in sieve_primes(math.isqrt(limit)):
        seg = spf[p * p::p]
        seg[seg == 0] = p
    idx = np.flatnonzero(spf == 0)
    spf[idx] = idx
    return spf


def mobius_sieve(limit: int) -> np.ndarray:
    """``mu(n)`` for ``0 <= n <= limit`` with ``mu(0) = 0``."""
    mu = np.ones(limit + 1, dtype=np.int8)
    mu[0] = 0
    for p in sieve_primes(limit):
        mu[p::p] *= -1
        mu[p * p::p * p] = 0
    return mu


def totient_sieve(limit: int) -> np.ndarray:
    phi = np.arange(limit + 1, dtype=np.int64)
    for p in sieve_primes(limit):
        phi[p::p] -= phi[p::p] // p
    return phi


def totient(k: int) -> int:
    result, n, p = k, k, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


class OutOfRangeError(ValueError):
    pass


class IntegerSemigroup(Semigroup):
    """Positive integers under multiplication, norm ``n``."""

    axiom = "A"
    name = "int(Q)"

    def __init__(self, limit: int = DEFAULT_LIMIT):
        self._build(limit)

    def _build(self, limit: int) -> None:
        self.limit = limit
        self._plist = [int(p) for p in sieve_primes(limit)]
        self.primes = [Prime(i, None, p, str(p), p) for i, p in enumerate(self._plist)]
        self._spf = smallest_prime_factors(limit)

    def prime(self, p: int) -> Prime:
        i = bisect_right(self._plist, p) - 1
        if i < 0 or self._plist[i] != p:
            raise ValueError(f"{p} is not a prime in the table")
        return self.primes[i]

    def factor_integer(self, n: int) -> Element:
        if n < 1 or n > self.limit ** 2:
            raise OutOfRangeError(f"n={n} outside 1..{self.limit ** 2}")
        counts: dict[int, int] = {}
        rest = n
        if rest > self.limit:
            for p in self._plist:
                if p * p > rest or rest <= self.limit:
                    break
                while rest % p == 0:
                    counts[p] = counts.get(p, 0) + 1
                    rest //= p
            if rest > self.limit:
                # prime cofactor beyond the table: grow the table to keep ids dense
                self._build(rest)
        while rest > 1:
            p = int(self._spf[rest])
            counts[p] = counts.get(p, 0) + 1
            rest //= p
        return Element(tuple((self.prime(p), m) for p, m in sorted(counts.items())))

    def integer(self, g: Element) -> int:
        return int(g.norm)

    def residue_prime_set(self, k: int, l: int) -> PrimeSet:
        return residue_prime_set(k, l)


def residue_prime_set(k: int, l: int) -> PrimeSet:
    """Rational primes ``p = l (mod k)``; density ``1/phi(k)``."""
    if k < 1 or math.gcd(k, l) != 1:
        raise ValueError(f"gcd({k}, {l}) must be 1")
    r = l % k
    return PrimeSet(lambda p: p.data % k == r, Fraction(1, totient(k)), f"p = {r} mod {k}")


def two_squares(p: int) -> tuple[int, int]:
    """``(a, b)`` with ``a^2 + b^2 = p``, ``a > b > 0``, for a prime ``p = 1 mod 4``."""
    # a square root of -1 mod p, then Euclid down to sqrt(p) (Hermite-Serret)
    for c in range(2, p):
        x = pow(c, (p - 1) // 4, p)
        if x * x % p == p - 1:
            break
    a, b = p, x
    bound = math.isqrt(p)
    while b > bound:
        a, b = b, a % b
    c = math.isqrt(p - b * b)
    return (b, c) if b > c else (c, b)


SPLIT_TYPES = ("split", "inert", "ramified", "split8")


class GaussianSemigroup(Semigroup):
    """Nonzero ideals of Z[i] ordered by absolute norm.

    Each ideal has a unique generator ``x + yi`` with ``x > 0, y >= 0``; prime
    ideals carry ``data = (x, y, kind, p)`` with ``kind`` in split/inert/ramified.
    """

    axiom = "A"
    name = "int(Qi)"

    def __init__(self, limit: int = DEFAULT_LIMIT):
        if limit > GAUSSIAN_LIMIT:
            raise OutOfRangeError(f"Gaussian norm limit {limit} exceeds {GAUSSIAN_LIMIT}")
        self.limit = limit
        raw = []
        for p in (int(v) for v in sieve_primes(limit)):
            if p == 2:
                raw.append((2, (1, 1), "ramified", 2))
            elif p % 4 == 1:
                a, b = two_squares(p)
                raw.append((p, (a, b), "split", p))
                raw.append((p, (b, a), "split", p))
            elif p * p <= limit:
                raw.append((p * p, (p, 0), "inert", p))
        raw.sort(key=lambda t: (t[0], t[1]))
        self.primes = [Prime(i, None, n, _gauss_label(*xy), (xy[0], xy[1], kind, p))
                       for i, (n, xy, kind, p) in enumerate(raw)]
        self._by_rational: dict[int, list[Prime]] = {}
        for P in self.primes:
            self._by_rational.setdefault(P.data[3], []).append(P)

    def ideals(self, X: Optional[int] = None) -> Iterator[Element]:
        """All ideals of norm <= X as Elements (``factor_gaussian_ideal``)."""
        X = self.limit if X is None else X
        if X > self.limit:
            raise OutOfRangeError("norm bound beyond the prime table")
        return self.elements(X)

    def factor(self, x: int, y: int) -> Element:
        """Prime-ideal factorisation of the ideal ``(x + yi)``."""
        n = x * x + y * y
        if n == 0:
            raise ValueError("zero has no ideal factorisation")
        if n > self.limit ** 2:
            raise OutOfRangeError("norm too large")
        counts: dict[Prime, int] = {}
        rest_n = n
        zx, zy = x, y
        for p in (int(v) for v in sieve_primes(math.isqrt(n) + 1)) if n > 1 else ():
            if rest_n % p:
                continue
            for P in self._by_rational.get(p, []):
                a, b, kind, _ = P.data
                norm = a * a + b * b
                while True:
                    # (zx + zy i) / (a + b i) = (zx + zy i)(a - b i) / norm
                    rx, ry = zx * a + zy * b, zy * a - zx * b
                    if rx % norm or ry % norm:
                        break
                    zx, zy = rx // norm, ry // norm
                    rest_n //= norm
                    counts[P] = counts.get(P, 0) + 1
        if rest_n > 1:
            # one prime factor left: rest_n is p (split/ramified) or p^2 (inert)
            for P in self._by_rational.get(rest_n, []) + self._by_rational.get(math.isqrt(rest_n), []):
                a, b, _, _ = P.data
                norm = a * a + b * b
                rx, ry = zx * a + zy * b, zy * a - zx * b
                if norm == rest_n and rx % norm == 0 and ry % norm == 0:
                    counts[P] = counts.get(P, 0) + 1
                    rest_n = 1
                    break
            if rest_n != 1:
                raise OutOfRangeError("prime factor outside the prime table")
        return Element.from_counts(counts)

    def split_type_prime_set(self, kind: str) -> PrimeSet:
        return split_type_prime_set(kind)


def _gauss_label(x: int, y: int) -> str:
    return f"({x}+{y}i)" if y else f"({x})"


def split_type_prime_set(kind: str) -> PrimeSet:
    if kind not in SPLIT_TYPES:
        raise ValueError(f"split type must be one of {SPLIT_TYPES}")
    if kind == "split8":
        return PrimeSet(lambda P: P.data[2] == "split" and P.data[3] % 8 == 1, None, "split above p = 1 mod 8")
    return PrimeSet(lambda P: P.data[2] == kind, None, f"{kind} prime ideals")


def gaussian_ideal_counts_bruteforce(X: int) -> list[int]:
    """Ideals of each norm ``0..X`` by counting generators with ``x > 0, y >= 0``."""
    counts = [0] * (X + 1)
    for x in range(1, math.isqrt(X) + 1):
        for y in range(0, math.isqrt(X - x * x) + 1):
            counts[x * x + y * y] += 1
    return counts
