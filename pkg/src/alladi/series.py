"""Truncated power series with exact rational coefficients and Euler transforms."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

DEFAULT_ORDER = 24


def _divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(n ** 0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def mobius_int(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


@dataclass(frozen=True)
class PowerSeries:
    """``sum_{n<=N} c_n z^n`` with ``N = order``."""

    coefficients: tuple[Fraction, ...]

    def __init__(self, coefficients: Iterable, order: Optional[int] = None):
        coeffs = [Fraction(c) for c in coefficients]
        if order is None:
            order = max(len(coeffs) - 1, 0)
        coeffs = (coeffs + [Fraction(0)] * (order + 1))[: order + 1]
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.coefficients[n]

    def __len__(self) -> int:
        return len(self.coefficients)

    @classmethod
    def one(cls, order: int = DEFAULT_ORDER) -> "PowerSeries":
        return cls([1], order)

    def truncate(self, order: int) -> "PowerSeries":
        return PowerSeries(self.coefficients, order)

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.order, other.order)
        return PowerSeries([a + b for a, b in zip(self.coefficients, other.coefficients)], n)

    def __neg__(self) -> "PowerSeries":
        return PowerSeries([-c for c in self.coefficients])

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        return self + (-other)

    def __mul__(self, other) -> "PowerSeries":
        if not isinstance(other, PowerSeries):
            return PowerSeries([c * other for c in self.coefficients])
        n = min(self.order, other.order)
        a, b = self.coefficients, other.coefficients
        out = []
        for k in range(n + 1):
            out.append(sum((a[i] * b[k - i] for i in range(k + 1) if a[i] and b[k - i]), Fraction(0)))
        return PowerSeries(out, n)

    __rmul__ = __mul__

    def reciprocal(self) -> "PowerSeries":
        c = self.coefficients
        if c[0] == 0:
            raise ZeroDivisionError("series with zero constant term has no reciprocal")
        inv0 = 1 / c[0]
        out = [inv0]
        for k in range(1, self.order + 1):
            s = sum((c[i] * out[k - i] for i in range(1, k + 1) if c[i]), Fraction(0))
            out.append(-s * inv0)
        return PowerSeries(out)

    def derivative(self) -> "PowerSeries":
        c = self.coefficients
        return PowerSeries([k * c[k] for k in range(1, len(c))], max(self.order - 1, 0))

    def log_derivative(self) -> "PowerSeries":
        """``Z'/Z`` truncated one order below ``self``."""
        return self.derivative() * self.truncate(max(self.order - 1, 0)).reciprocal()

    def evaluate(self, z) -> Fraction:
        total, power = Fraction(0), Fraction(1)
        for c in self.coefficients:
            total += c * power
            power *= z
        return total

    def partial_sums(self, z) -> list[Fraction]:
        out, total, power = [], Fraction(0), Fraction(1)
        for c in self.coefficients:
            total += c * power
            power *= z
            out.append(total)
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "numerator", "denominator"])
        for i, c in enumerate(self.coefficients):
            w.writerow([i, c.numerator, c.denominator])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "PowerSeries":
        rows = list(csv.DictReader(io.StringIO(text)))
        rows.sort(key=lambda r: int(r["index"]))
        return cls([Fraction(int(r["numerator"]), int(r["denominator"])) for r in rows])


def _weighted_prime_sums(prime_counts: Sequence[int], order: int) -> list[int]:
    # c(k) = sum_{d|k} d * pi(d), with prime_counts[0] standing for pi(1)
    c = [0] * (order + 1)
    for d in range(1, order + 1):
        pd = prime_counts[d - 1] if d - 1 < len(prime_counts) else 0
        if pd:
            for k in range(d, order + 1, d):
                c[k] += d * pd
    return c


def euler_transform(prime_counts: Sequence[int], order: Optional[int] = None) -> list[int]:
    """Element counts ``G#(0..N)`` from prime counts ``pi#(1..N)``.

    Uses ``n G#(n) = sum_{k=1}^n c(k) G#(n-k)`` with ``c(k) = sum_{d|k} d pi#(d)``,
    the coefficient form of ``z Z'/Z``.
    """
    if any(p < 0 for p in prime_counts):
        raise ValueError("prime counts must be nonnegative")
    n_max = len(prime_counts) if order is None else order
    c = _weighted_prime_sums(prime_counts, n_max)
    g = [1] + [0] * n_max
    for n in range(1, n_max + 1):
        s = sum(c[k] * g[n - k] for k in range(1, n + 1))
        q, r = divmod(s, n)
        assert r == 0
        g[n] = q
    return g


class InconsistentCountsError(ValueError):
    pass


def inverse_euler_transform(element_counts: Sequence[int]) -> list[int]:
    """Prime counts ``pi#(1..N)`` whose Euler transform is ``element_counts``."""
    g = list(element_counts)
    if not g or g[0] != 1:
        raise InconsistentCountsError("G#(0) must be 1")
    n_max = len(g) - 1
    c = [0] * (n_max + 1)
    for n in range(1, n_max + 1):
        c[n] = n * g[n] - sum(c[k] * g[n - k] for k in range(1, n))
    out = []
    for n in range(1, n_max + 1):
        s = sum(mobius_int(n // d) * c[d] for d in _divisors(n))
        q, r = divmod(s, n)
        if r or q < 0:
            raise InconsistentCountsError(f"recovered pi#({n}) = {Fraction(s, n)} is not a nonnegative integer")
        out.append(q)
    return out


def zeta_from_prime_counts(prime_counts: Sequence[int], order: int = DEFAULT_ORDER) -> PowerSeries:
    return PowerSeries(euler_transform(prime_counts, order), order)


def reciprocal_coefficients(Z: PowerSeries) -> PowerSeries:
    """Coefficients of ``1/Z``; for a semigroup zeta these are ``sum_{deg g = n} mu(g)``."""
    return Z.reciprocal()


def assumption_check_minus_q_inverse(Z: PowerSeries, q, window: int = 6, tol: float = 1e-9) -> Optional[bool]:
    """Heuristic check that ``Z(-1/q)`` is a finite nonzero number.

    The series of ``Z`` itself sits on its circle of convergence at ``-1/q``,
    so the reciprocal series is summed instead: ``Z(-1/q) = 1/W`` with
    ``W = (1/Z)(-1/q)``.  Returns ``True`` when the partial sums of ``W``
    stabilise away from zero, ``False`` when they stabilise at zero (a pole of
    ``Z``) or the terms clearly fail to decay (a zero of ``Z``), and ``None``
    when the window is inconclusive.
    """
    z = -Fraction(1) / Fraction(q)
    W = Z.reciprocal()
    sums = W.partial_sums(z)
    window = min(window, len(sums) - 1) if len(sums) > 1 else 0
    tail = sums[len(sums) - 1 - window:]
    terms = [abs(float(tail[i + 1] - tail[i])) for i in range(len(tail) - 1)]
    value = float(sums[-1])
    scale = max(1.0, abs(value))
    if all(t <= tol * scale for t in terms):
        return abs(value) > tol
    if terms and min(terms) >= 0.5 * max(terms) and max(terms) > 1e-3:
        return False
    return None
