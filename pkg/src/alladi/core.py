"""Backend-independent semigroup elements and the Moebius / convolution calculus.

Elements are finite multisets of primes stored as a sorted tuple of
``(Prime, multiplicity)`` pairs.  Sizes of primes are either an integer degree
(additive, Axiom A# style semigroups) or a norm (multiplicative, Axiom A
style).  Every routine here is pure and works in exact arithmetic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Iterator, Mapping, Optional, Union

INF = math.inf

Number = Union[int, Fraction]


class IdentityElementError(ValueError):
    """Raised when an operation needs at least one prime factor."""


class InadmissibleWeightError(ValueError):
    """Raised when a duality weight does not vanish where it must."""


@dataclass(frozen=True)
class LaurentPoly:
    """Finite sum ``sum c_e * u**e`` with rational exponents and coefficients.

    Used for norms that are powers of an irrational base, e.g. the graph
    backend where ``||P|| = u**(-length)`` with ``u = R_G``.  Arithmetic is
    exact; a number is only produced by :meth:`evaluate`.
    """

    terms: tuple[tuple[Fraction, Fraction], ...] = ()

    @classmethod
    def monomial(cls, exponent: Number, coeff: Number = 1) -> "LaurentPoly":
        if coeff == 0:
            return cls()
        return cls(((Fraction(exponent), Fraction(coeff)),))

    @classmethod
    def from_dict(cls, d: Mapping[Fraction, Fraction]) -> "LaurentPoly":
        return cls(tuple(sorted((Fraction(e), Fraction(c)) for e, c in d.items() if c != 0)))

    def as_dict(self) -> dict[Fraction, Fraction]:
        return dict(self.terms)

    def _coerce(self, other: Any) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.monomial(0, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = self.as_dict()
        for e, c in other.terms:
            d[e] = d.get(e, 0) + c
        return LaurentPoly.from_dict(d)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d: dict[Fraction, Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                d[e1 + e2] = d.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly.from_dict(d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ZeroDivisionError("only monomials can be inverted")
            (e, c), = self.terms
            return LaurentPoly.monomial(e * k, Fraction(1) / c ** (-k))
        out = LaurentPoly.monomial(0, 1)
        for _ in range(k):
            out = out * self
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly(tuple((e, c / other) for e, c in self.terms))
        if isinstance(other, LaurentPoly):
            return self * other ** -1
        return NotImplemented

    def __rtruediv__(self, other):
        return self ** -1 * other

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.monomial(0, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, u: Union[Number, float]) -> Union[Fraction, float]:
        """Value at ``u``; exact when ``u`` is rational and exponents are integers."""
        if isinstance(u, (int, Fraction)) and all(e.denominator == 1 for e, _ in self.terms):
            u = Fraction(u)
            return sum((c * u ** int(e) for e, c in self.terms), Fraction(0))
        return math.fsum(float(c) * float(u) ** float(e) for e, c in self.terms)


NormValue = Union[int, Fraction, LaurentPoly]


@dataclass(frozen=True)
class Prime:
    """An atom of the semigroup.

    ``degree`` is set for additive backends, ``norm`` for every backend whose
    norm is known (possibly symbolically).  ``data`` carries the backend
    representative (polynomial coefficients, Gaussian generator, edge cycle).
    """

    id: int
    degree: Optional[int]
    norm: Optional[NormValue]
    label: str
    data: Any = field(default=None, compare=False, hash=False)

    def __repr__(self) -> str:
        return f"Prime({self.id}, {self.label!r})"


def _size(p: Prime, by: str) -> Any:
    if by == "degree":
        return p.degree
    if by == "norm":
        if isinstance(p.norm, LaurentPoly) or p.norm is None:
            raise TypeError(f"prime {p.label} has no orderable norm")
        return p.norm
    raise ValueError(f"unknown ordering {by!r}")


def default_order(p: Prime) -> str:
    return "degree" if p.degree is not None else "norm"


@dataclass(frozen=True)
class Element:
    """A finite product of primes in canonical (prime-id sorted) form."""

    factors: tuple[tuple[Prime, int], ...] = ()

    def __post_init__(self):
        prev = -1
        for p, m in self.factors:
            if m < 1:
                raise ValueError("multiplicities must be positive")
            if p.id <= prev:
                raise ValueError("factors must be strictly increasing in prime id")
            prev = p.id

    @classmethod
    def from_counts(cls, counts: Mapping[Prime, int] | Iterable[tuple[Prime, int]]) -> "Element":
        items = counts.items() if isinstance(counts, Mapping) else counts
        merged: dict[int, list] = {}
        for p, m in items:
            if m == 0:
                continue
            if p.id in merged:
                merged[p.id][1] += m
            else:
                merged[p.id] = [p, m]
        return cls(tuple((p, m) for _, (p, m) in sorted(merged.items())))

    @classmethod
    def of(cls, *primes: Prime) -> "Element":
        return cls.from_counts((p, 1) for p in primes)

    @property
    def is_identity(self) -> bool:
        return not self.factors

    @property
    def primes(self) -> tuple[Prime, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def degree(self) -> int:
        return sum(m * p.degree for p, m in self.factors)

    @property
    def norm(self) -> NormValue:
        out: NormValue = 1
        for p, m in self.factors:
            out = out * p.norm ** m
        return out

    @property
    def is_squarefree(self) -> bool:
        return all(m == 1 for _, m in self.factors)

    @classmethod
    def _trusted(cls, factors: tuple[tuple[Prime, int], ...]) -> "Element":
        # skips validation; callers guarantee canonical form
        obj = object.__new__(cls)
        object.__setattr__(obj, "factors", factors)
        return obj

    def key(self) -> tuple[tuple[int, int], ...]:
        return tuple((p.id, m) for p, m in self.factors)

    def __mul__(self, other: "Element") -> "Element":
        return Element.from_counts(list(self.factors) + list(other.factors))

    def divides(self, other: "Element") -> bool:
        theirs = {p.id: m for p, m in other.factors}
        return all(theirs.get(p.id, 0) >= m for p, m in self.factors)

    def __truediv__(self, other: "Element") -> "Element":
        mine = {p.id: [p, m] for p, m in self.factors}
        for p, m in other.factors:
            if p.id not in mine or mine[p.id][1] < m:
                raise ValueError("divisor does not divide")
            mine[p.id][1] -= m
        return Element(tuple((p, m) for _, (p, m) in sorted(mine.items()) if m))

    def __repr__(self) -> str:
        if self.is_identity:
            return "Element(e)"
        parts = [p.label if m == 1 else f"({p.label})^{m}" for p, m in self.factors]
        return "Element(" + " * ".join(parts) + ")"


IDENTITY = Element()


@dataclass(frozen=True)
class PrimeSet:
    """A set of primes given by a membership predicate."""

    membership: Callable[[Prime], bool]
    known_density: Optional[Fraction] = None
    description: str = ""

    def __post_init__(self):
        if self.known_density is not None and not 0 <= self.known_density <= 1:
            raise ValueError("density must lie in [0, 1]")

    def __contains__(self, p: Prime) -> bool:
        return bool(self.membership(p))

    @classmethod
    def all(cls) -> "PrimeSet":
        return cls(lambda p: True, Fraction(1), "all primes")

    @classmethod
    def empty(cls) -> "PrimeSet":
        return cls(lambda p: False, Fraction(0), "no primes")

    @classmethod
    def from_ids(cls, ids: Iterable[int], description: str = "explicit") -> "PrimeSet":
        chosen = frozenset(ids)
        return cls(lambda p: p.id in chosen, None, description)


SUPPORT_HINTS = ("all", "distinguished-only", "identity-only")


@dataclass(frozen=True)
class ArithFn:
    """Arithmetic function on elements, returning exact values."""

    evaluate: Callable[[Element], Any]
    support_hint: str = "all"
    normalized_at_identity: bool = False
    name: str = ""

    def __post_init__(self):
        if self.support_hint not in SUPPORT_HINTS:
            raise ValueError(f"support_hint must be one of {SUPPORT_HINTS}")

    def __call__(self, g: Element):
        return self.evaluate(g)


def mobius(g: Element) -> int:
    if not g.is_squarefree:
        return 0
    return -1 if len(g.factors) % 2 else 1


def divisors(g: Element) -> Iterator[tuple[Element, Element]]:
    """All pairs ``(h, g/h)``, lexicographic in the multiplicity vector of ``h``."""
    primes = [p for p, _ in g.factors]
    mults = [m for _, m in g.factors]
    for exps in itertools.product(*(range(m + 1) for m in mults)):
        h = Element(tuple((p, e) for p, e in zip(primes, exps) if e))
        rest = Element(tuple((p, m - e) for p, m, e in zip(primes, mults, exps) if m - e))
        yield h, rest


def squarefree_divisors(g: Element) -> Iterator[tuple[Element, Element]]:
    """Pairs ``(h, g/h)`` with ``h`` squarefree; the only ones where mu(h) != 0."""
    primes = [p for p, _ in g.factors]
    mults = [m for _, m in g.factors]
    for bits in itertools.product((0, 1), repeat=len(primes)):
        h = Element(tuple((p, 1) for p, b in zip(primes, bits) if b))
        rest = Element(tuple((p, m - b) for p, m, b in zip(primes, mults, bits) if m - b))
        yield h, rest


MOBIUS = ArithFn(mobius, "all", True, "mu")
CONVOLUTION_IDENTITY = ArithFn(lambda g: 1 if g.is_identity else 0, "identity-only", True, "identity")
CONSTANT_ONE = ArithFn(lambda g: 1, "all", True, "one")


def dirichlet_convolve(f1: Callable[[Element], Any], f2: Callable[[Element], Any], g: Element):
    total: Any = Fraction(0)
    for h, rest in divisors(g):
        a = f1(h)
        if a == 0:
            continue
        b = f2(rest)
        if b == 0:
            continue
        total = total + a * b
    return total


def mobius_convolve(a: Callable[[Element], Any], g: Element):
    """``(mu * a)(g)``, summing only over squarefree ``h``."""
    total: Any = Fraction(0)
    for h, rest in squarefree_divisors(g):
        v = a(rest)
        if v == 0:
            continue
        total = total + v if len(h.factors) % 2 == 0 else total - v
    return total


def min_prime_data(g: Element, by: Optional[str] = None) -> tuple[Any, tuple[Prime, ...]]:
    if g.is_identity:
        raise IdentityElementError("the identity has no prime factors (P_min(e) = infinity)")
    by = by or default_order(g.factors[0][0])
    best = min(_size(p, by) for p, _ in g.factors)
    return best, tuple(p for p, _ in g.factors if _size(p, by) == best)


def p_min(g: Element, by: Optional[str] = None) -> Optional[Prime]:
    """The unique prime of minimal size, or ``None`` if absent or tied."""
    if g.is_identity:
        return None
    _, attaining = min_prime_data(g, by)
    return attaining[0] if len(attaining) == 1 else None


def is_distinguished(g: Element, S: PrimeSet, by: Optional[str] = None) -> bool:
    if g.is_identity:
        return True
    p = p_min(g, by)
    return p is not None and p in S


def max_prime_data(g: Element, S: PrimeSet, by: Optional[str] = None) -> tuple[Any, int]:
    """``(d^+(g), Q_S(g))``; the identity gives ``(0, 0)`` (or ``(1, 0)`` by norm)."""
    if g.is_identity:
        return (1 if by == "norm" else 0), 0
    by = by or default_order(g.factors[0][0])
    top = max(_size(p, by) for p, _ in g.factors)
    return top, sum(1 for p, _ in g.factors if _size(p, by) == top and p in S)


def check_admissible(f: Callable[[Any], Any], by: str = "degree") -> None:
    base = 0 if by == "degree" else 1
    if f(base) != 0:
        raise InadmissibleWeightError(f"f({base}) must vanish")
    if f(INF) != 0:
        raise InadmissibleWeightError("f(infinity) must vanish")


def duality_residual(g: Element, S: PrimeSet, f: Callable[[Any], Any], by: Optional[str] = None) -> Fraction:
    """``sum_{h|g} mu(h) 1_D(h) f(d_-(h)) + Q_S(g) f(d^+(g))``, which is always 0."""
    if by is None:
        by = default_order(g.factors[0][0]) if g.factors else "degree"
    check_admissible(f, by)
    lhs: Any = Fraction(0)
    for h, _ in squarefree_divisors(g):
        if h.is_identity:
            lhs = lhs + f(INF)
            continue
        if not is_distinguished(h, S, by):
            continue
        lo, _ = min_prime_data(h, by)
        lhs = lhs + mobius(h) * f(lo)
    top, q = max_prime_data(g, S, by)
    return lhs + q * f(top)


def euler_phi(g: Element) -> NormValue:
    out: NormValue = g.norm
    for p, _ in g.factors:
        inv = p.norm ** -1 if isinstance(p.norm, LaurentPoly) else Fraction(1, 1) / p.norm
        out = out * (1 - inv)
    return out


class Semigroup:
    """Base for concrete backends.

    Subclasses fill ``primes`` (dense ids, sorted by size then label) and set
    ``axiom`` to ``"A#"`` (sizes are degrees) or ``"A"`` (sizes are norms).
    """

    name = "semigroup"
    axiom = "A#"
    primes: list[Prime]

    @property
    def by(self) -> str:
        return "degree" if self.axiom == "A#" else "norm"

    def size(self, g: Element) -> Any:
        return g.degree if self.axiom == "A#" else g.norm

    def prime_size(self, p: Prime) -> Any:
        return _size(p, self.by)

    def primes_upto(self, cutoff) -> list[Prime]:
        return [p for p in self.primes if self.prime_size(p) <= cutoff]

    def elements(self, cutoff, squarefree: bool = False, first: Optional[Iterable[int]] = None) -> Iterator[Element]:
        """Every element of size at most ``cutoff`` (identity first), in DFS order.

        ``first`` restricts the smallest prime factor to the given indices into
        ``primes_upto(cutoff)``; the identity is then omitted.  Disjoint index
        sets give disjoint element streams, which is how work is split.
        """
        primes = self.primes_upto(cutoff)
        sizes = [self.prime_size(p) for p in primes]
        additive = self.axiom == "A#"
        stack: list[tuple[Prime, int]] = []

        def branch(i: int, budget):
            s = sizes[i]
            m, rem = 1, (budget - s if additive else budget / s)
            while True:
                stack.append((primes[i], m))
                yield Element._trusted(tuple(stack))
                yield from walk(i + 1, rem)
                stack.pop()
                if squarefree:
                    break
                nxt = rem - s if additive else rem / s
                if (additive and nxt < 0) or (not additive and nxt < 1):
                    break
                m, rem = m + 1, nxt

        def walk(start: int, budget):
            for i in range(start, len(primes)):
                if sizes[i] > budget:
                    break
                yield from branch(i, budget)

        budget = cutoff if additive else Fraction(cutoff)
        if first is None:
            yield IDENTITY
            yield from walk(0, budget)
        else:
            for i in sorted(set(first)):
                if 0 <= i < len(primes):
                    yield from branch(i, budget)
