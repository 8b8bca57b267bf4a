"""Axiom A# backend: prime path classes of a finite graph and its Ihara zeta."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from typing import Optional, Sequence

import numpy as np

from .core import LaurentPoly, Prime, Semigroup
from .series import PowerSeries, _divisors, mobius_int

DEFAULT_MAX_LEN = 14
DEFAULT_PRECISION = Fraction(1, 2 ** 60)


class InvalidGraphError(ValueError):
    pass


class BracketError(RuntimeError):
    pass


@dataclass(frozen=True)
class Graph:
    """Undirected multigraph; loops and repeated edges allowed.

    Oriented edges are ``0..2m-1`` with edge ``j + m`` the reverse of ``j``.
    """

    n_vertices: int
    edges: tuple[tuple[int, int], ...]
    name: str = "graph"

    def __post_init__(self):
        if self.n_vertices < 1 or not self.edges:
            raise InvalidGraphError("graph needs at least one vertex and one edge")
        for u, v in self.edges:
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise InvalidGraphError(f"edge ({u}, {v}) has an unknown vertex")
        deg = self.degrees
        if min(deg) < 2:
            raise InvalidGraphError("every vertex needs degree >= 2")
        seen, todo = {0}, [0]
        nbrs: dict[int, set] = {}
        for u, v in self.edges:
            nbrs.setdefault(u, set()).add(v)
            nbrs.setdefault(v, set()).add(u)
        while todo:
            for w in nbrs.get(todo.pop(), ()):
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        if len(seen) != self.n_vertices:
            raise InvalidGraphError("graph must be connected")

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def degrees(self) -> list[int]:
        deg = [0] * self.n_vertices
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    @property
    def r(self) -> int:
        return self.m - self.n_vertices + 1

    def tail(self, e: int) -> int:
        return self.edges[e][0] if e < self.m else self.edges[e - self.m][1]

    def head(self, e: int) -> int:
        return self.edges[e][1] if e < self.m else self.edges[e - self.m][0]

    def inverse(self, e: int) -> int:
        return e + self.m if e < self.m else e - self.m

    def adjacency(self) -> list[list[int]]:
        A = [[0] * self.n_vertices for _ in range(self.n_vertices)]
        for u, v in self.edges:
            A[u][v] += 1
            A[v][u] += 1
        return A

    @cached_property
    def successors(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for e in range(2 * self.m):
            h, back = self.head(e), self.inverse(e)
            out.append(tuple(f for f in range(2 * self.m) if self.tail(f) == h and f != back))
        return tuple(out)

    def non_backtracking(self) -> np.ndarray:
        W = np.zeros((2 * self.m, 2 * self.m), dtype=object)
        W[:, :] = 0
        for e, nxt in enumerate(self.successors):
            for f in nxt:
                W[e, f] = 1
        return W


def parse_edge_list(text: str, name: str = "graph") -> Graph:
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InvalidGraphError(f"line {lineno}: expected 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise InvalidGraphError(f"line {lineno}: vertex ids must be integers") from None
        if u < 0 or v < 0:
            raise InvalidGraphError(f"line {lineno}: vertex ids are 0-based")
        edges.append((u, v))
    if not edges:
        raise InvalidGraphError("empty edge list")
    return Graph(1 + max(max(e) for e in edges), tuple(edges), name)


def _complete(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


NAMED_GRAPHS = {
    "k4": (4, _complete(4)),
    "k5": (5, _complete(5)),
    "c5": (5, [(i, (i + 1) % 5) for i in range(5)]),
    "k33": (6, [(i, j) for i in range(3) for j in range(3, 6)]),
    "petersen": (10, [(i, (i + 1) % 5) for i in range(5)]
                 + [(i, i + 5) for i in range(5)]
                 + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]),
    # triangle with a doubled side and a loop; exercises multi-edges and loops
    "multiloop": (3, [(0, 1), (0, 1), (1, 2), (2, 0), (2, 2)]),
}


def named_graph(name: str) -> Graph:
    try:
        n, edges = NAMED_GRAPHS[name]
    except KeyError:
        raise InvalidGraphError(f"unknown graph {name!r}; choose from {sorted(NAMED_GRAPHS)}") from None
    return Graph(n, tuple(edges), name)


def closed_walk_counts(G: Graph, N: int) -> list[int]:
    """``[N_1, ..., N_N]`` with ``N_m = tr(W^m)``."""
    W = G.non_backtracking()
    out, M = [], W.copy()
    for _ in range(N):
        out.append(int(np.trace(M)))
        M = M.dot(W)
    return out


def prime_class_counts(G: Graph, N: int, walks: Optional[Sequence[int]] = None) -> list[int]:
    """``[pi#(1), ..., pi#(N)]`` by Moebius inversion of ``N_m = sum_{d|m} d pi#(d)``."""
    walks = closed_walk_counts(G, N) if walks is None else walks
    out = []
    for nu in range(1, N + 1):
        s = sum(mobius_int(nu // d) * walks[d - 1] for d in _divisors(nu))
        q, r = divmod(s, nu)
        if r or q < 0:
            raise ArithmeticError(f"non-integral prime count at length {nu}")
        out.append(q)
    return out


@dataclass(frozen=True)
class PathClass:
    """A prime ``[C]``: the rotation-minimal oriented edge sequence of ``C``."""

    edges: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def primitive(self) -> bool:
        n = len(self.edges)
        return all(self.edges[k:] + self.edges[:k] != self.edges for k in range(1, n))

    def label(self) -> str:
        return "-".join(map(str, self.edges))


def canonical_rotation(seq: Sequence[int]) -> tuple[int, ...]:
    seq = tuple(seq)
    return min(seq[k:] + seq[:k] for k in range(len(seq)))


def _is_lyndon(seq: list[int]) -> bool:
    # strictly smaller than every proper rotation: primitive and rotation-minimal
    n = len(seq)
    return all(seq < seq[k:] + seq[:k] for k in range(1, n))


def enumerate_primitive_classes(G: Graph, max_len: int, limit: int = DEFAULT_MAX_LEN) -> list[PathClass]:
    """Every prime class of length ``<= max_len``, sorted by (length, edges)."""
    if max_len > limit:
        raise ValueError(f"max_len {max_len} exceeds enumeration limit {limit}")
    succ = G.successors
    found: list[tuple[int, ...]] = []
    path: list[int] = []

    def extend(start: int):
        last = path[-1]
        if start in succ[last] and _is_lyndon(path):
            found.append(tuple(path))
        if len(path) == max_len:
            return
        for f in succ[last]:
            if f >= start:
                path.append(f)
                extend(start)
                path.pop()

    for s in range(2 * G.m):
        path.append(s)
        extend(s)
        path.pop()
    found.sort(key=lambda c: (len(c), c))
    return [PathClass(c) for c in found]


# exact polynomial helpers; coefficient lists, lowest degree first


def _pmul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _ptrim(a: list) -> list:
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _bareiss_det(M: list[list[int]]) -> int:
    M = [row[:] for row in M]
    n, sign, prev = len(M), 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def _interpolate(xs: list[int], ys: list[int]) -> list[Fraction]:
    """Coefficients of the interpolating polynomial through ``(xs, ys)``."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)]
    for i in range(n - 1, -1, -1):
        poly = _pmul(poly, [-xs[i], 1])
        poly[0] += coef[i]
    return _ptrim(poly)


def ihara_polynomial(G: Graph) -> list[int]:
    """Integer coefficients of ``(1 - z^2)^(r-1) det(I - A z + Q z^2)``."""
    A = G.adjacency()
    deg = G.degrees
    n = G.n_vertices
    xs = list(range(2 * n + 1))
    ys = []
    for z in xs:
        M = [[(1 if i == j else 0) - A[i][j] * z + ((deg[i] - 1) * z * z if i == j else 0) for j in range(n)]
             for i in range(n)]
        ys.append(_bareiss_det(M))
    det = _interpolate(xs, ys)
    if any(c.denominator != 1 for c in det):
        raise ArithmeticError("determinant interpolation is not integral")
    poly = [int(c) for c in det]
    if G.r - 1 >= 0:
        for _ in range(G.r - 1):
            poly = _pmul(poly, [1, 0, -1])
    else:
        # tree-free cyclic graphs have r >= 1; kept for completeness
        raise InvalidGraphError("graph has no cycles")
    return _ptrim(poly)


def ihara_zeta_series(G: Graph, N: int) -> PowerSeries:
    return PowerSeries(ihara_polynomial(G), N).reciprocal()


def _peval(p: list, x: Fraction) -> Fraction:
    out = Fraction(0)
    for c in reversed(p):
        out = out * x + c
    return out


def _pdivmod(a: list, b: list) -> tuple[list, list]:
    a = [Fraction(c) for c in a]
    b = _ptrim([Fraction(c) for c in b])
    if len(a) < len(b):
        return [Fraction(0)], _ptrim(a)
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / b[-1]
        q[i] = c
        for j, bj in enumerate(b):
            a[i + j] -= c * bj
    return _ptrim(q), _ptrim(a[: len(b) - 1] or [Fraction(0)])


def _pderiv(a: list) -> list:
    return _ptrim([i * a[i] for i in range(1, len(a))] or [0])


def _is_zero(a: list) -> bool:
    return all(c == 0 for c in a)


def _pgcd(a: list, b: list) -> list:
    a, b = _ptrim([Fraction(c) for c in a]), _ptrim([Fraction(c) for c in b])
    while not _is_zero(b):
        a, b = b, _pdivmod(a, b)[1]
    return [c / a[-1] for c in a]


def _sturm_chain(p: list) -> list[list]:
    chain = [p, _pderiv(p)]
    while len(chain[-1]) > 1 or not _is_zero(chain[-1]):
        rem = _pdivmod(chain[-2], chain[-1])[1]
        if _is_zero(rem):
            break
        chain.append([-c for c in rem])
    return chain


def _sign_changes(chain: list[list], x: Fraction) -> int:
    signs = [v for v in (_peval(p, x) for p in chain) if v != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if (s > 0) != (t > 0))


@dataclass(frozen=True)
class RadiusInfo:
    R: Fraction
    exact: bool
    delta: int
    kotani_bounds: tuple[Fraction, Fraction]
    precision: Fraction

    @property
    def R_float(self) -> float:
        return float(self.R)


def delta_from_walks(walks: Sequence[int]) -> int:
    lengths = [m for m, n in enumerate(walks, 1) if n > 0]
    if not lengths:
        raise ArithmeticError("no closed walks within the horizon")
    return reduce(math.gcd, lengths)


def radius_and_delta(G: Graph, precision: Fraction = DEFAULT_PRECISION, horizon: Optional[int] = None) -> RadiusInfo:
    """Radius of convergence of the Ihara zeta by exact Sturm bisection, plus ``Delta_G``."""
    deg = G.degrees
    alpha, beta = max(deg) - 1, min(deg) - 1
    lo, hi = Fraction(1, alpha), Fraction(1, beta)
    p = ihara_polynomial(G)
    sf = _pdivmod(p, _pgcd(p, _pderiv(p)))[0]
    horizon = horizon or 4 * G.m
    delta = delta_from_walks(closed_walk_counts(G, horizon))
    if _peval(sf, lo) == 0:
        return RadiusInfo(lo, True, delta, (lo, hi), precision)
    chain = _sturm_chain(sf)

    def roots_in(a: Fraction, b: Fraction) -> int:  # roots in (a, b]
        return _sign_changes(chain, a) - _sign_changes(chain, b)

    if roots_in(lo, hi) == 0:
        raise BracketError("no root of the reciprocal zeta in the Kotani-Sunada interval")
    a, b = lo, hi
    while b - a > precision:
        mid = (a + b) / 2
        if roots_in(a, mid) >= 1:
            b = mid
            if _peval(sf, mid) == 0 and roots_in(a, mid) == 1:
                return RadiusInfo(mid, True, delta, (lo, hi), precision)
        else:
            a = mid
    exact = _peval(sf, b) == 0
    return RadiusInfo(b, exact, delta, (lo, hi), precision)


def norm_of_class(c: PathClass | None, R) -> tuple[int, float]:
    """``(nu, R^{-nu})``; ``None`` stands for the identity class."""
    nu = 0 if c is None else c.length
    return nu, float(Fraction(R) ** -nu) if isinstance(R, (int, Fraction)) else float(R) ** -nu


class GraphSemigroup(Semigroup):
    """Primes are path classes; ``||[P]|| = u^(-length)`` kept symbolic in ``u = R_G``."""

    axiom = "A#"

    def __init__(self, G: Graph, max_len: int = 10, limit: int = DEFAULT_MAX_LEN):
        self.graph = G
        self.name = f"graph({G.name})"
        self.max_len = max_len
        classes = enumerate_primitive_classes(G, max_len, limit)
        self.primes = [Prime(i, c.length, LaurentPoly.monomial(-c.length), c.label(), c)
                       for i, c in enumerate(classes)]

    @cached_property
    def radius(self) -> RadiusInfo:
        return radius_and_delta(self.graph)

    @property
    def base(self) -> LaurentPoly:
        """``1 / u``, the symbolic growth base of the degree counts."""
        return LaurentPoly.monomial(-1)

    def u_value(self) -> Fraction:
        return self.radius.R
