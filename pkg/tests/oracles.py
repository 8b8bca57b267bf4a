"""Independent brute-force oracles.

Nothing here imports the package; each function re-derives a quantity the
package computes by a different route.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

# values frozen from the literature / by hand, checked against the oracles below
F2_IRREDUCIBLE_COUNTS = [2, 1, 2, 3, 6, 9, 18, 30, 56, 99, 186, 335]
F3_IRREDUCIBLE_COUNTS = [3, 3, 8, 18, 48, 116, 312, 810]
MERTENS = {10: -1, 100: 1, 1000: 2, 10000: -23}
PRIME_PI = {10: 4, 100: 25, 1000: 168, 10000: 1229, 10 ** 6: 78498}
K4_PRIME_COUNTS = [0, 0, 8, 6, 0, 12, 24, 18, 56, 120, 168, 320]


# -- polynomials over a prime field, coefficient tuples lowest first ---------------------


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def poly_rem(a, b, p):
    a = list(a)
    inv = pow(b[-1], p - 2, p)
    while len(_trim(a)) >= len(b):
        a = list(_trim(a))
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
    return _trim(a)


def monic_polys(p, degree):
    for low in itertools.product(range(p), repeat=degree):
        yield tuple(low) + (1,)


def is_irreducible(f, p):
    d = len(f) - 1
    for k in range(1, d // 2 + 1):
        for g in monic_polys(p, k):
            if not poly_rem(f, g, p):
                return False
    return True


def irreducible_counts(p, max_degree):
    return [sum(1 for f in monic_polys(p, d) if is_irreducible(f, p)) for d in range(1, max_degree + 1)]


def poly_mobius(f, p):
    """Moebius value of a monic polynomial by trial division."""
    k = 0
    rest = tuple(f)
    for d in range(1, len(f)):
        if len(rest) - 1 < d:
            break
        for g in monic_polys(p, d):
            if len(rest) - 1 < d:
                break
            if not is_irreducible(g, p):
                continue
            if not poly_rem(rest, g, p):
                rest = poly_div_exact(rest, g, p)
                if not poly_rem(rest, g, p):
                    return 0
                k += 1
    return -1 if k % 2 else 1


def poly_div_exact(a, b, p):
    a = list(a)
    inv = pow(b[-1], p - 2, p)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv % p
        q[i] = c
        for j, bj in enumerate(b):
            a[i + j] = (a[i + j] - c * bj) % p
    return tuple(q)


# -- integers -------------------------------------------------------------------------


def trial_factor(n):
    out, d = {}, 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def trial_mobius(n):
    f = trial_factor(n)
    if any(m > 1 for m in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def mertens(x):
    return sum(trial_mobius(n) for n in range(1, x + 1))


def is_prime(n):
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


def alladi_direct(x, k, l):
    """``-sum_{2<=n<=x, pmin(n) = l mod k} mu(n)/n`` by direct summation."""
    spf = list(range(x + 1))
    for p in range(2, math.isqrt(x) + 1):
        if spf[p] == p:
            for m in range(p * p, x + 1, p):
                if spf[m] == m:
                    spf[m] = p
    mu = [0, 1] + [0] * (x - 1)
    for n in range(2, x + 1):
        p = spf[n]
        m = n // p
        mu[n] = 0 if m % p == 0 else -mu[m]
    return -math.fsum(mu[n] / n for n in range(2, x + 1) if spf[n] % k == l % k)


def gaussian_norm_counts(X):
    """Ideals of Z[i] by norm: generators ``x + yi`` with ``x > 0, y >= 0``."""
    counts = [0] * (X + 1)
    for x in range(1, X + 1):
        for y in range(0, X + 1):
            n = x * x + y * y
            if n > X:
                break
            counts[n] += 1
    return counts


# -- graphs ------------------------------------------------------------------------------


def oriented(edges):
    m = len(edges)
    arcs = [(u, v) for u, v in edges] + [(v, u) for u, v in edges]
    rev = [j + m if j < m else j - m for j in range(2 * m)]
    return arcs, rev


def closed_nb_walks(edges, length):
    """All closed backtrackless tailless edge sequences of the given length."""
    arcs, rev = oriented(edges)
    out = []

    def go(path):
        if len(path) == length:
            if arcs[path[-1]][1] == arcs[path[0]][0] and path[0] != rev[path[-1]]:
                out.append(tuple(path))
            return
        last = path[-1]
        for f in range(len(arcs)):
            if arcs[f][0] == arcs[last][1] and f != rev[last]:
                path.append(f)
                go(path)
                path.pop()

    for s in range(len(arcs)):
        go([s])
    return out


def brute_prime_classes(edges, length):
    classes = set()
    for w in closed_nb_walks(edges, length):
        rots = [w[k:] + w[:k] for k in range(length)]
        if len(set(rots)) == length:
            classes.add(min(rots))
    return classes


def power_series_product(factors, order):
    """Coefficients of ``prod (1 - z^k)^-1`` over the multiset ``factors``."""
    coeffs = [Fraction(1)] + [Fraction(0)] * order
    for k in factors:
        for n in range(k, order + 1):
            coeffs[n] += coeffs[n - k]
    return coeffs
