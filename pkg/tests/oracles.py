"""Independent reference computations used by the tests.

Nothing here calls the package's elimination or counting code: the PBW series
come from sympy, ranks from sympy matrices, fractions from plain integers.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, gcd

import sympy

t = sympy.symbols("t")


def add_fractions(a: int, b: int, c: int, d: int) -> tuple:
    """a/b + c/d in lowest terms with positive denominator, by integer arithmetic."""
    num, den = a * d + c * b, b * d
    if den < 0:
        num, den = -num, -den
    g = gcd(num, den)
    return num // g, den // g


def series_sum(expr, D: int) -> int:
    """Sum of the coefficients of t^0..t^D."""
    if D < 0:
        return 0
    s = sympy.series(expr, t, 0, D + 1).removeO()
    poly = sympy.Poly(s, t)
    return int(sum(poly.coeff_monomial(t ** k) for k in range(D + 1)))


def pbw_pb(n: int, D: int) -> int:
    return series_sum((1 + t) ** (2 * n) / (1 - t ** 2) ** (n * (2 * n + 1)), D)


def pbw_pf(n: int, D: int) -> int:
    return series_sum((1 - t) ** (-2 * n) * (1 - t ** 2) ** (-(2 * n * n - n)), D)


def pbw_pbg(n: int, D: int) -> int:
    # every word is a b-word times g^0 or g^1
    return pbw_pb(n, D) + pbw_pb(n, D - 1)


def pbw_pbk(n: int, D: int) -> int:
    # every word is a b-word times a power of K+ or K-
    return sum(pbw_pb(n, D - abs(z)) for z in range(-D, D + 1))


def word_count(G: int, D: int) -> int:
    return sum(G ** k for k in range(D + 1))


def rank(vectors) -> int:
    """Rank of a list of {key: coefficient} dicts."""
    keys = sorted({k for v in vectors for k in v})
    if not vectors or not keys:
        return 0
    m = sympy.Matrix([[sympy.Rational(v.get(k, 0)) for k in keys] for v in vectors])
    return m.rank()


def koszul_sign(parities: list, order: list) -> int:
    """Sign of permuting a sequence of graded letters into ``order`` (inversions of odd pairs)."""
    s = 0
    for x in range(len(order)):
        for y in range(x + 1, len(order)):
            i, j = order[x], order[y]
            if i > j and parities[i] and parities[j]:
                s += 1
    return -1 if s % 2 else 1


def braided_word_product(alpha, s_key, t_key) -> tuple:
    """(s1⊗...⊗sr)(t1⊗...⊗tr) by explicit reordering of the letters s1..sr t1..tr."""
    r = len(s_key)
    blocks = list(s_key) + list(t_key)
    pars = [alpha.word_parity(w) for w in blocks]
    order = []
    for j in range(r):
        order += [j, r + j]
    sign = koszul_sign(pars, order)
    return tuple(s_key[j] + t_key[j] for j in range(r)), sign


def shift_power_difference(N, one, m: int):
    """(N+1)^m - N^m expanded binomially: sum over k < m of C(m, k) N^k."""
    out = one.scale(0)
    power = one
    for k in range(m):
        out = out + power.scale(comb(m, k))
        power = power * N
    return out


def frac(x) -> Fraction:
    return Fraction(x)
