"""Independent reference implementations used to cross-check the package.

None of these call into framedlin; they are deliberately naive.
"""

from fractions import Fraction
from itertools import product


def naive_rank(rows):
    """Gaussian elimination taking the first nonzero pivot."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def partition_count(n):
    ways = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            ways[total] += ways[total - part]
    return ways[n]


def monomial_count(nvars, degree):
    if degree < 0:
        return 0
    return sum(1 for e in product(range(degree + 1), repeat=nvars) if sum(e) == degree)


def h_p2(d):
    """(h0, h1, h2) of O(d) on P2 by counting monomials and Serre duality."""
    return (monomial_count(3, d), 0, monomial_count(3, -3 - d))


def h_p1(a):
    return (monomial_count(2, a), monomial_count(2, -2 - a))


def h_p1xp1(a, b):
    x, y = h_p1(a), h_p1(b)
    return (x[0] * y[0], x[0] * y[1] + x[1] * y[0], x[1] * y[1])


def chi_p2(rank, deg, ch2):
    return ch2 + Fraction(3, 2) * deg + rank


def chi_pair_p2(v, w):
    """v, w as (rank, deg, chi); chi(v, w) = chi(ch(v)^dual ch(w))."""
    def ch(c):
        r, d, x = c
        return r, d, Fraction(x) - Fraction(3, 2) * d - r
    r1, d1, e1 = ch(v)
    r2, d2, e2 = ch(w)
    return chi_p2(r1 * r2, r1 * d2 - d1 * r2, r1 * e2 + e1 * r2 - d1 * d2)


def chi_pair_p1xp1(v, w):
    """v, w as (rank, cH, cF, chi), with H.F = 1 and H.H = F.F = 0."""
    def ch(c):
        r, a, b, x = c
        return r, a, b, Fraction(x) - a - b - r
    r1, a1, b1, e1 = ch(v)
    r2, a2, b2, e2 = ch(w)
    R = r1 * r2
    A = r1 * a2 - a1 * r2
    B = r1 * b2 - b1 * r2
    C = r1 * e2 + e1 * r2 - (a1 * b2 + b1 * a2)
    return C + A + B + R
