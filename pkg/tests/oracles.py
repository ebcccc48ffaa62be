"""Independent reference computations used as test oracles.

Nothing here imports the package: determinants are Leibniz sums, hulls are
monotone chains and Pochhammer symbols are direct products.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction


def leibniz_det(M):
    n = len(M)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        term = 1
        for r, c in enumerate(perm):
            term *= M[r][c]
        total += -term if inv % 2 else term
    return total


def adjugate(M):
    n = len(M)
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for r in range(n):
        for c in range(n):
            minor = [row[:c] + row[c + 1:] for i, row in enumerate(M) if i != r]
            adj[c][r] = (-1) ** (r + c) * leibniz_det(minor)
    return adj


def minors_gcd(M, k):
    """gcd of all k x k minors, the k-th determinantal divisor."""
    g = 0
    rows, cols = len(M), len(M[0])
    for R in itertools.combinations(range(rows), k):
        for C in itertools.combinations(range(cols), k):
            g = math.gcd(g, leibniz_det([[M[r][c] for c in C] for r in R]))
    return g


def columns(A, idx):
    return [[row[j] for j in idx] for row in A]


def falling(v, m):
    out = Fraction(1)
    for j in range(m):
        out *= Fraction(v) - j
    return out


def factorial(m):
    return math.factorial(m)


def hull_2d(points):
    """Convex hull vertices (counterclockwise) by Andrew's monotone chain."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def twice_area(poly):
    s = 0
    for (x1, y1), (x2, y2) in zip(poly, poly[1:] + poly[:1]):
        s += x1 * y2 - x2 * y1
    return abs(s)


def normalized_volume_low_dim(A, tau):
    """d! Euclidean volume of conv(0, a_tau) over [Z^d : ZA], for d <= 2."""
    d = len(A)
    index = minors_gcd(A, d)
    if d == 1:
        vals = [A[0][j] for j in tau] + [0]
        return Fraction(max(vals) - min(vals), index)
    if d == 2:
        pts = [(0, 0)] + [(A[0][j], A[1][j]) for j in tau]
        hull = hull_2d(pts)
        if len(hull) < 3:
            return Fraction(0)
        return Fraction(twice_area(hull), index)
    raise ValueError("only d <= 2")
