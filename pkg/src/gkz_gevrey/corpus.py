"""Seeded random configurations used by the property and acceptance suites."""
from __future__ import annotations

import random
from fractions import Fraction

from .exact import IntegerMatrix, rank
from .series import genericity


def random_matrix(rng: random.Random, max_d: int = 3, max_n: int = 6, lo: int = -4, hi: int = 4,
                  max_codim: int | None = None) -> IntegerMatrix:
    """A full rank d x n integer matrix, d <= max_d, d < n <= max_n."""
    while True:
        d = rng.randint(1, max_d)
        top = max_n if max_codim is None else min(max_n, d + max_codim)
        if top <= d:
            continue
        n = rng.randint(d + 1, top)
        rows = [[rng.randint(lo, hi) for _ in range(n)] for _ in range(d)]
        # no zero columns: they are never part of a simplex and only add noise
        if any(all(r[j] == 0 for r in rows) for j in range(n)):
            continue
        if rank(rows) == d:
            return IntegerMatrix(rows)


def corpus(count: int = 100, seed: int = 20240611, **kw) -> list[IntegerMatrix]:
    rng = random.Random(seed)
    return [random_matrix(rng, **kw) for _ in range(count)]


def random_generic_beta(A: IntegerMatrix, rng: random.Random, tries: int = 50) -> tuple[Fraction, ...]:
    """A rational β passing the exact genericity check."""
    for _ in range(tries):
        beta = tuple(Fraction(rng.randint(-50, 50), rng.choice((7, 11, 13, 17, 19, 23, 29, 31)))
                     for _ in range(A.d))
        if genericity(A, beta) == "generic-so-far":
            return beta
    raise RuntimeError("no generic beta found")
