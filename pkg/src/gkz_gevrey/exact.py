"""Exact integer and rational linear algebra.

Everything here works on Python ints and :class:`fractions.Fraction`; no
floating point is used.  Matrices are plain tuples of row tuples.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import NotFullRankError, SingularSimplexError

Vector = tuple
Matrix = tuple


# --------------------------------------------------------------------------
# rationals


def parse_rational(value) -> Fraction:
    """Parse ``"p/q"``, ``"p"``, an int or a Fraction into a Fraction."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational")
        try:
            return Fraction(text)
        except ValueError:
            raise ValueError(f"not a rational: {value!r}") from None
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass rationals as strings")
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_vector(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(parse_rational(v) for v in values)


def format_vector(v: Iterable) -> list[str]:
    return [format_rational(x) for x in v]


def is_integer(x) -> bool:
    return Fraction(x).denominator == 1


def frac_part(x: Fraction) -> Fraction:
    return x - math.floor(x)


# --------------------------------------------------------------------------
# small matrix helpers


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(M: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*M)]


def mat_mul(X: Sequence[Sequence], Y: Sequence[Sequence]) -> list[list]:
    Yt = transpose(Y)
    return [[sum(a * b for a, b in zip(row, col)) for col in Yt] for row in X]


def mat_vec(M: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in M)


def vec_mat(v: Sequence, M: Sequence[Sequence]) -> tuple:
    """Row vector times matrix."""
    return tuple(sum(v[i] * M[i][j] for i in range(len(v))) for j in range(len(M[0])))


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def rank(M: Sequence[Sequence]) -> int:
    rows = [[Fraction(x) for x in row] for row in M]
    if not rows:
        return 0
    r = 0
    ncols = len(rows[0])
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def determinant(M: Sequence[Sequence]):
    """Exact determinant; Bareiss fraction-free elimination for integer input."""
    n = len(M)
    if n == 0:
        return 1
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    if all(isinstance(x, int) for row in M for x in row):
        a = [list(row) for row in M]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]
    a = [[Fraction(x) for x in row] for row in M]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return det


def rational_inverse(M: Sequence[Sequence]) -> tuple[tuple[Fraction, ...], ...]:
    """Exact inverse by Gauss-Jordan elimination.

    Raises :class:`SingularSimplexError` for singular input.
    """
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("inverse of a non-square matrix")
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise SingularSimplexError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return tuple(tuple(row[n:]) for row in a)


def solve(M: Sequence[Sequence], rhs: Sequence):
    """Unique solution of ``M x = rhs`` for square nonsingular M, else None."""
    n = len(M)
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(M, rhs)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return None
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return tuple(row[n] for row in a)


def rational_nullspace(M: Sequence[Sequence], ncols: int | None = None) -> list[tuple[Fraction, ...]]:
    """Basis of the rational kernel of M (reduced row echelon construction)."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    rows = [[Fraction(x) for x in row] for row in M]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][f]
        basis.append(tuple(v))
    return basis


def primitive(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector on its ray."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // math.gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


# --------------------------------------------------------------------------
# integer matrices


@dataclass(frozen=True)
class IntegerMatrix:
    """A full rank ``d x n`` integer matrix, stored row-major."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows or not rows[0]:
            raise ValueError("matrix must be nonempty")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        if len(rows) > len(rows[0]):
            raise NotFullRankError(f"not full rank: d={len(rows)} exceeds n={len(rows[0])}")
        if rank(rows) != len(rows):
            raise NotFullRankError("not full rank")

    @classmethod
    def coerce(cls, A) -> "IntegerMatrix":
        return A if isinstance(A, cls) else cls(tuple(tuple(r) for r in A))

    @property
    def d(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.rows)

    @property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.column(j) for j in range(self.n))

    def submatrix(self, cols: Iterable[int]) -> tuple[tuple[int, ...], ...]:
        cols = tuple(cols)
        return tuple(tuple(row[j] for j in cols) for row in self.rows)

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


# --------------------------------------------------------------------------
# Smith and Hermite normal forms


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ M @ V == D`` with U, V unimodular and D diagonal."""

    U: tuple[tuple[int, ...], ...]
    D: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]

    @property
    def divisors(self) -> tuple[int, ...]:
        k = min(len(self.D), len(self.D[0]) if self.D else 0)
        return tuple(self.D[i][i] for i in range(k) if self.D[i][i] != 0)

    @property
    def rank(self) -> int:
        return len(self.divisors)


def smith_normal_form(M: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form with smallest-absolute-value pivoting.

    The result is checked by re-multiplication before returning.
    """
    r = len(M)
    c = len(M[0]) if r else 0
    D = [list(map(int, row)) for row in M]
    U = identity(r)
    V = identity(c)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(r, c)):
        while True:
            best = None
            for i in range(t, r):
                for j in range(t, c):
                    if D[i][j] != 0 and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = D[t][t]
            for i in range(t + 1, r):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
            for j in range(t + 1, c):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
            if any(D[i][t] for i in range(t + 1, r)) or any(D[t][j] for j in range(t + 1, c)):
                continue
            bad = next(((i, j) for i in range(t + 1, r) for j in range(t + 1, c)
                        if D[i][j] % p), None)
            if bad is not None:
                add_row(t, bad[0], 1)
                continue
            break
        if t < r and t < c and D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]

    assert mat_mul(mat_mul(U, M), V) == D, "Smith form re-multiplication check failed"
    return SmithDecomposition(tuple(map(tuple, U)), tuple(map(tuple, D)), tuple(map(tuple, V)))


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Zero rows are dropped; pivots are positive and the entries above each
    pivot are reduced into ``[0, pivot)``.
    """
    H = [list(map(int, r)) for r in rows]
    if not H:
        return []
    ncols = len(H[0])
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(H)) if H[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(H[i][c]))
            H[r], H[piv] = H[piv], H[r]
            done = True
            for i in range(r + 1, len(H)):
                if H[i][c]:
                    q = H[i][c] // H[r][c]
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    if H[i][c]:
                        done = False
            if done:
                break
        if r < len(H) and H[r][c] != 0:
            if H[r][c] < 0:
                H[r] = [-x for x in H[r]]
            for i in range(r):
                q = H[i][c] // H[r][c]
                if q:
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
            r += 1
            if r == len(H):
                break
    return [tuple(row) for row in H[:r]]


# --------------------------------------------------------------------------
# lattices attached to A


def kernel_basis(A) -> list[tuple[int, ...]]:
    """A Z-basis of ``L_A = ker(A) ∩ Z^n`` in Hermite normal form."""
    A = IntegerMatrix.coerce(A)
    snf = smith_normal_form(A.rows)
    V = snf.V
    raw = [tuple(V[i][j] for i in range(A.n)) for j in range(snf.rank, A.n)]
    basis = hermite_normal_form(raw)
    for u in basis:
        assert all(x == 0 for x in mat_vec(A.rows, u))
    return basis


def lattice_index_full(A) -> int:
    """The index ``[Z^d : ZA]``, the product of the elementary divisors."""
    rows = A.rows if isinstance(A, IntegerMatrix) else tuple(tuple(r) for r in A)
    snf = smith_normal_form(rows)
    if snf.rank < len(rows):
        raise NotFullRankError("infinite index: rank < d")
    return math.prod(snf.divisors)


@dataclass(frozen=True)
class LatticeQuotient:
    """The finite group ``ZA / Zσ`` with one representative per class.

    Classes are keyed by ``A_σ^{-1} x mod Z^d``; a representative ``k`` stands
    for the class of ``A_σ̄ k``.  Internally an element is stored as the
    integer vector ``D·A_σ^{-1} x mod D`` with ``D = |det A_σ|``.
    """

    ambient: tuple[tuple[int, ...], ...]
    sublattice: tuple[tuple[int, ...], ...]
    order: int
    representatives: tuple[tuple[int, ...], ...]
    sigma: tuple[int, ...] = ()
    complement: tuple[int, ...] = ()
    modulus: int = field(default=1, repr=False, compare=False)
    generators: tuple[tuple[int, ...], ...] = field(default=(), repr=False, compare=False)

    def _residue(self, k: Sequence[int]) -> tuple[int, ...]:
        D = self.modulus
        acc = [0] * len(self.sublattice)
        for kj, g in zip(k, self.generators):
            if kj:
                acc = [a + kj * x for a, x in zip(acc, g)]
        return tuple(a % D for a in acc)

    def class_key(self, k: Sequence[int]) -> tuple[Fraction, ...]:
        return tuple(Fraction(r, self.modulus) for r in self._residue(k))

    def same_class(self, k, k2) -> bool:
        return self._residue(k) == self._residue(k2)

    def representative_of(self, k) -> tuple[int, ...]:
        key = self._residue(k)
        for rep in self.representatives:
            if self._residue(rep) == key:
                return rep
        raise AssertionError("class not found among representatives")


def _subgroup(gens: Sequence[tuple], zero: tuple, D: int) -> frozenset:
    elems = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                f = tuple((a + b) % D for a, b in zip(e, g))
                if f not in elems:
                    elems.add(f)
                    nxt.append(f)
        frontier = nxt
    return frozenset(elems)


def quotient_group(A, sigma: Sequence[int]) -> LatticeQuotient:
    """``ZA / Zσ`` for a simplex σ (0-based column indices).

    Representatives are the lexicographically smallest ``k ∈ N^{n-d}`` in
    each class, found greedily through the chain of subgroups generated by
    the trailing generators.
    """
    A = IntegerMatrix.coerce(A)
    return _quotient_cached(A.rows, tuple(sorted(sigma)))


@lru_cache(maxsize=4096)
def _quotient_cached(rows, sigma) -> LatticeQuotient:
    A = IntegerMatrix(rows)
    if len(sigma) != A.d:
        raise SingularSimplexError(f"not a simplex: |sigma|={len(sigma)} != d={A.d}")
    A_s = A.submatrix(sigma)
    det = determinant(A_s)
    if det == 0:
        raise SingularSimplexError("not a simplex: det A_sigma = 0")
    D = abs(det)
    inv = rational_inverse(A_s)
    comp = tuple(j for j in range(A.n) if j not in sigma)
    zero = (0,) * A.d
    gens = [tuple(int(y * D) % D for y in mat_vec(inv, A.column(j))) for j in comp]
    m = len(gens)
    chain = [frozenset([zero])]
    for j in range(m - 1, -1, -1):
        chain.append(_subgroup(gens[j:], zero, D))
    chain.reverse()  # chain[j] is generated by gens[j:], chain[m] = {0}
    group = chain[0]
    reps = []
    for cls in group:
        k = []
        cur = cls
        for j in range(m):
            t = 0
            while cur not in chain[j + 1]:
                cur = tuple((a - b) % D for a, b in zip(cur, gens[j]))
                t += 1
            k.append(t)
        reps.append(tuple(k))
    reps.sort()
    order = len(group)
    expected = D // lattice_index_full(A)
    assert order == expected, (order, expected)
    return LatticeQuotient(
        ambient=A.columns,
        sublattice=tuple(A.column(j) for j in sigma),
        order=order,
        representatives=tuple(reps),
        sigma=sigma,
        complement=comp,
        modulus=D,
        generators=tuple(gens),
    )


# --------------------------------------------------------------------------
# exact polyhedra {x : H x <= b}


def polyhedron_vertices(H: Sequence[Sequence], b: Sequence) -> list[tuple[Fraction, ...]]:
    """All vertices of ``{x : H x <= b}`` by exhaustive basis enumeration."""
    if not H:
        return []
    m = len(H[0])
    found = set()
    for rows in itertools.combinations(range(len(H)), m):
        sub = [H[i] for i in rows]
        x = solve(sub, [b[i] for i in rows])
        if x is None:
            continue
        if all(dot(h, x) <= bi for h, bi in zip(H, b)):
            found.add(x)
    return sorted(found)


def cone_extreme_rays(H: Sequence[Sequence], m: int) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone ``{r : H r <= 0}`` in dimension m."""
    rays = set()
    if m == 1:
        for cand in ((1,), (-1,)):
            if all(dot(h, cand) <= 0 for h in H):
                rays.add(cand)
        return sorted(rays)
    for rows in itertools.combinations(range(len(H)), m - 1):
        ker = rational_nullspace([H[i] for i in rows], m)
        if len(ker) != 1:
            continue
        for sgn in (1, -1):
            r = tuple(sgn * x for x in ker[0])
            if all(dot(h, r) <= 0 for h in H):
                rays.add(primitive(r))
    return sorted(rays)
