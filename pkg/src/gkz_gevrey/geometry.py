"""Exact polyhedral geometry of a configuration A.

Umbrellas (faces of conv({0} ∪ {a_i/s_i}) avoiding the origin), their jump
points along a coordinate pattern, regular triangulations T_ω, normalized
volumes and the convergence domain attached to a simplex.
"""
from __future__ import annotations

import itertools
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import NonGenericWeightError, RetryBudgetError, SingularSimplexError
from .exact import (
    IntegerMatrix,
    determinant,
    dot,
    lattice_index_full,
    mat_vec,
    rank,
    rational_inverse,
    rational_nullspace,
    solve,
    vec_mat,
)

# --------------------------------------------------------------------------
# simplices


@dataclass(frozen=True)
class Simplex:
    """A d-subset σ of columns with det A_σ ≠ 0 (0-based indices)."""

    indices: tuple[int, ...]
    det: int
    inverse: tuple[tuple[Fraction, ...], ...]
    complement: tuple[int, ...]
    # M = A_σ^{-1} A_σ̄, one column per index of the complement
    M: tuple[tuple[Fraction, ...], ...] = field(repr=False)

    @property
    def kernel_block(self) -> tuple[tuple[Fraction, ...], ...]:
        """B_σ as an n x (n-d) matrix in the original column order."""
        n = len(self.indices) + len(self.complement)
        rows = [None] * n
        for r, i in enumerate(self.indices):
            rows[i] = tuple(-x for x in self.M[r])
        for r, j in enumerate(self.complement):
            rows[j] = tuple(Fraction(int(r == c)) for c in range(len(self.complement)))
        return tuple(rows)

    def coords(self, j: int) -> tuple[Fraction, ...]:
        """A_σ^{-1} a_j for a complement index j."""
        c = self.complement.index(j)
        return tuple(row[c] for row in self.M)

    def height(self, j: int) -> Fraction:
        """|A_σ^{-1} a_j|, the coordinate sum."""
        if j in self.indices:
            return Fraction(1)
        return sum(self.coords(j), Fraction(0))


@lru_cache(maxsize=4096)
def _simplex_cached(rows, sigma) -> Simplex:
    A = IntegerMatrix(rows)
    sub = A.submatrix(sigma)
    det = determinant(sub)
    if det == 0:
        raise SingularSimplexError(f"not a simplex: {format_indices(sigma)}")
    inv = rational_inverse(sub)
    comp = tuple(j for j in range(A.n) if j not in sigma)
    cols = [mat_vec(inv, A.column(j)) for j in comp]
    M = tuple(tuple(col[r] for col in cols) for r in range(A.d))
    return Simplex(tuple(sigma), det, inv, comp, M)


def make_simplex(A, sigma: Iterable[int]) -> Simplex:
    A = IntegerMatrix.coerce(A)
    return _simplex_cached(A.rows, tuple(sorted(sigma)))


@lru_cache(maxsize=1024)
def _all_simplices(rows, cols) -> tuple[Simplex, ...]:
    d = len(rows)
    out = []
    for sigma in itertools.combinations(cols, d):
        sub = tuple(tuple(r[j] for j in sigma) for r in rows)
        if determinant(sub) != 0:
            out.append(_simplex_cached(rows, sigma))
    return tuple(out)


def simplices(A, cols: Iterable[int] | None = None) -> tuple[Simplex, ...]:
    """All simplices σ ⊆ cols (default: all columns), in lex order."""
    A = IntegerMatrix.coerce(A)
    cols = tuple(range(A.n)) if cols is None else tuple(sorted(cols))
    return _all_simplices(A.rows, cols)


def format_indices(idx: Iterable[int]) -> str:
    return "{" + ",".join(str(i + 1) for i in idx) + "}"


def is_pointed(A) -> bool:
    """True when the columns lie in an open half-space.

    Decided by looking for a positive linear dependence supported on a
    circuit: a set S of at most d+1 columns whose kernel is a line spanned by
    a strictly positive vector.
    """
    A = IntegerMatrix.coerce(A)
    for size in range(1, A.d + 2):
        for S in itertools.combinations(range(A.n), size):
            ker = rational_nullspace(A.submatrix(S), size)
            if len(ker) != 1:
                continue
            v = ker[0]
            if all(x > 0 for x in v) or all(x < 0 for x in v):
                return False
    return True


# --------------------------------------------------------------------------
# weights and umbrellas


@dataclass(frozen=True)
class WeightVector:
    """Positive weights s_1..s_n; ``tau``/``s`` are kept when built from a pattern."""

    values: tuple[Fraction, ...]
    tau: tuple[int, ...] | None = None
    s: Fraction | None = None

    def __post_init__(self):
        vals = tuple(Fraction(x) for x in self.values)
        object.__setattr__(self, "values", vals)
        if any(x <= 0 for x in vals):
            raise ValueError("weights must be positive")

    @classmethod
    def pattern(cls, n: int, tau: Iterable[int], s) -> "WeightVector":
        """Weight 1 on τ and s off τ."""
        tau = tuple(sorted(set(tau)))
        s = Fraction(s)
        return cls(tuple(Fraction(1) if i in tau else s for i in range(n)), tau, s)

    @classmethod
    def ones(cls, n: int) -> "WeightVector":
        return cls(tuple(Fraction(1) for _ in range(n)))

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class Face:
    indices: tuple[int, ...]
    dim: int
    covector: tuple[Fraction, ...]


@dataclass(frozen=True)
class Umbrella:
    weight: WeightVector
    faces: dict  # dim -> tuple[Face, ...]

    @property
    def facets(self) -> tuple[Face, ...]:
        if not self.faces:
            return ()
        return self.faces[max(self.faces)]

    def facet_sets(self) -> tuple[tuple[int, ...], ...]:
        return tuple(f.indices for f in self.facets)


def _scaled_points(A: IntegerMatrix, weights: Sequence[Fraction]):
    return [tuple(Fraction(x) / w for x in A.column(j)) for j, w in enumerate(weights)]


def _facets_from_points(points, d: int) -> dict:
    """Facet index sets of conv({0} ∪ points) avoiding 0, keyed to covectors."""
    n = len(points)
    result = {}
    for sigma in itertools.combinations(range(n), d):
        P = [[points[j][r] for j in sigma] for r in range(d)]  # columns = points
        # c P = 1  <=>  P^T c^T = 1
        Pt = [[P[r][c] for r in range(d)] for c in range(d)]
        c = solve(Pt, [1] * d)
        if c is None or c in result:
            continue
        vals = [dot(c, p) for p in points]
        if all(v <= 1 for v in vals):
            result[c] = tuple(j for j in range(n) if vals[j] == 1)
    return result


def umbrella_facets(A, weights) -> frozenset:
    """The facet index sets of Φ_A^s as a frozenset of sorted tuples."""
    A = IntegerMatrix.coerce(A)
    w = weights.values if isinstance(weights, WeightVector) else tuple(Fraction(x) for x in weights)
    return _umbrella_facets_cached(A.rows, w)


@lru_cache(maxsize=65536)
def _umbrella_facets_cached(rows, w) -> frozenset:
    A = IntegerMatrix(rows)
    pts = _scaled_points(A, w)
    return frozenset(_facets_from_points(pts, A.d).values())


def _affine_coordinates(points: Sequence[tuple]) -> list[tuple]:
    """Injective affine images of points in Q^k, k = affine dimension."""
    base = points[0]
    diffs = [tuple(a - b for a, b in zip(p, base)) for p in points]
    basis = []
    for v in diffs:
        if rank(basis + [v]) > len(basis):
            basis.append(v)
    k = len(basis)
    if k == 0:
        return [() for _ in points]
    m = len(base)
    # pick k coordinates on which the basis is independent
    for coords in itertools.combinations(range(m), k):
        if determinant([[b[c] for c in coords] for b in basis]) != 0:
            return [tuple(v[c] for c in coords) for v in diffs]
    raise AssertionError("unreachable: basis has full rank")


def polytope_facets(points: Sequence[tuple]) -> list[tuple[int, ...]]:
    """Facets of conv(points) as index sets, in the affine hull of the points."""
    X = _affine_coordinates(points)
    k = len(X[0])
    if k == 0:
        return []
    found = set()
    for S in itertools.combinations(range(len(X)), k):
        rows = [list(X[i]) + [Fraction(-1)] for i in S]
        ker = rational_nullspace(rows, k + 1)
        if len(ker) != 1:
            continue
        h, b = ker[0][:k], ker[0][k]
        if all(x == 0 for x in h):
            continue
        vals = [dot(h, x) - b for x in X]
        if all(v <= 0 for v in vals) or all(v >= 0 for v in vals):
            F = tuple(i for i, v in enumerate(vals) if v == 0)
            if len(F) < len(X):
                found.add(F)
    return sorted(found)


def _faces_of(points, idx: tuple[int, ...], dim: int, out: dict):
    out.setdefault(dim, set()).add(idx)
    if dim == 0:
        return
    sub = [points[i] for i in idx]
    for F in polytope_facets(sub):
        child = tuple(idx[i] for i in F)
        if child not in out.get(dim - 1, set()):
            _faces_of(points, child, dim - 1, out)


def umbrella(A, s: WeightVector) -> Umbrella:
    """The (A, s)-umbrella with all faces, grouped by dimension."""
    A = IntegerMatrix.coerce(A)
    if len(s.values) != A.n:
        raise ValueError("weight vector length must equal n")
    pts = _scaled_points(A, s.values)
    facets = _facets_from_points(pts, A.d)
    found: dict = {}
    for F in facets.values():
        _faces_of(pts, F, A.d - 1, found)
    by_set = sorted((F, c) for c, F in facets.items())
    faces = {}
    for dim in sorted(found):
        lst = []
        for idx in sorted(found[dim]):
            cov = next(c for F, c in by_set if set(idx) <= set(F))
            lst.append(Face(idx, dim, cov))
        faces[dim] = tuple(lst)
    return Umbrella(s, faces)


def _breakpoint_candidates(A: IntegerMatrix, tau: frozenset) -> list[Fraction]:
    cands = set()
    for sim in simplices(A):
        for j in sim.complement:
            y = sim.coords(j)
            Y1 = sum((y[r] for r, i in enumerate(sim.indices) if i in tau), Fraction(0))
            Y2 = sum((y[r] for r, i in enumerate(sim.indices) if i not in tau), Fraction(0))
            if j in tau:
                if Y2 != 0:
                    cands.add((1 - Y1) / Y2)
            elif Y2 != 1:
                cands.add(Y1 / (1 - Y2))
    return sorted(c for c in cands if c > 0)


def umbrella_breakpoints(A, tau: Iterable[int], threads: int = 1) -> list[Fraction]:
    """All s > 0 where the pattern umbrella (1 on τ, s off τ) changes."""
    A = IntegerMatrix.coerce(A)
    tau = frozenset(tau)
    if len(tau) == A.n:
        return []
    cands = _breakpoint_candidates(A, tau)
    if not cands:
        return []
    samples = [cands[0] / 2]
    for a, b in zip(cands, cands[1:]):
        samples.append((a + b) / 2)
    samples.append(cands[-1] + 1)

    def facets_at(s):
        return umbrella_facets(A, WeightVector.pattern(A.n, tau, s))

    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            at_c = list(ex.map(facets_at, cands))
            at_s = list(ex.map(facets_at, samples))
    else:
        at_c = [facets_at(c) for c in cands]
        at_s = [facets_at(x) for x in samples]
    return [c for i, c in enumerate(cands) if at_c[i] != at_s[i] or at_c[i] != at_s[i + 1]]


# --------------------------------------------------------------------------
# regular triangulations


@dataclass(frozen=True)
class Triangulation:
    weight: tuple[Fraction, ...]
    maximal_simplices: tuple[tuple[int, ...], ...]
    certified_generic: bool
    columns: tuple[int, ...] = ()


def regular_triangulation(A, omega: Sequence, cols: Iterable[int] | None = None) -> Triangulation:
    """T_ω: all σ with ω·B_σ > 0 componentwise.

    ``cols`` restricts to the subconfiguration A_τ (which must have rank d);
    ω is then indexed by the original columns.
    """
    A = IntegerMatrix.coerce(A)
    omega = tuple(Fraction(x) for x in omega)
    if len(omega) != A.n:
        raise ValueError("weight vector length must equal n")
    cols = tuple(range(A.n)) if cols is None else tuple(sorted(cols))
    chosen = []
    for sim in simplices(A, cols):
        ws = [omega[i] for i in sim.indices]
        vals = [omega[j] - sum(ws[r] * sim.M[r][c] for r in range(A.d))
                for c, j in enumerate(sim.complement) if j in cols]
        if all(v > 0 for v in vals):
            chosen.append(sim)
        elif all(v >= 0 for v in vals):
            raise NonGenericWeightError(
                f"non-generic weight: omega lies on a boundary of the cone of "
                f"simplex {format_indices(sim.indices)}", sim.indices)
    covector = {tuple(vec_mat([omega[i] for i in s.indices], s.inverse)) for s in chosen}
    covered = all(
        any(j in s.indices or all(x >= 0 for x in s.coords(j)) for s in chosen)
        for j in cols)
    certified = bool(chosen) and len(covector) == len(chosen) and covered
    return Triangulation(omega, tuple(s.indices for s in chosen), certified, cols)


def _pulling_volume(A: IntegerMatrix, facet: tuple[int, ...]) -> int:
    """Σ |det| over a pulling triangulation of conv({0} ∪ facet)."""
    pts = [A.column(j) for j in facet]

    def tri(idx: tuple[int, ...]) -> list[tuple[int, ...]]:
        sub = [pts[i] for i in idx]
        X = _affine_coordinates(sub)
        k = len(X[0])
        if k == 0:
            return [(idx[0],)]
        apex = min(range(len(idx)), key=lambda i: X[i])  # a vertex: lex-min point
        out = []
        for F in polytope_facets(sub):
            if apex in F:
                continue
            for t in tri(tuple(idx[i] for i in F)):
                out.append((idx[apex],) + t)
        return out

    total = 0
    for t in tri(tuple(range(len(pts)))):
        total += abs(determinant([[pts[i][r] for i in t] for r in range(A.d)]))
    return total


def pyramid_volume(A, tau: Iterable[int]) -> Fraction:
    """vol_{ZA}(Δ_τ) via facet pyramids; independent of any weight choice."""
    A = IntegerMatrix.coerce(A)
    tau = tuple(sorted(tau))
    if not tau or rank(A.submatrix(tau)) < A.d:
        return Fraction(0)
    sub = IntegerMatrix(A.submatrix(tau))
    total = sum(_pulling_volume(sub, F) for F in _facets_from_points(
        [tuple(Fraction(x) for x in sub.column(j)) for j in range(sub.n)], sub.d).values())
    return Fraction(total, lattice_index_full(A))


def simplex_volume(A, sigma: Iterable[int]) -> Fraction:
    A = IntegerMatrix.coerce(A)
    return Fraction(abs(determinant(A.submatrix(tuple(sorted(sigma))))), lattice_index_full(A))


def volume_respecting_triangulation(A, tau: Iterable[int], seed: int = 0,
                                    budget: int = 64) -> Triangulation:
    """A regular triangulation T(τ) of A_τ whose simplex volumes add up."""
    A = IntegerMatrix.coerce(A)
    tau = tuple(sorted(set(tau)))
    if not tau or rank(A.submatrix(tau)) < A.d:
        return Triangulation(tuple(Fraction(1) for _ in range(A.n)), (), True, tau)
    target = pyramid_volume(A, tau)
    rng = random.Random(seed)
    n = A.n
    omega = tuple(Fraction(1) for _ in range(n))
    for attempt in range(budget + 1):
        if attempt:
            scale = Fraction(1, 2 ** attempt)
            omega = tuple(1 + Fraction(rng.randint(1, 997), 997) * scale for _ in range(n))
        try:
            T = regular_triangulation(A, omega, tau)
        except NonGenericWeightError:
            continue
        if not T.certified_generic:
            continue
        if sum(simplex_volume(A, s) for s in T.maximal_simplices) == target:
            return T
    raise RetryBudgetError(
        f"no volume-respecting triangulation found for tau={format_indices(tau)} "
        f"after {budget} perturbations (target volume {target})")


def normalized_volume(A, tau: Iterable[int]) -> Fraction:
    """vol_{ZA}(Δ_τ); zero when A_τ has rank < d."""
    A = IntegerMatrix.coerce(A)
    tau = tuple(sorted(set(tau)))
    if len(tau) == A.d:
        if determinant(A.submatrix(tau)) == 0:
            return Fraction(0)
        vol = simplex_volume(A, tau)
    else:
        T = volume_respecting_triangulation(A, tau)
        vol = sum((simplex_volume(A, s) for s in T.maximal_simplices), Fraction(0))
    assert vol.denominator == 1, "normalized volume must be an integer"
    return vol


# --------------------------------------------------------------------------
# convergence domain


@dataclass(frozen=True)
class DomainConstraint:
    column: int
    exponents: tuple[Fraction, ...]  # exponents on x_σ

    def render(self, sigma: Sequence[int]) -> str:
        from .exact import format_rational

        mon = "*".join(f"x{i + 1}^({format_rational(e)})" for i, e in zip(sigma, self.exponents) if e != 0)
        return f"|x{self.column + 1}| < R*|{mon or '1'}|"


@dataclass(frozen=True)
class ConvergenceDomain:
    sigma: tuple[int, ...]
    nonzero: tuple[int, ...]
    constraints: tuple[DomainConstraint, ...]
    classification: tuple[str, ...]  # per column: "on", "below", "above"

    def render(self) -> list[str]:
        lines = [f"x{i + 1} != 0" for i in self.nonzero]
        lines += [c.render(self.sigma) for c in self.constraints]
        return lines


def classify_columns(A, sigma) -> tuple[str, ...]:
    sim = make_simplex(A, sigma)
    n = len(sim.indices) + len(sim.complement)
    out = []
    for j in range(n):
        h = sim.height(j)
        out.append("on" if h == 1 else ("below" if h < 1 else "above"))
    return tuple(out)


def convergence_domain(A, sigma: Iterable[int]) -> ConvergenceDomain:
    """Symbolic description of U_σ with an unspecified radius R."""
    sim = make_simplex(A, sigma)
    cls = classify_columns(A, sim.indices)
    cons = tuple(DomainConstraint(j, sim.coords(j)) for j in sim.complement if cls[j] == "on")
    return ConvergenceDomain(sim.indices, sim.indices, cons, cls)
