"""Truncated Γ-series solutions and the operators of the GKZ system.

A series is attached to a simplex σ and a shift k ∈ N^{n-d}.  Its terms are
indexed by σ̄-parts p ∈ N^{n-d} in the congruence class of k; the exponent
is v^p = (A_σ^{-1}(β - A_σ̄ p), p) and the coefficient is the Pochhammer
ratio [v^k]_{u-} / [v^k + u]_{u+} with u = v^p - v^k.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import EmptyClassError, InvariantViolation, TooFewTermsError
from .exact import (
    IntegerMatrix,
    cone_extreme_rays,
    format_rational,
    is_integer,
    kernel_basis,
    polyhedron_vertices,
    quotient_group,
)
from .geometry import Simplex, classify_columns, make_simplex


# --------------------------------------------------------------------------
# elementary pieces


def pochhammer(v, m: int) -> Fraction:
    """Falling factorial [v]_m = v (v-1) ... (v-m+1); [v]_0 = 1."""
    if m < 0:
        raise ValueError("negative Pochhammer length")
    v = Fraction(v)
    a, b = v.numerator, v.denominator
    num = 1
    for j in range(m):
        num *= a - j * b
        if not num:
            return Fraction(0)
    return Fraction(num, b ** m)


def nsupp(v: Sequence) -> tuple[int, ...]:
    """Indices whose entries are negative integers."""
    return tuple(i for i, x in enumerate(v) if Fraction(x) < 0 and is_integer(x))


def lambda_class_representatives(A, sigma) -> tuple[tuple[int, ...], ...]:
    """Lex-minimal representatives k of the classes Λ_k (one per ZA/Zσ element)."""
    return quotient_group(A, sigma).representatives


def graded_representative(A, sigma, k: Sequence[int]) -> tuple[int, ...]:
    """The member of the class of k that is least by (degree, lex).

    Lex-minimal representatives may have large degree; series truncated at
    degree N need a base point with |k| <= N.  Every class of a group of
    order r is reached within degree r - 1.
    """
    sim = make_simplex(A, sigma)
    k = tuple(int(x) for x in k)
    test = _ClassTest(sim, k)
    for p in _simplex_points(len(k), sum(k)):
        if test.shift(p) is not None:
            return p
    raise InvariantViolation("k is not in its own class")


@dataclass(frozen=True)
class ShiftedExponent:
    k: tuple[int, ...]
    v: tuple[Fraction, ...]


def _sigma_part(sim: Simplex, c: Sequence[Fraction], p: Sequence[int]) -> list[Fraction]:
    # A_σ^{-1}(β - A_σ̄ p) = c - M p
    return [c[r] - sum(sim.M[r][j] * p[j] for j in range(len(p)) if p[j]) for r in range(len(c))]


def _beta_coords(sim: Simplex, beta) -> tuple[Fraction, ...]:
    return tuple(sum(row[i] * Fraction(beta[i]) for i in range(len(beta))) for row in sim.inverse)


def _assemble(sim: Simplex, sig: Sequence[Fraction], p: Sequence[int]) -> tuple[Fraction, ...]:
    n = len(sim.indices) + len(sim.complement)
    v = [Fraction(0)] * n
    for r, i in enumerate(sim.indices):
        v[i] = sig[r]
    for c, j in enumerate(sim.complement):
        v[j] = Fraction(p[c])
    return tuple(v)


def shifted_exponent(A, sigma, beta, k: Sequence[int]) -> ShiftedExponent:
    """v^k with σ-part A_σ^{-1}(β - A_σ̄ k) and σ̄-part k."""
    sim = make_simplex(A, sigma)
    k = tuple(int(x) for x in k)
    if len(k) != len(sim.complement) or any(x < 0 for x in k):
        raise ValueError("k must be a nonnegative integer vector of length n-d")
    c = _beta_coords(sim, beta)
    return ShiftedExponent(k, _assemble(sim, _sigma_part(sim, c, k), k))


class _ClassTest:
    """Integer form of the class test: det·M (p - k) ≡ 0 mod det."""

    def __init__(self, sim: Simplex, k: Sequence[int]):
        self.D = abs(sim.det)
        self.Mi = [[int(x * self.D) for x in row] for row in sim.M]
        self.tk = self.image(k)

    def image(self, p) -> list[int]:
        return [sum(a * x for a, x in zip(row, p) if x) for row in self.Mi]

    def shift(self, p) -> list[int] | None:
        """Integer σ-part shift v^p - v^k, or None when p is in another class."""
        t = self.image(p)
        out = []
        for a, b in zip(self.tk, t):
            q, r = divmod(a - b, self.D)
            if r:
                return None
            out.append(q)
        return out


@lru_cache(maxsize=256)
def _bucketed_points(sim: Simplex, N: int) -> dict:
    """Points p with |p| <= N grouped by the residue of det·M p mod det.

    Each bucket is one class Λ_k; entries keep the image det·M p so that
    shifts can be read off without recomputation.
    """
    test = _ClassTest(sim, (0,) * len(sim.complement))
    D = test.D
    out: dict = {}
    for p in _simplex_points(len(sim.complement), N):
        t = test.image(p)
        out.setdefault(tuple(x % D for x in t), []).append((p, t))
    return out


def _same_class(sim: Simplex, p, k) -> bool:
    return _ClassTest(sim, k).shift(p) is not None


def _simplex_points(m: int, N: int) -> Iterator[tuple[int, ...]]:
    """All p ∈ N^m with |p| <= N, by degree then lexicographically."""
    def rec(prefix, left, slots):
        if slots == 1:
            yield prefix + (left,)
            return
        for a in range(left + 1):
            yield from rec(prefix + (a,), left - a, slots - 1)

    if m == 0:
        yield ()
        return
    for deg in range(N + 1):
        for p in rec((), deg, m):
            yield tuple(reversed(p))


# --------------------------------------------------------------------------
# Gevrey data


@dataclass(frozen=True)
class GevreyData:
    multiorder: tuple[tuple[int, Fraction], ...]  # (column, s_j) for j not in σ
    order: Fraction | None
    along: tuple[int, ...]  # τ
    classification: tuple[str, ...]


def gevrey_multiorder(A, sigma, tau: Iterable[int] | None = None) -> GevreyData:
    """s_j = |A_σ^{-1} a_j| for j ∉ σ; the order is the max over j ∉ τ (τ defaults to σ)."""
    sim = make_simplex(A, sigma)
    tau = tuple(sorted(sim.indices if tau is None else tau))
    multi = tuple((j, sim.height(j)) for j in sim.complement)
    rel = [s for j, s in multi if j not in tau]
    order = max(rel) if rel else None
    return GevreyData(multi, order, tau, classify_columns(A, sim.indices))


# --------------------------------------------------------------------------
# truncated series


@dataclass(frozen=True)
class Term:
    part: tuple[int, ...]  # σ̄-part p
    coeff: Fraction
    shift: tuple[int, ...]  # exponent - v^k, an integer vector
    base: tuple[Fraction, ...] = field(repr=False, compare=False)

    @property
    def exponent(self) -> tuple[Fraction, ...]:
        return tuple(x + u for x, u in zip(self.base, self.shift))

    @property
    def degree(self) -> int:
        return sum(self.part)


@dataclass(frozen=True)
class GammaSeriesTruncation:
    sigma: tuple[int, ...]
    base: ShiftedExponent
    beta: tuple[Fraction, ...]
    class_key: tuple[Fraction, ...]
    terms: tuple[Term, ...]
    N: int
    gevrey: GevreyData
    rows: tuple[tuple[int, ...], ...] = field(repr=False, default=())

    def coefficient_of(self, part: Sequence[int]) -> Fraction | None:
        part = tuple(part)
        for t in self.terms:
            if t.part == part:
                return t.coeff
        return None


class _Pochhammers:
    """Integer prefix tables for v = a/b.

    ``falling(L)`` is the numerator of [v]_L and ``rising(L)`` the numerator of
    Π_{t=1..L}(v + t); both share the denominator b^L.
    """

    def __init__(self, v: Fraction):
        self.a, self.b = v.numerator, v.denominator
        self.fall = [1]
        self.rise = [1]

    def falling(self, L: int) -> int:
        while len(self.fall) <= L:
            t = len(self.fall) - 1
            self.fall.append(self.fall[-1] * (self.a - t * self.b))
        return self.fall[L]

    def rising(self, L: int) -> int:
        while len(self.rise) <= L:
            t = len(self.rise)
            self.rise.append(self.rise[-1] * (self.a + t * self.b))
        return self.rise[L]


def _ratio(tables: Sequence[_Pochhammers], u: Sequence[int]) -> Fraction:
    """[v]_{u-} / [v+u]_{u+}; the powers of b cancel except b^{|u-| - |u+|}."""
    num = 1
    den = 1
    for tb, ui in zip(tables, u):
        if ui < 0:
            num *= tb.falling(-ui)
            den *= tb.b ** (-ui)
        elif ui > 0:
            den *= tb.rising(ui)
            num *= tb.b ** ui
    if den == 0:
        raise InvariantViolation("zero denominator in a Γ-series coefficient")
    return Fraction(num, den)


def _class_points(sim: Simplex, c, k, N, keep=None):
    """(p, u) for p in the class of k with |p| <= N; u = v^p - v^k in Z^n.

    Without ``keep`` the points are filtered by nsupp(v^p) = nsupp(v^k);
    otherwise ``keep(p, negative_rows)`` decides, where negative_rows lists
    the σ-rows of v^p that are negative integers.
    """
    test = _ClassTest(sim, k)
    vk = _sigma_part(sim, c, k)
    integral = [r for r, x in enumerate(vk) if x.denominator == 1]
    base_int = {r: int(vk[r]) for r in integral}
    target = tuple(r for r in integral if base_int[r] < 0)
    n = len(sim.indices) + len(sim.complement)
    D = test.D
    for p, t in _bucketed_points(sim, N).get(tuple(x % D for x in test.tk), ()):
        sh = [(a - b) // D for a, b in zip(test.tk, t)]
        neg = tuple(r for r in integral if base_int[r] + sh[r] < 0)
        if (neg != target) if keep is None else not keep(p, neg):
            continue
        u = [0] * n
        for r, i in enumerate(sim.indices):
            u[i] = sh[r]
        for pos, j in enumerate(sim.complement):
            u[j] = p[pos] - k[pos]
        yield p, tuple(u)


def gamma_series_truncated(A, sigma, beta, k: Sequence[int], N: int) -> GammaSeriesTruncation:
    """φ_σ^k truncated at σ̄-degree N.

    Terms run over p in Λ_k with nsupp(v^p) = nsupp(v^k) and |p| <= N, sorted
    by degree and then lexicographically.
    """
    A = IntegerMatrix.coerce(A)
    sim = make_simplex(A, sigma)
    beta = tuple(Fraction(b) for b in beta)
    if len(beta) != A.d:
        raise ValueError("beta must have length d")
    k = tuple(int(x) for x in k)
    if sum(k) > N:
        raise ValueError("truncation degree N must be at least |k|")
    return _build_series(A, sim, beta, k, N, None)


def _build_series(A, sim, beta, k, N, keep) -> GammaSeriesTruncation:
    c = _beta_coords(sim, beta)
    base = ShiftedExponent(k, _assemble(sim, _sigma_part(sim, c, k), k))
    tables = [_Pochhammers(x) for x in base.v]
    terms = []
    for p, u in _class_points(sim, c, k, N, keep):
        coeff = _ratio(tables, u)
        if coeff == 0:
            raise InvariantViolation("zero coefficient on the support")
        terms.append(Term(p, coeff, u, base.v))
    terms.sort(key=lambda t: (t.degree, t.part))
    key = quotient_group(A, sim.indices).class_key(k)
    return GammaSeriesTruncation(sim.indices, base, beta, key, tuple(terms), N,
                                 gevrey_multiorder(A, sim.indices), A.rows)


# --------------------------------------------------------------------------
# operators


@dataclass(frozen=True)
class OperatorSpec:
    """Euler operator E_i - β_i (``kind="euler"``) or toric ∂^{u+} - ∂^{u-}."""

    kind: str
    index: int = 0
    u: tuple[int, ...] = ()

    @classmethod
    def euler(cls, i: int) -> "OperatorSpec":
        return cls("euler", index=i)

    @classmethod
    def toric(cls, u: Sequence[int]) -> "OperatorSpec":
        return cls("toric", u=tuple(int(x) for x in u))

    @property
    def u_plus(self):
        return tuple(max(x, 0) for x in self.u)

    @property
    def u_minus(self):
        return tuple(max(-x, 0) for x in self.u)


@dataclass(frozen=True)
class OutputTerm:
    exponent: tuple[Fraction, ...]
    coeff: Fraction
    degree: int  # σ̄-degree of the output exponent


@dataclass(frozen=True)
class OperatorResult:
    op: OperatorSpec
    terms: tuple[OutputTerm, ...]
    reliable_degree: int

    @property
    def reliable_terms(self) -> tuple[OutputTerm, ...]:
        return tuple(t for t in self.terms if t.degree <= self.reliable_degree)

    @property
    def artifact_terms(self) -> tuple[OutputTerm, ...]:
        return tuple(t for t in self.terms if t.degree > self.reliable_degree)

    @property
    def annihilates(self) -> bool:
        """True when no nonzero term survives on the reliable region."""
        return not self.reliable_terms


def apply_operator(series: GammaSeriesTruncation, op: OperatorSpec,
                   reliable_only: bool = False) -> OperatorResult:
    """Formal term-by-term application; terms with zero coefficient are dropped.

    With ``reliable_only`` the output terms beyond the reliable degree are not
    computed at all, which is much cheaper for annihilation checks.
    """
    rows = series.rows
    comp = tuple(j for j in range(len(series.base.v)) if j not in series.sigma)

    if op.kind == "euler":
        i = op.index
        const = sum(a * x for a, x in zip(rows[i], series.base.v)) - series.beta[i]
        out = []
        for t in series.terms:
            val = const + sum(a * x for a, x in zip(rows[i], t.shift))
            if val:
                out.append(OutputTerm(t.exponent, t.coeff * val, t.degree))
        return OperatorResult(op, tuple(out), series.N)
    if op.kind != "toric":
        raise ValueError(f"unknown operator kind {op.kind!r}")
    if any(sum(a * x for a, x in zip(row, op.u)) for row in rows):
        raise ValueError("toric operator needs A u = 0")
    reliable = series.N - max(sum(op.u_plus), sum(op.u_minus))
    base = series.base.v
    acc: dict = {}
    for sign, w in ((1, op.u_plus), (-1, op.u_minus)):
        drop = sum(w[j] for j in comp)
        active = [(x, m, base[x].numerator, base[x].denominator) for x, m in enumerate(w) if m]
        den = 1
        for _, m, _, b in active:
            den *= b ** m
        for t in series.terms:
            if reliable_only and t.degree - drop > reliable:
                continue
            # ∂^w x^e = [e]_w x^{e-w}, with e_x = (a + u_x b) / b
            num = 1
            for x, m, a, b in active:
                top = a + t.shift[x] * b
                for j in range(m):
                    num *= top - j * b
                if not num:
                    break
            if not num:
                continue
            # accumulate unreduced numerator/denominator pairs; a key has at
            # most two contributions, so no gcd is needed until the end
            fn, fd = sign * num * t.coeff.numerator, den * t.coeff.denominator
            key = tuple(u - m for u, m in zip(t.shift, w))
            prev = acc.get(key)
            acc[key] = (fn, fd) if prev is None else (prev[0] * fd + fn * prev[1], prev[1] * fd)
    out = []
    for key, (fn, fd) in acc.items():
        if not fn:
            continue
        degree = sum(int(base[j]) + key[j] for j in comp)
        if reliable_only and degree > reliable:
            continue
        out.append(OutputTerm(tuple(x + u for x, u in zip(base, key)), Fraction(fn, fd), degree))
    out.sort(key=lambda t: (t.degree, t.exponent))
    return OperatorResult(op, tuple(out), reliable)


def annihilation_report(A, series: GammaSeriesTruncation) -> dict:
    """Apply every Euler operator and every kernel-basis toric operator."""
    A = IntegerMatrix.coerce(A)
    euler = [apply_operator(series, OperatorSpec.euler(i)) for i in range(A.d)]
    toric = [apply_operator(series, OperatorSpec.toric(u), reliable_only=True)
             for u in kernel_basis(A)]
    return {
        "euler_exact": all(not r.terms for r in euler),
        "toric_reliable": all(r.annihilates for r in toric),
        "euler": euler,
        "toric": toric,
    }


# --------------------------------------------------------------------------
# negative supports and the η-partition


def _region_constraints(sim: Simplex, c, nonneg_rows, neg_rows=()):
    """Half-spaces H p <= b in p-space.

    p >= 0, v_r(p) >= 0 for r in nonneg_rows and v_r(p) <= -1 for r in neg_rows,
    where v_r(p) = c_r - (M p)_r.
    """
    m = len(sim.complement)
    H, b = [], []
    for j in range(m):
        H.append([Fraction(-int(i == j)) for i in range(m)])
        b.append(Fraction(0))
    for r in nonneg_rows:
        H.append(list(sim.M[r]))
        b.append(c[r])
    for r in neg_rows:
        H.append([-x for x in sim.M[r]])
        b.append(-1 - c[r])
    return H, b


@dataclass(frozen=True)
class MinimalRep:
    k: tuple[int, ...]
    v: tuple[Fraction, ...]
    nsupp: tuple[int, ...]
    certified: bool
    searched: int


def minimal_negative_support_rep(A, sigma, beta, k: Sequence[int], bound: int = 50,
                                 natural: Iterable[int] = ()) -> MinimalRep:
    """Search the class of k for the inclusion-minimal negative support.

    ``natural`` lists columns whose exponent entries must be nonnegative
    integers; it encodes side conditions such as v ∈ C × N^2.  Among the
    members with |k'| <= bound whose support is inclusion-minimal, the
    lexicographically least k' is returned.
    """
    A = IntegerMatrix.coerce(A)
    sim = make_simplex(A, sigma)
    beta = tuple(Fraction(b) for b in beta)
    c = _beta_coords(sim, beta)
    natural = frozenset(natural)
    k = tuple(int(x) for x in k)
    found = []
    count = 0
    test = _ClassTest(sim, k)
    for p in _simplex_points(len(k), bound):
        if test.shift(p) is None:
            continue
        v = _assemble(sim, _sigma_part(sim, c, p), p)
        if any(v[j] < 0 or not is_integer(v[j]) for j in natural):
            continue
        count += 1
        found.append((p, v, frozenset(nsupp(v))))
    if not found:
        raise EmptyClassError("class empty at this truncation: no admissible shift within the bound")
    supports = {s for _, _, s in found}
    minimal = {s for s in supports if not any(o < s for o in supports)}
    p, v, eta = min((f for f in found if f[2] in minimal), key=lambda f: f[0])
    certified = not eta
    if not certified:
        certified = _certify_minimal(sim, c, v, eta, natural, bound)
    return MinimalRep(p, v, tuple(sorted(eta)), certified, count)


def _certify_minimal(sim, c, v, eta, natural, bound) -> bool:
    """True when no class member outside the searched box has support inside eta.

    For each i in eta the region where every integral coordinate outside
    eta minus {i} stays nonnegative must be empty, or bounded and inside the box.
    """
    integral_rows = [r for r, i in enumerate(sim.indices) if is_integer(v[i])]
    m = len(sim.complement)
    for i in eta:
        allowed = eta - {i}
        rows = [r for r in integral_rows if sim.indices[r] not in allowed]
        rows += [r for r, col in enumerate(sim.indices) if col in natural and r not in rows]
        H, b = _region_constraints(sim, c, rows)
        verts = polyhedron_vertices(H, b)
        if not verts:
            continue
        if cone_extreme_rays(H, m):
            return False
        if any(sum(x) > bound for x in verts):
            return False
    return True


@dataclass(frozen=True)
class EtaClass:
    eta: tuple[int, ...]  # original column indices
    points: tuple[tuple[int, ...], ...]
    unbounded: bool
    rays: tuple[tuple[int, ...], ...]


def eta_partition(A, sigma, beta, k: Sequence[int], bound: int = 50) -> dict:
    """Classify the points of Λ_k with |p| <= bound by η = nsupp of the σ-part."""
    A = IntegerMatrix.coerce(A)
    sim = make_simplex(A, sigma)
    beta = tuple(Fraction(b) for b in beta)
    c = _beta_coords(sim, beta)
    k = tuple(int(x) for x in k)
    groups: dict = {}
    test = _ClassTest(sim, k)
    for p in _simplex_points(len(k), bound):
        if test.shift(p) is None:
            continue
        sig = _sigma_part(sim, c, p)
        eta = tuple(sim.indices[r] for r in nsupp(sig))
        groups.setdefault(eta, []).append(p)
    if not groups:
        return {}
    v0 = _assemble(sim, _sigma_part(sim, c, k), k)
    integral_rows = [r for r, i in enumerate(sim.indices) if is_integer(v0[i])]
    m = len(k)
    out = {}
    for eta in sorted(groups, key=lambda e: (len(e), e)):
        neg = [r for r in integral_rows if sim.indices[r] in eta]
        pos = [r for r in integral_rows if sim.indices[r] not in eta]
        # recession cone: r >= 0, (M r)_i >= 0 on η, (M r)_j <= 0 off η
        H = [[Fraction(-int(i == j)) for i in range(m)] for j in range(m)]
        H += [[-x for x in sim.M[r]] for r in neg]
        H += [list(sim.M[r]) for r in pos]
        rays = tuple(cone_extreme_rays(H, m)) if m else ()
        out[eta] = EtaClass(eta, tuple(groups[eta]), bool(rays), rays)
    return out


def growth_index(A, sigma, eta_class: EtaClass, tau: Iterable[int]) -> Fraction | float:
    """Predicted Gevrey index along Y_τ of the series supported on the class.

    Along a recession ray r the exponent moves by B_σ r and the coefficients
    grow like t!^{Σ (s_j-1) r_j}.  Measured against the factorials of the τ̄
    coordinates, whose total movement is Σ_{i∉τ} |(B_σ r)_i|, this gives
    1 + Σ (s_j-1) r_j / Σ_{i∉τ} |(B_σ r)_i|.  Bounded classes give
    polynomials, index 1.
    """
    sim = make_simplex(A, sigma)
    tau = frozenset(tau)
    if not eta_class.unbounded:
        return Fraction(1)
    best: Fraction | float = Fraction(1)
    for r in eta_class.rays:
        num = sum((sim.height(j) - 1) * r[c] for c, j in enumerate(sim.complement))
        den = sum(r[c] for c, j in enumerate(sim.complement) if j not in tau)
        den += sum(abs(sum(row[c] * r[c] for c in range(len(r))))
                   for row, i in zip(sim.M, sim.indices) if i not in tau)
        if den == 0:
            val = math.inf if num > 0 else Fraction(1)
        else:
            val = 1 + Fraction(num) / den
        best = max(best, val)
    return best


@dataclass(frozen=True)
class EtaSelection:
    eta: tuple[int, ...]
    rule: str
    scores: tuple[tuple[tuple[int, ...], object], ...]


def select_eta(A, sigma, beta, k, tau, bound: int = 50, use_regression: bool = False,
               N: int | None = None) -> EtaSelection:
    """Pick η of maximal growth class, then minimal cardinality, then lex order."""
    part = eta_partition(A, sigma, beta, k, bound)
    if not part:
        raise EmptyClassError("class empty at this truncation")
    scores = []
    rule = "recession"
    for eta, cls in part.items():
        if use_regression:
            rule = "regression"
            ser = phi_k_eta(A, sigma, beta, k, eta, N or bound)
            try:
                val = gevrey_index_estimate(ser, tau).s_hat
            except TooFewTermsError:
                val = 1.0
        else:
            val = growth_index(A, sigma, cls, tau)
        scores.append((eta, val))
    best = max(v for _, v in scores)
    pick = min((e for e, v in scores if v == best), key=lambda e: (len(e), e))
    return EtaSelection(pick, rule, tuple(scores))


def phi_k_eta(A, sigma, beta, k, eta, N: int) -> GammaSeriesTruncation:
    """The series supported on Λ_{k,η} up to degree N, based at its lex-least point."""
    A = IntegerMatrix.coerce(A)
    sim = make_simplex(A, sigma)
    beta = tuple(Fraction(b) for b in beta)
    c = _beta_coords(sim, beta)
    k = tuple(int(x) for x in k)
    eta = tuple(sorted(eta))
    test = _ClassTest(sim, k)
    members = [p for p in _simplex_points(len(k), N)
               if test.shift(p) is not None
               and tuple(sim.indices[r] for r in nsupp(_sigma_part(sim, c, p))) == eta]
    if not members:
        raise EmptyClassError("class empty at this truncation")
    base = min(members)

    def keep(p, neg_rows):
        return tuple(sim.indices[r] for r in neg_rows) == eta

    return _build_series(A, sim, beta, base, N, keep)


# --------------------------------------------------------------------------
# genericity


def genericity(A, beta, cap: int = 10000) -> str:
    """Exact tri-state check that no σ-coordinate of any v^k is an integer.

    Integrality of v^k_i is constant on each class Λ_k, so testing the class
    representatives of every simplex decides it.  ``"unknown"`` is returned
    only when the number of classes exceeds ``cap``.
    """
    from .geometry import simplices

    A = IntegerMatrix.coerce(A)
    beta = tuple(Fraction(b) for b in beta)
    total = 0
    for sim in simplices(A):
        reps = lambda_class_representatives(A, sim.indices)
        total += len(reps)
        if total > cap:
            return "unknown"
        c = _beta_coords(sim, beta)
        for k in reps:
            if any(is_integer(x) for x in _sigma_part(sim, c, k)):
                return "degenerate"
    return "generic-so-far"


# --------------------------------------------------------------------------
# Gevrey index regression (floating point, diagnostic only)


@dataclass(frozen=True)
class GevreyEstimate:
    s_hat: float
    residual: float
    points: int


def _log_abs(x: Fraction) -> float:
    return math.log(abs(x.numerator)) - math.log(x.denominator)


def gevrey_index_estimate(series: GammaSeriesTruncation, tau: Iterable[int],
                          trim: float = 0.25) -> GevreyEstimate:
    """Least-squares estimate of the Gevrey index along Y_τ.

    For each τ̄-part α of the exponent the largest log|coefficient| is kept
    (upper envelope); on σ-coordinates α is the distance from the base
    exponent.  Envelope points with |α| below ``trim`` times the
    largest |α| are skipped, since Stirling asymptotics are poor there.  The
    rest are fitted against [1, Σ log α_i!, Σ α_i, Σ log(α_i + 1)]; the last
    two columns absorb exponential and polynomial factors.  The fitted slope
    of the factorial column plus one is the estimate.
    """
    tau = frozenset(tau)
    n = len(series.base.v)
    idx = [j for j in range(n) if j not in tau]
    nonzero = [t for t in series.terms if t.coeff != 0]
    if len(nonzero) < 10 or not idx:
        raise TooFewTermsError("too few terms for a Gevrey index estimate (need 10)")
    env: dict = {}
    for t in nonzero:
        alpha = tuple(abs(t.shift[j]) if j in series.sigma else int(t.exponent[j]) for j in idx)
        val = _log_abs(t.coeff)
        if alpha not in env or val > env[alpha]:
            env[alpha] = val
    top = max(sum(al) for al in env)
    keys = [al for al in env if sum(al) >= trim * top]
    if len(keys) < 6:
        keys = list(env)
    if len(keys) < 5:
        raise TooFewTermsError("too few distinct transverse exponents")
    X = [[1.0, sum(math.lgamma(a + 1) for a in al), float(sum(al)),
          sum(math.log(a + 1) for a in al)] for al in keys]
    y = [env[al] for al in keys]
    coef = _lstsq(X, y)
    res = math.sqrt(sum((yi - sum(c * x for c, x in zip(coef, row))) ** 2 for row, yi in zip(X, y)) / len(y))
    return GevreyEstimate(coef[1] + 1.0, res, len(y))


def _lstsq(X, y):
    """Normal equations solved by Gaussian elimination."""
    m = len(X[0])
    G = [[sum(r[i] * r[j] for r in X) for j in range(m)] for i in range(m)]
    h = [sum(r[i] * yi for r, yi in zip(X, y)) for i in range(m)]
    for c in range(m):
        piv = max(range(c, m), key=lambda i: abs(G[i][c]))
        G[c], G[piv] = G[piv], G[c]
        h[c], h[piv] = h[piv], h[c]
        for i in range(m):
            if i != c and G[c][c]:
                f = G[i][c] / G[c][c]
                G[i] = [a - f * b for a, b in zip(G[i], G[c])]
                h[i] -= f * h[c]
    return [h[i] / G[i][i] if G[i][i] else 0.0 for i in range(m)]


# --------------------------------------------------------------------------
# rendering


def render_monomial(exponent: Sequence[Fraction]) -> str:
    parts = []
    for i, e in enumerate(exponent):
        if e == 0:
            continue
        parts.append(f"x{i + 1}" if e == 1 else f"x{i + 1}^({format_rational(e)})")
    return "*".join(parts) or "1"


def pretty(series: GammaSeriesTruncation, limit: int | None = None) -> str:
    """Plain-text rendering of the first ``limit`` terms."""
    terms = series.terms if limit is None else series.terms[:limit]
    lines = [f"{format_rational(t.coeff)} * {render_monomial(t.exponent)}" for t in terms]
    if limit is not None and len(series.terms) > limit:
        lines.append(f"... ({len(series.terms) - limit} more terms)")
    return "\n".join(lines)
