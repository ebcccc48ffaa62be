"""Dimension formulas for Gevrey solutions and the irregularity along a hyperplane.

Sums over umbrella faces run over facets (faces of dimension d-1); lower
dimensional faces have zero d-dimensional volume.  Umbrellas written Φ^{s+ε}
are evaluated exactly at the midpoint between s and the next jump point,
or at s+1 when there is none.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import AssumptionError
from .exact import IntegerMatrix, lattice_index_full, rank
from .geometry import (
    Triangulation,
    WeightVector,
    is_pointed,
    make_simplex,
    normalized_volume,
    simplex_volume,
    umbrella_breakpoints,
    umbrella_facets,
    volume_respecting_triangulation,
)
from .series import genericity, lambda_class_representatives

NON_RANK_JUMPING_CAVEAT = "beta is assumed non-rank-jumping; this is not verified"


def t_tau_s(A, tau: Iterable[int], s, T: Triangulation) -> tuple[tuple[int, ...], ...]:
    """Maximal simplices σ of T with |A_σ^{-1} a_j| <= s for every j ∉ τ."""
    A = IntegerMatrix.coerce(A)
    tau = frozenset(tau)
    out = []
    for sigma in T.maximal_simplices:
        if s == math.inf:
            out.append(sigma)
            continue
        sim = make_simplex(A, sigma)
        if all(sim.height(j) <= s for j in range(A.n) if j not in tau):
            out.append(sigma)
    return tuple(out)


@dataclass(frozen=True)
class DimensionReport:
    tau: tuple[int, ...]
    s: Fraction | float
    triangulation_used: Triangulation
    selected: tuple[tuple[int, ...], ...]
    lower_bound: int
    equality_regime: str
    witness_pairs: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    @property
    def reported_dimension(self) -> int | None:
        """The dimension when it is determined, else None (only a lower bound)."""
        if self.equality_regime == "zero-by-rank":
            return 0
        if self.equality_regime == "very-generic-equality":
            return self.lower_bound
        return None


def gevrey_dim_lower_bound(A, tau: Iterable[int], s=math.inf, beta=None,
                           seed: int = 0) -> DimensionReport:
    """Σ vol_{ZA}(Δ_σ) over T(τ, s); ``s = math.inf`` gives the formal bound.

    The regime is ``zero-by-rank`` when rank(A_τ) < d, ``lower-bound-only``
    when a given β fails the genericity check, and ``very-generic-equality``
    otherwise.
    """
    A = IntegerMatrix.coerce(A)
    tau = tuple(sorted(set(tau)))
    if s != math.inf:
        s = Fraction(s)
    T = volume_respecting_triangulation(A, tau, seed=seed)
    chosen = t_tau_s(A, tau, s, T)
    total = sum((simplex_volume(A, sig) for sig in chosen), Fraction(0))
    assert total.denominator == 1
    pairs = tuple((sig, k) for sig in chosen for k in lambda_class_representatives(A, sig))
    if not tau or rank(A.submatrix(tau)) < A.d:
        regime = "zero-by-rank"
    elif beta is not None and genericity(A, beta) != "generic-so-far":
        regime = "lower-bound-only"
    else:
        regime = "very-generic-equality"
    return DimensionReport(tau, s, T, chosen, int(total), regime, pairs)


def formal_dim_very_generic(A, tau: Iterable[int]) -> int:
    """vol_{ZA}(Δ_τ), the formal solution count at generic points of Y_τ."""
    return int(normalized_volume(A, tau))


# --------------------------------------------------------------------------
# multiplicities and irregularity


def _check_assumptions(A: IntegerMatrix):
    if not is_pointed(A) or lattice_index_full(A) != 1:
        raise AssumptionError("assumptions violated: A must be pointed with ZA = Z^d")


def _beyond(A: IntegerMatrix, s: Fraction, i: int) -> Fraction:
    """An exact point in (s, next jump) for the weight s on column i."""
    tau = frozenset(range(A.n)) - {i}
    later = [b for b in umbrella_breakpoints(A, tau) if b > s]
    return (s + later[0]) / 2 if later else s + 1


def _facets_beyond(A: IntegerMatrix, s, i: int):
    w = WeightVector.pattern(A.n, frozenset(range(A.n)) - {i}, _beyond(A, Fraction(s), i))
    return sorted(umbrella_facets(A, w))


def sw_multiplicity_empty(A, s, i: int | None = None) -> int:
    """Σ vol_{Z^d}(conv(F ∪ {0})) over facets F of Φ_A^{s+ε} (weight s on column i)."""
    A = IntegerMatrix.coerce(A)
    _check_assumptions(A)
    i = A.n - 1 if i is None else i
    return int(sum(normalized_volume(A, F) for F in _facets_beyond(A, s, i)))


def sw_multiplicity_hyperplane(A, s, i: int) -> int:
    """Σ vol over facets of Φ_A^{s+ε} containing column i."""
    A = IntegerMatrix.coerce(A)
    _check_assumptions(A)
    return int(sum(normalized_volume(A, F) for F in _facets_beyond(A, s, i) if i in F))


def _excluding_sum(A, s, i) -> int:
    return int(sum(normalized_volume(A, F) for F in _facets_beyond(A, s, i) if i not in F))


@dataclass(frozen=True)
class IrregularityReport:
    hyperplane: int
    s: Fraction
    dimension: int
    at_s: int
    at_one: int
    triangulation_value: int
    consistent: bool
    caveat: str = NON_RANK_JUMPING_CAVEAT


def irregularity_report(A, i: int, s, seed: int = 0) -> IrregularityReport:
    """Irregularity dimension along {x_i = 0} at s >= 1, with its triangulation check."""
    A = IntegerMatrix.coerce(A)
    _check_assumptions(A)
    s = Fraction(s)
    if s < 1:
        raise ValueError("s must be at least 1")
    hi = _excluding_sum(A, s, i)
    lo = _excluding_sum(A, Fraction(1), i)
    dim = hi - lo
    if dim < 0:
        raise AssertionError("irregularity dimension came out negative")
    tau = tuple(j for j in range(A.n) if j != i)
    T = volume_respecting_triangulation(A, tau, seed=seed)
    upper = set(t_tau_s(A, tau, s, T))
    lower = set(t_tau_s(A, tau, Fraction(1), T))
    tri = int(sum(simplex_volume(A, sig) for sig in upper - lower))
    return IrregularityReport(i, s, dim, hi, lo, tri, tri == dim)


def irregularity_dimension_hyperplane(A, i: int, s) -> int:
    return irregularity_report(A, i, s).dimension
