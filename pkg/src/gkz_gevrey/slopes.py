"""Slopes along coordinate subspaces and radical initial ideal generators.

Two independent routes give the slopes along a coordinate hyperplane: the
Ω sets built from simplices inside τ, and the jump points of the pattern
umbrella.  Reports carry both and whether they agree.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .exact import IntegerMatrix, kernel_basis
from .geometry import WeightVector, simplices, umbrella_breakpoints, umbrella_facets


@dataclass(frozen=True)
class OmegaWitness:
    s0: Fraction
    simplices: tuple[tuple[int, ...], ...]


def _admissible(sim, tau: frozenset) -> bool:
    """|A_σ^{-1} a_j| <= 1 for every j in τ."""
    return all(sim.height(j) <= 1 for j in tau)


def _omega_value(sim, tau: frozenset, n: int) -> Fraction | None:
    outside = [sim.height(j) for j in range(n) if j not in tau]
    return max(outside) if outside else None


def omega_set(A, tau: Iterable[int], s0) -> OmegaWitness:
    """Ω_{Y_τ}^{(s0)}: simplices σ ⊆ τ with max_{i∉τ} |A_σ^{-1}a_i| = s0 and
    |A_σ^{-1}a_j| <= 1 for j ∈ τ."""
    A = IntegerMatrix.coerce(A)
    tau = frozenset(tau)
    s0 = Fraction(s0)
    found = tuple(sim.indices for sim in simplices(A, tau)
                  if _admissible(sim, tau) and _omega_value(sim, tau, A.n) == s0)
    return OmegaWitness(s0, found)


def omega_realized(A, tau: Iterable[int]) -> dict:
    """Map s0 > 1 to the simplices of Ω_{Y_τ}^{(s0)}, over all s0."""
    A = IntegerMatrix.coerce(A)
    tau = frozenset(tau)
    out: dict = {}
    for sim in simplices(A, tau):
        if not _admissible(sim, tau):
            continue
        val = _omega_value(sim, tau, A.n)
        if val is not None and val > 1:
            out.setdefault(val, []).append(sim.indices)
    return {k: tuple(out[k]) for k in sorted(out)}


@dataclass(frozen=True)
class SlopeReport:
    hyperplane: int
    slopes: tuple[Fraction, ...]
    witnesses: tuple[OmegaWitness, ...]
    umbrella_breakpoints: tuple[Fraction, ...]
    cross_check: bool


def slopes_along_hyperplane(A, i: int, threads: int = 1) -> SlopeReport:
    """Slopes along {x_i = 0} (0-based i) from Ω sets, checked against umbrella jumps."""
    A = IntegerMatrix.coerce(A)
    if not 0 <= i < A.n:
        raise ValueError(f"column index out of range: {i + 1}")
    tau = frozenset(range(A.n)) - {i}
    realized = omega_realized(A, tau)
    bps = tuple(umbrella_breakpoints(A, tau, threads=threads))
    slopes = tuple(realized)
    witnesses = tuple(OmegaWitness(s, realized[s]) for s in slopes)
    check = slopes == tuple(b for b in bps if b > 1)
    return SlopeReport(i, slopes, witnesses, bps, check)


@dataclass(frozen=True)
class SubspaceReport:
    tau: tuple[int, ...]
    realized: tuple[OmegaWitness, ...]
    breakpoints: tuple[Fraction, ...]
    candidates: tuple[Fraction, ...]  # breakpoints > 1
    gap: tuple[Fraction, ...]  # candidates with no Ω witness

    @property
    def realized_values(self) -> tuple[Fraction, ...]:
        return tuple(w.s0 for w in self.realized)

    @property
    def has_gap(self) -> bool:
        return bool(self.gap)


def candidate_indices_along_subspace(A, tau: Iterable[int], threads: int = 1) -> SubspaceReport:
    """Ω-realized Gevrey indices and umbrella jump candidates along Y_τ."""
    A = IntegerMatrix.coerce(A)
    tau = frozenset(tau)
    realized = omega_realized(A, tau)
    bps = tuple(umbrella_breakpoints(A, tau, threads=threads))
    cands = tuple(b for b in bps if b > 1)
    gap = tuple(b for b in cands if b not in realized)
    return SubspaceReport(tuple(sorted(tau)), tuple(OmegaWitness(s, w) for s, w in realized.items()),
                          bps, cands, gap)


@dataclass(frozen=True)
class RadicalGenerators:
    weight: WeightVector
    monomials: tuple[tuple[int, ...], ...]  # supports of squarefree monomials
    binomials: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]  # (u+, u-)


def radical_initial_ideal_generators(A, s: WeightVector) -> RadicalGenerators:
    """Generators of the radical of the s-initial ideal of the toric ideal.

    Type i: inclusion-minimal index sets contained in no facet of Φ_A^s.
    Type ii: for each facet F, a lattice basis of the kernel vectors
    supported in F, as binomial exponent pairs (generating set up to saturation).
    """
    A = IntegerMatrix.coerce(A)
    facets = [frozenset(F) for F in umbrella_facets(A, s)]
    mono = []
    for size in range(1, A.n + 1):
        for S in itertools.combinations(range(A.n), size):
            fs = frozenset(S)
            if any(fs <= F for F in facets):
                continue
            if any(frozenset(m) <= fs for m in mono):
                continue
            mono.append(S)
    bins = set()
    for F in sorted(tuple(sorted(F)) for F in facets):
        if len(F) <= A.d:
            continue
        for u in kernel_basis(A.submatrix(F)):
            full = [0] * A.n
            for j, x in zip(F, u):
                full[j] = x
            plus = tuple(max(x, 0) for x in full)
            minus = tuple(max(-x, 0) for x in full)
            bins.add((plus, minus))
    return RadicalGenerators(s, tuple(mono), tuple(sorted(bins)))


def is_homogeneous(s: WeightVector, pair) -> bool:
    p, q = pair
    return sum(w * x for w, x in zip(s.values, p)) == sum(w * x for w, x in zip(s.values, q))
