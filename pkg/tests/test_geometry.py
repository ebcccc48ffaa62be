import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from configs import CONTRA, EJEM1, NON_POINTED
from gkz_gevrey.errors import NonGenericWeightError
from gkz_gevrey.exact import rank
from gkz_gevrey.geometry import (
    WeightVector,
    classify_columns,
    convergence_domain,
    is_pointed,
    make_simplex,
    normalized_volume,
    pyramid_volume,
    regular_triangulation,
    simplex_volume,
    simplices,
    umbrella,
    umbrella_breakpoints,
    umbrella_facets,
    volume_respecting_triangulation,
)
from gkz_gevrey.corpus import random_matrix
from oracles import columns, leibniz_det, minors_gcd, normalized_volume_low_dim

F = Fraction


def test_ejem1_volumes():
    # [PAPER] vol{1,2} = 2 and vol(A) = 7 = 1 + 6
    assert simplex_volume(EJEM1, (0, 1)) == 2
    assert normalized_volume(EJEM1, (0, 1, 2)) == 7
    assert pyramid_volume(EJEM1, (0, 1, 2)) == 7


def test_ejem1_triangulation_ones():
    # [PAPER] T_(1,1,1) = {{1,3},{2,3}}
    T = regular_triangulation(EJEM1, (1, 1, 1))
    assert T.maximal_simplices == ((0, 2), (1, 2))
    assert T.certified_generic
    assert [simplex_volume(EJEM1, s) for s in T.maximal_simplices] == [1, 6]


def test_non_generic_weight_names_simplex():
    # omega on the wall of C({1,2}): omega_3 - 3 omega_1 - omega_2 / 2 = 0
    with pytest.raises(NonGenericWeightError) as exc:
        regular_triangulation(EJEM1, (1, 2, 4))
    assert exc.value.simplex == (0, 1)
    assert exc.value.code == "non-generic-weight"


def test_simplex_data():
    sim = make_simplex(EJEM1, (0, 1))
    assert sim.det == 2
    assert sim.coords(2) == (F(3), F(1, 2))
    assert sim.height(2) == F(7, 2)
    # B_sigma columns lie in the rational kernel
    B = sim.kernel_block
    assert [row[0] for row in B] == [F(-3), F(-1, 2), F(1)]


def test_pointedness():
    assert is_pointed(EJEM1)
    assert is_pointed(CONTRA)
    # [PAPER] the 2 x 4 example is not pointed: (1,1,1,1) lies in the kernel
    assert not is_pointed(NON_POINTED)


@pytest.mark.parametrize("s,facets", [
    (F(2), {(0, 2), (1, 2)}),
    (F(7, 2), {(0, 1, 2)}),
    (F(5), {(0, 1)}),
])
def test_ejem1_umbrella_facets(s, facets):
    # a_3/s crosses the segment [a_1, a_2] exactly at s = 7/2
    assert umbrella_facets(EJEM1, WeightVector.pattern(3, (0, 1), s)) == frozenset(facets)


def test_umbrella_faces_ejem1():
    u = umbrella(EJEM1, WeightVector.pattern(3, (0, 1), F(2)))
    assert [f.indices for f in u.faces[1]] == [(0, 2), (1, 2)]
    assert [f.indices for f in u.faces[0]] == [(0,), (1,), (2,)]
    assert u.facets[0].covector == (F(1), F(-1))


def test_breakpoints_examples():
    # [PAPER] the umbrella along x3 = 0 of ejem1 jumps only at 7/2
    assert umbrella_breakpoints(EJEM1, (0, 1)) == [F(7, 2)]
    # [PAPER] contraejemplo along x2 = x3 = 0 has the candidate 3/2
    assert F(3, 2) in umbrella_breakpoints(CONTRA, (0,))


def test_breakpoints_thread_determinism(small_corpus):
    for A in small_corpus[:10]:
        for i in range(A.n):
            tau = [j for j in range(A.n) if j != i]
            assert umbrella_breakpoints(A, tau, threads=1) == umbrella_breakpoints(A, tau, threads=4)


def _brute_jumps(A, tau, grid):
    """Values on a grid where the facet set differs from both neighbours."""
    out = []
    for a, b, c in zip(grid, grid[1:], grid[2:]):
        fb = umbrella_facets(A, WeightVector.pattern(A.n, tau, b))
        if fb != umbrella_facets(A, WeightVector.pattern(A.n, tau, a)) or \
                fb != umbrella_facets(A, WeightVector.pattern(A.n, tau, c)):
            out.append(b)
    return out


def test_breakpoints_contain_grid_jumps(small_corpus):
    # every change seen on a fine grid is bracketed by a reported breakpoint
    grid = [F(k, 12) for k in range(1, 12 * 8)]
    for A in small_corpus[:12]:
        for i in range(A.n):
            tau = [j for j in range(A.n) if j != i]
            bps = umbrella_breakpoints(A, tau)
            for x in _brute_jumps(A, tau, grid):
                assert any(abs(x - b) <= F(1, 12) for b in bps), (A.rows, i, x, bps)


# volumes ---------------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_volume_respecting_matches_hull_oracle(seed):
    A = random_matrix(random.Random(seed), max_d=2, max_n=5)
    rows = [list(r) for r in A.rows]
    for size in range(A.d, A.n + 1):
        for tau in itertools.combinations(range(A.n), size):
            want = normalized_volume_low_dim(rows, tau)
            T = volume_respecting_triangulation(A, tau)
            got = sum((simplex_volume(A, s) for s in T.maximal_simplices), F(0))
            assert got == want, (A.rows, tau)
            assert normalized_volume(A, tau) == want


def test_volume_respecting_sum_on_corpus(small_corpus):
    for A in small_corpus:
        T = volume_respecting_triangulation(A, range(A.n))
        vols = [simplex_volume(A, s) for s in T.maximal_simplices]
        assert sum(vols) == pyramid_volume(A, range(A.n))
        assert all(v.denominator == 1 for v in vols)
        assert T.certified_generic


def test_simplex_volume_oracle(small_corpus):
    for A in small_corpus:
        rows = [list(r) for r in A.rows]
        for sim in simplices(A):
            want = F(abs(leibniz_det(columns(rows, sim.indices))), minors_gcd(rows, A.d))
            assert simplex_volume(A, sim.indices) == want


def test_seed_determinism():
    A = ((1, 0, 1, 2, -1), (0, 1, 1, -1, 3))
    a = volume_respecting_triangulation(A, range(5), seed=3)
    b = volume_respecting_triangulation(A, range(5), seed=3)
    assert a == b


def test_low_rank_tau_has_volume_zero():
    assert normalized_volume(EJEM1, (0,)) == 0
    assert volume_respecting_triangulation(EJEM1, (2,)).maximal_simplices == ()


def test_regular_triangulation_is_a_triangulation(small_corpus):
    for A in small_corpus:
        T = regular_triangulation(A, [F(1) + F(j * j, 101) for j in range(A.n)])
        if not T.certified_generic:
            continue
        for s in T.maximal_simplices:
            assert rank(A.submatrix(s)) == A.d


# convergence domain ----------------------------------------------------------

def test_classification_ejem1():
    assert classify_columns(EJEM1, (0, 1)) == ("on", "on", "above")
    assert classify_columns(EJEM1, (1, 2)) == ("below", "on", "on")
    dom = convergence_domain(EJEM1, (0, 2))
    assert dom.nonzero == (0, 2)
    assert dom.constraints == ()
    assert dom.render() == ["x1 != 0", "x3 != 0"]


def test_convergence_domain_on_column():
    # |A_sigma^{-1} a_3| = 2 - 1 = 1, so a_3 lies on H_sigma for sigma = {1,2}
    A = ((1, 0, 2), (0, 1, -1))
    assert classify_columns(A, (0, 1)) == ("on", "on", "on")
    dom = convergence_domain(A, (0, 1))
    assert [c.column for c in dom.constraints] == [2]
    assert dom.render() == ["x1 != 0", "x2 != 0", "|x3| < R*|x1^(2)*x2^(-1)|"]


def test_identity_domain():
    dom = convergence_domain(((1, 0), (0, 1)), (0, 1))
    assert dom.render() == ["x1 != 0", "x2 != 0"]


# umbrella / triangulation identities -----------------------------------------

def _random_weights(rng, n):
    return [F(rng.randint(1, 40), rng.randint(1, 13)) for _ in range(n)]


@pytest.mark.parametrize("d,n", [(2, 4), (3, 5)])
def test_umbrella_equals_T_s_when_generic(d, n):
    rng = random.Random(100 * d + n)
    checked = 0
    while checked < 40:
        A = random_matrix(rng, max_d=d, max_n=n)
        if (A.d, A.n) != (d, n) or not is_pointed(A):
            continue
        s = _random_weights(rng, n)
        try:
            T = regular_triangulation(A, s)
        except NonGenericWeightError:
            continue
        if not T.certified_generic:
            continue
        facets = umbrella_facets(A, s)
        # for generic s the umbrella facets are simplices
        if any(len(f) != d for f in facets):
            continue
        assert facets == frozenset(T.maximal_simplices), (A.rows, s)
        checked += 1


def _in_cone(gens, x):
    """x in pos(gens), by trying every basis of linearly independent generators."""
    from gkz_gevrey.exact import solve
    d = len(x)
    for S in itertools.combinations(range(len(gens)), d):
        M = [[gens[j][r] for j in S] for r in range(d)]
        if leibniz_det(M) == 0:
            continue
        lam = solve(M, x)
        if all(c >= 0 for c in lam):
            return True
    return False


def test_umbrella_facet_cones_cover(small_corpus):
    rng = random.Random(5)
    for A in small_corpus:
        if not is_pointed(A):
            continue
        s = _random_weights(rng, A.n)
        facets = umbrella_facets(A, s)
        tests = [A.column(j) for j in range(A.n)]
        for _ in range(5):
            c = [rng.randint(0, 3) for _ in range(A.n)]
            tests.append(tuple(sum(c[j] * A.column(j)[r] for j in range(A.n)) for r in range(A.d)))
        for x in tests:
            if all(v == 0 for v in x):
                continue
            assert any(_in_cone([A.column(j) for j in f], x) for f in facets), (A.rows, s, x)


def test_breakpoint_soundness(small_corpus):
    rng = random.Random(9)
    for A in small_corpus[:15]:
        for i in range(A.n):
            tau = [j for j in range(A.n) if j != i]
            bps = umbrella_breakpoints(A, tau)
            edges = [F(0)] + bps + [bps[-1] + 10 if bps else F(10)]
            for a, b in zip(edges, edges[1:]):
                x, y = sorted(a + (b - a) * F(rng.randint(1, 99), 100) for _ in range(2))
                fx = umbrella_facets(A, WeightVector.pattern(A.n, tau, x))
                fy = umbrella_facets(A, WeightVector.pattern(A.n, tau, y))
                assert fx == fy, (A.rows, i, a, b)


def test_simplex_volume_is_integer(small_corpus):
    for A in small_corpus:
        for sim in simplices(A):
            assert normalized_volume(A, sim.indices).denominator == 1
