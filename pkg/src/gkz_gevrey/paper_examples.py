"""Bundled worked examples and the checks run by ``gkz-gevrey paper-suite``."""
from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .exact import kernel_basis, quotient_group
from .geometry import normalized_volume, regular_triangulation, simplex_volume
from .irregularity import irregularity_dimension_hyperplane
from .series import annihilation_report, gamma_series_truncated, minimal_negative_support_rep
from .slopes import candidate_indices_along_subspace, slopes_along_hyperplane

# two-row configuration with slope 7/2 along x3 = 0
EJEM1 = ((1, 0, 3), (0, 2, 1))
# non-pointed 2 x 4 configuration with slopes 5/2 (x2 = 0) and 6 (x4 = 0)
NON_POINTED = ((1, 0, -3, 2), (-1, 1, -2, 2))
# codimension-two configuration whose slope candidate 3/2 has no Ω witness
CONTRA = ((1, 0, 3), (0, 1, -1))

EXAMPLES = {
    "ejem1": {"matrix": EJEM1, "beta": ("1/2", "1/3")},
    "non-pointed": {"matrix": NON_POINTED, "beta": ("1/3", "2/7")},
    "contraejemplo": {"matrix": CONTRA, "beta": ("3", "-1")},
}


def closed_form_ejem1(beta, m: int) -> Fraction:
    """[β1]_{6m} [β2/2]_m / (2m)!, by direct products."""
    b1, b2 = Fraction(beta[0]), Fraction(beta[1]) / 2
    num = Fraction(1)
    for j in range(6 * m):
        num *= b1 - j
    for j in range(m):
        num *= b2 - j
    den = 1
    for j in range(1, 2 * m + 1):
        den *= j
    return num / den


def _ejem1_kernel():
    got = kernel_basis(EJEM1)
    return got == [(6, 1, -2)], f"kernel {got}"


def _ejem1_volumes():
    v12 = simplex_volume(EJEM1, (0, 1))
    vall = normalized_volume(EJEM1, (0, 1, 2))
    T = regular_triangulation(EJEM1, (1, 1, 1))
    parts = [simplex_volume(EJEM1, s) for s in T.maximal_simplices]
    ok = v12 == 2 and vall == 7 and T.maximal_simplices == ((0, 2), (1, 2)) and parts == [1, 6]
    tri = [[i + 1 for i in s] for s in T.maximal_simplices]
    return ok, f"vol{{1,2}}={v12}, vol(A)={vall}, T={tri}, parts={[str(p) for p in parts]}"


def _ejem1_slopes():
    r = slopes_along_hyperplane(EJEM1, 2)
    ok = r.slopes == (Fraction(7, 2),) and r.cross_check
    return ok, f"slopes {[str(s) for s in r.slopes]}, cross-check {r.cross_check}"


def _ejem1_series():
    beta = (Fraction(1, 2), Fraction(1, 3))
    s = gamma_series_truncated(EJEM1, (0, 1), beta, (0,), 30)
    ok = all(t.part == (2 * m,) and t.coeff == closed_form_ejem1(beta, m)
             for m, t in enumerate(s.terms)) and len(s.terms) == 16
    return ok, f"{len(s.terms)} terms against the closed form"


def _ejem1_irregularity():
    vals = {s: irregularity_dimension_hyperplane(EJEM1, 2, s) for s in ("3/2", "3", "4", "10")}
    ok = vals == {"3/2": 0, "3": 0, "4": 2, "10": 2}
    return ok, f"irr {vals}"


def _np_slopes():
    r2 = slopes_along_hyperplane(NON_POINTED, 1)
    r4 = slopes_along_hyperplane(NON_POINTED, 3)
    ok = r2.slopes == (Fraction(5, 2),) and r4.slopes == (Fraction(6),) and r2.cross_check and r4.cross_check
    return ok, f"x2: {[str(s) for s in r2.slopes]}, x4: {[str(s) for s in r4.slopes]}"


def _np_quotient():
    q = quotient_group(NON_POINTED, (2, 3))
    return q.order == 2 and q.representatives == ((0, 0), (0, 1)), f"order {q.order}, reps {q.representatives}"


def _contra_gap():
    r = candidate_indices_along_subspace(CONTRA, (0,))
    ok = r.candidates == (Fraction(3, 2),) and not r.realized and r.has_gap
    return ok, f"candidates {[str(c) for c in r.candidates]}, realized {len(r.realized)}, gap {r.has_gap}"


def _contra_series():
    beta = (Fraction(3), Fraction(-1))
    rep = minimal_negative_support_rep(CONTRA, (0, 1), beta, (0,), 50)
    s = gamma_series_truncated(CONTRA, (0, 1), beta, rep.k, 20)
    rpt = annihilation_report(CONTRA, s)
    ok = rep.k == (1,) and rep.certified and rpt["euler_exact"] and rpt["toric_reliable"]
    return ok, f"k={rep.k}, certified {rep.certified}, euler {rpt['euler_exact']}, toric {rpt['toric_reliable']}"


CHECKS: list[tuple[str, Callable]] = [
    ("ejem1 kernel", _ejem1_kernel),
    ("ejem1 volumes and T_(1,1,1)", _ejem1_volumes),
    ("ejem1 slopes along x3", _ejem1_slopes),
    ("ejem1 series coefficients", _ejem1_series),
    ("ejem1 irregularity along x3", _ejem1_irregularity),
    ("non-pointed slopes along x2, x4", _np_slopes),
    ("non-pointed quotient for {3,4}", _np_quotient),
    ("contraejemplo slope gap", _contra_gap),
    ("contraejemplo shifted series", _contra_series),
]


def run_paper_suite() -> list[tuple[str, bool, str]]:
    out = []
    for name, fn in CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # reported as a failed row, not a crash
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append((name, bool(ok), detail))
    return out
