"""JSON-ready dictionaries for every report type.

Column indices are 1-based and rationals are "p/q" strings, so the output
is deterministic and round-trips through :func:`exact.parse_rational`.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction

from .exact import format_rational, format_vector


def idx(indices) -> list[int]:
    return [i + 1 for i in indices]


def rat(x) -> str:
    if x == math.inf:
        return "inf"
    return format_rational(x)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def weight(w) -> dict | list:
    if w.tau is not None:
        return {"tau": idx(w.tau), "s": rat(w.s)}
    return format_vector(w.values)


def umbrella(u) -> dict:
    return {
        "weight": weight(u.weight),
        "faces": {str(dim): [{"indices": idx(f.indices), "dim": f.dim,
                              "covector": format_vector(f.covector)} for f in faces]
                  for dim, faces in sorted(u.faces.items())},
        "facets": [idx(f.indices) for f in u.facets],
    }


def triangulation(T, volumes=None) -> dict:
    out = {
        "weight": format_vector(T.weight),
        "maximal_simplices": [idx(s) for s in T.maximal_simplices],
        "certified_generic": T.certified_generic,
        "columns": idx(T.columns),
    }
    if volumes is not None:
        out["volumes"] = [rat(v) for v in volumes]
    return out


def gevrey(g) -> dict:
    return {
        "multiorder": [{"column": j + 1, "s": rat(s)} for j, s in g.multiorder],
        "order": None if g.order is None else rat(g.order),
        "along": idx(g.along),
        "classification": list(g.classification),
    }


def series(s, limit=None) -> dict:
    terms = s.terms if limit is None else s.terms[:limit]
    return {
        "sigma": idx(s.sigma),
        "k": list(s.base.k),
        "base": format_vector(s.base.v),
        "beta": format_vector(s.beta),
        "class": format_vector(s.class_key),
        "N": s.N,
        "term_count": len(s.terms),
        "terms": [{"part": list(t.part), "exponent": format_vector(t.exponent),
                   "coeff": rat(t.coeff)} for t in terms],
        "gevrey": gevrey(s.gevrey),
    }


def operator_result(r) -> dict:
    if r.op.kind == "euler":
        op = {"kind": "euler", "row": r.op.index + 1}
    else:
        op = {"kind": "toric", "u": list(r.op.u)}
    return {
        "operator": op,
        "reliable_degree": r.reliable_degree,
        "annihilates": r.annihilates,
        "reliable_nonzero": len(r.reliable_terms),
        "artifact_terms": len(r.artifact_terms),
    }


def slope_report(r) -> dict:
    return {
        "hyperplane": r.hyperplane + 1,
        "slopes": [rat(s) for s in r.slopes],
        "witnesses": [{"s0": rat(w.s0), "simplices": [idx(s) for s in w.simplices]}
                      for w in r.witnesses],
        "umbrella_breakpoints": [rat(b) for b in r.umbrella_breakpoints],
        "cross_check": "pass" if r.cross_check else "fail",
    }


def subspace_report(r) -> dict:
    return {
        "tau": idx(r.tau),
        "realized": [{"s0": rat(w.s0), "simplices": [idx(s) for s in w.simplices]}
                     for w in r.realized],
        "breakpoints": [rat(b) for b in r.breakpoints],
        "candidates": [rat(b) for b in r.candidates],
        "gap": [rat(b) for b in r.gap],
        "gap_flagged": r.has_gap,
    }


def dimension_report(r) -> dict:
    return {
        "tau": idx(r.tau),
        "s": rat(r.s),
        "triangulation": triangulation(r.triangulation_used),
        "selected": [idx(s) for s in r.selected],
        "lower_bound": r.lower_bound,
        "equality_regime": r.equality_regime,
        "reported_dimension": r.reported_dimension,
        "witness_pairs": [{"sigma": idx(s), "k": list(k)} for s, k in r.witness_pairs],
    }


def irregularity_report(r) -> dict:
    return {
        "hyperplane": r.hyperplane + 1,
        "s": rat(r.s),
        "dimension": r.dimension,
        "facet_sum_at_s": r.at_s,
        "facet_sum_at_one": r.at_one,
        "triangulation_value": r.triangulation_value,
        "consistent": r.consistent,
        "caveat": r.caveat,
    }


def rational_list(xs) -> list[str]:
    return [rat(Fraction(x)) for x in xs]
