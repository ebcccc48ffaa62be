"""Command-line front end.

Every command reads a configuration A (and β when needed), prints a plain
table by default or JSON with ``--json``.  Exit codes: 0 success, 1 domain
error, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import serialize as ser
from .errors import GKZError, InputError
from .exact import IntegerMatrix, format_rational, kernel_basis, lattice_index_full, parse_rational
from .geometry import (
    WeightVector,
    normalized_volume,
    pyramid_volume,
    regular_triangulation,
    simplex_volume,
    umbrella,
    umbrella_breakpoints,
    volume_respecting_triangulation,
)
from .irregularity import gevrey_dim_lower_bound, irregularity_report
from .paper_examples import run_paper_suite
from .series import (
    annihilation_report,
    gamma_series_truncated,
    genericity,
    minimal_negative_support_rep,
    pretty,
)
from .slopes import candidate_indices_along_subspace, slopes_along_hyperplane


@dataclass(frozen=True)
class ProblemInput:
    matrix: IntegerMatrix
    beta: tuple[Fraction, ...] | None
    N: int = 20
    bound: int = 50
    seed: int = 0


# --------------------------------------------------------------------------
# input parsing


def _parse_int(x, where: str) -> int:
    if isinstance(x, bool):
        raise InputError(f"{where}: expected an integer, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x.strip())
        except ValueError:
            pass
    raise InputError(f"{where}: expected an integer, got {x!r}")


def _parse_matrix(obj) -> IntegerMatrix:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise InputError("matrix: expected a nonempty array of arrays")
    rows = [[_parse_int(x, f"matrix[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(obj)]
    if any(len(r) != len(rows[0]) for r in rows):
        raise InputError("matrix: rows have different lengths")
    try:
        return IntegerMatrix(tuple(map(tuple, rows)))
    except GKZError as exc:
        raise type(exc)(f"matrix: {exc}") from None
    except ValueError as exc:
        raise InputError(f"matrix: {exc}") from None


def _parse_beta(obj, d: int) -> tuple[Fraction, ...]:
    if isinstance(obj, str):
        obj = [x for x in obj.split(",") if x.strip()]
    if not isinstance(obj, list):
        raise InputError("beta: expected an array of rationals")
    out = []
    for i, x in enumerate(obj):
        try:
            out.append(parse_rational(x))
        except (TypeError, ValueError) as exc:
            raise InputError(f"beta[{i}]: {exc}") from None
    if len(out) != d:
        raise InputError(f"beta: expected length d={d}, got {len(out)}")
    return tuple(out)


def _load_document(spec: str | None, stdin) -> object:
    if spec is None or spec == "-":
        text = stdin.read()
    elif os.path.exists(spec):
        with open(spec, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = spec.strip()
        if not text.startswith(("[", "{")):
            # shorthand "1,0,3;0,2,1"
            text = json.dumps([[x.strip() for x in row.split(",")] for row in text.split(";")])
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON input: {exc.msg} at line {exc.lineno} column {exc.colno}") from None


def parse_input(matrix_spec: str | None, beta_spec: str | None = None, N: int = 20,
                bound: int = 50, seed: int = 0, stdin=None) -> ProblemInput:
    """Validated input from a file path, inline JSON/shorthand, or stdin."""
    doc = _load_document(matrix_spec, stdin if stdin is not None else sys.stdin)
    if isinstance(doc, dict):
        if "matrix" not in doc:
            raise InputError("matrix: missing field")
        unknown = set(doc) - {"matrix", "beta"}
        if unknown:
            raise InputError(f"unknown field(s): {', '.join(sorted(unknown))}")
        A = _parse_matrix(doc["matrix"])
        beta_obj = doc.get("beta")
    else:
        A = _parse_matrix(doc)
        beta_obj = None
    if beta_spec is not None:
        beta_obj = json.loads(beta_spec) if beta_spec.strip().startswith("[") else beta_spec
    beta = None if beta_obj is None else _parse_beta(beta_obj, A.d)
    return ProblemInput(A, beta, N, bound, seed)


def _indices(text: str, n: int, what: str) -> tuple[int, ...]:
    """1-based comma list to sorted 0-based tuple."""
    text = text.strip()
    if text in ("", "none", "{}"):
        return ()
    out = set()
    for part in text.split(","):
        i = _parse_int(part, what)
        if not 1 <= i <= n:
            raise InputError(f"{what}: column index {i} out of range 1..{n}")
        out.add(i - 1)
    return tuple(sorted(out))


def _ints(text: str, what: str) -> tuple[int, ...]:
    return tuple(_parse_int(x, what) for x in text.split(",") if x.strip())


def _rationals(text: str, what: str) -> tuple[Fraction, ...]:
    try:
        return tuple(parse_rational(x) for x in text.split(",") if x.strip())
    except (TypeError, ValueError) as exc:
        raise InputError(f"{what}: {exc}") from None


def _s_value(text: str):
    if text.strip().lower() in ("inf", "infinity", "oo"):
        return math.inf
    try:
        return parse_rational(text)
    except (TypeError, ValueError) as exc:
        raise InputError(f"s: {exc}") from None


def _fmt_set(idx) -> str:
    return "{" + ",".join(str(i + 1) for i in idx) + "}"


# --------------------------------------------------------------------------
# commands: each returns (json object, table lines)


def cmd_kernel(inp: ProblemInput, args):
    basis = kernel_basis(inp.matrix)
    index = lattice_index_full(inp.matrix)
    obj = {"command": "kernel", "kernel_basis": [list(u) for u in basis], "lattice_index": index}
    lines = ["kernel basis:"] + [f"  ({', '.join(map(str, u))})" for u in basis]
    lines.append(f"lattice index [Z^d:ZA]: {index}")
    return obj, lines


def cmd_volume(inp: ProblemInput, args):
    A = inp.matrix
    tau = _indices(args.tau, A.n, "tau") if args.tau else tuple(range(A.n))
    T = volume_respecting_triangulation(A, tau, seed=inp.seed)
    vols = [simplex_volume(A, s) for s in T.maximal_simplices]
    vol = normalized_volume(A, tau)
    obj = {"command": "volume", "tau": ser.idx(tau), "volume": ser.rat(vol),
           "pyramid_volume": ser.rat(pyramid_volume(A, tau)),
           "triangulation": ser.triangulation(T, vols)}
    lines = [f"tau: {_fmt_set(tau)}", f"normalized volume: {ser.rat(vol)}"]
    lines += [f"  simplex {_fmt_set(s)}: {ser.rat(v)}" for s, v in zip(T.maximal_simplices, vols)]
    return obj, lines


def _weight_from_args(A, args) -> WeightVector:
    if args.weights:
        vals = _rationals(args.weights, "weights")
        if len(vals) != A.n:
            raise InputError(f"weights: expected {A.n} entries, got {len(vals)}")
        try:
            return WeightVector(vals)
        except ValueError as exc:
            raise InputError(f"weights: {exc}") from None
    if args.s is not None:
        tau = _indices(args.tau or "", A.n, "tau")
        s = _s_value(args.s)
        if s == math.inf or s <= 0:
            raise InputError("s: must be a positive rational")
        return WeightVector.pattern(A.n, tau, s)
    return WeightVector.ones(A.n)


def cmd_umbrella(inp: ProblemInput, args):
    u = umbrella(inp.matrix, _weight_from_args(inp.matrix, args))
    obj = {"command": "umbrella", **ser.umbrella(u)}
    lines = [f"weights: {', '.join(format_rational(x) for x in u.weight.values)}"]
    for dim in sorted(u.faces, reverse=True):
        lines.append(f"dim {dim}: " + " ".join(_fmt_set(f.indices) for f in u.faces[dim]))
    return obj, lines


def cmd_breakpoints(inp: ProblemInput, args):
    A = inp.matrix
    tau = _indices(args.tau, A.n, "tau")
    bps = umbrella_breakpoints(A, tau, threads=args.threads)
    obj = {"command": "breakpoints", "tau": ser.idx(tau), "breakpoints": [ser.rat(b) for b in bps]}
    return obj, [f"tau: {_fmt_set(tau)}", "breakpoints: " + (", ".join(ser.rat(b) for b in bps) or "none")]


def cmd_triangulate(inp: ProblemInput, args):
    A = inp.matrix
    if args.omega:
        omega = _rationals(args.omega, "omega")
        if len(omega) != A.n:
            raise InputError(f"omega: expected {A.n} entries, got {len(omega)}")
        T = regular_triangulation(A, omega)
    else:
        tau = _indices(args.tau, A.n, "tau") if args.tau else tuple(range(A.n))
        T = volume_respecting_triangulation(A, tau, seed=inp.seed)
    vols = [simplex_volume(A, s) for s in T.maximal_simplices]
    obj = {"command": "triangulate", **ser.triangulation(T, vols),
           "total_volume": ser.rat(sum(vols, Fraction(0)))}
    lines = [f"omega: {', '.join(format_rational(x) for x in T.weight)}",
             f"certified generic: {'yes' if T.certified_generic else 'no'}"]
    lines += [f"  {_fmt_set(s)}  vol {ser.rat(v)}" for s, v in zip(T.maximal_simplices, vols)]
    lines.append(f"total volume: {ser.rat(sum(vols, Fraction(0)))}")
    return obj, lines


def cmd_series(inp: ProblemInput, args):
    A = inp.matrix
    if inp.beta is None:
        raise InputError("beta: required for series (use --beta or a 'beta' field)")
    sigma = _indices(args.sigma, A.n, "sigma")
    k = _ints(args.k, "k") if args.k else (0,) * (A.n - A.d)
    if len(k) != A.n - A.d or any(x < 0 for x in k):
        raise InputError(f"k: expected {A.n - A.d} nonnegative integers")
    natural = _indices(args.natural, A.n, "natural") if args.natural else ()
    rep = None
    if not args.no_shift:
        rep = minimal_negative_support_rep(A, sigma, inp.beta, k, inp.bound, natural=natural)
        k = rep.k
    N = max(inp.N, sum(k))
    s = gamma_series_truncated(A, sigma, inp.beta, k, N)
    rpt = annihilation_report(A, s)
    obj = {"command": "series", **ser.series(s, args.limit),
           "genericity": genericity(A, inp.beta),
           "minimal_support": None if rep is None else
           {"k": list(rep.k), "nsupp": ser.idx(rep.nsupp), "certified": rep.certified},
           "annihilation": {"euler_exact": rpt["euler_exact"], "toric_reliable": rpt["toric_reliable"],
                            "operators": [ser.operator_result(r) for r in rpt["euler"] + rpt["toric"]]}}
    order = s.gevrey.order
    lines = [f"sigma: {_fmt_set(sigma)}  k: {list(k)}  N: {N}  terms: {len(s.terms)}",
             f"Gevrey order: {'n/a' if order is None else ser.rat(order)}",
             f"Euler annihilation: {'exact' if rpt['euler_exact'] else 'FAILED'}; "
             f"toric on reliable region: {'yes' if rpt['toric_reliable'] else 'NO'}"]
    if rep is not None:
        lines.append(f"minimal negative support: {_fmt_set(rep.nsupp)} "
                     f"({'certified' if rep.certified else 'uncertified'})")
    lines.append(pretty(s, args.limit))
    return obj, lines


def _slope_lines(r):
    return [f"hyperplane: x{r.hyperplane + 1} = 0",
            "slopes: " + (", ".join(ser.rat(s) for s in r.slopes) or "none"),
            *[f"  {ser.rat(w.s0)} witnessed by " + " ".join(_fmt_set(s) for s in w.simplices)
              for w in r.witnesses],
            "umbrella breakpoints: " + (", ".join(ser.rat(b) for b in r.umbrella_breakpoints) or "none"),
            f"cross-check: {'pass' if r.cross_check else 'fail'}"]


def _subspace_lines(r):
    return [f"tau: {_fmt_set(r.tau)}",
            "omega-realized indices: " + (", ".join(ser.rat(w.s0) for w in r.realized) or "none"),
            "algebraic-slope candidates: " + (", ".join(ser.rat(b) for b in r.candidates) or "none"),
            "gap (candidates not realized): " + (", ".join(ser.rat(b) for b in r.gap) or "none")]


def cmd_slopes(inp: ProblemInput, args):
    A = inp.matrix
    if (args.hyperplane is None) == (args.subspace is None):
        raise InputError("slopes: give exactly one of --hyperplane or --subspace")
    if args.hyperplane is not None:
        i = _indices(str(args.hyperplane), A.n, "hyperplane")[0]
        r = slopes_along_hyperplane(A, i, threads=args.threads)
        return {"command": "slopes", **ser.slope_report(r)}, _slope_lines(r)
    tau = _indices(args.subspace, A.n, "subspace")
    r = candidate_indices_along_subspace(A, tau, threads=args.threads)
    return {"command": "subspace", **ser.subspace_report(r)}, _subspace_lines(r)


def cmd_subspace(inp: ProblemInput, args):
    tau = _indices(args.tau, inp.matrix.n, "tau")
    r = candidate_indices_along_subspace(inp.matrix, tau, threads=args.threads)
    return {"command": "subspace", **ser.subspace_report(r)}, _subspace_lines(r)


def cmd_dim(inp: ProblemInput, args):
    A = inp.matrix
    tau = _indices(args.tau, A.n, "tau")
    s = _s_value(args.s)
    r = gevrey_dim_lower_bound(A, tau, s, beta=inp.beta, seed=inp.seed)
    obj = {"command": "dim", **ser.dimension_report(r)}
    lines = [f"tau: {_fmt_set(tau)}  s: {ser.rat(s)}",
             "T(tau, s): " + (" ".join(_fmt_set(x) for x in r.selected) or "empty"),
             f"lower bound: {r.lower_bound}",
             f"regime: {r.equality_regime}"]
    return obj, lines


def cmd_irr(inp: ProblemInput, args):
    A = inp.matrix
    i = _indices(str(args.hyperplane), A.n, "hyperplane")[0]
    s = _s_value(args.s)
    if s == math.inf:
        raise InputError("s: must be a finite rational >= 1")
    r = irregularity_report(A, i, s, seed=inp.seed)
    obj = {"command": "irr", **ser.irregularity_report(r)}
    lines = [f"hyperplane: x{i + 1} = 0  s: {ser.rat(s)}",
             f"irregularity dimension: {r.dimension}",
             f"triangulation check: {r.triangulation_value} ({'consistent' if r.consistent else 'MISMATCH'})",
             f"note: {r.caveat}"]
    return obj, lines


def cmd_paper_suite(args):
    rows = run_paper_suite()
    obj = {"command": "paper-suite", "all_passed": all(ok for _, ok, _ in rows),
           "checks": [{"name": n, "passed": ok, "detail": d} for n, ok, d in rows]}
    width = max(len(n) for n, _, _ in rows)
    lines = [f"{'PASS' if ok else 'FAIL'}  {n.ljust(width)}  {d}" for n, ok, d in rows]
    lines.append(f"{sum(ok for _, ok, _ in rows)}/{len(rows)} passed")
    return obj, lines


# --------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--matrix", help="JSON file, inline JSON, 'r1;r2' shorthand, or '-' for stdin")
    common.add_argument("--beta", help="comma list or JSON array of rationals")
    common.add_argument("--N", type=int, default=20, help="truncation degree (default 20)")
    common.add_argument("--bound", type=int, default=50, help="search bound (default 50)")
    common.add_argument("--seed", type=int, default=0, help="seed for perturbations (default 0)")
    common.add_argument("--threads", type=int, default=1, help="threads for subset enumeration")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    fmt.add_argument("--table", dest="fmt", action="store_const", const="table")
    common.set_defaults(fmt="table")

    p = argparse.ArgumentParser(prog="gkz-gevrey", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", metavar="command")
    sub.required = True

    sub.add_parser("kernel", parents=[common], help="kernel lattice basis and [Z^d:ZA]")
    q = sub.add_parser("volume", parents=[common], help="normalized volume of conv(0, A_tau)")
    q.add_argument("--tau", help="1-based column list (default: all)")
    q = sub.add_parser("umbrella", parents=[common], help="faces of the (A,s)-umbrella")
    q.add_argument("--weights", help="explicit weights s_1..s_n")
    q.add_argument("--tau", help="pattern form: weight 1 on tau")
    q.add_argument("--s", help="pattern form: weight s off tau")
    q = sub.add_parser("breakpoints", parents=[common], help="jump points of the pattern umbrella")
    q.add_argument("--tau", required=True)
    q = sub.add_parser("triangulate", parents=[common], help="regular or volume-respecting triangulation")
    q.add_argument("--omega", help="weight vector for T_omega")
    q.add_argument("--tau", help="columns for a volume-respecting triangulation (default: all)")
    q = sub.add_parser("series", parents=[common], help="truncated Gamma-series solution")
    q.add_argument("--sigma", required=True)
    q.add_argument("--k", help="shift in N^{n-d} (default 0)")
    q.add_argument("--natural", help="columns whose exponents must lie in N")
    q.add_argument("--no-shift", action="store_true", help="use k as given, skip the minimal-support search")
    q.add_argument("--limit", type=int, default=None, help="print only the first T terms")
    q = sub.add_parser("slopes", parents=[common], help="slopes along a hyperplane or subspace")
    q.add_argument("--hyperplane", type=int)
    q.add_argument("--subspace")
    q = sub.add_parser("subspace", parents=[common], help="candidate indices along Y_tau")
    q.add_argument("--tau", required=True)
    q = sub.add_parser("dim", parents=[common], help="Gevrey solution dimension bound")
    q.add_argument("--tau", required=True)
    q.add_argument("--s", default="inf")
    q = sub.add_parser("irr", parents=[common], help="irregularity dimension along a hyperplane")
    q.add_argument("--hyperplane", type=int, required=True)
    q.add_argument("--s", required=True)
    sub.add_parser("paper-suite", parents=[common], help="reproduce the bundled worked examples")
    return p


COMMANDS = {
    "kernel": cmd_kernel,
    "volume": cmd_volume,
    "umbrella": cmd_umbrella,
    "breakpoints": cmd_breakpoints,
    "triangulate": cmd_triangulate,
    "series": cmd_series,
    "slopes": cmd_slopes,
    "subspace": cmd_subspace,
    "dim": cmd_dim,
    "irr": cmd_irr,
}


def dispatch(args, stdin=None) -> tuple[int, dict, list[str]]:
    if args.command == "paper-suite":
        obj, lines = cmd_paper_suite(args)
        return (0 if obj["all_passed"] else 1), obj, lines
    inp = parse_input(args.matrix, args.beta, args.N, args.bound, args.seed, stdin=stdin)
    obj, lines = COMMANDS[args.command](inp, args)
    return 0, obj, lines


def main(argv=None, stdout=None, stdin=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code, obj, lines = dispatch(args, stdin=stdin)
    except GKZError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 1
    if args.fmt == "json":
        stdout.write(ser.dumps(obj))
    else:
        stdout.write("\n".join(lines) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
