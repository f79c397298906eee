"""Command-line front end.

    drg-mnhd certify --b 1 --alpha 0 --beta 1
    drg-mnhd antipodal --d 5 --gamma 2 --m 1
    drg-mnhd analyze graph.txt [--pair U V] [--grid 1e-3,1e2,400]
    drg-mnhd sweep [--b-range -6 6] [--k-range -12 12] [--beta-max 12] [--workers N]

Exit codes: 0 certified / no violation, 2 infeasible input, 3 not certified or
scan violation, 64 usage error, 65 malformed or unusable graph file.
"""
from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction
from typing import List, Optional

import numpy as np

from . import report as rp
from . import spectra
from .analysis import array_laplacian_eigenvalues, certify_array, certify_classical, context, delta_drg
from .antipodal import AntipodalParams, antipodal_eigenvalues, certify_antipodal, validate_antipodal
from .errors import Disconnected, GraphFormatError, MnhdError, SizeLimit
from .graphs import DEFAULT_MAX_VERTICES, check_distance_regular, check_walk_regular, distances, read_edge_list
from .params import ClassicalParams, as_fraction, intersection_array, laplacian_eigenvalues_sorted, validate
from .sweep import DEFAULT_BETA_MAX, DEFAULT_B_RANGE, DEFAULT_K_RANGE, classical_grid, sweep_classical

EXIT_OK = 0
EXIT_INFEASIBLE = 2
EXIT_NOT_CERTIFIED = 3
EXIT_USAGE = 64
EXIT_DATAERR = 65

# beyond this many pairs, scans use one base vertex instead of all pairs
MAX_SCAN_PAIRS = 20000
# exact walk-regularity check uses diag(A^l) for l < n, capped for large n
WALK_CHECK_CAP = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fraction(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a fraction: {text!r} (use p/q)") from None


def _grid(text: str) -> spectra.GridSpec:
    try:
        return spectra.GridSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--emit-json", metavar="PATH", help="write the full report as JSON")
    common.add_argument("--tol", type=float, default=spectra.DEFAULT_TOL, help="scan violation tolerance on h")

    ap = _Parser(prog="drg-mnhd", description="Certify monotone normalized heat diffusion on distance-regular graphs.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("certify", parents=[common], help="classical parameters (3, b, alpha, beta)")
    c.add_argument("--b", type=int, required=True)
    c.add_argument("--alpha", type=_fraction, required=True)
    c.add_argument("--beta", type=_fraction, required=True)

    a = sub.add_parser("antipodal", parents=[common], help="antipodal array {d, m*g, 1; 1, g, d}")
    a.add_argument("--d", type=int, required=True)
    a.add_argument("--gamma", type=int, required=True)
    a.add_argument("--m", type=int, required=True)

    g = sub.add_parser("analyze", parents=[common], help="numeric analysis of an edge-list file")
    g.add_argument("path")
    g.add_argument("--pair", type=int, nargs=2, metavar=("U", "V"))
    g.add_argument("--grid", type=_grid, default=spectra.GridSpec(), help="tmin,tmax,points")

    s = sub.add_parser("sweep", parents=[common], help="verify every feasible point of a parameter grid")
    s.add_argument("--b-range", type=int, nargs=2, default=list(DEFAULT_B_RANGE), metavar=("LO", "HI"))
    s.add_argument("--k-range", type=int, nargs=2, default=list(DEFAULT_K_RANGE), metavar=("LO", "HI"),
                   help="range of (1+b)*alpha")
    s.add_argument("--beta-max", type=int, default=DEFAULT_BETA_MAX)
    s.add_argument("--beta-den", type=int, default=None, help="beta step 1/N (default |1+b|)")
    s.add_argument("--workers", type=int, default=1)
    return ap


# --------------------------------------------------------------------------
# commands; each returns (report, exit_code, summary lines)

def cmd_certify(b: int, alpha: Fraction, beta: Fraction):
    params = ClassicalParams(3, b, alpha, beta)
    rep = rp.new_report("certify", D=3, b=b, alpha=rp.exact(alpha), beta=rp.exact(beta))
    feas = validate(params)
    rep["feasible"] = feas.feasible
    rep["violations"] = rp.violations(feas)
    if not feas.feasible:
        return rep, EXIT_INFEASIBLE, [f"infeasible: {', '.join(feas.ids)}"]
    array = intersection_array(params)
    lams = laplacian_eigenvalues_sorted(params)
    verdict = certify_classical(params)
    rep["array"] = str(array)
    rep["vertex_count"] = rp.exact(array.vertex_count_n)
    rep["eigenvalues"] = [rp.exact(x) for x in lams.as_tuple()]
    rep["verdict"] = rp.verdict_dict(verdict)
    lines = [f"array {array}, n = {array.vertex_count_n}", f"{verdict.status}: cases {verdict.cases()}"]
    lines += verdict.flags
    return rep, EXIT_OK if verdict.certified else EXIT_NOT_CERTIFIED, lines


def cmd_antipodal(d: int, gamma: int, m: int):
    p = AntipodalParams(d, gamma, m)
    rep = rp.new_report("antipodal", d=d, gamma=gamma, m=m)
    feas = validate_antipodal(p)
    rep["feasible"] = feas.feasible
    rep["violations"] = rp.violations(feas)
    if not feas.feasible:
        return rep, EXIT_INFEASIBLE, [f"infeasible: {', '.join(feas.ids)}"]
    try:
        lams = antipodal_eigenvalues(p)
    except MnhdError as exc:
        rep["error"] = str(exc)
        return rep, EXIT_INFEASIBLE, [f"infeasible: {exc}"]
    verdict = certify_antipodal(p)
    rep["array"] = str(p.array)
    rep["vertex_count"] = rp.exact(p.vertex_count)
    rep["eigenvalues"] = [rp.exact(x) for x in lams]
    rep["verdict"] = rp.verdict_dict(verdict)
    lines = [
        f"array {p.array}, n = {p.vertex_count}",
        "eigenvalues " + ", ".join(str(x) for x in lams),
        f"{verdict.status}: cases {verdict.cases()}",
    ] + verdict.flags
    return rep, EXIT_OK if verdict.certified else EXIT_NOT_CERTIFIED, lines


def _scan_pairs(n: int, dm, pair):
    if pair is not None:
        return [tuple(pair)]
    if n * (n - 1) // 2 <= MAX_SCAN_PAIRS:
        return spectra.all_pairs(n)
    return [(0, v) for v in range(1, n)]


def _exact_cross_check(dm, array, decomp):
    """Exact certification plus float-vs-exact delta comparison, when possible."""
    lams = array_laplacian_eigenvalues(array)
    if lams is None:
        return {"available": False, "reason": "nontrivial eigenvalues not in a quadratic field"}
    ctx = context(array.degree_d, array.vertex_count_n, lams)
    verdict = certify_array(ctx, array)
    eig_dev = float(np.max(np.abs(decomp.eigenvalues[1:] - np.array([float(x) for x in lams]))))
    dev = {}
    for dist in (1, 2, 3):
        v = int(np.flatnonzero(dm.dist[0] == dist)[0])
        dev[str(dist)] = delta_drg(ctx, array, dist).max_abs_diff(spectra.delta_from_projections(decomp, 0, v))
    return {
        "available": True,
        "eigenvalues": [rp.exact(x) for x in lams],
        "eigenvalue_deviation": eig_dev,
        "delta_deviation": dev,
        "verdict": rp.verdict_dict(verdict),
    }


def cmd_analyze(path: str, pair=None, grid: Optional[spectra.GridSpec] = None, tol: float = spectra.DEFAULT_TOL):
    grid = grid or spectra.GridSpec()
    rep = rp.new_report("analyze", source=str(path), grid=[grid.tmin, grid.tmax, grid.points], tol=tol)
    g = read_edge_list(path)
    n = g.vertex_count
    if n > DEFAULT_MAX_VERTICES:
        raise SizeLimit(f"graph has {n} vertices, limit is {DEFAULT_MAX_VERTICES}")
    if pair is not None and not (0 <= pair[0] < n and 0 <= pair[1] < n and pair[0] != pair[1]):
        raise UsageError(f"--pair needs two distinct vertices in 0..{n - 1}")
    dm = distances(g)
    rep["vertices"] = n
    rep["edges"] = len(g.edges())
    rep["connected"] = dm.connected
    if not dm.connected:
        raise Disconnected("graph is not connected; heat-kernel ratios need a connected graph")

    array = check_distance_regular(g, dm)
    walk_len = max(2, min(n - 1, WALK_CHECK_CAP))
    walk = check_walk_regular(g, walk_len)
    rep["diameter"] = dm.diameter
    rep["distance_regular"] = str(array) if array is not None else None
    rep["walk_regular"] = walk
    rep["walk_regular_checked_to"] = walk_len
    lines = [
        f"{n} vertices, {rep['edges']} edges, diameter {dm.diameter}",
        f"distance-regular: {array}" if array is not None else "not distance-regular",
        "walk-regular" if walk else "not walk-regular",
    ]

    decomp = spectra.decompose_graph(g)
    rep["spectrum"] = {
        "eigenvalues": [float(x) for x in decomp.eigenvalues],
        "multiplicities": list(decomp.multiplicities),
        "sweeps": decomp.sweeps,
        "projection_defects": spectra.projection_defects(decomp),
        "stochasticity_defect": spectra.stochasticity_defect(decomp),
    }
    lines.append("Laplacian spectrum: " + ", ".join(
        f"{(0.0 if abs(x) < 1e-9 else x):.6g}^{k}" for x, k in zip(decomp.eigenvalues, decomp.multiplicities)))

    if array is not None and array.diameter == 3 and decomp.s == 3:
        rep["exact"] = _exact_cross_check(dm, array, decomp)
        if rep["exact"]["available"]:
            lines.append(f"exact check: {rep['exact']['verdict']['status']}, max delta deviation "
                         f"{max(rep['exact']['delta_deviation'].values()):.2e}")

    pairs = _scan_pairs(n, dm, pair)
    reports = spectra.scan_pairs(decomp, pairs, grid, tol)
    by_dist = {}
    for r in reports:
        k = str(dm[r.pair])
        s = by_dist.setdefault(k, {"pairs": 0, "min_h": float("inf"), "argmin_t": None, "argmin_pair": None,
                                   "violations": 0, "refined": 0})
        s["pairs"] += 1
        s["violations"] += len(r.violations)
        s["refined"] += int(r.refined)
        if r.min_h < s["min_h"]:
            s["min_h"], s["argmin_t"], s["argmin_pair"] = r.min_h, r.argmin_t, list(r.pair)
    total_viol = sum(len(r.violations) for r in reports)
    rep["scan"] = {
        "pairs": len(reports),
        "by_distance": dict(sorted(by_dist.items(), key=lambda kv: int(kv[0]))),
        "violations": total_viol,
        "max_abs_r_start": max(abs(r.r_start) for r in reports),
        "max_r_end_gap": max(r.r_end_gap for r in reports),
    }
    if pair is not None:
        rep["scan"]["pair_violations"] = [list(v) for v in reports[0].violations]
    lines.append(f"scanned {len(reports)} pairs on {len(grid.times())} times: "
                 + ("no violations" if not total_viol else f"{total_viol} values below -{tol:g}"))
    return rep, EXIT_OK if not total_viol else EXIT_NOT_CERTIFIED, lines


def cmd_sweep(b_range, k_range, beta_max, beta_den=None, workers=1):
    grid = classical_grid(tuple(b_range), tuple(k_range), beta_max, beta_den)
    rep = rp.new_report("sweep", b_range=list(b_range), k_range=list(k_range), beta_max=beta_max,
                        beta_den=beta_den)
    result = sweep_classical(grid, workers=max(1, workers))
    rep["sweep"] = rp.sweep_dict(result)
    c = result.counts()
    lines = [f"{c['total']} points: {c['feasible']} feasible, {c['certified']} certified, "
             f"{c['anomalies']} anomalies"]
    return rep, EXIT_OK if result.ok else EXIT_NOT_CERTIFIED, lines


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        if args.command == "certify":
            rep, code, lines = cmd_certify(args.b, args.alpha, args.beta)
        elif args.command == "antipodal":
            rep, code, lines = cmd_antipodal(args.d, args.gamma, args.m)
        elif args.command == "analyze":
            rep, code, lines = cmd_analyze(args.path, args.pair, args.grid, args.tol)
        else:
            rep, code, lines = cmd_sweep(args.b_range, args.k_range, args.beta_max, args.beta_den, args.workers)
    except UsageError as exc:
        print(f"drg-mnhd: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphFormatError, Disconnected, SizeLimit, OSError) as exc:
        print(f"drg-mnhd: {exc}", file=sys.stderr)
        return EXIT_DATAERR
    rep["exit_code"] = code
    rep["timing"] = {"seconds": time.perf_counter() - start}
    for line in lines:
        print(line)
    if args.emit_json:
        rp.write(rep, args.emit_json)
    return code


if __name__ == "__main__":
    sys.exit(main())
