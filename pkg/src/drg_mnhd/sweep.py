"""Exhaustive verification over finite parameter grids.

Each grid point is an independent work item; results are sorted by parameter
tuple, so the output does not depend on how many workers ran it.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .analysis import certify_classical, delta_drg, context
from .antipodal import (
    AntipodalParams,
    certify_antipodal,
    gap_identity_rhs,
    far_identity_rhs,
    printed_gap_identity_rhs,
    validate_antipodal,
)
from .params import ClassicalParams, intersection_array, laplacian_eigenvalues_sorted, validate

DEFAULT_B_RANGE = (-6, 6)
DEFAULT_K_RANGE = (-12, 12)
DEFAULT_BETA_MAX = 12


@dataclass(frozen=True)
class SweepPoint:
    params: Tuple
    status: str  # "infeasible", "certified" or "not_certified"
    cases: Dict[int, Optional[str]] = field(default_factory=dict)
    violations: Tuple[str, ...] = ()
    failed_checks: Tuple[str, ...] = ()
    flags: Tuple[str, ...] = ()
    witnesses: Dict[str, str] = field(default_factory=dict)

    @property
    def anomalous(self) -> bool:
        return self.status == "not_certified" or bool(self.failed_checks)


@dataclass
class SweepResult:
    family: str
    points: List[SweepPoint]

    @property
    def feasible(self) -> List[SweepPoint]:
        return [p for p in self.points if p.status != "infeasible"]

    @property
    def anomalies(self) -> List[SweepPoint]:
        return [p for p in self.points if p.anomalous]

    def counts(self) -> Dict[str, int]:
        return {
            "total": len(self.points),
            "feasible": len(self.feasible),
            "infeasible": len(self.points) - len(self.feasible),
            "certified": sum(p.status == "certified" for p in self.points),
            "not_certified": sum(p.status == "not_certified" for p in self.points),
            "anomalies": len(self.anomalies),
            "flagged": sum(bool(p.flags) for p in self.points),
        }

    @property
    def ok(self) -> bool:
        return not self.anomalies


# --------------------------------------------------------------------------
# classical parameters, D = 3

def classical_grid(
    b_range=DEFAULT_B_RANGE, k_range=DEFAULT_K_RANGE, beta_max=DEFAULT_BETA_MAX, beta_denominator=None
) -> List[Tuple[int, Fraction, Fraction]]:
    """``(b, alpha, beta)`` with ``(1+b)*alpha = k`` and ``0 < beta <= beta_max``.

    ``beta`` runs over multiples of ``1/beta_denominator``; by default the
    denominator is ``|1+b|``, the largest one that could keep ``(1+b)*beta``
    integral.  Points that turn out infeasible are still reported as such.
    """
    out = []
    for b in range(b_range[0], b_range[1] + 1):
        if b in (0, -1):
            continue
        den = beta_denominator or abs(1 + b)
        for k in range(k_range[0], k_range[1] + 1):
            alpha = Fraction(k, 1 + b)
            for j in range(1, beta_max * den + 1):
                out.append((b, alpha, Fraction(j, den)))
    return out


def check_classical_point(b: int, alpha: Fraction, beta: Fraction) -> SweepPoint:
    params = ClassicalParams(3, b, alpha, beta)
    key = (b, Fraction(alpha), Fraction(beta))
    report = validate(params)
    if not report.feasible:
        return SweepPoint(key, "infeasible", violations=tuple(report.ids))

    verdict = certify_classical(params)
    array = intersection_array(params)
    lams = laplacian_eigenvalues_sorted(params)
    ctx = context(array.degree_d, array.vertex_count_n, lams)
    l1, l2, l3 = ctx.lambdas

    failed = []
    if l1 + l2 - l3 < 0:
        failed.append("eigenvalue_gap_negative")
    if verdict.per_distance[1].witnesses["L2-L(l2+l3)"] < 0:
        failed.append("distance1_L2_bound")
    for dist, dv in verdict.per_distance.items():
        prof = dv.profile
        for i in (1, 2, 3):
            if prof.delta(i) < 0:
                failed.append(f"d{dist}_delta{i}_negative")
        if delta_drg(ctx, array, dist) != prof:
            failed.append(f"d{dist}_delta_routes_differ")
    if verdict.flags and any("not satisfied" in f for f in verdict.flags):
        failed.append("proof_route")

    witnesses = {}
    if failed or not verdict.certified:
        for dist, dv in verdict.per_distance.items():
            for name, value in {**dv.profile.as_dict(), **dv.witnesses}.items():
                witnesses[f"d{dist}:{name}"] = str(value)
    return SweepPoint(
        key,
        verdict.status,
        cases=verdict.cases(),
        failed_checks=tuple(failed),
        flags=tuple(verdict.flags),
        witnesses=witnesses,
    )


def _check_classical_chunk(items):
    return [check_classical_point(*it) for it in items]


def _check_antipodal_chunk(items):
    return [check_antipodal_point(*it) for it in items]


def _run(items: Sequence[tuple], chunk_fn, workers: int) -> list:
    if workers <= 1 or len(items) < 2:
        return chunk_fn(items)
    size = max(1, len(items) // (workers * 8))
    chunks = [items[i : i + size] for i in range(0, len(items), size)]
    out = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(chunk_fn, chunks):
            out.extend(part)
    return out


def sweep_classical(grid=None, workers: int = 1) -> SweepResult:
    items = list(grid if grid is not None else classical_grid())
    points = _run(items, _check_classical_chunk, workers)
    points.sort(key=lambda p: p.params)
    return SweepResult("classical", points)


# --------------------------------------------------------------------------
# antipodal arrays {d, m*g, 1; 1, g, d}

def antipodal_grid(d_max=50, gamma_max=20, m_max=20) -> List[Tuple[int, int, int]]:
    return [
        (d, g, m)
        for d in range(1, d_max + 1)
        for g in range(1, gamma_max + 1)
        for m in range(1, m_max + 1)
    ]


def check_antipodal_point(d: int, g: int, m: int) -> SweepPoint:
    p = AntipodalParams(d, g, m)
    report = validate_antipodal(p)
    if not report.feasible:
        return SweepPoint((d, g, m), "infeasible", violations=tuple(report.ids))
    verdict = certify_antipodal(p)
    failed = tuple(f.split(": ", 1)[1] for f in verdict.flags if f.startswith("proof check failed"))
    flags = []
    # the commonly quoted factorisation differs from the exact one unless g == m
    if (1 + d) ** 2 - p.M_squared != printed_gap_identity_rhs(p):
        flags.append("quoted gap factorisation differs")
    return SweepPoint(
        (d, g, m),
        verdict.status,
        cases=verdict.cases(),
        failed_checks=failed,
        flags=tuple(flags),
    )


def sweep_antipodal(grid=None, workers: int = 1) -> SweepResult:
    items = list(grid if grid is not None else antipodal_grid())
    points = _run(items, _check_antipodal_chunk, workers)
    points.sort(key=lambda p: p.params)
    return SweepResult("antipodal", points)


def antipodal_identity_failures(grid=None) -> Dict[str, List[Tuple[int, int, int]]]:
    """Points where each square-difference identity fails, over the valid grid."""
    out = {"gap": [], "gap_quoted": [], "far": []}
    for d, g, m in grid if grid is not None else antipodal_grid():
        p = AntipodalParams(d, g, m)
        if not validate_antipodal(p).feasible:
            continue
        lhs = (1 + d) ** 2 - p.M_squared
        if lhs != gap_identity_rhs(p):
            out["gap"].append((d, g, m))
        if lhs != printed_gap_identity_rhs(p):
            out["gap_quoted"].append((d, g, m))
        if (1 + d + g + m * g) ** 2 - p.M_squared != far_identity_rhs(p):
            out["far"].append((d, g, m))
    return out
