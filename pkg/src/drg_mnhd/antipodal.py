"""Antipodal distance-regular graphs of diameter 3, arrays ``{d, m*g, 1; 1, g, d}``.

The nontrivial Laplacian eigenvalues involve ``M = sqrt(4d + (d - g - m*g - 1)**2)``,
so everything is carried out in exact quadratic-field arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple

from .analysis import MnhdVerdict, certify_array, context
from .errors import InfeasibleParams, OrderingViolation
from .params import FeasibilityReport, IntersectionArray, Violation
from .quadratic import QuadraticNumber

PROOF_ROUTE = {1: "i", 2: "ii", 3: "ii"}


@dataclass(frozen=True)
class AntipodalParams:
    d: int
    gamma_c2: int
    m: int

    def as_tuple(self):
        return (self.d, self.gamma_c2, self.m)

    @property
    def array(self) -> IntersectionArray:
        d, g, m = self.as_tuple()
        return IntersectionArray([d, m * g, 1], [1, g, d])

    @property
    def vertex_count(self) -> int:
        d, m = self.d, self.m
        return 1 + d + m + d * m

    @property
    def M_squared(self) -> int:
        d, g, m = self.as_tuple()
        return 4 * d + (d - g - m * g - 1) ** 2

    @property
    def M(self) -> QuadraticNumber:
        return QuadraticNumber.sqrt(self.M_squared)


def validate_antipodal(p: AntipodalParams) -> FeasibilityReport:
    report = FeasibilityReport()
    d, g, m = p.as_tuple()
    for name, value in (("d", d), ("gamma", g), ("m", m)):
        if not isinstance(value, int) or value < 1:
            report.violations.append(Violation(f"{name}_nonpositive", Fraction(value)))
    if report.violations:
        return report
    for i, a in enumerate(p.array.a_list):
        if a < 0:
            report.violations.append(Violation(f"a{i}_negative", a))
    # implied by a_1, a_2 >= 0; kept as an explicit guard for lambda_1 + lambda_2 >= lambda_3
    slack = 2 * d - 2 - g - m * g
    if slack < 0:
        report.violations.append(Violation("2d-2-gamma-m*gamma_negative", Fraction(slack)))
    return report


def _require_valid(p: AntipodalParams):
    report = validate_antipodal(p)
    if not report.feasible:
        raise InfeasibleParams(
            f"infeasible antipodal array {p.array}: " + ", ".join(report.ids), report.violations
        )


def antipodal_eigenvalues(p: AntipodalParams) -> Tuple[QuadraticNumber, QuadraticNumber, QuadraticNumber]:
    _require_valid(p)
    d, g, m = p.as_tuple()
    M = p.M
    half = Fraction(1, 2)
    base = 1 - d + g + m * g
    l1 = d + half * (base - M)
    l2 = QuadraticNumber(1 + d)
    l3 = d + half * (base + M)
    if not 0 < l1 < l2 < l3:
        raise OrderingViolation(f"eigenvalues {l1}, {l2}, {l3} are not strictly increasing and positive")
    return l1, l2, l3


def gap_identity_rhs(p: AntipodalParams) -> int:
    """``(1+d)**2 - M**2`` factored; nonnegative because ``a_1, a_2 >= 0``."""
    d, g, m = p.as_tuple()
    return g * (1 + m) * (2 * d - 2 - g - m * g)


def printed_gap_identity_rhs(p: AntipodalParams) -> int:
    """The factorisation as it is usually quoted, ``g(1+m)(2d-m-m*g-2)``.

    It agrees with :func:`gap_identity_rhs` only when ``g == m``; kept so the
    discrepancy stays measurable.
    """
    d, g, m = p.as_tuple()
    return g * (1 + m) * (2 * d - m - m * g - 2)


def far_identity_rhs(p: AntipodalParams) -> int:
    """``(1 + d + g + m*g)**2 - M**2``."""
    d, g, m = p.as_tuple()
    return 4 * d * (1 + m) * g


def _setup(p: AntipodalParams):
    _require_valid(p)
    lams = antipodal_eigenvalues(p)
    ctx = context(p.d, p.vertex_count, lams)
    return ctx, certify_array(ctx, p.array, PROOF_ROUTE)


def proof_checks(p: AntipodalParams, _prepared=None) -> Dict[str, bool]:
    """Exact re-verification of every identity and sign used in the certification argument."""
    ctx, verdict = _prepared or _setup(p)
    d, g, m = p.as_tuple()
    M, M2 = p.M, p.M_squared
    n = p.vertex_count
    l1, l2, l3 = ctx.lambdas
    C1, C2, C3 = ctx.C
    prof = {k: v.profile for k, v in verdict.per_distance.items()}
    wit = {k: v.witnesses for k, v in verdict.per_distance.items()}
    half = Fraction(1, 2)
    b1 = m * g

    return {
        "gap_identity": (1 + d) ** 2 - M2 == gap_identity_rhs(p),
        "gap_nonnegative": l1 + l2 - l3 == 1 + d - M and 1 + d - M >= 0,
        "far_identity": (1 + d + g + m * g) ** 2 - M2 == far_identity_rhs(p),
        "mid_identity": (1 + d - g + m * g) ** 2 - M2 == -4 * g * (1 - d * m + m * g),
        "n_formula": Fraction(n) == p.array.vertex_count_n,
        "d1_adjacent_L2": wit[1]["L2-L(l2+l3)"] == half * (1 + d + g - m * g + M) and wit[1]["L2-L(l2+l3)"] >= 0,
        "d1_delta1": prof[1].delta1 / C1 == m * g,
        "d1_delta2": prof[1].delta2 / C2 == -g,
        "d1_delta3": prof[1].delta3 / C3 == m * g,
        "d1_delta12": n * prof[1].delta12 / (C1 * C2 * (l2 - l1)) == -l3 * b1 and prof[1].delta12 > 0,
        "d2_delta1": prof[2].delta1 / C1 == half * (1 + d - g + m * g + M),
        "d2_delta2": prof[2].delta2 / C2 == -g,
        "d2_delta3": prof[2].delta3 / C3 == half * (1 + d - g + m * g - M) and prof[2].delta3 >= 0,
        "d2_delta13": n * prof[2].delta13 / (C1 * C3 * (l3 - l1)) == -(1 + d) * m * g and prof[2].delta13 < 0,
        "d3_delta1": prof[3].delta1 / C1 == half * (1 + d + g + m * g + M),
        "d3_delta2": prof[3].delta2 == 0,
        "d3_delta3": prof[3].delta3 / C3 == half * (1 + d + g + m * g - M) and prof[3].delta3 > 0,
        "d3_delta13": prof[3].delta13 == 0,
    }


def certify_antipodal(p: AntipodalParams, with_checks: bool = True) -> MnhdVerdict:
    prepared = _setup(p)
    verdict = prepared[1]
    if with_checks:
        verdict.flags.extend(
            f"proof check failed: {name}" for name, ok in proof_checks(p, prepared).items() if not ok
        )
    return verdict


def iter_valid(d_max: int = 50, gamma_max: int = 20, m_max: int = 20):
    for d in range(1, d_max + 1):
        for g in range(1, gamma_max + 1):
            for m in range(1, m_max + 1):
                p = AntipodalParams(d, g, m)
                if validate_antipodal(p).feasible:
                    yield p
