"""Exact MNHD certification for regular graphs with four distinct Laplacian eigenvalues.

All functions are written against the ordinary arithmetic operators so they
work unchanged on :class:`fractions.Fraction` and on
:class:`drg_mnhd.quadratic.QuadraticNumber`; sign decisions are therefore
exact in both cases.  Nothing here touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .errors import BadDistance, DegenerateSpectrum, WrongDiameter
from .params import ClassicalParams, IntersectionArray, intersection_array, laplacian_eigenvalues_sorted
from .quadratic import QuadraticNumber

CASES = ("i", "ii", "iii")
_PAIRS = ((1, 2), (1, 3), (2, 3))


def _exact(x):
    if isinstance(x, float):
        raise TypeError("floating-point input in exact analysis")
    return Fraction(x) if isinstance(x, int) else x


def _other(*idx):
    return [k for k in (1, 2, 3) if k not in idx]


def coefficients(lambdas) -> Tuple:
    """``C_i = 1 / prod_{j != i} (lambda_j - lambda_i)``; no ordering assumed."""
    lam = dict(zip((1, 2, 3), (_exact(x) for x in lambdas)))
    out = []
    for i in (1, 2, 3):
        j, k = _other(i)
        den = (lam[j] - lam[i]) * (lam[k] - lam[i])
        if den == 0:
            raise DegenerateSpectrum(f"eigenvalues {[str(x) for x in lambdas]} are not distinct")
        out.append(1 / den)
    return tuple(out)


@dataclass(frozen=True)
class RegularSpectrumContext:
    degree_d: object
    vertex_count_n: object
    lambdas: Tuple
    C: Tuple

    def lam(self, i: int):
        return self.lambdas[i - 1]


def context(d, n, lambdas) -> RegularSpectrumContext:
    """Exact ``C_1, C_2, C_3`` for ``0 < lambda_1 < lambda_2 < lambda_3``."""
    lams = tuple(_exact(x) for x in (lambdas.as_tuple() if hasattr(lambdas, "as_tuple") else lambdas))
    d, n = _exact(d), _exact(n)
    if len(lams) != 3:
        raise ValueError("exactly three nontrivial eigenvalues expected")
    C = coefficients(lams)
    if not 0 < lams[0] < lams[1] < lams[2]:
        raise ValueError(f"eigenvalues must satisfy 0 < l1 < l2 < l3, got {[str(x) for x in lams]}")
    if not d > 0 or not n > 0:
        raise ValueError("degree and vertex count must be positive")
    # forced by the ordering; a failure here would be an arithmetic bug
    assert C[0] > 0 and C[1] < 0 and C[2] > 0
    return RegularSpectrumContext(d, n, lams, C)


@dataclass(frozen=True)
class LaplacianPairData:
    L_uv: object
    L2_uv: object


@dataclass(frozen=True)
class DeltaProfile:
    """The six pair quantities; only ``i < j`` is stored, ``delta(j, i) = -delta(i, j)``."""

    delta1: object
    delta2: object
    delta3: object
    delta12: object
    delta13: object
    delta23: object

    def delta(self, i: int, j: Optional[int] = None):
        if j is None:
            return getattr(self, f"delta{i}")
        if i == j:
            return 0
        if i < j:
            return getattr(self, f"delta{i}{j}")
        return -getattr(self, f"delta{j}{i}")

    def as_dict(self) -> Dict[str, object]:
        return {name: getattr(self, name) for name in self.__dataclass_fields__}

    def max_abs_diff(self, other: "DeltaProfile") -> float:
        return max(abs(float(a) - float(b)) for a, b in zip(self.as_dict().values(), other.as_dict().values()))


def _profile(d, n, lams, C, L, L2) -> DeltaProfile:
    lam = dict(zip((1, 2, 3), lams))
    c = dict(zip((1, 2, 3), C))
    single = {}
    for i in (1, 2, 3):
        j, k = _other(i)
        single[i] = c[i] * (d * d + d - L2 + (L - d) * (lam[j] + lam[k]) + lam[j] * lam[k])
    pair = {}
    for i, j in _PAIRS:
        (k,) = _other(i, j)
        lk = lam[k]
        m = Fraction(1) - n
        bracket = (d + m * lk / n) * L2 - (d * d + d + m * lk * lk / n) * L - ((d * d + d) * lk - d * lk * lk) / n
        pair[(i, j)] = c[i] * c[j] * (lam[j] - lam[i]) * bracket
    return DeltaProfile(single[1], single[2], single[3], pair[(1, 2)], pair[(1, 3)], pair[(2, 3)])


def delta_closed_form(ctx: RegularSpectrumContext, pair: LaplacianPairData) -> DeltaProfile:
    """Evaluate the six closed forms from ``(d, n, lambdas, L(u,v), L^2(u,v))`` alone."""
    return _profile(ctx.degree_d, ctx.vertex_count_n, ctx.lambdas, ctx.C, _exact(pair.L_uv), _exact(pair.L2_uv))


def l2_entry(array: IntersectionArray, dist: int):
    """Entry of ``L^2`` for a vertex pair at distance ``dist`` in a distance-regular graph."""
    if not 0 <= dist <= array.diameter:
        raise BadDistance(f"distance {dist} outside 0..{array.diameter}")
    d = array.degree_d
    if dist == 0:
        return d * d + d
    if dist == 1:
        return -2 * d + array.a(1)
    if dist == 2:
        return array.c(2)
    return Fraction(0)


def laplacian_pair(array: IntersectionArray, dist: int) -> LaplacianPairData:
    L = {0: array.degree_d, 1: Fraction(-1)}.get(dist, Fraction(0))
    return LaplacianPairData(L, l2_entry(array, dist))


def _check_consistent(ctx, array):
    if array.diameter != 3:
        raise WrongDiameter(f"diameter-3 array required, got {array}")
    if ctx.degree_d != array.degree_d:
        raise ValueError("context degree does not match the intersection array")


def delta_drg(ctx: RegularSpectrumContext, array: IntersectionArray, dist: int) -> DeltaProfile:
    """Per-distance closed forms specialised to a diameter-3 distance-regular graph.

    ``Delta_i`` uses the factored ``(lambda_j - d)(lambda_k - d)`` shapes and
    ``Delta_ij`` the polynomial in ``lambda_k`` obtained after substituting the
    ``L^2`` entries; neither route goes through :func:`delta_closed_form`.
    """
    _check_consistent(ctx, array)
    if dist not in (1, 2, 3):
        raise BadDistance(f"distance must be 1, 2 or 3, got {dist}")
    d, n = ctx.degree_d, ctx.vertex_count_n
    a1, c2 = array.a(1), array.c(2)
    lam = dict(zip((1, 2, 3), ctx.lambdas))
    c = dict(zip((1, 2, 3), ctx.C))
    single = {}
    for i in (1, 2, 3):
        j, k = _other(i)
        if dist == 1:
            single[i] = c[i] * ((lam[j] - d - 1) * (lam[k] - d - 1) + d - a1 - 1)
        elif dist == 2:
            single[i] = c[i] * ((lam[j] - d) * (lam[k] - d) + d - c2)
        else:
            single[i] = c[i] * ((lam[j] - d) * (lam[k] - d) + d)
    pair = {}
    for i, j in _PAIRS:
        (k,) = _other(i, j)
        lk = lam[k]
        if dist == 3:
            scaled = d * lk * (lk - d - 1)
        elif dist == 2:
            scaled = d * lk * (lk - d - 1) - ((n - 1) * lk - n * d) * c2
        else:
            scaled = -(n - 1 - d) * lk * lk + ((n - 1) * (2 * d - a1) - d * (d + 1)) * lk - n * d * (d - a1 - 1)
        pair[(i, j)] = c[i] * c[j] * (lam[j] - lam[i]) * scaled / n
    return DeltaProfile(single[1], single[2], single[3], pair[(1, 2)], pair[(1, 3)], pair[(2, 3)])


def delta12_distance1(ctx: RegularSpectrumContext, array: IntersectionArray):
    """``Delta_12`` for adjacent vertices via the form linear in ``b_1``."""
    _check_consistent(ctx, array)
    d, n = ctx.degree_d, ctx.vertex_count_n
    l1, l2, l3 = ctx.lambdas
    C1, C2, _ = ctx.C
    b1 = array.b(1)
    scaled = -(n - 1 - d) * l3 * (l3 - d - 1) + ((n - 1) * l3 - n * d) * b1
    return C1 * C2 * (l2 - l1) * scaled / n


def identity_residual(lambdas, d, n, L_uv, L2_uv, roles=(1, 2, 3)):
    """LHS minus RHS of the weighted-sum identity; exactly zero for distinct lambdas.

    ``roles = (i, j, k)`` assigns which of the three numbers play the parts of
    ``lambda_i, lambda_j, lambda_k``.  The numbers need not be sorted nor be
    eigenvalues of anything.
    """
    lams = tuple(_exact(x) for x in lambdas)
    d, n, L_uv, L2_uv = (_exact(x) for x in (d, n, L_uv, L2_uv))
    if sorted(roles) != [1, 2, 3]:
        raise ValueError("roles must be a permutation of (1, 2, 3)")
    C = coefficients(lams)
    prof = _profile(d, n, lams, C, L_uv, L2_uv)
    i, j, k = roles
    li, lj, lk = lams[i - 1], lams[j - 1], lams[k - 1]
    lhs = (
        li * lj / n * prof.delta(i)
        + lj * li / n * prof.delta(j)
        + lk * (li + lj - lk) / n * prof.delta(k)
        - (lk - li) * (lk - lj) * (prof.delta(i, k) + prof.delta(j, k))
    )
    return lhs - (L2_uv - L_uv * (li + lj))


def case_witnesses(ctx: RegularSpectrumContext, pair: LaplacianPairData, profile: DeltaProfile) -> Dict[str, object]:
    l1, l2, l3 = ctx.lambdas
    L, L2 = pair.L_uv, pair.L2_uv
    out = dict(profile.as_dict())
    out["L2-L(l2+l3)"] = L2 - L * (l2 + l3)
    out["L2-L(l1+l2)"] = L2 - L * (l1 + l2)
    out["L2-L(l1+l3)"] = L2 - L * (l1 + l3)
    out["l1+l2-l3"] = l1 + l2 - l3
    return out


def satisfied_cases(ctx, pair, profile) -> Tuple[str, ...]:
    """Every sufficient-condition case that holds, in order (i), (ii), (iii)."""
    w = case_witnesses(ctx, pair, profile)
    if not (profile.delta1 >= 0 and profile.delta2 >= 0 and profile.delta3 >= 0):
        return ()
    gap_ok = w["l1+l2-l3"] >= 0
    holds = {
        "i": w["L2-L(l2+l3)"] >= 0 and profile.delta12 >= 0,
        "ii": w["L2-L(l1+l2)"] >= 0 and profile.delta13 <= 0 and gap_ok,
        "iii": w["L2-L(l1+l3)"] >= 0 and profile.delta23 >= 0 and gap_ok,
    }
    return tuple(c for c in CASES if holds[c])


def theorem2_case_check(ctx, pair, profile) -> Optional[str]:
    """First satisfied case among (i), (ii), (iii), or ``None``."""
    sat = satisfied_cases(ctx, pair, profile)
    return sat[0] if sat else None


@dataclass
class DistanceVerdict:
    distance: int
    case: Optional[str]
    satisfied: Tuple[str, ...]
    proof_case: Optional[str]
    pair: LaplacianPairData
    profile: DeltaProfile
    witnesses: Dict[str, object]


@dataclass
class MnhdVerdict:
    per_distance: Dict[int, DistanceVerdict]
    flags: List[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "certified" if self.certified else "not_certified"

    @property
    def certified(self) -> bool:
        return all(v.case is not None for v in self.per_distance.values())

    def cases(self) -> Dict[int, Optional[str]]:
        return {k: v.case for k, v in self.per_distance.items()}


def certify_array(ctx: RegularSpectrumContext, array: IntersectionArray, proof_cases=None) -> MnhdVerdict:
    """Run the sufficient-condition check at distances 1, 2, 3.

    ``proof_cases`` optionally names, per distance, the case the analytic
    argument relies on; a mismatch is flagged but never changes the status.
    """
    _check_consistent(ctx, array)
    proof_cases = proof_cases or {}
    per = {}
    flags = []
    for dist in (1, 2, 3):
        pair = laplacian_pair(array, dist)
        prof = delta_closed_form(ctx, pair)
        sat = satisfied_cases(ctx, pair, prof)
        expected = proof_cases.get(dist)
        if expected is not None and expected not in sat:
            flags.append(f"distance {dist}: proof route ({expected}) not satisfied")
        per[dist] = DistanceVerdict(
            dist, sat[0] if sat else None, sat, expected, pair, prof, case_witnesses(ctx, pair, prof)
        )
    return MnhdVerdict(per, flags)


def proof_route(params: ClassicalParams) -> Dict[int, str]:
    """Case the analytic argument uses at each distance (beta split at distance 2 for b >= 1)."""
    b, alpha, beta = params.b, params.alpha, params.beta
    if b >= 1:
        dist2 = "i" if beta >= 1 + (2 + b) * alpha else "ii"
    else:
        dist2 = "i"
    return {1: "i", 2: dist2, 3: "iii"}


def certify_classical(params: ClassicalParams) -> MnhdVerdict:
    if params.D != 3:
        raise WrongDiameter(f"certification needs D=3, got D={params.D}")
    array = intersection_array(params)
    lams = laplacian_eigenvalues_sorted(params)
    ctx = context(array.degree_d, array.vertex_count_n, lams)
    verdict = certify_array(ctx, array, proof_route(params))
    d2 = verdict.per_distance[2]
    if d2.proof_case == "ii" and d2.profile.delta13 == 0:
        verdict.flags.append("distance 2: delta13 == 0, strict and non-strict readings differ")
    return verdict


def _poly_mul_linear(poly, root):
    """``poly * (x - root)``; coefficients low to high."""
    out = [Fraction(0)] * (len(poly) + 1)
    for i, c in enumerate(poly):
        out[i + 1] += c
        out[i] -= root * c
    return out


def _poly_eval(poly, x):
    acc = Fraction(0)
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def _deflate(poly, root):
    """Divide by ``(x - root)``, assuming ``root`` is a root."""
    out = [Fraction(0)] * (len(poly) - 1)
    carry = Fraction(0)
    for i in range(len(poly) - 1, 0, -1):
        carry = poly[i] + carry * root
        out[i - 1] = carry
    return out


def array_laplacian_eigenvalues(array: IntersectionArray):
    """Exact nontrivial Laplacian eigenvalues of a diameter-3 array, ascending.

    The adjacency eigenvalues are the roots of the characteristic polynomial
    of the tridiagonal intersection matrix.  After removing the root ``d`` a
    cubic remains; when it has an integer root the other two live in a single
    quadratic field and are returned exactly.  Returns ``None`` otherwise.
    """
    if array.diameter != 3:
        raise WrongDiameter(f"need diameter 3, got {array.diameter}")
    a = array.a_list
    f_prev, f = [Fraction(1)], [-a[0], Fraction(1)]
    for k in range(2, 5):
        nxt = _poly_mul_linear(f, a[k - 1])
        scale = array.b(k - 2) * array.c(k - 1)
        for i, c in enumerate(f_prev):
            nxt[i] -= scale * c
        f_prev, f = f, nxt
    d = array.degree_d
    cubic = _deflate(f, d)
    if d.denominator != 1:
        return None
    int_roots = [Fraction(x) for x in range(-int(d), int(d) + 1) if _poly_eval(cubic, Fraction(x)) == 0]
    if not int_roots:
        return None
    r = int_roots[0]
    c0, c1, _ = _deflate(cubic, r)
    disc = c1 * c1 - 4 * c0
    if disc < 0:
        return None
    root = QuadraticNumber.sqrt(disc)
    thetas = [QuadraticNumber(r), (-c1 + root) / 2, (-c1 - root) / 2]
    return tuple(sorted(d - th for th in thetas))
