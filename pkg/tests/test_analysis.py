from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from drg_mnhd.analysis import (
    DeltaProfile,
    LaplacianPairData,
    array_laplacian_eigenvalues,
    certify_array,
    certify_classical,
    coefficients,
    context,
    delta12_distance1,
    delta_closed_form,
    delta_drg,
    identity_residual,
    l2_entry,
    laplacian_pair,
    proof_route,
    theorem2_case_check,
    satisfied_cases,
)
from drg_mnhd.errors import BadDistance, DegenerateSpectrum, WrongDiameter
from drg_mnhd.params import ClassicalParams, IntersectionArray, intersection_array, laplacian_eigenvalues_sorted

Q3 = ClassicalParams(3, 1, 0, 1)
J63 = ClassicalParams(3, 1, 1, 3)
HER32 = ClassicalParams(3, -2, -3, 7)

# Delta profiles read off numpy.linalg.eigh projections of the literal graphs
# (vertex 0 and the first vertex at each distance), rationalised.
ORACLE_PROFILES = {
    "hypercube3": {
        1: ("1/4", "1/2", "1/4", "3/32", "1/16", "1/32"),
        2: ("1/2", "1/2", "0", "0", "-1/16", "-1/16"),
        3: ("3/4", "0", "1/4", "-9/32", "0", "3/32"),
    },
    "johnson63": {
        1: ("1/6", "1/2", "1/3", "1/20", "1/24", "1/40"),
        2: ("1/3", "1/2", "1/6", "-1/40", "-1/24", "-1/20"),
        3: ("1/2", "0", "1/2", "-9/40", "0", "9/40"),
    },
}
PARAMS = {"hypercube3": Q3, "johnson63": J63}


def _ctx(params):
    arr = intersection_array(params)
    return context(arr.degree_d, arr.vertex_count_n, laplacian_eigenvalues_sorted(params)), arr


def test_coefficients():
    assert coefficients((2, 4, 6)) == (F(1, 8), F(-1, 4), F(1, 8))
    assert coefficients((6, 10, 12)) == (F(1, 24), F(-1, 8), F(1, 12))
    with pytest.raises(DegenerateSpectrum):
        coefficients((1, 1, 2))


def test_context_checks_order_and_types():
    with pytest.raises(ValueError):
        context(3, 8, (4, 2, 6))
    with pytest.raises(TypeError):
        context(3, 8, (2.0, 4, 6))


@pytest.mark.parametrize("name", sorted(ORACLE_PROFILES))
@pytest.mark.parametrize("dist", [1, 2, 3])
def test_closed_forms_match_projection_oracle(name, dist):
    ctx, arr = _ctx(PARAMS[name])
    expected = DeltaProfile(*(F(x) for x in ORACLE_PROFILES[name][dist]))
    assert delta_closed_form(ctx, laplacian_pair(arr, dist)) == expected
    assert delta_drg(ctx, arr, dist) == expected


def test_l2_entries():
    arr = intersection_array(J63)
    assert [l2_entry(arr, k) for k in range(4)] == [90, -14, 4, 0]
    arr = intersection_array(Q3)
    assert [l2_entry(arr, k) for k in range(4)] == [12, -6, 2, 0]
    with pytest.raises(BadDistance):
        l2_entry(arr, 4)
    with pytest.raises(BadDistance):
        l2_entry(arr, -1)


def test_delta12_distance1_form():
    for params in (Q3, J63, HER32):
        ctx, arr = _ctx(params)
        assert delta12_distance1(ctx, arr) == delta_drg(ctx, arr, 1).delta12


def test_delta_antisymmetry():
    ctx, arr = _ctx(J63)
    prof = delta_drg(ctx, arr, 2)
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            assert prof.delta(i, j) == -prof.delta(j, i)


def test_delta_drg_rejects_bad_distance_and_diameter():
    ctx, arr = _ctx(Q3)
    with pytest.raises(BadDistance):
        delta_drg(ctx, arr, 0)
    with pytest.raises(WrongDiameter):
        delta_drg(ctx, IntersectionArray([3, 2], [1, 2]), 1)


nonzero_rationals = st.fractions(min_value=-30, max_value=30, max_denominator=25)


@given(
    st.lists(nonzero_rationals, min_size=3, max_size=3, unique=True),
    st.fractions(min_value=1, max_value=40, max_denominator=5),
    st.fractions(min_value=1, max_value=200, max_denominator=5),
    nonzero_rationals,
    nonzero_rationals,
    st.permutations([1, 2, 3]),
)
def test_identity_residual_is_exactly_zero(lams, d, n, L, L2, roles):
    res = identity_residual(lams, d, n, L, L2, tuple(roles))
    assert isinstance(res, F)
    assert res == 0


def test_identity_residual_rejects_bad_roles():
    with pytest.raises(ValueError):
        identity_residual((1, 2, 3), 3, 8, -1, -6, (1, 1, 2))


@pytest.mark.parametrize(
    "params,cases,route",
    [
        (Q3, {1: "i", 2: "i", 3: "ii"}, {1: "i", 2: "i", 3: "iii"}),
        (J63, {1: "i", 2: "ii", 3: "ii"}, {1: "i", 2: "ii", 3: "iii"}),
        (HER32, {1: "i", 2: "i", 3: "iii"}, {1: "i", 2: "i", 3: "iii"}),
    ],
)
def test_certify_classical_fixtures(params, cases, route):
    verdict = certify_classical(params)
    assert verdict.certified
    assert verdict.status == "certified"
    assert verdict.cases() == cases
    assert proof_route(params) == route
    for dv in verdict.per_distance.values():
        assert dv.proof_case in dv.satisfied
    assert verdict.flags == []


def test_route_boundary_goes_to_first_case():
    # beta == 1 + (2+b)*alpha sits on the boundary of the distance-2 split
    p = ClassicalParams(3, 1, 0, 1)
    assert p.beta == 1 + (2 + p.b) * p.alpha
    assert proof_route(p)[2] == "i"


def test_certify_classical_needs_diameter_three():
    with pytest.raises(WrongDiameter):
        certify_classical(ClassicalParams(4, 1, 0, 1))


def test_case_check_empty_when_single_deltas_negative():
    ctx, _ = _ctx(Q3)
    pair = LaplacianPairData(F(-1), F(-6))
    bad = DeltaProfile(F(-1), F(1), F(1), F(1), F(-1), F(1))
    assert satisfied_cases(ctx, pair, bad) == ()
    assert theorem2_case_check(ctx, pair, bad) is None


def test_not_certified_array_keeps_witnesses():
    # arithmetic-only array where every sufficient case fails at distance 3
    arr = IntersectionArray([4, 2, 1], [1, 2, 2])
    lams = array_laplacian_eigenvalues(arr)
    verdict = certify_array(context(arr.degree_d, arr.vertex_count_n, lams), arr)
    assert verdict.status == "not_certified"
    assert verdict.cases()[3] is None
    assert "L2-L(l1+l2)" in verdict.per_distance[3].witnesses


def test_array_eigenvalues_in_quadratic_field():
    lams = array_laplacian_eigenvalues(IntersectionArray([5, 2, 1], [1, 2, 5]))
    assert [str(x) for x in lams] == ["5 - sqrt(5)", "6", "5 + sqrt(5)"]
    # the 7-cycle spectrum is cubic-irrational
    assert array_laplacian_eigenvalues(IntersectionArray([2, 1, 1], [1, 1, 1])) is None
