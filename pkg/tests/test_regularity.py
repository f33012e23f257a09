import pytest
from hypothesis import given, settings, strategies as st

from birkhoff6 import propositions as P
from birkhoff6.birkhoff import block_columns, block_det, det, tau
from birkhoff6.boundary_poly import leading_matrix_from_poly
from birkhoff6.classification import classify_endpoint
from birkhoff6.crossval import DEFAULT_GRID
from birkhoff6.cyclotomic import ONE, complex_close, cyc_embed
from birkhoff6.model import condition, dirichlet_problem, problem, validate_problem
from birkhoff6.regularity import (
    NotApplicable, SubcaseNotInPaper, closed_form_for, decide, parities,
)
from helpers import endpoints, nonzero_cycnums, problems

DIRICHLET_B = [condition("B", p) for p in (0, 1, 2)]


def case5(beta, thetas=(5, 4)):
    a = [condition("A", thetas[0]), condition("A", thetas[1]), condition("A", 3, 0, beta=beta)]
    return validate_problem(problem(a, DIRICHLET_B))


def test_dirichlet_is_regular():
    v = decide(validate_problem(dirichlet_problem()))
    assert v.regular and v.failing == ()
    assert len(v.per_k_dets) == 12 and all(not b.zero for b in v.per_k_dets)
    assert v.float_agrees and v.factorization_holds
    assert all(not x.is_zero() for x in v.birkhoff_dets)


def test_unit_beta_in_case5_is_irregular_at_one_parity():
    for beta in (ONE, -ONE):
        v = decide(case5(beta))
        assert not v.regular
        ks = {k for u, k in v.failing}
        assert all(u == 0 for u, _ in v.failing)
        assert len(ks) == 3 and len({k % 2 for k in ks}) == 1


def test_case5_ratio_value_is_not_a_zero():
    # the printed ratio for theta=(5,4), phi3=0 leaves every block nonsingular
    for par in parities():
        cfg = P.Config((5, 4, 3), (None, None, 0), (None, None, None))
        v = decide(case5(P.forbidden_case5(cfg, par)))
        assert v.regular


def test_case5_true_zero():
    # with theta2 - theta1 = 3 the ratio is right
    cfg = P.Config((1, 4, 3), (None, None, 0), (None, None, None))
    par = P.Parity(tau(1, 0))
    v = decide(case5(P.forbidden_case5(cfg, par), thetas=(1, 4)))
    assert (0, 1) in v.failing


@given(problems())
@settings(max_examples=30, deadline=None)
def test_verdict_invariants(spec):
    vp = validate_problem(spec)
    v = decide(vp)
    assert v.regular == (not v.failing) == all(not b.zero for b in v.per_k_dets)
    assert v.regular == all(not x.is_zero() for x in v.birkhoff_dets)
    assert v.factorization_holds and v.float_agrees


@given(problems(), st.data())
@settings(max_examples=20, deadline=None)
def test_verdict_invariant_under_row_permutation(spec, data):
    ref = decide(validate_problem(spec), birkhoff=False)
    a = data.draw(st.permutations(spec.bcs_a))
    b = data.draw(st.permutations(spec.bcs_b))
    v = decide(validate_problem(problem(a, b)), birkhoff=False)
    assert v.regular == ref.regular
    assert set(v.failing) == set(ref.failing)


def _poly_block_det(spec, k, u):
    w = leading_matrix_from_poly(spec, u)
    cols = [c - 1 for c in block_columns(k, u)]
    return det([[w[3 * u + j][c] for c in cols] for j in range(3)])


@given(endpoints(), nonzero_cycnums, st.integers(0, 2))
@settings(max_examples=30, deadline=None)
def test_scaling_a_row_scales_the_block(bcs, c, j):
    # scaling breaks the alpha_p = 1 normalization, so use the literal route
    scaled = list(bcs)
    scaled[j] = bcs[j].scaled(c)
    ref = problem(bcs, DIRICHLET_B)
    spec = problem(scaled, DIRICHLET_B)
    for k in range(1, 7):
        d0 = _poly_block_det(ref, k, 0)
        d1 = _poly_block_det(spec, k, 0)
        assert d0 == block_det(bcs, k, 0)
        assert d1 == c * d0
        assert d1.is_zero() == d0.is_zero()


def test_closed_form_case1():
    rep = closed_form_for([condition("A", p) for p in (0, 1, 2)])
    assert rep.case_id == 1 and rep.condition_satisfied and rep.hypotheses_met


def test_closed_form_case5_unit_beta():
    rep = closed_form_for(case5(ONE).endpoint(0))
    assert rep.hypotheses_met is False and rep.condition_satisfied is False
    assert {f.parity for f in rep.forbidden_values} == {"+i", "-i"}


def test_closed_form_subcase_82_exempt_beta():
    for b3 in DEFAULT_GRID:
        if b3 in P.PM_ONE:
            continue
        bcs = [condition("A", 5), condition("A", 3, 0, beta=3), condition("A", 4, 1, beta=b3)]
        rep = closed_form_for(bcs)
        assert rep.subcase_id == "8.2" and rep.condition_satisfied is True


def test_closed_form_case10_lists_both_parities():
    bcs = [condition("A", 3, 0, beta=2), condition("A", 4, 1, beta=3), condition("A", 5, 2, beta=5)]
    rep = closed_form_for(bcs)
    assert rep.case_id == 10
    assert sorted(f.parity for f in rep.forbidden_values) == ["+i", "-i"]


def test_not_applicable_paths():
    with pytest.raises(NotApplicable):
        closed_form_for([condition("A", None, 3), condition("A", 0), condition("A", 1)])
    with pytest.raises(SubcaseNotInPaper):
        closed_form_for([condition("A", None, 2), condition("A", 3, 0), condition("A", 4, 1)])


def test_decide_records_not_applicable():
    a = [condition("A", None, 5), condition("A", 0), condition("A", 1)]
    v = decide(validate_problem(problem(a, DIRICHLET_B)))
    assert v.condition_reports[0].condition.not_applicable_reason


@given(endpoints(name="A", max_q=2))
@settings(max_examples=60, deadline=None)
def test_cases_1_to_4_never_singular(bcs):
    cls = classify_endpoint(bcs)
    if cls.case_id > 4:
        return
    assert all(not block_det(bcs, k, u).is_zero() for k in range(1, 7) for u in (0, 1))


def test_float_route_near_zero():
    v = decide(case5(-ONE))
    for b in v.per_k_dets:
        assert complex_close(cyc_embed(b.exact), b.approx)


def test_closed_form_reports_match_oracle_for_vandermonde_cases():
    for rows in [(0, 1, 2), (3, 4, 5), (0, 2, 5)]:
        bcs = [condition("A", p) for p in rows]
        report = decide(validate_problem(problem(bcs, DIRICHLET_B))).condition_reports[0]
        assert report.agrees is True
