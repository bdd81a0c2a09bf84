import itertools

import pytest

from rankcov.bounds import (
    DEFAULT_METHODS,
    Limits,
    Method,
    best_bounds,
    construction_upper_bound,
    greedy_upper_bound,
    mrd_distance,
    mrd_new_coverage,
    mrd_refinement,
    mrd_seed,
    mrd_weight_distribution,
    parse_methods,
    refined_trajectory,
    refined_upper_bound,
    sphere_covering_bound,
)
from rankcov.errors import BudgetExceeded
from rankcov.exactcodes import gabidulin_code
from rankcov.geometry import intersection_table
from rankcov.qcombinat import SpaceParams, ball_volume

P33 = SpaceParams(2, 3, 3)
TRAJECTORY_CASES = [
    SpaceParams(2, m, n) for m in range(2, 6) for n in range(2, m + 1)
] + [SpaceParams(3, 3, 2), SpaceParams(3, 3, 3)]


def cases_with_rho(params_list):
    return [(p, rho) for p in params_list for rho in range(1, p.n)]


# -- MRD distribution -----------------------------------------------------------


def test_weight_distribution_examples():
    assert mrd_weight_distribution(P33, 3, 3) == 7
    assert (mrd_weight_distribution(P33, 2, 2), mrd_weight_distribution(P33, 2, 3)) == (49, 14)
    assert mrd_weight_distribution(P33, 2, 1) == 0
    assert mrd_weight_distribution(P33, 2, 0) == 1
    with pytest.raises(ValueError):
        mrd_weight_distribution(P33, 0, 1)
    with pytest.raises(ValueError):
        mrd_weight_distribution(P33, 1, 4)


@pytest.mark.parametrize("p", [SpaceParams(q, m, n) for q in (2, 3) for m in range(1, 6) for n in range(1, m + 1)], ids=str)
def test_weight_distribution_sums_to_code_size(p):
    for d in range(1, p.n + 1):
        counts = [mrd_weight_distribution(p, d, r) for r in range(p.n + 1)]
        assert all(c >= 0 for c in counts)
        assert sum(counts) == p.qm ** (p.n - d + 1)


@pytest.mark.parametrize("n, d", [(2, 1), (2, 2), (3, 1), (3, 2), (3, 3), (4, 3), (4, 4)])
def test_weight_distribution_matches_gabidulin(n, d):
    p = SpaceParams(2, n, n)
    code = gabidulin_code(p, n - d + 1)
    assert code.rank_histogram() == [mrd_weight_distribution(p, d, r) for r in range(n + 1)]


def test_weight_distribution_matches_gabidulin_rectangular():
    p = SpaceParams(2, 4, 2)
    code = gabidulin_code(p, 1)
    assert code.rank_histogram() == [mrd_weight_distribution(p, 2, r) for r in range(3)]


def test_mrd_distance_examples():
    assert mrd_distance(P33, 7) == 3
    assert mrd_distance(P33, 8) == 2
    assert mrd_distance(P33, 1) == 3
    assert mrd_distance(P33, 63) == 2
    assert mrd_distance(P33, 64) == 1
    with pytest.raises(ValueError):
        mrd_distance(P33, 0)


def test_refinement_far_codewords_cover_a_full_ball():
    p = SpaceParams(2, 7, 7)
    # k + 1 <= 2^7 keeps d_k = 7 >= 2*3 + 1.
    assert mrd_new_coverage(p, 3, 100) == ball_volume(p, 3)
    assert mrd_refinement(p, 3, 100).mu == ()


@pytest.mark.parametrize("p, rho", cases_with_rho([SpaceParams(2, 4, 4), SpaceParams(2, 5, 4), SpaceParams(3, 3, 3)]), ids=str)
def test_refinement_invariants(p, rho):
    table = intersection_table(p)
    v = ball_volume(p, rho)
    for k in [1, 2, 3, 7, 8, 9, p.qm, p.qm + 1, p.qm**2, p.qm**2 + 5, p.qm**3 - 1]:
        ref = mrd_refinement(p, rho, k)
        assert ref.d_k == mrd_distance(p, k)
        assert sum(ref.mu) <= k
        for l, mu in zip(range(ref.d_k, ref.a + 1), ref.mu):
            assert 0 <= mu <= mrd_weight_distribution(p, ref.d_k, l)
        expected = v - sum(mu * table.ball(rho, l) for l, mu in zip(range(ref.d_k, ref.a + 1), ref.mu))
        assert ref.newly_covered_lower_bound == max(expected, 0)


# -- greedy recursions ------------------------------------------------------------


def test_greedy_examples():
    p = SpaceParams(2, 2, 2)
    assert greedy_upper_bound(p, 1, 5, 0) == 5
    k = greedy_upper_bound(p, 1, 1, 6)
    assert 1 <= k <= 16
    K0, u0 = mrd_seed(P33, 1)
    k = greedy_upper_bound(P33, 1, K0, u0)
    assert max(11, sphere_covering_bound(P33, 1)) <= k <= 64


def test_greedy_rejects_bad_seed():
    p = SpaceParams(2, 2, 2)
    with pytest.raises(ValueError):
        greedy_upper_bound(p, 1, 0, 3)
    with pytest.raises(ValueError):
        greedy_upper_bound(p, 1, 1, 17)


def test_greedy_step_limit():
    p = SpaceParams(2, 6, 6)
    with pytest.raises(BudgetExceeded):
        greedy_upper_bound(p, 1, 1, p.space_size - ball_volume(p, 1), step_limit=10)


@pytest.mark.parametrize("p, rho", cases_with_rho(TRAJECTORY_CASES), ids=str)
def test_trajectory_decreases_and_terminates(p, rho):
    for use_mrd in (True, False):
        states = list(refined_trajectory(p, rho, use_mrd=use_mrd))
        assert states[-1].u == 0
        assert len(states) - 1 <= p.space_size
        for a, b in zip(states, states[1:]):
            assert b.u < a.u
            assert b.k == a.k + 1
            if use_mrd:
                assert b.u <= b.h
                assert b.h <= a.h


@pytest.mark.parametrize("p, rho", cases_with_rho(TRAJECTORY_CASES + [SpaceParams(2, 6, 4)]), ids=str)
def test_fast_loop_matches_trajectory(p, rho):
    for use_mrd in (True, False):
        *_, last = refined_trajectory(p, rho, use_mrd=use_mrd)
        assert refined_upper_bound(p, rho, use_mrd=use_mrd) == last.k


@pytest.mark.parametrize(
    "p, rho", cases_with_rho(TRAJECTORY_CASES) + [(SpaceParams(2, 6, 6), rho) for rho in range(2, 6)], ids=str
)
def test_refined_never_worse_than_plain_greedy(p, rho):
    refined = refined_upper_bound(p, rho)
    plain = refined_upper_bound(p, rho, use_mrd=False)
    K0, u0 = mrd_seed(p, rho)
    assert refined <= plain == greedy_upper_bound(p, rho, K0, u0)
    assert refined >= sphere_covering_bound(p, rho)


def test_refined_known_value():
    assert refined_upper_bound(SpaceParams(2, 5, 5), 2) == 2773


def test_refined_step_limit():
    with pytest.raises(BudgetExceeded):
        refined_upper_bound(SpaceParams(2, 5, 5), 2, step_limit=100)
    with pytest.raises(BudgetExceeded):
        refined_upper_bound(SpaceParams(2, 7, 7), 2, step_limit=1000)


# -- construction and aggregation -------------------------------------------------


@pytest.mark.parametrize(
    "m, n, rho, expected",
    [(4, 4, 3, 5), (6, 6, 4, 154), (7, 7, 5, 211), (3, 2, 1, 7), (5, 5, 4, 6), (7, 7, 6, 8)],
)
def test_construction_values(m, n, rho, expected):
    assert construction_upper_bound(SpaceParams(2, m, n), rho) == expected


def test_construction_rejects_rho():
    with pytest.raises(ValueError):
        construction_upper_bound(SpaceParams(2, 3, 3), 4)
    with pytest.raises(ValueError):
        construction_upper_bound(SpaceParams(2, 3, 3), 0)


def test_best_bounds_examples():
    lo, up = best_bounds(SpaceParams(2, 2, 2), 2)
    assert (lo.value, up.value) == (1, 1)
    _, up = best_bounds(SpaceParams(2, 5, 5), 4)
    assert (up.value, up.method) == (6, Method.CONSTRUCTION)
    _, up = best_bounds(SpaceParams(2, 7, 7), 6)
    assert (up.value, up.method) == (8, Method.CONSTRUCTION)
    lo, up = best_bounds(SpaceParams(2, 5, 5), 3)
    assert (lo.value, lo.method) == (10, Method.ILP)


def test_best_bounds_method_selection():
    p = SpaceParams(2, 5, 5)
    lo, up = best_bounds(p, 2, ["refined"])
    assert (up.value, up.method) == (2773, Method.MRD_REFINED)
    assert lo.method == Method.TRIVIAL
    lo, up = best_bounds(p, 2, ["sphere-covering"])
    assert up.method == Method.TRIVIAL and up.value == p.space_size
    lo, up = best_bounds(SpaceParams(2, 2, 2), 1, ["oracle"])
    assert (lo.value, up.value) == (3, 3)
    assert lo.method == up.method == Method.ORACLE
    _, up = best_bounds(SpaceParams(2, 4, 4), 1, ["oracle"])
    assert Method.ORACLE in up.unavailable


def test_best_bounds_reports_budget_exhaustion():
    lo, up = best_bounds(SpaceParams(2, 7, 7), 2, limits=Limits(node_limit=5, step_limit=1000))
    assert Method.MRD_REFINED in up.unavailable
    assert up.value == construction_upper_bound(SpaceParams(2, 7, 7), 2)


def test_parse_methods():
    assert parse_methods("refined,trivial") == {Method.MRD_REFINED, Method.TRIVIAL}
    assert parse_methods(["ilp"]) == {Method.ILP}
    with pytest.raises(ValueError):
        parse_methods("")
    with pytest.raises(ValueError):
        parse_methods("nonsense")


@pytest.mark.parametrize("m", range(1, 6))
def test_lower_never_exceeds_upper(m):
    methods = set(DEFAULT_METHODS) | {Method.GREEDY, Method.ORACLE}
    for n, rho in itertools.product(range(1, m + 1), range(0, m + 1)):
        if rho > n:
            continue
        lo, up = best_bounds(SpaceParams(2, m, n), rho, methods)
        assert lo.value <= up.value
        if rho == n:
            assert (lo.value, up.value) == (1, 1)
