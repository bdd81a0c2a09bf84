import pytest
from hypothesis import given
from hypothesis import strategies as st

from rankcov.qcombinat import (
    SpaceParams,
    alpha,
    ball_volume,
    ceil_log,
    floor_log,
    floor_log_base_qm,
    gauss_binomial,
    sphere_size,
)

from oracles import count_subspaces, rank_histogram


def test_space_params_transposes():
    p = SpaceParams(2, 3, 5)
    assert (p.m, p.n, p.transposed) == (5, 3, True)
    assert SpaceParams(2, 5, 3) == p
    assert not SpaceParams(2, 5, 3).transposed


@pytest.mark.parametrize("q, m, n", [(1, 2, 2), (2, 0, 1), (2, 1, 0)])
def test_space_params_rejects(q, m, n):
    with pytest.raises(ValueError):
        SpaceParams(q, m, n)


def test_alpha_examples():
    assert alpha(3, 0) == 1
    assert alpha(3, 2, q=2) == 42  # (8 - 1)(8 - 2)
    assert alpha(2, 3, q=2) == 0
    with pytest.raises(ValueError):
        alpha(3, -1)


def test_gauss_binomial_examples():
    assert gauss_binomial(4, 2, 2) == count_subspaces(2, 4, 2) == 35
    assert gauss_binomial(2, 1, 2) == count_subspaces(2, 2, 1) == 3
    assert gauss_binomial(7, 0, 3) == 1
    assert gauss_binomial(2, 3, 2) == 0


@pytest.mark.parametrize("q, n, k", [(2, 3, 1), (2, 3, 2), (2, 4, 1), (2, 4, 3), (3, 3, 1), (3, 3, 2)])
def test_gauss_binomial_counts_subspaces(q, n, k):
    assert gauss_binomial(n, k, q) == count_subspaces(q, n, k)


@given(st.integers(2, 5), st.integers(0, 9), st.data())
def test_gauss_binomial_symmetric(q, n, data):
    r = data.draw(st.integers(0, n))
    assert gauss_binomial(n, r, q) == gauss_binomial(n, n - r, q)


def test_sphere_size_examples():
    p = SpaceParams(2, 2, 2)
    assert sphere_size(p, 1) == 9
    assert sphere_size(p, 0) == 1
    with pytest.raises(ValueError):
        sphere_size(p, 3)


@pytest.mark.parametrize(
    "q, m, n",
    [(2, 1, 1), (2, 2, 1), (2, 2, 2), (2, 3, 1), (2, 3, 2), (2, 3, 3), (3, 1, 1), (3, 2, 1), (3, 2, 2), (3, 3, 1)],
)
def test_sphere_size_matches_enumeration(q, m, n):
    p = SpaceParams(q, m, n)
    assert [sphere_size(p, r) for r in range(n + 1)] == rank_histogram(q, m, n)


@given(st.integers(2, 4), st.integers(1, 8), st.integers(1, 8))
def test_spheres_partition_space(q, m, n):
    p = SpaceParams(q, m, n)
    sizes = [sphere_size(p, r) for r in range(p.n + 1)]
    assert all(s > 0 for s in sizes)
    assert sum(sizes) == p.space_size == ball_volume(p, p.n)


def test_ball_volume_examples():
    p = SpaceParams(2, 2, 2)
    assert ball_volume(p, 1) == 10
    assert ball_volume(p, 0) == 1
    assert ball_volume(p, 2) == 16


def test_floor_log_examples():
    p = SpaceParams(2, 3, 3)
    assert floor_log_base_qm(p, 8) == 1
    assert floor_log_base_qm(p, 7) == 0
    assert floor_log_base_qm(p, 65) == 2
    with pytest.raises(ValueError):
        floor_log_base_qm(p, 0)


@given(st.integers(2, 300), st.integers(0, 40))
def test_floor_log_exact_near_powers(base, l):
    power = base**l
    assert floor_log(base, power) == l
    if power + 1 < power * base:
        assert floor_log(base, power + 1) == l
    if power > 1:
        assert floor_log(base, power - 1) == l - 1
    assert ceil_log(base, power) == l
    assert ceil_log(base, power + 1) == l + 1
    assert ceil_log(base, power * base) == l + 1


@given(st.integers(2, 200), st.integers(1, 10**30), st.integers(1, 10**30))
def test_floor_log_monotone(base, a, b):
    lo, hi = sorted((a, b))
    assert floor_log(base, lo) <= floor_log(base, hi)
    l = floor_log(base, hi)
    assert base**l <= hi < base ** (l + 1)
