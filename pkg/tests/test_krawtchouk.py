import pytest

from rankcov.krawtchouk import krawtchouk, krawtchouk_table
from rankcov.qcombinat import SpaceParams, sphere_size

SMALL = [SpaceParams(2, m, n) for m in range(1, 5) for n in range(1, m + 1)]


def test_examples():
    p = SpaceParams(2, 2, 2)
    assert [krawtchouk(p, 0, i) for i in range(3)] == [1, 1, 1]
    assert krawtchouk(p, 1, 0) == 9
    table = krawtchouk_table(p)
    assert [table(j, 0) for j in range(3)] == [1, 9, 6]
    assert len(table.values) == 3 and all(len(row) == 3 for row in table.values)


def test_first_column_is_sphere_sizes():
    p = SpaceParams(2, 3, 3)
    assert [krawtchouk(p, j, 0) for j in range(4)] == [sphere_size(p, j) for j in range(4)]


@pytest.mark.parametrize("j, i", [(-1, 0), (0, 3), (3, 0)])
def test_rejects_bad_indices(j, i):
    with pytest.raises(ValueError):
        krawtchouk(SpaceParams(2, 2, 2), j, i)


@pytest.mark.parametrize("p", SMALL, ids=str)
def test_orthogonality(p):
    n = p.n
    N = [sphere_size(p, i) for i in range(n + 1)]
    K = krawtchouk_table(p)
    for j in range(n + 1):
        assert K(j, 0) == N[j]
        for l in range(n + 1):
            total = sum(N[i] * K(j, i) * K(l, i) for i in range(n + 1))
            assert total == (p.space_size * N[j] if j == l else 0)


@pytest.mark.parametrize("p", [p for p in SMALL if p.m <= 3], ids=str)
def test_row_sums(p):
    K = krawtchouk_table(p)
    for i in range(p.n + 1):
        assert sum(K(j, i) for j in range(p.n + 1)) == (p.space_size if i == 0 else 0)


@pytest.mark.parametrize("p", [SpaceParams(3, 3, 2), SpaceParams(5, 4, 3), SpaceParams(2, 7, 7)], ids=str)
def test_invariants_other_fields(p):
    K = krawtchouk_table(p)
    N = [sphere_size(p, i) for i in range(p.n + 1)]
    assert all(K(0, i) == 1 for i in range(p.n + 1))
    assert [K(j, 0) for j in range(p.n + 1)] == N
