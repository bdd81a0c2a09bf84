"""Slow, obviously-correct reference computations shared by the tests.

Nothing here imports the package's own linear algebra.
"""

import itertools


def rank_mod_p(rows, p):
    """Rank of a list-of-lists matrix over GF(p) by textbook elimination."""
    M = [list(r) for r in rows]
    rank = 0
    cols = len(M[0]) if M else 0
    for c in range(cols):
        pivot = next((r for r in range(rank, len(M)) if M[r][c] % p), None)
        if pivot is None:
            continue
        M[rank], M[pivot] = M[pivot], M[rank]
        inv = pow(M[rank][c], -1, p)
        M[rank] = [(x * inv) % p for x in M[rank]]
        for r in range(len(M)):
            if r != rank and M[r][c] % p:
                f = M[r][c]
                M[r] = [(x - f * y) % p for x, y in zip(M[r], M[rank])]
        rank += 1
    return rank


def all_matrices(q, m, n):
    """Every m x n matrix over GF(q), as tuples of rows."""
    for entries in itertools.product(range(q), repeat=m * n):
        yield tuple(tuple(entries[i * n : (i + 1) * n]) for i in range(m))


def count_subspaces(q, n, k):
    """Number of k-dimensional subspaces of GF(q)^n, by collecting spans."""
    vectors = list(itertools.product(range(q), repeat=n))
    spans = set()
    for basis in itertools.combinations(vectors, k):
        if rank_mod_p(basis, q) != k:
            continue
        span = frozenset(
            tuple(sum(c * b[i] for c, b in zip(coeffs, basis)) % q for i in range(n))
            for coeffs in itertools.product(range(q), repeat=k)
        )
        spans.add(span)
    return len(spans)


def rank_histogram(q, m, n):
    hist = [0] * (min(m, n) + 1)
    for M in all_matrices(q, m, n):
        hist[rank_mod_p(M, q)] += 1
    return hist


def matrix_sub(A, B, q):
    return tuple(tuple((a - b) % q for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def intersection_counts(q, m, n):
    """J[u][s][w] by enumerating matrices around 0 and a canonical rank-w matrix."""
    mats = list(all_matrices(q, m, n))
    ranks = {M: rank_mod_p(M, q) for M in mats}
    J = [[[0] * (n + 1) for _ in range(n + 1)] for _ in range(n + 1)]
    for w in range(n + 1):
        y = tuple(tuple(1 if (i == j and i < w) else 0 for j in range(n)) for i in range(m))
        for M in mats:
            J[ranks[M]][ranks[matrix_sub(M, y, q)]][w] += 1
    return J
