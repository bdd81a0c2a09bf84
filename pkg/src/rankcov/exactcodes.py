"""Concrete rank-metric codes and exhaustive oracles on small spaces.

A vector of GF(q^m)^n is stored as the int ``sum_j x_j * (q^m)**j`` where each
coordinate ``x_j`` is a field element in polynomial-basis digits. Its m x n
expansion over GF(q) has column j equal to the base-q digits of ``x_j``
(row i is the coefficient of alpha^i). Whole-space sweeps work on numpy
arrays of these ints.

Only prime q is supported here; the closed-form modules accept any q.
"""

from __future__ import annotations

import functools
import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb

import numpy as np

from rankcov.errors import BudgetExceeded
from rankcov.fields import (
    ExtensionField,
    batch_rank,
    extension_field,
    matrix_inverse,
    matrix_rank,
    row_echelon,
)
from rankcov.geometry import IntersectionTable, prefix_sums
from rankcov.qcombinat import SpaceParams, ball_volume

DEFAULT_BUDGET = 2**20
CHUNK = 2**14


def thread_count() -> int:
    """Worker threads for sweeps, from ``RANKCOV_THREADS`` (default: CPU count)."""
    env = os.environ.get("RANKCOV_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _chunked(fn, total: int, chunk: int = CHUNK) -> list:
    """Apply ``fn(start, stop)`` over [0, total) in chunks, preserving order."""
    bounds = [(s, min(s + chunk, total)) for s in range(0, total, chunk)]
    workers = thread_count()
    if workers == 1 or len(bounds) == 1:
        return [fn(s, e) for s, e in bounds]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda b: fn(*b), bounds))


class RankSpace:
    """The space GF(q^m)^n with vectors encoded as ints."""

    def __init__(self, params: SpaceParams) -> None:
        self.params = params
        self.q, self.m, self.n = params.q, params.m, params.n
        self.field: ExtensionField = extension_field(self.q, self.m)
        self.size = params.space_size
        self._weights = self.q ** np.arange(self.m * self.n, dtype=np.int64)

    def check_budget(self, budget: int) -> None:
        if self.size > budget:
            raise BudgetExceeded(
                f"space of size {self.size} exceeds enumeration budget {budget}"
            )

    # -- conversions ---------------------------------------------------------

    def digits(self, xs) -> np.ndarray:
        """Base-q digits (..., m*n), digit index j*m + i is entry (i, j)."""
        xs = np.asarray(xs, dtype=np.int64)
        return (xs[..., None] // self._weights) % self.q

    def from_digits(self, digits: np.ndarray) -> np.ndarray:
        return (np.asarray(digits, dtype=np.int64) % self.q) @ self._weights

    def matrix(self, x: int) -> np.ndarray:
        """m x n expansion of an encoded vector."""
        return self.digits(x).reshape(self.n, self.m).T.copy()

    def encode_matrix(self, V: np.ndarray) -> int:
        V = np.asarray(V, dtype=np.int64) % self.q
        if V.shape != (self.m, self.n):
            raise ValueError(f"expected an {self.m}x{self.n} matrix, got {V.shape}")
        return int(self.from_digits(V.T.reshape(-1)))

    def coordinates(self, x: int) -> list[int]:
        qm = self.field.order
        return [(x // qm**j) % qm for j in range(self.n)]

    def encode(self, coords) -> int:
        qm = self.field.order
        return sum(int(c) * qm**j for j, c in enumerate(coords))

    # -- arithmetic ----------------------------------------------------------

    def add(self, xs, y) -> np.ndarray:
        if self.q == 2:
            return np.bitwise_xor(np.asarray(xs, dtype=np.int64), np.asarray(y, dtype=np.int64))
        return self.from_digits(self.digits(xs) + self.digits(y))

    def sub(self, xs, y) -> np.ndarray:
        if self.q == 2:
            return self.add(xs, y)
        return self.from_digits(self.digits(xs) - self.digits(y))

    # -- ranks ---------------------------------------------------------------

    def ranks(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        mats = self.digits(xs.reshape(-1)).reshape(-1, self.n, self.m).transpose(0, 2, 1)
        return batch_rank(mats, self.q).reshape(xs.shape)

    def rank(self, x: int) -> int:
        return matrix_rank(self.matrix(x), self.q)

    @functools.cached_property
    def rank_table(self) -> np.ndarray:
        """Rank weight of every vector, indexed by its encoding."""
        parts = _chunked(lambda s, e: self.ranks(np.arange(s, e, dtype=np.int64)), self.size)
        return np.concatenate(parts)

    def distances(self, xs, y) -> np.ndarray:
        return self.rank_table[self.sub(xs, y)]


@functools.lru_cache(maxsize=None)
def rank_space(params: SpaceParams) -> RankSpace:
    return RankSpace(params)


# -- expansion with respect to an arbitrary basis --------------------------


def _basis_matrix(field: ExtensionField, basis) -> np.ndarray:
    if basis is None:
        return np.eye(field.m, dtype=np.int64)
    if len(basis) != field.m:
        raise ValueError(f"basis must have {field.m} elements")
    return np.array([field.to_coeffs(b) for b in basis], dtype=np.int64).T


def expand(vector, field: ExtensionField, basis=None) -> np.ndarray:
    """m x n matrix over GF(q) whose column j holds the coordinates of
    ``vector[j]`` in ``basis`` (default: the polynomial basis)."""
    B = _basis_matrix(field, basis)
    Binv = matrix_inverse(B, field.q)
    cols = np.array([field.to_coeffs(int(x)) for x in vector], dtype=np.int64).reshape(-1, field.m).T
    return (Binv @ cols) % field.q


def contract(V: np.ndarray, field: ExtensionField, basis=None) -> list[int]:
    """Inverse of :func:`expand`."""
    B = _basis_matrix(field, basis)
    coeffs = (B @ np.asarray(V, dtype=np.int64)) % field.q
    return [field.from_coeffs(coeffs[:, j]) for j in range(coeffs.shape[1])]


def rank(V: np.ndarray, q: int = 2) -> int:
    """Rank of a matrix over GF(q)."""
    return matrix_rank(V, q)


# -- codes -------------------------------------------------------------------


@dataclass
class Code:
    """A list of distinct codewords in GF(q^m)^n (encoded ints)."""

    params: SpaceParams
    words: np.ndarray
    name: str = ""
    _histogram: list[int] | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        self.words = np.asarray(self.words, dtype=np.int64).reshape(-1)
        if len(np.unique(self.words)) != len(self.words):
            raise ValueError("codewords must be distinct")

    def __len__(self) -> int:
        return len(self.words)

    @property
    def space(self) -> RankSpace:
        return rank_space(self.params)

    def matrices(self) -> list[np.ndarray]:
        return [self.space.matrix(int(x)) for x in self.words]

    def rank_histogram(self) -> list[int]:
        """Number of codewords of each rank weight 0..n."""
        if self._histogram is None:
            ranks = np.concatenate(_chunked(lambda s, e: self.space.ranks(self.words[s:e]), len(self)))
            self._histogram = np.bincount(ranks, minlength=self.params.n + 1).tolist()
        return self._histogram

    def minimum_distance(self) -> int:
        """Minimum pairwise rank distance, by exhaustive comparison."""
        if len(self) < 2:
            raise ValueError("minimum distance needs at least two codewords")
        best = self.params.n
        for i in range(len(self) - 1):
            d = self.space.ranks(self.space.sub(self.words[i + 1 :], self.words[i]))
            best = min(best, int(d.min()))
        return best


def gabidulin_code(params: SpaceParams, k: int, budget: int = DEFAULT_BUDGET) -> Code:
    """The (n, k, n-k+1) Gabidulin code with evaluation points 1, alpha, ..., alpha^{n-1}.

    Codeword ``t`` encodes the message whose coefficient for generator row i is
    base-q^m digit i of ``t``, so the first q^{m k'} codewords form the
    dimension-k' Gabidulin subcode for every k' <= k.
    """
    n = params.n
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in [1, {n}], got {k}")
    space = rank_space(params)
    F = space.field
    qm = F.order
    size = qm**k
    if size > budget:
        raise BudgetExceeded(f"code of size {size} exceeds budget {budget}")
    points = [F.q**j for j in range(n)]
    # rows[i][f] = encoding of f * (g_0^{q^i}, ..., g_{n-1}^{q^i})
    rows = []
    for i in range(k):
        gen = [F.frobenius(g, i) for g in points]
        rows.append(
            np.array([space.encode(F.mul(f, g) for g in gen) for f in range(qm)], dtype=np.int64)
        )
    t = np.arange(size, dtype=np.int64)
    words = np.zeros(size, dtype=np.int64)
    for i in range(k):
        words = space.add(words, rows[i][(t // qm**i) % qm])
    return Code(params, words, name=f"Gabidulin({n},{k})")


def construction_cardinality(params: SpaceParams, rho: int) -> int:
    n, q, m = params.n, params.q, params.m
    if not 1 <= rho <= n:
        raise ValueError(f"rho must lie in [1, {n}], got {rho}")
    return sum(comb(n, i) * (q ** (m - rho) - 1) ** i for i in range(n - rho + 1))


def construction_code(params: SpaceParams, rho: int, budget: int = DEFAULT_BUDGET) -> Code:
    """All m x n matrices with the top ``rho`` rows zero and at most n - rho
    nonzero columns."""
    size = construction_cardinality(params, rho)
    if size > budget:
        raise BudgetExceeded(f"code of size {size} exceeds budget {budget}")
    q, m, n = params.q, params.m, params.n
    qm = q**m
    # Column values with zero top rho digits: t * q^rho for t in [1, q^{m-rho}).
    column_values = [t * q**rho for t in range(1, q ** (m - rho))]
    words = []
    for weight in range(n - rho + 1):
        for support in itertools.combinations(range(n), weight):
            for values in itertools.product(column_values, repeat=weight):
                words.append(sum(v * qm**j for j, v in zip(support, values)))
    return Code(params, np.array(words, dtype=np.int64), name=f"Construction(rho={rho})")


def construction_cover(V: np.ndarray, rho: int, q: int = 2) -> tuple[np.ndarray, int]:
    """A codeword of :func:`construction_code` within rank distance ``rho`` of ``V``.

    Follows the constructive argument: take a row basis I of the top block and
    pivot columns J of ``V(I, :)``, rebuild the lower rows inside the row span
    of ``V(I, :)`` so they agree with ``V`` on J, copy ``rho - r`` further
    columns of ``V``, and subtract.

    Returns:
        (codeword, rank distance from V)
    """
    V = np.asarray(V, dtype=np.int64) % q
    m, n = V.shape
    if not 1 <= rho <= min(m, n):
        raise ValueError(f"rho must lie in [1, {min(m, n)}], got {rho}")
    top = V[:rho]
    # Leftmost independent rows of the top block.
    _, I = row_echelon(top.T, q)
    r = len(I)
    U = np.zeros_like(V)
    U[:rho] = top
    if r:
        _, J = row_echelon(V[I], q)
        inv = matrix_inverse(V[np.ix_(I, J)], q)
        L = (V[rho:, J] @ inv) % q
        U[rho:] = (L @ V[I]) % q
    else:
        J = []
    # Padding columns where U already agrees with V leave U' = U there, so
    # take those first; a codeword then maps to itself.
    rest = sorted((j for j in range(n) if j not in J), key=lambda j: bool((V[:, j] != U[:, j]).any()))
    extra = rest[: rho - r]
    Up = U.copy()
    Up[:, extra] = V[:, extra]
    C = (V - Up) % q
    return C, matrix_rank(Up, q)


def covering_radius(code: Code, budget: int = DEFAULT_BUDGET) -> int:
    """max over all vectors x of d(x, code), by a full sweep."""
    if len(code) == 0:
        raise ValueError("code is empty")
    space = code.space
    space.check_budget(budget)
    table = space.rank_table

    def sweep(start: int, stop: int) -> int:
        xs = np.arange(start, stop, dtype=np.int64)
        best = np.full(xs.shape, space.n, dtype=np.int64)
        for c in code.words:
            np.minimum(best, table[space.sub(xs, c)], out=best)
        return int(best.max())

    return max(_chunked(sweep, space.size))


def _rank_w_representative(space: RankSpace, w: int) -> int:
    V = np.zeros((space.m, space.n), dtype=np.int64)
    for j in range(w):
        V[j, j] = 1
    return space.encode_matrix(V)


def brute_intersections(
    params: SpaceParams, budget: int = DEFAULT_BUDGET, seed: int = 0
) -> IntersectionTable:
    """J and I tables by enumeration around the centers 0 and a rank-w vector.

    A second, random rank-w center is checked to give the same counts.

    Raises:
        ArithmeticError: if the two representatives disagree.
    """
    space = rank_space(params)
    space.check_budget(budget)
    n = params.n
    table = space.rank_table
    everything = np.arange(space.size, dtype=np.int64)
    rng = np.random.default_rng(seed)
    J = [[[0] * (n + 1) for _ in range(n + 1)] for _ in range(n + 1)]

    def counts(y: int) -> np.ndarray:
        dy = space.distances(everything, y)
        return np.bincount(table * (n + 1) + dy, minlength=(n + 1) ** 2).reshape(n + 1, n + 1)

    for w in range(n + 1):
        first = counts(_rank_w_representative(space, w))
        candidates = np.nonzero(table == w)[0]
        second = counts(int(rng.choice(candidates)))
        if not np.array_equal(first, second):
            raise ArithmeticError(f"intersection counts depend on the center at distance {w}")
        for u in range(n + 1):
            for s in range(n + 1):
                J[u][s][w] = int(first[u, s])
    frozen = tuple(tuple(tuple(row) for row in plane) for plane in J)
    return IntersectionTable(params, frozen, prefix_sums(frozen, n))


def union_volume(params: SpaceParams, rho: int, centers, budget: int = DEFAULT_BUDGET) -> int:
    """Exact number of vectors within distance ``rho`` of some center."""
    space = rank_space(params)
    space.check_budget(budget)
    everything = np.arange(space.size, dtype=np.int64)
    covered = np.zeros(space.size, dtype=bool)
    for c in centers:
        covered |= space.distances(everything, int(c)) <= rho
    return int(covered.sum())


def _ball_masks(space: RankSpace, rho: int) -> list[int]:
    ball = np.nonzero(space.rank_table <= rho)[0]
    masks = []
    for c in range(space.size):
        bits = np.zeros(space.size, dtype=bool)
        bits[space.add(ball, c)] = True
        masks.append(int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little"))
    return masks


def exact_min_covering(
    params: SpaceParams,
    rho: int,
    budget: int = 2**12,
    node_limit: int = 10_000_000,
) -> int:
    """K_R(q^m, n, rho) by exhaustive search.

    Codes are grown by always covering the lowest uncovered vector, with the
    zero vector fixed as the first codeword (covering radius is translation
    invariant), for increasing cardinality starting at the sphere-covering bound.

    Raises:
        BudgetExceeded: if the space exceeds ``budget`` or the search exceeds
            ``node_limit`` nodes.
    """
    if not 0 <= rho <= params.n:
        raise ValueError(f"rho must lie in [0, {params.n}], got {rho}")
    if rho == params.n:
        return 1
    space = rank_space(params)
    space.check_budget(budget)
    masks = _ball_masks(space, rho)
    volume = ball_volume(params, rho)
    full = (1 << space.size) - 1
    nodes = 0

    def search(uncovered: int, remaining: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_limit:
            raise BudgetExceeded(f"search exceeded {node_limit} nodes")
        if uncovered == 0:
            return True
        if remaining == 0 or uncovered.bit_count() > remaining * volume:
            return False
        x = (uncovered & -uncovered).bit_length() - 1
        # The ball around x is exactly the set of codewords that cover x.
        candidates = masks[x]
        while candidates:
            low = candidates & -candidates
            c = low.bit_length() - 1
            candidates ^= low
            if search(uncovered & ~masks[c], remaining - 1):
                return True
        return False

    k = max(1, -(-space.size // volume))
    while True:
        if search(full & ~masks[0], k - 1):
            return k
        k += 1
