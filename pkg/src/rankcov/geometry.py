"""Sphere and ball intersections in the rank metric, and the union-volume bound."""

from __future__ import annotations

import functools
from dataclasses import dataclass

from rankcov.krawtchouk import krawtchouk_table
from rankcov.qcombinat import SpaceParams, ball_volume, floor_log, sphere_size

Table3 = tuple[tuple[tuple[int, ...], ...], ...]


@dataclass(frozen=True)
class IntersectionTable:
    """Sphere intersections ``J[u][s][w]`` and ball intersections ``I[u][s][w]``.

    ``w`` is the rank distance between the two centers.
    """

    params: SpaceParams
    J: Table3
    I: Table3

    def ball(self, rho: int, d: int) -> int:
        """Shorthand I(rho, d) = I(rho, rho, d)."""
        return self.I[rho][rho][d]


def _check_index(params: SpaceParams, **indices: int) -> None:
    for name, value in indices.items():
        if not 0 <= value <= params.n:
            raise ValueError(f"{name} must lie in [0, {params.n}], got {value}")


def prefix_sums(J: Table3, n: int) -> Table3:
    # I[u][s][w] = sum_{i <= u, j <= s} J[i][j][w]
    I = [[[0] * (n + 1) for _ in range(n + 1)] for _ in range(n + 1)]
    for w in range(n + 1):
        for u in range(n + 1):
            for s in range(n + 1):
                acc = J[u][s][w]
                if u:
                    acc += I[u - 1][s][w]
                if s:
                    acc += I[u][s - 1][w]
                if u and s:
                    acc -= I[u - 1][s - 1][w]
                I[u][s][w] = acc
    return tuple(tuple(tuple(row) for row in plane) for plane in I)


@functools.lru_cache(maxsize=None)
def intersection_table(params: SpaceParams) -> IntersectionTable:
    """Evaluate J(u, s, w) for every index triple through the Krawtchouk sum."""
    n = params.n
    K = krawtchouk_table(params).values
    N = [sphere_size(params, i) for i in range(n + 1)]
    total = params.space_size
    J = [[[0] * (n + 1) for _ in range(n + 1)] for _ in range(n + 1)]
    for u in range(n + 1):
        for s in range(u, n + 1):
            for w in range(n + 1):
                acc = sum(N[i] * K[u][i] * K[s][i] * K[w][i] for i in range(n + 1))
                value, rem = divmod(acc, total * N[w])
                if rem:
                    raise ArithmeticError(f"J({u},{s},{w}) is not an integer")
                if value < 0:
                    raise ArithmeticError(f"J({u},{s},{w}) is negative")
                J[u][s][w] = J[s][u][w] = value
    frozen = tuple(tuple(tuple(row) for row in plane) for plane in J)
    return IntersectionTable(params, frozen, prefix_sums(frozen, n))


def sphere_intersection(params: SpaceParams, u: int, s: int, w: int) -> int:
    """Number of vectors at distance u from one center and s from another,
    the two centers being at rank distance w."""
    _check_index(params, u=u, s=s, w=w)
    return intersection_table(params).J[u][s][w]


def ball_intersection(params: SpaceParams, u: int, s: int, w: int) -> int:
    """Volume of the intersection of balls of radii u and s whose centers are
    at distance w (w = 0 means concentric)."""
    _check_index(params, u=u, s=s, w=w)
    return intersection_table(params).I[u][s][w]


class UnionBound:
    """Upper bound B(K) on the volume covered by any K balls of radius rho.

    The partial sums over the Singleton layers are precomputed, so each
    evaluation is a handful of integer operations.
    """

    def __init__(self, params: SpaceParams, rho: int) -> None:
        _check_index(params, rho=rho)
        self.params = params
        self.rho = rho
        n, qm = params.n, params.qm
        table = intersection_table(params)
        self.volume = v = ball_volume(params, rho)
        # Concentric overlap is the whole ball, so layer n - l = 0 adds nothing.
        self._overlap = [table.ball(rho, d) for d in range(n + 1)]
        self._powers = [qm**a for a in range(n + 1)]
        prefix = [v]
        for a in range(1, n + 1):
            gain = (self._powers[a] - self._powers[a - 1]) * (v - self._overlap[n - a + 1])
            prefix.append(prefix[-1] + gain)
        self._prefix = prefix
        self._cap = params.space_size

    def layer(self, K: int) -> int:
        return floor_log(self.params.qm, K)

    def evaluate(self, K: int, l: int | None = None) -> int:
        """B(K), capped at q^{mn}; ``l`` may be passed when already known."""
        if K < 1:
            raise ValueError(f"K must be >= 1, got {K}")
        if l is None:
            l = self.layer(K)
        if l > self.params.n:
            return self._cap
        value = self._prefix[l] + (K - self._powers[l]) * (
            self.volume - self._overlap[self.params.n - l]
        )
        return min(value, self._cap)

    __call__ = evaluate


def union_volume_bound(params: SpaceParams, rho: int, K: int) -> int:
    """B(K) for balls of radius ``rho``, capped at the size of the space."""
    return _union_bound(params, rho)(K)


@functools.lru_cache(maxsize=None)
def _union_bound(params: SpaceParams, rho: int) -> UnionBound:
    return UnionBound(params, rho)
