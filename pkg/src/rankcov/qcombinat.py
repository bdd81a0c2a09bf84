"""Exact q-analog combinatorics for the rank-metric space GF(q^m)^n.

Everything here is integer arithmetic on Python ints; nothing is ever
converted to float.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field


@dataclass(frozen=True)
class SpaceParams:
    """The ambient space GF(q^m)^n, viewed as m x n matrices over GF(q).

    K_R is invariant under transposition, so ``n > m`` is normalized by
    swapping the two and recording it in ``transposed``.
    """

    q: int
    m: int
    n: int
    transposed: bool = field(default=False, init=False, compare=False)

    def __post_init__(self) -> None:
        for name in ("q", "m", "n"):
            if not isinstance(getattr(self, name), int):
                raise TypeError(f"{name} must be an int")
        if self.q < 2:
            raise ValueError(f"q must be >= 2, got {self.q}")
        if self.m < 1 or self.n < 1:
            raise ValueError(f"m and n must be >= 1, got m={self.m}, n={self.n}")
        if self.n > self.m:
            m, n = self.m, self.n
            object.__setattr__(self, "m", n)
            object.__setattr__(self, "n", m)
            object.__setattr__(self, "transposed", True)

    @property
    def qm(self) -> int:
        return self.q**self.m

    @property
    def space_size(self) -> int:
        """q^{mn}, the number of vectors in the space."""
        return self.q ** (self.m * self.n)


@functools.lru_cache(maxsize=None)
def alpha(m: int, r: int, q: int = 2) -> int:
    """Product of (q^m - q^i) for i in [0, r).

    This counts ordered r-tuples of linearly independent vectors in GF(q)^m;
    it vanishes for r > m.
    """
    if r < 0:
        raise ValueError(f"r must be non-negative, got {r}")
    qm = q**m
    out = 1
    for i in range(r):
        out *= qm - q**i
    return out


@functools.lru_cache(maxsize=None)
def gauss_binomial(n: int, r: int, q: int = 2) -> int:
    """Gaussian binomial coefficient [n r]_q."""
    if r < 0:
        raise ValueError(f"r must be non-negative, got {r}")
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if r > n:
        return 0
    num = alpha(n, r, q)
    den = alpha(r, r, q)
    quo, rem = divmod(num, den)
    if rem:
        raise ArithmeticError(f"inexact Gaussian binomial [{n} {r}]_{q}")
    return quo


def _check_radius(params: SpaceParams, r: int, name: str = "r") -> None:
    if not 0 <= r <= params.n:
        raise ValueError(f"{name} must lie in [0, {params.n}], got {r}")


def sphere_size(params: SpaceParams, r: int) -> int:
    """N_r, the number of vectors of rank weight exactly ``r``."""
    _check_radius(params, r)
    return gauss_binomial(params.n, r, params.q) * alpha(params.m, r, params.q)


def ball_volume(params: SpaceParams, rho: int) -> int:
    """v(rho), the number of vectors of rank weight at most ``rho``."""
    _check_radius(params, rho, "rho")
    return sum(sphere_size(params, r) for r in range(rho + 1))


def floor_log(base: int, value: int) -> int:
    """Largest l with base**l <= value, using integer comparisons only."""
    if base < 2:
        raise ValueError(f"base must be >= 2, got {base}")
    if value < 1:
        raise ValueError(f"value must be >= 1, got {value}")
    l, power = 0, base
    while power <= value:
        power *= base
        l += 1
    return l


def ceil_log(base: int, value: int) -> int:
    """Smallest t with base**t >= value."""
    if base < 2:
        raise ValueError(f"base must be >= 2, got {base}")
    if value < 1:
        raise ValueError(f"value must be >= 1, got {value}")
    t, power = 0, 1
    while power < value:
        power *= base
        t += 1
    return t


def floor_log_base_qm(params: SpaceParams, K: int) -> int:
    """The l = floor(log_{q^m} K) used by the union-volume bound."""
    return floor_log(params.qm, K)
