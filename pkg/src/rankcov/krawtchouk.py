"""q-Krawtchouk polynomials of the bilinear-forms association scheme."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from math import comb

from rankcov.qcombinat import SpaceParams, gauss_binomial, sphere_size


def _krawtchouk_direct(q: int, m: int, n: int, j: int, i: int) -> int:
    total = 0
    for l in range(j + 1):
        sign = -1 if (j - l) % 2 else 1
        power = q ** (l * m + comb(j - l, 2))
        total += sign * power * gauss_binomial(n - l, n - j, q) * gauss_binomial(n - i, l, q)
    return total


@dataclass(frozen=True)
class KrawtchoukTable:
    """All values K_j(i) for 0 <= j, i <= n; ``values[j][i] = K_j(i)``."""

    params: SpaceParams
    values: tuple[tuple[int, ...], ...]

    def __call__(self, j: int, i: int) -> int:
        return self.values[j][i]


@functools.lru_cache(maxsize=None)
def krawtchouk_table(params: SpaceParams) -> KrawtchoukTable:
    """Build and sanity-check the full (n+1) x (n+1) table."""
    q, m, n = params.q, params.m, params.n
    values = tuple(
        tuple(_krawtchouk_direct(q, m, n, j, i) for i in range(n + 1)) for j in range(n + 1)
    )
    if any(v != 1 for v in values[0]):
        raise ArithmeticError("K_0 is not identically 1")
    for j in range(n + 1):
        if values[j][0] != sphere_size(params, j):
            raise ArithmeticError(f"K_{j}(0) differs from N_{j}")
    return KrawtchoukTable(params, values)


def krawtchouk(params: SpaceParams, j: int, i: int) -> int:
    """K_j(i), signed and exact."""
    n = params.n
    if not (0 <= j <= n and 0 <= i <= n):
        raise ValueError(f"indices must lie in [0, {n}], got j={j}, i={i}")
    return krawtchouk_table(params)(j, i)
