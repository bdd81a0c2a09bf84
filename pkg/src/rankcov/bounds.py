"""Lower and upper bounds on K_R(q^m, n, rho), the minimum size of a rank-metric
code in GF(q^m)^n with covering radius rho.

Lower bounds: sphere covering and the integer program on distance
distributions (:func:`ilp_lower_bound`). Upper bounds: the greedy recursion,
its refinement seeded by nested MRD codes (:func:`refined_upper_bound`), and
the explicit construction (:func:`construction_upper_bound`).
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Iterator

from rankcov.errors import BudgetExceeded
from rankcov.geometry import UnionBound, intersection_table
from rankcov.ilp import IlpSolution, solve_ilp
from rankcov.qcombinat import (
    SpaceParams,
    ball_volume,
    ceil_log,
    floor_log,
    gauss_binomial,
    sphere_size,
)


class Method(str, enum.Enum):
    ILP = "ilp"
    SPHERE_COVERING = "sphere-covering"
    GREEDY = "greedy"
    MRD_REFINED = "mrd-refined"
    CONSTRUCTION = "construction"
    TRIVIAL = "singleton-trivial"
    ORACLE = "oracle-exact"

    def __str__(self) -> str:
        return self.value


LOWER_METHODS = (Method.ORACLE, Method.SPHERE_COVERING, Method.ILP, Method.TRIVIAL)
UPPER_METHODS = (Method.ORACLE, Method.CONSTRUCTION, Method.MRD_REFINED, Method.GREEDY, Method.TRIVIAL)
DEFAULT_METHODS = frozenset(
    {Method.ILP, Method.SPHERE_COVERING, Method.MRD_REFINED, Method.CONSTRUCTION, Method.TRIVIAL}
)


def parse_methods(text: str | Iterable[str]) -> frozenset[Method]:
    """Parse method tags; ``refined`` is accepted for ``mrd-refined``."""
    aliases = {"refined": Method.MRD_REFINED, "oracle": Method.ORACLE, "trivial": Method.TRIVIAL}
    items = text.split(",") if isinstance(text, str) else list(text)
    out = set()
    for item in items:
        item = str(item).strip()
        if not item:
            continue
        out.add(aliases.get(item) or Method(item))
    if not out:
        raise ValueError("no bound methods selected")
    return frozenset(out)


@dataclass(frozen=True)
class Limits:
    """Work budgets. ``None`` means unlimited."""

    node_limit: int | None = 2_000
    step_limit: int | None = 10_000_000
    oracle_space: int = 2**6


@dataclass(frozen=True)
class BoundResult:
    params: SpaceParams
    rho: int
    direction: str
    value: int
    method: Method
    unavailable: tuple[Method, ...] = field(default=(), compare=False)


def _check_rho(params: SpaceParams, rho: int, low: int = 0) -> None:
    if not low <= rho <= params.n:
        raise ValueError(f"rho must lie in [{low}, {params.n}], got {rho}")


def sphere_covering_bound(params: SpaceParams, rho: int) -> int:
    """ceil(q^{mn} / v(rho))."""
    _check_rho(params, rho)
    return -(-params.space_size // ball_volume(params, rho))


# -- integer program ---------------------------------------------------------


@dataclass(frozen=True)
class IlpInstance:
    """Distance-distribution program for a vector at distance ``delta`` from the code.

    Variable t stands for A_{delta + t}, the number of codewords at distance
    delta + t; distances below delta carry no variable.
    """

    params: SpaceParams
    rho: int
    delta: int
    cost: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]
    rhs: tuple[int, ...]
    lower: tuple[int, ...]
    upper: tuple[int | None, ...]


def ilp_instance(params: SpaceParams, rho: int, delta: int, cap_delta: bool = True) -> IlpInstance:
    """Build the covering program. One row per radius r:
    sum_i A_i * sum_{s <= rho} J(r, s, i) >= N_r.

    With ``cap_delta`` the variable A_delta is also bounded by N_delta, as every
    other A_i is bounded by N_i.
    """
    _check_rho(params, rho)
    if not 0 <= delta <= rho:
        raise ValueError(f"delta must lie in [0, {rho}], got {delta}")
    n = params.n
    J = intersection_table(params).J
    dists = range(delta, n + 1)
    rows = tuple(tuple(sum(J[r][s][i] for s in range(rho + 1)) for i in dists) for r in range(n + 1))
    rhs = tuple(sphere_size(params, r) for r in range(n + 1))
    lower = tuple(1 if i == delta else 0 for i in dists)
    upper = tuple(sphere_size(params, i) if (i > delta or cap_delta) else None for i in dists)
    return IlpInstance(params, rho, delta, (1,) * len(lower), rows, rhs, lower, upper)


def solve_ilp_instance(inst: IlpInstance, node_limit: int | None = 2_000) -> IlpSolution:
    return solve_ilp(
        inst.cost,
        inst.rows,
        inst.rhs,
        inst.lower,
        inst.upper,
        node_limit=node_limit if node_limit is not None else float("inf"),
    )


def ilp_lower_bound(
    params: SpaceParams,
    rho: int,
    delta: int,
    node_limit: int | None = 2_000,
    cap_delta: bool = True,
) -> int:
    """T_delta, the exact optimum of the covering program at this delta.

    Raises:
        BudgetExceeded: when branch and bound needs more than ``node_limit`` nodes.
    """
    return solve_ilp_instance(ilp_instance(params, rho, delta, cap_delta), node_limit).value


def ilp_best_lower_bound(
    params: SpaceParams, rho: int, node_limit: int | None = 2_000, cap_delta: bool = True
) -> int:
    """max over 0 <= delta <= rho of T_delta."""
    return max(ilp_lower_bound(params, rho, d, node_limit, cap_delta) for d in range(rho + 1))


# -- MRD codes and the refined greedy recursion ------------------------------


@functools.lru_cache(maxsize=None)
def mrd_weight_distribution(params: SpaceParams, d: int, r: int) -> int:
    """Number of rank-r codewords in a linear (n, n-d+1, d) MRD code."""
    q, m, n = params.q, params.m, params.n
    if not 1 <= d <= n:
        raise ValueError(f"d must lie in [1, {n}], got {d}")
    if not 0 <= r <= n:
        raise ValueError(f"r must lie in [0, {n}], got {r}")
    if r == 0:
        return 1
    if r < d:
        return 0
    total = sum(
        (-1) ** j * q ** comb(j, 2) * gauss_binomial(r, j, q) * (q ** (m * (r - d + 1 - j)) - 1)
        for j in range(r - d + 1)
    )
    return gauss_binomial(n, r, q) * total


def mrd_distance(params: SpaceParams, k: int) -> int:
    """d_k = n - ceil(log_{q^m}(k + 1)) + 1."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return params.n - ceil_log(params.qm, k + 1) + 1


@dataclass(frozen=True)
class MrdRefinement:
    """Overlap accounting for the k-th codeword added in nested MRD order.

    ``mu[l - d_k]`` is the number of earlier codewords placed at distance l,
    filling small distances first; since I(rho, l) is non-increasing in l, this
    is the worst case.
    """

    params: SpaceParams
    rho: int
    k: int
    d_k: int
    a: int
    mu: tuple[int, ...]
    newly_covered_lower_bound: int


def mrd_refinement(params: SpaceParams, rho: int, k: int) -> MrdRefinement:
    _check_rho(params, rho)
    n = params.n
    a = min(n, 2 * rho)
    d = mrd_distance(params, k)
    v = ball_volume(params, rho)
    if d >= 2 * rho + 1:
        return MrdRefinement(params, rho, k, d, a, (), v)
    overlap = intersection_table(params)
    remaining = k
    mu = []
    lost = 0
    for l in range(d, a + 1):
        take = min(mrd_weight_distribution(params, d, l), remaining)
        remaining -= take
        mu.append(take)
        lost += take * overlap.ball(rho, l)
    return MrdRefinement(params, rho, k, d, a, tuple(mu), max(v - lost, 0))


def mrd_new_coverage(params: SpaceParams, rho: int, k: int) -> int:
    """Lower bound on the vectors newly covered by codeword c_k of the nested
    MRD sequence, given the k codewords before it."""
    return mrd_refinement(params, rho, k).newly_covered_lower_bound


class _OverlapSchedule:
    """Sum of mu_l * I(rho, l) as a function of k for one value of d_k.

    The greedy fill makes this piecewise linear in k with breakpoints at the
    cumulative weight counts, so it is evaluated with a forward-moving pointer.
    """

    def __init__(self, params: SpaceParams, rho: int, d: int) -> None:
        a = min(params.n, 2 * rho)
        overlap = intersection_table(params)
        self.slopes = []
        self.starts = []  # k at which each segment starts
        self.offsets = []  # accumulated overlap at segment start
        start, acc = 0, 0
        for l in range(d, a + 1):
            cap = mrd_weight_distribution(params, d, l)
            if cap == 0:
                continue
            slope = overlap.ball(rho, l)
            self.starts.append(start)
            self.offsets.append(acc)
            self.slopes.append(slope)
            start += cap
            acc += cap * slope
        self.end = start
        self.total = acc
        self.segment = 0

    def __call__(self, k: int) -> int:
        if k >= self.end:
            return self.total
        seg = self.segment
        while seg + 1 < len(self.starts) and self.starts[seg + 1] <= k:
            seg += 1
        self.segment = seg
        return self.offsets[seg] + (k - self.starts[seg]) * self.slopes[seg]


def mrd_seed(params: SpaceParams, rho: int) -> tuple[int, int]:
    """(K_0, u_{K_0}) for the (n, n-a, a+1) MRD code with a = min(n, 2 rho)."""
    _check_rho(params, rho, 1)
    a = min(params.n, 2 * rho)
    size = params.qm ** (params.n - a)
    return size, params.space_size - size * ball_volume(params, rho)


def _greedy_step(u: int, k: int, volume: int, total: int, union: UnionBound) -> int:
    denom = min(total - k, union(u))
    return u - (-(-u * volume // denom))


def greedy_upper_bound(
    params: SpaceParams,
    rho: int,
    seed_size: int,
    seed_uncovered: int,
    step_limit: int | None = None,
) -> int:
    """First k at which the greedy recursion reaches zero uncovered vectors,
    starting from a code of ``seed_size`` words leaving ``seed_uncovered``
    vectors uncovered.

    Raises:
        BudgetExceeded: after ``step_limit`` steps without reaching zero.
    """
    _check_rho(params, rho)
    if seed_size < 1:
        raise ValueError("seed_size must be >= 1")
    if not 0 <= seed_uncovered <= params.space_size:
        raise ValueError("seed_uncovered must lie in [0, q^{mn}]")
    volume = ball_volume(params, rho)
    union = UnionBound(params, rho)
    total = params.space_size
    k, u = seed_size, seed_uncovered
    steps = 0
    while u > 0:
        if step_limit is not None and steps >= step_limit:
            raise BudgetExceeded(f"greedy recursion exceeded {step_limit} steps")
        nxt = max(_greedy_step(u, k, volume, total, union), 0)
        if nxt >= u:
            raise ArithmeticError(f"greedy recursion stalled at k={k}, u={u}")
        u = nxt
        k += 1
        steps += 1
    return k


@dataclass(frozen=True)
class GreedyState:
    k: int
    u: int
    h: int | None = None


def refined_trajectory(params: SpaceParams, rho: int, use_mrd: bool = True) -> Iterator[GreedyState]:
    """Every state (k, u'_k, h_k) of the double recursion until u'_k = 0.

    A direct, unoptimized transcription; :func:`refined_upper_bound` is the
    fast path. With ``use_mrd=False`` the h sequence is ignored and this is the
    plain greedy recursion from the MRD seed.
    """
    volume = ball_volume(params, rho)
    union = UnionBound(params, rho)
    total = params.space_size
    k, u = mrd_seed(params, rho)
    h = u
    yield GreedyState(k, u, h if use_mrd else None)
    while u > 0:
        h = max(h - mrd_new_coverage(params, rho, k), 0)
        greedy = _greedy_step(u, k, volume, total, union)
        u = max(min(h, greedy) if use_mrd else greedy, 0)
        k += 1
        yield GreedyState(k, u, h if use_mrd else None)


def refined_upper_bound(
    params: SpaceParams,
    rho: int,
    step_limit: int | None = None,
    use_mrd: bool = True,
) -> int:
    """min{k : u'_k = 0} for the greedy recursion refined by nested MRD codes.

    Raises:
        BudgetExceeded: after ``step_limit`` recursion steps.
    """
    _check_rho(params, rho, 1)
    n, qm = params.n, params.qm
    volume = ball_volume(params, rho)
    union = UnionBound(params, rho)
    total = params.space_size
    k, u = mrd_seed(params, rho)
    h = u
    if step_limit is not None and sphere_covering_bound(params, rho) - k > step_limit:
        # Every step adds one codeword, and no covering is smaller than this.
        raise BudgetExceeded(f"refined recursion needs more than {step_limit} steps")

    # Hot loop: everything below is kept in locals.
    powers = [qm**a for a in range(n + 1)]
    prefix = union._prefix
    gaps = [volume - union._overlap[n - l] for l in range(n + 1)]
    layer = floor_log(qm, u) if u > 0 else 0
    d = mrd_distance(params, k)
    # d_k stays put while k + 1 <= (q^m)^(n - d + 1).
    next_change = powers[n - d + 1] if d > 1 else total
    schedule = _OverlapSchedule(params, rho, d) if d <= 2 * rho else None
    limit = step_limit if step_limit is not None else -1
    steps = 0
    while u > 0:
        if steps == limit:
            raise BudgetExceeded(f"refined recursion exceeded {step_limit} steps")
        if k >= next_change:
            d = mrd_distance(params, k)
            next_change = powers[n - d + 1] if d > 1 else total
            schedule = _OverlapSchedule(params, rho, d) if d <= 2 * rho else None
        if use_mrd:
            if schedule is None:
                h -= volume
            else:
                gain = volume - schedule(k)
                if gain > 0:
                    h -= gain
            if h < 0:
                h = 0
        while u < powers[layer]:
            layer -= 1
        bound = prefix[layer] + (u - powers[layer]) * gaps[layer]
        if bound > total:
            bound = total
        room = total - k
        denom = room if room < bound else bound
        nxt = u - (-(-u * volume // denom))
        if use_mrd and h < nxt:
            nxt = h
        if nxt < 0:
            nxt = 0
        if nxt >= u:
            raise ArithmeticError(f"refined recursion stalled at k={k}, u={u}")
        u = nxt
        k += 1
        steps += 1
    return k


def construction_upper_bound(params: SpaceParams, rho: int) -> int:
    """Size of the explicit covering code: sum_{i <= n - rho} C(n, i)(q^{m-rho} - 1)^i."""
    _check_rho(params, rho, 1)
    q, m, n = params.q, params.m, params.n
    return sum(comb(n, i) * (q ** (m - rho) - 1) ** i for i in range(n - rho + 1))


# -- aggregation ---------------------------------------------------------------


def best_bounds(
    params: SpaceParams,
    rho: int,
    methods: Iterable[Method | str] = DEFAULT_METHODS,
    limits: Limits = Limits(),
) -> tuple[BoundResult, BoundResult]:
    """Best lower and upper bound among the enabled methods.

    Methods whose budget runs out are skipped and listed in ``unavailable``.
    Ties go to the method listed first in ``LOWER_METHODS``/``UPPER_METHODS``.
    """
    methods = parse_methods(methods)
    _check_rho(params, rho)
    n, total = params.n, params.space_size
    lower: dict[Method, int] = {}
    upper: dict[Method, int] = {}
    missing: list[Method] = []

    if rho >= n:
        # A single codeword covers everything.
        return (
            BoundResult(params, rho, "lower", 1, Method.TRIVIAL),
            BoundResult(params, rho, "upper", 1, Method.TRIVIAL),
        )
    # The trivial bounds are always available as a fallback.
    lower[Method.TRIVIAL] = 1
    upper[Method.TRIVIAL] = total
    if Method.SPHERE_COVERING in methods:
        lower[Method.SPHERE_COVERING] = sphere_covering_bound(params, rho)
    if Method.ILP in methods:
        try:
            lower[Method.ILP] = ilp_best_lower_bound(params, rho, limits.node_limit)
        except BudgetExceeded:
            missing.append(Method.ILP)
    if Method.ORACLE in methods and params.q in (2, 3):
        if total <= limits.oracle_space:
            from rankcov.exactcodes import exact_min_covering

            exact = exact_min_covering(params, rho, budget=limits.oracle_space)
            lower[Method.ORACLE] = upper[Method.ORACLE] = exact
        else:
            missing.append(Method.ORACLE)
    if rho >= 1 and Method.CONSTRUCTION in methods:
        upper[Method.CONSTRUCTION] = construction_upper_bound(params, rho)
    if rho >= 1 and Method.MRD_REFINED in methods:
        try:
            upper[Method.MRD_REFINED] = refined_upper_bound(params, rho, limits.step_limit)
        except BudgetExceeded:
            missing.append(Method.MRD_REFINED)
    if rho >= 1 and Method.GREEDY in methods:
        try:
            upper[Method.GREEDY] = refined_upper_bound(params, rho, limits.step_limit, use_mrd=False)
        except BudgetExceeded:
            missing.append(Method.GREEDY)

    lo_method = max((m for m in LOWER_METHODS if m in lower), key=lambda m: (lower[m], -LOWER_METHODS.index(m)))
    up_method = min((m for m in UPPER_METHODS if m in upper), key=lambda m: (upper[m], UPPER_METHODS.index(m)))
    lo = BoundResult(params, rho, "lower", lower[lo_method], lo_method, tuple(missing))
    up = BoundResult(params, rho, "upper", upper[up_method], up_method, tuple(missing))
    if lo.value > up.value:
        raise ArithmeticError(f"lower bound {lo.value} exceeds upper bound {up.value}")
    return lo, up
