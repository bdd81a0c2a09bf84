"""Command-line front end.

Exit status: 0 success, 1 verification mismatch, 2 invalid arguments,
3 a requested computation ran out of budget.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from rankcov import bounds as bd
from rankcov import exactcodes as ec
from rankcov.errors import BudgetExceeded
from rankcov.geometry import (
    ball_intersection,
    intersection_table,
    sphere_intersection,
    union_volume_bound,
)
from rankcov.krawtchouk import krawtchouk
from rankcov.qcombinat import SpaceParams, ball_volume
from rankcov.reference import PUBLISHED

EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

CSV_HEADER = ["m", "n", "rho", "lower", "lower_method", "upper", "upper_method"]
PRIOR_WORK = "n/a (prior-work bound)"


class UsageError(ValueError):
    pass


def parse_range(text: str) -> range:
    """``a..b`` (inclusive) or a single integer."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            return range(int(a), int(b) + 1)
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or a..b, got {text!r}") from None
    return range(value, value + 1)


def _limits(args) -> bd.Limits:
    if args.allow_long:
        return bd.Limits(node_limit=None, step_limit=None, oracle_space=args.oracle_space)
    return bd.Limits(args.budget_nodes, args.budget_steps, args.oracle_space)


def _params(args) -> SpaceParams:
    try:
        return SpaceParams(args.q, args.m, args.n)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None


# -- bounds --------------------------------------------------------------------


def cmd_bounds(args, out) -> int:
    params = _params(args)
    methods = bd.parse_methods(args.methods)
    start = time.perf_counter()
    lower, upper = bd.best_bounds(params, args.rho, methods, _limits(args))
    elapsed = time.perf_counter() - start
    if params.transposed:
        out.write(f"# transposed to m={params.m} n={params.n}\n")
    out.write(f"lower {lower.value} {lower.method}\n")
    out.write(f"upper {upper.value} {upper.method}\n")
    missing = [m for m in lower.unavailable if m in methods]
    for method in missing:
        out.write(f"unavailable {method}\n")
    out.write(f"# time {elapsed:.3f}s\n")
    return EXIT_BUDGET if missing else 0


# -- table -----------------------------------------------------------------------


@dataclass(frozen=True)
class TableEntry:
    m: int
    n: int
    rho: int
    lower: int
    lower_method: str
    upper: int
    upper_method: str
    skipped: tuple[str, ...] = ()

    def row(self) -> list[str]:
        return [str(v) for v in (self.m, self.n, self.rho, self.lower, self.lower_method, self.upper, self.upper_method)]


def compute_entry(q: int, m: int, n: int, rho: int, methods, limits: bd.Limits) -> TableEntry:
    params = SpaceParams(q, m, n)
    lower, upper = bd.best_bounds(params, rho, methods, limits)
    skipped = tuple(str(x) for x in lower.unavailable if x != bd.Method.ORACLE)
    return TableEntry(m, n, rho, lower.value, str(lower.method), upper.value, str(upper.method), skipped)


def _entry_job(job):
    return compute_entry(*job)


def table_cells(ms: range, ns: range | None, rhos: range) -> list[tuple[int, int, int]]:
    cells = []
    for m in ms:
        for n in ns if ns is not None else range(2, m + 1):
            if not 1 <= n <= m:
                continue
            for rho in rhos:
                if 0 <= rho <= n:
                    cells.append((m, n, rho))
    return cells


def compute_table(q, cells, methods, limits: bd.Limits, workers: int = 1) -> list[TableEntry]:
    jobs = [(q, m, n, rho, methods, limits) for m, n, rho in cells]
    if workers <= 1 or len(jobs) <= 1:
        return [_entry_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_entry_job, jobs))


def format_csv(entries) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for e in entries:
        writer.writerow(e.row())
    return buf.getvalue()


def parse_csv(text: str) -> list[TableEntry]:
    lines = [line for line in text.splitlines() if line and not line.startswith("#")]
    reader = csv.reader(lines)
    header = next(reader)
    if header != CSV_HEADER:
        raise ValueError(f"unexpected header {header}")
    return [
        TableEntry(int(m), int(n), int(r), int(lo), lm, int(up), um)
        for m, n, r, lo, lm, up, um in reader
    ]


def _published_note(q: int, e: TableEntry) -> str:
    cell = PUBLISHED.get((e.m, e.n, e.rho)) if q == 2 else None
    if cell is None:
        return ""
    parts = [f"published {cell.text}"]
    if not cell.exact and e.rho < e.n:
        sides = [side for side, method in (("lower", cell.lower_method), ("upper", cell.upper_method)) if method is None]
        if sides:
            parts.append(f"{'/'.join(sides)} {PRIOR_WORK}")
    return "; ".join(parts)


def format_markdown(q: int, entries) -> str:
    lines = ["| m | n | rho | lower | upper | notes |", "|---|---|---|---|---|---|"]
    for e in entries:
        notes = [_published_note(q, e)] + [f"skipped {s}" for s in e.skipped]
        notes = "; ".join(x for x in notes if x)
        lines.append(
            f"| {e.m} | {e.n} | {e.rho} | {e.lower} ({e.lower_method}) | {e.upper} ({e.upper_method}) | {notes} |"
        )
    return "\n".join(lines) + "\n"


def cmd_table(args, out) -> int:
    methods = bd.parse_methods(args.methods) | {bd.Method.ORACLE}
    limits = _limits(args)
    cells = table_cells(args.m, args.n, args.rho)
    start = time.perf_counter()
    entries = compute_table(args.q, cells, methods, limits, ec.thread_count())
    elapsed = time.perf_counter() - start
    out.write(f"# K_R({args.q}^m, n, rho) bounds\n")
    if args.format == "csv":
        out.write(format_csv(entries))
    else:
        out.write(format_markdown(args.q, entries))
    skipped = [e for e in entries if e.skipped]
    for e in skipped:
        out.write(
            f"# skipped {','.join(e.skipped)} at m={e.m} n={e.n} rho={e.rho} "
            "(budget exhausted; rerun with --allow-long)\n"
        )
    if args.q == 2:
        for e in entries:
            cell = PUBLISHED.get((e.m, e.n, e.rho))
            if cell is not None and e.rho < e.n and not cell.exact:
                if cell.lower_method is None or cell.upper_method is None:
                    out.write(f"# m={e.m} n={e.n} rho={e.rho}: published {cell.text}; {PRIOR_WORK} not reproduced\n")
    out.write(f"# time {elapsed:.3f}s\n")
    return EXIT_BUDGET if skipped else 0


# -- verify ------------------------------------------------------------------------


def _compare_tables(params: SpaceParams, budget: int, out) -> int:
    formula = intersection_table(params)
    brute = ec.brute_intersections(params, budget=budget)
    n = params.n
    for name in ("J", "I"):
        f, b = getattr(formula, name), getattr(brute, name)
        for u in range(n + 1):
            for s in range(n + 1):
                for w in range(n + 1):
                    if f[u][s][w] != b[u][s][w]:
                        out.write(
                            f"MISMATCH {name}({u},{s},{w}) at q={params.q} m={params.m} n={params.n}: "
                            f"formula {f[u][s][w]} enumeration {b[u][s][w]}\n"
                        )
                        return EXIT_MISMATCH
    out.write(f"ok geometry-oracle q={params.q} m={params.m} n={params.n}: {2 * (n + 1) ** 3} entries match\n")
    return 0


def verify_geometry(args, out) -> int:
    params = _params(args)
    return _compare_tables(params, args.budget_space, out)


def verify_construction(args, out) -> int:
    params = _params(args)
    rho = args.rho
    code = ec.construction_code(params, rho, budget=args.budget_space)
    expected = bd.construction_upper_bound(params, rho)
    if len(code) != expected:
        out.write(f"MISMATCH cardinality {len(code)} != formula {expected}\n")
        return EXIT_MISMATCH
    radius = ec.covering_radius(code, budget=args.budget_space)
    if radius > rho:
        out.write(f"MISMATCH covering radius {radius} > rho={rho}\n")
        return EXIT_MISMATCH
    space = ec.rank_space(params)
    members = set(code.words.tolist())
    worst = 0
    for x in range(space.size):
        C, dist = ec.construction_cover(space.matrix(x), rho, params.q)
        word = space.encode_matrix(C)
        if word not in members or dist > rho or dist != space.rank(space.sub(x, word)):
            out.write(f"MISMATCH constructive cover of vector {x}: distance {dist}, member {word in members}\n")
            out.write(f"{space.matrix(x)}\n")
            return EXIT_MISMATCH
        worst = max(worst, dist)
    out.write(
        f"ok construction q={params.q} m={params.m} n={params.n} rho={rho}: |C| = {len(code)}, "
        f"covering radius {radius} confirmed, constructive distance <= {worst}\n"
    )
    return 0


def verify_mrd(args, out) -> int:
    params = _params(args)
    n = params.n
    for d in range(1, n + 1):
        code = ec.gabidulin_code(params, n - d + 1, budget=args.budget_space)
        hist = code.rank_histogram()
        formula = [bd.mrd_weight_distribution(params, d, r) for r in range(n + 1)]
        if hist != formula:
            out.write(f"MISMATCH d={d}: enumeration {hist} formula {formula}\n")
            return EXIT_MISMATCH
        out.write(f"ok mrd-distribution d={d}: {hist}\n")
    return 0


def verify_table(args, out) -> int:
    """Recompute every published value this package claims to reproduce."""
    limits = _limits(args)
    failures = budget = 0
    for (m, n, rho), cell in sorted(PUBLISHED.items()):
        params = SpaceParams(2, m, n)
        checks = []
        if rho >= n:
            checks.append(("trivial", lambda p=params, r=rho: bd.best_bounds(p, r)[1].value, 1))
        elif cell.exact and 2 ** (m * n) <= limits.oracle_space:
            checks.append(("oracle-exact", lambda p=params, r=rho: ec.exact_min_covering(p, r), cell.lower))
        if cell.lower_method == "ilp":
            checks.append(("ilp", lambda p=params, r=rho: bd.ilp_best_lower_bound(p, r, limits.node_limit), cell.lower))
        if cell.upper_method == "construction":
            checks.append(("construction", lambda p=params, r=rho: bd.construction_upper_bound(p, r), cell.upper))
        if cell.upper_method == "mrd-refined":
            checks.append(("mrd-refined", lambda p=params, r=rho: bd.refined_upper_bound(p, r, limits.step_limit), cell.upper))
        for name, fn, want in checks:
            try:
                got = fn()
            except BudgetExceeded:
                out.write(f"skip {name} m={m} n={n} rho={rho}: budget exhausted (use --allow-long)\n")
                budget += 1
                continue
            status = "ok" if got == want else "MISMATCH"
            failures += got != want
            out.write(f"{status} {name} m={m} n={n} rho={rho}: computed {got}, published {want}\n")
    if failures:
        return EXIT_MISMATCH
    return EXIT_BUDGET if budget else 0


SUITES = {
    "geometry-oracle": verify_geometry,
    "construction": verify_construction,
    "mrd-distribution": verify_mrd,
    "table-regression": verify_table,
}


def cmd_verify(args, out) -> int:
    return SUITES[args.suite](args, out)


# -- geometry / oracle ---------------------------------------------------------------


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.kind} needs {' '.join(missing)}")
    return [getattr(args, n) for n in names]


def cmd_geometry(args, out) -> int:
    params = _params(args)
    if args.kind == "J":
        value = sphere_intersection(params, *_need(args, "u", "s", "w"))
    elif args.kind == "I":
        value = ball_intersection(params, *_need(args, "u", "s", "w"))
    elif args.kind == "B":
        rho, K = _need(args, "rho", "K")
        value = union_volume_bound(params, rho, K)
    elif args.kind == "volume":
        (rho,) = _need(args, "rho")
        value = ball_volume(params, rho)
    else:
        value = krawtchouk(params, *_need(args, "j", "i"))
    out.write(f"{value}\n")
    return 0


def cmd_oracle(args, out) -> int:
    params = _params(args)
    if args.what == "min-covering":
        value = ec.exact_min_covering(params, args.rho, budget=args.budget_space, node_limit=args.budget_search)
        out.write(f"{value}\n")
        return 0
    if args.code == "construction":
        code = ec.construction_code(params, args.rho, budget=args.budget_space)
    else:
        if args.k is None:
            raise UsageError("--k is required for the gabidulin code")
        code = ec.gabidulin_code(params, args.k, budget=args.budget_space)
    out.write(f"{ec.covering_radius(code, budget=args.budget_space)}\n")
    return 0


# -- argument parsing ------------------------------------------------------------------


def _space_args(p: argparse.ArgumentParser, rho: bool = True, required: bool = True) -> None:
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--m", type=int, required=required)
    p.add_argument("--n", type=int, required=required)
    if rho:
        p.add_argument("--rho", type=int, required=required)


def _budget_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget-nodes", type=int, default=2_000, help="branch-and-bound / search node limit")
    p.add_argument("--budget-steps", type=int, default=10_000_000, help="greedy recursion step limit")
    p.add_argument("--budget-space", type=int, default=ec.DEFAULT_BUDGET, help="largest space to enumerate")
    p.add_argument("--oracle-space", type=int, default=2**6, help="largest space for exact K_R search")
    p.add_argument("--allow-long", action="store_true", help="lift node and step limits")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rankcov", description="Bounds on rank-metric covering codes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="best lower and upper bound for one parameter set")
    _space_args(p)
    p.add_argument("--methods", default=",".join(sorted(str(m) for m in bd.DEFAULT_METHODS)))
    _budget_args(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("table", help="grid of bounds")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--m", type=parse_range, required=True)
    p.add_argument("--n", type=parse_range, default=None, help="default: 2..m")
    p.add_argument("--rho", type=parse_range, required=True)
    p.add_argument("--format", choices=("csv", "md"), default="csv")
    p.add_argument("--methods", default=",".join(sorted(str(m) for m in bd.DEFAULT_METHODS)))
    _budget_args(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="oracle-versus-formula sweeps")
    p.add_argument("suite", choices=sorted(SUITES))
    _space_args(p, required=False)
    _budget_args(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("geometry", help="evaluate one geometric quantity")
    p.add_argument("kind", choices=("J", "I", "B", "volume", "krawtchouk"))
    _space_args(p, rho=False)
    for name in ("u", "s", "w", "rho", "K", "j", "i"):
        p.add_argument(f"--{name}", type=int)
    p.set_defaults(func=cmd_geometry)

    p = sub.add_parser("oracle", help="exhaustive search on small spaces")
    p.add_argument("what", choices=("min-covering", "radius"))
    _space_args(p)
    p.add_argument("--code", choices=("construction", "gabidulin"), default="construction")
    p.add_argument("--k", type=int)
    p.add_argument("--budget-search", type=int, default=10_000_000, help="exact search node limit")
    _budget_args(p)
    p.set_defaults(func=cmd_oracle)
    return parser


_VERIFY_DEFAULTS = {
    "geometry-oracle": dict(m=3, n=3),
    "construction": dict(m=4, n=4, rho=3),
    "mrd-distribution": dict(m=3, n=3),
    "table-regression": {},
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        for key, value in _VERIFY_DEFAULTS[args.suite].items():
            if getattr(args, key) is None:
                setattr(args, key, value)
    try:
        return args.func(args, out)
    except BudgetExceeded as exc:
        out.write(f"unavailable: {exc}\n")
        return EXIT_BUDGET
    except (UsageError, ValueError) as exc:
        print(f"rankcov: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
