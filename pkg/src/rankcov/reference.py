"""Published bounds on K_R(2^m, n, rho) for 2 <= m <= 7, 2 <= n <= m, 1 <= rho <= 6.

Markers on a value name its source:

    h   integer-program lower bound (``ilp``)
    I   MRD-refined greedy upper bound (``mrd-refined``)
    J   explicit construction (``construction``)
    i   earlier lower bound evaluated with exact ball intersections (not reproduced)

Unmarked ranges come from earlier work and are not reproduced either. A single
value means the exact K_R is known.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

_GRID = """
2 2 | 3 | 1
3 2 | 4 | 1
3 3 | 11-16 | 4 | 1
4 2 | 7-8 | 1
4 3 | 40-64 | 4-7 | 1
4 4 | 293-722 | 10-48 | 3-5J | 1
5 2 | 12-16 | 1
5 3 | 154-256 | 6-8 | 1
5 4 | 2267-4096 | 33-256 | 4-8 | 1
5 5 | 34894-2^17 | 233-2773I | h10-32 | 3-6J | 1
6 2 | 23-32 | 1
6 3 | 601-1024 | 11-16 | 1
6 4 | 17822-2^15 | 124-256 | 6-16 | 1
6 5 | 550395-2^20 | 1770-2^14 | 31-256 | i4-16 | 1
6 6 | 17318410-2^26 | 27065-401784I | 214-4092I | 9-154J | 3-7J | 1
7 2 | 44-64 | 1
7 3 | 2372-4096 | 20-32 | 1
7 4 | 141231-2^18 | 484-1024 | i10-16 | 1
7 5 | 8735289-2^24 | 13835-2^15 | i112-1024 | i6-16 | 1
7 6 | 549829402-2^30 | 42229-2^22 | i1585-2^15 | 29-708I | i4-16 | 1
7 7 | 34901004402-2^37 | 13205450-233549482I | i23979-573590I | 203-5686I | h9-211J | 3-8J
"""

_CELL = re.compile(r"^(?P<lmark>[hi]?)(?P<lo>[0-9^]+)(?:-(?P<hi>[0-9^]+)(?P<umark>[IJ]?))?$")

LOWER_SOURCES = {"h": "ilp", "i": None, "": None}
UPPER_SOURCES = {"I": "mrd-refined", "J": "construction", "": None}


def _number(token: str) -> int:
    if "^" in token:
        base, exp = token.split("^")
        return int(base) ** int(exp)
    return int(token)


@dataclass(frozen=True)
class PublishedCell:
    m: int
    n: int
    rho: int
    lower: int
    upper: int
    lower_mark: str
    upper_mark: str
    text: str

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def lower_method(self) -> str | None:
        """Our method tag that produced the published lower bound, if any."""
        return LOWER_SOURCES[self.lower_mark]

    @property
    def upper_method(self) -> str | None:
        return UPPER_SOURCES[self.upper_mark]


def _parse() -> dict[tuple[int, int, int], PublishedCell]:
    cells = {}
    for line in _GRID.strip().splitlines():
        head, *entries = (part.strip() for part in line.split("|"))
        m, n = map(int, head.split())
        for rho, text in enumerate(entries, start=1):
            match = _CELL.match(text)
            if match is None:
                raise ValueError(f"bad cell {text!r}")
            lo = _number(match["lo"])
            hi = _number(match["hi"]) if match["hi"] else lo
            cells[m, n, rho] = PublishedCell(
                m, n, rho, lo, hi, match["lmark"], match["umark"] or "", text
            )
    return cells


PUBLISHED: dict[tuple[int, int, int], PublishedCell] = _parse()
