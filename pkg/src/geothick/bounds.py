"""Bounds on thickness, geometric thickness and book thickness of K_n and K_{a,b}.

All integer outputs are produced with exact rational arithmetic; the one
irrational constant, sqrt(7), is pinned between rational bounds that are
refined until the ceiling in question is decided.
"""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, comb, isqrt
from typing import Iterable, NamedTuple


class DomainError(ValueError):
    pass


class LowerSource(enum.Enum):
    THICKNESS_FORMULA = "ThicknessFormula"
    SEPARATOR_FORMULA = "SeparatorFormula"
    K15_THEOREM = "K15Theorem"


class UpperSource(enum.Enum):
    TWO_RING = "TwoRing"


def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def thickness_complete(n: int) -> int:
    """Graph-theoretical thickness of K_n."""
    if n < 1:
        raise DomainError("n must be positive")
    if n <= 4:
        return 1
    if n <= 8:
        return 2
    if n <= 10:
        return 3
    return _ceil(Fraction(n + 2, 6))


@dataclass(frozen=True)
class SeparatorBoundTerms:
    """One term of the max: two parallel lines cut off ``x`` points on each side."""

    n: int
    x: int

    def __post_init__(self):
        if not 1 <= self.x <= self.n / 2:
            raise DomainError(f"split size {self.x} outside 1..{self.n // 2}")
        if self.denominator <= 0:
            raise DomainError(f"non-positive denominator for n={self.n}, x={self.x}")

    @property
    def numerator(self) -> int:
        return comb(self.n, 2) - 2 * comb(self.x, 2) - 3

    @property
    def denominator(self) -> int:
        return 3 * self.n - 2 * self.x - 7

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)


def separator_terms(n: int) -> list[SeparatorBoundTerms]:
    return [
        SeparatorBoundTerms(n, x)
        for x in range(1, n // 2 + 1)
        if 3 * n - 2 * x - 7 > 0
    ]


def separator_bound(n: int) -> Fraction | None:
    """Maximum of the separator fraction over integer split sizes, or None if no term is defined."""
    terms = separator_terms(n)
    if not terms:
        return None
    return max(t.value for t in terms)


def lower_bound_with_source(n: int) -> tuple[int, LowerSource]:
    if n < 1:
        raise DomainError("n must be positive")
    if n < 12:
        return thickness_complete(n), LowerSource.THICKNESS_FORMULA
    if n == 15:
        return 4, LowerSource.K15_THEOREM
    return _ceil(separator_bound(n)), LowerSource.SEPARATOR_FORMULA


def geo_lower_bound(n: int) -> int:
    return lower_bound_with_source(n)[0]


# -- sqrt(7) enclosure ----------------------------------------------------------


def sqrt7_bounds(digits: int) -> tuple[Fraction, Fraction]:
    """Rationals ``lo < sqrt(7) < hi`` with ``hi - lo = 10**-digits``."""
    scale = 10**digits
    root = isqrt(7 * scale * scale)
    return Fraction(root, scale), Fraction(root + 1, scale)


CLOSED_FORM_OFFSET = Fraction(342, 1000)


def closed_form_slope_bounds(digits: int) -> tuple[Fraction, Fraction]:
    lo, hi = sqrt7_bounds(digits)
    return (3 - hi) / 2, (3 - lo) / 2


def geo_lower_bound_closed_form(n: int) -> int:
    """``ceil((3 - sqrt 7)/2 * n + 0.342)`` for n >= 12, decided exactly."""
    if n < 12:
        raise DomainError("closed form holds for n >= 12 only")
    digits = 13
    while True:
        slope_lo, slope_hi = closed_form_slope_bounds(digits)
        lo = _ceil(slope_lo * n + CLOSED_FORM_OFFSET)
        hi = _ceil(slope_hi * n + CLOSED_FORM_OFFSET)
        if lo == hi:
            return lo
        digits *= 2


def closed_form_gaps(n_max: int) -> list[int]:
    """Values of n in 12..n_max where the integer maximum beats the closed form."""
    return [
        n for n in range(12, n_max + 1)
        if _ceil(separator_bound(n)) > geo_lower_bound_closed_form(n)
    ]


def geo_upper_bound(n: int) -> int:
    if n < 1:
        raise DomainError("n must be positive")
    return max(1, ceil(n / 4))


def book_thickness_complete(n: int) -> int:
    if n < 1:
        raise DomainError("n must be positive")
    if n <= 2:
        return 1
    return (n + 1) // 2


# -- complete bipartite -------------------------------------------------------


class BipartiteBounds(NamedTuple):
    lower: int
    upper: int
    # "euler" bounds ordinary thickness; "k68-theorem" is a geometric-thickness result
    lower_source: str = "euler"


def bipartite_bounds(a: int, b: int) -> BipartiteBounds:
    if a < 1 or b < 1:
        raise DomainError("both sides must be non-empty")
    denom = 2 * a + 2 * b - 4
    if denom <= 0:
        raise DomainError(f"2a+2b-4 = {denom} is not positive")
    upper = (min(a, b) + 1) // 2
    if {a, b} == {6, 8}:
        return BipartiteBounds(3, upper, "k68-theorem")
    return BipartiteBounds(_ceil(Fraction(a * b, denom)), upper, "euler")


def bipartite_equality_threshold(b: int) -> int:
    """Any ``a`` strictly above this makes both thickness notions of K_{a,b} coincide."""
    if b < 3:
        raise DomainError("threshold defined for b >= 3")
    if b % 2 == 0:
        return (b - 2) ** 2 // 2
    return (b - 1) * (b - 2)


# -- table --------------------------------------------------------------------


@dataclass(frozen=True)
class BoundsRow:
    n: int
    lower: int
    upper: int
    lower_source: LowerSource
    upper_source: UpperSource = UpperSource.TWO_RING

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"lower bound {self.lower} exceeds upper {self.upper} at n={self.n}")


def bounds_table(n_max: int) -> list[BoundsRow]:
    if n_max < 1:
        raise DomainError("n_max must be positive")
    rows = []
    for n in range(1, n_max + 1):
        lower, source = lower_bound_with_source(n)
        rows.append(BoundsRow(n, lower, geo_upper_bound(n), source))
    return rows


def table_csv(rows: Iterable[BoundsRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "lower", "upper", "lower_source"])
    for r in rows:
        writer.writerow([r.n, r.lower, r.upper, r.lower_source.value])
    return buf.getvalue()


def group_ranges(rows: Iterable[BoundsRow]) -> list[tuple[int, int, int, int]]:
    """Collapse consecutive rows with equal bounds into ``(first, last, lower, upper)``."""
    groups: list[list[int]] = []
    for r in rows:
        if groups and groups[-1][2:] == [r.lower, r.upper] and groups[-1][1] == r.n - 1:
            groups[-1][1] = r.n
        else:
            groups.append([r.n, r.n, r.lower, r.upper])
    return [tuple(g) for g in groups]


def table_text(rows: Iterable[BoundsRow], blocks: int = 3) -> str:
    """Side-by-side blocks of ``n | LB | UB`` ranges."""
    groups = group_ranges(rows)
    per_block = -(-len(groups) // blocks) if groups else 0
    columns = [groups[i:i + per_block] for i in range(0, len(groups), per_block)] or [[]]

    def cell(g):
        first, last, lower, upper = g
        label = f"{first}" if first == last else f"{first}-{last}"
        return f"{label:>7} {lower:>3} {upper:>3}"

    blank = " " * 15
    header = "  ".join(f"{'n':>7} {'LB':>3} {'UB':>3}" for _ in columns)
    lines = [header]
    for i in range(per_block):
        cells = [cell(col[i]) if i < len(col) else blank for col in columns]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines) + "\n"
