"""Exact planar predicates over rational coordinates.

Everything here works on :class:`fractions.Fraction` (or plain ``int``)
coordinates, so no answer ever depends on rounding.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Iterable, Sequence


class GeometryError(ValueError):
    pass


class DuplicatePoint(GeometryError):
    pass


class DegenerateSegment(GeometryError):
    pass


def to_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction.

    Floats are refused: they would smuggle binary rounding into exact data.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact coordinate")


@dataclass(frozen=True, slots=True)
class RationalPoint:
    x: Fraction
    y: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", to_fraction(self.x))
        object.__setattr__(self, "y", to_fraction(self.y))

    def __iter__(self):
        yield self.x
        yield self.y

    def __repr__(self) -> str:
        return f"RationalPoint({self.x}, {self.y})"


@dataclass(frozen=True, slots=True)
class Segment:
    a: RationalPoint
    b: RationalPoint

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise DegenerateSegment(f"zero-length segment at {self.a}")


class CrossKind(enum.Enum):
    DISJOINT = "Disjoint"
    SHARED_ENDPOINT = "SharedEndpoint"
    PROPER_CROSSING = "ProperCrossing"
    COLLINEAR_OVERLAP = "CollinearOverlap"
    ENDPOINT_ON_INTERIOR = "EndpointOnInterior"

    @property
    def is_conflict(self) -> bool:
        return self not in (CrossKind.DISJOINT, CrossKind.SHARED_ENDPOINT)


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def orient_raw(ax, ay, bx, by, cx, cy) -> int:
    return _sign((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))


def orientation(p: RationalPoint, q: RationalPoint, r: RationalPoint) -> int:
    """Sign of the cross product ``(q - p) x (r - p)``: +1 left turn, -1 right, 0 collinear."""
    return orient_raw(p.x, p.y, q.x, q.y, r.x, r.y)


def _between(a, b, c) -> bool:
    # c within the closed coordinate range spanned by a and b
    return min(a, b) <= c <= max(a, b)


def _on_closed_segment(ax, ay, bx, by, px, py) -> bool:
    """Assumes p is collinear with a and b."""
    return _between(ax, bx, px) and _between(ay, by, py)


def classify_raw(a, b, c, d) -> CrossKind:
    """Classify segments ``ab`` and ``cd`` given as coordinate pairs.

    Coordinates may be ints or Fractions; callers on hot paths pass ints.
    """
    ax, ay = a
    bx, by = b
    cx, cy = c
    dx, dy = d
    # cheap bounding-box rejection
    if (max(ax, bx) < min(cx, dx) or max(cx, dx) < min(ax, bx)
            or max(ay, by) < min(cy, dy) or max(cy, dy) < min(ay, by)):
        return CrossKind.DISJOINT

    shared = (a == c) + (a == d) + (b == c) + (b == d)
    if shared >= 2:
        return CrossKind.COLLINEAR_OVERLAP
    if shared == 1:
        if a == c:
            p, q, r = a, b, d
        elif a == d:
            p, q, r = a, b, c
        elif b == c:
            p, q, r = b, a, d
        else:
            p, q, r = b, a, c
        # p shared, q and r the free ends; overlap iff collinear and same direction
        if orient_raw(p[0], p[1], q[0], q[1], r[0], r[1]) == 0:
            dot = (q[0] - p[0]) * (r[0] - p[0]) + (q[1] - p[1]) * (r[1] - p[1])
            if dot > 0:
                return CrossKind.COLLINEAR_OVERLAP
        return CrossKind.SHARED_ENDPOINT

    o1 = orient_raw(ax, ay, bx, by, cx, cy)
    o2 = orient_raw(ax, ay, bx, by, dx, dy)
    o3 = orient_raw(cx, cy, dx, dy, ax, ay)
    o4 = orient_raw(cx, cy, dx, dy, bx, by)

    if o1 == 0 and o2 == 0:
        # collinear; the bbox test already established the intervals meet,
        # and touching at one point would require a shared endpoint
        return CrossKind.COLLINEAR_OVERLAP
    if o1 * o2 < 0 and o3 * o4 < 0:
        return CrossKind.PROPER_CROSSING
    if ((o1 == 0 and _on_closed_segment(ax, ay, bx, by, cx, cy))
            or (o2 == 0 and _on_closed_segment(ax, ay, bx, by, dx, dy))
            or (o3 == 0 and _on_closed_segment(cx, cy, dx, dy, ax, ay))
            or (o4 == 0 and _on_closed_segment(cx, cy, dx, dy, bx, by))):
        return CrossKind.ENDPOINT_ON_INTERIOR
    return CrossKind.DISJOINT


def classify_crossing(s1: Segment, s2: Segment) -> CrossKind:
    return classify_raw(
        (s1.a.x, s1.a.y), (s1.b.x, s1.b.y), (s2.a.x, s2.a.y), (s2.b.x, s2.b.y)
    )


def integer_coordinates(points: Sequence[RationalPoint]) -> list[tuple[int, int]]:
    """Scale all points by the lcm of their denominators.

    Every predicate here is invariant under positive scaling, so the integer
    copy answers the same questions much faster than Fraction arithmetic.
    """
    if not points:
        return []
    scale = reduce(lcm, (d for p in points for d in (p.x.denominator, p.y.denominator)), 1)
    return [
        (p.x.numerator * (scale // p.x.denominator), p.y.numerator * (scale // p.y.denominator))
        for p in points
    ]


def check_distinct(points: Iterable[RationalPoint]) -> None:
    seen: dict[RationalPoint, int] = {}
    for i, p in enumerate(points):
        if p in seen:
            raise DuplicatePoint(f"points {seen[p]} and {i} coincide at {p}")
        seen[p] = i


def convex_hull_raw(coords: Sequence[tuple]) -> list[int]:
    """Strict hull (Andrew's monotone chain) on coordinate pairs, CCW indices."""
    n = len(coords)
    order = sorted(range(n), key=lambda i: coords[i])
    if n <= 2:
        return order

    def turn(i, j, k):
        return orient_raw(*coords[i], *coords[j], *coords[k])

    lower: list[int] = []
    for i in order:
        while len(lower) >= 2 and turn(lower[-2], lower[-1], i) <= 0:
            lower.pop()
        lower.append(i)
    upper: list[int] = []
    for i in reversed(order):
        while len(upper) >= 2 and turn(upper[-2], upper[-1], i) <= 0:
            upper.pop()
        upper.append(i)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and coords[hull[0]] == coords[hull[1]]:
        return hull[:1]
    return hull


def convex_hull(points: Sequence[RationalPoint]) -> list[int]:
    """Indices of the extreme points in counterclockwise order.

    Points lying on a hull edge without being a corner are left out.
    """
    if not points:
        raise GeometryError("convex hull of an empty point set")
    check_distinct(points)
    return convex_hull_raw(integer_coordinates(points))


def twice_area_raw(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def has_collinear_triple(coords: Sequence[tuple]) -> tuple[int, int, int] | None:
    n = len(coords)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                if orient_raw(*coords[i], *coords[j], *coords[k]) == 0:
                    return (i, j, k)
    return None
