"""Exact plane geometry over rational coordinates.

Scalars are `fractions.Fraction` throughout, so every predicate in this
module is decided exactly.  Square roots never appear as scalars; they are
enclosed in dyadic intervals (`sqrt_interval`) whose width contracts
geometrically with the requested precision, which is what the certified
comparison machinery in the rest of the package is built on.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import NoIntersection

ExactScalar = Fraction


def scalar(value, den=None) -> Fraction:
    """Coerce ints, strings like '5/2', or pairs into an exact scalar."""
    if den is not None:
        return Fraction(value, den)
    return Fraction(value)


@dataclass(frozen=True, slots=True)
class Point:
    x: Fraction
    y: Fraction


def pt(x, y) -> Point:
    """Build a Point, coercing each coordinate through Fraction."""
    return Point(Fraction(x), Fraction(y))


def squared_distance(p: Point, q: Point) -> Fraction:
    dx = p.x - q.x
    dy = p.y - q.y
    return dx * dx + dy * dy


class Orientation(enum.IntEnum):
    CLOCKWISE = -1
    COLLINEAR = 0
    COUNTERCLOCKWISE = 1


def orientation(a: Point, b: Point, c: Point) -> Orientation:
    """Orientation of the ordered triple (a, b, c), decided exactly."""
    cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    if cross > 0:
        return Orientation.COUNTERCLOCKWISE
    if cross < 0:
        return Orientation.CLOCKWISE
    return Orientation.COLLINEAR


@dataclass(frozen=True, slots=True)
class Segment:
    a: Point
    b: Point

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError("segment endpoints must be distinct")


def _collinear_overlap_is_positive(s: Segment, t: Segment) -> bool:
    # All four endpoints collinear; reduce to 1D along the dominant axis.
    dx = abs(s.a.x - s.b.x)
    dy = abs(s.a.y - s.b.y)
    key = (lambda p: p.x) if dx >= dy else (lambda p: p.y)
    lo1, hi1 = sorted((key(s.a), key(s.b)))
    lo2, hi2 = sorted((key(t.a), key(t.b)))
    return min(hi1, hi2) > max(lo1, lo2)


def segments_properly_cross(s: Segment, t: Segment) -> bool:
    """True iff the segments meet at a point interior to both, or overlap
    in a collinear sub-segment of positive length.

    Sharing only an endpoint, or an endpoint of one lying in the interior
    of the other, does not count: the meeting point must be interior to
    both segments.
    """
    o1 = orientation(s.a, s.b, t.a)
    o2 = orientation(s.a, s.b, t.b)
    o3 = orientation(t.a, t.b, s.a)
    o4 = orientation(t.a, t.b, s.b)
    if o1 == o2 == o3 == o4 == Orientation.COLLINEAR:
        return _collinear_overlap_is_positive(s, t)
    return o1 * o2 < 0 and o3 * o4 < 0


# ---------------------------------------------------------------------------
# Dyadic intervals and square-root enclosures


@dataclass(frozen=True, slots=True)
class Interval:
    """Closed interval [lo, hi] with the precision it was computed at.

    Endpoints are exact rationals (dyadic whenever produced by
    `sqrt_interval` or outward rounding).  `bits` records the precision
    request that produced the enclosure; it is bookkeeping, not a
    constraint on the endpoints.
    """

    lo: Fraction
    hi: Fraction
    bits: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"inverted interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, value) -> bool:
        return self.lo <= value <= self.hi

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(self.lo + other.lo, self.hi + other.hi,
                        min(self.bits, other.bits))

    def scale(self, factor: Fraction) -> "Interval":
        if factor < 0:
            return Interval(self.hi * factor, self.lo * factor, self.bits)
        return Interval(self.lo * factor, self.hi * factor, self.bits)


def round_dyadic(value: Fraction, frac_bits: int, mode: str = "nearest") -> Fraction:
    """Round an exact rational onto the grid of multiples of 2^-frac_bits."""
    shifted = value * (1 << frac_bits)
    if mode == "floor":
        m = shifted.numerator // shifted.denominator
    elif mode == "ceil":
        m = -((-shifted.numerator) // shifted.denominator)
    elif mode == "nearest":
        m = (2 * shifted.numerator + shifted.denominator) // (2 * shifted.denominator)
    else:
        raise ValueError(f"unknown rounding mode {mode!r}")
    return Fraction(m, 1 << frac_bits)


def sqrt_interval(value: Fraction, bits: int) -> Interval:
    """Dyadic enclosure of sqrt(value) with relative width at most 2^(1-bits).

    The enclosure [s/2^t, (s+1)/2^t] has absolute width exactly 2^-t where
    t is chosen from the magnitude of `value` so that 2^-t never exceeds
    2^(1-bits) * sqrt(value).  Doubling `bits` doubles t, so enclosures
    shrink monotonically under refinement.
    """
    if bits < 1:
        raise ValueError("bits must be positive")
    if value < 0:
        raise ValueError("sqrt of negative value")
    if value == 0:
        return Interval(Fraction(0), Fraction(0), bits)
    p = value.numerator
    q = value.denominator
    # sqrt(value) > 2^h for h = floor((bitlen(p) - bitlen(q) - 1) / 2).
    h = (p.bit_length() - q.bit_length() - 1) // 2
    t = bits - 1 - h
    if t >= 0:
        num, den = p << (2 * t), q
    else:
        num, den = p, q << (-2 * t)
    n, rem = divmod(num, den)
    s = isqrt(n)
    if rem == 0 and s * s == n:
        exact = Fraction(s, 1 << t) if t >= 0 else Fraction(s << (-t))
        return Interval(exact, exact, bits)
    if t >= 0:
        grid = 1 << t
        return Interval(Fraction(s, grid), Fraction(s + 1, grid), bits)
    mult = 1 << (-t)
    return Interval(Fraction(s * mult), Fraction((s + 1) * mult), bits)


def distance_interval(p: Point, q: Point, bits: int) -> Interval:
    return sqrt_interval(squared_distance(p, q), bits)


# ---------------------------------------------------------------------------
# Circle-circle intersection
#
# With centers C1, C2 (Delta = C2 - C1, d2 = |Delta|^2) and squared radii
# R1, R2, the radical-axis foot is M = C1 + (t/d2) Delta for
# t = (d2 + R1 - R2)/2, and the intersection points are M +- sqrt(H) *
# perp(Delta) with perp(v) = (-v_y, v_x) and H = (R1*d2 - t^2)/d2^2.
# M and H are exact rationals; only sqrt(H) needs an enclosure.


@dataclass(frozen=True, slots=True)
class CircleCrossing:
    """Dyadic approximation of a circle-circle intersection point.

    `residual_c1` and `residual_c2` are the exact values of
    |point - center|^2 - radius^2 for the two circles; they quantify how
    far the rounded point sits off each circle.  `tangent` marks the
    degenerate single-point case, where the returned point is exact and
    both residuals vanish.
    """

    point: Point
    residual_c1: Fraction
    residual_c2: Fraction
    tangent: bool = False


def _radical_foot(c1: Point, r1_sq: Fraction, c2: Point, r2_sq: Fraction):
    dx = c2.x - c1.x
    dy = c2.y - c1.y
    d2 = dx * dx + dy * dy
    if d2 == 0:
        raise NoIntersection("concentric circles")
    t = (d2 + r1_sq - r2_sq) / 2
    mx = c1.x + t * dx / d2
    my = c1.y + t * dy / d2
    h = (r1_sq * d2 - t * t) / (d2 * d2)
    return dx, dy, d2, Point(mx, my), h


def _classify_empty(d2, r1_sq, r2_sq) -> str:
    # H < 0: decide disjoint vs nested by comparing d against r1 + r2 and
    # |r1 - r2| using only rational arithmetic (square both sides).
    gap = d2 - r1_sq - r2_sq
    if gap > 0 and gap * gap > 4 * r1_sq * r2_sq:
        return "disjoint circles"
    return "nested circles"


def circle_intersection_box(c1: Point, r1_sq: Fraction, c2: Point,
                            r2_sq: Fraction, bits: int):
    """Axis-aligned box enclosing the intersection point left of C1->C2.

    Returns (x_interval, y_interval) whose Euclidean diameter is at most
    2^-bits.  Raises NoIntersection when the circles are disjoint, nested,
    or merely tangent (a tangency has no left/right choice to make).
    """
    dx, dy, d2, m, h = _radical_foot(c1, r1_sq, c2, r2_sq)
    if h < 0:
        raise NoIntersection(_classify_empty(d2, r1_sq, r2_sq))
    if h == 0:
        raise NoIntersection("tangent circles admit no two-point crossing")
    # Offset is s * (-dy, dx) with s = sqrt(h); box diameter is
    # width(s) * |Delta|, so aim the sqrt precision at 2^-(bits+1) total.
    sb = bits + max(0, d2.numerator.bit_length() - d2.denominator.bit_length()) // 2 + 4
    target = Fraction(1, 1 << (2 * bits))
    while True:
        s = sqrt_interval(h, sb)
        wx = s.width * abs(dy)
        wy = s.width * abs(dx)
        if wx * wx + wy * wy <= target:
            break
        sb *= 2
    xs = (m.x - s.lo * dy, m.x - s.hi * dy)
    ys = (m.y + s.lo * dx, m.y + s.hi * dx)
    return (Interval(min(xs), max(xs), bits), Interval(min(ys), max(ys), bits))


def circle_intersection_upper(c1: Point, r1_sq: Fraction, c2: Point,
                              r2_sq: Fraction, bits: int) -> CircleCrossing:
    """Dyadic point within 2^-bits of the intersection left of C1->C2.

    "Left" is relative to the directed line C1 -> C2, which for a
    west-to-east direction is the upper of the two intersection points.
    The result's coordinates lie on the dyadic grid with bits+2
    fractional bits; exact residuals against both circles are reported
    alongside.  A tangency returns the exact touching point flagged
    `tangent` instead of raising.
    """
    dx, dy, d2, m, h = _radical_foot(c1, r1_sq, c2, r2_sq)
    if h < 0:
        raise NoIntersection(_classify_empty(d2, r1_sq, r2_sq))
    if h == 0:
        return CircleCrossing(m, Fraction(0), Fraction(0), tangent=True)
    bx, by = circle_intersection_box(c1, r1_sq, c2, r2_sq, bits + 2)
    grid = bits + 2
    p = Point(round_dyadic((bx.lo + bx.hi) / 2, grid),
              round_dyadic((by.lo + by.hi) / 2, grid))
    return CircleCrossing(p,
                          squared_distance(p, c1) - r1_sq,
                          squared_distance(p, c2) - r2_sq)
