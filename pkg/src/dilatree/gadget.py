"""Hardness-reduction instances from subset partitioning.

A weight sequence is encoded as a set of 8n+8 planar points whose best
spanning-tree dilation dips to 3/2 exactly when the weights split into
two equal-sum halves.  Points sit on or near a line of slope 3/4 and
its mirror image; the n choice points live on exact circle pairs and
are stored as dyadic approximations tight enough that a rational
threshold P/Q separates yes- from no-instances.

The module builds the construction exactly, audits its defining
identities and inequalities, rescales everything to integers, and
decides the partition question two ways: through a certified search of
the constrained tree family, and through a subset-sum dynamic program
used as an independent oracle.
"""

from dataclasses import dataclass
from fractions import Fraction

from .dilation import (PointSet, Tree, Verdict, compare_to_threshold,
                       critical_edges)
from .errors import NoIntersection, PrecisionInsufficient, SumTooLarge
from .exactgeom import (Interval, Orientation, Point,
                        circle_intersection_upper, orientation, round_dyadic,
                        sqrt_interval, squared_distance)
from .radical import SqrtSum


def _four(j: int) -> int:
    return 1 << (2 * j)


# ---------------------------------------------------------------------------
# instance and solution types


@dataclass(frozen=True)
class PartitionInstance:
    """Sequence of positive integer weights to be split into equal halves."""

    alphas_dot: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "alphas_dot", tuple(self.alphas_dot))
        if not self.alphas_dot:
            raise ValueError("need at least one weight")
        for a in self.alphas_dot:
            if not isinstance(a, int) or a < 1:
                raise ValueError(f"weights must be positive integers, got {a!r}")

    @property
    def n(self) -> int:
        return len(self.alphas_dot)

    @property
    def sigma_dot(self) -> int:
        return sum(self.alphas_dot)


@dataclass(frozen=True)
class PartitionSolution:
    """Disjoint index sets with equal weight sums."""

    A: frozenset
    A_prime: frozenset

    def __post_init__(self):
        object.__setattr__(self, "A", frozenset(self.A))
        object.__setattr__(self, "A_prime", frozenset(self.A_prime))
        if self.A & self.A_prime:
            raise ValueError("solution halves must be disjoint")

    def consistent_with(self, alphas_dot) -> bool:
        n = len(alphas_dot)
        if self.A | self.A_prime != set(range(1, n + 1)):
            return False
        return sum(alphas_dot[i - 1] for i in self.A) \
            == sum(alphas_dot[i - 1] for i in self.A_prime)


# ---------------------------------------------------------------------------
# canonical point layout
#
# [q1, q2, a_1..a_{n+1}, b_1..b_n, c_1..c_n, d_1..d_n, p1, p2, mirrors].
# The mirror block repeats indices 2..4n+4 reflected in the y-axis, so a
# right-half index j maps to its primed twin at j + 4n + 3.

_Q1 = 0
_Q2 = 1


class _PointLayout:
    """Index arithmetic shared by the exact and the integerized instance."""

    @property
    def q1(self) -> int:
        return _Q1

    @property
    def q2(self) -> int:
        return _Q2

    def a(self, i: int) -> int:
        if not 1 <= i <= self.n + 1:
            raise IndexError(f"a_{i} out of range")
        return 1 + i

    def b(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise IndexError(f"b_{i} out of range")
        return self.n + 2 + i

    def c(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise IndexError(f"c_{i} out of range")
        return 2 * self.n + 2 + i

    def d(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise IndexError(f"d_{i} out of range")
        return 3 * self.n + 2 + i

    @property
    def p1(self) -> int:
        return 4 * self.n + 3

    @property
    def p2(self) -> int:
        return 4 * self.n + 4

    def mirror(self, j: int) -> int:
        """Index of the y-axis reflection of point j (q1, q2 are fixed)."""
        half = 4 * self.n + 3
        if j in (_Q1, _Q2):
            return j
        if 2 <= j <= half + 1:
            return j + half
        if half + 2 <= j <= 2 * half + 1:
            return j - half
        raise IndexError(f"point index {j} out of range")


@dataclass(frozen=True)
class _CirclePair:
    """Exact defining data of one choice point: two centers, squared radii."""

    center_c: Point
    r1_sq: Fraction
    center_a: Point
    r2_sq: Fraction


@dataclass(frozen=True)
class Gadget(_PointLayout):
    """Exact reduction point set with its defining data.

    `points` holds exact coordinates; the n choice points are dyadic
    approximations whose accuracy is recorded in `d_bits` and whose
    exact defining circles live in `d_defs`.  `rational_lengths` maps
    the edges the construction defines to their exact ideal lengths,
    which is what makes the threshold identity checkable as a rational
    equation rather than a numeric limit.
    """

    n: int
    alphas: tuple[Fraction, ...]
    sigma_total: Fraction
    xi: Fraction
    points: PointSet
    d_defs: tuple[_CirclePair, ...]
    d_bits: int
    rational_lengths: dict

    def __post_init__(self):
        if len(self.points) != 8 * self.n + 8:
            raise ValueError("point count does not match n")
        if len(self.alphas) != self.n or len(self.d_defs) != self.n:
            raise ValueError("per-index data does not match n")

    @property
    def sigma_dot(self) -> int:
        sd = 1 / (self.xi * _four(self.n + 4))
        if sd.denominator != 1:
            raise ValueError("stored gap does not come from integer weights")
        return sd.numerator

    @property
    def alphas_dot(self) -> tuple[int, ...]:
        sd = self.sigma_dot
        out = []
        for al in self.alphas:
            v = al * 10 * sd
            if v.denominator != 1:
                raise ValueError("stored alphas are not scaled integers")
            out.append(v.numerator)
        return tuple(out)


@dataclass(frozen=True)
class IntegerInstance(_PointLayout):
    """Integer-coordinate instance with decision threshold P/Q."""

    k: int
    points: PointSet
    P: int
    Q: int
    epsilon_bound: Fraction

    def __post_init__(self):
        m = len(self.points)
        if m % 8 != 0 or m < 16:
            raise ValueError("point count must be 8n+8")
        n = self.n
        if 2 * self.P != 3 * self.Q + 2:
            raise ValueError("threshold is not 3/2 plus half the gap")
        sd2 = self.Q // (2 * _four(n + 4))
        if self.Q != 2 * _four(n + 4) * sd2 or sd2 < 1:
            raise ValueError("threshold denominator has the wrong shape")
        if (1 << (self.k - 4 * n - 22)) <= n * sd2:
            raise ValueError("fractional precision too small for the gap")
        limit = 2 * n + self.k + 15
        for p in self.points.points:
            for coord in (p.x, p.y):
                if coord.denominator != 1:
                    raise ValueError("coordinates must be integers")
                if abs(coord.numerator).bit_length() > limit:
                    raise ValueError("coordinate exceeds the bit budget")

    @property
    def n(self) -> int:
        return (len(self.points) - 8) // 8

    @property
    def sigma_dot(self) -> int:
        return self.Q // (2 * _four(self.n + 4))


# ---------------------------------------------------------------------------
# construction


def rounding_bits(inst: PartitionInstance) -> int:
    """Smallest fractional bit count whose rounding error fits the gap.

    2^-k must stay below xi / 4^(n+7) / n so that moving every choice
    point by up to 2^-k shifts no tree's dilation across the threshold.
    """
    m = inst.n * inst.sigma_dot
    return 4 * inst.n + 22 + m.bit_length()


def _right_half_points(inst: PartitionInstance, alphas, d_bits):
    n = inst.n
    a = [None]
    for i in range(1, n + 2):
        t = _four(i - 1) - 1
        a.append(Point(Fraction(5, 2) + 4 * t, Fraction(3 * t)))
    b = [None]
    c = [None]
    for i in range(1, n + 1):
        step = Fraction(_four(i - 1), 5)
        b.append(Point(a[i].x + 4 * step, a[i].y + 3 * step))
        c.append(Point(b[i].x + 12 * step, b[i].y + 9 * step))
    tp = Fraction(_four(n), 9) - Fraction(179, 1800)
    an1 = a[n + 1]
    p1 = Point(an1.x + 3 * tp, an1.y - 4 * tp)
    p2 = Point(an1.x + 12 * tp, an1.y - 16 * tp)
    q1 = Point(Fraction(0), Fraction(0))
    q2 = Point(Fraction(0), Fraction(11, 18) - Fraction(25, 9) * _four(n))

    d = [None]
    defs = []
    for i in range(1, n + 1):
        r1 = 9 * _four(i - 1) + alphas[i - 1]
        r1_sq = r1 * r1
        r2_sq = Fraction(4 * _four(i - 1) ** 2)
        # aim the intersection precision so even the squared residuals
        # land below the 2^-d_bits budget
        pad = (18 * _four(i - 1) + 3).bit_length()
        crossing = circle_intersection_upper(c[i], r1_sq, a[i + 1], r2_sq,
                                             d_bits + pad)
        if crossing.tangent:
            raise NoIntersection("choice-point circles merely touch")
        d.append(crossing.point)
        defs.append(_CirclePair(c[i], r1_sq, a[i + 1], r2_sq))
    return a, b, c, d, p1, p2, q1, q2, tuple(defs)


def _labels(n):
    right = ["q1", "q2"]
    right += [f"a{i}" for i in range(1, n + 2)]
    right += [f"b{i}" for i in range(1, n + 1)]
    right += [f"c{i}" for i in range(1, n + 1)]
    right += [f"d{i}" for i in range(1, n + 1)]
    right += ["p1", "p2"]
    return right + [lab + "'" for lab in right[2:]]


def _ideal_lengths(g_n, alphas, layout):
    n = g_n
    L = {}

    def put(u, v, value):
        key = (u, v) if u < v else (v, u)
        L[key] = Fraction(value)

    lay = layout
    put(lay.q1, lay.a(1), Fraction(5, 2))
    put(lay.q1, lay.mirror(lay.a(1)), Fraction(5, 2))
    put(lay.q1, lay.q2, Fraction(25, 9) * _four(n) - Fraction(11, 18))
    for i in range(1, n + 1):
        s = _four(i - 1)
        pairs = [
            (lay.a(i), lay.b(i), s),
            (lay.b(i), lay.c(i), 3 * s),
            (lay.c(i), lay.d(i), 9 * s + alphas[i - 1]),
            (lay.d(i), lay.a(i + 1), 2 * s),
            (lay.c(i), lay.a(i + 1), 11 * s),
            (lay.a(i), lay.a(i + 1), 15 * s),
        ]
        for u, v, value in pairs:
            put(u, v, value)
            put(lay.mirror(u), lay.mirror(v), value)
    tail = [
        (lay.a(n + 1), lay.p1, Fraction(5, 9) * _four(n) - Fraction(179, 360)),
        (lay.p1, lay.p2, Fraction(5, 3) * _four(n) - Fraction(179, 120)),
        (lay.a(n + 1), lay.p2,
         Fraction(20, 9) * _four(n) - Fraction(179, 90)),
        (lay.a(1), lay.a(n + 1), 5 * (_four(n) - 1)),
    ]
    for u, v, value in tail:
        put(u, v, value)
        put(lay.mirror(u), lay.mirror(v), value)
    q2p2 = Fraction(20, 3) * _four(n) - Fraction(101, 30)
    put(lay.q2, lay.p2, q2p2)
    put(lay.q2, lay.mirror(lay.p2), q2p2)
    return L


class _LayoutView(_PointLayout):
    def __init__(self, n):
        self.n = n


def build_gadget(inst: PartitionInstance, d_bits: int | None = None) -> Gadget:
    """Construct the exact 8n+8-point reduction set for a weight sequence.

    `d_bits` controls how finely the n choice points are approximated;
    the default leaves eight guard bits beyond what `integerize` will
    round to, so that rounding step is exact grid arithmetic.
    """
    if d_bits is None:
        d_bits = rounding_bits(inst) + 8
    if d_bits < 32:
        raise ValueError("choice points need at least 32 fractional bits")
    n = inst.n
    sd = inst.sigma_dot
    alphas = tuple(Fraction(ad, 10 * sd) for ad in inst.alphas_dot)
    a, b, c, d, p1, p2, q1, q2, defs = _right_half_points(inst, alphas, d_bits)

    right = [q1, q2] + a[1:] + b[1:] + c[1:] + d[1:] + [p1, p2]
    mirrored = [Point(-p.x, p.y) for p in right[2:]]
    ps = PointSet(right + mirrored, labels=_labels(n))

    layout = _LayoutView(n)
    return Gadget(
        n=n,
        alphas=alphas,
        sigma_total=sum(alphas, Fraction(0)),
        xi=Fraction(1, _four(n + 4) * sd),
        points=ps,
        d_defs=defs,
        d_bits=d_bits,
        rational_lengths=_ideal_lengths(n, alphas, layout),
    )


def auxiliary_dstar(g: Gadget, i: int) -> Point:
    """Foot of the i-th choice point on the slope-3/4 line.

    Lies exactly on the segment between consecutive line anchors, at the
    same distance from the right anchor as the choice point itself.
    """
    if not 1 <= i <= g.n:
        raise IndexError(f"index {i} out of range")
    c = g.points[g.c(i)]
    step = Fraction(9 * _four(i - 1), 5)
    return Point(c.x + 4 * step, c.y + 3 * step)


def dstar_gap(g: Gadget, i: int, bits: int = 96) -> Interval:
    """Enclosure of the distance from the i-th choice point to its foot."""
    gap_sq = squared_distance(g.points[g.d(i)], auxiliary_dstar(g, i))
    return sqrt_interval(gap_sq, bits)


# ---------------------------------------------------------------------------
# integer rescaling

_SCALE_BASE = 1800  # clears every rational denominator in the construction


def integerize(g: Gadget, k: int | None = None) -> IntegerInstance:
    """Round the choice points to k fractional bits and scale to integers.

    All other coordinates have denominators dividing 1800, so after
    multiplying by 1800 * 2^k everything is an integer; the rounding of
    an already-dyadic coordinate to the coarser grid is exact.
    """
    n = g.n
    sd = g.sigma_dot
    if k is None:
        k = rounding_bits(PartitionInstance(g.alphas_dot))
    if g.d_bits < k:
        raise PrecisionInsufficient(
            f"choice points carry {g.d_bits} fractional bits, need {k}")
    scale = _SCALE_BASE << k

    half = 4 * n + 3
    d_lo = g.d(1)
    d_hi = g.d(n)
    scaled_right = []
    for j in range(half + 2):
        p = g.points[j]
        if d_lo <= j <= d_hi:
            x = round_dyadic(p.x, k, "nearest") * scale
            y = round_dyadic(p.y, k, "nearest") * scale
        else:
            x = p.x * scale
            y = p.y * scale
        if x.denominator != 1 or y.denominator != 1:
            raise ValueError(f"point {j} did not scale to integers")
        scaled_right.append(Point(x, y))
    mirrored = [Point(-p.x, p.y) for p in scaled_right[2:]]

    return IntegerInstance(
        k=k,
        points=PointSet(scaled_right + mirrored, labels=_labels(n)),
        P=3 * _four(n + 4) * sd + 1,
        Q=2 * _four(n + 4) * sd,
        epsilon_bound=Fraction(1, 1 << k),
    )


# ---------------------------------------------------------------------------
# tree family


def _critical_index_edges(lay) -> list:
    n = lay.n
    edges = [(lay.q1, lay.a(1)), (lay.a(n + 1), lay.p1), (lay.p1, lay.p2)]
    for i in range(1, n + 1):
        edges += [(lay.a(i), lay.b(i)), (lay.b(i), lay.c(i)),
                  (lay.d(i), lay.a(i + 1))]
    out = []
    for u, v in edges:
        out.append((u, v) if u < v else (v, u))
        mu, mv = lay.mirror(u), lay.mirror(v)
        out.append((mu, mv) if mu < mv else (mv, mu))
    return out


def _family_edges(lay, right_set, left_set, attach):
    n = lay.n
    edges = list(_critical_index_edges(lay))
    for i in range(1, n + 1):
        tgt = lay.d(i) if i in right_set else lay.a(i + 1)
        edges.append(tuple(sorted((lay.c(i), tgt))))
        mtgt = lay.mirror(lay.d(i)) if i in left_set \
            else lay.mirror(lay.a(i + 1))
        edges.append(tuple(sorted((lay.mirror(lay.c(i)), mtgt))))
    edges.append(tuple(sorted((lay.q2, attach))))
    return edges


def standard_tree(g, A) -> Tree:
    """Tree encoding a candidate half A: detours on the right for members
    of A, on the left for the rest, plus the forced edges."""
    A = frozenset(A)
    if not A <= set(range(1, g.n + 1)):
        raise ValueError("indices out of range")
    complement = set(range(1, g.n + 1)) - A
    edges = _family_edges(g, A, complement, g.q1)
    return Tree(8 * g.n + 8, edges)


def symbolic_path_length(g: Gadget, tree: Tree, u: int, v: int) -> Fraction:
    """Exact ideal length of the tree path, from the defined edge lengths."""
    total = Fraction(0)
    for edge in tree.path_edges(u, v):
        length = g.rational_lengths.get(edge)
        if length is None:
            raise ValueError(f"edge {edge} has no defined rational length")
        total += length
    return total


def symbolic_pair_ratio(g: Gadget, tree: Tree, u: int, v: int) -> Fraction:
    key = (u, v) if u < v else (v, u)
    direct = g.rational_lengths.get(key)
    if direct is None:
        raise ValueError(f"pair {key} has no defined rational distance")
    return symbolic_path_length(g, tree, u, v) / direct


# ---------------------------------------------------------------------------
# construction audit


@dataclass(frozen=True)
class LemmaCheck:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class LemmaReport:
    checks: tuple[LemmaCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]


def _check_distance_identities(g) -> LemmaCheck:
    name = "distance identities"
    count = 0
    for (u, v), length in sorted(g.rational_lengths.items()):
        # choice-point edges are defined by radii, not realized distances
        if u in range(g.d(1), g.d(g.n) + 1) or v in range(g.d(1), g.d(g.n) + 1):
            continue
        mu, mv = g.mirror(u), g.mirror(v)
        if (mu, mv) != (u, v) and u >= 4 * g.n + 5:
            continue
        if g.points.distance_sq(u, v) != length * length:
            return LemmaCheck(name, False,
                              f"|{u},{v}| differs from its defined value")
        count += 1
    return LemmaCheck(name, True, f"{count} squared identities hold exactly")


def _check_weights(g) -> LemmaCheck:
    name = "weight normalization"
    try:
        alphas_dot = g.alphas_dot
        sd = g.sigma_dot
    except ValueError as exc:
        return LemmaCheck(name, False, str(exc))
    if sum(g.alphas, Fraction(0)) != Fraction(1, 10):
        return LemmaCheck(name, False, "scaled weights do not sum to 1/10")
    if g.sigma_total != Fraction(1, 10):
        return LemmaCheck(name, False, "stored total is not 1/10")
    if sum(alphas_dot) != sd or any(ad < 1 for ad in alphas_dot):
        return LemmaCheck(name, False, "integer weights are inconsistent")
    return LemmaCheck(name, True, f"n={g.n}, total weight {sd}")


def _check_mirror_symmetry(g) -> LemmaCheck:
    name = "mirror symmetry"
    pts = g.points
    for j in (g.q1, g.q2):
        if pts[j].x != 0:
            return LemmaCheck(name, False, f"axis point {j} is off the axis")
    for j in range(2, 4 * g.n + 5):
        m = g.mirror(j)
        if pts[m].x != -pts[j].x or pts[m].y != pts[j].y:
            return LemmaCheck(name, False, f"point {m} is not the"
                                           f" reflection of {j}")
    return LemmaCheck(name, True, "primed points reflect exactly")


def _check_d_placement(g, bits) -> LemmaCheck:
    name = "choice-point placement"
    pts = g.points
    bound = Fraction(1, 1 << (g.d_bits - 4))
    a1 = pts[g.a(1)]
    an1 = pts[g.a(g.n + 1)]
    for i in range(1, g.n + 1):
        dpt = pts[g.d(i)]
        spec = g.d_defs[i - 1]
        for center, r_sq in ((spec.center_c, spec.r1_sq),
                             (spec.center_a, spec.r2_sq)):
            enc = sqrt_interval(squared_distance(dpt, center), bits)
            r = sqrt_interval(r_sq, bits)
            if enc.lo < r.lo - bound or enc.hi > r.hi + bound:
                return LemmaCheck(name, False,
                                  f"point d{i} sits off its defining circle")
        if orientation(a1, an1, dpt) is not Orientation.COUNTERCLOCKWISE:
            return LemmaCheck(name, False, f"d{i} is not above the line")
        if not dpt.y < pts[g.a(i + 1)].y:
            return LemmaCheck(name, False, f"d{i} is not below a{i + 1}")
    return LemmaCheck(name, True,
                      f"residuals under 2^-{g.d_bits - 4}, sides correct")


def _check_angle_bounds(g) -> LemmaCheck:
    name = "angle bounds"
    pts = g.points
    for i in range(1, g.n + 1):
        s16 = _four(i - 1) ** 2
        r1_sq = g.d_defs[i - 1].r1_sq
        # cosine theorem at the right anchor, all squared lengths rational
        cos = (125 * s16 - r1_sq) / (44 * s16)
        if not cos > 1 - Fraction(1, 22 * _four(i - 1)):
            return LemmaCheck(name, False, f"anchor angle at index {i} too wide")
        if not cos >= Fraction(21, 22):
            return LemmaCheck(name, False, f"anchor cosine at {i} below 21/22")
        dx = pts[g.d(i)].x - pts[g.c(i)].x
        if dx <= 0:
            return LemmaCheck(name, False, f"choice edge {i} points backwards")
        # horizontal cosine of the choice edge, squared to stay rational
        if not (91 * dx) ** 2 > 4624 * squared_distance(pts[g.c(i)],
                                                        pts[g.d(i)]):
            return LemmaCheck(name, False,
                              f"choice edge {i} is steeper than 68/91 allows")
    return LemmaCheck(name, True, "anchor and slope cosines all clear")


def _check_critical_set(g, bits) -> LemmaCheck:
    name = "critical set"
    expected = frozenset(_critical_index_edges(g))
    try:
        got = critical_edges(g.points, 8, 5)
    except Exception as exc:  # report, never throw
        return LemmaCheck(name, False, f"scan failed: {exc}")
    if got != expected:
        extra = sorted(got - expected)
        missing = sorted(expected - got)
        return LemmaCheck(name, False,
                          f"extra {extra[:4]}, missing {missing[:4]}")
    return LemmaCheck(name, True, f"exactly the {len(expected)} forced edges")


def _check_alternation(g) -> LemmaCheck:
    name = "alternation obstruction"
    pts = g.points
    for i in range(1, g.n + 1):
        db_sq = squared_distance(pts[g.d(i)], pts[g.b(i)])
        cd_sq = squared_distance(pts[g.c(i)], pts[g.d(i)])
        ad_sq = squared_distance(pts[g.a(i + 1)], pts[g.d(i)])
        # detour around both choice edges is too long: 5|db| + 5|bc| > 8|cd|
        gap = SqrtSum.sqrt_of(db_sq, coef=5) \
            + SqrtSum.rational(15 * _four(i - 1)) \
            - SqrtSum.sqrt_of(cd_sq, coef=8)
        if gap.sign() <= 0:
            return LemmaCheck(name, False, f"detour via b{i} is short enough")
        # while the anchor detour stays affordable, so cd is not forced
        slack = SqrtSum.sqrt_of(cd_sq, coef=8) \
            - SqrtSum.rational(55 * _four(i - 1)) \
            - SqrtSum.sqrt_of(ad_sq, coef=5)
        if slack.sign() <= 0:
            return LemmaCheck(name, False, f"choice edge {i} became forced")
    return LemmaCheck(name, True, "every index keeps exactly two choices")


def verify_gadget(g: Gadget, bits: int = 256) -> LemmaReport:
    """Audit the construction: identities, placements, and inequalities.

    Every check is certified with exact or interval arithmetic at the
    given precision; failures are collected in the report, not raised.
    """
    return LemmaReport(checks=(
        _check_distance_identities(g),
        _check_weights(g),
        _check_mirror_symmetry(g),
        _check_d_placement(g, bits),
        _check_angle_bounds(g),
        _check_critical_set(g, bits),
        _check_alternation(g),
    ))


# ---------------------------------------------------------------------------
# deciding the instance


def _recover_alphas_dot(ii: IntegerInstance) -> tuple[int, ...]:
    """Read the weights back out of the scaled choice-edge lengths."""
    n = ii.n
    sd = ii.sigma_dot
    scale = _SCALE_BASE << ii.k
    out = []
    for i in range(1, n + 1):
        d2 = squared_distance(ii.points[ii.c(i)], ii.points[ii.d(i)])
        enc = sqrt_interval(d2, 80)
        alpha = (enc.lo + enc.hi) / (2 * scale) - 9 * _four(i - 1)
        scaled = alpha * 10 * sd
        ad = (2 * scaled.numerator + scaled.denominator) \
            // (2 * scaled.denominator)
        if ad < 1:
            raise ValueError(f"choice edge {i} encodes no positive weight")
        out.append(ad)
    if sum(out) != sd:
        raise ValueError("recovered weights contradict the threshold")
    return tuple(out)


def _gray_masks(width: int):
    for m in range(1 << width):
        yield m ^ (m >> 1)


def decide_partition(instance):
    """Search the constrained tree family for a certified sub-threshold tree.

    Accepts either the exact gadget or its integerized form.  Tries every
    alternation pattern with every attachment of the hanging point, the
    forced attachment first; the first tree certified at most P/Q decodes
    into the partition halves.  Returns (solution, tree), or None when
    every combination is certified above the threshold.
    """
    lay = instance
    n = lay.n
    pts = lay.points
    if isinstance(instance, IntegerInstance):
        P, Q = instance.P, instance.Q
        alphas_dot = _recover_alphas_dot(instance)
    else:
        sd = instance.sigma_dot
        P = 3 * _four(n + 4) * sd + 1
        Q = 2 * _four(n + 4) * sd
        alphas_dot = instance.alphas_dot

    # the pairs whose dilation blows up on every wrong combination
    priority = [(lay.q2, lay.p2), (lay.q2, lay.mirror(lay.p2))]
    priority += [(lay.d(i), lay.mirror(lay.d(i))) for i in range(1, n + 1)]

    total = 8 * n + 8
    candidates = [lay.q1] + [j for j in range(total) if j > lay.q2]
    full = set(range(1, n + 1))
    for attach in candidates:
        for mask in _gray_masks(2 * n):
            right = {i for i in full if (mask >> (i - 1)) & 1}
            left = {i for i in full if (mask >> (n + i - 1)) & 1}
            tree = Tree(total, _family_edges(lay, right, left, attach))
            verdict = compare_to_threshold(pts, tree, P, Q,
                                           pair_order=priority)
            if verdict is Verdict.AT_MOST:
                sol = PartitionSolution(frozenset(right), frozenset(left))
                if not sol.consistent_with(alphas_dot):
                    raise ValueError("sub-threshold tree decodes to an"
                                     " invalid partition")
                return sol, tree
    return None


_ORACLE_SUM_CAP = 10 ** 6


def partition_oracle(inst: PartitionInstance):
    """Subset-sum dynamic program deciding the partition question directly."""
    sd = inst.sigma_dot
    if sd > _ORACLE_SUM_CAP:
        raise SumTooLarge(f"total weight {sd} exceeds {_ORACLE_SUM_CAP}")
    if sd % 2:
        return None
    target = sd // 2
    reachable = 1
    before = []
    for a in inst.alphas_dot:
        before.append(reachable)
        reachable |= reachable << a
    if not (reachable >> target) & 1:
        return None
    chosen = set()
    t = target
    for j in range(inst.n - 1, -1, -1):
        if not (before[j] >> t) & 1:
            chosen.add(j + 1)
            t -= inst.alphas_dot[j]
    sol = PartitionSolution(frozenset(chosen),
                            frozenset(range(1, inst.n + 1)) - frozenset(chosen))
    if not sol.consistent_with(inst.alphas_dot):
        raise ValueError("reconstruction produced an invalid split")
    return sol
