import itertools
import random
from fractions import Fraction
from math import isqrt

import pytest

from dilatree.dilation import (
    DilationReport, PointSet, Tree, Verdict, compare_to_threshold,
    critical_edges, crossing_edge_pairs, graph_dilation_bounds, pair_dilation,
    tree_dilation, tree_has_crossing, tree_path_length,
)
from dilatree.errors import PrecisionExhausted
from dilatree.exactgeom import pt


def test_pointset_validation():
    with pytest.raises(ValueError):
        PointSet([pt(0, 0)])
    with pytest.raises(ValueError):
        PointSet([pt(0, 0), pt(0, 0)])
    with pytest.raises(ValueError):
        PointSet([pt(0, 0), pt(1, 0)], labels=["a"])


def test_tree_validation():
    with pytest.raises(ValueError):
        Tree(3, [(0, 1)])                       # too few edges
    with pytest.raises(ValueError):
        Tree(4, [(0, 1), (0, 1), (2, 3)])       # duplicate
    with pytest.raises(ValueError):
        Tree(4, [(0, 1), (1, 2), (0, 2)])       # cycle, vertex 3 isolated
    with pytest.raises(ValueError):
        Tree(3, [(0, 1), (1, 3)])               # out of range
    t = Tree(4, [(2, 1), (0, 1), (2, 3)])
    assert t.edges == ((0, 1), (1, 2), (2, 3))
    assert t.has_edge(1, 0) and not t.has_edge(0, 3)


def test_tree_paths():
    t = Tree(5, [(0, 1), (1, 2), (1, 3), (3, 4)])
    assert t.path_vertices(0, 4) == [0, 1, 3, 4]
    assert t.path_edges(4, 0) == [(3, 4), (1, 3), (0, 1)]
    assert t.path_vertices(2, 2) == [2]


def square_star():
    ps = PointSet([pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)])
    return ps, Tree(4, [(0, 1), (0, 2), (0, 3)])


def square_path():
    ps = PointSet([pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)])
    return ps, Tree(4, [(0, 1), (1, 2), (2, 3)])


def test_tree_path_length_exact_cases():
    ps = PointSet([pt(0, 0), pt(3, 4), pt(6, 0)])
    t = Tree(3, [(0, 1), (1, 2)])
    enc = tree_path_length(ps, t, 0, 2, 64)
    assert enc.lo == enc.hi == 10
    enc01 = tree_path_length(ps, t, 0, 1, 64)
    assert enc01.lo == enc01.hi == 5


def test_tree_path_length_contains_truth():
    ps, t = square_path()
    enc = tree_path_length(ps, t, 0, 3, 64)
    assert enc.lo == enc.hi == 3
    ps2, t2 = square_star()
    enc = tree_path_length(ps2, t2, 1, 2, 64)
    # 1 + sqrt(2), reference digits exceed the enclosure width
    assert enc.contains(Fraction("2.41421356237309504880168872420969808"))
    assert enc.width <= Fraction(1, 1 << 60)


def test_pair_dilation_collinear_is_one():
    ps = PointSet([pt(0, 0), pt(1, 0), pt(3, 0)])
    t = Tree(3, [(0, 1), (1, 2)])
    enc = pair_dilation(ps, t, 0, 2, 64)
    assert enc.contains(1)
    assert enc.width <= Fraction(1, 1 << 60)
    assert enc.lo >= 1 - Fraction(1, 1 << 62)


def test_pair_dilation_lower_bound_invariant():
    rng = random.Random(5)
    for _ in range(30):
        coords = set()
        while len(coords) < 5:
            coords.add((rng.randint(-50, 50), rng.randint(-50, 50)))
        ps = PointSet.from_coords(sorted(coords))
        edges = [(i, i + 1) for i in range(4)]
        t = Tree(5, edges)
        for bits in (16, 32, 64):
            u, v = rng.sample(range(5), 2)
            enc = pair_dilation(ps, t, min(u, v), max(u, v), bits)
            assert enc.lo >= 1 - Fraction(1, 1 << (bits - 2))
            assert enc.lo <= enc.hi


def test_tree_dilation_square_path():
    ps, t = square_path()
    rep = tree_dilation(ps, t, 64)
    assert rep.witness == (0, 3)
    assert rep.value.contains(3)
    assert not rep.tied


def test_tree_dilation_square_star_tie():
    # star from one corner: pairs (1,2) and (2,3) both attain 1 + sqrt(2)
    ps, t = square_star()
    rep = tree_dilation(ps, t, 64)
    assert rep.tied
    assert rep.witness == (1, 2)
    # contains 1 + sqrt(2), checked by rational squaring
    assert rep.value.lo >= 1 and (rep.value.lo - 1) ** 2 <= 2
    assert (rep.value.hi - 1) ** 2 >= 2


def test_tree_dilation_all_ties_on_collinear_path():
    ps = PointSet([pt(0, 0), pt(1, 0), pt(2, 0), pt(4, 0)])
    t = Tree(4, [(0, 1), (1, 2), (2, 3)])
    rep = tree_dilation(ps, t, 64)
    assert rep.tied
    assert rep.witness == (0, 1)
    assert rep.value.contains(1)


def test_tree_metric_additivity():
    ps, t = square_path()
    for bits in (32, 64):
        d03 = tree_path_length(ps, t, 0, 3, bits)
        d01 = tree_path_length(ps, t, 0, 1, bits)
        d13 = tree_path_length(ps, t, 1, 3, bits)
        assert d03.lo == d01.lo + d13.lo
        assert d03.hi == d01.hi + d13.hi


def test_compare_to_threshold_basic():
    ps, t = square_path()
    assert compare_to_threshold(ps, t, 3, 1) is Verdict.AT_MOST   # == 3 exactly
    assert compare_to_threshold(ps, t, 2, 1) is Verdict.GREATER
    assert compare_to_threshold(ps, t, 301, 100) is Verdict.AT_MOST
    with pytest.raises(ValueError):
        compare_to_threshold(ps, t, 1, 2)


def test_compare_to_threshold_exact_equality_hit():
    # threshold equal to the true dilation: interval refinement alone can
    # never separate, the symbolic fallback must settle it as AT_MOST
    ps = PointSet([pt(0, 0), pt(1, 0), pt(2, 0)])
    t = Tree(3, [(0, 1), (1, 2)])
    assert compare_to_threshold(ps, t, 1, 1) is Verdict.AT_MOST


def test_compare_to_threshold_adversarial_rational():
    # thresholds within 10^-130 of 1 + sqrt(2) on either side
    ps, t = square_star()
    q = 10 ** 130
    p = q + isqrt(2 * q * q)          # floor((1 + sqrt 2) * q)
    assert compare_to_threshold(ps, t, p, q) is Verdict.GREATER
    assert compare_to_threshold(ps, t, p + 1, q) is Verdict.AT_MOST


def test_tree_dilation_threshold_field():
    # 1 + sqrt(2) ~ 2.4142 sits between 5/2 and 49/20 = 2.45
    ps, t = square_star()
    assert tree_dilation(ps, t, 64).threshold_verdict is None
    assert tree_dilation(ps, t, 64, threshold=(12, 5)).threshold_verdict \
        is Verdict.GREATER
    assert tree_dilation(ps, t, 64, threshold=(49, 20)).threshold_verdict \
        is Verdict.AT_MOST


def test_critical_edges_collinear():
    ps = PointSet([pt(0, 0), pt(1, 0), pt(2, 0)])
    assert critical_edges(ps, 8, 5) == frozenset({(0, 1), (1, 2)})


def test_critical_edges_square():
    # unit square at delta = 8/5: sides have detours 1 + 1 = 2 > 8/5;
    # diagonals have detours 2 < (8/5) sqrt(2) ~ 2.26, not critical
    ps = PointSet([pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)])
    got = critical_edges(ps, 8, 5)
    assert got == frozenset({(0, 1), (1, 2), (2, 3), (0, 3)})


def test_critical_edges_equality_threshold():
    # unit-spaced collinear points on the diagonal at delta = 3: the
    # detour around a short edge is exactly 3 times its length, an
    # irrational equality only the symbolic fallback can settle; the
    # strict inequality fails, so nothing is critical
    ps = PointSet([pt(0, 0), pt(1, 1), pt(2, 2)])
    assert critical_edges(ps, 3, 1) == frozenset()
    # one notch below 3 the short edges become critical again
    assert critical_edges(ps, 29, 10) == frozenset({(0, 1), (1, 2)})


def random_pointset(rng, n, span=60):
    coords = set()
    while len(coords) < n:
        coords.add((rng.randint(-span, span), rng.randint(-span, span)))
    return PointSet.from_coords(sorted(coords))


def random_tree(rng, n):
    verts = list(range(n))
    rng.shuffle(verts)
    edges = []
    for i in range(1, n):
        edges.append((verts[i], verts[rng.randrange(i)]))
    return Tree(n, edges)


def test_critical_edge_necessity():
    # a tree omitting a critical edge at delta cannot have dilation <= delta
    rng = random.Random(11)
    for _ in range(10):
        ps = random_pointset(rng, 6)
        crit = critical_edges(ps, 8, 5)
        if not crit:
            continue
        e = min(crit)
        for _ in range(5):
            t = random_tree(rng, 6)
            if t.has_edge(*e):
                continue
            assert compare_to_threshold(ps, t, 8, 5) is Verdict.GREATER


def test_supergraph_never_certified_worse():
    rng = random.Random(23)
    for _ in range(15):
        ps = random_pointset(rng, 7)
        t = random_tree(rng, 7)
        rep = tree_dilation(ps, t, 64)
        extra = tuple(sorted(rng.sample(range(7), 2)))
        if t.has_edge(*extra):
            continue
        g = graph_dilation_bounds(ps, list(t.edges) + [extra], 64)
        assert not (g.lo > rep.value.hi)
        # and the graph bound must still enclose a value >= 1
        assert g.hi >= 1


def test_graph_bounds_match_tree_on_tree_edges():
    rng = random.Random(31)
    for _ in range(10):
        ps = random_pointset(rng, 6)
        t = random_tree(rng, 6)
        rep = tree_dilation(ps, t, 64)
        g = graph_dilation_bounds(ps, t.edges, 64)
        assert g.lo <= rep.value.hi and rep.value.lo <= g.hi


def _apply(ps, f):
    return PointSet([f(p) for p in ps.points])


def test_similarity_invariance():
    rng = random.Random(47)
    ps = random_pointset(rng, 6)
    t = random_tree(rng, 6)
    base = tree_dilation(ps, t, 64)
    base_crit = critical_edges(ps, 8, 5)
    s = Fraction(7, 3)
    transforms = [
        lambda p: pt(s * p.x + 11, s * p.y - 4),          # scale + translate
        lambda p: pt(-p.y, p.x),                          # rotate 90
        lambda p: pt(-p.x, p.y),                          # mirror
    ]
    for f in transforms:
        ps2 = _apply(ps, f)
        rep = tree_dilation(ps2, t, 64)
        assert rep.value.lo <= base.value.hi and base.value.lo <= rep.value.hi
        assert rep.witness == base.witness and rep.tied == base.tied
        assert critical_edges(ps2, 8, 5) == base_crit
        assert compare_to_threshold(ps2, t, 5, 2) == compare_to_threshold(ps, t, 5, 2)


def test_tree_has_crossing():
    ps = PointSet([pt(0, 0), pt(2, 2), pt(0, 2), pt(2, 0), pt(3, 3)])
    crossing = Tree(5, [(0, 1), (2, 3), (1, 4), (0, 2)])
    assert tree_has_crossing(ps, crossing)
    flat = Tree(5, [(0, 1), (1, 4), (0, 2), (0, 3)])
    assert not tree_has_crossing(ps, flat)
    pairs = crossing_edge_pairs(ps, list(crossing.edges))
    assert ((0, 1), (2, 3)) in pairs


def test_adjacent_edges_never_cross():
    ps = PointSet([pt(0, 0), pt(1, 0), pt(0, 1), pt(1, 1)])
    t = Tree(4, [(0, 1), (0, 2), (0, 3)])
    assert not tree_has_crossing(ps, t)


def test_precision_exhausted_surfaces():
    # distances engineered so the symbolic form hides a square factor
    # beyond the trial-division bound: sqrt(2*4099^2) vs 4099*sqrt(2)
    big = 4099
    ps = PointSet([pt(0, 0), pt(big, big), pt(2 * big, 2 * big),
                   pt(0, 1)])
    t = Tree(4, [(0, 1), (1, 2), (0, 3)])
    # fine here: all comparisons resolve numerically
    rep = tree_dilation(ps, t, 64)
    assert rep.value.hi >= 1
