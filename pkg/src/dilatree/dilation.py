"""Certified dilation computations for trees over exact point sets.

The dilation of a pair (u, v) in a tree T is d_T(u, v) / |uv|, the ratio
of tree-path length to straight-line distance; the dilation of T is the
maximum over all pairs.  Neither quantity is rational in general, so every
comparison here is interval-certified: distances are enclosed in dyadic
intervals, path lengths are sums of enclosures, and verdicts are issued
only when intervals separate.  Pairs whose intervals straddle a boundary
are retried at doubled precision, and ties or exact boundary hits are
resolved symbolically through `radical.SqrtSum`, so an exact equality
(for instance a pair sitting exactly on a threshold) terminates instead
of escalating forever.  Only a disguised symbolic zero can exhaust the
precision cap, and that raises `PrecisionExhausted` rather than guessing.

Interval bookkeeping uses integer endpoints at a shared power-of-two
scale, so accumulating a path is pure integer addition.
"""

from __future__ import annotations

import enum
import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import PrecisionExhausted, max_bits_cap
from .exactgeom import (Interval, Point, Segment, round_dyadic,
                        segments_properly_cross, sqrt_interval,
                        squared_distance)
from .radical import SqrtSum

_EXACT_FALLBACK_BITS = 256


def _scale_exp(bits: int) -> int:
    return bits + 8


class PointSet:
    """Finite set of distinct exact points with distance caches.

    Squared distances are exact rationals computed once; square-root
    enclosures are cached per precision level as integer endpoint pairs
    at scale 2^-(bits+8).
    """

    def __init__(self, points, labels=None):
        pts = tuple(points)
        if len(pts) < 2:
            raise ValueError("point set needs at least two points")
        if len(set(pts)) != len(pts):
            raise ValueError("points must be pairwise distinct")
        self._points = pts
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != len(pts):
                raise ValueError("labels must match points one to one")
        self._labels = labels
        self._d2: dict[tuple[int, int], Fraction] = {}
        self._enc: dict[tuple[int, int, int], tuple[int, int]] = {}

    @classmethod
    def from_coords(cls, coords, labels=None):
        return cls([Point(Fraction(x), Fraction(y)) for x, y in coords], labels)

    @property
    def points(self):
        return self._points

    @property
    def labels(self):
        return self._labels

    def __len__(self):
        return len(self._points)

    def __getitem__(self, i) -> Point:
        return self._points[i]

    @property
    def n(self) -> int:
        return len(self._points)

    def distance_sq(self, i: int, j: int) -> Fraction:
        if i == j:
            return Fraction(0)
        key = (i, j) if i < j else (j, i)
        d2 = self._d2.get(key)
        if d2 is None:
            d2 = squared_distance(self._points[key[0]], self._points[key[1]])
            self._d2[key] = d2
        return d2

    def dist_ints(self, i: int, j: int, bits: int) -> tuple[int, int]:
        """Integer enclosure (lo, hi) of |p_i p_j| at scale 2^-(bits+8)."""
        key = (i, j, bits) if i < j else (j, i, bits)
        cached = self._enc.get(key)
        if cached is not None:
            return cached
        enc = sqrt_interval(self.distance_sq(i, j), bits)
        e = _scale_exp(bits)
        scaled_lo = enc.lo * (1 << e)
        scaled_hi = enc.hi * (1 << e)
        # endpoints are dyadic; rescaling is exact unless the value is tiny
        lo = scaled_lo.numerator // scaled_lo.denominator
        hi = -((-scaled_hi.numerator) // scaled_hi.denominator)
        self._enc[key] = (lo, hi)
        return lo, hi

    def dist_interval(self, i: int, j: int, bits: int) -> Interval:
        lo, hi = self.dist_ints(i, j, bits)
        e = _scale_exp(bits)
        return Interval(Fraction(lo, 1 << e), Fraction(hi, 1 << e), bits)


class Tree:
    """Spanning tree on vertices 0..n-1, validated at construction."""

    __slots__ = ("n", "edges", "_edge_set", "_adj", "_parents")

    def __init__(self, n: int, edges):
        norm = []
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            norm.append((u, v) if u < v else (v, u))
        norm.sort()
        if len(norm) != n - 1:
            raise ValueError(f"spanning tree on {n} vertices needs {n - 1} "
                             f"edges, got {len(norm)}")
        if len(set(norm)) != len(norm):
            raise ValueError("duplicate edge")
        adj = [[] for _ in range(n)]
        for u, v in norm:
            adj[u].append(v)
            adj[v].append(u)
        # connectivity: n-1 distinct edges + connected == tree
        seen = bytearray(n)
        stack = [0]
        seen[0] = 1
        count = 1
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = 1
                    count += 1
                    stack.append(y)
        if count != n:
            raise ValueError("edges do not connect all vertices")
        self.n = n
        self.edges = tuple(norm)
        self._edge_set = frozenset(norm)
        self._adj = adj
        self._parents: dict[int, list[int]] = {}

    def adjacency(self):
        return self._adj

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._edge_set

    def parents_from(self, root: int):
        par = self._parents.get(root)
        if par is None:
            par = [-1] * self.n
            par[root] = root
            stack = [root]
            while stack:
                x = stack.pop()
                for y in self._adj[x]:
                    if par[y] == -1:
                        par[y] = x
                        stack.append(y)
            self._parents[root] = par
        return par

    def path_vertices(self, u: int, v: int):
        """Vertices along the unique u-v path, endpoints included."""
        par = self.parents_from(u)
        path = [v]
        while path[-1] != u:
            path.append(par[path[-1]])
        path.reverse()
        return path

    def path_edges(self, u: int, v: int):
        path = self.path_vertices(u, v)
        return [(a, b) if a < b else (b, a)
                for a, b in zip(path, path[1:])]

    def replace_edge(self, old, new) -> "Tree":
        old = tuple(sorted(old))
        new = tuple(sorted(new))
        if old not in self.edges:
            raise ValueError(f"edge {old} not in tree")
        return Tree(self.n, [new if e == old else e for e in self.edges])

    def __eq__(self, other):
        return isinstance(other, Tree) and (self.n, self.edges) == (other.n, other.edges)

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Tree(n={self.n}, edges={list(self.edges)})"


class Verdict(enum.Enum):
    AT_MOST = "at_most"
    GREATER = "greater"


@dataclass(frozen=True)
class DilationReport:
    value: Interval
    witness: tuple[int, int] | None
    threshold_verdict: Verdict | None
    precision_used: int
    tied: bool = False


# ---------------------------------------------------------------------------
# path length and pair dilation


def _path_sum_ints(ps: PointSet, tree: Tree, u: int, v: int, bits: int):
    lo = hi = 0
    for a, b in tree.path_edges(u, v):
        elo, ehi = ps.dist_ints(a, b, bits)
        lo += elo
        hi += ehi
    return lo, hi


def tree_path_length(ps: PointSet, tree: Tree, u: int, v: int,
                     bits: int) -> Interval:
    """Enclosure of the tree-path length between u and v."""
    if tree.n != ps.n:
        raise ValueError("tree and point set sizes differ")
    lo, hi = _path_sum_ints(ps, tree, u, v, bits)
    e = _scale_exp(bits)
    return Interval(Fraction(lo, 1 << e), Fraction(hi, 1 << e), bits)


def _pair_ratio_ints(ps, tree, u, v, bits):
    """((dlo, dhi), (llo, lhi)) integer enclosures at a common scale."""
    d = _path_sum_ints(ps, tree, u, v, bits)
    length = ps.dist_ints(u, v, bits)
    return d, length


def pair_dilation(ps: PointSet, tree: Tree, u: int, v: int,
                  bits: int) -> Interval:
    """Dyadic enclosure of d_T(u, v) / |uv| with relative width ~2^-bits."""
    if u == v:
        raise ValueError("pair must be two distinct vertices")
    work = bits + 4
    (dlo, dhi), (llo, lhi) = _pair_ratio_ints(ps, tree, u, v, work)
    grid = bits + 4
    lo = round_dyadic(Fraction(dlo, lhi), grid, "floor")
    hi = round_dyadic(Fraction(dhi, llo), grid, "ceil")
    return Interval(lo, hi, bits)


# ---------------------------------------------------------------------------
# exact symbolic forms, for ties and boundary hits


def _path_sum_exact(ps: PointSet, tree: Tree, u: int, v: int) -> SqrtSum:
    total = SqrtSum.zero()
    for a, b in tree.path_edges(u, v):
        total = total + SqrtSum.sqrt_of(ps.distance_sq(a, b))
    return total


def _pair_exact(ps, tree, u, v):
    return _path_sum_exact(ps, tree, u, v), SqrtSum.sqrt_of(ps.distance_sq(u, v))


def _compare_pairs_exact(ps, tree, p1, p2, cap):
    """Sign of dilation(p1) - dilation(p2), resolved symbolically."""
    d1, l1 = _pair_exact(ps, tree, *p1)
    d2, l2 = _pair_exact(ps, tree, *p2)
    return (d1 * l2 - d2 * l1).sign(cap=cap)


# ---------------------------------------------------------------------------
# threshold comparison


def _ladder(start: int, cap: int):
    b = start
    while True:
        yield b
        if b >= cap:
            return
        b = min(2 * b, cap)


def _pair_vs_threshold(ps, tree, u, v, p_num, q_den, start_bits, cap):
    """Certified verdict for d_T(u,v)/|uv| vs P/Q on a single pair."""
    tried_exact = False
    for bits in _ladder(start_bits, cap):
        (dlo, dhi), (llo, lhi) = _pair_ratio_ints(ps, tree, u, v, bits)
        if q_den * dlo > p_num * lhi:
            return Verdict.GREATER
        if q_den * dhi <= p_num * llo:
            return Verdict.AT_MOST
        if bits >= _EXACT_FALLBACK_BITS and not tried_exact:
            tried_exact = True
            d, length = _pair_exact(ps, tree, u, v)
            try:
                sign = (d.scale(q_den) - length.scale(p_num)).sign(cap=cap)
            except PrecisionExhausted:
                continue
            return Verdict.GREATER if sign > 0 else Verdict.AT_MOST
    raise PrecisionExhausted(
        f"pair ({u}, {v}) vs {p_num}/{q_den} undecided at {cap} bits",
        bits=cap, context=(u, v))


def compare_to_threshold(ps: PointSet, tree: Tree, p_num: int, q_den: int,
                         *, start_bits: int = 64, cap: int | None = None,
                         pair_order=None) -> Verdict:
    """Certified verdict of Delta(T) <= P/Q.

    Scans pairs at the starting precision and escalates only pairs whose
    enclosures straddle the threshold; a pair certified strictly above
    P/Q settles the whole tree immediately.  `pair_order` optionally
    front-loads pairs likely to exceed, which makes rejection cheap; it
    never affects the verdict, only the order of work.
    """
    if q_den < 1 or p_num < q_den:
        raise ValueError("threshold must satisfy P/Q >= 1 with Q >= 1")
    if tree.n != ps.n:
        raise ValueError("tree and point set sizes differ")
    cap = max_bits_cap() if cap is None else cap
    n = ps.n
    seen = set()
    ordered = []
    if pair_order:
        for u, v in pair_order:
            key = (u, v) if u < v else (v, u)
            if key not in seen:
                seen.add(key)
                ordered.append(key)
    ordered.extend(key for key in itertools.combinations(range(n), 2)
                   if key not in seen)

    undecided = []
    for u, v in ordered:
        (dlo, dhi), (llo, lhi) = _pair_ratio_ints(ps, tree, u, v, start_bits)
        if q_den * dlo > p_num * lhi:
            return Verdict.GREATER
        if q_den * dhi > p_num * llo:
            undecided.append((u, v))
    for u, v in undecided:
        if _pair_vs_threshold(ps, tree, u, v, p_num, q_den,
                              2 * start_bits, cap) is Verdict.GREATER:
            return Verdict.GREATER
    return Verdict.AT_MOST


# ---------------------------------------------------------------------------
# tree dilation with witness separation


def tree_dilation(ps: PointSet, tree: Tree, bits: int,
                  threshold: tuple[int, int] | None = None,
                  *, cap: int | None = None) -> DilationReport:
    """Enclose Delta(T) and name a pair attaining it.

    The maximum is located by refining only the pairs whose enclosures
    still overlap the running lower bound.  When the final survivors
    cannot be separated numerically they are compared symbolically;
    genuinely equal maxima are reported with `tied` set and the
    lexicographically smallest witness.
    """
    if tree.n != ps.n:
        raise ValueError("tree and point set sizes differ")
    cap = max_bits_cap() if cap is None else cap
    work = max(bits + 4, 64)
    pairs = list(itertools.combinations(range(ps.n), 2))
    enc = {pq: pair_dilation(ps, tree, *pq, work) for pq in pairs}
    precision_used = work
    tied = False

    while True:
        max_lo = max(iv.lo for iv in enc.values())
        survivors = {pq: iv for pq, iv in enc.items() if iv.hi >= max_lo}
        value = Interval(max_lo, max(iv.hi for iv in survivors.values()), bits)
        if len(survivors) == 1:
            break
        target = Fraction(1, 1 << (bits - 1)) * value.hi
        if value.width <= target and work >= _EXACT_FALLBACK_BITS:
            # numeric refinement has stalled: separate survivors exactly
            order = sorted(survivors)
            best = [order[0]]
            try:
                for pq in order[1:]:
                    sign = _compare_pairs_exact(ps, tree, pq, best[0], cap)
                    if sign > 0:
                        best = [pq]
                    elif sign == 0:
                        best.append(pq)
                tied = len(best) > 1
            except PrecisionExhausted:
                if work >= cap:
                    raise
                work = min(2 * work, cap)
                enc = {pq: pair_dilation(ps, tree, *pq, work)
                       for pq in survivors}
                precision_used = work
                continue
            survivors = {pq: survivors[pq] for pq in best}
            break
        if work >= cap:
            raise PrecisionExhausted(
                f"dilation witnesses unresolved at {cap} bits", bits=cap)
        work = min(2 * work, cap)
        enc = {pq: pair_dilation(ps, tree, *pq, work) for pq in survivors}
        precision_used = work

    witness = min(survivors)
    verdict = None
    if threshold is not None:
        verdict = compare_to_threshold(ps, tree, threshold[0], threshold[1],
                                       cap=cap)
    return DilationReport(value=value, witness=witness,
                          threshold_verdict=verdict,
                          precision_used=precision_used, tied=tied)


# ---------------------------------------------------------------------------
# critical edges


def _triple_strictly_detoured(ps, u, v, w, p_num, q_den, start_bits, cap):
    """Certified truth of  (P/Q) |uv| < |uw| + |wv|."""
    tried_exact = False
    for bits in _ladder(start_bits, cap):
        uv = ps.dist_ints(u, v, bits)
        uw = ps.dist_ints(u, w, bits)
        wv = ps.dist_ints(w, v, bits)
        if p_num * uv[1] < q_den * (uw[0] + wv[0]):
            return True
        if p_num * uv[0] >= q_den * (uw[1] + wv[1]):
            return False
        if bits >= _EXACT_FALLBACK_BITS and not tried_exact:
            tried_exact = True
            lhs = SqrtSum.sqrt_of(ps.distance_sq(u, v), coef=p_num)
            rhs = (SqrtSum.sqrt_of(ps.distance_sq(u, w))
                   + SqrtSum.sqrt_of(ps.distance_sq(w, v))).scale(q_den)
            try:
                return (rhs - lhs).sign(cap=cap) > 0
            except PrecisionExhausted:
                continue
    raise PrecisionExhausted(
        f"criticality of ({u}, {v}) via {w} undecided at {cap} bits",
        bits=cap, context=(u, v, w))


def critical_edges(ps: PointSet, p_num: int, q_den: int,
                   *, start_bits: int = 64,
                   cap: int | None = None) -> frozenset:
    """Pairs (u, v) whose every one-stop detour strictly exceeds (P/Q)|uv|.

    Such an edge is forced into any spanning tree whose dilation stays
    within P/Q: routing u to v through any other vertex already overshoots.
    """
    if q_den < 1 or p_num < 1:
        raise ValueError("threshold must be a positive rational P/Q")
    cap = max_bits_cap() if cap is None else cap
    out = []
    for u, v in itertools.combinations(range(ps.n), 2):
        ok = True
        for w in range(ps.n):
            if w == u or w == v:
                continue
            if not _triple_strictly_detoured(ps, u, v, w, p_num, q_den,
                                             start_bits, cap):
                ok = False
                break
        if ok:
            out.append((u, v))
    return frozenset(out)


# ---------------------------------------------------------------------------
# crossings


def tree_has_crossing(ps: PointSet, tree: Tree) -> bool:
    """True iff some two non-adjacent tree edges properly cross."""
    segs = {e: Segment(ps[e[0]], ps[e[1]]) for e in tree.edges}
    for e1, e2 in itertools.combinations(tree.edges, 2):
        if set(e1) & set(e2):
            continue
        if segments_properly_cross(segs[e1], segs[e2]):
            return True
    return False


def crossing_edge_pairs(ps: PointSet, edges):
    """All properly-crossing pairs among the given edges."""
    segs = [Segment(ps[u], ps[v]) for u, v in edges]
    out = []
    for i, j in itertools.combinations(range(len(edges)), 2):
        if set(edges[i]) & set(edges[j]):
            continue
        if segments_properly_cross(segs[i], segs[j]):
            out.append((edges[i], edges[j]))
    return out


# ---------------------------------------------------------------------------
# graph dilation bounds (supergraph monotonicity checks)


def _dijkstra(n, adj, source, weight):
    dist = [None] * n
    dist[source] = Fraction(0)
    heap = [(Fraction(0), source)]
    while heap:
        d, x = heapq.heappop(heap)
        if d > dist[x]:
            continue
        for y, w in adj[x]:
            nd = d + weight[w]
            if dist[y] is None or nd < dist[y]:
                dist[y] = nd
                heapq.heappush(heap, (nd, y))
    return dist


def graph_dilation_bounds(ps: PointSet, edges, bits: int) -> Interval:
    """Enclosure of the dilation of an arbitrary connected graph.

    Exact-rational Dijkstra runs once over lower endpoints and once over
    upper endpoints of the edge-length enclosures; the true shortest-path
    metric is sandwiched between the two runs.
    """
    n = ps.n
    edges = [tuple(sorted(e)) for e in edges]
    adj = [[] for _ in range(n)]
    for k, (u, v) in enumerate(edges):
        adj[u].append((v, k))
        adj[v].append((u, k))
    lows = []
    highs = []
    for u, v in edges:
        iv = ps.dist_interval(u, v, bits)
        lows.append(iv.lo)
        highs.append(iv.hi)
    ratio_lo = Fraction(0)
    ratio_hi = Fraction(0)
    for src in range(n):
        dlo = _dijkstra(n, adj, src, lows)
        dhi = _dijkstra(n, adj, src, highs)
        for dst in range(src + 1, n):
            if dlo[dst] is None:
                raise ValueError("graph is not connected")
            length = ps.dist_interval(src, dst, bits)
            ratio_lo = max(ratio_lo, dlo[dst] / length.hi)
            ratio_hi = max(ratio_hi, dhi[dst] / length.lo)
    return Interval(ratio_lo, ratio_hi, bits)
