"""When do optimal trees have to cross themselves?

On four points in convex position a crossing spanning tree never helps:
any crossing tree can be rewired to a crossing-free one that is no
worse.  This script certifies that on a concrete quadrilateral, then
searches random five-point sets for the opposite phenomenon, a set
whose certified optimum is only attained by self-crossing trees.
"""

from dilatree import (
    PointSet, SolverOptions, Tree, mdst_exact, tree_dilation,
    tree_has_crossing, uncross_four, verify_crossing_witness,
    witness_search_five,
)


def main():
    # A convex quadrilateral and a deliberately crossing tree on it:
    # both diagonals plus one side.
    ps = PointSet.from_coords([(0, 0), (10, 1), (11, 9), (-1, 8)])
    crossing = Tree(4, [(0, 2), (1, 3), (0, 1)])
    assert tree_has_crossing(ps, crossing)

    fixed = uncross_four(ps, crossing)
    assert not tree_has_crossing(ps, fixed)
    before = tree_dilation(ps, crossing, bits=96)
    after = tree_dilation(ps, fixed, bits=96)
    print("convex quadrilateral, crossing tree rewired:")
    print(f"  before {sorted(crossing.edges)} "
          f"dilation <= {float(before.value.hi):.6f}")
    print(f"  after  {sorted(fixed.edges)} "
          f"dilation <= {float(after.value.hi):.6f}")
    assert after.value.lo <= before.value.hi

    free = mdst_exact(ps, SolverOptions(crossing_free=True))
    print(f"  best crossing-free tree: {sorted(free.best.edges)}, "
          f"dilation in [{float(free.report.value.lo):.6f}, "
          f"{float(free.report.value.hi):.6f}]")

    # Five points suffice for crossings to become mandatory.  The
    # search perturbs candidate configurations at random and keeps one
    # only if certified checks confirm the phenomenon.
    print("\nsearching five-point sets (seed 10) ...")
    ps5 = witness_search_five(seed=10, budget=20000)
    if ps5 is None:
        print("  budget exhausted without a witness")
        return

    check = verify_crossing_witness(ps5, bits=96)
    assert check is not None
    print(f"  found {[(str(p.x), str(p.y)) for p in ps5.points]}")
    print(f"  optimal dilation in [{float(check.report.value.lo):.9f}, "
          f"{float(check.report.value.hi):.9f}]")
    print(f"  optimal trees: {len(check.optimal_trees)}, all crossing")
    for t in check.optimal_trees:
        assert tree_has_crossing(ps5, t)
    print(f"  best crossing-free tree certified strictly worse: "
          f"{check.crossing_free_strictly_worse}")
    print(f"  edges forced at the optimum: {sorted(check.critical)}")


if __name__ == "__main__":
    main()
