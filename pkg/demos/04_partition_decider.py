"""Decide equal-sum splits by optimizing over trees of a gadget.

The point of the construction is that "can these weights be split into
two equal-sum halves?" becomes "does this point set admit a spanning
tree of dilation at most P/Q?".  Here we run that reduction forward:
build the points, enumerate the candidate tree family with certified
threshold comparisons, and read the split back out of the winning tree.
A direct subset-sum oracle confirms each answer.
"""

import time

from dilatree import (
    PartitionInstance, build_gadget, decide_partition, integerize,
    partition_oracle, rounding_bits,
)


def run(weights):
    inst = PartitionInstance(weights)
    t0 = time.perf_counter()
    found = decide_partition(build_gadget(inst))
    dt = time.perf_counter() - t0

    direct = partition_oracle(inst)
    if found is None:
        assert direct is None
        print(f"{weights}: no equal-sum split ({dt:.2f}s, oracle agrees)")
        return
    sol, tree = found
    a = sorted(inst.alphas_dot[i - 1] for i in sol.A)
    b = sorted(inst.alphas_dot[i - 1] for i in sol.A_prime)
    assert direct is not None
    print(f"{weights}: split {a} | {b} ({dt:.2f}s, "
          f"tree on {tree.n} points, oracle agrees)")


def main():
    for weights in [(1, 1), (2, 3, 5), (1, 1, 1), (4, 2, 3, 1), (1, 2, 4)]:
        run(weights)

    # The same decision runs on the all-integer form of the instance,
    # where every coordinate is an integer at scale 1800 * 2^k and the
    # threshold stiffens from 3/2 to P/Q.  The slack survives rounding,
    # so the answer cannot change.
    inst = PartitionInstance((3, 1, 2))
    g = build_gadget(inst)
    ii = integerize(g)
    print(f"\ninteger form of {inst.alphas_dot}: k = {ii.k} "
          f"(minimum {rounding_bits(inst)}), threshold {ii.P}/{ii.Q}")
    found = decide_partition(ii)
    assert found is not None
    sol, _ = found
    print(f"  decided on integers: A = weights "
          f"{sorted(inst.alphas_dot[i - 1] for i in sol.A)}")

    # The oracle alone scales much further than the geometry does.
    big = PartitionInstance((961, 312, 415, 87, 147))
    res = partition_oracle(big)
    if res is None:
        print(f"\n{big.alphas_dot}: oracle says no split")
    else:
        print(f"\n{big.alphas_dot}: oracle split "
              f"{sorted(big.alphas_dot[i - 1] for i in res.A)} | "
              f"{sorted(big.alphas_dot[i - 1] for i in res.A_prime)}")


if __name__ == "__main__":
    main()
