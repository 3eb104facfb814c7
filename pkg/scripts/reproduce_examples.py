#!/usr/bin/env python3
"""Rebuild the three extremal families at several sizes and print their
measured identities (sequence length, n-term subsum size, stabilizer),
re-deriving every number by brute force."""

import sys

from subsumlab.groups import (
    GroupSubset,
    enumerate_subgroups,
    parse_group,
    stabilizer,
    subgroup_generated,
)
from subsumlab.search import SearchError, gen_example
from subsumlab.sequences import nterm_subsums


def show(inst):
    g = inst.G
    sigma = nterm_subsums(inst.S, inst.n)
    stab = stabilizer(sigma)
    print(f"  kind {inst.kind}  G={g.spec_string():>6}  |H|={inst.H.order}  "
          f"n={inst.n:>2}  |S|={inst.S.length:>3}  |sums|={sigma.size:>3}  "
          f"|H(sums)|={stab.order}")


def family_a():
    print("family A (cyclic quotient, n = |G/H| - 2):")
    for m in range(4, 17):
        g = parse_group(str(m))
        for h in enumerate_subgroups(g):
            try:
                show(gen_example("A", g, h))
            except SearchError:
                continue


def family_b():
    print("family B (noncyclic quotient, n = exp(G/H) - 1):")
    g = parse_group("3x6")
    h = subgroup_generated(GroupSubset.from_indices(g, [g.index((0, 3))]))
    k = subgroup_generated(GroupSubset.from_indices(
        g, [g.index((0, 3)), g.index((1, 0))]))
    show(gen_example("B", g, h, k=k, gen_elem=g.index((0, 1))))


def family_c():
    print("family C (|H| >= n = exp(G/H)):")
    g = parse_group("3x3x3")
    h = subgroup_generated(GroupSubset.from_indices(g, [g.index((0, 0, 1))]))
    k = subgroup_generated(GroupSubset.from_indices(
        g, [g.index((0, 0, 1)), g.index((0, 1, 0))]))
    show(gen_example("C", g, h, k=k, gen_elem=g.index((1, 0, 0))))


def main() -> int:
    family_a()
    family_b()
    family_c()
    return 0


if __name__ == "__main__":
    sys.exit(main())
