"""Independent brute-force oracles.

Everything here recomputes from first principles with itertools-style
enumeration over explicit element tuples; no bitmask tricks, no DP, no
sharing of code paths with the library implementations under test.
"""

from __future__ import annotations

from itertools import combinations, product

from subsumlab.groups import GroupSpec, GroupSubset, Subgroup
from subsumlab.sequences import GSequence


def add_coords(factors, a, b):
    return tuple((x + y) % m for x, y, m in zip(a, b, factors))


def sumset_oracle(g: GroupSpec, a: set[int], b: set[int]) -> set[int]:
    return {g.add(x, y) for x in a for y in b}


def iterated_sumset_oracle(g: GroupSpec, a: set[int], n: int) -> set[int]:
    out = {0}
    for _ in range(n):
        out = sumset_oracle(g, out, a)
    return out


def stabilizer_oracle(g: GroupSpec, a: set[int]) -> set[int]:
    return {x for x in range(g.order)
            if {g.add(x, y) for y in a} == a}


def affine_span_oracle(g: GroupSpec, a: set[int]) -> set[int]:
    """Subgroup generated by all pairwise differences of a."""
    elems = sorted(a)
    gens = {g.sub(x, elems[0]) for x in elems}
    span = {0}
    frontier = {0}
    while frontier:
        nxt = {g.add(x, y) for x in frontier for y in gens} - span
        span |= nxt
        frontier = nxt
    return span


def nterm_subsums_oracle(s: GSequence, n: int) -> set[int]:
    g = s.group
    terms = list(s.terms())
    out = set()
    for combo in combinations(range(len(terms)), n):
        total = 0
        for i in combo:
            total = g.add(total, terms[i])
        out.add(total)
    return out


def all_subsums_oracle(s: GSequence) -> set[int]:
    out = set()
    for n in range(1, s.length + 1):
        out |= nterm_subsums_oracle(s, n)
    return out


def representation_count_oracle(g: GroupSpec, sets: list[set[int]],
                                target: int) -> int:
    count = 0
    for combo in product(*[sorted(a) for a in sets]):
        total = 0
        for x in combo:
            total = g.add(total, x)
        if total == target:
            count += 1
    return count


def davenport_oracle(g: GroupSpec) -> int:
    """Least d such that every length-d sequence has a nonempty zero-sum
    subsequence; checked by enumerating all multisets of each length."""
    from itertools import combinations_with_replacement

    def has_zero_subsum(terms):
        reach = set()
        for t in terms:
            reach |= {g.add(x, t) for x in reach} | {t}
        return 0 in reach

    d = 1
    while True:
        if all(has_zero_subsum(terms)
               for terms in combinations_with_replacement(range(g.order), d)):
            return d
        d += 1


def subset(g: GroupSpec, indices) -> GroupSubset:
    return GroupSubset.from_indices(g, indices)


def subgroup(g: GroupSpec, indices) -> Subgroup:
    return Subgroup(GroupSubset.from_indices(g, indices))
