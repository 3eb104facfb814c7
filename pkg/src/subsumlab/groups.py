"""Finite abelian group arithmetic and dense subset algebra.

Elements of a group C_{m1} x ... x C_{mr} (with m1 | m2 | ... | mr) are
mixed-radix tuples (c1, ..., cr), 0 <= ci < mi, encoded little-endian into a
single index in [0, |G|).  Subsets are arbitrary-precision integers used as
dense bit vectors over the index space; translating a subset by a group
element decomposes into one masked rotation per coordinate, so every subset
operation is a handful of big-int operations regardless of |G|.

Everything here is exact and immutable; the intended scale is |G| <= 4096.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

DEFAULT_ORDER_CAP = 4096


class GroupError(ValueError):
    """Invalid group construction or mismatched-group operation."""


class GroupSpec:
    """A finite abelian group given by its invariant factor chain."""

    __slots__ = (
        "invariant_factors", "order", "exponent", "rank", "strides",
        "full_mask", "_rot_cache", "_neg_cache", "_order_cache",
    )

    def __init__(self, invariant_factors: Sequence[int]):
        factors = tuple(invariant_factors)
        if not factors or any(m < 1 for m in factors):
            raise GroupError(f"invariant factors must be positive: {factors}")
        for a, b in zip(factors, factors[1:]):
            if b % a != 0:
                raise GroupError(f"not a divisibility chain: {factors}")
        self.invariant_factors = factors
        self.order = math.prod(factors)
        self.exponent = factors[-1]
        self.rank = len(factors)
        strides = []
        s = 1
        for m in factors:
            strides.append(s)
            s *= m
        self.strides = tuple(strides)
        self.full_mask = (1 << self.order) - 1
        self._rot_cache: dict[tuple[int, int], tuple[int, int, int, int]] = {}
        self._neg_cache: list[int] | None = None
        self._order_cache: list[int] | None = None

    # -- identity / formatting ------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroupSpec) and self.invariant_factors == other.invariant_factors

    def __hash__(self) -> int:
        return hash(self.invariant_factors)

    def __repr__(self) -> str:
        return f"GroupSpec({list(self.invariant_factors)})"

    def spec_string(self) -> str:
        return "x".join(str(m) for m in self.invariant_factors)

    # -- element arithmetic ---------------------------------------------------

    def coords(self, index: int) -> tuple[int, ...]:
        out = []
        for m in self.invariant_factors:
            out.append(index % m)
            index //= m
        return tuple(out)

    def index(self, coords: Sequence[int]) -> int:
        if len(coords) != self.rank:
            raise GroupError(f"expected {self.rank} coordinates, got {len(coords)}")
        idx = 0
        for c, m, s in zip(coords, self.invariant_factors, self.strides):
            idx += (c % m) * s
        return idx

    def add(self, a: int, b: int) -> int:
        if self.rank == 1:
            return (a + b) % self.order
        idx = 0
        for m, s in zip(self.invariant_factors, self.strides):
            idx += ((a // s + b // s) % m) * s
        return idx

    def neg(self, a: int) -> int:
        cache = self._neg_cache
        if cache is None:
            cache = [self.index(tuple((-c) % m for c, m in zip(self.coords(i), self.invariant_factors)))
                     for i in range(self.order)]
            self._neg_cache = cache
        return cache[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def scale(self, k: int, a: int) -> int:
        """k*a for integer k (k may be negative)."""
        idx = 0
        for m, s in zip(self.invariant_factors, self.strides):
            idx += ((k * ((a // s) % m)) % m) * s
        return idx

    def element_order(self, a: int) -> int:
        cache = self._order_cache
        if cache is None:
            cache = [0] * self.order
            self._order_cache = cache
        o = cache[a]
        if o:
            return o
        o = 1
        for c, m in zip(self.coords(a), self.invariant_factors):
            if c:
                o = math.lcm(o, m // math.gcd(c, m))
        cache[a] = o
        return o

    def elements(self) -> range:
        return range(self.order)

    # -- bitmask translation --------------------------------------------------

    def _rot_params(self, axis: int, d: int) -> tuple[int, int, int, int]:
        key = (axis, d)
        params = self._rot_cache.get(key)
        if params is None:
            m = self.invariant_factors[axis]
            stride = self.strides[axis]
            period = stride * m
            shift = d * stride
            keep = period - shift
            low_block = (1 << keep) - 1
            high_block = ((1 << shift) - 1) << keep
            low = high = 0
            for off in range(0, self.order, period):
                low |= low_block << off
                high |= high_block << off
            params = (low, high, shift, keep)
            self._rot_cache[key] = params
        return params

    def translate_mask(self, mask: int, b: int) -> int:
        """Bitmask of {x + b : x in mask}."""
        if self.rank == 1:
            if not b:
                return mask
            low, high, shift, keep = self._rot_params(0, b)
            return ((mask & low) << shift) | ((mask & high) >> keep)
        for axis, (m, s) in enumerate(zip(self.invariant_factors, self.strides)):
            d = (b // s) % m
            if d:
                low, high, shift, keep = self._rot_params(axis, d)
                mask = ((mask & low) << shift) | ((mask & high) >> keep)
        return mask

    def negate_mask(self, mask: int) -> int:
        out = 0
        for i in iter_bits(mask):
            out |= 1 << self.neg(i)
        return out

    def format_element(self, index: int) -> str:
        if self.rank == 1:
            return str(index)
        return "(" + ",".join(str(c) for c in self.coords(index)) + ")"


def iter_bits(mask: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class GroupElement:
    group: GroupSpec
    index: int

    @property
    def coords(self) -> tuple[int, ...]:
        return self.group.coords(self.index)

    def __add__(self, other: "GroupElement") -> "GroupElement":
        if other.group != self.group:
            raise GroupError("elements from different groups")
        return GroupElement(self.group, self.group.add(self.index, other.index))

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, self.group.neg(self.index))

    def __str__(self) -> str:
        return self.group.format_element(self.index)


class GroupSubset:
    """Dense subset of a GroupSpec, stored as a bitmask over element indices."""

    __slots__ = ("group", "bits", "_size")

    def __init__(self, group: GroupSpec, bits: int):
        if bits < 0 or bits >> group.order:
            raise GroupError("bitmask out of range for group")
        self.group = group
        self.bits = bits
        self._size = -1

    @classmethod
    def from_indices(cls, group: GroupSpec, indices) -> "GroupSubset":
        bits = 0
        for i in indices:
            if not 0 <= i < group.order:
                raise GroupError(f"element index {i} out of range")
            bits |= 1 << i
        return cls(group, bits)

    @classmethod
    def singleton(cls, group: GroupSpec, index: int) -> "GroupSubset":
        return cls.from_indices(group, [index])

    @classmethod
    def full(cls, group: GroupSpec) -> "GroupSubset":
        return cls(group, group.full_mask)

    @property
    def size(self) -> int:
        if self._size < 0:
            self._size = self.bits.bit_count()
        return self._size

    def __len__(self) -> int:
        return self.size

    def __contains__(self, index: int) -> bool:
        return bool((self.bits >> index) & 1)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, GroupSubset)
                and other.group == self.group and other.bits == self.bits)

    def __hash__(self) -> int:
        return hash((self.group, self.bits))

    def __repr__(self) -> str:
        return f"GroupSubset({self.group.spec_string()}, {{{self.format()}}})"

    def format(self) -> str:
        return ",".join(self.group.format_element(i) for i in self.indices())

    def indices(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def elements(self) -> Iterator[GroupElement]:
        for i in self.indices():
            yield GroupElement(self.group, i)

    def translate(self, b: int) -> "GroupSubset":
        return GroupSubset(self.group, self.group.translate_mask(self.bits, b))

    def union(self, other: "GroupSubset") -> "GroupSubset":
        _check_same_group(self, other)
        return GroupSubset(self.group, self.bits | other.bits)

    def intersect(self, other: "GroupSubset") -> "GroupSubset":
        _check_same_group(self, other)
        return GroupSubset(self.group, self.bits & other.bits)

    def difference(self, other: "GroupSubset") -> "GroupSubset":
        _check_same_group(self, other)
        return GroupSubset(self.group, self.bits & ~other.bits)

    def is_subset_of(self, other: "GroupSubset") -> bool:
        _check_same_group(self, other)
        return self.bits & ~other.bits == 0

    def negate(self) -> "GroupSubset":
        return GroupSubset(self.group, self.group.negate_mask(self.bits))


@dataclass(frozen=True)
class Subgroup:
    """A verified subgroup; carrier is closed under addition and contains 0."""

    carrier: GroupSubset

    @property
    def group(self) -> GroupSpec:
        return self.carrier.group

    @property
    def order(self) -> int:
        return self.carrier.size

    @property
    def index_in_group(self) -> int:
        return self.carrier.group.order // self.carrier.size

    @property
    def is_trivial(self) -> bool:
        return self.carrier.size == 1

    @property
    def is_full(self) -> bool:
        return self.carrier.size == self.carrier.group.order

    def __contains__(self, index: int) -> bool:
        return index in self.carrier

    def contains_subgroup(self, other: "Subgroup") -> bool:
        return other.carrier.is_subset_of(self.carrier)


def _check_same_group(a, b) -> None:
    ga = a.group if hasattr(a, "group") else a
    gb = b.group if hasattr(b, "group") else b
    if ga != gb:
        raise GroupError(f"mixed groups: {ga!r} vs {gb!r}")


# ---------------------------------------------------------------------------
# construction / parsing


def _prime_power_split(m: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def normalize_factors(factors: Sequence[int]) -> tuple[int, ...]:
    """Invariant-factor chain of C_{f1} x ... x C_{fk} via elementary divisors."""
    by_prime: dict[int, list[int]] = {}
    for f in factors:
        if f <= 0:
            raise GroupError(f"factor must be positive: {f}")
        for p, a in _prime_power_split(f).items():
            by_prime.setdefault(p, []).append(a)
    if not by_prime:
        return (1,)
    rank = max(len(v) for v in by_prime.values())
    chain = [1] * rank
    for p, exps in by_prime.items():
        exps = sorted(exps, reverse=True)
        for i, a in enumerate(exps):
            chain[i] *= p ** a  # largest prime powers into the last factor
    chain.reverse()
    return tuple(chain)


@functools.lru_cache(maxsize=None)
def _interned_spec(factors: tuple[int, ...]) -> GroupSpec:
    return GroupSpec(factors)


def make_group(factors: Sequence[int]) -> GroupSpec:
    """Build a GroupSpec, normalizing arbitrary factor lists (e.g. [4,2] -> [2,4])."""
    if not factors:
        raise GroupError("empty factor list")
    return _interned_spec(normalize_factors(tuple(factors)))


def parse_group(text: str) -> GroupSpec:
    """Parse a spec string like '2x4x8'."""
    parts = text.strip().split("x")
    try:
        factors = [int(p) for p in parts]
    except ValueError:
        raise GroupError(f"bad group spec {text!r}") from None
    return make_group(factors)


def parse_element(group: GroupSpec, text: str) -> int:
    """Parse an element literal: bare int for rank 1, '(c1,...,cr)' otherwise."""
    text = text.strip()
    if text.startswith("("):
        if not text.endswith(")"):
            raise GroupError(f"bad element literal {text!r}")
        try:
            coords = [int(t) for t in text[1:-1].split(",")]
        except ValueError:
            raise GroupError(f"bad element literal {text!r}") from None
        return group.index(coords)
    try:
        value = int(text)
    except ValueError:
        raise GroupError(f"bad element literal {text!r}") from None
    if group.rank != 1:
        raise GroupError(f"bare integer element for rank-{group.rank} group")
    return value % group.order


# ---------------------------------------------------------------------------
# subset operations


def sumset(a: GroupSubset, b: GroupSubset) -> GroupSubset:
    """A + B = {x + y : x in A, y in B}."""
    _check_same_group(a, b)
    if a.bits == 0 or b.bits == 0:
        raise GroupError("sumset of empty set")
    if a.size < b.size:
        a, b = b, a
    g = a.group
    out = 0
    for i in iter_bits(b.bits):
        out |= g.translate_mask(a.bits, i)
    return GroupSubset(g, out)


def iterated_sumset(a: GroupSubset, n: int) -> GroupSubset:
    """nA, with 0A = {0}.  Early-exits once further summands only translate."""
    if n < 0:
        raise GroupError("negative iteration count")
    g = a.group
    if n == 0:
        return GroupSubset(g, 1)
    if a.bits == 0:
        raise GroupError("iterated sumset of empty set")
    a0 = next(iter_bits(a.bits))
    result = a
    for step in range(1, n):
        nxt = sumset(result, a)
        if nxt.bits == g.translate_mask(result.bits, a0):
            # stabilized: each remaining summand is a translation by a0
            remaining = n - step
            return result.translate(g.scale(remaining, a0))
        result = nxt
    return result


def representation_count(summands: Sequence[GroupSubset], x: int) -> int:
    """Number of tuples (a1,..,an) in A1 x ... x An with sum x."""
    if not summands:
        raise GroupError("no summands")
    g = summands[0].group
    for s in summands[1:]:
        _check_same_group(s, summands[0])
    counts = [0] * g.order
    counts[0] = 1
    for subset in summands:
        nxt = [0] * g.order
        for a in iter_bits(subset.bits):
            for i, c in enumerate(counts):
                if c:
                    nxt[g.add(i, a)] += c
        counts = nxt
    return counts[x]


def representation_min(summands: Sequence[GroupSubset]) -> tuple[int, int]:
    """(min over x in the sumset of r(x), argmin index)."""
    g = summands[0].group
    counts = [0] * g.order
    counts[0] = 1
    for subset in summands:
        nxt = [0] * g.order
        for a in iter_bits(subset.bits):
            for i, c in enumerate(counts):
                if c:
                    nxt[g.add(i, a)] += c
        counts = nxt
    best = None
    best_x = -1
    for x, c in enumerate(counts):
        if c and (best is None or c < best):
            best, best_x = c, x
    return best, best_x


def stabilizer(a: GroupSubset) -> Subgroup:
    """H(A) = {x : x + A = A}, the maximal period of A."""
    if a.bits == 0:
        raise GroupError("stabilizer of empty set")
    g = a.group
    a0 = next(iter_bits(a.bits))
    # any stabilizing x satisfies x + a0 in A, so scan A - a0 only
    candidates = g.translate_mask(a.bits, g.neg(a0))
    bits = 0
    for x in iter_bits(candidates):
        if g.translate_mask(a.bits, x) == a.bits:
            bits |= 1 << x
    return Subgroup(GroupSubset(g, bits))


def is_periodic_with(a: GroupSubset, h: Subgroup) -> bool:
    """True when A is a union of H-cosets."""
    return h.carrier.is_subset_of(stabilizer(a).carrier)


def subgroup_generated(s: GroupSubset) -> Subgroup:
    """Additive closure of S together with 0."""
    g = s.group
    closure = 1  # contains 0
    for gen in iter_bits(s.bits):
        prev = -1
        while closure != prev:
            prev = closure
            closure |= g.translate_mask(closure, gen)
    return Subgroup(GroupSubset(g, closure))


def affine_span(a: GroupSubset) -> Subgroup:
    """<A>_* = <-a0 + A>: smallest subgroup with A inside one of its cosets."""
    if a.bits == 0:
        raise GroupError("affine span of empty set")
    g = a.group
    a0 = next(iter_bits(a.bits))
    shifted = g.translate_mask(a.bits, g.neg(a0))
    return subgroup_generated(GroupSubset(g, shifted))


def verify_subgroup(g: GroupSpec, carrier: GroupSubset) -> Subgroup:
    """Check closure by full scan and wrap; raises GroupError when not a subgroup."""
    _check_same_group(carrier, g)
    if 0 not in carrier:
        raise GroupError("subgroup must contain 0")
    for x in carrier.indices():
        if g.translate_mask(carrier.bits, x) != carrier.bits:
            raise GroupError(f"not closed under addition by {g.format_element(x)}")
    return Subgroup(carrier)


def group_params(g: GroupSpec) -> tuple[int, int]:
    """(d*(G), exp(G)) where d*(G) = sum (mi - 1)."""
    d_star = sum(m - 1 for m in g.invariant_factors)
    return d_star, g.exponent


# ---------------------------------------------------------------------------
# black-box decomposition (quotients and subgroup re-specing)


def _blackbox_basis(n: int, add: Callable[[int, int], int]) -> list[tuple[int, int]]:
    """Generators (element, order) of an abelian black-box group on [0, n).

    Orders come out non-increasing and form the invariant factors (largest
    first).  Identity must be element 0.
    """
    if n == 1:
        return []

    def elem_order(x: int) -> int:
        o, acc = 1, x
        while acc != 0:
            acc = add(acc, x)
            o += 1
        return o

    def mul(k: int, x: int) -> int:
        acc = 0
        for _ in range(k):
            acc = add(acc, x)
        return acc

    orders = [elem_order(x) for x in range(n)]
    m = max(orders)
    x = orders.index(m)
    cyclic = set(mul(k, x) for k in range(m))
    # label cosets of <x>
    coset_of = [-1] * n
    reps: list[int] = []
    for e in range(n):
        if coset_of[e] >= 0:
            continue
        label = len(reps)
        reps.append(e)
        for c in cyclic:
            coset_of[add(e, c)] = label
    assert coset_of[0] == 0 and reps[0] == 0

    def q_add(a: int, b: int) -> int:
        return coset_of[add(reps[a], reps[b])]

    basis = [(x, m)]
    for rep_label, o in _blackbox_basis(n // m, q_add):
        y = reps[rep_label]
        # adjust lift so its order matches the quotient order o
        oy = mul(o, y)           # lies in <x>
        t = next(k for k in range(m) if mul(k, x) == oy)
        assert t % o == 0
        y = add(y, mul(m - t // o, x))
        basis.append((y, o))
    return basis


def _blackbox_spec(n: int, add: Callable[[int, int], int]) -> tuple[GroupSpec, list[int], dict[int, int]]:
    """Decompose a black-box abelian group into (spec, spec_idx->elem, elem->spec_idx)."""
    basis = _blackbox_basis(n, add)
    factors = tuple(o for _, o in reversed(basis)) or (1,)
    spec = _interned_spec(factors)
    to_elem = [0] * n
    from_elem: dict[int, int] = {}
    gens = [g for g, _ in reversed(basis)]  # aligned with ascending factors

    def build(pos: int, elem: int, idx: int) -> None:
        if pos == len(gens):
            to_elem[idx] = elem
            from_elem[elem] = idx
            return
        m = factors[pos]
        stride = spec.strides[pos]
        cur = elem
        for c in range(m):
            build(pos + 1, cur, idx + c * stride)
            cur = add(cur, gens[pos])

    build(0, 0, 0)
    if len(from_elem) != n:
        raise GroupError("black-box decomposition failed to cover the group")
    return spec, to_elem, from_elem


@dataclass
class QuotientStructure:
    """Coset table of G/H together with an explicit GroupSpec isomorphism."""

    parent: GroupSpec
    subgroup: Subgroup
    coset_of: list[int]                 # element index -> coset label
    representatives: list[int]          # coset label -> element index
    quotient_spec: GroupSpec
    iso: list[int]                      # coset label -> quotient_spec index
    iso_inv: list[int] = field(repr=False, default_factory=list)  # spec index -> coset label

    @property
    def num_cosets(self) -> int:
        return len(self.representatives)

    def image(self, element_index: int) -> int:
        """Image of a parent element in quotient_spec coordinates."""
        return self.iso[self.coset_of[element_index]]

    def image_mask(self, mask: int) -> int:
        out = 0
        for i in iter_bits(mask):
            out |= 1 << self.image(i)
        return out

    def preimage_mask(self, qmask: int) -> int:
        out = 0
        hbits = self.subgroup.carrier.bits
        for q in iter_bits(qmask):
            out |= self.parent.translate_mask(hbits, self.representatives[self.iso_inv[q]])
        return out

    def image_subset(self, subset: GroupSubset) -> GroupSubset:
        return GroupSubset(self.quotient_spec, self.image_mask(subset.bits))

    def preimage_subset(self, qsubset: GroupSubset) -> GroupSubset:
        return GroupSubset(self.parent, self.preimage_mask(qsubset.bits))


def quotient_decompose(g: GroupSpec, h: Subgroup, validate: bool = True) -> QuotientStructure:
    """Coset table plus invariant factors of G/H via black-box decomposition."""
    _check_same_group(h.carrier, g)
    verify_subgroup(g, h.carrier)
    hbits = h.carrier.bits
    coset_of = [-1] * g.order
    reps: list[int] = []
    for e in range(g.order):
        if coset_of[e] >= 0:
            continue
        label = len(reps)
        reps.append(e)
        for i in iter_bits(g.translate_mask(hbits, e)):
            coset_of[i] = label
    q = len(reps)

    def c_add(a: int, b: int) -> int:
        return coset_of[g.add(reps[a], reps[b])]

    spec, to_elem, from_elem = _blackbox_spec(q, c_add)
    iso = [from_elem[c] for c in range(q)]
    iso_inv = [0] * q
    for c, s in enumerate(iso):
        iso_inv[s] = c
    structure = QuotientStructure(g, h, coset_of, reps, spec, iso, iso_inv)
    if validate and g.order <= DEFAULT_ORDER_CAP:
        for a in range(q):
            for b in range(q):
                if spec.add(iso[a], iso[b]) != iso[c_add(a, b)]:
                    raise GroupError("quotient isomorphism failed table check")
    return structure


_quotient_cache: dict[tuple[GroupSpec, int], QuotientStructure] = {}


def quotient_cached(g: GroupSpec, h: Subgroup) -> QuotientStructure:
    key = (g, h.carrier.bits)
    q = _quotient_cache.get(key)
    if q is None:
        q = quotient_decompose(g, h)
        _quotient_cache[key] = q
    return q


@dataclass
class SubgroupEmbedding:
    """A subgroup K <= G re-specified as its own GroupSpec with index maps."""

    parent: GroupSpec
    subgroup: Subgroup
    spec: GroupSpec
    to_parent: list[int]        # spec index -> parent element index
    from_parent: dict[int, int]

    def map_mask_to_parent(self, mask: int) -> int:
        out = 0
        for i in iter_bits(mask):
            out |= 1 << self.to_parent[i]
        return out

    def map_mask_from_parent(self, mask: int) -> int:
        out = 0
        for i in iter_bits(mask):
            out |= 1 << self.from_parent[i]
        return out


def subgroup_embedding(g: GroupSpec, k: Subgroup) -> SubgroupEmbedding:
    _check_same_group(k.carrier, g)
    members = list(k.carrier.indices())
    label_of = {e: i for i, e in enumerate(members)}

    def s_add(a: int, b: int) -> int:
        return label_of[g.add(members[a], members[b])]

    spec, to_elem, from_elem = _blackbox_spec(len(members), s_add)
    to_parent = [members[lbl] for lbl in to_elem]
    from_parent = {members[lbl]: idx for lbl, idx in from_elem.items()}
    return SubgroupEmbedding(g, k, spec, to_parent, from_parent)


def enumerate_subgroups(g: GroupSpec, cap: int = DEFAULT_ORDER_CAP) -> list[Subgroup]:
    """All subgroups of G, sorted by (size, carrier bitmask)."""
    if g.order > cap:
        raise GroupError(f"group order {g.order} exceeds subgroup enumeration cap {cap}")
    seen = {1}  # trivial subgroup bitmask
    frontier = [1]
    while frontier:
        bits = frontier.pop()
        for e in range(1, g.order):
            if (bits >> e) & 1:
                continue
            new = subgroup_generated(GroupSubset(g, bits | (1 << e))).carrier.bits
            if new not in seen:
                seen.add(new)
                frontier.append(new)
    masks = sorted(seen, key=lambda b: (b.bit_count(), b))
    return [Subgroup(GroupSubset(g, b)) for b in masks]


def abelian_groups_of_order(m: int) -> list[GroupSpec]:
    """All abelian groups of order m, as invariant-factor specs."""
    if m < 1:
        raise GroupError("order must be positive")

    def partitions(a: int) -> list[list[int]]:
        out = []

        def rec(rest: int, maxpart: int, acc: list[int]) -> None:
            if rest == 0:
                out.append(list(acc))
                return
            for p in range(min(rest, maxpart), 0, -1):
                acc.append(p)
                rec(rest - p, p, acc)
                acc.pop()

        rec(a, a, [])
        return out

    primes = _prime_power_split(m)
    specs = [[]]
    for p, a in primes.items():
        new = []
        for part in partitions(a):
            powers = [p ** e for e in part]  # descending
            for base in specs:
                merged = list(base)
                while len(merged) < len(powers):
                    merged.insert(0, 1)
                padded = [1] * (len(merged) - len(powers)) + powers[::-1]
                new.append([x * y for x, y in zip(merged, padded)])
        specs = new
    return [make_group(s if s else [1]) for s in specs]
