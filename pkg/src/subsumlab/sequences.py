"""Sequences (multisets) over a finite abelian group and subsequence-sum tools.

A sequence is stored as a multiplicity vector indexed by element index; all
the standard functionals (sigma, h, supp, n-term subsums) are multiplicity
based.  n-term subsums are computed by a bounded-knapsack DP over bitmask
rows, one row per chosen-count.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterator, Sequence

from .groups import (
    GroupElement,
    GroupError,
    GroupSpec,
    GroupSubset,
    Subgroup,
    QuotientStructure,
    iter_bits,
    parse_element,
    quotient_cached,
    stabilizer,
)


class SequenceError(ValueError):
    """Invalid sequence operation (bad lengths, mismatched groups, ...)."""


class GSequence:
    """Multiset of group elements with cached length."""

    __slots__ = ("group", "mult", "length")

    def __init__(self, group: GroupSpec, mult: Sequence[int]):
        if len(mult) != group.order:
            raise SequenceError("multiplicity vector length must equal |G|")
        if any(m < 0 for m in mult):
            raise SequenceError("negative multiplicity")
        self.group = group
        self.mult = tuple(mult)
        self.length = sum(mult)

    @classmethod
    def empty(cls, group: GroupSpec) -> "GSequence":
        return cls(group, [0] * group.order)

    @classmethod
    def from_pairs(cls, group: GroupSpec, pairs: Sequence[tuple[int, int]]) -> "GSequence":
        mult = [0] * group.order
        for idx, count in pairs:
            if not 0 <= idx < group.order:
                raise SequenceError(f"element index {idx} out of range")
            if count < 0:
                raise SequenceError("negative multiplicity")
            mult[idx] += count
        return cls(group, mult)

    @classmethod
    def from_terms(cls, group: GroupSpec, terms: Sequence[int]) -> "GSequence":
        return cls.from_pairs(group, [(t, 1) for t in terms])

    def __len__(self) -> int:
        return self.length

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, GSequence)
                and other.group == self.group and other.mult == self.mult)

    def __hash__(self) -> int:
        return hash((self.group, self.mult))

    def __repr__(self) -> str:
        return f"GSequence({self.group.spec_string()}, {self.format()!r})"

    def multiplicity(self, idx: int) -> int:
        return self.mult[idx]

    def terms(self) -> Iterator[int]:
        """Each term once per multiplicity, ascending element index."""
        for idx, m in enumerate(self.mult):
            for _ in range(m):
                yield idx

    def support_indices(self) -> Iterator[int]:
        return (i for i, m in enumerate(self.mult) if m)

    def support(self) -> GroupSubset:
        return GroupSubset.from_indices(self.group, self.support_indices())

    def max_multiplicity(self) -> int:
        return max(self.mult, default=0)

    def sum_index(self) -> int:
        g = self.group
        total = 0
        for idx, m in enumerate(self.mult):
            if m:
                total = g.add(total, g.scale(m, idx))
        return total

    def is_subsequence_of(self, other: "GSequence") -> bool:
        if other.group != self.group:
            raise SequenceError("mixed groups")
        return all(a <= b for a, b in zip(self.mult, other.mult))

    def remove(self, other: "GSequence") -> "GSequence":
        """self with the terms of other removed; other | self required."""
        if not other.is_subsequence_of(self):
            raise SequenceError("removal of a non-subsequence")
        return GSequence(self.group, [a - b for a, b in zip(self.mult, other.mult)])

    def concat(self, other: "GSequence") -> "GSequence":
        if other.group != self.group:
            raise SequenceError("mixed groups")
        return GSequence(self.group, [a + b for a, b in zip(self.mult, other.mult)])

    def translate(self, b: int) -> "GSequence":
        g = self.group
        mult = [0] * g.order
        for idx, m in enumerate(self.mult):
            if m:
                mult[g.add(idx, b)] = m
        return GSequence(g, mult)

    def restrict_to(self, mask: int) -> "GSequence":
        """Subsequence of terms whose element lies in the bitmask."""
        return GSequence(self.group,
                         [m if (mask >> i) & 1 else 0 for i, m in enumerate(self.mult)])

    def count_outside(self, mask: int) -> int:
        return sum(m for i, m in enumerate(self.mult) if not (mask >> i) & 1)

    def format(self) -> str:
        parts = []
        for idx, m in enumerate(self.mult):
            if not m:
                continue
            lit = self.group.format_element(idx)
            parts.append(lit if m == 1 else f"{lit}^{m}")
        return ";".join(parts)


def parse_sequence(group: GroupSpec, text: str) -> GSequence:
    """Parse sequence literal 'elem(^count)?(;elem(^count)?)*', e.g. '0^2;4^2'."""
    text = "".join(text.split())
    if not text:
        return GSequence.empty(group)
    pairs = []
    for term in text.split(";"):
        if "^" in term:
            elem_text, _, count_text = term.rpartition("^")
            try:
                count = int(count_text)
            except ValueError:
                raise SequenceError(f"bad multiplicity in {term!r}") from None
            if count < 0:
                raise SequenceError(f"negative multiplicity in {term!r}")
        else:
            elem_text, count = term, 1
        pairs.append((parse_element(group, elem_text), count))
    return GSequence.from_pairs(group, pairs)


def seq_stats(s: GSequence) -> tuple[GroupElement, int, GroupSubset]:
    """(sigma(S), h(S), supp(S)); (0, 0, empty) for the empty sequence."""
    return (GroupElement(s.group, s.sum_index()), s.max_multiplicity(), s.support())


# ---------------------------------------------------------------------------
# subsequence sums


def subsum_table(s: GSequence, cap: int) -> list[int]:
    """Bitmasks of Sigma_j(S) for j = 0..cap (rows[0] = {0}).

    Bounded-knapsack update per support element, ascending index, rows
    descending; exact for every j simultaneously.
    """
    g = s.group
    rows = [0] * (cap + 1)
    rows[0] = 1
    for idx, m in enumerate(s.mult):
        if not m:
            continue
        m = min(m, cap)
        shifts = [g.scale(t, idx) for t in range(1, m + 1)]
        for j in range(cap, 0, -1):
            acc = rows[j]
            for t in range(1, min(m, j) + 1):
                low = rows[j - t]
                if low:
                    acc |= g.translate_mask(low, shifts[t - 1])
            rows[j] = acc
    return rows


def nterm_subsums(s: GSequence, n: int) -> GroupSubset:
    """Sigma_n(S): sums of all length-n subsequences."""
    if not 0 <= n <= s.length:
        raise SequenceError(f"n={n} outside [0, |S|={s.length}]")
    return GroupSubset(s.group, subsum_table(s, n)[n])


def all_subsums(s: GSequence) -> GroupSubset:
    """Sigma(S): sums of all nonempty subsequences."""
    if s.length == 0:
        raise SequenceError("subsums of the empty sequence")
    rows = subsum_table(s, s.length)
    bits = 0
    for row in rows[1:]:
        bits |= row
    return GroupSubset(s.group, bits)


def push_forward(s: GSequence, q: QuotientStructure) -> GSequence:
    """phi_H(S) as a sequence over the quotient spec."""
    if q.parent != s.group:
        raise SequenceError("quotient structure over a different group")
    mult = [0] * q.quotient_spec.order
    for idx, m in enumerate(s.mult):
        if m:
            mult[q.image(idx)] += m
    return GSequence(q.quotient_spec, mult)


@dataclass
class SubsumProfile:
    """Bookkeeping (H, X, e, rho) for the n-term subsum bound."""

    H: Subgroup
    quotient: QuotientStructure
    X: GroupSubset            # subset of quotient_spec
    N: int
    e: int
    rho: int
    n: int
    ref_len: int
    sigma_n: GroupSubset
    bound_primary: int        # ((N-1)n + e + 1)|H|
    bound_alt: int            # (sum_x min(n, v_x(phi(S))) - n + 1)|H|

    @property
    def Z_mask(self) -> int:
        """Bitmask of phi_H^{-1}(X) in the parent group."""
        return self.quotient.preimage_mask(self.X.bits)


def subsum_profile(s: GSequence, n: int, ref_len: int,
                   sigma: GroupSubset | None = None) -> SubsumProfile:
    """H = H(Sigma_n(S)), X, e and rho = |X||H|n + e - ref_len.

    ref_len is |S| for the plain subsum bound and |S'| when profiling against
    a distinguished subsequence.  sigma, when given, must equal Sigma_n(S)
    (callers sharing one DP table across several n pass it to avoid recompute).
    """
    if not 1 <= n <= s.length:
        raise SequenceError(f"n={n} outside [1, |S|={s.length}]")
    sig = sigma if sigma is not None else nterm_subsums(s, n)
    h = stabilizer(sig)
    q = quotient_cached(s.group, h)
    phi_s = push_forward(s, q)
    x_bits = 0
    e = 0
    for idx, m in enumerate(phi_s.mult):
        if m >= n:
            x_bits |= 1 << idx
        else:
            e += m
    big_n = x_bits.bit_count()
    order_h = h.order
    rho = big_n * order_h * n + e - ref_len
    bound_primary = ((big_n - 1) * n + e + 1) * order_h
    bound_alt = (sum(min(n, m) for m in phi_s.mult) - n + 1) * order_h
    if bound_primary != bound_alt:
        raise SequenceError("subsum bound forms disagree (internal inconsistency)")
    return SubsumProfile(h, q, GroupSubset(q.quotient_spec, x_bits),
                         big_n, e, rho, n, ref_len, sig, bound_primary, bound_alt)


def build_s_star(s: GSequence, profile: SubsumProfile, n: int) -> GSequence:
    """S*: every term of phi_H^{-1}(X) raised to multiplicity exactly n."""
    if profile.n != n or profile.ref_len != s.length:
        raise SequenceError("profile was not computed from (S, n) with ref_len=|S|")
    z = profile.Z_mask
    mult = list(s.mult)
    for idx in iter_bits(z):
        mult[idx] = n
    star = GSequence(s.group, mult)
    if not s.is_subsequence_of(star):
        raise SequenceError("S* construction lost terms of S")
    if star.length != s.length + profile.rho:
        raise SequenceError("|S*| != |S| + rho")
    if star.mult != s.mult:
        # Sigma_n(S) <= Sigma_n(S*) already holds (S | S*), and Sigma_n(S) is
        # H-saturated, so equality reduces to equality of quotient images --
        # a DP over the much smaller quotient group.
        q = profile.quotient
        phi_star = push_forward(star, q)
        if nterm_subsums(phi_star, n).bits != q.image_mask(profile.sigma_n.bits):
            raise SequenceError("Sigma_n(S*) != Sigma_n(S)")
    return star


# ---------------------------------------------------------------------------
# Davenport constant


def davenport_bruteforce(g: GroupSpec, cap: int = 16) -> int:
    """D(G) by exhaustive search over canonical zero-sum-free sequences.

    Explores sequences in nondecreasing element order, extending only while
    zero-sum-free; D(G) is one more than the longest zero-sum-free length.
    """
    if g.order > cap:
        raise GroupError(f"group order {g.order} exceeds Davenport cap {cap}")
    best = 0

    def extend(min_elem: int, subsums: int, length: int) -> None:
        nonlocal best
        best = max(best, length)
        for e in range(min_elem, g.order):
            if e == 0:
                continue
            new = subsums | g.translate_mask(subsums, e) | (1 << e)
            if not new & 1:  # still zero-sum-free
                extend(e, new, length + 1)

    extend(1, 0, 0)
    d = best + 1
    d_star = sum(m - 1 for m in g.invariant_factors)
    if not d_star + 1 <= d <= g.order:
        warnings.warn(
            f"Davenport value {d} escapes the classical sandwich "
            f"[{d_star + 1}, {g.order}] for {g.spec_string()}; "
            "at this scale that indicates a bug", RuntimeWarning)
    return d
