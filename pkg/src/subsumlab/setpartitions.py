"""Setpartitions: constructive partition solver and main certificate pipeline.

partition_solve realizes the two-case partition dichotomy for n-term subsums
(large part-sum, or all parts concentrated on the high-multiplicity cosets);
main_pipeline realizes the strengthened conclusion under the exponent-style
hypotheses, recursing into subgroups exactly as the inductive argument does.
Every certificate is re-verified from scratch before being returned.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .groups import (
    GroupError,
    GroupSpec,
    GroupSubset,
    Subgroup,
    iter_bits,
    quotient_cached,
    stabilizer,
    subgroup_embedding,
    subgroup_generated,
    sumset,
)
from .sequences import GSequence, nterm_subsums, subsum_profile


class PartitionError(ValueError):
    """Precondition violated for a setpartition operation."""


class HypothesesUnmetError(PartitionError):
    """None of the main-theorem hypothesis items holds for the instance."""


class InternalError(RuntimeError):
    """A step the theory guarantees has failed; carries an instance dump."""

    def __init__(self, message: str, dump: dict | None = None):
        super().__init__(message)
        self.dump = dump or {}


FALLBACK_CAP = 12          # exhaustive setpartition search threshold on |S'|
_EXHAUSTIVE_STEP_CAP = 10_000_000


class SetPartition:
    """Ordered list of nonempty subsets of a common group."""

    __slots__ = ("group", "parts")

    def __init__(self, group: GroupSpec, parts: Sequence[GroupSubset]):
        for p in parts:
            if p.group != group:
                raise PartitionError("part from a different group")
            if p.bits == 0:
                raise PartitionError("empty part")
        self.group = group
        self.parts = tuple(parts)

    @property
    def n(self) -> int:
        return len(self.parts)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, SetPartition)
                and other.group == self.group and other.parts == self.parts)

    def __repr__(self) -> str:
        inner = " | ".join("{" + p.format() + "}" for p in self.parts)
        return f"SetPartition({self.group.spec_string()}, {inner})"

    def underlying_sequence(self) -> GSequence:
        mult = [0] * self.group.order
        for p in self.parts:
            for i in p.indices():
                mult[i] += 1
        return GSequence(self.group, mult)

    def total_size(self) -> int:
        return sum(p.size for p in self.parts)

    def translate(self, b: int) -> "SetPartition":
        return SetPartition(self.group, [p.translate(b) for p in self.parts])

    def sum_subset(self, upto: int | None = None) -> GroupSubset:
        """Sum of the first `upto` parts (all parts by default)."""
        parts = self.parts if upto is None else self.parts[:upto]
        if not parts:
            return GroupSubset(self.group, 1)
        acc = parts[0]
        for p in parts[1:]:
            acc = sumset(acc, p)
        return acc


@dataclass
class Certificate:
    """Machine-checkable record of which conclusion holds; never trusted."""

    case_tag: str                       # "I" or "II"
    partition: SetPartition
    H: Optional[Subgroup] = None
    K: Optional[Subgroup] = None
    alpha: Optional[int] = None
    e_H: int = 0
    e_K: int = 0
    k: int = 0                          # n - e_K in case II
    bounds: dict = field(default_factory=dict)
    mode: str = "standard"
    theorem: str = "main"               # "partition" or "main"
    verified: bool = False

    def to_dict(self) -> dict:
        g = self.partition.group
        return {
            "case": self.case_tag,
            "theorem": self.theorem,
            "mode": self.mode,
            "parts": [[g.format_element(i) for i in p.indices()]
                      for p in self.partition.parts],
            "H": ([g.format_element(i) for i in self.H.carrier.indices()]
                  if self.H else None),
            "K": ([g.format_element(i) for i in self.K.carrier.indices()]
                  if self.K else None),
            "alpha": g.format_element(self.alpha) if self.alpha is not None else None,
            "e_H": self.e_H,
            "e_K": self.e_K,
            "k": self.k,
            "bounds": dict(self.bounds),
            "verified": self.verified,
        }

    @classmethod
    def from_dict(cls, group: GroupSpec, data: dict) -> "Certificate":
        from .groups import parse_element

        def subset(elems):
            return GroupSubset.from_indices(group, [parse_element(group, e) for e in elems])

        parts = SetPartition(group, [subset(p) for p in data["parts"]])
        return cls(
            case_tag=data["case"],
            partition=parts,
            H=Subgroup(subset(data["H"])) if data.get("H") else None,
            K=Subgroup(subset(data["K"])) if data.get("K") else None,
            alpha=(parse_element(group, data["alpha"])
                   if data.get("alpha") is not None else None),
            e_H=data.get("e_H", 0),
            e_K=data.get("e_K", 0),
            k=data.get("k", 0),
            bounds=dict(data.get("bounds", {})),
            mode=data.get("mode", "standard"),
            theorem=data.get("theorem", "main"),
            verified=data.get("verified", False),
        )


# ---------------------------------------------------------------------------
# basic construction


def make_setpartition(s: GSequence, n: int) -> SetPartition:
    """Round-robin n-setpartition with underlying sequence exactly S."""
    h = s.max_multiplicity()
    if h > n:
        raise PartitionError(f"max multiplicity h(S)={h} exceeds n={n}")
    if n > s.length:
        raise PartitionError(f"n={n} exceeds |S|={s.length}")
    if n < 1:
        raise PartitionError("need at least one part")
    bits = [0] * n
    ptr = 0
    for g, m in enumerate(s.mult):
        for _ in range(m):
            bits[ptr] |= 1 << g
            ptr = (ptr + 1) % n
    return SetPartition(s.group, [GroupSubset(s.group, b) for b in bits])


def _greedy_capped(s: GSequence, per_elem_cap: int, total_cap: int | None = None) -> GSequence:
    """Take min(v_g, per_elem_cap) of each element ascending, stopping at total_cap."""
    mult = [0] * s.group.order
    total = 0
    for g, m in enumerate(s.mult):
        take = min(m, per_elem_cap)
        if total_cap is not None:
            take = min(take, total_cap - total)
        if take > 0:
            mult[g] = take
            total += take
        if total_cap is not None and total >= total_cap:
            break
    return GSequence(s.group, mult)


def _first_terms(s: GSequence, count: int) -> GSequence:
    if count == 0:
        return GSequence.empty(s.group)
    return _greedy_capped(s, per_elem_cap=count, total_cap=count)


def _complete_counterpart(s: GSequence, s_prime_len: int, n: int, k: int,
                          t: GSequence) -> GSequence:
    """T' | T^{[-1]}S with |T|+|T'| = |S'| and h(T') <= n-k <= |T'|.

    t must have maximal length among subsequences with h <= k and
    length <= |S'| - (n-k).
    """
    cap = s_prime_len - (n - k)
    rem = s.remove(t)
    if t.length == cap:
        t_prime = _first_terms(rem, n - k)
        if t_prime.length != n - k:
            raise InternalError("not enough remaining terms for the counterpart")
    else:
        r = _greedy_capped(rem, per_elem_cap=n - k)
        need = s_prime_len - t.length
        if r.length < need:
            raise InternalError("maximal counterpart shorter than required")
        t_prime = _first_terms(r, need)
    if t.length + t_prime.length != s_prime_len:
        raise InternalError("counterpart length mismatch")
    if t_prime.max_multiplicity() > n - k or t_prime.length < n - k:
        raise InternalError("counterpart multiplicity bounds violated")
    return t_prime


def lemma31_complete(s: GSequence, s_prime: GSequence, n: int, k: int
                     ) -> tuple[GSequence, GSequence]:
    """Split-off pair (T, T'): h(T) <= k <= |T|, h(T') <= n-k <= |T'|, |T|+|T'|=|S'|."""
    if not s_prime.is_subsequence_of(s):
        raise PartitionError("S' must be a subsequence of S")
    if not (s_prime.max_multiplicity() <= n <= s_prime.length):
        raise PartitionError("need h(S') <= n <= |S'|")
    if not 1 <= k <= n:
        raise PartitionError("need 1 <= k <= n")
    cap = s_prime.length - (n - k)
    t = _greedy_capped(s, per_elem_cap=k, total_cap=cap)
    if t.length < k:
        raise InternalError("greedy maximal subsequence shorter than k")
    t_prime = _complete_counterpart(s, s_prime.length, n, k, t)
    return t, t_prime


# ---------------------------------------------------------------------------
# partition theorem solver


def _validate_instance(s: GSequence, s_prime: GSequence, n: int) -> None:
    if s_prime.group != s.group:
        raise PartitionError("S and S' over different groups")
    if not s_prime.is_subsequence_of(s):
        raise PartitionError("S' must be a subsequence of S")
    h = s_prime.max_multiplicity()
    if h > n:
        raise PartitionError(f"h(S')={h} > n={n}")
    if n > s_prime.length:
        raise PartitionError(f"n={n} > |S'|={s_prime.length}")
    if n < 1:
        raise PartitionError("n must be >= 1")


def _unused_terms(s: GSequence, partition: SetPartition) -> GSequence:
    return s.remove(partition.underlying_sequence())


def _hill_climb(s: GSequence, s_prime: GSequence, n: int, target: int,
                max_moves: int = 2000) -> tuple[list[int], int]:
    """First-improvement local search maximizing |sum of parts|.

    Moves: replace an element of a part by an unused term of S; transfer an
    element between parts; swap elements between parts.  Returns part
    bitmasks and the achieved sum size.
    """
    g = s.group
    parts = [p.bits for p in make_setpartition(s_prime, n).parts]

    def total_sum(bits_list: list[int]) -> int:
        acc = 1  # {0}
        for b in bits_list:
            nb = 0
            for i in iter_bits(b):
                nb |= g.translate_mask(acc, i)
            acc = nb
        return acc

    def unused_counts(bits_list: list[int]) -> list[int]:
        used = [0] * g.order
        for b in bits_list:
            for i in iter_bits(b):
                used[i] += 1
        return [m - u for m, u in zip(s.mult, used)]

    best_mask = total_sum(parts)
    best = best_mask.bit_count()
    moves = 0
    improved = True
    while improved and best < target and moves < max_moves:
        improved = False
        spare = unused_counts(parts)
        for i in range(n):
            # partial product excluding part i
            others = parts[:i] + parts[i + 1:]
            rest = 1
            for b in others:
                nb = 0
                for t in iter_bits(b):
                    nb |= g.translate_mask(rest, t)
                rest = nb

            def size_with(newbits: int) -> int:
                acc = 0
                for t in iter_bits(newbits):
                    acc |= g.translate_mask(rest, t)
                return acc.bit_count()

            # replace an element by an unused term
            for e in iter_bits(parts[i]):
                for u, cnt in enumerate(spare):
                    if cnt <= 0 or (parts[i] >> u) & 1:
                        continue
                    cand = (parts[i] & ~(1 << e)) | (1 << u)
                    if size_with(cand) > best:
                        parts[i] = cand
                        improved = True
                        break
                if improved:
                    break
            if improved:
                break
            # transfers and swaps with later parts
            for j in range(n):
                if j == i:
                    continue
                for e in iter_bits(parts[i]):
                    # transfer i -> j
                    if parts[i].bit_count() >= 2 and not (parts[j] >> e) & 1:
                        cand_i = parts[i] & ~(1 << e)
                        cand_j = parts[j] | (1 << e)
                        trial = parts[:]
                        trial[i], trial[j] = cand_i, cand_j
                        if total_sum(trial).bit_count() > best:
                            parts[i], parts[j] = cand_i, cand_j
                            improved = True
                            break
                    # swap with each element of part j
                    for f in iter_bits(parts[j]):
                        if f == e or (parts[j] >> e) & 1 or (parts[i] >> f) & 1:
                            continue
                        cand_i = (parts[i] & ~(1 << e)) | (1 << f)
                        cand_j = (parts[j] & ~(1 << f)) | (1 << e)
                        trial = parts[:]
                        trial[i], trial[j] = cand_i, cand_j
                        if total_sum(trial).bit_count() > best:
                            parts[i], parts[j] = cand_i, cand_j
                            improved = True
                            break
                    if improved:
                        break
                if improved:
                    break
            if improved:
                break
        if improved:
            moves += 1
            best = total_sum(parts).bit_count()
    return parts, best


def iter_setpartitions(s: GSequence, total: int, n: int) -> Iterator[list[int]]:
    """All n-setpartitions (part bitmasks) with S(A) | S, |S(A)| = total.

    Canonical up to part order: a new part may only be opened as the next
    unused slot.  Intended for |S'| <= FALLBACK_CAP.
    """
    elems = [(g, m) for g, m in enumerate(s.mult) if m]
    caps = [min(m, n) for _, m in elems]
    suffix_cap = [0] * (len(elems) + 1)
    for i in range(len(elems) - 1, -1, -1):
        suffix_cap[i] = suffix_cap[i + 1] + caps[i]
    steps = 0

    def rec(pos: int, parts: list[int], used: int, remaining: int) -> Iterator[list[int]]:
        nonlocal steps
        steps += 1
        if steps > _EXHAUSTIVE_STEP_CAP:
            raise InternalError("exhaustive setpartition search exceeded step cap")
        if remaining == 0:
            if used == n:
                yield list(parts)
            return
        if pos == len(elems) or remaining > suffix_cap[pos]:
            return
        g, m = elems[pos]
        top = min(m, n, remaining)
        for c in range(top, -1, -1):
            if c == 0:
                yield from rec(pos + 1, parts, used, remaining)
                continue
            max_new = min(c, n - used)
            for new in range(max_new + 1):
                old = c - new
                if old > used:
                    continue
                for combo in itertools.combinations(range(used), old):
                    chosen = list(combo) + list(range(used, used + new))
                    for p in chosen:
                        if p < len(parts):
                            parts[p] |= 1 << g
                        else:
                            parts.append(1 << g)
                    yield from rec(pos + 1, parts, used + new, remaining - c)
                    for p in chosen:
                        parts[p] &= ~(1 << g)
                    while parts and parts[-1] == 0:
                        parts.pop()
        return

    yield from rec(0, [], 0, total)


def _partition_case2_construct(s: GSequence, s_prime: GSequence, n: int,
                               profile) -> Optional[SetPartition]:
    """Direct witness for the concentrated case: outside terms spread one per
    part, every part covering each high-multiplicity coset."""
    g = s.group
    z = profile.Z_mask
    big_n = profile.N
    if big_n == 0:
        return None
    e = profile.e
    budget = s_prime.length - e - n * big_n
    if e > n or budget < 0:
        return None
    parts = [0] * n
    used = [0] * g.order
    quot = profile.quotient
    # one term of each X-coset into every part
    for x in iter_bits(profile.X.bits):
        coset_mask = quot.preimage_mask(1 << x)
        terms = []
        for idx in iter_bits(coset_mask):
            terms.extend([idx] * s.mult[idx])
        if len(terms) < n:
            return None
        for i in range(n):
            parts[i] |= 1 << terms[i]
            used[terms[i]] += 1
    # spread remaining length over unused coset terms
    for idx in iter_bits(z):
        while budget > 0 and used[idx] < s.mult[idx]:
            placed = False
            for i in range(n):
                if not (parts[i] >> idx) & 1:
                    parts[i] |= 1 << idx
                    used[idx] += 1
                    budget -= 1
                    placed = True
                    break
            if not placed:
                break
        if budget == 0:
            break
    if budget != 0:
        return None
    # outside terms one per distinct part, last e parts
    outside = []
    for idx, m in enumerate(s.mult):
        if not (z >> idx) & 1 and m:
            outside.extend([idx] * m)
    if len(outside) != e:
        return None
    for j, idx in enumerate(outside):
        parts[n - e + j] |= 1 << idx
    return SetPartition(g, [GroupSubset(g, b) for b in parts])


def _case2_conditions(parts_bits: list[int], s: GSequence, s_prime_len: int,
                      n: int, profile, sigma_n_bits: int) -> bool:
    g = s.group
    z = profile.Z_mask
    h_bits = profile.H.carrier.bits
    # every part nonempty, |A_i \ Z| <= 1, Z subset of A_i + H
    for b in parts_bits:
        if b == 0 or (b & ~z).bit_count() > 1:
            return False
        cover = 0
        for i in iter_bits(b):
            cover |= g.translate_mask(h_bits, i)
        if z & ~cover:
            return False
    # leftovers inside Z
    used = [0] * g.order
    for b in parts_bits:
        for i in iter_bits(b):
            used[i] += 1
    for idx, m in enumerate(s.mult):
        if m - used[idx] > 0 and not (z >> idx) & 1:
            return False
    # exact sum equality and bound
    acc = 1
    for b in parts_bits:
        nb = 0
        for i in iter_bits(b):
            nb |= g.translate_mask(acc, i)
        acc = nb
    if acc != sigma_n_bits:
        return False
    order_h = profile.H.order
    bound = (s_prime_len - (n - 1) * order_h
             + profile.e * (order_h - 1) + profile.rho)
    return profile.rho >= 0 and acc.bit_count() >= bound


def partition_solve(s: GSequence, s_prime: GSequence, n: int,
                    fallback_cap: int = FALLBACK_CAP) -> Certificate:
    """Find a setpartition witnessing one of the two partition-theorem cases."""
    _validate_instance(s, s_prime, n)
    g = s.group
    sigma_n = nterm_subsums(s, n)
    target1 = s_prime.length - n + 1
    # sums of parts always land inside Sigma_n(S), so case 1 needs
    # |Sigma_n(S)| >= |S'| - n + 1; otherwise climb toward Sigma_n itself
    parts_bits, best = _hill_climb(s, s_prime, n, min(target1, sigma_n.size))
    if best < target1 <= sigma_n.size and s_prime.length <= fallback_cap:
        found = _exhaustive_case1(s, s_prime.length, n, target1)
        if found is not None:
            parts_bits, best = found, target1
    if best >= target1:
        partition = SetPartition(g, [GroupSubset(g, b) for b in parts_bits])
        cert = Certificate("I", partition, theorem="partition",
                           bounds={"sum_size": partition.sum_subset().size,
                                   "case1_bound": target1})
        ok, violations = partition_verify(cert, s, s_prime, n)
        if not ok:
            raise InternalError("case-1 certificate failed verification",
                                {"violations": violations})
        cert.verified = True
        return cert

    profile = subsum_profile(s, n, s_prime.length)
    cert = None
    if _case2_conditions(parts_bits, s, s_prime.length, n, profile, sigma_n.bits):
        partition = SetPartition(g, [GroupSubset(g, b) for b in parts_bits])
        cert = _case2_certificate(partition, s, s_prime, n, profile)
        ok, _ = partition_verify(cert, s, s_prime, n)
        if not ok:
            cert = None
    if cert is None:
        partition = _partition_case2_construct(s, s_prime, n, profile)
    if cert is None and partition is not None:
        cert = _case2_certificate(partition, s, s_prime, n, profile)
        ok, _ = partition_verify(cert, s, s_prime, n)
        if not ok:
            cert = None
    if cert is None and s_prime.length <= fallback_cap:
        for bits in iter_setpartitions(s, s_prime.length, n):
            if _case2_conditions(bits, s, s_prime.length, n, profile, sigma_n.bits):
                partition = SetPartition(g, [GroupSubset(g, b) for b in bits])
                cert = _case2_certificate(partition, s, s_prime, n, profile)
                ok, _ = partition_verify(cert, s, s_prime, n)
                if ok:
                    break
                cert = None
    if cert is None:
        raise InternalError(
            "partition theorem: neither case could be witnessed",
            {"group": g.spec_string(), "S": s.format(),
             "S_prime": s_prime.format(), "n": n})
    cert.verified = True
    return cert


def _exhaustive_case1(s: GSequence, total: int, n: int, target: int
                      ) -> Optional[list[int]]:
    g = s.group
    for bits in iter_setpartitions(s, total, n):
        acc = 1
        for b in bits:
            nb = 0
            for i in iter_bits(b):
                nb |= g.translate_mask(acc, i)
            acc = nb
        if acc.bit_count() >= target:
            return bits
    return None


def _case2_certificate(partition: SetPartition, s: GSequence,
                       s_prime: GSequence, n: int, profile) -> Certificate:
    order_h = profile.H.order
    bound = (s_prime.length - (n - 1) * order_h
             + profile.e * (order_h - 1) + profile.rho)
    return Certificate(
        "II", partition, H=profile.H, theorem="partition",
        e_H=profile.e, k=n - profile.e,
        bounds={"sum_size": partition.sum_subset().size,
                "case2_bound": bound, "rho": profile.rho,
                "N": profile.N, "e": profile.e})


def partition_verify(cert: Certificate, s: GSequence, s_prime: GSequence,
                     n: int) -> tuple[bool, list[str]]:
    """Re-check a partition-theorem certificate from scratch."""
    violations: list[str] = []
    g = s.group
    partition = cert.partition
    if partition.n != n:
        violations.append(f"expected {n} parts, found {partition.n}")
        return False, violations
    sa = partition.underlying_sequence()
    if not sa.is_subsequence_of(s):
        violations.append("S(A) is not a subsequence of S")
    if sa.length != s_prime.length:
        violations.append(f"|S(A)|={sa.length} != |S'|={s_prime.length}")
    if any(p.bits == 0 for p in partition.parts):
        violations.append("empty part")
        return False, violations
    sum_a = partition.sum_subset()
    sigma_n = nterm_subsums(s, n)
    if sum_a.bits & ~sigma_n.bits:
        violations.append("sum of parts escapes Sigma_n(S)")
    if cert.case_tag == "I":
        bound = s_prime.length - n + 1
        if sum_a.size < bound:
            violations.append(f"case 1 bound: |sum|={sum_a.size} < {bound}")
    elif cert.case_tag == "II":
        profile = subsum_profile(s, n, s_prime.length)
        z = profile.Z_mask
        h_bits = profile.H.carrier.bits
        order_h = profile.H.order
        if profile.rho < 0:
            violations.append(f"rho={profile.rho} < 0")
        if sum_a != sigma_n:
            violations.append("case 2 requires sum of parts == Sigma_n(S)")
        bound = (s_prime.length - (n - 1) * order_h
                 + profile.e * (order_h - 1) + profile.rho)
        if sum_a.size < bound:
            violations.append(f"case 2 bound: |sum|={sum_a.size} < {bound}")
        leftover = s.remove(sa) if sa.is_subsequence_of(s) else None
        if leftover is not None and any(not (z >> i) & 1 for i in leftover.support_indices()):
            violations.append("leftover terms outside phi^-1(X)")
        for i, p in enumerate(partition.parts):
            if (p.bits & ~z).bit_count() > 1:
                violations.append(f"part {i + 1} has more than one element outside phi^-1(X)")
            cover = 0
            for e in p.indices():
                cover |= g.translate_mask(h_bits, e)
            if z & ~cover:
                violations.append(f"phi^-1(X) not contained in part {i + 1} + H")
    else:
        violations.append(f"unknown case tag {cert.case_tag!r}")
    return not violations, violations


# ---------------------------------------------------------------------------
# hypothesis checking


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _smallest_prime_divisor(m: int) -> int:
    d = 2
    while d * d <= m:
        if m % d == 0:
            return d
        d += 1
    return m


@dataclass
class HypothesisReport:
    H: Subgroup
    quotient: "object"    # QuotientStructure of G by H
    item_satisfied: str   # trivial-H | full-H | item1..item4 | none
    global_item: str      # g1..g4 | none
    mode: str = "standard"

    @property
    def satisfied(self) -> bool:
        return self.item_satisfied != "none"


def _quotient_items(n: int, q: GroupSpec, order_h: int, mode: str) -> str:
    exp_q = q.exponent
    cyclic = q.rank == 1
    if mode == "standard":
        if n >= exp_q + 1:
            return "item1"
        if n >= exp_q > order_h:
            return "item2"
        if n >= exp_q and q.invariant_factors == (2, exp_q):
            return "item3"
        if cyclic and n >= exp_q - 1:
            return "item4"
        return "none"
    # full-group variant
    if n >= exp_q:
        return "item1"
    if n >= exp_q - 1 and (cyclic or _is_prime(exp_q)):
        return "item2"
    if n >= 1 and (exp_q <= 3 or q.invariant_factors == (4,)):
        return "item3"
    return "none"


def _global_items(n: int, g: GroupSpec, mode: str) -> str:
    exp_g = g.exponent
    cyclic = g.rank == 1
    if mode == "standard":
        if n >= exp_g + 1:
            return "g1"
        if n >= exp_g:
            q = g.order // exp_g
            p = next((d for d in range(3, q + 1) if q % d == 0), None)
            if p is None or g.order < exp_g * exp_g * p:
                return "g2"
        if n >= exp_g - 1 and len(g.invariant_factors) == 2 \
                and _is_prime(g.invariant_factors[0]):
            return "g3"
        if cyclic and n >= g.order // _smallest_prime_divisor(g.order) - 1:
            return "g4"
        return "none"
    if n >= exp_g:
        return "g1"
    if n >= exp_g - 1:
        k_order = g.order // exp_g
        if _is_prime(exp_g) or _is_prime(k_order):
            return "g2"
    if cyclic and n >= g.order // _smallest_prime_divisor(g.order) - 1:
        return "g3"
    if n >= 1 and (exp_g <= 3 or g.order < 10):
        return "g4"
    return "none"


def hypothesis_check(g: GroupSpec, h: Subgroup, n: int,
                     mode: str = "standard") -> HypothesisReport:
    """Which hypothesis item (if any) the triple (G, H, n) satisfies."""
    if h.carrier.group != g:
        raise PartitionError("subgroup over a different group")
    quot = quotient_cached(g, h)
    if h.is_trivial:
        item = "trivial-H"
    elif h.is_full:
        item = "full-H"
    else:
        item = _quotient_items(n, quot.quotient_spec, h.order, mode)
    return HypothesisReport(h, quot, item, _global_items(n, g, mode), mode)


# ---------------------------------------------------------------------------
# main pipeline


def _map_cert_to_parent(cert: Certificate, emb) -> Certificate:
    parent = emb.parent
    parts = SetPartition(parent, [GroupSubset(parent, emb.map_mask_to_parent(p.bits))
                                  for p in cert.partition.parts])
    return Certificate(
        cert.case_tag, parts,
        H=Subgroup(GroupSubset(parent, emb.map_mask_to_parent(cert.H.carrier.bits)))
        if cert.H else None,
        K=Subgroup(GroupSubset(parent, emb.map_mask_to_parent(cert.K.carrier.bits)))
        if cert.K else None,
        alpha=emb.to_parent[cert.alpha] if cert.alpha is not None else None,
        e_H=cert.e_H, e_K=cert.e_K, k=cert.k, bounds=dict(cert.bounds),
        mode=cert.mode, theorem=cert.theorem)


def _untranslate_cert(cert: Certificate, offset: int) -> Certificate:
    """Map a certificate built on S - offset back to the caller's coordinates."""
    if offset == 0:
        return cert
    g = cert.partition.group
    cert.partition = cert.partition.translate(offset)
    if cert.alpha is not None:
        cert.alpha = g.add(cert.alpha, offset)
    elif cert.case_tag == "II":
        cert.alpha = offset
    return cert


def main_pipeline(g: GroupSpec, s: GSequence, s_prime: GSequence, n: int,
                  mode: str = "standard") -> Certificate:
    """Certificate for the strengthened partition conclusion, fully verified."""
    if mode not in ("standard", "full-group"):
        raise PartitionError(f"unknown mode {mode!r}")
    if s.group != g:
        raise PartitionError("sequence over a different group")
    _validate_instance(s, s_prime, n)
    if mode == "full-group" and s_prime.length < n + g.order - 1:
        raise PartitionError(
            f"full-group mode needs |S'| >= n + |G| - 1 = {n + g.order - 1}, "
            f"got {s_prime.length}")
    h_top = stabilizer(nterm_subsums(s, n))
    report = hypothesis_check(g, h_top, n, mode)
    if not report.satisfied:
        raise HypothesesUnmetError(
            f"no hypothesis item holds for H of order {h_top.order}, n={n}, "
            f"G={g.spec_string()} (mode {mode})")
    cert = _pipeline_rec(g, s, s_prime, n, mode, depth=0)
    cert.mode = mode
    ok, violations = main_verify(cert, g, s, s_prime, n, mode)
    if not ok:
        raise InternalError(
            "pipeline certificate failed verification",
            {"violations": violations, "group": g.spec_string(),
             "S": s.format(), "S_prime": s_prime.format(), "n": n, "mode": mode})
    cert.verified = True
    return cert


def _pipeline_rec(g: GroupSpec, s: GSequence, s_prime: GSequence, n: int,
                  mode: str, depth: int) -> Certificate:
    if depth > 2 * g.order.bit_length() + 4:
        raise InternalError("recursion depth exceeded subgroup chain bound")

    # translate so 0 is in the support, then reduce to the affine span
    offset = 0
    s0 = next(s.support_indices())
    if s0 != 0:
        offset = s0
        s = s.translate(g.neg(s0))
        s_prime = s_prime.translate(g.neg(s0))
    span = subgroup_generated(s.support())
    if not span.is_full:
        cert = _reduce_to_span(g, s, s_prime, n, mode, depth, span)
        return _untranslate_cert(cert, offset)
    cert = _pipeline_core(g, s, s_prime, n, mode, depth)
    return _untranslate_cert(cert, offset)


def _reduce_to_span(g: GroupSpec, s: GSequence, s_prime: GSequence, n: int,
                    mode: str, depth: int, span: Subgroup) -> Certificate:
    if span.is_trivial:
        # supp(S) = {0}: every part is {0}
        partition = make_setpartition(s_prime, n)
        return Certificate("I", partition, H=span, theorem="main",
                           bounds={"sum_size": 1,
                                   "case1_bound": min(g.order, s_prime.length - n + 1)})
    emb = subgroup_embedding(g, span)
    sub_mult = [0] * emb.spec.order
    sub_mult_prime = [0] * emb.spec.order
    for idx, m in enumerate(s.mult):
        if m:
            sub_mult[emb.from_parent[idx]] = m
    for idx, m in enumerate(s_prime.mult):
        if m:
            sub_mult_prime[emb.from_parent[idx]] = m
    sub_cert = _pipeline_rec(emb.spec, GSequence(emb.spec, sub_mult),
                             GSequence(emb.spec, sub_mult_prime), n, mode, depth + 1)
    cert = _map_cert_to_parent(sub_cert, emb)
    if cert.case_tag == "II":
        return cert
    sum_a = cert.partition.sum_subset()
    if sum_a.size >= min(g.order, s_prime.length - n + 1):
        return cert
    if sum_a.bits != span.carrier.bits:
        raise InternalError(
            "span reduction returned case I without covering the span",
            {"group": g.spec_string(), "S": s.format(), "n": n})
    # sum of parts is the whole (proper, nontrivial) span: convert to case II
    return Certificate("II", cert.partition, H=span, K=span, alpha=0,
                       e_H=0, e_K=0, k=n, theorem="main",
                       bounds={"sum_size": sum_a.size})


def _pipeline_core(g: GroupSpec, s: GSequence, s_prime: GSequence, n: int,
                   mode: str, depth: int) -> Certificate:
    """Main argument under <supp(S)>_* = G."""
    dump = {"group": g.spec_string(), "S": s.format(),
            "S_prime": s_prime.format(), "n": n, "mode": mode}
    psol = partition_solve(s, s_prime, n)
    partition = psol.partition
    sum_a = partition.sum_subset()
    if sum_a.size >= min(g.order, s_prime.length - n + 1):
        return Certificate("I", partition, theorem="main",
                           bounds={"sum_size": sum_a.size,
                                   "case1_bound": min(g.order, s_prime.length - n + 1)})

    profile = subsum_profile(s, n, s_prime.length)
    h = profile.H
    if h.is_trivial or h.is_full:
        raise InternalError("concentrated case with degenerate stabilizer", dump)
    if profile.N != 1:
        raise InternalError(f"|X| = {profile.N} != 1 under the hypotheses (Step A)", dump)

    z = profile.Z_mask
    alpha = next(i for i in iter_bits(z) if s.mult[i])
    offset = 0
    if alpha != 0:
        offset = alpha
        neg = g.neg(alpha)
        s = s.translate(neg)
        s_prime = s_prime.translate(neg)
        partition = partition.translate(neg)
        z = g.translate_mask(z, neg)
    if z != h.carrier.bits:
        raise InternalError("X-coset did not normalize onto H", dump)

    e_h = s.count_outside(h.carrier.bits)
    k = n - e_h

    inside = [p for p in partition.parts if p.bits & ~h.carrier.bits == 0]
    outside = [p for p in partition.parts if p.bits & ~h.carrier.bits]
    if len(inside) != k or any((p.bits & ~h.carrier.bits).bit_count() != 1 for p in outside):
        raise InternalError("partition does not split into k inside / e_H boundary parts", dump)

    acc = inside[0]
    for p in inside[1:]:
        acc = sumset(acc, p)
    if acc.bits == h.carrier.bits:
        cert = Certificate("II", SetPartition(g, inside + outside),
                           H=h, K=h, alpha=0, e_H=e_h, e_K=e_h, k=k,
                           theorem="main", bounds={"sum_size": profile.sigma_n.size})
        return _untranslate_cert(cert, offset)

    if e_h < 1 or k < 2:
        raise InternalError(f"degenerate split e_H={e_h}, k={k} past Step B", dump)

    s_h = s.restrict_to(h.carrier.bits)
    s_prime_h = partition.underlying_sequence().restrict_to(h.carrier.bits)
    if not (s_prime_h.max_multiplicity() <= n <= s_prime_h.length):
        raise InternalError("inside subsequence lost the length/multiplicity window", dump)

    # normalize 0 into supp(S_H)
    g0 = next(s_h.support_indices())
    if g0 != 0:
        offset = g.add(offset, g0)
        neg = g.neg(g0)
        s = s.translate(neg)
        s_prime = s_prime.translate(neg)
        s_h = s_h.translate(neg)
        s_prime_h = s_prime_h.translate(neg)

    g_span = subgroup_generated(s_h.support())
    cap = s_prime_h.length - (n - k)
    t = _greedy_capped(s_h, per_elem_cap=k, total_cap=cap)
    if t.length < k:
        raise InternalError("inside pool too thin for the split length", dump)

    b_parts, k_sub, e_k_inner, alpha_inner = _inner_partition(
        g, s_h, t, k, n, h, g_span, depth, dump)
    if alpha_inner != 0:
        offset = g.add(offset, alpha_inner)
        neg = g.neg(alpha_inner)
        s = s.translate(neg)
        s_prime = s_prime.translate(neg)
        s_h = s_h.translate(neg)
        s_prime_h = s_prime_h.translate(neg)
        t = t.translate(neg)
        b_parts = [p.translate(neg) for p in b_parts]

    k_sub_carrier = k_sub.carrier.bits
    e_k = e_h + e_k_inner
    k_prime = n - e_k

    # order the first k parts: subsets of K first, boundary parts after
    b_in = [p for p in b_parts if p.bits & ~k_sub_carrier == 0]
    b_out = [p for p in b_parts if p.bits & ~k_sub_carrier]
    if len(b_in) != k - e_k_inner or any((p.bits & ~k_sub_carrier).bit_count() != 1
                                         for p in b_out):
        raise InternalError("inner partition violates the K-coset structure", dump)

    r_seq = GSequence(g, [0] * g.order)
    for p in b_parts:
        r_seq = r_seq.concat(GSequence.from_pairs(g, [(i, 1) for i in p.indices()]))
    t_prime = _complete_counterpart(s_h, s_prime_h.length, n, k, r_seq)
    tail = make_setpartition(t_prime, n - k) if n - k else None

    z_terms = [idx for idx, m in enumerate(s.mult)
               if m and not (h.carrier.bits >> idx) & 1
               for _ in range(m)]
    if len(z_terms) != e_h:
        raise InternalError("outside-term count drifted during translation", dump)
    tail_parts = []
    for j in range(n - k):
        tail_parts.append(GroupSubset(g, tail.parts[j].bits | (1 << z_terms[j])))

    parts = b_in + b_out + tail_parts
    cert = Certificate("II", SetPartition(g, parts), H=h, K=k_sub, alpha=0,
                       e_H=e_h, e_K=e_k, k=k_prime, theorem="main",
                       bounds={"sum_size": profile.sigma_n.size})
    return _untranslate_cert(cert, offset)


def _inner_partition(g: GroupSpec, s_h: GSequence, t: GSequence, k: int, n: int,
                     h: Subgroup, g_span: Subgroup, depth: int, dump: dict
                     ) -> tuple[list[GroupSubset], Subgroup, int, int]:
    """k-setpartition of a length-|T| subsequence of S_H whose first parts sum
    to a full subgroup K; returns (parts, K, e'_K, alpha')."""
    # pigeonhole shortcut: two big parts already cover H
    a_pr = sorted(make_setpartition(t, k).parts,
                  key=lambda p: (-p.size, p.bits))
    if k >= 2 and a_pr[0].size + a_pr[1].size >= h.order + 1:
        two = sumset(a_pr[0], a_pr[1])
        if two.bits == h.carrier.bits:
            return list(a_pr), h, 0, 0

    if not 5 <= k <= n - 2:
        raise InternalError(f"split size k={k} outside [5, n-2] (Step C)", dump)

    sigma_k = nterm_subsums(s_h, k)
    if sigma_k.size < t.length - k + 1:
        h_inner = stabilizer(sigma_k)
        if not k > h.order // h_inner.order + 2:
            raise InternalError(
                f"split size k={k} <= |H/H'|+2 = {h.order // h_inner.order + 2} (Step E)",
                dump)

    emb = subgroup_embedding(g, g_span)
    sub_s = [0] * emb.spec.order
    sub_t = [0] * emb.spec.order
    for idx, m in enumerate(s_h.mult):
        if m:
            sub_s[emb.from_parent[idx]] = m
    for idx, m in enumerate(t.mult):
        if m:
            sub_t[emb.from_parent[idx]] = m
    sub_cert = _pipeline_rec(emb.spec, GSequence(emb.spec, sub_s),
                             GSequence(emb.spec, sub_t), k, "standard", depth + 1)
    cert = _map_cert_to_parent(sub_cert, emb)
    parts = list(cert.partition.parts)
    if cert.case_tag == "I":
        acc = parts[0]
        for p in parts[1:]:
            acc = sumset(acc, p)
        if acc.bits != g_span.carrier.bits:
            raise InternalError(
                "inner recursion case I did not cover the inside span (Step D)", dump)
        return parts, g_span, 0, 0
    k_sub = cert.K
    alpha_p = cert.alpha
    coset = g.translate_mask(k_sub.carrier.bits, alpha_p)
    e_k_inner = s_h.count_outside(coset)
    if e_k_inner != cert.e_K:
        raise InternalError("inner e_K bookkeeping mismatch", dump)
    return parts, k_sub, e_k_inner, alpha_p


def main_verify(cert: Certificate, g: GroupSpec, s: GSequence,
                s_prime: GSequence, n: int, mode: str = "standard"
                ) -> tuple[bool, list[str]]:
    """Re-check every clause of a main-pipeline certificate from scratch."""
    violations: list[str] = []
    partition = cert.partition
    if partition.group != g or s.group != g:
        return False, ["certificate/instance group mismatch"]
    if partition.n != n:
        return False, [f"expected {n} parts, found {partition.n}"]
    sa = partition.underlying_sequence()
    if not sa.is_subsequence_of(s):
        violations.append("S(A) is not a subsequence of S")
    if sa.length != s_prime.length:
        violations.append(f"|S(A)|={sa.length} != |S'|={s_prime.length}")
    if violations:
        return False, violations
    sigma_n = nterm_subsums(s, n)
    sum_a = partition.sum_subset()
    if sum_a.bits & ~sigma_n.bits:
        violations.append("sum of parts escapes Sigma_n(S)")

    if cert.case_tag == "I":
        bound = min(g.order, s_prime.length - n + 1)
        if sum_a.size < bound:
            violations.append(f"case (i): |sum|={sum_a.size} < min(|G|, |S'|-n+1)={bound}")
        if mode == "full-group" and sigma_n.bits != g.full_mask:
            violations.append("full-group mode: Sigma_n(S) != G")
        if mode == "full-group" and sum_a.bits != g.full_mask:
            violations.append("full-group mode: sum of parts != G")
        return not violations, violations

    if cert.case_tag != "II":
        return False, [f"unknown case tag {cert.case_tag!r}"]
    if cert.K is None or cert.alpha is None:
        return False, ["case (ii) certificate missing K or alpha"]
    h = stabilizer(sigma_n)
    k_sub = cert.K
    alpha = cert.alpha
    if k_sub.is_trivial:
        violations.append("(ii): K must be nontrivial")
    if not h.contains_subgroup(k_sub):
        violations.append("(ii): K not contained in H(Sigma_n(S))")
    if h.is_full:
        violations.append("(ii): H(Sigma_n(S)) must be proper")
    # (a)
    if sum_a != sigma_n:
        violations.append("(ii)(a): sum of parts != Sigma_n(S)")
    coset_k = g.translate_mask(k_sub.carrier.bits, alpha)
    leftover = s.remove(sa)
    if any(not (coset_k >> i) & 1 for i in leftover.support_indices()):
        violations.append("(ii)(a): leftover terms outside alpha+K")
    # (b)
    coset_h = g.translate_mask(h.carrier.bits, alpha)
    e_h = s.count_outside(coset_h)
    e_k = s.count_outside(coset_k)
    if cert.e_H != e_h:
        violations.append(f"(ii)(b): recorded e_H={cert.e_H} != recomputed {e_h}")
    if cert.e_K != e_k:
        violations.append(f"(ii)(b): recorded e_K={cert.e_K} != recomputed {e_k}")
    if sigma_n.size < (e_h + 1) * h.order:
        violations.append(f"(ii)(b): |Sigma_n|={sigma_n.size} < (e_H+1)|H|={(e_h + 1) * h.order}")
    if e_h > g.order // h.order - 2:
        violations.append(f"(ii)(b): e_H={e_h} > |G/H|-2")
    if (e_h + 1) * h.order > s_prime.length - n:
        violations.append("(ii)(b): e_H exceeds (|S'|-n)/|H| - 1")
    if sigma_n.size < (e_k + 1) * k_sub.order:
        violations.append(f"(ii)(b): |Sigma_n|={sigma_n.size} < (e_K+1)|K|={(e_k + 1) * k_sub.order}")
    if e_k > g.order // k_sub.order - 2:
        violations.append(f"(ii)(b): e_K={e_k} > |G/K|-2")
    if (e_k + 1) * k_sub.order > s_prime.length - n:
        violations.append("(ii)(b): e_K exceeds (|S'|-n)/|K| - 1")
    # (c)
    k_prime = n - e_k
    if cert.k != k_prime:
        violations.append(f"recorded k={cert.k} != n - e_K = {k_prime}")
    for i, p in enumerate(partition.parts):
        if not p.bits & coset_k:
            violations.append(f"(ii)(c): part {i + 1} misses alpha+K")
        outside = (p.bits & ~coset_k).bit_count()
        if i < k_prime and outside:
            violations.append(f"(ii)(c): part {i + 1} escapes alpha+K")
        if i >= k_prime and outside != 1:
            violations.append(f"(ii)(c): part {i + 1} must have exactly one element outside alpha+K")
    # (d)
    if k_prime >= 1:
        prefix = partition.sum_subset(k_prime)
        expect = g.translate_mask(k_sub.carrier.bits, g.scale(k_prime, alpha))
        if prefix.bits != expect:
            violations.append("(ii)(d): prefix sum != (n-e_K)alpha + K")
    else:
        violations.append("(ii)(d): n - e_K < 1")
    if mode == "full-group" and sigma_n.bits != g.full_mask:
        # full-group mode allows case (ii) only as the alternative branch
        pass
    return not violations, violations
