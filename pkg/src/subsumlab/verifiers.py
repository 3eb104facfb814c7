"""Instance-level checkers for the sumset and subsequence-sum bounds.

Each checker recomputes both sides of its inequality from scratch and
returns a CheckReport; none of them trusts caller-supplied values.  The
structural classifiers (check_cor1 / check_cor2) match small-sumset
violations against the known coset templates by exhaustive instantiation,
which is entirely adequate at the |G| <= ~100 scale these run at.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .groups import (
    GroupSpec,
    GroupSubset,
    Subgroup,
    affine_span,
    enumerate_subgroups,
    iter_bits,
    iterated_sumset,
    representation_min,
    stabilizer,
    subgroup_generated,
    sumset,
)
from .sequences import GSequence, nterm_subsums, subsum_profile


class CheckError(ValueError):
    """Checker preconditions violated (inapplicable instance)."""


@dataclass
class CheckReport:
    name: str
    holds: bool
    lhs: int
    rhs: int
    witnesses: dict = field(default_factory=dict)
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "holds": self.holds, "lhs": self.lhs,
                "rhs": self.rhs, "witnesses": dict(self.witnesses),
                "detail": self.detail}


# ---------------------------------------------------------------------------
# additive bounds


def check_kneser(parts: list[GroupSubset]) -> CheckReport:
    """|sum A_i| >= sum |A_i+H| - (n-1)|H|, H the stabilizer of the sum."""
    if not parts:
        raise CheckError("need at least one summand")
    g = parts[0].group
    for p in parts:
        if p.group != g:
            raise CheckError("summands over different groups")
        if p.bits == 0:
            raise CheckError("empty summand")
    total = parts[0]
    for p in parts[1:]:
        total = sumset(total, p)
    h = stabilizer(total)
    n = len(parts)
    filled = [GroupSubset(g, _saturate(g, p.bits, h)) for p in parts]
    rho = sum(f.size - p.size for f, p in zip(filled, parts))
    bound_filled = sum(f.size for f in filled) - (n - 1) * h.order
    bound_holes = sum(p.size for p in parts) - (n - 1) * h.order + rho
    holds = bound_filled == bound_holes and total.size >= bound_filled
    return CheckReport(
        "kneser", holds, total.size, bound_filled,
        witnesses={"H_order": h.order, "rho": rho,
                   "H": [g.format_element(i) for i in h.carrier.indices()]},
        detail="" if holds else "bound forms disagree or bound violated")


def _saturate(g: GroupSpec, bits: int, h: Subgroup) -> int:
    out = 0
    for i in iter_bits(bits):
        out |= g.translate_mask(h.carrier.bits, i)
    return out


def check_subsum_kneser(s: GSequence, n: int, profile=None) -> CheckReport:
    """Both displayed forms of the n-term subsum lower bound, plus rho >= 0."""
    if not (s.max_multiplicity() <= n <= s.length):
        raise CheckError(f"need h(S) <= n <= |S| (h={s.max_multiplicity()}, "
                         f"n={n}, |S|={s.length})")
    if profile is None:
        profile = subsum_profile(s, n, s.length)
    oh = profile.H.order
    e, rho = profile.e, profile.rho
    form_a = (s.length - n + 1) - (n - e - 1) * (oh - 1) + rho
    form_b = s.length - (n - 1) * oh + e * (oh - 1) + rho
    forms_agree = form_a == form_b == profile.bound_primary
    holds = forms_agree and rho >= 0 and profile.sigma_n.size >= form_a
    return CheckReport(
        "subsum_kneser", holds, profile.sigma_n.size, form_a,
        witnesses={"H_order": oh, "N": profile.N, "e": e, "rho": rho},
        detail="" if holds else
        ("bound forms disagree" if not forms_agree else
         "rho < 0" if rho < 0 else "bound violated"))


def check_pigeonhole(a: GroupSubset, b: GroupSubset) -> CheckReport:
    """Overlap bound r_{A+B}(x) >= |A|+|B|-|G| on all of G, plus the
    coset corollary when both sets sit inside a single coset."""
    if a.group != b.group:
        raise CheckError("sets over different groups")
    if a.bits == 0 or b.bits == 0:
        raise CheckError("empty set")
    g = a.group
    r = a.size + b.size - g.order
    lhs = rhs = 0
    violations = []
    if r >= 1:
        total = sumset(a, b)
        min_rep, argmin = representation_min([a, b])
        lhs, rhs = min_rep, r
        if total.bits != g.full_mask:
            violations.append("A+B != G despite |A|+|B| > |G|")
        if min_rep < r:
            violations.append(
                f"min representation count {min_rep} at "
                f"{g.format_element(argmin)} below {r}")
    # coset corollary: H-coset version with H the joint affine span
    h = subgroup_generated(GroupSubset(
        g, affine_span(a).carrier.bits | affine_span(b).carrier.bits))
    coset_applies = a.size + b.size >= h.order + 1
    if coset_applies:
        total = sumset(a, b)
        expect = g.translate_mask(h.carrier.bits, next(iter_bits(total.bits)))
        if total.bits != expect:
            violations.append("A+B is not a full H-coset in the coset corollary")
    return CheckReport(
        "pigeonhole", not violations, lhs, rhs,
        witnesses={"r": r, "coset_H_order": h.order,
                   "coset_case": coset_applies},
        detail="; ".join(violations))


# ---------------------------------------------------------------------------
# structural classification of small n-fold sumsets


def _complement_generators(g: GroupSpec, h: Subgroup) -> list[int]:
    """Elements x of order exp(G) with <x> meeting H trivially and
    |H| * exp(G) = |G| (so G = H + <x> is direct)."""
    if h.order * g.exponent != g.order:
        return []
    out = []
    for x in range(1, g.order):
        if g.element_order(x) != g.exponent:
            continue
        gen = subgroup_generated(GroupSubset.singleton(g, x))
        if gen.carrier.bits & h.carrier.bits == 1:
            out.append(x)
    return out


def _subgroups_between(g: GroupSpec, low: Subgroup, size: int) -> list[Subgroup]:
    return [h for h in enumerate_subgroups(g)
            if h.order == size and low.carrier.bits & ~h.carrier.bits == 0]


def _match_case1(g: GroupSpec, a: GroupSubset, n: int, na: GroupSubset,
                 k: Subgroup) -> Optional[dict]:
    """n = exp(G), G = H + <g0> with K < H, and the two coset templates."""
    if n != g.exponent:
        return None
    if a.size * n > g.order:
        return None
    if g.order - k.order != na.size:
        return None
    a_plus_k = GroupSubset(g, _saturate(g, a.bits, k))
    if na.size < a_plus_k.size * n - k.order:
        return None
    for h in enumerate_subgroups(g):
        if not (k.order < h.order and k.carrier.bits & ~h.carrier.bits == 0):
            continue
        for g0 in _complement_generators(g, h):
            # template (b): (H \ K) union (g0 + K)
            if h.order // k.order >= 3:
                target = (h.carrier.bits & ~k.carrier.bits) \
                    | g.translate_mask(k.carrier.bits, g0)
                z = _find_translate(g, a_plus_k.bits, target)
                if z is not None:
                    return {"case": "1(b)", "H": h, "g0": g0, "z": z}
            # template (a): H/K = H1/K + H2/K of type (2,2)
            if h.order == 4 * k.order:
                mids = _subgroups_between(g, k, 2 * k.order)
                mids = [m for m in mids if m.carrier.bits & ~h.carrier.bits == 0]
                for h1, h2 in itertools.permutations(mids, 2):
                    if h1.carrier.bits & h2.carrier.bits != k.carrier.bits:
                        continue
                    target = h1.carrier.bits | g.translate_mask(h2.carrier.bits, g0)
                    z = _find_translate(g, a_plus_k.bits, target)
                    if z is not None:
                        return {"case": "1(a)", "H": h, "g0": g0, "z": z,
                                "H1": h1, "H2": h2}
    return None


def _find_translate(g: GroupSpec, bits: int, target: int) -> Optional[int]:
    if bits.bit_count() != target.bit_count():
        return None
    for z in range(g.order):
        if g.translate_mask(bits, z) == target:
            return z
    return None


def _chain_decompositions(g: GroupSpec):
    """(H0, [x1..xr]) with G = H0 + <x1> + ... + <xr> direct, each xi of
    order exp(G) and H0 nontrivial."""
    exp = g.exponent
    gens = [x for x in range(1, g.order) if g.element_order(x) == exp]
    max_r = 0
    size = g.order
    while size % exp == 0 and size // exp >= 2:
        size //= exp
        max_r += 1
    for r in range(1, max_r + 1):
        span_size = exp ** r
        for xs in itertools.permutations(gens, r):
            span = subgroup_generated(GroupSubset.from_indices(g, xs))
            if span.order != span_size:
                continue
            h0_size = g.order // span_size
            for h0 in enumerate_subgroups(g):
                if h0.order != h0_size or h0.is_trivial:
                    continue
                if h0.carrier.bits & span.carrier.bits != 1:
                    continue
                yield h0, list(xs), span


def _smallest_prime(m: int) -> int:
    d = 2
    while d * d <= m:
        if m % d == 0:
            return d
        d += 1
    return m


def _match_case2b(g: GroupSpec, a: GroupSubset, n: int, na: GroupSubset,
                  k: Subgroup) -> Optional[dict]:
    """Chain template: z+A+K = union over j of (K + H_0+..+H_{j-1} + x_{j+1}+..+x_r)."""
    exp = g.exponent
    a_plus_k = GroupSubset(g, _saturate(g, a.bits, k))
    for h0, xs, span in _chain_decompositions(g):
        if not (k.order < h0.order and k.carrier.bits & ~h0.carrier.bits == 0):
            continue
        if na.size != g.order - h0.order + k.order:
            continue
        bound = g.order - h0.order + (exp - 1) * k.order
        if a.size * n > bound:
            continue
        p = _smallest_prime(_subgroup_exponent(g, h0))
        r = len(xs)
        # bound <= ((p exp^r + exp - p - 1) / (p exp^r)) |G|, kept exact in integers
        if bound * p * exp ** r > (p * exp ** r + exp - p - 1) * g.order:
            continue
        blocks = [h0.carrier.bits] + [
            subgroup_generated(GroupSubset.singleton(g, x)).carrier.bits for x in xs]
        union = 0
        for j in range(r + 1):
            piece = k.carrier.bits
            for i in range(j):
                piece = _sum_masks(g, piece, blocks[i])
            for i in range(j + 1, r + 1):
                piece = g.translate_mask(piece, xs[i - 1])
            union |= piece
        z = _find_translate(g, a_plus_k.bits, union)
        if z is not None:
            return {"case": "2(b)", "H0": h0, "xs": xs, "z": z, "r": r}
    return None


def _sum_masks(g: GroupSpec, a_bits: int, b_bits: int) -> int:
    out = 0
    for i in iter_bits(b_bits):
        out |= g.translate_mask(a_bits, i)
    return out


def _subgroup_exponent(g: GroupSpec, h: Subgroup) -> int:
    return max((g.element_order(x) for x in h.carrier.indices()), default=1)


def _match_case2a(g: GroupSpec, a: GroupSubset, n: int, na: GroupSubset,
                  k: Subgroup) -> Optional[dict]:
    """z+A+K = H union (A0 + K) with A0 the part of z+A outside H."""
    if a.size * n > g.order:
        return None
    for h in enumerate_subgroups(g):
        if not (k.order < h.order < g.order
                and k.carrier.bits & ~h.carrier.bits == 0):
            continue
        if h.order * g.exponent != g.order or not _complement_generators(g, h):
            continue
        for z in range(g.order):
            az = g.translate_mask(a.bits, z)
            a0 = az & ~h.carrier.bits
            if a0 == 0:
                continue
            target = h.carrier.bits | _saturate(g, a0, k)
            if _saturate(g, az, k) != target:
                continue
            phi_classes = {_coset_id(g, h, x) for x in iter_bits(az)}
            if len(phi_classes) != 2:
                continue
            na0k = iterated_sumset(GroupSubset(g, _saturate(g, a0, k)), n)
            if na.size == g.order - h.order + na0k.size:
                return {"case": "2(a)", "H": h, "z": z}
    return None


def _coset_id(g: GroupSpec, h: Subgroup, x: int) -> int:
    return min(iter_bits(g.translate_mask(h.carrier.bits, x)))


def check_cor1(a: GroupSubset, n: int) -> CheckReport:
    """|nA| >= min(|G|, n|A|) for n >= exp(G)+1; template classification of
    violations at n in {exp(G)-1, exp(G)}."""
    g = a.group
    if a.bits == 0 or affine_span(a).carrier.bits != g.full_mask:
        raise CheckError("affine span of A must be all of G")
    if n < 3:
        raise CheckError("need n >= 3")
    na = iterated_sumset(a, n)
    bound = min(g.order, n * a.size)
    k = stabilizer(na)
    if na.size >= bound:
        return CheckReport("cor1", True, na.size, bound,
                           witnesses={"K_order": k.order}, detail="bound case")
    if n >= g.exponent + 1:
        return CheckReport("cor1", False, na.size, bound,
                           witnesses={"K_order": k.order},
                           detail="bound violated with n >= exp(G)+1")
    if n < g.exponent - 1:
        return CheckReport("cor1", True, na.size, bound,
                           detail="n below theorem range; no claim")
    match = _match_case1(g, a, n, na, k)
    if match is None and n == g.exponent - 1:
        match = _match_case2a(g, a, n, na, k) or _match_case2b(g, a, n, na, k)
    if match is None:
        return CheckReport("cor1", False, na.size, bound,
                           witnesses={"K_order": k.order},
                           detail="small sumset matched no template")
    witnesses = {"template": match["case"], "K_order": k.order,
                 "z": g.format_element(match["z"])}
    for key in ("H", "H0"):
        if key in match:
            witnesses[f"{key}_order"] = match[key].order
    return CheckReport("cor1", True, na.size, bound, witnesses=witnesses,
                       detail=f"matched template {match['case']}")


def check_cor2(a: GroupSubset, n: int) -> CheckReport:
    """nA = G for n >= exp(G) when n|A| > |G|; chain template at exp(G)-1."""
    g = a.group
    if a.bits == 0 or affine_span(a).carrier.bits != g.full_mask:
        raise CheckError("affine span of A must be all of G")
    if n * a.size <= g.order:
        raise CheckError("need n|A| > |G|")
    na = iterated_sumset(a, n)
    if n >= g.exponent:
        holds = na.bits == g.full_mask
        return CheckReport("cor2", holds, na.size, g.order,
                           detail="" if holds else "nA != G with n >= exp(G)")
    if n < g.exponent - 1:
        return CheckReport("cor2", True, na.size, g.order,
                           detail="n below theorem range; no claim")
    if na.bits == g.full_mask:
        return CheckReport("cor2", True, na.size, g.order, detail="nA = G")
    exp = g.exponent
    structural_ok = (exp >= 2 and _smallest_prime(exp) != exp
                     and g.rank >= 2)
    k = stabilizer(na)
    match = _match_case2b(g, a, n, na, k)
    holds = structural_ok and match is not None
    witnesses = {"K_order": k.order, "exp_composite": _smallest_prime(exp) != exp,
                 "noncyclic": g.rank >= 2}
    if match:
        witnesses.update({"template": match["case"], "r": match["r"],
                          "z": g.format_element(match["z"]),
                          "H0_order": match["H0"].order})
    return CheckReport("cor2", holds, na.size, g.order, witnesses=witnesses,
                       detail="" if holds else "nA != G and no chain template match")


def check_lemma_extra(s: GSequence, s_prime: GSequence, n: int,
                      profile=None) -> CheckReport:
    """Span dichotomy for Z = phi_H^{-1}(X) under |Sigma_n(S)| < |S'|-n+1."""
    if not s_prime.is_subsequence_of(s):
        raise CheckError("S' must be a subsequence of S")
    if not (s_prime.max_multiplicity() <= n <= s_prime.length):
        raise CheckError("need h(S') <= n <= |S'|")
    if profile is None:
        profile = subsum_profile(s, n, s_prime.length)
    small = profile.sigma_n.size < s_prime.length - n + 1
    if not small:
        return CheckReport("lemma_extra", True, profile.sigma_n.size,
                           s_prime.length - n + 1, detail="hypothesis not triggered")
    z = profile.Z_mask
    if z == 0:
        return CheckReport("lemma_extra", False, profile.sigma_n.size,
                           s_prime.length - n + 1,
                           detail="X empty despite small Sigma_n (unexpected)")
    g = s.group
    span_z = affine_span(GroupSubset(g, z))
    span_s = affine_span(s.support())
    holds = (span_z.carrier.bits == profile.H.carrier.bits
             or span_z.carrier.bits == span_s.carrier.bits)
    return CheckReport(
        "lemma_extra", holds, profile.sigma_n.size, s_prime.length - n + 1,
        witnesses={"span_Z_order": span_z.order, "H_order": profile.H.order,
                   "span_supp_order": span_s.order},
        detail="" if holds else "Z span is neither H nor the support span")
