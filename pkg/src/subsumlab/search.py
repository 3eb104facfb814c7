"""Extremal example generators, corpus audit driver, and the open-question hunt.

The audit streams a deterministic corpus (exhaustive small sequences plus a
seeded random batch) through selected instance checkers and aggregates
pass/fail counts.  The instance stream depends only on the config, never on
the number of workers, so aggregates are byte-identical across job counts.
"""

from __future__ import annotations

import itertools
import multiprocessing
import random
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .groups import (
    GroupError,
    GroupSpec,
    GroupSubset,
    Subgroup,
    abelian_groups_of_order,
    iter_bits,
    make_group,
    parse_group,
    quotient_cached,
    representation_min,
    stabilizer,
    subgroup_generated,
    sumset,
)
from .sequences import (
    GSequence,
    build_s_star,
    nterm_subsums,
    subsum_profile,
    subsum_table,
)
from .setpartitions import (
    HypothesesUnmetError,
    InternalError,
    hypothesis_check,
    main_pipeline,
    main_verify,
    partition_solve,
    partition_verify,
)
from .verifiers import check_lemma_extra, check_subsum_kneser


class SearchError(ValueError):
    """Bad example parameters or audit configuration."""


# ---------------------------------------------------------------------------
# extremal example generators


@dataclass
class ExampleInstance:
    kind: str
    G: GroupSpec
    H: Subgroup
    S: GSequence
    n: int
    expected: dict

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "group": self.G.spec_string(),
            "H": [self.G.format_element(i) for i in self.H.carrier.indices()],
            "S": self.S.format(),
            "n": self.n,
            "expected": dict(self.expected),
        }


def clause_iib_fails(g: GroupSpec, s: GSequence, n: int, h: Subgroup,
                     s_prime_len: Optional[int] = None) -> bool:
    """True when no choice of alpha satisfies the e_H half of clause (ii)(b).

    Necessary condition for the structured conclusion: some H-coset alpha+H
    must leave few enough terms outside.  Checked for every coset.
    """
    if s_prime_len is None:
        s_prime_len = s.length
    sigma = nterm_subsums(s, n).size
    order_h = h.order
    index = g.order // order_h
    seen = set()
    for alpha in range(g.order):
        coset = g.translate_mask(h.carrier.bits, alpha)
        if coset in seen:
            continue
        seen.add(coset)
        e = s.count_outside(coset)
        if (e <= index - 2 and (e + 1) * order_h <= s_prime_len - n
                and sigma >= (e + 1) * order_h):
            return False
    return True


def _sequence_over_mask(g: GroupSpec, mask: int, n: int) -> GSequence:
    return GSequence(g, [n if (mask >> i) & 1 else 0 for i in range(g.order)])


def _quotient_cyclic_gen(q) -> Optional[int]:
    """Index (in the quotient spec) of a generator, if the quotient is cyclic."""
    spec = q.quotient_spec
    if spec.rank != 1:
        return None
    for x in range(spec.order):
        if spec.element_order(x) == spec.order:
            return x
    return None


def gen_example(kind: str, g: GroupSpec, h: Subgroup,
                k: Optional[Subgroup] = None,
                gen_elem: Optional[int] = None) -> ExampleInstance:
    """Build an extremal instance of family A, B or C and brute-force check
    every expected identity at generation time."""
    if h.carrier.group != g:
        raise SearchError("subgroup over a different group")
    q = quotient_cached(g, h)
    spec = q.quotient_spec
    exp_q = spec.exponent

    if kind == "A":
        if h.is_trivial:
            raise SearchError("example A needs H nontrivial")
        if spec.rank != 1 or spec.order < 4:
            raise SearchError("example A needs G/H cyclic of order >= 4")
        n = spec.order - 2
        gq = _quotient_cyclic_gen(q)
        x_bits = (1 << 0) | (1 << gq)
        expected_len = 2 * g.order - 4 * h.order
        expected_sigma = g.order - h.order
    elif kind in ("B", "C"):
        if k is None or gen_elem is None:
            raise SearchError(f"example {kind} needs K and a complement generator")
        if k.carrier.group != g or h.carrier.bits & ~k.carrier.bits:
            raise SearchError("need H <= K <= G")
        kq_bits = q.image_mask(k.carrier.bits)
        gq = q.image(gen_elem)
        gen_span = subgroup_generated(GroupSubset.singleton(spec, gq)).carrier.bits
        if spec.element_order(gq) != exp_q or gen_span & kq_bits != 1 \
                or (kq_bits.bit_count() * exp_q != spec.order):
            raise SearchError("need G/H = (K/H) + <g> direct with <g> of full exponent")
        if kq_bits.bit_count() < 2:
            raise SearchError("need G/H noncyclic (K/H nontrivial)")
        if kind == "B":
            if exp_q < 3:
                raise SearchError("example B needs exp(G/H) >= 3")
            n = exp_q - 1
            x_bits = kq_bits | (1 << gq)
            expected_len = (g.order // k.order - 1) * (h.order + k.order)
            expected_sigma = g.order - k.order + h.order
        else:
            if exp_q < 2 or h.order < exp_q:
                raise SearchError("example C needs |H| >= exp(G/H) >= 2")
            if kq_bits.bit_count() < 3:
                raise SearchError("example C needs |K/H| >= 3")
            n = exp_q
            x_bits = (kq_bits & ~1) | (1 << gq)
            expected_len = g.order
            expected_sigma = g.order - h.order
    else:
        raise SearchError(f"unknown example kind {kind!r}")

    z_mask = q.preimage_mask(x_bits)
    s = _sequence_over_mask(g, z_mask, n)
    sigma = nterm_subsums(s, n)
    stab = stabilizer(sigma)
    checks = {
        "len": s.length == expected_len,
        "sigma": sigma.size == expected_sigma,
        "stabilizer": stab.carrier.bits == h.carrier.bits,
        "small": sigma.size < s.length - n + 1,
        "iib_fails": clause_iib_fails(g, s, n, h),
    }
    bad = [name for name, ok in checks.items() if not ok]
    if bad:
        raise SearchError(f"example {kind} identities failed: {', '.join(bad)}")
    return ExampleInstance(kind, g, h, s, n, {
        "S_len": expected_len,
        "sigma_size": expected_sigma,
        "stabilizer_order": h.order,
        "iib_fails": True,
    })


# ---------------------------------------------------------------------------
# audit driver


@dataclass
class AuditConfig:
    max_group_order: int = 16
    exhaustive_group_cap: int = 10
    exhaustive_len_cap: int = 10
    random_samples: int = 10_000
    random_len_cap: int = 12
    seed: int = 0
    jobs: int = 1
    checkers: tuple = ("subsum_kneser", "s_star", "lemma_extra")

    def to_dict(self) -> dict:
        # jobs is an execution detail, not part of the corpus: leaving it out
        # keeps aggregates byte-identical across worker counts
        return {
            "max_group_order": self.max_group_order,
            "exhaustive_group_cap": self.exhaustive_group_cap,
            "exhaustive_len_cap": self.exhaustive_len_cap,
            "random_samples": self.random_samples,
            "random_len_cap": self.random_len_cap,
            "seed": self.seed,
            "checkers": list(self.checkers),
        }


@dataclass
class AuditReport:
    config: AuditConfig
    instances: int = 0
    checks_run: int = 0
    skipped: int = 0
    counters: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "instances": self.instances,
            "checks_run": self.checks_run,
            "skipped": self.skipped,
            "counters": {k: dict(v) for k, v in sorted(self.counters.items())},
            "violations": list(self.violations),
            "holds": self.holds,
        }


def groups_up_to(cap: int) -> list[GroupSpec]:
    out = []
    for m in range(1, cap + 1):
        out.extend(abelian_groups_of_order(m))
    return out


def _mult_vectors(order: int, len_cap: int) -> Iterator[list[int]]:
    """All multiplicity vectors with 1 <= total <= len_cap."""
    mult = [0] * order

    def rec(pos: int, remaining: int) -> Iterator[list[int]]:
        if pos == order:
            if remaining < len_cap:  # total >= 1
                yield mult
            return
        for c in range(remaining + 1):
            mult[pos] = c
            yield from rec(pos + 1, remaining - c)
        mult[pos] = 0

    yield from rec(0, len_cap)


def exhaustive_sequences(cfg: AuditConfig) -> Iterator[tuple[GroupSpec, GSequence]]:
    """Every sequence 1 <= |S| <= cap over every |G| <= cap, deterministic order."""
    for g in groups_up_to(cfg.exhaustive_group_cap):
        for mult in _mult_vectors(g.order, cfg.exhaustive_len_cap):
            yield g, GSequence(g, mult)


def exhaustive_instances(cfg: AuditConfig) -> Iterator[tuple[GroupSpec, GSequence, int]]:
    """(G, S, n) for every sequence 1 <= |S| <= cap over every |G| <= cap,
    every admissible n.  Deterministic order."""
    for g, s in exhaustive_sequences(cfg):
        for n in range(max(1, s.max_multiplicity()), s.length + 1):
            yield g, s, n


def random_instance(cfg: AuditConfig, i: int,
                    groups: list[GroupSpec]) -> tuple[GroupSpec, GSequence, int]:
    rng = random.Random(f"{cfg.seed}:{i}")
    g = groups[rng.randrange(len(groups))]
    support = rng.sample(range(g.order), rng.randint(1, min(6, g.order)))
    mult = [0] * g.order
    budget = rng.randint(len(support), cfg.random_len_cap)
    for idx in support:
        mult[idx] = 1
    for _ in range(budget - len(support)):
        mult[rng.choice(support)] += 1
    s = GSequence(g, mult)
    n = rng.randint(s.max_multiplicity(), s.length)
    return g, s, n


def _check_instance(name: str, g: GroupSpec, s: GSequence, n: int,
                    profile=None) -> tuple[str, str]:
    """Run one checker; returns (status, detail) with status in
    {pass, fail, skip}.  profile, when given, is the (S, n, |S|) subsum
    profile shared across the bound checkers."""
    if name == "subsum_kneser":
        rep = check_subsum_kneser(s, n, profile=profile)
        return ("pass" if rep.holds else "fail"), rep.detail
    if name == "s_star":
        if profile is None:
            profile = subsum_profile(s, n, s.length)
        build_s_star(s, profile, n)  # raises on any identity failure
        return "pass", ""
    if name == "lemma_extra":
        rep = check_lemma_extra(s, s, n, profile=profile)
        return ("pass" if rep.holds else "fail"), rep.detail
    if name == "partition":
        cert = partition_solve(s, s, n)
        ok, violations = partition_verify(cert, s, s, n)
        return ("pass" if ok else "fail"), "; ".join(violations)
    if name == "pipeline":
        try:
            cert = main_pipeline(g, s, s, n)
        except HypothesesUnmetError:
            return "skip", "hypotheses unmet"
        ok, violations = main_verify(cert, g, s, s, n)
        return ("pass" if ok else "fail"), "; ".join(violations)
    if name == "fullgroup":
        if s.length < n + g.order - 1:
            return "skip", "|S'| below full-group threshold"
        try:
            cert = main_pipeline(g, s, s, n, mode="full-group")
        except HypothesesUnmetError:
            return "skip", "hypotheses unmet"
        ok, violations = main_verify(cert, g, s, s, n, "full-group")
        return ("pass" if ok else "fail"), "; ".join(violations)
    raise SearchError(f"unknown checker {name!r}")


def _audit_worker(cfg: AuditConfig, worker: int, jobs: int) -> dict:
    counters: dict = {name: {"pass": 0, "fail": 0, "skip": 0}
                      for name in cfg.checkers}
    violations: list = []
    instances = checks = skipped = 0
    groups = [g for g in groups_up_to(cfg.max_group_order) if g.order >= 2]

    needs_profile = bool({"subsum_kneser", "s_star", "lemma_extra"}
                         & set(cfg.checkers))

    def handle(g: GroupSpec, s: GSequence, n: int, profile=None) -> None:
        nonlocal instances, checks, skipped
        instances += 1
        if profile is None and needs_profile:
            profile = subsum_profile(s, n, s.length)
        for name in cfg.checkers:
            try:
                status, detail = _check_instance(name, g, s, n, profile)
            except InternalError as err:
                status, detail = "fail", f"internal error: {err}"
            checks += 1
            counters[name][status] += 1
            if status == "skip":
                skipped += 1
            elif status == "fail":
                violations.append({
                    "checker": name,
                    "group": g.spec_string(),
                    "seq": s.format(),
                    "n": n,
                    "detail": detail,
                    "replay": (f"subsumlab subsums -g {g.spec_string()} "
                               f"-s \"{s.format()}\" -n {n}"),
                })

    idx = 0
    for g, s in exhaustive_sequences(cfg):
        if idx % jobs == worker:
            rows = subsum_table(s, s.length) if needs_profile else None
            for n in range(max(1, s.max_multiplicity()), s.length + 1):
                profile = (subsum_profile(s, n, s.length,
                                          sigma=GroupSubset(g, rows[n]))
                           if needs_profile else None)
                handle(g, s, n, profile)
        idx += 1
    if cfg.random_samples and not groups:
        raise SearchError("random sampling needs max_group_order >= 2")
    for i in range(cfg.random_samples):
        if i % jobs == worker:
            handle(*random_instance(cfg, i, groups))
    return {"instances": instances, "checks": checks, "skipped": skipped,
            "counters": counters, "violations": violations}


def run_audit(cfg: AuditConfig) -> AuditReport:
    """Stream the corpus through the configured checkers."""
    if cfg.exhaustive_group_cap > 16 or cfg.max_group_order > 64:
        raise SearchError("audit caps exceed module limits")
    jobs = max(1, cfg.jobs)
    if jobs == 1:
        results = [_audit_worker(cfg, 0, 1)]
    else:
        with multiprocessing.Pool(jobs) as pool:
            results = pool.starmap(_audit_worker,
                                   [(cfg, w, jobs) for w in range(jobs)])
    report = AuditReport(cfg)
    report.counters = {name: {"pass": 0, "fail": 0, "skip": 0}
                       for name in cfg.checkers}
    merged: list = []
    for res in results:
        report.instances += res["instances"]
        report.checks_run += res["checks"]
        report.skipped += res["skipped"]
        for name, c in res["counters"].items():
            for key in ("pass", "fail", "skip"):
                report.counters[name][key] += c[key]
        merged.extend(res["violations"])
    # order-independent merge
    report.violations = sorted(
        merged, key=lambda v: (v["checker"], v["group"], v["seq"], v["n"]))
    return report


# ---------------------------------------------------------------------------
# open-question hunt


@dataclass
class HuntReport:
    group: GroupSpec
    n: int
    canonicalized: bool
    tuples_examined: int = 0
    aperiodic_count: int = 0
    hits: list = field(default_factory=list)
    exhaustive: bool = True

    @property
    def hit_found(self) -> bool:
        return bool(self.hits)

    def to_dict(self) -> dict:
        return {
            "group": self.group.spec_string(),
            "n": self.n,
            "canonicalized": self.canonicalized,
            "tuples_examined": self.tuples_examined,
            "aperiodic_count": self.aperiodic_count,
            "hits": list(self.hits),
            "exhaustive": self.exhaustive,
            "hit_found": self.hit_found,
        }


def _canonical_diffs(g: GroupSpec) -> list[int]:
    """One representative of each {d, -d} pair (2-subsets up to translation)."""
    out = []
    for d in range(1, g.order):
        if d <= g.neg(d):
            out.append(d)
    return out


def _cyclic_units(g: GroupSpec) -> list[int]:
    import math
    return [u for u in range(1, g.order) if math.gcd(u, g.order) == 1]


def hunt_unique_expression(g: GroupSpec, n: int, canonicalize: bool = True,
                           budget: int = 10_000_000) -> HuntReport:
    """Search n-tuples of 2-element subsets whose sum is aperiodic yet has no
    unique-expression element.  No such tuple is known; hits are reported,
    never asserted."""
    if n < 1:
        raise SearchError("need n >= 1")
    if g.order < 2:
        raise SearchError("need |G| >= 2")
    report = HuntReport(g, n, canonicalize)
    diffs = _canonical_diffs(g) if canonicalize else list(range(1, g.order))
    units = _cyclic_units(g) if (canonicalize and g.rank == 1) else [1]
    seen: set = set()
    for combo in itertools.combinations_with_replacement(diffs, n):
        if report.tuples_examined >= budget:
            report.exhaustive = False
            break
        if canonicalize and len(units) > 1:
            canon = min(
                tuple(sorted(min(g.scale(u, d), g.neg(g.scale(u, d)))
                             for d in combo))
                for u in units)
            if canon in seen:
                continue
            seen.add(canon)
        report.tuples_examined += 1
        total_bits = 1
        for d in combo:
            total_bits |= g.translate_mask(total_bits, d)
        total = GroupSubset(g, total_bits)
        if not stabilizer(total).is_trivial:
            continue
        report.aperiodic_count += 1
        summands = [GroupSubset.from_indices(g, [0, d]) for d in combo]
        min_rep, argmin = representation_min(summands)
        if min_rep >= 2:
            report.hits.append({
                "diffs": [g.format_element(d) for d in combo],
                "min_representation": min_rep,
                "witness": g.format_element(argmin),
            })
    return report
