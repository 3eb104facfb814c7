"""Command-line front door.

Verbs: group, sumset, subsums, partition, maincert, verify, example, audit,
hunt, davenport.  Every command emits either a human-readable text report or
a JSON envelope {schema, command, group, inputs, result, verified,
violations, timing_ms}; the two carry identical numeric content.

Exit codes: 0 success / property holds; 1 verified violation or negative
verdict; 2 usage or parse error; 3 internal error (a step the theory
guarantees failed -- an instance dump is written for reproduction).
"""

from __future__ import annotations

import argparse
import json
import sys
import tempfile
import time
from typing import Any, Optional

from .groups import (
    GroupError,
    GroupSpec,
    GroupSubset,
    Subgroup,
    iterated_sumset,
    normalize_factors,
    parse_element,
    parse_group,
    stabilizer,
    subgroup_generated,
    sumset,
)
from .sequences import (
    GSequence,
    SequenceError,
    davenport_bruteforce,
    nterm_subsums,
    parse_sequence,
    subsum_profile,
)
from .setpartitions import (
    Certificate,
    HypothesesUnmetError,
    InternalError,
    PartitionError,
    main_verify,
    main_pipeline,
    partition_solve,
    partition_verify,
)
from .search import (
    AuditConfig,
    SearchError,
    gen_example,
    hunt_unique_expression,
    run_audit,
)
from .verifiers import CheckError

SCHEMA = "subsum-lab/1"

_USAGE_ERRORS = (GroupError, SequenceError, PartitionError, SearchError,
                 CheckError, ValueError, KeyError, OSError)


# ---------------------------------------------------------------------------
# output plumbing


def _format_subset(subset: GroupSubset) -> list[str]:
    g = subset.group
    return [g.format_element(i) for i in subset.indices()]


def _render_text(value: Any, key: str = "", indent: int = 0) -> list[str]:
    pad = "  " * indent
    label = f"{pad}{key}: " if key else pad
    if isinstance(value, dict):
        lines = [f"{pad}{key}:"] if key else []
        for k, v in value.items():
            lines.extend(_render_text(v, k, indent + (1 if key else 0)))
        return lines
    if isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            return [label + "{" + ", ".join(str(v) for v in value) + "}"]
        lines = [f"{pad}{key}: [{len(value)} entries]"]
        for v in value:
            lines.extend(_render_text(v, "-", indent + 1))
        return lines
    return [label + str(value)]


def _emit(args, command: str, group: Optional[str], inputs: dict,
          result: dict, verified: bool, violations: list, t0: float) -> None:
    timing_ms = int((time.perf_counter() - t0) * 1000)
    if args.format == "json":
        envelope = {
            "schema": SCHEMA,
            "command": command,
            "group": group,
            "inputs": inputs,
            "result": result,
            "verified": verified,
            "violations": violations,
            "timing_ms": timing_ms,
        }
        text = json.dumps(envelope, indent=2)
    else:
        lines = [f"[{command}]" + (f" group {group}" if group else "")]
        for k, v in inputs.items():
            lines.extend(_render_text(v, k, 1))
        lines.extend(_render_text(result, "result"))
        lines.append(f"verified: {verified}")
        for v in violations:
            lines.extend(_render_text(v, "violation", 1))
        lines.append(f"timing_ms: {timing_ms}")
        text = "\n".join(lines)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# verb handlers (each returns the exit code)


def _cmd_group(args) -> int:
    t0 = time.perf_counter()
    if args.action != "info":
        raise GroupError(f"unknown group action {args.action!r}")
    g = parse_group(args.spec)
    given = tuple(int(p) for p in args.spec.strip().split("x"))
    normalized = normalize_factors(given) != given
    result = {
        "spec": g.spec_string(),
        "invariant_factors": list(g.invariant_factors),
        "order": g.order,
        "exponent": g.exponent,
        "rank": g.rank,
        "d_star": sum(m - 1 for m in g.invariant_factors),
    }
    if normalized:
        result["notice"] = (f"factors {args.spec} normalized to invariant "
                            f"chain {g.spec_string()}")
    _emit(args, "group", g.spec_string(), {"given": args.spec}, result,
          True, [], t0)
    return 0


def _parse_subset(g: GroupSpec, text: str) -> GroupSubset:
    seq = parse_sequence(g, text)
    return seq.support()


def _cmd_sumset(args) -> int:
    t0 = time.perf_counter()
    g = parse_group(args.group)
    a = _parse_subset(g, args.seq)
    if a.bits == 0:
        raise GroupError("empty summand set")
    inputs: dict = {"A": _format_subset(a)}
    if args.sprime is not None:
        b = _parse_subset(g, args.sprime)
        if b.bits == 0:
            raise GroupError("empty summand set")
        out = sumset(a, b)
        inputs["B"] = _format_subset(b)
    else:
        n = args.n if args.n is not None else 2
        out = iterated_sumset(a, n)
        inputs["n"] = n
    h = stabilizer(out)
    result = {
        "sumset": _format_subset(out),
        "size": out.size,
        "stabilizer": _format_subset(h.carrier),
        "stabilizer_order": h.order,
    }
    _emit(args, "sumset", g.spec_string(), inputs, result, True, [], t0)
    return 0


def _cmd_subsums(args) -> int:
    t0 = time.perf_counter()
    g = parse_group(args.group)
    s = parse_sequence(g, args.seq)
    if args.n is None:
        raise SequenceError("subsums requires -n")
    profile = subsum_profile(s, args.n, s.length)
    result = {
        "subsums": _format_subset(profile.sigma_n),
        "size": profile.sigma_n.size,
        "stabilizer": _format_subset(profile.H.carrier),
        "stabilizer_order": profile.H.order,
        "N": profile.N,
        "e": profile.e,
        "rho": profile.rho,
        "bound": profile.bound_primary,
    }
    _emit(args, "subsums", g.spec_string(),
          {"S": s.format(), "n": args.n}, result, True, [], t0)
    return 0


def _cert_envelope(cert: Certificate, s: GSequence, s_prime: GSequence,
                   n: int) -> tuple[dict, dict]:
    inputs = {
        "S": s.format(),
        "S_prime": s_prime.format(),
        "n": n,
        "mode": cert.mode,
    }
    return inputs, {"certificate": cert.to_dict(),
                    "sum_of_parts_size": cert.partition.sum_subset().size}


def _cmd_partition(args) -> int:
    t0 = time.perf_counter()
    g = parse_group(args.group)
    s = parse_sequence(g, args.seq)
    s_prime = parse_sequence(g, args.sprime) if args.sprime else s
    if args.n is None:
        raise SequenceError("partition requires -n")
    cert = partition_solve(s, s_prime, args.n)
    inputs, result = _cert_envelope(cert, s, s_prime, args.n)
    _emit(args, "partition", g.spec_string(), inputs, result,
          cert.verified, [], t0)
    return 0 if cert.verified else 1


def _cmd_maincert(args) -> int:
    t0 = time.perf_counter()
    g = parse_group(args.group)
    s = parse_sequence(g, args.seq)
    if not args.sprime:
        raise SequenceError("maincert requires --sprime")
    s_prime = parse_sequence(g, args.sprime)
    if args.n is None:
        raise SequenceError("maincert requires -n")
    mode = "full-group" if args.mode == "fullgroup" else "standard"
    cert = main_pipeline(g, s, s_prime, args.n, mode)
    inputs, result = _cert_envelope(cert, s, s_prime, args.n)
    _emit(args, "maincert", g.spec_string(), inputs, result,
          cert.verified, [], t0)
    return 0 if cert.verified else 1


def _cmd_verify(args) -> int:
    t0 = time.perf_counter()
    if args.report == "-":
        envelope = json.load(sys.stdin)
    else:
        with open(args.report) as fh:
            envelope = json.load(fh)
    if envelope.get("schema") != SCHEMA:
        raise ValueError(f"unknown schema {envelope.get('schema')!r}")
    g = parse_group(envelope["group"])
    inputs = envelope["inputs"]
    s = parse_sequence(g, inputs["S"])
    s_prime = parse_sequence(g, inputs["S_prime"])
    n = inputs["n"]
    cert = Certificate.from_dict(g, envelope["result"]["certificate"])
    if cert.theorem == "partition":
        ok, violations = partition_verify(cert, s, s_prime, n)
    else:
        ok, violations = main_verify(cert, g, s, s_prime, n, cert.mode)
    result = {"theorem": cert.theorem, "case": cert.case_tag, "holds": ok}
    _emit(args, "verify", g.spec_string(),
          {"report": args.report, "S": inputs["S"],
           "S_prime": inputs["S_prime"], "n": n},
          result, ok, violations, t0)
    return 0 if ok else 1


def _cmd_example(args) -> int:
    t0 = time.perf_counter()
    g = parse_group(args.group)
    h = subgroup_generated(_parse_subset(g, args.h))
    k = subgroup_generated(_parse_subset(g, args.k)) if args.k else None
    gen_elem = parse_element(g, args.gen) if args.gen else None
    inst = gen_example(args.kind, g, h, k, gen_elem)
    sigma = nterm_subsums(inst.S, inst.n)
    result = dict(inst.to_dict())
    result["sigma_n_size"] = sigma.size
    result["stabilizer"] = _format_subset(stabilizer(sigma).carrier)
    _emit(args, "example", g.spec_string(),
          {"kind": args.kind, "H": _format_subset(h.carrier)},
          result, True, [], t0)
    return 0


def _cmd_audit(args) -> int:
    t0 = time.perf_counter()
    kwargs = dict(
        max_group_order=args.max_order,
        seed=args.seed,
        jobs=args.jobs,
        random_samples=args.samples,
    )
    if args.group_cap is not None:
        kwargs["exhaustive_group_cap"] = args.group_cap
    if args.len_cap is not None:
        kwargs["exhaustive_len_cap"] = args.len_cap
    if args.checkers:
        kwargs["checkers"] = tuple(args.checkers.split(","))
    cfg = AuditConfig(**kwargs)
    report = run_audit(cfg)
    _emit(args, "audit", None, cfg.to_dict(), report.to_dict(),
          report.holds, list(report.violations), t0)
    return 0 if report.holds else 1


def _cmd_hunt(args) -> int:
    t0 = time.perf_counter()
    g = parse_group(args.group)
    if args.n is None:
        raise SearchError("hunt requires -n")
    report = hunt_unique_expression(g, args.n,
                                    canonicalize=not args.no_canonicalize,
                                    budget=args.budget)
    # hits are reported, never asserted: exit 0 either way
    _emit(args, "hunt", g.spec_string(), {"n": args.n},
          report.to_dict(), True, [], t0)
    return 0


def _cmd_davenport(args) -> int:
    t0 = time.perf_counter()
    g = parse_group(args.group)
    d = davenport_bruteforce(g, cap=args.cap)
    d_star = sum(m - 1 for m in g.invariant_factors)
    result = {
        "davenport": d,
        "d_star": d_star,
        "order": g.order,
        "sandwich_holds": d_star + 1 <= d <= g.order,
    }
    _emit(args, "davenport", g.spec_string(), {}, result,
          result["sandwich_holds"], [], t0)
    return 0 if result["sandwich_holds"] else 1


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(p: argparse.ArgumentParser, group: bool = True) -> None:
    if group:
        p.add_argument("-g", "--group", required=True,
                       help="group spec, e.g. 8 or 2x4")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", metavar="FILE", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subsumlab",
        description="exact sumset / subsequence-sum / setpartition toolkit")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("group", help="group facts")
    p.add_argument("action", choices=("info",))
    p.add_argument("spec", help="group spec, e.g. 2x4")
    _add_common(p, group=False)
    p.set_defaults(handler=_cmd_group)

    p = sub.add_parser("sumset", help="A+B or the n-fold sumset nA")
    _add_common(p)
    p.add_argument("-s", "--seq", required=True, help="set A (';'-separated)")
    p.add_argument("--sprime", help="set B; when given, computes A+B")
    p.add_argument("-n", type=int, help="fold count for nA (default 2)")
    p.set_defaults(handler=_cmd_sumset)

    p = sub.add_parser("subsums", help="n-term subsequence sums of S")
    _add_common(p)
    p.add_argument("-s", "--seq", required=True)
    p.add_argument("-n", type=int, required=True)
    p.set_defaults(handler=_cmd_subsums)

    p = sub.add_parser("partition", help="setpartition certificate")
    _add_common(p)
    p.add_argument("-s", "--seq", required=True)
    p.add_argument("--sprime", help="distinguished subsequence (default S)")
    p.add_argument("-n", type=int, required=True)
    p.set_defaults(handler=_cmd_partition)

    p = sub.add_parser("maincert", help="strengthened-conclusion certificate")
    _add_common(p)
    p.add_argument("-s", "--seq", required=True)
    p.add_argument("--sprime", required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--mode", choices=("standard", "fullgroup"),
                   default="standard")
    p.set_defaults(handler=_cmd_maincert)

    p = sub.add_parser("verify", help="re-check a certificate report")
    p.add_argument("report", help="JSON report file, or - for stdin")
    _add_common(p, group=False)
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("example", help="extremal family instance")
    p.add_argument("kind", choices=("A", "B", "C"))
    _add_common(p)
    p.add_argument("--h", required=True, help="generators of H")
    p.add_argument("--k", help="generators of K (family B)")
    p.add_argument("--gen", help="distinguished element")
    p.set_defaults(handler=_cmd_example)

    p = sub.add_parser("audit", help="exhaustive + random checker sweep")
    p.add_argument("--max-order", type=int, default=16)
    p.add_argument("--group-cap", type=int, default=None,
                   help="exhaustive enumeration group-order cap")
    p.add_argument("--len-cap", type=int, default=None,
                   help="exhaustive enumeration sequence-length cap")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--checkers", help="comma-separated checker names")
    _add_common(p, group=False)
    p.set_defaults(handler=_cmd_audit)

    p = sub.add_parser("hunt", help="aperiodic no-unique-expression search")
    _add_common(p)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--budget", type=int, default=10_000_000)
    p.add_argument("--no-canonicalize", action="store_true")
    p.set_defaults(handler=_cmd_hunt)

    p = sub.add_parser("davenport", help="Davenport constant by brute force")
    _add_common(p)
    p.add_argument("--cap", type=int, default=16,
                   help="largest group order attempted")
    p.set_defaults(handler=_cmd_davenport)

    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.handler(args)
    except HypothesesUnmetError as exc:
        print(f"no: {exc}", file=sys.stderr)
        return 1
    except InternalError as exc:
        fd, path = tempfile.mkstemp(prefix="subsumlab-dump-", suffix=".json")
        with open(fd, "w") as fh:
            json.dump({"error": str(exc), "dump": exc.dump}, fh, indent=2)
        print(f"internal error: {exc}\nreproduction dump: {path}",
              file=sys.stderr)
        return 3
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
