"""Command-line front door.

Subcommands: construct, verify, params, decompose, clique-color, foursets.
stdout carries only JSON; diagnostics go to stderr.  Exit codes:
0 success/verified, 1 property refuted, 2 construction infeasible,
3 invalid input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time

from . import __version__, cliquecolor, constructions, foursets, graphcore, oracle
from .errors import (
    EdgeConflict,
    ExactColorError,
    NotSpecialCase,
    PreconditionViolated,
    RetriesExhausted,
)

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_INFEASIBLE = 2
EXIT_INVALID = 3


def _emit(doc) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


def _log(msg: str) -> None:
    print(msg, file=sys.stderr)


def _content_hash(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _write_graph(path: str, g: graphcore.ColoredGraph, metadata: dict) -> dict:
    data = graphcore.save(g)
    with open(path, "wb") as fh:
        fh.write(data)
    metadata = dict(metadata, content_hash=_content_hash(data), version=__version__)
    with open(path + ".meta.json", "w", encoding="utf-8") as fh:
        json.dump(metadata, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return metadata


def _report_doc(report: oracle.WitnessReport) -> dict:
    return {
        "verified": report.verified,
        "counterexample": list(report.counterexample) if report.counterexample else None,
        "subsets_scanned": report.subsets_scanned,
        "wall_time_ms": report.wall_time_ms,
    }


# ---------------------------------------------------------------------------
# construct
# ---------------------------------------------------------------------------

def _smallest_complete_n(c_prime: int) -> int:
    n = 2
    while math.comb(n, 2) < c_prime:
        n += 1
    return n


def _construct_base(c_prime: int, m_prime: int, method: str, seed: int | None,
                    variant: str, c: int, m: int,
                    toy: tuple[int, int, int] | None = None
                    ) -> tuple[graphcore.ColoredGraph, dict]:
    """Build a base witness on c' colors with no exactly-m'-colored subset.
    Returns (graph, method info).  Raises ExactColorError on infeasibility."""
    if method == "special":
        try:
            g = constructions.build_special_q(c, m, variant=variant)
            return g, {"method": "special", "variant": variant}
        except EdgeConflict:
            if variant == "literal":
                # report only if the other variant conflicts too
                g = constructions.build_special_q(c, m, variant="disjoint")
                return g, {"method": "special", "variant": "disjoint"}
            raise
    if method == "paired":
        dec = constructions.decompose(c_prime, max(m_prime, 2))
        n = dec.r1
        pairs = dec.p_even // 2
        fam, info = foursets.generate_family(n, min(n, dec.k + 1), seed)
        g = constructions.build_paired_colors(n, fam, pairs)
        return g, {"method": "paired", "n": n, "pairs": pairs,
                   "family_attempts": info["attempts"]}
    if method == "bipartite-toy":
        if toy is None or None in toy:
            raise ExactColorError("bipartite-toy requires --a, --b and --d")
        a, b, d = toy
        g = constructions.build_toy_bipartite(a, b, d, seed)
        if g.palette != c_prime:
            raise ExactColorError(
                f"toy palette a*b+d = {g.palette} must equal c-1 = {c_prime}"
            )
        return g, {"method": "bipartite-toy", "a": a, "b": b, "d": d}
    if method == "search":
        n = _smallest_complete_n(c_prime)
        result = constructions.search_witness(c_prime, m_prime, n, seed)
        if result is None:
            raise RetriesExhausted(f"search exhausted its budget for (c'={c_prime}, m'={m_prime})")
        return result.graph, {"method": "search", "n": n,
                              "oracle_calls": result.oracle_calls,
                              "restarts": result.restarts}
    raise ExactColorError(f"unknown method {method!r}")


def cmd_construct(args) -> int:
    c, m = args.c, args.m
    if not c > m >= 3:
        _log("construct requires c > m >= 3")
        return EXIT_INVALID
    method = args.method
    k, q = constructions.decompose_m(m)
    # auto reproduces the case split on q: odd -> one-color lift of a
    # (c-1, m-1) witness; even below k-2 -> two-color lift of (c-2, m-2);
    # even q = k-2 -> the special builder.  Explicit methods always use the
    # one-color lift; the oracle arbitrates soundness either way.
    if method == "auto":
        if q % 2 == 0 and q == k - 2:
            method = "special"
            lift_mode = "one"
        elif q % 2 == 0:
            method = "search"
            lift_mode = "two"
        else:
            method = "search"
            lift_mode = "one"
    else:
        lift_mode = "one"
    if method != "special" and args.seed is None:
        _log("--seed is required for randomized construction methods")
        return EXIT_INVALID
    if lift_mode == "one":
        c_prime, m_prime = c - 1, m - 1
    else:
        c_prime, m_prime = c - 2, m - 2
    t0 = time.perf_counter()
    try:
        g, info = _construct_base(c_prime, m_prime, method, args.seed, args.variant,
                                  c, m, toy=(args.a, args.b, args.d))
    except EdgeConflict as exc:
        _log(f"EdgeConflict: {exc} (both variants conflict; try --method search)")
        return EXIT_INFEASIBLE
    except (NotSpecialCase, RetriesExhausted, ExactColorError) as exc:
        _log(f"{type(exc).__name__}: {exc}")
        return EXIT_INFEASIBLE
    # constructions are untrusted: always oracle-verify before exit
    report = oracle.verify_lifted(g, m_prime + (1 if lift_mode == "one" else 2),
                                  lift_mode, threads=args.threads)
    if not report.verified:
        _log(f"construction refuted by oracle: counterexample {report.counterexample}")
        return EXIT_INFEASIBLE
    elapsed_ms = (time.perf_counter() - t0) * 1000
    metadata = {
        "command": "construct",
        "c": c,
        "m": m,
        "seed": args.seed,
        "lift": lift_mode,
        "timing_ms": elapsed_ms,
        "verification": _report_doc(report),
        **info,
    }
    if args.output:
        metadata = _write_graph(args.output, g, metadata)
    _emit({"graph": json.loads(graphcore.save(g)), "metadata": metadata})
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def cmd_verify(args) -> int:
    try:
        with open(args.graph, "rb") as fh:
            g = graphcore.load(fh.read())
    except (OSError, ExactColorError) as exc:
        _log(f"cannot load graph: {exc}")
        return EXIT_INVALID
    try:
        if args.lift == "none":
            report = oracle.verify_witness(g, args.m, threads=args.threads)
        else:
            report = oracle.verify_lifted(g, args.m, args.lift, threads=args.threads)
    except ExactColorError as exc:
        _log(f"{type(exc).__name__}: {exc}")
        return EXIT_INVALID
    _emit(_report_doc(report))
    return EXIT_OK if report.verified else EXIT_REFUTED


# ---------------------------------------------------------------------------
# params / decompose
# ---------------------------------------------------------------------------

def cmd_params(args) -> int:
    try:
        p = constructions.bipartite_params(args.c, args.m, force=args.force)
    except PreconditionViolated as exc:
        _log(str(exc))
        return EXIT_INVALID
    except ExactColorError as exc:
        _log(f"{type(exc).__name__}: {exc}")
        return EXIT_INFEASIBLE
    _emit({
        "c": p.c, "m": p.m, "t": p.t, "s_t": p.s_t, "p1": p.p1, "eps": p.eps,
        "n": p.n, "r_resid": p.r_resid, "q_mod": p.q_mod, "x": p.x,
        "b": p.b, "d": p.d, "feasible": p.feasible,
        "assertions": {
            "n_divides_c_minus_r": (p.c - p.r_resid) % p.n == 0,
            "n_not_divides_c_minus_m": (p.c - p.m) % p.n != 0,
            "n_not_divides_m_minus_r": (p.m - p.r_resid) % p.n != 0,
            "crt_congruence": (p.m - p.r_resid - p.n * p.x - 1) % p.q_mod == 0,
            "x_in_range": 0 <= p.x < p.q_mod,
        },
    })
    return EXIT_OK


def cmd_decompose(args) -> int:
    try:
        dec = constructions.decompose(args.c, args.m)
    except ExactColorError as exc:
        _log(f"{type(exc).__name__}: {exc}")
        return EXIT_INVALID
    _emit({
        "c": dec.c, "r_prime": dec.r_prime, "p_prime": dec.p_prime,
        "r1": dec.r1, "p_even": dec.p_even,
        "m": dec.m, "k": dec.k, "q": dec.q,
    })
    return EXIT_OK


# ---------------------------------------------------------------------------
# clique-color / foursets
# ---------------------------------------------------------------------------

def cmd_clique_color(args) -> int:
    try:
        spec = cliquecolor.CliqueColoringSpec(k=args.k, l=args.l, s=args.s,
                                              seed=args.seed)
    except ExactColorError as exc:
        _log(f"{type(exc).__name__}: {exc}")
        return EXIT_INVALID
    t0 = time.perf_counter()
    try:
        g, attempts = cliquecolor.random_colorful_coloring(spec)
    except RetriesExhausted as exc:
        _log(f"RetriesExhausted: {exc}")
        return EXIT_INFEASIBLE
    bound = cliquecolor.failure_probability_bound(args.k, args.l, args.s)
    metadata = {
        "command": "clique-color",
        "spec": {"k": args.k, "l": args.l, "s": args.s, "seed": args.seed,
                 "max_retries": spec.max_retries},
        "prng": cliquecolor.PRNG_ALGORITHM,
        "attempts": attempts,
        "bound": bound,
        "bound_log2": cliquecolor.log2_failure_probability_bound(args.k, args.l, args.s),
        "precondition_holds": cliquecolor.colorful_precondition(args.k, args.l, args.s),
        "timing_ms": (time.perf_counter() - t0) * 1000,
    }
    if args.output:
        metadata = _write_graph(args.output, g, metadata)
    _emit({"graph": json.loads(graphcore.save(g)), "metadata": metadata})
    return EXIT_OK


def cmd_foursets(args) -> int:
    t0 = time.perf_counter()
    try:
        fam, info = foursets.generate_family(args.n, args.l, args.seed)
    except ExactColorError as exc:
        _log(f"{type(exc).__name__}: {exc}")
        return EXIT_INFEASIBLE
    stats = info["stats"]
    _emit({
        "n": fam.n,
        "sets": [sorted(s) for s in fam.sets],
        "stats": {
            "p": stats.p,
            "drawn": stats.drawn,
            "intersecting_pairs": stats.intersecting_pairs,
            "target_size": stats.target_size,
        },
        "attempts": info["attempts"],
        "density": info["density"],
        "density_exhaustive": info["density_exhaustive"],
        "hypothesis_flags": info["hypothesis_flags"],
        "timing_ms": (time.perf_counter() - t0) * 1000,
    })
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="exactcolor",
        description="Construct and verify exactly-colored witness graphs.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build an oracle-verified witness")
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--method", default="auto",
                   choices=["auto", "special", "search", "paired", "bipartite-toy"])
    p.add_argument("--seed", type=int)
    p.add_argument("--variant", default="literal", choices=["literal", "disjoint"])
    p.add_argument("--a", type=int, help="bipartite-toy: independent side size")
    p.add_argument("--b", type=int, help="bipartite-toy: clique side size")
    p.add_argument("--d", type=int, help="bipartite-toy: inner palette size")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="exhaustively verify a graph file")
    p.add_argument("--graph", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--lift", default="none", choices=["none", "one", "two"])
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("params", help="number-theoretic parameter pipeline")
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("decompose", help="binomial decompositions of c and m")
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("clique-color", help="seeded colorful clique coloring")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_clique_color)

    p = sub.add_parser("foursets", help="packed 4-set family generator")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_foursets)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses exit code 2 for usage errors; remap to our contract
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ExactColorError as exc:
        _log(f"{type(exc).__name__}: {exc}")
        return EXIT_INVALID


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
