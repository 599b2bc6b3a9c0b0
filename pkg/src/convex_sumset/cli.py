"""Command-line driver: construct, audit, oracle, sweep, diffstats.

Exit codes: 0 success, 1 usage error, 2 infeasible parameters or budget
exceeded, 3 internal verification fault.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from fractions import Fraction
from pathlib import Path

from .construction import build_basis, write_numerator_csv
from .errors import BudgetExceeded, ConvexityBroken, NestingViolated, NoBlocks, NoNesting, \
    PairOutOfRange, WitnessMismatch
from .oracle import DEFAULT_DP_BUDGET, lcs_dp, sumset
from .params import PAPER_STRIDE, PAPER_THETA, WARN_OVERLAP, Params, make_params
from .splice import Chain, assemble
from .verify import DEFAULT_MAX_PAIRS, audit_pairs, check_witnesses, diff_popularity, \
    is_convex, measure

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_FAULT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


def _write_manifest(out: Path, manifest: dict, name: str = "manifest.json") -> None:
    out.mkdir(parents=True, exist_ok=True)
    with open(out / name, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _base_manifest(params: Params, command: str) -> dict:
    return {
        "command": command,
        "params": params.as_dict(),
        "warnings": list(params.warnings),
        "block_indices": params.block_indices(),
    }


def _infeasible_message(params: Params, exc: Exception) -> str:
    msg = f"infeasible: {exc}"
    if isinstance(exc, NoNesting) and exc.k_from is not None:
        msg += f" (failing pair k={exc.k_from} -> k={exc.k_to})"
    if WARN_OVERLAP in params.warnings:
        msg += (f"; theta={params.theta} <= stride/6={Fraction(params.stride, 6)}: "
                "consecutive block ranges do not overlap")
    return msg


def _build_verified(params: Params):
    """assemble -> is_convex -> check_witnesses -> measure.

    Raises NoBlocks/NoNesting for infeasible parameters and
    ConvexityBroken/WitnessMismatch for internal faults.
    """
    basis = build_basis(params)
    chain = assemble(params)
    if not is_convex(chain.values):
        raise ConvexityBroken("assembled chain is not convex")
    check_witnesses(chain, basis)
    return basis, chain, measure(chain, basis, params)


_FAULTS = (ConvexityBroken, WitnessMismatch, NestingViolated)
_INFEASIBLE = (NoBlocks, NoNesting)


# -- commands ---------------------------------------------------------------

def cmd_construct(params: Params, out: Path) -> int:
    timings = {}
    t0 = time.perf_counter()
    manifest = _base_manifest(params, "construct")
    try:
        basis, chain, meas = _build_verified(params)
    except _INFEASIBLE as exc:
        _err(_infeasible_message(params, exc))
        manifest.update(exit_status=EXIT_INFEASIBLE, error=str(exc))
        _write_manifest(out, manifest)
        return EXIT_INFEASIBLE
    except _FAULTS as exc:
        _err(f"verification fault: {exc}")
        manifest.update(exit_status=EXIT_FAULT, error=str(exc))
        _write_manifest(out, manifest)
        return EXIT_FAULT
    timings["construct_s"] = time.perf_counter() - t0

    t1 = time.perf_counter()
    audits = [r.as_dict() for r in audit_pairs(params)]
    timings["audit_s"] = time.perf_counter() - t1

    out.mkdir(parents=True, exist_ok=True)
    write_numerator_csv(
        out / "A.csv",
        ((p, v, i, j) for p, (v, (i, j)) in enumerate(zip(chain.values, chain.witnesses))),
        params.D, columns=("index", "numerator", "i", "j"))
    write_numerator_csv(out / "B.csv", enumerate(basis.elements), params.D)

    manifest.update(
        blocks=chain.blocks,
        splice_log=[rec.as_dict() for rec in chain.splice_log],
        measurement=meas.as_dict(),
        audit_reports=audits,
        basis_monotone={"xs": basis.xs_increasing, "ys": basis.ys_increasing},
        verification={"convex": True, "witnesses": True},
        exit_status=EXIT_OK,
        timings=timings,
    )
    _write_manifest(out, manifest)
    print(f"n={params.n} theta={params.theta} stride={params.stride}: "
          f"|A|={meas.size_a} |B|={meas.size_b} c={float(meas.density):.6f} "
          f"blocks={len(chain.blocks)} splices={len(chain.splice_log)}")
    return EXIT_OK


def cmd_audit(params: Params, out: Path | None = None) -> int:
    try:
        reports = audit_pairs(params)
    except PairOutOfRange as exc:
        _err(str(exc))
        return EXIT_INFEASIBLE
    if not reports:
        _err(f"no auditable block pair: fewer than two multiples of {params.stride} "
             f"in [{params.k_min}, {params.n}]")
        return EXIT_INFEASIBLE
    for rep in reports:
        print(f"pair k={rep.k} -> k={rep.k + rep.stride} (n={rep.n})")
        for name, check in rep.checks.items():
            status = "PASS" if check.passed else "FAIL"
            print(f"  {name:<16} {status}  slack={float(check.slack):.6e}")
    ok = all(r.passed for r in reports)
    if out is not None:
        manifest = _base_manifest(params, "audit")
        manifest.update(audit_reports=[r.as_dict() for r in reports],
                        exit_status=EXIT_OK if ok else EXIT_INFEASIBLE)
        _write_manifest(out, manifest)
    print("all checks pass" if ok else "some checks FAIL")
    return EXIT_OK if ok else EXIT_INFEASIBLE


def cmd_oracle(params: Params, budget: int, out: Path | None = None) -> int:
    basis = build_basis(params)
    t0 = time.perf_counter()
    try:
        sums = sumset(basis.elements)
        length, witness = lcs_dp(sums, budget=budget)
    except BudgetExceeded as exc:
        _err(f"budget exceeded: {exc}")
        return EXIT_INFEASIBLE
    elapsed = time.perf_counter() - t0

    comparison = {
        "sumset_size": len(sums),
        "lcs_length": length,
        "witness_length": len(witness),
        "witness_convex": is_convex([sums[p] for p in witness]),
        "single_block_size": 3 * params.n + 1,
        "size_A": None,
    }
    try:
        chain = assemble(params)
        comparison["size_A"] = len(chain)
    except _INFEASIBLE as exc:
        comparison["assemble_error"] = str(exc)
    reference = comparison["size_A"] or comparison["single_block_size"]
    comparison["lcs_at_least_reference"] = length >= reference
    print(f"|B+B|={len(sums)} longest convex subsequence={length} "
          f"|A|={comparison['size_A']} ({elapsed:.2f}s)")
    if out is not None:
        manifest = _base_manifest(params, "oracle")
        manifest.update(oracle_comparison=comparison, timings={"oracle_s": elapsed},
                        exit_status=EXIT_OK if comparison["lcs_at_least_reference"] else EXIT_FAULT)
        _write_manifest(out, manifest)
    if not comparison["lcs_at_least_reference"] or not comparison["witness_convex"]:
        _err("oracle disagrees with the construction")
        return EXIT_FAULT
    return EXIT_OK


SWEEP_COLUMNS = ("n", "status", "size_A", "size_B", "c", "c_float", "blocks", "splices",
                 "growth_ratio")


def sweep_rows(ns: list[int], theta: Fraction, stride: int) -> list[dict]:
    rows = []
    prev_a = None
    for n in ns:
        params = make_params(n, theta, stride)
        row = dict.fromkeys(SWEEP_COLUMNS, "")
        row["n"] = n
        try:
            _, chain, meas = _build_verified(params)
        except _INFEASIBLE as exc:
            row["status"] = f"infeasible: {exc}"
            rows.append(row)
            continue
        except _FAULTS as exc:
            row["status"] = f"fault: {exc}"
            rows.append(row)
            continue
        row.update(status="ok", size_A=meas.size_a, size_B=meas.size_b,
                   c=str(meas.density), c_float=f"{float(meas.density):.6f}",
                   blocks=len(chain.blocks), splices=len(chain.splice_log))
        if prev_a is not None:
            row["growth_ratio"] = f"{meas.size_a / prev_a:.6f}"
        prev_a = meas.size_a
        rows.append(row)
    return rows


def cmd_sweep(ns: list[int], theta: Fraction, stride: int, out: Path) -> int:
    rows = sweep_rows(ns, theta, stride)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "sweep.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    for row in rows:
        print(", ".join(f"{key}={row[key]}" for key in SWEEP_COLUMNS if row[key] != ""))
    # Failed runs are recorded as rows; a completed sweep exits 0.
    _write_manifest(out, {
        "command": "sweep", "n_list": ns, "theta": str(theta), "stride": stride,
        "rows": rows, "succeeded": sum(row["status"] == "ok" for row in rows),
        "exit_status": EXIT_OK,
    })
    return EXIT_OK


def cmd_diffstats(params: Params, threshold: int | None, budget: int, out: Path) -> int:
    try:
        basis, chain, meas = _build_verified(params)
    except _INFEASIBLE as exc:
        _err(_infeasible_message(params, exc))
        return EXIT_INFEASIBLE
    except _FAULTS as exc:
        _err(f"verification fault: {exc}")
        return EXIT_FAULT
    if threshold is None:
        threshold = math.isqrt(len(chain) - 1) + 1 if len(chain) > 1 else 1
    try:
        stats = diff_popularity(chain.values, threshold, max_pairs=budget)
    except BudgetExceeded as exc:
        _err(f"budget exceeded: {exc} (need --budget {exc.required})")
        return EXIT_INFEASIBLE

    out.mkdir(parents=True, exist_ok=True)
    write_numerator_csv(out / "diffstats.csv", zip(stats.differences, stats.counts),
                        params.D, columns=("difference_numerator", "multiplicity"))
    summary = {
        "size_A": len(chain), "threshold": threshold,
        "popular_count": stats.popular_count,
        "distinct_differences": len(stats.differences),
        "total_pairs": stats.total,
        "max_multiplicity": int(stats.counts.max()) if len(stats.counts) else 0,
    }
    manifest = _base_manifest(params, "diffstats")
    manifest.update(measurement=meas.as_dict(), diff_stats=summary, exit_status=EXIT_OK)
    _write_manifest(out, manifest)
    print(", ".join(f"{key}={val}" for key, val in summary.items()))
    return EXIT_OK


# -- argument handling ------------------------------------------------------

def _positive_int_list(text: str) -> list[int]:
    try:
        values = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="convex-sumset", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, n_type=int):
        p.add_argument("--n", type=n_type, required=True)
        p.add_argument("--theta", default=str(PAPER_THETA),
                       help="block range fraction as p/q or decimal (default 999/1000)")
        p.add_argument("--stride", type=int, default=PAPER_STRIDE)

    p = sub.add_parser("construct", help="build, verify and persist the chain")
    common(p)
    p.add_argument("--out", type=Path, default=Path("runs/construct"))

    p = sub.add_parser("audit", help="exact inequality ledger for every block pair")
    common(p)
    p.add_argument("--out", type=Path, default=None)

    p = sub.add_parser("oracle", help="brute-force longest convex subsequence of B+B")
    common(p)
    p.add_argument("--budget", type=int, default=DEFAULT_DP_BUDGET,
                   help="maximum |B+B| handed to the quadratic DP")
    p.add_argument("--out", type=Path, default=None)

    p = sub.add_parser("sweep", help="construct + measure over a list of n")
    common(p, n_type=_positive_int_list)
    p.add_argument("--out", type=Path, default=Path("runs/sweep"))

    p = sub.add_parser("diffstats", help="histogram of differences in A")
    common(p)
    p.add_argument("--threshold", type=int, default=None,
                   help="popularity threshold T (default ceil(sqrt|A|))")
    p.add_argument("--budget", type=int, default=DEFAULT_MAX_PAIRS,
                   help="maximum number of pairs to enumerate")
    p.add_argument("--out", type=Path, default=Path("runs/diffstats"))
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        if args.command == "sweep":
            if any(n < 1 for n in args.n):
                raise ValueError("every n must be a positive integer")
            theta = make_params(1, args.theta, args.stride).theta
            return cmd_sweep(args.n, theta, args.stride, args.out)
        params = make_params(args.n, args.theta, args.stride)
        if getattr(args, "budget", 1) < 1 or (getattr(args, "threshold", None) or 1) < 1:
            raise ValueError("--budget and --threshold must be positive")
    except (ValueError, TypeError) as exc:
        _err(f"usage error: {exc}")
        return EXIT_USAGE

    if args.command == "construct":
        return cmd_construct(params, args.out)
    if args.command == "audit":
        return cmd_audit(params, args.out)
    if args.command == "oracle":
        return cmd_oracle(params, args.budget, args.out)
    return cmd_diffstats(params, args.threshold, args.budget, args.out)


if __name__ == "__main__":
    sys.exit(main())
