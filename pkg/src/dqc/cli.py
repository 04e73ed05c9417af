"""Command-line interface: verification, tables, Bloch export,
enumeration and classification.

Exit codes: 0 success, 1 verification mismatch, 2 usage error,
3 budget exceeded.  Big integers are always written as decimal
strings; log columns are computed from decimal digit counts so no
value ever passes through a float.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass

from . import census
from .basefield import ComplexifiablePrime, validate_prime
from .entangle import census_tally, classify_raw
from .errors import (
    BudgetExceeded,
    DqcError,
    NotComplexifiable,
    NotPrime,
    VerificationFailed,
)
from .hopf import bloch_export
from .states import format_amp

DEFAULT_PRIMES = (3, 7, 11, 19, 23, 31)


@dataclass
class RunConfig:
    command: str
    primes: list
    n_values: list
    norm_class: str = "unit"
    budget: int = census.DEFAULT_BUDGET
    threads: int = 0
    format: str = "csv"
    out: str = "-"
    seed: int = 0

    @property
    def workers(self) -> int:
        return self.threads if self.threads > 0 else (os.cpu_count() or 1)


def log10_decimal(x: int) -> float:
    """Base-10 log of a positive big integer from its decimal digits."""
    s = str(x)
    head = s[:15]
    return math.log10(int(head)) + (len(s) - len(head))


def mask_bits(mask: int, n: int) -> str:
    """Bit string with qubit 0 leftmost."""
    return "".join("1" if mask >> j & 1 else "0" for j in range(n))


def _write_rows(cfg: RunConfig, header: list, rows):
    """Emit rows as CSV or a JSON array to cfg.out ('-' = stdout)."""
    sink = sys.stdout if cfg.out == "-" else open(cfg.out, "w", encoding="utf-8")
    try:
        if cfg.format == "json":
            data = [dict(zip(header, row)) for row in rows]
            json.dump(data, sink, indent=2)
            sink.write("\n")
        else:
            writer = csv.writer(sink, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
    finally:
        if sink is not sys.stdout:
            sink.close()


def _write_json(cfg: RunConfig, payload):
    sink = sys.stdout if cfg.out == "-" else open(cfg.out, "w", encoding="utf-8")
    try:
        json.dump(payload, sink, indent=2, sort_keys=False)
        sink.write("\n")
    finally:
        if sink is not sys.stdout:
            sink.close()


def cmd_verify(cfg: RunConfig) -> int:
    reports = []
    for p in cfg.primes:
        prime = validate_prime(p)
        for n in cfg.n_values:
            rep = census.verify(
                prime,
                n,
                budget=cfg.budget,
                threads=cfg.workers,
                seed=cfg.seed,
            )
            for note in rep.notes:
                print(f"note: p={p} n={n}: {note}", file=sys.stderr)
            reports.append(rep.to_json_dict())
    _write_json(cfg, reports[0] if len(reports) == 1 else reports)
    return 0


def cmd_tables(cfg: RunConfig) -> int:
    header = [
        "p", "n", "total", "unit_norm", "irreducible",
        "log10_total", "log10_unit_norm", "log10_irreducible",
    ]
    rows = []
    for p in cfg.primes:
        validate_prime(p)
        for n in cfg.n_values:
            d = 1 << n
            total = census.total_count(p, d)
            unit = census.unit_norm_count(p, d)
            irr = census.irreducible_count(p, d)
            rows.append([
                p, n, str(total), str(unit), str(irr),
                f"{log10_decimal(total):.3f}",
                f"{log10_decimal(unit):.3f}",
                f"{log10_decimal(irr):.3f}",
            ])
    _write_rows(cfg, header, rows)
    return 0


def cmd_bloch(cfg: RunConfig) -> int:
    header = ["p", "X", "Y", "Z", "ex", "ey", "ez", "degenerate_flag"]
    rows = []
    for p in cfg.primes:
        prime = validate_prime(p)
        for b in bloch_export(prime):
            rows.append([
                p, b.x, b.y, b.z,
                f"{b.ex:.9g}", f"{b.ey:.9g}", f"{b.ez:.9g}",
                int(b.degenerate),
            ])
    _write_rows(cfg, header, rows)
    return 0


def _precheck_budget(cfg: RunConfig, closed_form):
    """Fail on any over-budget cell before a single row is written."""
    for p in cfg.primes:
        validate_prime(p)
        for n in cfg.n_values:
            census.check_budget(p, 1 << n, cfg.budget, closed_form(p, n))


def cmd_enumerate(cfg: RunConfig) -> int:
    header = ["p", "n", "norm_class", "amplitudes"]

    def expected(p, n):
        if cfg.norm_class == "irreducible":
            return census.irreducible_count(p, 1 << n)
        if cfg.norm_class == "zero":
            return census.zero_norm_count(p, 1 << n)
        return census.unit_norm_count(p, 1 << n)

    _precheck_budget(cfg, expected)

    def rows():
        for p in cfg.primes:
            prime = validate_prime(p)
            for n in cfg.n_values:
                d = 1 << n
                if cfg.norm_class == "irreducible":
                    stream = census.iter_irreducible(prime, n, budget=cfg.budget)
                else:
                    target = 1 if cfg.norm_class == "unit" else 0
                    stream = census.iter_norm_class(
                        prime, d, target, budget=cfg.budget
                    )
                for amps in stream:
                    yield [p, n, cfg.norm_class, ";".join(map(format_amp, amps))]

    _write_rows(cfg, header, rows())
    return 0


def cmd_classify(cfg: RunConfig) -> int:
    header = [
        "p", "n", "state", "class", "sum_sq", "reduced_purity", "separable_mask",
    ]
    summaries = []

    def rows():
        from .entangle import iter_classified

        for p in cfg.primes:
            prime = validate_prime(p)
            for n in cfg.n_values:
                for amps, kind, sum_sq, reduced, mask in iter_classified(
                    prime, n, budget=cfg.budget
                ):
                    yield [
                        p, n,
                        ";".join(map(format_amp, amps)),
                        kind.value,
                        sum_sq,
                        "NA" if reduced is None else reduced,
                        mask_bits(mask, n),
                    ]

    if cfg.out == "-":
        # summary only; the row dump is opt-in via --out
        for p in cfg.primes:
            prime = validate_prime(p)
            for n in cfg.n_values:
                tally = census_tally(
                    prime, n, budget=cfg.budget, threads=cfg.workers
                )
                summaries.append((p, n, tally))
    else:
        _precheck_budget(
            cfg, lambda p, n: census.irreducible_count(p, 1 << n)
        )
        _write_rows(cfg, header, rows())

    for p, n, tally in summaries:
        parts = ", ".join(
            f"{k}: {v}" for k, v in sorted(tally.class_counts.items())
        )
        print(f"p={p} n={n} irreducible={tally.irreducible_total} {{{parts}}}")
        print(
            f"p={p} n={n} purity-1-without-factorization: "
            f"{tally.purity_one_not_product}"
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dqc",
        description="Exact census of discrete qubits over F_p[i], p % 4 == 3.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, with_class=False, with_threads=False):
        sp.add_argument("--p", type=int, help="prime modulus (p %% 4 == 3)")
        sp.add_argument("--p-list", type=str, help="comma-separated primes")
        sp.add_argument("--n", type=int, help="qubit count")
        sp.add_argument("--n-max", type=int, help="run n = 1..n_max")
        sp.add_argument(
            "--budget",
            type=int,
            default=None,
            help="prefix-count budget (default: DQC_BUDGET or 10^8)",
        )
        if with_threads:
            sp.add_argument(
                "--threads", type=int, default=0, help="workers (0 = auto)"
            )
        if with_class:
            sp.add_argument(
                "--class",
                dest="norm_class",
                choices=("unit", "zero", "irreducible"),
                default="unit",
            )
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--out", type=str, default="-", help="output path ('-' = stdout)")
        sp.add_argument("--seed", type=int, default=0, help="seed for sampled checks")

    add_common(sub.add_parser("verify", help="cross-check closed forms by enumeration"),
               with_threads=True)
    add_common(sub.add_parser("tables", help="closed-form count tables"))
    add_common(sub.add_parser("bloch", help="export the discrete Bloch sphere"))
    add_common(sub.add_parser("enumerate", help="stream vectors of a norm class"),
               with_class=True)
    add_common(sub.add_parser("classify", help="entanglement census"),
               with_threads=True)
    return parser


def make_config(args: argparse.Namespace, parser: argparse.ArgumentParser) -> RunConfig:
    if args.p is not None and args.p_list:
        parser.error("--p and --p-list are mutually exclusive")
    if args.p_list:
        try:
            primes = [int(tok) for tok in args.p_list.split(",") if tok.strip()]
        except ValueError:
            parser.error(f"--p-list must be comma-separated integers, got {args.p_list!r}")
    elif args.p is not None:
        primes = [args.p]
    elif args.command == "tables":
        primes = list(DEFAULT_PRIMES)
    else:
        parser.error("one of --p or --p-list is required")
    if not primes:
        parser.error("empty prime list")

    if args.n is not None and args.n_max is not None:
        parser.error("--n and --n-max are mutually exclusive")
    if args.n_max is not None:
        n_values = list(range(1, args.n_max + 1))
    elif args.n is not None:
        n_values = [args.n]
    elif args.command == "tables":
        n_values = [1, 2, 3, 4]
    elif args.command == "bloch":
        n_values = [1]
    else:
        parser.error("one of --n or --n-max is required")
    if not n_values or any(n < 1 for n in n_values):
        parser.error("qubit counts must be >= 1")

    budget = args.budget
    if budget is None:
        budget = int(os.environ.get("DQC_BUDGET", census.DEFAULT_BUDGET))
    if budget <= 0:
        parser.error("--budget must be positive")

    return RunConfig(
        command=args.command,
        primes=primes,
        n_values=n_values,
        norm_class=getattr(args, "norm_class", "unit"),
        budget=budget,
        threads=getattr(args, "threads", 0),
        format=args.format,
        out=args.out,
        seed=args.seed,
    )


COMMANDS = {
    "verify": cmd_verify,
    "tables": cmd_tables,
    "bloch": cmd_bloch,
    "enumerate": cmd_enumerate,
    "classify": cmd_classify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = make_config(args, parser)
        return COMMANDS[cfg.command](cfg)
    except (NotPrime, NotComplexifiable) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except VerificationFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
