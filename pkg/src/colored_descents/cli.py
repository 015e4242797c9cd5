"""Command-line interface.

Exit codes form a contract: 0 success, 1 usage error, 2 resource cap
exceeded, 3 verification failure.  Every flag can be preset through an
environment variable named COLORED_DESCENTS_<FLAG>.  Verification reports
embed the configuration, the seed, the package version, and the wall-clock
duration; everything except the duration is byte-stable across runs.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__, schemas
from .group import (
    DEFAULT_MAX_GROUP_SIZE,
    SizeCapExceeded,
    descent_profile,
    enumerate_group,
    mr_key,
    parse_one_line,
    permutation_to_json,
)
from .algebra import idempotent_class_table
from .ppartitions import (
    OrderPolyValue,
    VerificationError,
    eulerian_polynomial,
    omega_pi,
)
from .verify import SUITE_NAMES, run_suite

ENV_PREFIX = "COLORED_DESCENTS_"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CAP = 2
EXIT_VERIFICATION = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit 1, not argparse's 2
        raise UsageError(message)


def _env(flag: str, fallback=None):
    return os.environ.get(ENV_PREFIX + flag.upper().replace("-", "_"), fallback)


@dataclass
class RunConfig:
    """Echo of every flag that shaped a run; embedded in reports."""

    command: str
    r: Optional[int]
    n: Optional[int]
    j: str
    k: int
    seed: int
    cases: int
    jobs: int
    max_group_size: int
    format: str
    cache: Optional[str]

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "r": self.r,
            "n": self.n,
            "j": self.j,
            "k": self.k,
            "seed": self.seed,
            "cases": self.cases,
            "jobs": self.jobs,
            "max_group_size": self.max_group_size,
            "format": self.format,
            "cache": self.cache,
        }


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--r", type=int, default=_env("r"))
    parser.add_argument("--n", type=int, default=_env("n"))
    parser.add_argument("--j", type=str, default=_env("j", "0..3"),
                        help="single value or inclusive range like 0..3")
    parser.add_argument("--k", type=int, default=int(_env("k", 3)))
    parser.add_argument("--seed", type=int, default=int(_env("seed", 0)))
    parser.add_argument("--cases", type=int, default=int(_env("cases", 100)))
    parser.add_argument("--jobs", type=int, default=int(_env("jobs", 1)))
    parser.add_argument(
        "--max-group-size",
        type=int,
        default=int(_env("max-group-size", DEFAULT_MAX_GROUP_SIZE)),
    )
    parser.add_argument(
        "--format",
        choices=("json", "csv", "text"),
        default=_env("format", "text"),
    )
    parser.add_argument("--cache", type=str, default=_env("cache"))
    parser.add_argument("--output", "-o", type=str, default=_env("output"),
                        help="write to this file instead of stdout")


def build_parser() -> _Parser:
    parser = _Parser(prog="colored-descents", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list group elements with statistics")
    _add_common(p)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("suite", choices=SUITE_NAMES)
    _add_common(p)

    p = sub.add_parser("idempotents", help="emit the orthogonal idempotent table")
    _add_common(p)

    p = sub.add_parser("eulerian-poly", help="emit descent-number coefficients")
    _add_common(p)

    p = sub.add_parser("order-poly", help="evaluate the order polynomial of a word")
    p.add_argument("--pi", type=str, default=_env("pi"), help="one-line word like '2_1 1_1'")
    _add_common(p)

    return parser


def _parse_j_range(text: str) -> list[int]:
    lo, sep, hi = text.partition("..")
    if sep:
        return list(range(int(lo), int(hi) + 1))
    return [int(lo)]


def _validate_common(args: argparse.Namespace) -> None:
    if args.max_group_size <= 0:
        raise UsageError("--max-group-size must be positive")
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        r=args.r,
        n=args.n,
        j=args.j,
        k=args.k,
        seed=args.seed,
        cases=args.cases,
        jobs=args.jobs,
        max_group_size=args.max_group_size,
        format=args.format,
        cache=args.cache,
    )


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _dump_json(obj: object) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _csv_line(fields: Sequence[object]) -> str:
    return ",".join(str(f) for f in fields) + "\n"


def cmd_enumerate(args: argparse.Namespace) -> int:
    r = args.r if args.r is not None else 2
    n = args.n if args.n is not None else 2
    records = []
    runs = []
    for rank, pi in enumerate(enumerate_group(r, n, args.max_group_size)):
        profile = descent_profile(pi)
        key = mr_key(pi)
        runs.append(str(key))
        records.append(
            {
                "rank": rank,
                "word": str(pi),
                "permutation": permutation_to_json(pi),
                "descent_set": sorted(profile.descent_set),
                "des": profile.des,
                "intdes": profile.intdes,
                "mr_key": [list(part) for part in key.parts],
            }
        )
    if args.format == "json":
        for record in records:
            schemas.validate(record, "enumerate_record")
        _emit(_dump_json(records), args.output)
    elif args.format == "csv":
        lines = [_csv_line(["rank", "word", "descent_set", "des", "intdes", "mr_key"])]
        for rec, run in zip(records, runs):
            lines.append(
                _csv_line(
                    [
                        rec["rank"],
                        rec["word"],
                        " ".join(map(str, rec["descent_set"])),
                        rec["des"],
                        rec["intdes"],
                        run,
                    ]
                )
            )
        _emit("".join(lines), args.output)
    else:
        lines = [
            f"{rec['rank']:>6}  {rec['word']:<24} Des={sorted(rec['descent_set'])} "
            f"des={rec['des']} intdes={rec['intdes']} runs={rec['mr_key']}\n"
            for rec in records
        ]
        _emit("".join(lines), args.output)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    j_values = _parse_j_range(args.j)
    start = time.perf_counter()
    report = run_suite(
        args.suite,
        r=args.r,
        n=args.n,
        seed=args.seed,
        cases=args.cases,
        j_max=max(j_values),
        k_max=args.k,
        jobs=args.jobs,
        max_group_size=args.max_group_size,
        cache=args.cache,
    )
    duration = time.perf_counter() - start
    envelope = {
        "tool": "colored-descents",
        "version": __version__,
        "command": f"verify {args.suite}",
        "config": config.to_json(),
        "seed": args.seed,
        "duration_seconds": round(duration, 6),
        "results": report.to_json(),
    }
    schemas.validate(envelope, "report")
    if args.format == "json":
        _emit(_dump_json(envelope), args.output)
    elif args.format == "csv":
        lines = [_csv_line(["suite", "checks", "passed", "failures"])]
        lines.append(
            _csv_line([report.suite, report.checks, report.passed, len(report.failures)])
        )
        _emit("".join(lines), args.output)
    else:
        status = "PASS" if report.passed else "FAIL"
        lines = [
            f"suite {report.suite}: {status} "
            f"({report.checks} checks, {len(report.failures)} failures, "
            f"{duration:.2f}s)\n"
        ]
        for failure in report.failures[:5]:
            lines.append(f"  witness: {json.dumps(failure, sort_keys=True)}\n")
        _emit("".join(lines), args.output)
    return EXIT_OK if report.passed else EXIT_VERIFICATION


def _idempotent_table_json(r: int, n: int) -> dict:
    table = idempotent_class_table(r, n)
    fractions = [table[i][d] for i in range(n + 1) for d in range(n + 1)]
    common = math.lcm(*(f.denominator for f in fractions)) if fractions else 1
    return {
        "r": r,
        "n": n,
        "idempotents": [
            {
                "i": i,
                "by_des_class": [
                    {
                        "des": d,
                        "num": str(table[i][d].numerator),
                        "den": str(table[i][d].denominator),
                    }
                    for d in range(n + 1)
                ],
            }
            for i in range(n + 1)
        ],
        "common_denominator": str(common),
    }


def cmd_idempotents(args: argparse.Namespace) -> int:
    r = args.r if args.r is not None else 5
    n = args.n if args.n is not None else 3
    table = _idempotent_table_json(r, n)
    if args.format == "json":
        schemas.validate(table, "idempotent_table")
        _emit(_dump_json(table), args.output)
    elif args.format == "csv":
        lines = [_csv_line(["i", "des", "coefficient"])]
        for row in table["idempotents"]:
            for cell in row["by_des_class"]:
                lines.append(
                    _csv_line(
                        [row["i"], cell["des"], f"{cell['num']}/{cell['den']}"]
                    )
                )
        _emit("".join(lines), args.output)
    else:
        common = int(table["common_denominator"])
        lines = []
        for row in table["idempotents"]:
            text = ""
            for cell in row["by_des_class"]:
                scaled = Fraction(int(cell["num"]), int(cell["den"])) * common
                sign = "-" if scaled < 0 else "+"
                term = f"{abs(scaled)} C_{cell['des']}"
                text = f"{text} {sign} {term}" if text else (
                    term if sign == "+" else f"-{term}"
                )
            lines.append(f"c_{row['i']} = (1/{common})({text})\n")
        _emit("".join(lines), args.output)
    return EXIT_OK


def cmd_eulerian_poly(args: argparse.Namespace) -> int:
    r = args.r if args.r is not None else 2
    n = args.n if args.n is not None else 2
    series = eulerian_polynomial(r, n, args.max_group_size)
    record = {
        "op": "eulerian-poly",
        "params": {"r": r, "n": n},
        "t_coeffs": [str(c) for c in series.coefficients],
    }
    if args.format == "json":
        schemas.validate(record, "series_record")
        _emit(_dump_json(record), args.output)
    elif args.format == "csv":
        lines = [_csv_line(["power", "coefficient"])]
        lines.extend(_csv_line([d, c]) for d, c in enumerate(series.coefficients))
        _emit("".join(lines), args.output)
    else:
        _emit(f"[{', '.join(str(c) for c in series.coefficients)}]\n", args.output)
    return EXIT_OK


def cmd_order_poly(args: argparse.Namespace) -> int:
    if not args.pi:
        raise UsageError("order-poly requires --pi")
    r = args.r if args.r is not None else 2
    pi = parse_one_line(args.pi, r)
    values = [OrderPolyValue(omega_pi(pi, j), j) for j in _parse_j_range(args.j)]
    records = [
        {
            "op": "order-poly",
            "params": {"r": r, "pi": str(pi), "j": v.j},
            "count": str(v.count),
        }
        for v in values
    ]
    if args.format == "json":
        for record in records:
            schemas.validate(record, "count_record")
        _emit(_dump_json(records), args.output)
    elif args.format == "csv":
        lines = [_csv_line(["j", "count"])]
        lines.extend(
            _csv_line([rec["params"]["j"], rec["count"]]) for rec in records
        )
        _emit("".join(lines), args.output)
    else:
        _emit(f"[{', '.join(rec['count'] for rec in records)}]\n", args.output)
    return EXIT_OK


_COMMANDS = {
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
    "idempotents": cmd_idempotents,
    "eulerian-poly": cmd_eulerian_poly,
    "order-poly": cmd_order_poly,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _validate_common(args)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SizeCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except VerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION


def console_main() -> None:
    sys.exit(main())
