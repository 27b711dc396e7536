"""Command line entry points.

Exit status: 0 on success, 1 on a usage error, 2 when a command fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .datasets import data_path, load_basis
from .enumeration import census, count_terms
from .experiment import ExperimentConfig, export_result, run_experiment
from .reduce import FuelExhausted, normalize, trace
from .sample import RandomSource, random_term
from .series import (
    GrammarData,
    c_series,
    density_from_constant,
    grammar_coeffs,
    inverse_sqrt_core,
    r0_series,
    subterm_series,
    sum_densities,
    tl_series,
)
from .term import parse, to_text

EXIT_OK, EXIT_USAGE, EXIT_FAILURE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_basis(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--basis", default="sk", help="builtin basis (sk, bckw) or a basis JSON file"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="clquant", description="Quantitative combinatory logic workbench."
    )
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("reduce", help="normal-order reduction of one term")
    _add_basis(p)
    p.add_argument("--term", required=True)
    p.add_argument("--fuel", type=int, default=1000)
    p.add_argument("--trace", action="store_true", help="print every step")

    p = sub.add_parser("count", help="number of terms of a given size")
    _add_basis(p)
    p.add_argument("--size", type=int, required=True)

    p = sub.add_parser("census", help="reduction-length census of all size-N terms")
    _add_basis(p)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--fuel", type=int, default=100)
    p.add_argument("--pattern", help="also count terms containing this subterm")
    p.add_argument("--typecheck", action="store_true", help="also count typeable terms")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", choices=("csv", "json"), default="csv")

    p = sub.add_parser("sample", help="uniform random terms")
    _add_basis(p)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--print", action="store_true", help="print each term")

    p = sub.add_parser("experiment", help="Monte Carlo normalisation experiment")
    _add_basis(p)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--fuel", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="CSV file (default: standard output)")
    p.add_argument("--json", help="also write the full result as JSON")

    p = sub.add_parser("series", help="generating-function coefficients")
    p.add_argument(
        "--fn", required=True, choices=("C", "R0", "TL", "subterm", "invsqrt", "grammar")
    )
    p.add_argument("--n", type=int, required=True, help="highest coefficient index")
    p.add_argument("--d", type=int, default=2, help="number of primitives (TL, subterm)")
    p.add_argument("--p", type=int, default=1, help="pattern size (subterm)")
    p.add_argument("--grammar", help="grammar JSON (default: bundled R_1 grammar)")
    p.add_argument("--out", choices=("csv",), default="csv")

    p = sub.add_parser("density", help="densities and their sum")
    p.add_argument(
        "--constants",
        help='JSON with "densities" or "c_tilde" lists (default: bundled SK values)',
    )
    return parser


def _cmd_reduce(args) -> None:
    basis = load_basis(args.basis)
    t = parse(args.term, basis)
    if args.trace:
        for i, u in enumerate(trace(t, basis, args.fuel)):
            print(f"{i}\t{to_text(u)}")
    out = normalize(t, basis, args.fuel)
    if isinstance(out, FuelExhausted):
        print(f"fuel exhausted after {out.steps_taken} steps")
    else:
        print(f"normal form after {out.steps} steps: {to_text(out.result)}")


def _cmd_count(args) -> None:
    print(count_terms(load_basis(args.basis).d, args.size))


def _cmd_census(args) -> None:
    basis = load_basis(args.basis)
    pattern = parse(args.pattern, basis) if args.pattern else None
    res = census(
        basis, args.size, args.fuel, pattern=pattern, typecheck=args.typecheck,
        workers=args.workers,
    )
    sys.stdout.write(res.to_csv() if args.out == "csv" else res.to_json() + "\n")


def _cmd_sample(args) -> None:
    basis = load_basis(args.basis)
    for i in range(args.count):
        t = random_term(basis, args.size, RandomSource(args.seed, i))
        if args.print:
            print(to_text(t))
    if not args.print:
        print(f"drew {args.count} terms of size {args.size} (seed {args.seed})")


def _cmd_experiment(args) -> None:
    config = ExperimentConfig(
        args.samples, args.size, args.fuel, args.seed, args.workers,
        load_basis(args.basis),
    )
    res = run_experiment(config)
    csv = export_result(res, "csv")
    if args.out:
        Path(args.out).write_bytes(csv)
    else:
        sys.stdout.buffer.write(csv)
        sys.stdout.flush()
    if args.json:
        Path(args.json).write_bytes(export_result(res, "json"))


def _cmd_series(args) -> None:
    n = args.n
    if n < 0:
        raise UsageError("--n must be non-negative")
    if args.fn == "C":
        s = c_series(n)
    elif args.fn == "R0":
        s = r0_series(n)
    elif args.fn == "TL":
        s = tl_series(args.d, n)
    elif args.fn == "subterm":
        s = subterm_series(args.d, args.p, n)
    elif args.fn == "invsqrt":
        s = inverse_sqrt_core(n)
    else:
        g = GrammarData.from_json(args.grammar or data_path("r1_sk.json"))
        lower = [r0_series(n)]
        if any(len(p.r) > 1 for p in g.productions):
            raise UsageError("only grammars over R_0 can be expanded from the command line")
        s = grammar_coeffs(g, lower, n)
    print("n,coefficient")
    for i, c in enumerate(s):
        print(f"{i},{c}")


def _cmd_density(args) -> None:
    path = args.constants or data_path("densities_sk.json")
    data = json.loads(Path(path).read_text())
    if "densities" in data:
        values = [float(x) for x in data["densities"]]
    elif "c_tilde" in data:
        values = [density_from_constant(float(x)) for x in data["c_tilde"]]
    else:
        raise UsageError('constants file needs a "densities" or "c_tilde" list')
    print("m,density")
    for m, v in enumerate(values, start=1):
        print(f"{m},{v!r}")
    print(f"sum,{sum_densities(values)!r}")


_COMMANDS = {
    "reduce": _cmd_reduce,
    "count": _cmd_count,
    "census": _cmd_census,
    "sample": _cmd_sample,
    "experiment": _cmd_experiment,
    "series": _cmd_series,
    "density": _cmd_density,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    try:
        _COMMANDS[args.command](args)
    except UsageError as e:
        print(f"clquant {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError, OSError) as e:
        print(f"clquant {args.command}: {e}", file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
