"""Command-line interface: ``treehanoi {solve,count,verify,oracle}``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 search memory budget exhausted.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence

from .counting import UnsupportedArity, count_f_closed, count_table
from .oracle import (
    MemoryBudgetExceeded,
    f_task,
    g_task,
    h_task,
    shortest,
    shortest_restricted,
    shortest_unreduced,
)
from .solvers import solve_f, solve_mary, solve_t
from .trace import TraceFormatError, dump_trace, read_trace, write_trace
from .verifier import HeaderMismatch, check_ancestor, check_trace

EXIT_OK = 0
EXIT_REJECT = 1
EXIT_USAGE = 2
EXIT_RESOURCES = 3


class _UsageError(Exception):
    pass


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treehanoi",
        description="Solve, count, verify and brute-force the trees-of-Hanoi game.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="write a solver trace")
    p.add_argument("--algo", choices=["t", "f", "mary"], required=True)
    p.add_argument("--n", type=_nonneg, required=True, help="tree height")
    p.add_argument("--m", type=_positive, default=2, help="arity (default 2)")
    p.add_argument("--from", dest="src", type=_positive, default=1, help="source place")
    p.add_argument("--to", dest="dst", type=_positive, default=2, help="target place")
    p.add_argument("--out", help="trace file to write ('-' for standard output)")

    p = sub.add_parser("count", help="print move-count table")
    p.add_argument("--n-max", type=_nonneg, required=True)
    p.add_argument("--m", type=_positive, default=2)
    p.add_argument("--closed-form", action="store_true",
                   help="add a column evaluated from the closed form")

    p = sub.add_parser("verify", help="replay and check a trace file")
    p.add_argument("--trace", required=True)
    p.add_argument("--ancestor-check", action="store_true",
                   help="also require every node to land on an original ancestor")

    p = sub.add_parser("oracle", help="shortest solution by breadth-first search")
    p.add_argument("--task", choices=["f", "g", "h"], required=True)
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--m", type=_positive, default=2)
    p.add_argument("--restricted", action="store_true",
                   help="only allow moves onto original ancestors")
    p.add_argument("--no-reduction", action="store_true",
                   help="search raw configurations without symmetry reduction")
    p.add_argument("--witness", help="write a shortest trace to this file")
    p.add_argument("--memory-mb", type=float, default=None,
                   help="memory budget (default $HANOI_MEMORY_MB or 2048)")
    return parser


def cmd_solve(args: argparse.Namespace) -> int:
    m, places = args.m, args.m + 2
    if args.algo in ("t", "f") and m != 2:
        raise _UsageError(f"--algo {args.algo} is defined for binary trees only; use --algo mary")
    for flag, place in (("--from", args.src), ("--to", args.dst)):
        if not 1 <= place <= places:
            raise _UsageError(f"{flag} {place} outside 1..{places}")
    if args.src == args.dst:
        raise _UsageError("--from and --to must differ")
    vias = [p for p in range(1, places + 1) if p not in (args.src, args.dst)]
    if args.algo == "t":
        trace = solve_t(args.n, args.src, args.dst, *vias)
    elif args.algo == "f":
        trace = solve_f(args.n, args.src, args.dst, *vias)
    else:
        trace = solve_mary(args.n, m, args.src, args.dst, vias)

    summary = f"{len(trace)} moves"
    if args.out == "-":
        dump_trace(trace, sys.stdout)
        print(summary, file=sys.stderr)
        return EXIT_OK
    if args.out:
        write_trace(trace, args.out)
    print(summary)
    return EXIT_OK


def cmd_count(args: argparse.Namespace) -> int:
    binary = args.m == 2
    if args.closed_form and args.m < 2:
        raise _UsageError(f"closed form unsupported for m = {args.m}")
    cols = ["n"] + (["t_n"] if binary else []) + ["f_n", "g_n", "h_n"]
    if args.closed_form:
        cols.append("f_n_closed")
    print("\t".join(cols))
    for row in count_table(args.n_max, args.m):
        values = [row.n] + ([row.t] if binary else []) + [row.f, row.g, row.h]
        if args.closed_form:
            values.append(count_f_closed(row.n, args.m))
        print("\t".join(str(v) for v in values))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        trace = read_trace(args.trace)
    except OSError as exc:
        raise _UsageError(f"cannot read {args.trace}: {exc.strerror or exc}") from exc
    except TraceFormatError as exc:
        raise _UsageError(f"{args.trace}: {exc}") from exc
    try:
        initial = trace.initial_configuration()
        final = trace.final_configuration()
    except ValueError as exc:
        raise _UsageError(f"{args.trace}: {exc}") from exc

    verdict = check_trace(initial, trace, final)
    if verdict and args.ancestor_check:
        verdict = check_ancestor(initial, trace)
    print(verdict)
    return EXIT_OK if verdict else EXIT_REJECT


def cmd_oracle(args: argparse.Namespace) -> int:
    task = {"f": f_task, "g": g_task, "h": h_task}[args.task](args.n, args.m)
    if args.restricted and args.no_reduction:
        raise _UsageError("--restricted and --no-reduction are exclusive")
    search = (
        shortest_restricted if args.restricted
        else shortest_unreduced if args.no_reduction
        else shortest
    )
    try:
        result = search(task, memory_mb=args.memory_mb)
    except MemoryBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCES
    if args.witness:
        write_trace(result.witness, args.witness)
    print(result.count)
    return EXIT_OK


_COMMANDS = {"solve": cmd_solve, "count": cmd_count, "verify": cmd_verify, "oracle": cmd_oracle}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (_UsageError, UnsupportedArity, HeaderMismatch) as exc:
        print(f"treehanoi {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
