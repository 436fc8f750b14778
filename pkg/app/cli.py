"""Command-line surface: generation, counting, verification, decoding and walk traces.

Output is deterministic; there is no randomness anywhere, so `--seedless` is
accepted and changes nothing. Exit codes: 0 success or PASS, 1 FAIL,
2 malformed input or parameters with s < 0, s+k-1 > t or t > n(k-1).
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from app.config import Settings
from app.models.schemas import Cycle, TextFormat, Verdict, Walk, WeightRangeParams
from app.services.counting import count_range, count_table, redundancy_ratio
from app.services.exceptions import CapExceededError, DeBruijnError, ParameterError
from app.services.poset_cycles import PosetCycles
from app.services.verification import CycleVerifier
from app.services.weight_range import CycleGenerator, OverlapDigraph
from app.services.words import window, word_to_multiset
from app.utils.helpers import (
    error_message,
    parse_letters,
    parse_poset,
    render_assignment,
    render_legend,
    render_letters,
    render_set,
    render_trace,
)

logger = logging.getLogger(__name__)


def _settings(args: argparse.Namespace) -> Settings:
    return Settings(max_vertices=args.max_vertices, max_cycle_length=args.max_cycle_length)


def _weight_range_params(args: argparse.Namespace) -> WeightRangeParams:
    return WeightRangeParams(n=args.n, k=args.k, s=args.s, t=args.t)


def _read_poset(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParameterError(f"cannot read poset file {path}: {exc.strerror}")
    return parse_poset(text)


def _print_windows_as_sets(cycle: Cycle) -> None:
    for start in range(cycle.length):
        word = window(cycle, start)
        members = sorted(word_to_multiset(word).elements())
        print(f"{start}\t{render_letters(word.letters, cycle.alphabet_size)}\t{render_set(members)}")


def cmd_gen_debruijn(args: argparse.Namespace) -> int:
    cycle = CycleGenerator(_settings(args)).generate_full(args.k, args.n)
    print(render_letters(cycle.letters, cycle.alphabet_size, args.format))
    return 0


def cmd_gen_weight_range(args: argparse.Namespace) -> int:
    if args.redundant_for is not None:
        args.s, args.t = args.redundant_for - (args.k - 1), args.redundant_for
    if args.s is None or args.t is None:
        raise ParameterError("give --s and --t, or --redundant-for")
    params = _weight_range_params(args)
    cycle = CycleGenerator(_settings(args)).eulerian_cycle(params)
    print(render_letters(cycle.letters, cycle.alphabet_size, args.format))
    if args.as_sets:
        _print_windows_as_sets(cycle)
    return 0


def cmd_gen_poset(args: argparse.Namespace) -> int:
    poset = _read_poset(args.poset)
    builder = PosetCycles(Settings(
        max_vertices=args.max_vertices,
        max_cycle_length=args.max_cycle_length,
        max_alphabet=args.max_alphabet,
    ))
    cycle = builder.poset_cycle(poset, args.n)
    print(render_letters(cycle.letters, cycle.alphabet_size, args.format))
    for line in render_legend(builder.antichains(poset)):
        print(line)
    return 0


def cmd_count(args: argparse.Namespace) -> int:
    n, k = args.n, args.k
    if n < 1 or k < 2:
        raise ParameterError(f"requires n >= 1 and k >= 2 (got n={n}, k={k})")
    top = n * (k - 1)
    if args.redundancy:
        if args.t is None:
            raise ParameterError("--redundancy needs --t")
        print(f"ratio\t{redundancy_ratio(n, k, args.t)}")
        return 0
    counts = count_table(n, k).counts
    if args.j is not None:
        if not 0 <= args.j <= top:
            raise ParameterError(f"requires 0 <= j <= n(k-1) = {top} (got j={args.j})")
        print(f"{args.j}\t{counts[args.j]}")
        return 0
    low = 0 if args.s is None else args.s
    high = top if args.t is None else args.t
    if not 0 <= low <= high <= top:
        raise ParameterError(f"requires 0 <= s <= t <= n(k-1) = {top} (got s={low}, t={high})")
    for j in range(low, high + 1):
        print(f"{j}\t{counts[j]}")
    print(f"total\t{count_range(n, k, low, high)}")
    return 0


def _print_report(report, json_lines: bool) -> None:
    if json_lines:
        print(report.model_dump_json())
        return
    for field, value in report.model_dump(mode="json").items():
        if value is not None:
            print(f"{field}: {value}")


def cmd_verify(args: argparse.Namespace) -> int:
    verifier = CycleVerifier(Settings(max_alphabet=args.max_alphabet))
    if args.mode == "weight-range":
        params = _weight_range_params(args)
        cycle = Cycle(letters=tuple(parse_letters(args.cycle, params.k)),
                      alphabet_size=params.k, window_length=params.n)
        report = verifier.verify_universal_cycle(cycle, params)
    else:
        if args.poset is None:
            raise ParameterError("--mode poset needs --poset")
        poset = _read_poset(args.poset)
        alpha = len(PosetCycles(Settings(max_alphabet=args.max_alphabet)).antichains(poset))
        cycle = Cycle(letters=tuple(parse_letters(args.cycle, alpha)),
                      alphabet_size=alpha, window_length=args.n)
        report = verifier.verify_poset_cycle(cycle, poset, args.n)
    _print_report(report, args.json_lines)
    return 0 if report.verdict == Verdict.PASS else 1


def cmd_decode(args: argparse.Namespace) -> int:
    poset = _read_poset(args.poset)
    builder = PosetCycles(Settings(max_alphabet=args.max_alphabet))
    alpha = len(builder.antichains(poset))
    cycle = Cycle(letters=tuple(parse_letters(args.cycle, alpha)),
                  alphabet_size=alpha, window_length=args.n)
    assignment = builder.decode_assignment(poset, cycle, args.at)
    for line in render_assignment(poset, assignment):
        print(line)
    return 0


def cmd_path_demo(args: argparse.Namespace) -> int:
    params = _weight_range_params(args)
    start = tuple(parse_letters(args.start, params.k))
    walk: Walk = OverlapDigraph(params).path_to_sink(start)
    report = CycleVerifier().verify_walk(walk, params)
    for line in render_trace(report):
        print(line)
    return 0 if report.verdict == Verdict.PASS else 1


def _add_caps(parser: argparse.ArgumentParser) -> None:
    defaults = Settings()
    parser.add_argument("--max-vertices", type=int, default=defaults.max_vertices)
    parser.add_argument("--max-cycle-length", type=int, default=defaults.max_cycle_length)
    parser.add_argument("--max-alphabet", type=int, default=defaults.max_alphabet)


def _add_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", type=TextFormat, choices=list(TextFormat),
                        default=TextFormat.AUTO, metavar="{auto,digits,csv}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="debruijn",
        description="Construct, verify and decode de Bruijn cycles of words, "
                    "weight-constrained words and poset assignments",
    )
    parser.add_argument("--seedless", action="store_true",
                        help="accepted for scripts; output is always deterministic")
    parser.add_argument("--verbose", action="store_true", help="debug logging on stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("gen-debruijn", help="classic cycle of all k^n words")
    sub.add_argument("--k", type=int, required=True)
    sub.add_argument("--n", type=int, required=True)
    _add_format(sub)
    _add_caps(sub)
    sub.set_defaults(handler=cmd_gen_debruijn)

    sub = commands.add_parser("gen-weight-range", help="cycle of words with weight in [s, t]")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--k", type=int, required=True)
    sub.add_argument("--s", type=int)
    sub.add_argument("--t", type=int)
    sub.add_argument("--redundant-for", type=int, metavar="T",
                     help="use s = T-(k-1), t = T: a redundant cycle of the weight-T words")
    sub.add_argument("--as-sets", action="store_true",
                     help="also list every window with its multiset of [n]")
    _add_format(sub)
    _add_caps(sub)
    sub.set_defaults(handler=cmd_gen_weight_range)

    sub = commands.add_parser("gen-poset", help="cycle of assignments of [n] to a poset")
    sub.add_argument("--poset", required=True, help="poset file")
    sub.add_argument("--n", type=int, required=True)
    _add_format(sub)
    _add_caps(sub)
    sub.set_defaults(handler=cmd_gen_poset)

    sub = commands.add_parser("count", help="exact counts A(n, k, j), one `j<TAB>count` per line")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--k", type=int, required=True)
    sub.add_argument("--s", type=int)
    sub.add_argument("--t", type=int)
    sub.add_argument("--j", type=int)
    sub.add_argument("--redundancy", action="store_true",
                     help="print the exact ratio |W| / A(n, k, t) for s = t-(k-1)")
    sub.set_defaults(handler=cmd_count)

    sub = commands.add_parser("verify", help="exhaustively check a cycle")
    sub.add_argument("--mode", choices=["weight-range", "poset"], required=True)
    sub.add_argument("--cycle", required=True)
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--k", type=int)
    sub.add_argument("--s", type=int)
    sub.add_argument("--t", type=int)
    sub.add_argument("--poset")
    sub.add_argument("--json-lines", action="store_true", help="one JSON report per line")
    sub.add_argument("--max-alphabet", type=int, default=Settings().max_alphabet)
    sub.set_defaults(handler=cmd_verify)

    sub = commands.add_parser("decode", help="decode one window of a poset cycle")
    sub.add_argument("--poset", required=True)
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--cycle", required=True)
    sub.add_argument("--at", type=int, required=True)
    sub.add_argument("--max-alphabet", type=int, default=Settings().max_alphabet)
    sub.set_defaults(handler=cmd_decode)

    sub = commands.add_parser("path-demo", help="trace the walk from a vertex to the sink vertex")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--k", type=int, required=True)
    sub.add_argument("--s", type=int, required=True)
    sub.add_argument("--t", type=int, required=True)
    sub.add_argument("--from", dest="start", required=True, help="start vertex, n-1 letters")
    sub.set_defaults(handler=cmd_path_demo)

    return parser


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.handler(args)
    except (ValidationError, ParameterError, CapExceededError) as exc:
        print(f"error: {error_message(exc)}", file=sys.stderr)
        return 2
    except DeBruijnError:
        logger.exception("internal error while running %s", args.command)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
