"""Command-line front end.

Exit codes: 0 success, 1 automaton not Wheeler (``verify``), 2 bad
parameters or guard exceeded, 3 I/O or parse failure.
"""
from __future__ import annotations

import argparse
import math
import sys

from .core import Params, check_wheeler, validate_params
from .errors import AttemptLimitExceeded, EmptyFamily, ParseError, PreconditionViolated, TooLarge

EXIT_OK, EXIT_INVALID, EXIT_PARAMS, EXIT_IO = 0, 1, 2, 3
DOT_MAX_STATES = 100
ENUMERATE_MAX_COUNT = 100_000


def _err(msg):
    print(f"wdfa: {msg}", file=sys.stderr)


def _add_nms(p, m_required=True):
    p.add_argument("-n", type=int, required=True, help="number of states")
    p.add_argument("-m", type=int, required=m_required, help="number of transitions")
    p.add_argument("-s", "--sigma", type=int, required=True, help="alphabet size")


def _seed(text):
    value = int(text, 0)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wdfa", description="Uniform Wheeler DFA toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="stream a uniform WDFA")
    _add_nms(g)
    g.add_argument("--seed", type=_seed, help="64-bit seed (default: OS entropy)")
    g.add_argument("-o", "--output", default="-", help="output file, '-' for stdout")
    g.add_argument("--format", choices=["edges", "dot"], default="edges")
    g.add_argument("--raw-stream", action="store_true",
                   help="on stdout, mark rejected attempts with '# restart' and end with '# commit'")
    g.add_argument("--sink", choices=["file", "null"], default="file",
                   help="'null' discards the transitions (for timing and memory checks)")
    g.add_argument("--max-attempts", type=int, default=None)

    c = sub.add_parser("count", help="exact family sizes")
    _add_nms(c, m_required=False)
    c.add_argument("--all-m", action="store_true", help="sum over every feasible m")
    c.add_argument("--non-effective", action="store_true",
                   help="do not require every label to be used")
    c.add_argument("--bounds", action="store_true",
                   help="print lower/upper bit bounds next to the exact log2 of the all-m count")
    c.add_argument("--eps", type=float, default=0.5, help="slack for the upper bound")

    v = sub.add_parser("verify", help="check an edge-list file")
    v.add_argument("path", help="edge-list file, '-' for stdin")

    e = sub.add_parser("enumerate", help="list every member of a small family")
    _add_nms(e)
    e.add_argument("--method", choices=["r", "direct"], default="r",
                   help="'r' decodes every (O, I) pair, 'direct' brute-forces transition sets")
    e.add_argument("--max-count", type=int, default=ENUMERATE_MAX_COUNT,
                   help="refuse families larger than this (default %(default)s)")

    b = sub.add_parser("bench", help="measure generation speed and memory")
    b.add_argument("-n", type=int)
    b.add_argument("-m", type=int)
    b.add_argument("-s", "--sigma", type=int, default=128)
    b.add_argument("--seed", type=_seed)
    b.add_argument("--runs", type=int, default=1)
    b.add_argument("--sink", choices=["null", "memory", "file"], default="null")
    b.add_argument("--backend", choices=["auto", "cython", "python"], default="auto")
    b.add_argument("--compare", action="store_true", help="run every available backend")
    b.add_argument("--grid", action="store_true",
                   help="time the n = n0*2^a, m = n*2^b - 1 grid and fit the log-log slope")
    b.add_argument("--n0", type=int, default=2 ** 15)
    b.add_argument("--n-steps", type=int, default=7)
    b.add_argument("--m-steps", type=int, default=8)
    b.add_argument("--csv", help="grid results as CSV ('-' for stdout)")
    return parser


def cmd_generate(args) -> int:
    from .edgelist import header_line
    from .shuffler import fresh_seed
    from .stream import ListSink, NullSink, TextSink, restarts_possible, sample_stream

    p = Params(args.n, args.m, args.sigma)
    validate_params(p)
    if p.m > 1 and p.sigma > p.m / math.log(p.m):
        _err(f"warning: sigma={p.sigma} > m/ln m={p.m / math.log(p.m):.1f}; the O(m) expected "
             "time guarantee holds for all alphabets of size sigma <= m/ln m")
    seed = fresh_seed() if args.seed is None else args.seed
    header = header_line(p.n, p.m, p.sigma, seed)

    if args.sink == "null":
        from .bench import peak_rss_kib
        stats = sample_stream(p, seed, NullSink(), max_attempts=args.max_attempts)
        _err(f"seed={seed} attempts={stats.attempts} edges={stats.edges_emitted} "
             f"backend={stats.backend} peak_rss_kib={peak_rss_kib()}")
        return EXIT_OK

    if args.format == "dot":
        if p.n > DOT_MAX_STATES:
            _err(f"--format dot is limited to n <= {DOT_MAX_STATES}")
            return EXIT_PARAMS
        sink = ListSink()
        sample_stream(p, seed, sink, max_attempts=args.max_attempts)
        text = "// " + header + sink.automaton(p.n, p.sigma).to_dot()
        if args.output == "-":
            sys.stdout.write(text)
        else:
            with open(args.output, "w", encoding="utf-8", newline="\n") as f:
                f.write(text)
        return EXIT_OK

    if args.output == "-":
        out = sys.stdout.buffer
        if args.raw_stream:
            mode = "framed"
        elif restarts_possible(p):
            _err("refusing to write to stdout: rejected attempts cannot be unwritten there. "
                 "Use -o FILE, or --raw-stream to get '# restart'/'# commit' framing.")
            return EXIT_PARAMS
        else:
            mode = "plain"
        sample_stream(p, seed, TextSink(out, mode, header), max_attempts=args.max_attempts)
        return EXIT_OK

    with open(args.output, "wb") as f:
        mode = "framed" if args.raw_stream else "truncate"
        sample_stream(p, seed, TextSink(f, mode, header), max_attempts=args.max_attempts)
    return EXIT_OK


def cmd_count(args) -> int:
    from . import census

    if args.bounds:
        lower, upper = census.bounds(args.n, args.sigma, args.eps)
        total = census.count_all_m(args.n, args.sigma)
        print(f"count={total}")
        print(f"log2_count={census.log2_big(total):.6f}")
        print(f"lower_bits={lower:.6f}")
        print(f"upper_bits={upper:.6f}")
        return EXIT_OK
    if args.all_m:
        print(census.count_all_m(args.n, args.sigma))
        return EXIT_OK
    if args.m is None:
        _err("-m is required unless --all-m or --bounds is given")
        return EXIT_PARAMS
    if args.non_effective:
        print(census.count_wdfa_noneffective(args.n, args.m, args.sigma))
    else:
        print(census.count_wdfa(args.n, args.m, args.sigma))
    return EXIT_OK


def cmd_verify(args) -> int:
    from .edgelist import load

    try:
        ef = load(args.path)
    except ParseError as exc:
        _err(f"parse error: {exc}")
        return EXIT_IO
    verdict = check_wheeler(ef.automaton)
    if not verdict:
        witness = " ".join(str(w) for w in verdict.witness)
        print(f"INVALID {verdict.axiom}: {verdict.reason} [witness {witness}]")
        return EXIT_INVALID
    if ef.automaton.m != ef.m:
        print(f"INVALID edge-count: header says m={ef.m} but the file has {ef.automaton.m} transitions")
        return EXIT_INVALID
    print("VALID")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    from .census import count_wdfa
    from .edgelist import format_edges
    from .oracle import enumerate_direct, enumerate_via_r

    size = count_wdfa(args.n, args.m, args.sigma)
    if size > args.max_count:
        _err(f"family has {size} members, more than --max-count={args.max_count}")
        return EXIT_PARAMS
    enum = enumerate_via_r if args.method == "r" else enumerate_direct
    family = enum(args.n, args.m, args.sigma)
    out = sys.stdout
    out.write(f"{len(family)}\n")
    for d in family:
        out.write("\n")
        out.write(format_edges(d.transitions))
    return EXIT_OK


def cmd_bench(args) -> int:
    from . import _backend
    from .bench import SOFT_FLOOR_EDGES_PER_SEC, scaling_grid, run_bench, run_grid

    if args.compare:
        backends = _backend.available()
    elif args.backend == "auto":
        backends = [None]
    else:
        backends = [args.backend]

    if args.grid:
        points = list(scaling_grid(args.n0, args.n_steps, args.m_steps))
        for name in backends:
            rows, slope = run_grid(points, sigma=args.sigma, seed=args.seed or 0, backend=name,
                                   csv_path=None if args.csv in (None, "-") else args.csv)
            if args.csv == "-":
                import csv
                from .bench import GRID_FIELDS
                w = csv.DictWriter(sys.stdout, fieldnames=GRID_FIELDS)
                w.writeheader()
                w.writerows(rows)
            print(f"backend={rows[0]['backend']}")
            print(f"points={len(rows)}")
            print(f"slope={slope:.4f}")
        return EXIT_OK

    if args.n is None or args.m is None:
        _err("bench needs -n and -m (or --grid)")
        return EXIT_PARAMS
    results = []
    for name in backends:
        r = run_bench(args.n, args.m, args.sigma, runs=args.runs, seed=args.seed,
                      sink=args.sink, backend=name)
        results.append(r)
        if len(results) > 1:
            print()
        sys.stdout.write(r.as_kv())
        if args.sink == "null" and r.edges_per_sec < SOFT_FLOOR_EDGES_PER_SEC:
            _err(f"warning: {r.edges_per_sec:.3g} edges/s is below the soft floor of "
                 f"{SOFT_FLOOR_EDGES_PER_SEC:.0e} ({r.backend} backend)")
    if len(results) > 1:
        base = results[-1].edges_per_sec
        print()
        print(f"speedup={results[0].edges_per_sec / base:.2f}")
    return EXIT_OK


COMMANDS = {
    "generate": cmd_generate,
    "count": cmd_count,
    "verify": cmd_verify,
    "enumerate": cmd_enumerate,
    "bench": cmd_bench,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (EmptyFamily, TooLarge, PreconditionViolated, AttemptLimitExceeded) as exc:
        _err(f"error: {exc}")
        return EXIT_PARAMS
    except OSError as exc:
        _err(f"I/O error: {exc}")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
