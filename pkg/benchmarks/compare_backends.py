"""Time the compiled and pure-Python kernels on the same parameters.

    python benchmarks/compare_backends.py -n 20000 -m 160000 -s 128 --runs 3

Both kernels consume the seed identically, so the digests printed for the
two backends must match; a mismatch is reported and exits with status 1.
"""
import argparse
import sys

from wdfa import _backend
from wdfa.core import Params
from wdfa.stream import NullSink, sample_stream
from wdfa.bench import run_bench


def digest(kernel, p, seed):
    return sample_stream(p, kernel.Rng(seed), NullSink(), kernel=kernel).digest


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-n", type=int, default=20_000)
    ap.add_argument("-m", type=int, default=160_000)
    ap.add_argument("-s", "--sigma", type=int, default=128)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--runs", type=int, default=3)
    args = ap.parse_args(argv)

    names = _backend.available()
    p = Params(args.n, args.m, args.sigma)
    results = {}
    for name in names:
        r = run_bench(args.n, args.m, args.sigma, runs=args.runs, seed=args.seed, backend=name)
        results[name] = r
        print(f"{name:>7}: {r.edges_per_sec:12.4g} edges/s  {r.seconds:8.3f} s  "
              f"mean attempts {r.mean_attempts:.2f}")

    if "cython" in results and "python" in results:
        ratio = results["cython"].edges_per_sec / results["python"].edges_per_sec
        print(f"speedup: {ratio:.1f}x")
        same = digest(_backend.get("cython"), p, args.seed) == digest(_backend.get("python"), p, args.seed)
        print(f"digests match: {same}")
        return 0 if same else 1
    print("only one backend available; nothing to compare", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
