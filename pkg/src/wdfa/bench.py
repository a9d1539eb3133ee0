"""Throughput and memory measurements for the streaming sampler."""
from __future__ import annotations

import csv
import io
import math
import resource
import tempfile
import time
from dataclasses import asdict, dataclass

from . import _backend
from .core import Params, validate_params
from .shuffler import fresh_seed
from .stream import NullSink, TextSink, sample_stream

SOFT_FLOOR_EDGES_PER_SEC = 1e6


def peak_rss_kib() -> int:
    """Peak resident set size of this process in KiB.

    Reads ``VmHWM`` where /proc exists. ``ru_maxrss`` is only the fallback:
    Linux carries the pre-exec image's high-water mark into it, so a child
    forked from a large parent reports the parent's size.
    """
    try:
        with open("/proc/self/status") as f:
            for line in f:
                if line.startswith("VmHWM:"):
                    return int(line.split()[1])
    except OSError:
        pass
    return resource.getrusage(resource.RUSAGE_SELF).ru_maxrss


@dataclass
class BenchResult:
    backend: str
    n: int
    m: int
    sigma: int
    sink: str
    runs: int
    edges: int
    seconds: float
    edges_per_sec: float
    mean_attempts: float
    max_attempts: int
    peak_rss_kib: int
    seed: int

    def as_kv(self) -> str:
        out = []
        for k, v in asdict(self).items():
            if isinstance(v, float):
                v = f"{v:.6g}"
            out.append(f"{k}={v}")
        return "\n".join(out) + "\n"


def _make_sink(kind):
    if kind == "null":
        return NullSink(), None
    if kind == "memory":
        return TextSink(io.BytesIO()), None
    if kind == "file":
        f = tempfile.TemporaryFile()
        return TextSink(f), f
    raise ValueError(f"unknown sink {kind!r}")


def run_bench(n, m, sigma, runs=1, seed=None, sink="null", backend=None) -> BenchResult:
    """Time ``runs`` generations; the reported time is the total."""
    validate_params(Params(n, m, sigma))
    kernel = _backend.get(backend) if backend else _backend.kernel
    seed = fresh_seed() if seed is None else seed
    rng = kernel.Rng(seed)
    p = Params(n, m, sigma)
    attempts = []
    elapsed = 0.0
    for _ in range(runs):
        s, f = _make_sink(sink)
        t0 = time.perf_counter()
        stats = sample_stream(p, rng, s, kernel=kernel)
        elapsed += time.perf_counter() - t0
        attempts.append(stats.attempts)
        if f is not None:
            f.close()
    edges = m * runs
    return BenchResult(
        backend=kernel.BACKEND, n=n, m=m, sigma=sigma, sink=sink, runs=runs,
        edges=edges, seconds=elapsed, edges_per_sec=edges / elapsed if elapsed else math.inf,
        mean_attempts=sum(attempts) / runs, max_attempts=max(attempts),
        peak_rss_kib=peak_rss_kib(), seed=seed,
    )


def scaling_grid(n0=2 ** 15, n_steps=7, m_steps=8):
    """``n = n0 * 2**a`` and ``m = n * 2**b - 1`` for ``a < n_steps``, ``b < m_steps``."""
    for a in range(n_steps):
        n = n0 << a
        for b in range(m_steps):
            yield n, (n << b) - 1


def loglog_slope(xs, ys) -> float:
    """Least-squares slope of log(ys) against log(xs)."""
    lx = [math.log(x) for x in xs]
    ly = [math.log(y) for y in ys]
    mx = sum(lx) / len(lx)
    my = sum(ly) / len(ly)
    sxx = sum((x - mx) ** 2 for x in lx)
    sxy = sum((x - mx) * (y - my) for x, y in zip(lx, ly))
    return sxy / sxx


GRID_FIELDS = ["backend", "n", "m", "sigma", "seconds", "edges_per_sec", "attempts"]


def run_grid(points, sigma=128, seed=0, backend=None, csv_path=None, min_seconds=0.05,
             progress=None):
    """Time every ``(n, m)`` point to a null sink and return ``(rows, slope)``.

    Small points are repeated until ``min_seconds`` have elapsed and the
    per-run time is reported, which keeps timer noise out of the slope.
    """
    kernel = _backend.get(backend) if backend else _backend.kernel
    rng = kernel.Rng(seed)
    rows = []
    for n, m in points:
        p = Params(n, m, sigma)
        reps = 0
        total = 0.0
        attempts = 0
        while True:
            t0 = time.perf_counter()
            attempts += sample_stream(p, rng, NullSink(), kernel=kernel).attempts
            total += time.perf_counter() - t0
            reps += 1
            if total >= min_seconds:
                break
        sec = total / reps
        row = {"backend": kernel.BACKEND, "n": n, "m": m, "sigma": sigma, "seconds": sec,
               "edges_per_sec": m / sec, "attempts": attempts / reps}
        rows.append(row)
        if progress:
            progress(row)
    slope = loglog_slope([r["m"] for r in rows], [r["seconds"] for r in rows])
    if csv_path:
        with open(csv_path, "w", newline="") as f:
            w = csv.DictWriter(f, fieldnames=GRID_FIELDS)
            w.writeheader()
            for r in rows:
                w.writerow(r)
    return rows, slope

