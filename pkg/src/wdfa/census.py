"""Exact family sizes and the information-theoretic size bounds.

All counts are Python integers, so the alternating sums are exact.
"""
from __future__ import annotations

import math

from .core import Params, validate_params
from .errors import EmptyFamily, PreconditionViolated

__all__ = [
    "binom",
    "count_O",
    "count_I",
    "count_wdfa",
    "count_wdfa_noneffective",
    "count_all_m",
    "log2_big",
    "bounds",
]


def binom(a: int, b: int) -> int:
    """C(a, b), taken as 0 whenever b < 0, b > a or a < 0."""
    if a < 0 or b < 0 or b > a:
        return 0
    return math.comb(a, b)


def count_O(n: int, m: int, sigma: int) -> int:
    """Out-matrices with ``m`` set cells and no empty column (inclusion-exclusion
    over the set of empty columns)."""
    validate_params(Params(n, m, sigma))
    return _surjective_matrices(n, m, sigma)


def _surjective_matrices(n, m, sigma):
    return sum((-1) ** j * binom(sigma, j) * binom(n * (sigma - j), m) for j in range(sigma + 1))


def count_I(n: int, m: int, sigma: int) -> int:
    """In-vectors compatible with any one valid out-matrix."""
    validate_params(Params(n, m, sigma))
    return binom(m - sigma, n - sigma - 1)


def count_wdfa(n: int, m: int, sigma: int) -> int:
    validate_params(Params(n, m, sigma))
    return binom(m - sigma, n - sigma - 1) * _surjective_matrices(n, m, sigma)


def _count_or_zero(n, m, sigma):
    try:
        return count_wdfa(n, m, sigma)
    except EmptyFamily:
        return 0


def count_wdfa_noneffective(n: int, m: int, sigma: int) -> int:
    """Count with the alphabet not required to be effective: sum over the
    nonempty sets of labels actually used."""
    if n < 2 or m < n - 1 or sigma < 1:
        raise EmptyFamily(f"no automata for n={n}, m={m}, sigma={sigma}")
    total = 0
    for k in range(1, sigma + 1):
        total += (binom(sigma, k) * binom(m - k, n - k - 1)
                  * sum((-1) ** j * binom(k, j) * binom(n * (k - j), m) for j in range(k + 1)))
    if total == 0:
        raise EmptyFamily(f"no automata for n={n}, m={m}, sigma={sigma}")
    return total


def count_all_m(n: int, sigma: int) -> int:
    """Automata over an effective alphabet of size ``sigma``, any edge count."""
    if n < 2 or not 1 <= sigma <= n - 1:
        raise EmptyFamily(f"need n >= 2 and 1 <= sigma <= n-1, got n={n}, sigma={sigma}")
    return sum(count_wdfa(n, m, sigma) for m in range(n - 1, n * sigma + 1))


def log2_big(x: int) -> float:
    """log2 of a positive integer of any size, keeping 60 significant bits."""
    if x <= 0:
        raise ValueError("log2 of a non-positive number")
    shift = max(0, x.bit_length() - 60)
    return math.log2(x >> shift) + shift


def bounds(n: int, sigma: int, eps: float = 0.5) -> tuple[float, float]:
    """Lower and upper bounds, in bits, on ``log2(count_all_m(n, sigma))``.

    lower = n*sigma + (n - sigma)*log2(sigma) - (n + log2(sigma)),
    needs sigma <= n - 1.
    upper = n*sigma + (n - sigma)*log2(e*sigma*n / (n - sigma - 1)),
    needs 0 < eps <= 1/2, sigma <= (1 - eps)*n and n >= 2/eps.
    """
    if n < 2 or not 1 <= sigma <= n - 1:
        raise PreconditionViolated(f"lower bound needs 1 <= sigma <= n-1 (n={n}, sigma={sigma})")
    if not 0 < eps <= 0.5:
        raise PreconditionViolated(f"eps must lie in (0, 1/2], got {eps}")
    if sigma > (1 - eps) * n:
        raise PreconditionViolated(f"upper bound needs sigma <= (1-eps)*n (sigma={sigma}, eps={eps})")
    if n < 2 / eps:
        raise PreconditionViolated(f"upper bound needs n >= 2/eps (n={n}, eps={eps})")
    ls = math.log2(sigma)
    lower = n * sigma + (n - sigma) * ls - (n + ls)
    upper = n * sigma + (n - sigma) * math.log2(math.e * sigma * n / (n - sigma - 1))
    return lower, upper
