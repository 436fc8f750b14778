"""Exact counts of words by weight.

A(n, k, j) is the number of n-letter words over {0..k-1} of weight j, i.e. the
coefficient of z^j in (1 + z + ... + z^(k-1))^n. Everything here is exact
integer or rational arithmetic.
"""
import logging
from fractions import Fraction
from functools import lru_cache
from itertools import accumulate

from app.models.schemas import CountTable, WeightRangeParams
from app.services.exceptions import ParameterError

logger = logging.getLogger(__name__)


@lru_cache(maxsize=512)
def count_table(n: int, k: int) -> CountTable:
    """
    Build the row A(n, k, 0..n(k-1)) by dynamic programming over prefix length

    Each extension by one letter is a sliding-window sum of width k, taken
    from prefix sums of the previous row.
    """
    if n < 0 or k < 2:
        raise ParameterError(f"count table needs n >= 0 and k >= 2 (got n={n}, k={k})")
    row = [1]
    for length in range(1, n + 1):
        prefix = [0] + list(accumulate(row))
        top = length * (k - 1)
        row = [prefix[min(j, len(row) - 1) + 1] - prefix[max(0, j - k + 1)] for j in range(top + 1)]
    logger.debug("count table n=%d k=%d has %d entries", n, k, len(row))
    return CountTable(n=n, k=k, counts=tuple(row))


def count_words(n: int, k: int, j: int) -> int:
    if n < 1 or k < 2:
        raise ParameterError(f"requires n >= 1 and k >= 2 (got n={n}, k={k})")
    if not 0 <= j <= n * (k - 1):
        raise ParameterError(f"requires 0 <= j <= n(k-1) = {n * (k - 1)} (got j={j})")
    return count_table(n, k).counts[j]


def count_range(n: int, k: int, low: int, high: int) -> int:
    """Number of n-letter words with weight in [low, high], bounds clamped to the table"""
    counts = count_table(n, k).counts
    low = max(low, 0)
    high = min(high, len(counts) - 1)
    return sum(counts[low:high + 1]) if low <= high else 0


def cycle_length(p: WeightRangeParams) -> int:
    """|W|, the number of words with weight in [s, t]"""
    return count_range(p.n, p.k, p.s, p.t)


def vertex_count(p: WeightRangeParams) -> int:
    """Number of (n-1)-letter vertices of legal weight"""
    return count_range(p.vertex_length, p.k, p.vertex_floor, p.t)


def redundancy_ratio(n: int, k: int, t: int) -> Fraction:
    """Length of the cycle for weights [t-(k-1), t] divided by A(n, k, t)"""
    if n < 1 or k < 2:
        raise ParameterError(f"requires n >= 1 and k >= 2 (got n={n}, k={k})")
    if t < k - 1:
        raise ParameterError(f"requires t >= k-1 (got t={t}, k={k})")
    if t > n * (k - 1):
        raise ParameterError(f"requires t <= n(k-1) (got t={t}, n={n}, k={k})")
    numerator = count_range(n, k, t - (k - 1), t)
    return Fraction(numerator, count_words(n, k, t))
