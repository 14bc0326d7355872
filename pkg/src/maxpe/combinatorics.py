"""Exact counting primitives and log-domain special functions.

Integer counts use Python's arbitrary-precision arithmetic; nothing here
rounds. The log-domain helpers exist because the Beta-chain products used
by the alternative-distribution code underflow double precision long
before the final probabilities do.

Everything is a pure function; the lru_cache-backed counter is safe for
concurrent callers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

__all__ = [
    "binomial",
    "log_beta",
    "bounded_composition_count",
    "bounded_composition_count_dp",
    "exact_max_composition_count",
    "LogReal",
    "signed_log_sum",
]


def binomial(n: int, k: int) -> int:
    """C(n, k) with the convention that out-of-range k gives 0."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


# Stirling correction: lgamma(x) = (x - 1/2) ln x - x + ln(2 pi)/2 + _del(x)
_STIRLING = (
    1 / 12,
    -1 / 360,
    1 / 1260,
    -1 / 1680,
    1 / 1188,
    -691 / 360360,
    1 / 156,
)


def _del(x: float) -> float:
    """Stirling-series correction term; accurate to ~1e-16 for x >= 10."""
    inv2 = 1.0 / (x * x)
    acc = 0.0
    for c in reversed(_STIRLING):
        acc = acc * inv2 + c
    return acc / x


def log_beta(a: float, b: float) -> float:
    """ln B(a, b) = ln G(a) + ln G(b) - ln G(a+b) for positive a, b.

    The naive three-lgamma form loses absolute accuracy when the result is
    small but the lgamma terms are large (unbalanced arguments), so large
    arguments are handled through Stirling-corrected differences instead.
    """
    if a <= 0.0 or b <= 0.0:
        raise ValueError(f"log_beta requires positive arguments, got ({a}, {b})")
    p, q = (a, b) if a <= b else (b, a)
    if q < 10.0:
        return math.lgamma(p) + math.lgamma(q) - math.lgamma(p + q)
    if p < 10.0:
        # ln G(q) - ln G(p+q), cancellation-free for q >= 10
        diff = (
            -(q - 0.5) * math.log1p(p / q)
            - p * math.log(p + q)
            + p
            + _del(q)
            - _del(p + q)
        )
        return math.lgamma(p) + diff
    return (
        -(p - 0.5) * math.log1p(q / p)
        - q * math.log1p(p / q)
        - 0.5 * math.log(q)
        + 0.5 * math.log(2.0 * math.pi)
        + _del(p)
        + _del(q)
        - _del(p + q)
    )


@lru_cache(maxsize=None)
def bounded_composition_count(total: int, boxes: int, cap: int) -> int:
    """Ordered tuples of `boxes` non-negative integers summing to `total`
    with every part at most `cap`.

    Inclusion-exclusion over the parts forced past the cap. A negative cap
    counts only the empty sum: 1 when total == 0, else 0 (the convention
    callers rely on when differencing at cap = -1).
    """
    if total < 0:
        return 0
    if cap < 0 or boxes == 0:
        return 1 if total == 0 else 0
    count = 0
    for j in range(boxes + 1):
        rem = total - j * (cap + 1)
        if rem < 0:
            break
        term = binomial(boxes, j) * binomial(rem + boxes - 1, boxes - 1)
        count += term if j % 2 == 0 else -term
    return count


def bounded_composition_count_dp(total: int, boxes: int, cap: int) -> int:
    """Dynamic-programming evaluation of bounded_composition_count.

    Independent of the inclusion-exclusion route; kept as a cross-check
    oracle. Uses a sliding-window prefix sum, O(boxes * total) time.
    """
    if total < 0:
        return 0
    if cap < 0 or boxes == 0:
        return 1 if total == 0 else 0
    ways = [1] + [0] * total
    for _ in range(boxes):
        prefix = [0] * (total + 2)
        for t in range(total + 1):
            prefix[t + 1] = prefix[t] + ways[t]
        nxt = [0] * (total + 1)
        for t in range(total + 1):
            lo = max(0, t - cap)
            nxt[t] = prefix[t + 1] - prefix[lo]
        ways = nxt
    return ways[total]


def exact_max_composition_count(total: int, boxes: int, peak: int) -> int:
    """Ordered tuples of `boxes` non-negative integers summing to `total`
    whose largest part equals `peak` exactly.

    Difference of two capped counts; peak 0 admits only the all-zero tuple.
    """
    if peak < 0:
        return 0
    if peak == 0:
        return 1 if total == 0 else 0
    return bounded_composition_count(total, boxes, peak) - bounded_composition_count(
        total, boxes, peak - 1
    )


@dataclass(frozen=True)
class LogReal:
    """A real number stored as sign * exp(log_magnitude).

    sign is 0 exactly when the value is zero, in which case log_magnitude
    is -inf.
    """

    sign: int
    log_magnitude: float

    @classmethod
    def zero(cls) -> "LogReal":
        return cls(0, -math.inf)

    @classmethod
    def from_float(cls, x: float) -> "LogReal":
        if x == 0.0:
            return cls.zero()
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    def to_float(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_magnitude)

    def scaled_float(self, log_shift: float) -> float:
        """sign * exp(log_magnitude + log_shift) without forming huge exps."""
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_magnitude + log_shift)


def signed_log_sum(terms: Iterable[tuple[int, float]]) -> tuple[LogReal, float]:
    """Sum of sign * exp(log_magnitude) terms with compensated accumulation.

    Terms are rescaled by the largest magnitude and added with math.fsum,
    so the only rounding is the final one. Returns the total and a
    condition estimate: largest term magnitude over total magnitude
    (1 means no cancellation; inf means the total vanished).
    """
    live = [(s, lm) for s, lm in terms if s != 0 and lm != -math.inf]
    if not live:
        return LogReal.zero(), 1.0
    shift = max(lm for _, lm in live)
    total = math.fsum(s * math.exp(lm - shift) for s, lm in live)
    if total == 0.0:
        return LogReal.zero(), math.inf
    return (
        LogReal(1 if total > 0 else -1, shift + math.log(abs(total))),
        1.0 / abs(total),
    )
