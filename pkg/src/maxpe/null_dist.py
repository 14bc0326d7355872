"""Exact null distribution of the maximal precedence/exceedance sum.

All null probabilities are ratios of integer counts, so everything here is
computed in exact rational arithmetic: a distribution's pmf entries share
the denominator C(m+n, n) and are returned as Fractions. A brute-force
enumeration over sample interleavings doubles as the validation oracle for
the composition-count formula.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .combinatorics import binomial, exact_max_composition_count
from .errors import BudgetExceededError, ParameterError
from .statistics import FrequencyVector, statistic_bundle

__all__ = [
    "NullDistribution",
    "joint_frequency_pmf_null",
    "joint_PE_pmf",
    "null_distribution",
    "brute_force_null_distribution",
    "asymptotic_null_cdf",
    "BRUTE_FORCE_LIMIT",
]

BRUTE_FORCE_LIMIT = 10**7


@dataclass(frozen=True)
class NullDistribution:
    """Exact pmf/cdf of the statistic on its support {0..m}.

    When built with a truncated support (complete=False) the tables cover
    {0..t_max} only and the normalization invariants are not enforced.
    """

    m: int
    n: int
    r: int
    s: int
    pmf_values: tuple[Fraction, ...]
    complete: bool = True
    cdf_values: tuple[Fraction, ...] = field(init=False)

    def __post_init__(self) -> None:
        if any(p < 0 for p in self.pmf_values):
            raise ParameterError("pmf entries must be non-negative")
        running = Fraction(0)
        cdf = []
        for p in self.pmf_values:
            running += p
            cdf.append(running)
        object.__setattr__(self, "cdf_values", tuple(cdf))
        if self.complete:
            if len(self.pmf_values) != self.m + 1:
                raise ParameterError("complete support must cover 0..m")
            if running != 1:
                raise ParameterError(f"pmf sums to {running}, expected exactly 1")

    @property
    def support(self) -> range:
        return range(len(self.pmf_values))

    def pmf(self, t: int) -> Fraction:
        if 0 <= t < len(self.pmf_values):
            return self.pmf_values[t]
        if self.complete or t < 0:
            return Fraction(0)
        raise ParameterError(f"t = {t} beyond the truncated support")

    def cdf(self, t: int) -> Fraction:
        if t < 0:
            return Fraction(0)
        if t < len(self.cdf_values):
            return self.cdf_values[t]
        if self.complete:
            return Fraction(1)
        raise ParameterError(f"t = {t} beyond the truncated support")

    def tail(self, t: int) -> Fraction:
        """P[T >= t]."""
        if not self.complete:
            raise ParameterError("tail probabilities need the complete support")
        return Fraction(1) - self.cdf(t - 1)


def _validate_params(m: int, n: int, r: int, s: int) -> None:
    if m < 1:
        raise ParameterError("m must be at least 1")
    if r < 1 or s < 1:
        raise ParameterError("r and s must be positive")
    if r + s > n:
        raise ParameterError(f"r + s = {r + s} exceeds n = {n}")


def joint_frequency_pmf_null(fv: FrequencyVector) -> Fraction:
    """Probability of one whole frequency vector when both samples share F.

    Depends on the vector only through its total: the count of orderings
    that realize the vector divided by C(m+n, n).
    """
    total = fv.total
    if total > fv.m:
        return Fraction(0)
    free = fv.n - fv.r - fv.s
    return Fraction(
        binomial(fv.m - total + free, free), binomial(fv.m + fv.n, fv.n)
    )


def _joint_pe_numerator(m: int, n: int, r: int, s: int, i: int, j: int) -> int:
    """Numerator of P[max precedence = i, max exceedance = j] over C(m+n, n)."""
    free = n - r - s
    num = 0
    for total in range(0, min(m, r * i + s * j) + 1):
        lo = max(0, total - s * j)
        hi = min(total, r * i)
        conv = 0
        for n1 in range(lo, hi + 1):
            wp = exact_max_composition_count(n1, r, i)
            if wp:
                we = exact_max_composition_count(total - n1, s, j)
                if we:
                    conv += wp * we
        if conv:
            num += conv * binomial(m - total + free, free)
    return num


def joint_PE_pmf(m: int, n: int, r: int, s: int, i: int, j: int) -> Fraction:
    """Exact P[max precedence = i, max exceedance = j] under the null."""
    _validate_params(m, n, r, s)
    if not (0 <= i <= m and 0 <= j <= m):
        raise ParameterError(f"cell maxima must lie in 0..m, got ({i}, {j})")
    return Fraction(_joint_pe_numerator(m, n, r, s, i, j), binomial(m + n, n))


def null_distribution(
    m: int, n: int, r: int, s: int, t_max: Optional[int] = None
) -> NullDistribution:
    """Exact null pmf/cdf of the statistic.

    With t_max the tables are truncated to {0..t_max}; this keeps large
    (m, n) affordable when only low quantiles are needed.
    """
    _validate_params(m, n, r, s)
    top = m if t_max is None else min(t_max, m)
    if top < 0:
        raise ParameterError("t_max must be non-negative")
    den = binomial(m + n, n)
    pmf = []
    for t in range(top + 1):
        num = sum(_joint_pe_numerator(m, n, r, s, i, t - i) for i in range(t + 1))
        pmf.append(Fraction(num, den))
    return NullDistribution(
        m=m, n=n, r=r, s=s, pmf_values=tuple(pmf), complete=(top == m)
    )


def brute_force_null_distribution(m: int, n: int, r: int, s: int) -> NullDistribution:
    """Enumerate every interleaving of m X-ranks among m+n positions.

    Desk-scale oracle, independent of the composition-count formula.
    """
    _validate_params(m, n, r, s)
    total = binomial(m + n, n)
    if total > BRUTE_FORCE_LIMIT:
        raise BudgetExceededError(
            f"C({m + n}, {n}) = {total} interleavings exceed the brute-force limit"
        )
    positions = range(m + n)
    counts = [0] * (m + 1)
    for x_positions in combinations(positions, m):
        chosen = set(x_positions)
        x = [float(p) for p in x_positions]
        y = [float(p) for p in positions if p not in chosen]
        t_val = statistic_bundle(x, y, r, s).max_sum
        counts[t_val] += 1
    pmf = tuple(Fraction(c, total) for c in counts)
    return NullDistribution(m=m, n=n, r=r, s=s, pmf_values=pmf)


def asymptotic_null_cdf(r: int, s: int, t: int, n_max: int = 40) -> float:
    """Large-sample (equal group sizes) approximation to the null cdf.

    Replaces the exact ordering-count ratio with its limit (1/2)^(total+r+s).
    n_max caps the total-count summation; the default leaves tail mass below
    1e-12. Non-decreasing in t by construction.
    """
    if r < 1 or s < 1:
        raise ParameterError("r and s must be positive")
    if n_max < 0:
        raise ParameterError("n_max must be non-negative")
    if t < 0:
        return 0.0
    acc = 0.0
    for k in range(t + 1):
        for i in range(k + 1):
            j = k - i
            for total in range(0, min(n_max, r * i + s * j) + 1):
                lo = max(0, total - s * j)
                hi = min(total, r * i)
                conv = 0
                for n1 in range(lo, hi + 1):
                    wp = exact_max_composition_count(n1, r, i)
                    if wp:
                        we = exact_max_composition_count(total - n1, s, j)
                        if we:
                            conv += wp * we
                if conv:
                    acc += conv * 0.5 ** (total + r + s)
    return acc
