"""Closed-form bounds and constants, evaluated exactly or in the log domain.

Quantities such as ``((2k+2r-3)e^2)^((2k+2r-3)e^2)`` overflow doubles, so every
bound returns a :class:`LogValue`. Bounds whose value is rational also carry the
exact :class:`~fractions.Fraction`, which makes comparisons against exact counts
free of rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from math import comb, e, lgamma, log
from numbers import Rational

import numpy as np

# Relative slack for comparisons that must fall back to floating logs.
LOG_RTOL = 1e-12


def _ln_exact(x: Rational | int) -> float:
    if x <= 0:
        return -math.inf
    x = Fraction(x)
    return log(x.numerator) - log(x.denominator)


@total_ordering
@dataclass(frozen=True)
class LogValue:
    """A nonnegative real held as its natural log; ``ln == -inf`` is zero."""

    ln: float
    exact: Fraction | None = field(default=None, compare=False)

    @classmethod
    def of(cls, x) -> "LogValue":
        if isinstance(x, LogValue):
            return x
        if isinstance(x, (int, Fraction)):
            if x < 0:
                raise ValueError("LogValue holds nonnegative values only")
            return cls(_ln_exact(x), Fraction(x))
        x = float(x)
        if x < 0:
            raise ValueError("LogValue holds nonnegative values only")
        return cls(log(x) if x > 0 else -math.inf)

    @classmethod
    def zero(cls) -> "LogValue":
        return cls(-math.inf, Fraction(0))

    @property
    def is_zero(self) -> bool:
        return self.ln == -math.inf

    def __mul__(self, other) -> "LogValue":
        other = LogValue.of(other)
        ex = None
        if self.exact is not None and other.exact is not None:
            ex = self.exact * other.exact
        return LogValue(self.ln + other.ln, ex)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "LogValue":
        other = LogValue.of(other)
        if other.is_zero:
            raise ZeroDivisionError("LogValue division by zero")
        ex = None
        if self.exact is not None and other.exact is not None:
            ex = self.exact / other.exact
        return LogValue(self.ln - other.ln, ex)

    def __pow__(self, power) -> "LogValue":
        ex = None
        if self.exact is not None and isinstance(power, int) and (power >= 0 or self.exact):
            ex = self.exact**power
        if self.is_zero:
            return LogValue.zero() if power > 0 else LogValue(0.0, Fraction(1))
        return LogValue(self.ln * power, ex)

    def __add__(self, other) -> "LogValue":
        other = LogValue.of(other)
        ex = None
        if self.exact is not None and other.exact is not None:
            ex = self.exact + other.exact
        return LogValue(float(np.logaddexp(self.ln, other.ln)), ex)

    __radd__ = __add__

    def __float__(self) -> float:
        if self.exact is not None:
            return float(self.exact)
        try:
            return math.exp(self.ln)
        except OverflowError:
            return math.inf

    def __eq__(self, other) -> bool:
        other = LogValue.of(other)
        if self.exact is not None and other.exact is not None:
            return self.exact == other.exact
        return self.ln == other.ln

    def __lt__(self, other) -> bool:
        other = LogValue.of(other)
        if self.exact is not None and other.exact is not None:
            return self.exact < other.exact
        return self.ln < other.ln

    def __hash__(self) -> int:
        return hash(self.ln)

    def dominates(self, count) -> bool:
        """``self >= count``, exactly when possible, else with a log-relative slack."""
        other = LogValue.of(count)
        if self.exact is not None and other.exact is not None:
            return self.exact >= other.exact
        if other.is_zero:
            return True
        return self.ln >= other.ln - LOG_RTOL * max(1.0, abs(other.ln))

    def to_json(self) -> dict:
        return {"ln": self.ln if math.isfinite(self.ln) else None}

    def __repr__(self) -> str:
        if self.exact is not None:
            return f"LogValue({self.exact})"
        return f"LogValue(ln={self.ln!r})"


def _binom_kr(r: int, k: int) -> int:
    return comb(k + r - 2, r - 1)


def _check(r: int, k: int, r_min: int = 2) -> None:
    if r < r_min:
        raise ValueError(f"r must be >= {r_min}, got {r}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")


def log_factorial(n: int) -> float:
    return lgamma(n + 1)


def paper_constant_C(r: int, k: int) -> LogValue:
    """``4 e r^2 B ((2k+2r-3) e)^(1/B)`` with ``B = binom(k+r-2, r-1)``.

    Only defined for r >= 3: the second-moment sum is not controlled for graphs.
    """
    _check(r, k, r_min=3)
    B = _binom_kr(r, k)
    ln = log(4) + 1 + 2 * log(r) + log(B) + (log(2 * k + 2 * r - 3) + 1) / B
    return LogValue(ln)


def constant_c(r: int, k: int) -> float:
    _check(r, k)
    return 2 * e * r * r * _binom_kr(r, k)


def constant_Cprime(r: int, k: int) -> LogValue:
    _check(r, k)
    a = (2 * k + 2 * r - 3) * e * e
    return LogValue(a * log(a))


def threshold_exponent(r: int, k: int) -> Fraction:
    _check(r, k)
    return Fraction(-1, _binom_kr(r, k))


def fact4_min_vertices(b: int, s: int, r: int, k: int) -> Fraction:
    """Least vertex count of a b-edge, s-component subgraph of an (r,k)-cycle."""
    _check(r, k)
    if not 1 <= s <= b:
        raise ValueError(f"need 1 <= s <= b, got b={b}, s={s}")
    return Fraction(b, _binom_kr(r, k)) + (r - 1) * s


def graph_connected_bound(max_deg: int, b: int) -> LogValue:
    """``(e*Delta)^b``: connected b-edge subgraphs through a vertex of a graph."""
    if b < 1 or max_deg < 0:
        raise ValueError("need b >= 1 and max_deg >= 0")
    if max_deg == 0:
        return LogValue.zero()
    return LogValue(b * (1 + log(max_deg)))


def lemma_l1_bound(b: int, r: int, k: int) -> LogValue:
    """``(e r^2 B)^b``: connected b-edge subgraphs of an (r,k)-cycle through a vertex."""
    _check(r, k)
    if b < 1:
        raise ValueError(f"b must be >= 1, got {b}")
    return LogValue(b * (1 + 2 * log(r) + log(_binom_kr(r, k))))


def prop_p1_bound(n: int, b: int, s: int, r: int, k: int) -> LogValue:
    """``binom(n,s) binom(b-1,s-1) (e r^2 B)^b``: b-edge, s-component subgraphs of H_sigma."""
    _check(r, k)
    if not 1 <= s <= b:
        raise ValueError(f"need 1 <= s <= b, got b={b}, s={s}")
    if s > n:
        return LogValue.zero()
    return LogValue.of(comb(n, s) * comb(b - 1, s - 1)) * lemma_l1_bound(b, r, k)


def prop_p2_bound(n: int, v_p: int, s: int, r: int, k: int) -> LogValue:
    """``(n - v_P + s - 1)! (2k+2r-4)^(v_P - s) / 2``: orderings tau with P inside H_tau."""
    _check(r, k)
    if s < 1 or v_p < s or n < v_p:
        raise ValueError(f"need 1 <= s <= v_P <= n, got n={n}, v_P={v_p}, s={s}")
    val = Fraction(math.factorial(n - v_p + s - 1) * (2 * k + 2 * r - 4) ** (v_p - s), 2)
    return LogValue.of(val)


@dataclass(frozen=True)
class SumBound:
    """Explicit majorant of ``sum_b N_sigma(b) p^-b / |Q_n|``.

    ``base_ratio`` is the geometric ratio of the summands apart from ``b C'``;
    it is 1/2 when C equals the explicit constant.
    """

    value: LogValue
    base_ratio: float
    condition_holds: bool
    terms: tuple[LogValue, ...] = ()


def lemma_k_base_ratio(r: int, k: int, c_factor: float) -> float:
    """``2c ((2k+2r-3)e)^(1/B) / C``; equals 1 when C is the explicit constant."""
    _check(r, k)
    if c_factor <= 0:
        raise ValueError("C must be positive")
    B = _binom_kr(r, k)
    return math.exp(
        log(2 * constant_c(r, k)) + (log(2 * k + 2 * r - 3) + 1) / B - log(c_factor)
    )


def lemma_k_term_bound(b: int, s: int, r: int, k: int, c_factor: float) -> LogValue:
    """Per-(b,s) bound on ``2 N_sigma(b,s) p^-b / (n-1)!`` with ``p = C n^(-1/B)``.

    This is ``rho^b 2^-b ((2k+2r-3) e^2 / s)^s`` with ``rho`` the base ratio; it does
    not depend on n.
    """
    if not 1 <= s <= b:
        raise ValueError(f"need 1 <= s <= b, got b={b}, s={s}")
    rho = lemma_k_base_ratio(r, k, c_factor)
    a = (2 * k + 2 * r - 3) * e * e
    return LogValue(b * (log(rho) - log(2)) + s * (log(a) - log(s)))


def lemma_k_sum_bound(n: int, r: int, k: int, c_factor: float) -> SumBound:
    """``sum_{b=1}^{m} b C' rho^b / 2^b`` in the log domain, with m = B n.

    ``condition_holds`` reports whether C reaches the explicit constant (rho <= 1),
    in which case every summand is at most ``b C' / 2^b``. The bound on each
    ``2 N_sigma(b,s) p^-b / (n-1)!`` comes from :func:`lemma_k_term_bound`, whose
    ``(a/s)^s`` factor is at most C'.
    """
    _check(r, k)
    if n < 0:
        raise ValueError("n must be >= 0")
    m = _binom_kr(r, k) * n
    rho = lemma_k_base_ratio(r, k, c_factor)
    cprime = constant_Cprime(r, k)
    holds = rho <= 1.0 + LOG_RTOL
    if m == 0:
        return SumBound(LogValue.zero(), rho / 2, holds)
    b = np.arange(1, m + 1, dtype=float)
    ln_terms = np.log(b) + cprime.ln + b * (log(rho) - log(2))
    total = float(np.logaddexp.reduce(ln_terms))
    terms = tuple(LogValue(float(t)) for t in ln_terms)
    return SumBound(LogValue(total), rho / 2, holds, terms)


@dataclass
class EstimateReport:
    n_max: int
    checks: int = 0
    violations: list[tuple[str, int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_standard_estimates(n_max: int) -> EstimateReport:
    """Check ``n! >= (n/e)^n``, ``binom(n,x) <= (en/x)^x`` and ``(n-x)!/n! <= (e/n)^x``.

    All ``1 <= x <= n <= n_max`` are covered, in log space via lgamma.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    report = EstimateReport(n_max)
    lf = np.array([log_factorial(i) for i in range(n_max + 1)])
    slack = 1e-9
    for n in range(1, n_max + 1):
        report.checks += 1
        if lf[n] < n * (log(n) - 1) - slack:
            report.violations.append(("factorial", n, n))
        x = np.arange(1, n + 1)
        lhs = lf[n - x] - lf[n]
        rhs = x * (1 - log(n))
        for xi in x[lhs > rhs + slack]:
            report.violations.append(("falling_factorial", n, int(xi)))
        lbin = lf[n] - lf[x] - lf[n - x]
        rbin = x * (1 + log(n) - np.log(x))
        for xi in x[lbin > rbin + slack]:
            report.violations.append(("binomial", n, int(xi)))
        report.checks += 2 * n
    return report


def pz_lower_bound(ex, ex2):
    """``E[X]^2 / E[X^2]``, a lower bound on ``P(X > 0)`` for nonnegative X."""
    if ex < 0:
        raise ValueError("E[X] must be nonnegative")
    if ex2 <= 0:
        raise ValueError("E[X^2] must be positive")
    if ex * ex > ex2:
        raise ValueError("E[X]^2 > E[X^2] violates Cauchy-Schwarz")
    return ex * ex / ex2
