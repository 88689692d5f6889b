"""Alternate orders on digit sequences, recovering beta from a digit sequence, and expansion checks."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .numeric import (DEFAULT_PRECISION_CAP, AlgebraicReal, NoSignChange, StreamedReal,
                      count_real_roots, make_algebraic, poly_add, poly_eval, poly_mul,
                      poly_sub, to_fraction)
from .orbit import BetaContext
from .sequences import DigitSequence

DEFAULT_HORIZON = 10_000
DEFAULT_TARGET_WIDTH = Fraction(1, 1 << 160)


def target_width_for(precision_cap: int) -> Fraction:
    """Default bracket width, loosened for small precision caps so refinement can finish."""
    return Fraction(1, 1 << min(160, precision_cap // 2))


class PreconditionFailed(ValueError):
    pass


def _digits(seq, start: int, n: int) -> np.ndarray:
    """n digits of ``seq`` starting at 0-based offset ``start``."""
    if isinstance(seq, DigitSequence):
        return np.asarray(seq.prefix(start + n)[start:], dtype=np.int64)
    arr = np.asarray(seq, dtype=np.int64)[start:start + n]
    if len(arr) < n:
        raise ValueError("finite sequence shorter than the horizon")
    return arr


def first_difference(x, y, horizon: int, x_shift: int = 0, y_shift: int = 0) -> tuple[int, int] | None:
    """(p, x_{p+1} - y_{p+1}) at the first 0-based disagreement p < horizon, or None."""
    xs, ys = _digits(x, x_shift, horizon), _digits(y, y_shift, horizon)
    neq = np.flatnonzero(xs != ys)
    if not len(neq):
        return None
    p = int(neq[0])
    return p, int(xs[p] - ys[p])


def alt_compare(x, y, horizon: int = DEFAULT_HORIZON, x_shift: int = 0, y_shift: int = 0) -> str:
    """'less', 'greater' or 'equal_up_to_horizon' in the alternate order.

    x < y when (-1)^p (x_{p+1} - y_{p+1}) < 0 at the first disagreement p.
    """
    diff = first_difference(x, y, horizon, x_shift, y_shift)
    if diff is None:
        return "equal_up_to_horizon"
    p, d = diff
    return "less" if (-1) ** p * d < 0 else "greater"


def alt_compare_strict(x, y, horizon: int = DEFAULT_HORIZON, x_shift: int = 0, y_shift: int = 0) -> bool:
    """The relation x <' y: (-1)^p (x_{p+1} - y_{p+1}) < -1 at the first disagreement."""
    diff = first_difference(x, y, horizon, x_shift, y_shift)
    if diff is None:
        return False
    p, d = diff
    return (-1) ** p * d < -1


def _signed_first_differences(arr: np.ndarray, shifts: np.ndarray, length: int) -> np.ndarray:
    """For each shift n, (-1)^p (a_{n+p+1} - a_{p+1}) at the first disagreement; 0 if none."""
    base = arr[:length]
    out = np.zeros(len(shifts), dtype=np.int64)
    for idx, n in enumerate(shifts):
        seg = arr[n:n + length]
        neq = np.flatnonzero(seg != base)
        if len(neq):
            p = neq[0]
            out[idx] = (seg[p] - base[p]) * (1 if p % 2 == 0 else -1)
    return out


@dataclass
class AdmissibilityReport:
    horizon: int
    length: int
    a1: int
    shift_condition: str  # pass | fail
    shift_failure: int | None
    zero_condition: str  # pass | fail | inconclusive
    zero_failure: int | None
    zero_shifts_checked: int
    equal_shifts: list[int] = field(default_factory=list)

    @property
    def shift_pass(self) -> bool:
        return self.shift_condition == "pass"

    @property
    def zero_pass(self) -> bool:
        return self.zero_condition == "pass"

    def summary(self) -> str:
        s = f"shift condition (<=alt, a1 >= 2): {self.shift_condition}"
        if self.shift_failure is not None:
            s += f" at n = {self.shift_failure}"
        s += f"; strict condition at zeros: {self.zero_condition}"
        if self.zero_failure is not None:
            s += f" at n = {self.zero_failure}"
        return s + f" (verified to {self.horizon} shifts x {self.length} letters)"


def validate_admissibility(a: DigitSequence, horizon: int = DEFAULT_HORIZON, length: int | None = None) -> AdmissibilityReport:
    """Check  a_{n+1}... <=alt a  (1 <= n <= horizon, a_1 >= 2)  and
    a_{n+1}... <'alt a  for n >= 2 with a_n = 0.  Both verdicts are reported;
    neither is used to reject anything.
    """
    length = horizon if length is None else length
    arr = np.asarray(a.prefix(horizon + length + 1), dtype=np.int64)
    shifts = np.arange(1, horizon + 1)
    signed = _signed_first_differences(arr, shifts, length)
    a1 = int(arr[0])
    bad = np.flatnonzero(signed > 0)
    if a1 < 2:
        shift_condition, fail_s = "fail", None
    elif len(bad):
        shift_condition, fail_s = "fail", int(shifts[bad[0]])
    else:
        shift_condition, fail_s = "pass", None
    equal = [int(n) for n in shifts[signed == 0]]
    # shifts n >= 2 with a_n = 0 (a_n is arr[n-1])
    zero_at = np.array([n for n in shifts if n >= 2 and arr[n - 1] == 0], dtype=np.int64)
    zero_condition, fail_z = "pass", None
    if len(zero_at):
        s10 = signed[zero_at - 1]
        broken = np.flatnonzero((s10 >= -1) & (s10 != 0))
        undecided = np.flatnonzero(s10 == 0)
        if len(broken):
            zero_condition, fail_z = "fail", int(zero_at[broken[0]])
        elif len(undecided):
            zero_condition, fail_z = "inconclusive", int(zero_at[undecided[0]])
    return AdmissibilityReport(horizon, length, a1, shift_condition, fail_s, zero_condition, fail_z, int(len(zero_at)), equal)


# ---------------------------------------------------------------------------
# solving for beta


def series_polynomial(prefix: Sequence[int], period: Sequence[int]) -> tuple[int, ...]:
    """Integer polynomial in beta vanishing at the base for an eventually periodic sequence.

    With x = -1/beta the equation  sum a_k x^k = -beta/(beta+1) = 1/(x-1)  becomes
    F(x) = (P(x)(1 - x^q) + x^p Q(x))(1 - x) + (1 - x^q) = 0, which is then
    multiplied by beta^deg F.
    """
    p, q = len(prefix), len(period)
    P = (0,) + tuple(prefix)
    Q = (0,) + tuple(period)
    one_minus_xq = poly_sub((1,), (0,) * q + (1,))
    xp = (0,) * p + (1,)
    F = poly_add(poly_mul(poly_add(poly_mul(P, one_minus_xq), poly_mul(xp, Q)), (1, -1)), one_minus_xq)
    D = len(F) - 1
    G = [0] * (D + 1)
    for k, f in enumerate(F):
        G[D - k] = f * (-1) ** k
    while G and G[0] == 0:
        G.pop(0)
    return tuple(int(c) for c in G)


def _solve_periodic(a: DigitSequence) -> AlgebraicReal:
    a1 = a.digit(1)
    G = series_polynomial(a.prefix_part, a.period_part)
    for end in (a1, a1 + 1):
        if poly_eval(G, Fraction(end)) == 0:
            return make_algebraic((-end, 1), (end, end))
    n = count_real_roots(G, a1, a1 + 1)
    if n != 1:
        raise NoSignChange(f"{n} roots of the series polynomial in [{a1}, {a1 + 1}]")
    return make_algebraic(G, (Fraction(a1), Fraction(a1 + 1)))


def solve_beta(a: DigitSequence, target_width=DEFAULT_TARGET_WIDTH, *,
               precision_cap: int = DEFAULT_PRECISION_CAP, check_horizon: int = 2000,
               check: bool = True):
    """The unique beta in [a_1, a_1+1] with sum a_k (-beta)^-k = -beta/(beta+1).

    Eventually periodic sequences give an exact AlgebraicReal; anything else a
    StreamedReal refined to ``target_width``.
    """
    a1 = a.digit(1)
    if a1 < 2:
        raise PreconditionFailed("a_1 >= 2 is required")
    if check:
        report = validate_admissibility(a, horizon=check_horizon)
        if not report.shift_pass:
            raise PreconditionFailed(f"shift condition fails at n = {report.shift_failure}")
    if a.is_eventually_periodic:
        return _solve_periodic(a)
    base = StreamedReal(a, precision_cap=precision_cap)
    base.refine(to_fraction(target_width))
    return base


def validate_expansion(a: DigitSequence, beta, horizon: int = 64) -> bool:
    """Whether the first ``horizon`` orbit digits of beta agree with ``a``."""
    return first_mismatch(a, beta, horizon) is None


def first_mismatch(a: DigitSequence, beta, horizon: int = 64) -> int | None:
    ctx = beta if isinstance(beta, BetaContext) else BetaContext(beta)
    actual = ctx.digits(horizon)
    for n, (x, y) in enumerate(zip(actual, a.prefix(horizon)), start=1):
        if x != y:
            return n
    return None


@dataclass
class Residual:
    value: Fraction  # |g_N(beta*)| at the bracket midpoint beta*
    n_terms: int
    tail_bound: Fraction
    width_bound: Fraction  # bracket width times a bound on |g'|

    @property
    def bound(self) -> Fraction:
        """Bound on |sum_k a_k (-beta*)^-k + beta*/(beta*+1)| over the full series."""
        return self.value + self.tail_bound


def residual(a: DigitSequence, beta, n_terms: int | None = None) -> Residual:
    if isinstance(beta, StreamedReal):
        lo, hi = beta.current_bracket
    elif isinstance(beta, AlgebraicReal):
        lo, hi = beta.refine(DEFAULT_TARGET_WIDTH)
    else:
        lo = hi = to_fraction(beta)
    mid = (lo + hi) / 2
    A = a.alphabet_max
    if n_terms is None:
        n_terms = math.ceil(200 / math.log2(float(lo))) + 2
    y = Fraction(-1) / mid
    acc = Fraction(0)
    for d in reversed(a.prefix(n_terms)):
        acc = (acc + d) * y
    g = acc + mid / (mid + 1)
    tail = A * (1 / lo) ** n_terms / (lo - 1)
    # |g'| <= sum k A lo^-(k+1) + 1 = A / (lo - 1)^2 + 1
    gprime = A / (lo - 1) ** 2 + 1
    return Residual(abs(g), n_terms, tail, (hi - lo) * gprime)


# contract name kept for callers that use it
validate_gora = validate_admissibility
