"""Delone-property probes over bounded windows.

Nothing here decides uniform discreteness or relative denseness globally:
verdicts are evidence over explicit budgets, and say so.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .antimorphism import fixed_point_view, format_word, psi_system
from .numeric import FieldElement, UndecidableAtPrecision
from .orbit import INF, BetaContext, is_yrrap
from .pointset import (GapSummary, PointSetWindow, TooFewPoints, _emax, _emin, gap_census,
                       y_window)
from .sequences import SIGMA1, SIGMA2, Morphism


def _dec(e: FieldElement | None, places: int = 12) -> str | None:
    return None if e is None else e.decimal(places)


# ---------------------------------------------------------------------------
# the odd-orbit condition


@dataclass
class UDProbe:
    verdict: str  # holds | holds_to_bound | inf_zero_witnessed | unknown
    exact: bool
    n_bound: int
    inf_estimate: FieldElement | None
    witnesses: list[tuple[int, FieldElement]]  # (orbit index 2n-1, t_{2n-1}) record minima
    yrrap: object = None
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "exact": self.exact,
            "n_bound": self.n_bound,
            "inf_positive_odd": _dec(self.inf_estimate),
            "witnesses": [[n, t.exact_str(), t.decimal(12)] for n, t in self.witnesses],
            "yrrap": None if self.yrrap is None else str(self.yrrap),
            "note": self.note,
        }


def ud_condition_probe(ctx: BetaContext, n_bound: int = 200) -> UDProbe:
    """inf of the positive values among t_1, t_3, ..., t_{2 n_bound - 1}.

    For a finite orbit the infimum is a minimum and the verdict exact.  Otherwise
    record minima are listed; a run of at least three records each below the
    previous one divided by beta is reported as witnessed decay towards 0.
    """
    yr = is_yrrap(ctx, max(2 * n_bound, 64)) if ctx.algebraic else None
    if yr is not None and yr.is_yrrap:
        last = yr.preperiod + 2 * yr.period + 2
        positives = [(n, ctx.t(n)) for n in range(1, last + 1, 2) if ctx.t(n).sign() > 0]
        inf = None
        for _, t in positives:
            inf = _emin(inf, t)
        note = "finite orbit: the positive odd values form a finite set"
        return UDProbe("holds", True, n_bound, inf, _records(positives), yr, note)
    positives = []
    try:
        for n in range(1, 2 * n_bound, 2):
            t = ctx.t(n)
            if t.sign() > 0:
                positives.append((n, t))
    except UndecidableAtPrecision as exc:
        rec = _records(positives)
        return UDProbe("unknown", False, n_bound, rec[-1][1] if rec else None, rec, yr,
                       f"stopped: {exc}")
    records = _records(positives)
    if not records:
        return UDProbe("holds_to_bound", False, n_bound, None, [], yr,
                       "no positive odd orbit value up to the bound")
    beta = ctx.beta
    decays = sum(1 for (_, a), (_, b) in zip(records, records[1:]) if (b * beta - a).sign() < 0)
    verdict = "inf_zero_witnessed" if len(records) >= 3 and decays >= 2 else "holds_to_bound"
    return UDProbe(verdict, False, n_bound, records[-1][1], records, yr,
                   f"{len(positives)} positive odd values, {len(records)} record minima")


def _records(pairs):
    out = []
    for n, t in pairs:
        if not out or (t - out[-1][1]).sign() < 0:
            out.append((n, t))
    return out


# ---------------------------------------------------------------------------
# gaps


def gap_extremes(window: PointSetWindow) -> tuple[FieldElement, FieldElement]:
    gaps = window.gaps()
    if not gaps:
        raise TooFewPoints("need at least two Z points")
    lo = hi = None
    for g in gaps:
        lo, hi = _emin(lo, g), _emax(hi, g)
    return lo, hi


def letter_window_gaps(ctx: BetaContext, k_min: int, k_max: int) -> GapSummary:
    """Gap summary of the fixed-point letters u_{k_min} ... u_{k_max}."""
    view = fixed_point_view(ctx)
    census = gap_census(ctx)
    return census.word([(u, 0) for u in view.window(k_min, k_max)])


@dataclass
class DeloneReport:
    base: str
    window: tuple[str, str]
    window_decimal: tuple[str, str]
    z_points: int
    min_gap: FieldElement
    max_gap: FieldElement
    ud: UDProbe
    yrrap: str | None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "base": self.base,
            "window": list(self.window),
            "window_decimal": list(self.window_decimal),
            "z_points": self.z_points,
            "min_gap": [self.min_gap.exact_str(), self.min_gap.decimal(12)],
            "max_gap": [self.max_gap.exact_str(), self.max_gap.decimal(12)],
            "ud_condition": self.ud.to_dict(),
            "yrrap": self.yrrap,
            "scope": "window-relative evidence; no global Delone claim",
            "notes": self.notes,
        }


def delone_report(ctx: BetaContext, window, n_bound: int = 200) -> DeloneReport:
    W = y_window(ctx, window)
    lo_gap, hi_gap = gap_extremes(W)
    ud = ud_condition_probe(ctx, n_bound)
    yr = str(is_yrrap(ctx, 2 * n_bound)) if ctx.algebraic else None
    notes = []
    if ud.exact and ud.inf_estimate is not None and (lo_gap - ud.inf_estimate).sign() < 0:
        notes.append("observed min gap below the positive odd orbit infimum")
    lo, hi = W.interval
    return DeloneReport(ctx.name or repr(ctx.base), (lo.exact_str(), hi.exact_str()),
                        (lo.decimal(6), hi.decimal(6)), len(W.z_points), lo_gap, hi_gap, ud, yr, notes)


def nested_power_windows(ctx: BetaContext, word: Sequence, levels: Sequence[int]) -> list[dict]:
    """Gap extremes over the windows psi^m(word), m in ``levels``."""
    census = gap_census(ctx)
    system = psi_system(ctx)
    word = [system.letter(*u) for u in word]
    out = []
    for m in levels:
        s = census.power(word, m)
        out.append({"level": m, "letters": s.letters, "z_points": s.z_count, "gaps": s.n_gaps,
                    "min_gap": s.min_gap, "max_gap": s.max_gap, "length": s.total})
    return out


# ---------------------------------------------------------------------------
# the three counterexample phenomena


@dataclass
class SmallGapWitness:
    k: int
    n: int  # the factor (inf,n)(n,inf)
    position: int  # index of (n,inf) in the fixed point
    factor: str
    gap: FieldElement  # t_{2n-1} - t_{2n}
    bound: FieldElement  # beta^-2k (beta^2 + beta^3)/(beta+1)
    window_level: int
    window_min_gap: FieldElement
    orbit_inequalities: bool


def small_gap_witnesses(ctx: BetaContext, ks: Sequence[int] = (1, 2, 3)) -> list[SmallGapWitness]:
    """For the base of 3 0 1 0^3 1 0^5 1 ...: the factors (inf,n)(n,inf) with 2n-1 = k(k-1)+1.

    psi^(2n+1)(u_0 u_1) = psi^2n(psi(u_1)) psi^(2n+1)(u_0) occupies the indices
    just left of 0, and psi(u_1) starts with (inf,0)(0,inf); so the factor is
    the junction of psi^2n((inf,0)), which ends with (inf,n), and
    psi^2n((0,inf)), which starts with (n,inf).  Its length is a gap between
    consecutive (-beta)-integers.
    """
    view = fixed_point_view(ctx)
    system = view.system
    census = gap_census(ctx)
    beta = ctx.beta
    u0, u1 = system.letter(INF, 0), view.letter_at(1)
    out = []
    for k in ks:
        n = k * (k - 1) // 2 + 1
        level = 2 * n + 1
        pos = -view.count(u0, level) - view.count(u1, level) + view.count(u0, 2 * n)
        prev, cur = view.window(pos - 1, pos)
        if (prev, cur) != (system.letter(INF, n), system.letter(n, INF)):
            raise AssertionError(f"expected (inf,{n})({n},inf) at {pos}, found {format_word([prev, cur])}")
        if not (system.boundary_is_z(view.letter_at(pos - 2), prev)
                and system.boundary_is_z(cur, view.letter_at(pos + 1))):
            raise AssertionError("factor is not delimited by (-beta)-integers")
        gap = system.length(prev) + system.length(cur)
        bound = (beta ** 2 + beta ** 3) / (beta ** (2 * k) * (beta + 1))
        idx = k * (k - 1) + 1
        t_a, t_b = ctx.t(idx), ctx.t(idx + 1)
        scale = beta ** (2 * k) * (beta + 1)
        ineq = (t_a.sign() > 0 and (t_a * scale - beta ** 2).sign() < 0
                and t_b.sign() < 0 and (t_b * scale + beta ** 3).sign() > 0)
        s = census.power([u0, u1], level)
        out.append(SmallGapWitness(k, n, pos, format_word([prev, cur]), gap, bound, level,
                                   s.min_gap, ineq))
    return out


@dataclass
class DecayWitness:
    k: int
    n: int
    t: FieldElement
    bound: FieldElement  # beta^(2 - 2^k)/(beta+1)
    digits_ok: bool


def decay_witnesses(ctx: BetaContext, digits, morphism: Morphism = SIGMA1,
                    ks: Sequence[int] = (1, 2, 3)) -> list[DecayWitness]:
    """Positive odd orbit values t_{n_k}, n_k = |s^k(300)| + |s^(k-1)(3)| + 1.

    The following digits are 0^(2^k - 1) 3, hence
    t_{n_k} = (-beta)^-(2^k - 1) t_{n_k + 2^k - 1} and 0 < t_{n_k} < beta^(2 - 2^k)/(beta+1).
    """
    beta = ctx.beta
    out = []
    for k in ks:
        n = morphism.length((3, 0, 0), k) + morphism.length((3,), k - 1) + 1
        run = 2 ** k
        follow = digits.prefix(n + run)[n:]
        ok = follow == [0] * (run - 1) + [3]
        out.append(DecayWitness(k, n, ctx.t(n), beta ** (2 - run) / (beta + 1), ok))
    return out


@dataclass
class LargeGapWitness:
    k: int
    level: int  # |s^k(3)|
    position: int  # -|psi^level((inf,0))|
    prefix: str
    interior_free: bool  # no Z point strictly inside (y_p, y_{p+k})
    span: FieldElement  # y_{p+k} - y_p
    enclosing_gap: FieldElement | None
    window_max_gap: FieldElement


def large_gap_witnesses(ctx: BetaContext, morphism: Morphism = SIGMA2,
                        ks: Sequence[int] = (1, 2, 3), scan_limit: int = 100_000) -> list[LargeGapWitness]:
    """For the base of the 3>31232 fixed point: long Z-free stretches at the start of psi^|s^k(3)|((inf,0))."""
    view = fixed_point_view(ctx)
    system = view.system
    census = gap_census(ctx)
    u0 = system.letter(INF, 0)
    out = []
    for k in ks:
        level = morphism.length((3,), k)
        pos = -view.count(u0, level)
        word = view.window(pos - 1, pos + k)
        interior = all(not system.boundary_is_z(word[q], word[q + 1]) for q in range(1, k))
        span = system.word_length(word[1:k + 1])
        enclosing = _enclosing_gap(view, pos, pos + k, scan_limit) if interior else None
        s = census.word([(u0, level)])
        out.append(LargeGapWitness(k, level, pos, format_word(word[1:k + 1]), interior, span,
                                   enclosing, s.max_gap))
    return out


def _enclosing_gap(view, k_left: int, k_right: int, limit: int) -> FieldElement | None:
    """Length of the Z gap containing (y_{k_left}, y_{k_right}), scanning outwards."""
    system = view.system
    left = k_left
    while not system.boundary_is_z(view.letter_at(left - 1), view.letter_at(left)):
        left -= 1
        if k_left - left > limit:
            return None
    right = k_right
    while not system.boundary_is_z(view.letter_at(right - 1), view.letter_at(right)):
        right += 1
        if right - k_right > limit:
            return None
    return system.word_length(view.window(left, right - 1))
