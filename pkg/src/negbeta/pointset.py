"""Windows of Y_beta and Z_{-beta}, gaps, the gap anti-morphism and a brute-force oracle."""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .antimorphism import (FixedPointView, Letter, TwoSidedFixedPoint, fixed_point_view,
                           format_word, psi_system)
from .numeric import FieldElement, UndecidableAtPrecision
from .orbit import INF, BetaContext


class TooFewPoints(ValueError):
    pass


class BetaTooSmall(ValueError):
    pass


class LetterBudgetExceeded(RuntimeError):
    pass


def _cmp(x: FieldElement, y: FieldElement) -> int:
    return (x - y).sign()


def sort_elements(values: Iterable[FieldElement]) -> list[FieldElement]:
    return sorted(values, key=functools.cmp_to_key(_cmp))


def _as_interval(ctx: BetaContext, interval) -> tuple[FieldElement, FieldElement]:
    lo, hi = (ctx.elem(v) for v in interval)
    if (hi - lo).sign() < 0:
        raise ValueError("empty interval")
    return lo, hi


# ---------------------------------------------------------------------------
# windows


@dataclass
class WindowPoint:
    k: int
    y: FieldElement
    is_z: bool
    letter: Letter  # u_k, the tile to the right of y_k


@dataclass
class PointSetWindow:
    ctx: BetaContext
    interval: tuple[FieldElement, FieldElement]
    points: list[WindowPoint]
    letters: list[Letter]  # u_{k_first} ... u_{k_last}
    k_first: int

    @property
    def z_points(self) -> list[FieldElement]:
        return [p.y for p in self.points if p.is_z]

    @property
    def y_points(self) -> list[FieldElement]:
        return [p.y for p in self.points]

    def z_indices(self) -> list[int]:
        return [p.k for p in self.points if p.is_z]

    def gap_words(self) -> list[tuple[Letter, ...]]:
        """The factors u_k ... u_{k'-1} between consecutive Z points of the window."""
        idx = self.z_indices()
        return [tuple(self.letters[a - self.k_first:b - self.k_first]) for a, b in zip(idx, idx[1:])]

    def gaps(self) -> list[FieldElement]:
        z = self.z_points
        return [b - a for a, b in zip(z, z[1:])]


def is_z_point(view: FixedPointView, k: int) -> bool:
    """y_k is in Z_{-beta} iff t_{2j-1} = 0 for u_{k-1} = (i', j) or t_{2i} = 0 for u_k = (i, j')."""
    prev, cur = view.window(k - 1, k)
    return view.system.boundary_is_z(prev, cur)


def y_window(ctx: BetaContext, interval, view: FixedPointView | None = None) -> PointSetWindow:
    """All y_k in the closed interval, each flagged with its Z membership."""
    view = view or fixed_point_view(ctx)
    system = view.system
    lo, hi = _as_interval(ctx, interval)
    k0 = view.locate(lo)
    y = view.y(k0)
    if (y - lo).sign() < 0:
        y = y + system.length(view.letter_at(k0))
        k0 += 1
    k1 = view.locate(hi)
    if k1 < k0:
        return PointSetWindow(ctx, (lo, hi), [], [], k0)
    # one extra letter on the left decides membership of the first point
    word = view.window(k0 - 1, k1)
    points = []
    for off, u in enumerate(word[1:]):
        points.append(WindowPoint(k0 + off, y, system.boundary_is_z(word[off], u), u))
        y = y + system.length(u)
    return PointSetWindow(ctx, (lo, hi), points, word[1:], k0)


def z_enumerate(ctx: BetaContext, interval) -> PointSetWindow:
    return y_window(ctx, interval)


def gap_distances(window: PointSetWindow) -> list[tuple[FieldElement, int]]:
    """Distinct distances between consecutive Z points, ascending, with multiplicities."""
    gaps = window.gaps()
    if not gaps:
        raise TooFewPoints("need at least two Z points")
    ctx = window.ctx
    distinct: list[list] = []
    for g in sort_elements(gaps):
        if distinct and ctx.eq(distinct[-1][0], g):
            distinct[-1][1] += 1
        else:
            distinct.append([g, 1])
    return [(g, n) for g, n in distinct]


# ---------------------------------------------------------------------------
# gap morphism


def _letter_names():
    alphabet = [chr(c) for c in range(ord("A"), ord("Z") + 1)]
    yield from alphabet
    n = 2
    while True:
        for combo in _product(alphabet, n):
            yield "".join(combo)
        n += 1


def _product(alphabet, n):
    if n == 0:
        yield ()
        return
    for head in alphabet:
        for tail in _product(alphabet, n - 1):
            yield (head,) + tail


@dataclass
class GapMorphism:
    ctx: BetaContext
    words: dict[str, tuple[Letter, ...]]
    rules: dict[str, tuple[str, ...]]
    lengths: dict[str, FieldElement]
    closed: bool
    max_letters: int

    @property
    def names(self) -> list[str]:
        return list(self.words)

    def name_of(self, word: Sequence[Letter]) -> str | None:
        word = tuple(word)
        for name, w in self.words.items():
            if w == word:
                return name
        return None

    def format_rules(self, sep: str = "; ") -> str:
        return sep.join(f"{n} -> {' '.join(r)}" for n, r in self.rules.items())

    def scaling_defects(self) -> list[str]:
        """Rules violating  sum of image lengths = beta * length."""
        bad = []
        for n, image in self.rules.items():
            total = self.ctx.zero
            for m in image:
                total = total + self.lengths[m]
            if not self.ctx.eq(total, self.ctx.beta * self.lengths[n]):
                bad.append(n)
        return bad

    # the interface used by TwoSidedFixedPoint
    def image(self, name):
        try:
            return self.rules[name]
        except KeyError:
            raise LetterBudgetExceeded(f"gap letter {name} has no rule (table not closed)") from None

    def length(self, name):
        return self.lengths[name]


def derive_gap_morphism(ctx: BetaContext, max_letters: int = 64) -> GapMorphism:
    """Induced anti-morphism on the words between consecutive (-beta)-integers.

    Starts from (inf,0)(0,inf), which spans [0, 1].  ``closed`` is False when
    more than ``max_letters`` letters would be needed (the partial table is
    returned).
    """
    beta = ctx.beta
    if (beta * beta - beta - 1).sign() < 0:
        raise BetaTooSmall("Z_{-beta} = {0} below the golden ratio; there are no gaps")
    system = psi_system(ctx)
    seed = (system.letter(INF, 0), system.letter(0, INF))
    names = _letter_names()
    words: dict[str, tuple] = {}
    index: dict[tuple, str] = {}

    def intern(w):
        if w not in index:
            name = next(names)
            index[w] = name
            words[name] = w
        return index[w]

    intern(seed)
    rules: dict[str, tuple[str, ...]] = {}
    queue = [index[seed]]
    closed = True
    while queue:
        name = queue.pop(0)
        image = system.psi_word(words[name])
        pieces, start = [], 0
        for p in range(1, len(image)):
            if system.boundary_is_z(image[p - 1], image[p]):
                pieces.append(image[start:p])
                start = p
        pieces.append(image[start:])
        out = []
        for piece in pieces:
            fresh = piece not in index
            if fresh and len(words) >= max_letters:
                closed = False
                break
            out.append(intern(piece))
            if fresh:
                queue.append(index[piece])
        if not closed:
            break
        rules[name] = tuple(out)
    lengths = {n: system.word_length(w) for n, w in words.items()}
    return GapMorphism(ctx, words, rules, lengths, closed, max_letters)


def gap_fixed_point(morphism: GapMorphism) -> TwoSidedFixedPoint:
    """Two-sided fixed point of the gap morphism seeded by the unit gap A on [0, 1]."""
    if not morphism.closed:
        raise LetterBudgetExceeded("gap morphism is not closed")
    return TwoSidedFixedPoint(morphism, morphism.names[0])


def gap_labels(window: PointSetWindow, morphism: GapMorphism) -> str:
    """The window's gap sequence spelled with gap-morphism letter names ('?' if unknown)."""
    out = []
    for w in window.gap_words():
        name = morphism.name_of(w)
        out.append(name if name is not None else "?")
    return "".join(out) if all(len(n) == 1 for n in out) else " ".join(out)


# ---------------------------------------------------------------------------
# brute-force oracle


class OracleValues(list):
    """Sorted exact values; ``warnings`` lists undecided separations (streamed mode)."""

    def __init__(self, values=(), warnings=(), strings=()):
        super().__init__(values)
        self.warnings = list(warnings)
        self.strings = list(strings)


_MARGIN = 1e-9


def default_depth(ctx: BetaContext, interval) -> int:
    lo, hi = _as_interval(ctx, interval)
    b = float(ctx.base)
    R = max(abs(float(lo)), abs(float(hi)), 1.0)
    return math.ceil(math.log(R * (b + 1)) / math.log(b)) + 3


class _Tree:
    """Digit tree of the recursion v -> (v + d)/(-beta) kept inside [t_0, t_{-1})."""

    def __init__(self, ctx: BetaContext):
        self.ctx = ctx
        self.b = float(ctx.base)
        self.t0 = -self.b / (self.b + 1)
        self.top = self.b * self.b / (self.b + 1)  # -beta * t_0
        self._top_exact = -ctx.beta * ctx.t0

    def exact_v(self, start: FieldElement, digits: Sequence[int]) -> FieldElement:
        """v after reading ``digits`` from the state ``start``."""
        ctx = self.ctx
        v = start
        for d in digits:
            v = (v + d) * ctx.neg_beta_inv
        return v

    def children(self, v: float, exact):
        """Admissible digits d (t_0 < v + d <= beta^2/(beta+1)) with their float states."""
        lo = math.floor(self.t0 - v - _MARGIN)
        hi = math.floor(self.top - v + _MARGIN)
        for d in range(max(lo, 0), hi + 1):
            s = v + d
            if s <= self.t0 + _MARGIN or s > self.top - _MARGIN:
                e = exact() + d
                if not ((e - self.ctx.t0).sign() > 0 and (e - self._top_exact).sign() <= 0):
                    continue
            yield d, s / (-self.b)


def _in_window(ctx, x_float, exact, lo, hi, lo_f, hi_f) -> bool:
    if x_float < lo_f - _MARGIN * max(1.0, abs(lo_f)) or x_float > hi_f + _MARGIN * max(1.0, abs(hi_f)):
        return False
    if lo_f + _MARGIN * max(1.0, abs(lo_f)) < x_float < hi_f - _MARGIN * max(1.0, abs(hi_f)):
        return True
    x = exact()
    return (x - lo).sign() >= 0 and (x - hi).sign() <= 0


def _dedupe_sorted(ctx: BetaContext, values: list[FieldElement], warnings: list) -> list[FieldElement]:
    if ctx.algebraic:
        uniq = {v.rep: v for v in values}
        return sort_elements(uniq.values())
    uniq = {v.rep: v for v in values}
    ordered = sorted(uniq.values(), key=float)
    for a, b in zip(ordered, ordered[1:]):
        try:
            if (b - a).sign() == 0:
                warnings.append(f"values {a} and {b} coincide")
        except UndecidableAtPrecision as exc:
            warnings.append(f"cannot separate {a} and {b}: {exc}")
    return ordered


def brute_force_oracle(ctx: BetaContext, n_max: int | None, interval) -> OracleValues:
    """Z_{-beta} in a window from all admissible digit strings of length <= n_max.

    A string d_{n-1} ... d_0 is admissible when every state
    v_m = sum_{k<m} d_k (-beta)^(k-m) lies in [t_0, t_{-1}); its value is
    (-beta)^n v_n.  Strings are enumerated low digit first.
    """
    lo, hi = _as_interval(ctx, interval)
    if n_max is None:
        n_max = default_depth(ctx, (lo, hi))
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    tree = _Tree(ctx)
    K = ctx.field
    lo_f, hi_f = float(lo), float(hi)
    found: list[FieldElement] = []
    strings: list[tuple[int, ...]] = []
    b = tree.b
    # depth-first over (digits, float state)
    stack = [((), 0.0)]
    while stack:
        digits, v = stack.pop()
        m = len(digits)
        if m == 0 or digits[-1] != 0:
            value = lambda: K.from_digits(digits)
            if _in_window(ctx, (-b) ** m * v, value, lo, hi, lo_f, hi_f):
                found.append(value())
                strings.append(digits)
        if m == n_max:
            continue
        exact = lambda: tree.exact_v(ctx.zero, digits)
        for d, v2 in tree.children(v, exact):
            stack.append((digits + (d,), v2))
    warnings: list[str] = []
    values = _dedupe_sorted(ctx, found, warnings)
    return OracleValues(values, warnings, strings)


def y_enumerate(ctx: BetaContext, interval, m_max: int, n_max: int) -> OracleValues:
    """Y_beta in a window rebuilt as Z_{-beta} plus the scaled preimages (-beta)^(m+n) T^-n(t_0)."""
    lo, hi = _as_interval(ctx, interval)
    tree = _Tree(ctx)
    lo_f, hi_f = float(lo), float(hi)
    b = tree.b
    found = list(brute_force_oracle(ctx, n_max, (lo, hi)))
    mb = -ctx.beta
    stack = [((), tree.t0)]
    while stack:
        digits, v = stack.pop()
        n = len(digits)
        exact_v = functools.lru_cache(None)(lambda: tree.exact_v(ctx.t0, digits))
        for m in range(m_max + 1):
            e = n + m
            value = lambda: exact_v() * mb ** e
            if _in_window(ctx, (-b) ** e * v, value, lo, hi, lo_f, hi_f):
                found.append(value())
        if n == n_max:
            continue
        for d, v2 in tree.children(v, exact_v):
            stack.append((digits + (d,), v2))
    warnings: list[str] = []
    return OracleValues(_dedupe_sorted(ctx, found, warnings), warnings)


# ---------------------------------------------------------------------------
# gap census over huge windows


@dataclass
class GapSummary:
    """Gap statistics of a word, computed without materialising it.

    ``pre``/``suf`` are the lengths before the first / after the last internal
    Z boundary; the extreme gaps count only gaps lying completely inside.
    """

    first: object
    last: object
    letters: int
    total: FieldElement
    has_z: bool
    pre: FieldElement | None
    suf: FieldElement | None
    n_gaps: int = 0
    min_gap: FieldElement | None = None
    max_gap: FieldElement | None = None
    z_count: int = 0


def _emin(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a if (a - b).sign() <= 0 else b


def _emax(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a if (a - b).sign() >= 0 else b


def _combine(s1: GapSummary, s2: GapSummary, junction_z: bool) -> GapSummary:
    n_gaps = s1.n_gaps + s2.n_gaps
    lo, hi = _emin(s1.min_gap, s2.min_gap), _emax(s1.max_gap, s2.max_gap)
    new_gaps = []
    if junction_z:
        pre = s1.pre if s1.has_z else s1.total
        suf = s2.suf if s2.has_z else s2.total
        if s1.has_z:
            new_gaps.append(s1.suf)
        if s2.has_z:
            new_gaps.append(s2.pre)
        has_z = True
    elif s1.has_z and s2.has_z:
        pre, suf = s1.pre, s2.suf
        new_gaps.append(s1.suf + s2.pre)
        has_z = True
    elif s1.has_z:
        pre, suf, has_z = s1.pre, s1.suf + s2.total, True
    elif s2.has_z:
        pre, suf, has_z = s1.total + s2.pre, s2.suf, True
    else:
        pre = suf = None
        has_z = False
    for g in new_gaps:
        lo, hi = _emin(lo, g), _emax(hi, g)
        n_gaps += 1
    return GapSummary(s1.first, s2.last, s1.letters + s2.letters, s1.total + s2.total, has_z,
                      pre, suf, n_gaps, lo, hi, s1.z_count + s2.z_count + int(junction_z))


class GapCensus:
    """Memoised gap summaries of the nodes phi^m(a) of a fixed-point tree."""

    def __init__(self, view: TwoSidedFixedPoint, boundary_is_z=None):
        self.view = view
        self.system = view.system
        self.boundary_is_z = boundary_is_z or self.system.boundary_is_z
        self._memo: dict[tuple, GapSummary] = {}

    def node(self, a, m: int) -> GapSummary:
        key = (a, m)
        s = self._memo.get(key)
        if s is not None:
            return s
        if m == 0:
            s = GapSummary(a, a, 1, self.system.length(a), False, None, None)
        else:
            s = self.word([(b, m - 1) for b in self.view._children(a, m)])
        self._memo[key] = s
        return s

    def word(self, nodes: Sequence[tuple]) -> GapSummary:
        acc = None
        for a, m in nodes:
            s = self.node(a, m)
            acc = s if acc is None else _combine(acc, s, self.boundary_is_z(acc.last, s.first))
        return acc

    def power(self, word: Sequence, m: int) -> GapSummary:
        """Summary of phi^m(word) (anti-morphism: odd powers reverse the word)."""
        letters = list(word)[::-1] if m % 2 else list(word)
        return self.word([(a, m) for a in letters])


def gap_census(ctx: BetaContext) -> GapCensus:
    census = getattr(ctx, "_gap_census", None)
    if census is None:
        census = ctx._gap_census = GapCensus(fixed_point_view(ctx))
    return census
