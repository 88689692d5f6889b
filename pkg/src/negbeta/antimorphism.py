"""Interval letters (i, j), their lengths, the anti-morphism on them and its fixed point.

A letter (i, j) stands for the open interval (t_{2i}, t_{2j-1}).  In algebraic
mode letters are canonicalised by value: the left index becomes INF when
t_{2i} = 0 and otherwise the smallest i' with t_{2i'} = t_{2i}; likewise for
the right index with the odd orbit values.  In streamed mode indices are kept
as they are (for a base with infinite orbit, distinct indices give distinct
values, but this can only be refuted, never certified).
"""
from __future__ import annotations

import threading
from collections import deque
from typing import Callable, Hashable, Iterable, NamedTuple, Sequence

from .numeric import FieldElement
from .orbit import INF, BetaContext, fmt_index, parse_index


class NotInAlphabet(ValueError):
    pass


class CaseAssertionFailed(ArithmeticError):
    pass


class LetterInconsistency(ArithmeticError):
    pass


class FixedPointConsistency(RuntimeError):
    pass


class Letter(NamedTuple):
    i: float | int
    j: float | int

    def __str__(self):
        return f"({fmt_index(self.i)},{fmt_index(self.j)})"


def inc(i):
    return i + 1  # INF + 1 == INF


def format_word(word: Iterable) -> str:
    return " ".join(str(u) for u in word)


def parse_word(text: str) -> list[Letter]:
    out = []
    for chunk in text.replace(")", ") ").split():
        body = chunk.strip().strip("()")
        if not body:
            continue
        i, j = body.split(",")
        out.append(Letter(parse_index(i), parse_index(j)))
    return out


class PsiSystem:
    """Letters, lengths and the anti-morphism for one base context."""

    def __init__(self, ctx: BetaContext):
        self.ctx = ctx
        self.scale = ctx.beta
        self._even_first: dict = {}
        self._odd_first: dict = {}
        self._even_scanned = 0
        self._odd_scanned = 0
        self._canon: dict[tuple, Letter] = {}
        self._images: dict[Letter, tuple[Letter, ...]] = {}
        self._lengths: dict[Letter, FieldElement] = {}
        self._zero_left: dict[Letter, bool] = {}
        self._zero_right: dict[Letter, bool] = {}
        self._checked: set = set()
        self._lock = threading.RLock()

    # canonical letters ------------------------------------------------------

    def _canon_left(self, i):
        if i == INF:
            return INF
        ctx = self.ctx
        if not ctx.algebraic:
            return int(i)
        if ctx.t(2 * i).is_zero():
            return INF
        while self._even_scanned <= i:
            self._even_first.setdefault(ctx.t(2 * self._even_scanned).rep, self._even_scanned)
            self._even_scanned += 1
        return self._even_first[ctx.t(2 * i).rep]

    def _canon_right(self, j):
        if j == INF:
            return INF
        ctx = self.ctx
        if not ctx.algebraic:
            return int(j)
        if ctx.t(2 * j - 1).is_zero():
            return INF
        while self._odd_scanned <= j:
            self._odd_first.setdefault(ctx.t(2 * self._odd_scanned - 1).rep, self._odd_scanned)
            self._odd_scanned += 1
        return self._odd_first[ctx.t(2 * j - 1).rep]

    def in_alphabet(self, i, j) -> bool:
        lo, hi = self.ctx.t(2 * i), self.ctx.t(2 * j - 1)
        s_lo, s_hi, s_len = lo.sign(), hi.sign(), (hi - lo).sign()
        return s_len > 0 and (s_lo >= 0 or s_hi <= 0)

    def letter(self, i, j, check: bool = True) -> Letter:
        """The canonical letter identified with the index pair (i, j)."""
        key = (i, j)
        with self._lock:
            if key not in self._canon:
                if not self.in_alphabet(i, j):
                    raise NotInAlphabet(f"({fmt_index(i)},{fmt_index(j)}) is not an interval letter")
                self._canon[key] = Letter(self._canon_left(i), self._canon_right(j))
            u = self._canon[key]
            if check and u != Letter(i, j) and key not in self._checked:
                self._checked.add(key)
                raw = self._image_from_indices(i, j)
                if raw != self.psi(u):
                    raise LetterInconsistency(
                        f"({fmt_index(i)},{fmt_index(j)}) and {u} are identified but their images differ")
            return u

    def key(self, u: Letter) -> tuple[FieldElement, FieldElement]:
        return self.ctx.t(2 * u.i), self.ctx.t(2 * u.j - 1)

    @property
    def alphabet(self) -> list[Letter]:
        """Letters seen so far (canonical), in discovery order."""
        return list(dict.fromkeys(self._canon.values()))

    def reachable(self, seed: Iterable[Letter], limit: int = 64) -> tuple[list[Letter], bool]:
        """Letters reached from ``seed`` under psi in BFS order; flag is False if ``limit`` cut it short."""
        seen: dict[Letter, None] = {}
        queue = deque(seed)
        while queue and len(seen) < limit:
            u = queue.popleft()
            if u not in seen:
                seen[u] = None
                queue.extend(v for v in self.psi(u) if v not in seen)
        return list(seen), all(u in seen for u in queue)

    # lengths and membership ---------------------------------------------------

    def length(self, u: Letter) -> FieldElement:
        L = self._lengths.get(u)
        if L is None:
            L = self.ctx.t(2 * u.j - 1) - self.ctx.t(2 * u.i)
            self._lengths[u] = L
        return L

    def word_length(self, word: Iterable[Letter]) -> FieldElement:
        total = self.ctx.zero
        for u in word:
            total = total + self.length(u)
        return total

    def left_is_zero(self, u: Letter) -> bool:
        """t_{2i} = 0 for u = (i, j)."""
        v = self._zero_left.get(u)
        if v is None:
            v = self._zero_left[u] = self.ctx.is_zero(self.ctx.t(2 * u.i))
        return v

    def right_is_zero(self, u: Letter) -> bool:
        """t_{2j-1} = 0 for u = (i, j)."""
        v = self._zero_right.get(u)
        if v is None:
            v = self._zero_right[u] = self.ctx.is_zero(self.ctx.t(2 * u.j - 1))
        return v

    def boundary_is_z(self, prev: Letter, cur: Letter) -> bool:
        """Membership of the point between ``prev`` and ``cur`` in Z_{-beta}."""
        return self.right_is_zero(prev) or self.left_is_zero(cur)

    # the anti-morphism ----------------------------------------------------

    def _image_from_indices(self, i, j) -> tuple[Letter, ...]:
        ctx = self.ctx
        L = lambda p, q: self.letter(p, q, check=False)
        i1 = inc(i)
        a_odd, a_even = ctx.a(2 * i + 1), ctx.a(2 * j)
        t_odd, t_even = ctx.t(2 * i + 1), ctx.t(2 * j)
        s_odd, s_even = t_odd.sign(), t_even.sign()
        if a_odd == a_even and s_odd * s_even >= 0:
            return (L(j, i1),)
        d = a_odd - a_even
        alt = (L(0, INF), L(INF, 0))
        fwd = (L(INF, 0), L(0, INF))

        def need(n):
            if n < 0:
                raise CaseAssertionFailed(f"negative block exponent {n} for ({fmt_index(i)},{fmt_index(j)})")
            return n

        if ctx.eq(t_odd, ctx.t0):
            if s_even >= 0:
                return (L(j, 0),) + alt * need(d - 1)
            return (L(j, INF), L(INF, 0)) + alt * need(d - 1)
        if s_odd > 0:
            if s_even < 0:
                return (L(j, INF),) + fwd * need(d) + (L(INF, i1),)
            return (L(j, 0),) + alt * need(d - 1) + (L(0, INF), L(INF, i1))
        if s_even >= 0:
            return (L(j, 0),) + alt * need(d - 1) + (L(0, i1),)
        return (L(j, INF), L(INF, 0)) + alt * need(d - 1) + (L(0, i1),)

    def psi(self, u: Letter) -> tuple[Letter, ...]:
        image = self._images.get(u)
        if image is not None:
            return image
        with self._lock:
            canon = self.letter(u.i, u.j, check=False)
            if canon != u:
                image = self.psi(canon)
                self.letter(u.i, u.j)  # consistency of the identification
            else:
                image = self._image_from_indices(u.i, u.j)
            self._images[u] = image
            return image

    image = psi

    def psi_word(self, word: Sequence[Letter]) -> tuple[Letter, ...]:
        out: list[Letter] = []
        for u in reversed(tuple(word)):
            out.extend(self.psi(u))
        return tuple(out)


def psi_system(ctx: BetaContext) -> PsiSystem:
    sys_ = getattr(ctx, "_psi_system", None)
    if sys_ is None:
        sys_ = ctx._psi_system = PsiSystem(ctx)
    return sys_


def letter(ctx: BetaContext, i, j) -> Letter:
    return psi_system(ctx).letter(i, j)


def psi(ctx: BetaContext, u) -> tuple[Letter, ...]:
    s = psi_system(ctx)
    return s.psi(s.letter(*u))


def psi_word(ctx: BetaContext, word) -> tuple[Letter, ...]:
    s = psi_system(ctx)
    return s.psi_word([s.letter(*u) for u in word])


def length(ctx: BetaContext, u) -> FieldElement:
    s = psi_system(ctx)
    return s.length(s.letter(*u))


def psi_power(ctx: BetaContext, word, m: int) -> tuple[Letter, ...]:
    s = psi_system(ctx)
    w = tuple(s.letter(*u) for u in word)
    for _ in range(m):
        w = s.psi_word(w)
    return w


# ---------------------------------------------------------------------------
# two-sided fixed points of anti-morphisms, with random access


class TwoSidedFixedPoint:
    """The fixed point ... u_{-2} u_{-1} . u_0 u_1 ... of an anti-morphism ``system``.

    The right half is the limit of the even powers applied to ``seed``, the left
    half the limit of the odd powers (read right to left from u_{-1}).  Letters
    and positions are found by descending the substitution tree, so indices far
    beyond anything that could be materialised remain accessible.

    ``system`` needs ``image(letter)``, ``length(letter)`` and ``ctx``.
    """

    def __init__(self, system, seed: Hashable, max_level: int = 4000):
        self.system = system
        self.seed = seed
        self.ctx = system.ctx
        self.max_level = max_level
        self._counts: dict[tuple, int] = {}
        self._lens: dict[tuple, FieldElement] = {}
        self._lock = threading.RLock()
        if self._first_letter(seed, 2) != seed:
            raise FixedPointConsistency(f"the square of the anti-morphism does not fix {seed} as first letter")
        if self.count(seed, 2) < 2 and self.count(seed, 1) < 2:
            raise FixedPointConsistency("the seed is not prolongable")

    # tree bookkeeping -------------------------------------------------------

    def _children(self, a, m):
        """Children of the node (a, m) in reading order: the nodes (c, m-1)."""
        kids = self.system.image(a)
        return kids[::-1] if (m - 1) % 2 else kids

    def _first_letter(self, a, m):
        while m > 0:
            a = self._children(a, m)[0]
            m -= 1
        return a

    def count(self, a, m: int) -> int:
        """|phi^m(a)|."""
        key = (a, m)
        c = self._counts.get(key)
        if c is None:
            if m == 0:
                c = 1
            else:
                c = sum(self.count(b, m - 1) for b in self.system.image(a))
            self._counts[key] = c
        return c

    def total_length(self, a, m: int) -> FieldElement:
        """L(phi^m(a)), summed over the tree (no use of the scaling law)."""
        key = (a, m)
        v = self._lens.get(key)
        if v is None:
            if m == 0:
                v = self.system.length(a)
            else:
                v = self.ctx.zero
                for b in self.system.image(a):
                    v = v + self.total_length(b, m - 1)
            self._lens[key] = v
        return v

    def level_for(self, k: int) -> int:
        """Smallest m of the right parity whose power of the seed contains index k."""
        m = 0 if k >= 0 else 1
        need = k + 1 if k >= 0 else -k
        prev = -1
        while self.count(self.seed, m) < need:
            c = self.count(self.seed, m)
            if m > 3 and c == prev:
                raise FixedPointConsistency("fixed point does not grow")
            prev = c
            m += 2
            if m > self.max_level:
                raise FixedPointConsistency(f"index {k} needs more than {self.max_level} levels")
        return m

    def _locate(self, k: int) -> tuple[int, int]:
        """(level, position inside phi^level(seed)) holding index k."""
        m = self.level_for(k)
        return m, (k if k >= 0 else self.count(self.seed, m) + k)

    # letters ----------------------------------------------------------------

    def letter_at(self, k: int):
        m, p = self._locate(k)
        a = self.seed
        while m > 0:
            for b in self._children(a, m):
                c = self.count(b, m - 1)
                if p < c:
                    a = b
                    break
                p -= c
            m -= 1
        return a

    def _emit(self, a, m, lo, hi, out):
        if m == 0:
            out.append(a)
            return
        for b in self._children(a, m):
            c = self.count(b, m - 1)
            if hi <= 0:
                return
            if lo < c:
                if lo <= 0 and hi >= c and c <= 64:
                    self._emit_all(b, m - 1, out)
                else:
                    self._emit(b, m - 1, max(lo, 0), min(hi, c), out)
            lo -= c
            hi -= c

    def _emit_all(self, a, m, out):
        if m == 0:
            out.append(a)
            return
        for b in self._children(a, m):
            self._emit_all(b, m - 1, out)

    def window(self, k_min: int, k_max: int) -> list:
        """u_{k_min} ... u_{k_max} (inclusive)."""
        if k_min > k_max:
            raise ValueError("k_min must not exceed k_max")
        out: list = []
        if k_min < 0:
            top = min(k_max, -1)
            m = self.level_for(k_min)
            n = self.count(self.seed, m)
            self._emit(self.seed, m, n + k_min, n + top + 1, out)
        if k_max >= 0:
            bottom = max(k_min, 0)
            m = self.level_for(k_max)
            self._emit(self.seed, m, bottom, k_max + 1, out)
        return out

    # positions --------------------------------------------------------------

    def _prefix_length(self, m: int, p: int) -> FieldElement:
        """Length of the first p letters of phi^m(seed)."""
        acc = self.ctx.zero
        a = self.seed
        while m > 0 and p > 0:
            for b in self._children(a, m):
                c = self.count(b, m - 1)
                if p < c:
                    a = b
                    break
                acc = acc + self.total_length(b, m - 1)
                p -= c
            else:
                return acc
            m -= 1
        if m == 0 and p > 0:
            acc = acc + self.system.length(a)
        return acc

    def y(self, k: int) -> FieldElement:
        """Left endpoint of the tile u_k, with y_0 = 0."""
        if k == 0:
            return self.ctx.zero
        if k > 0:
            m = self.level_for(k - 1)
            return self._prefix_length(m, k)
        m = self.level_for(k)
        n = self.count(self.seed, m)
        return self._prefix_length(m, n + k) - self.total_length(self.seed, m)

    def locate(self, x: FieldElement) -> int:
        """The index k with y_k <= x < y_{k+1}."""
        ctx = self.ctx
        if x.sign() >= 0:
            m = 0
            while (self.total_length(self.seed, m) - x).sign() <= 0:
                m += 2
                if m > self.max_level:
                    raise FixedPointConsistency("point beyond reachable levels")
            rel, offset = x, 0
        else:
            m = 1
            while (self.total_length(self.seed, m) + x).sign() < 0:
                m += 2
                if m > self.max_level:
                    raise FixedPointConsistency("point beyond reachable levels")
            rel = x + self.total_length(self.seed, m)
            offset = -self.count(self.seed, m)
        a, p = self.seed, 0
        acc = ctx.zero
        while m > 0:
            kids = self._children(a, m)
            for idx, b in enumerate(kids):
                L = self.total_length(b, m - 1)
                if idx == len(kids) - 1 or (rel - acc - L).sign() < 0:
                    a = b
                    break
                acc = acc + L
                p += self.count(b, m - 1)
            m -= 1
        return offset + p


class FixedPointView(TwoSidedFixedPoint):
    """Fixed point of psi with u_0 = (inf, 0) and u_{-1} = (0, inf)."""

    def __init__(self, ctx: BetaContext, max_level: int = 4000):
        system = psi_system(ctx)
        super().__init__(system, system.letter(INF, 0), max_level=max_level)
        if self.letter_at(-1) != system.letter(0, INF):
            raise FixedPointConsistency("u_-1 is not (0,inf)")


def fixed_point_view(ctx: BetaContext) -> FixedPointView:
    view = getattr(ctx, "_fixed_point_view", None)
    if view is None:
        view = ctx._fixed_point_view = FixedPointView(ctx)
    return view


def fixed_point_window(view: TwoSidedFixedPoint, k_min: int, k_max: int) -> list:
    return view.window(k_min, k_max)


def y_position(view: TwoSidedFixedPoint, k: int) -> FieldElement:
    return view.y(k)
