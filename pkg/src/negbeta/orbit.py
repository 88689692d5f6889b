"""The (-beta)-transformation and the orbit of the left endpoint -beta/(beta+1)."""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from .numeric import (AlgebraicReal, FieldElement, RequiresAlgebraicMode, StreamedReal,
                      make_field)

#: The index symbol infinity.  Float infinity already obeys 2*inf = inf and inf -+ 1 = inf.
INF = math.inf


class OutOfDomain(ValueError):
    pass


def fmt_index(i) -> str:
    return "inf" if i == INF else str(int(i))


def parse_index(text: str):
    text = text.strip().lower()
    return INF if text in ("inf", "∞", "infinity") else int(text)


class BetaContext:
    """A base beta > 1 with its field and a memoized orbit table t_n, a_n.

    ``t(n)`` accepts n >= -1 and INF (t_{-1} = 1/(beta+1), t_inf = 0);
    ``a(n)`` accepts n >= 0 and INF (a_0 = a_inf = 0).
    """

    def __init__(self, base, name: str | None = None):
        if not isinstance(base, (AlgebraicReal, StreamedReal)):
            raise TypeError("base must be an AlgebraicReal or StreamedReal")
        self.base = base
        self.name = name
        self.field = make_field(base)
        self.mode = self.field.mode
        K = self.field
        self.beta = K.beta
        self.zero = K.zero
        self.one = K.one
        self.t_minus1 = K.inverse(self.beta + 1)
        self.t0 = -self.beta * self.t_minus1
        self.neg_beta_inv = K.inverse(-self.beta)
        self._t: list[FieldElement] = [self.t0]
        self._a: list[int] = [0]
        self._lock = threading.Lock()

    @property
    def algebraic(self) -> bool:
        return self.mode == "algebraic"

    def __repr__(self):
        return f"BetaContext({self.name or ''} beta~{float(self.base):.12g}, {self.mode})"

    # exact / certified comparisons ------------------------------------

    def is_zero(self, e: FieldElement) -> bool:
        """Certified zero test (formal in algebraic mode, separation in streamed mode)."""
        if e.is_zero():
            return True
        if self.algebraic:
            return False
        return e.sign() == 0

    def eq(self, x: FieldElement, y: FieldElement) -> bool:
        return self.field.equals(x, y)

    def elem(self, value) -> FieldElement:
        """Coerce ints, Fractions and FieldElements; reject floats (exactness is required)."""
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, (int, Fraction)):
            return self.field.rational(value)
        if isinstance(value, str):
            return self.field.rational(Fraction(value))
        raise TypeError(f"inexact value {value!r}; pass an int, Fraction or field element")

    # orbit ------------------------------------------------------------

    def _extend_to(self, n: int) -> None:
        if n < len(self._t):
            return
        with self._lock:
            target = max(n, 2 * len(self._t)) if self.algebraic else n
            while len(self._t) <= target:
                prev = self._t[-1]
                digit = (-self.t0 - self.beta * prev).floor()
                self._t.append(-self.beta * prev - digit)
                self._a.append(digit)

    def orbit_extend(self, n: int) -> tuple[FieldElement, int]:
        if n < 0:
            raise ValueError("orbit index must be >= 0")
        self._extend_to(n)
        return self._t[n], self._a[n]

    def t(self, n) -> FieldElement:
        if n == INF:
            return self.zero
        if n == -1:
            return self.t_minus1
        if n < -1:
            raise ValueError(f"no orbit value t_{n}")
        self._extend_to(n)
        return self._t[n]

    def a(self, n) -> int:
        if n == INF or n == 0:
            return 0
        if n < 0:
            raise ValueError(f"no digit a_{n}")
        self._extend_to(n)
        return self._a[n]

    def digits(self, n: int) -> list[int]:
        """[a_1, ..., a_n]."""
        self._extend_to(n)
        return self._a[1:n + 1]

    @property
    def orbit_length(self) -> int:
        return len(self._t)


def in_domain(ctx: BetaContext, x: FieldElement) -> bool:
    return (x - ctx.t0).sign() >= 0 and (x - ctx.t_minus1).sign() < 0


def in_open_domain(ctx: BetaContext, x: FieldElement) -> bool:
    return (x - ctx.t0).sign() > 0 and (x - ctx.t_minus1).sign() < 0


def digit_at(ctx: BetaContext, x: FieldElement) -> int:
    return (-ctx.t0 - ctx.beta * x).floor()


def t_map(ctx: BetaContext, x) -> FieldElement:
    """T(x) = -beta x - floor(beta/(beta+1) - beta x) on [t_0, t_{-1})."""
    x = ctx.elem(x)
    if not in_domain(ctx, x):
        raise OutOfDomain(f"{x.exact_str()} is outside [t_0, t_-1)")
    return -ctx.beta * x - digit_at(ctx, x)


def orbit_extend(ctx: BetaContext, n: int) -> tuple[FieldElement, int]:
    return ctx.orbit_extend(n)


def expansion_of_point(ctx: BetaContext, x, n: int) -> list[int]:
    """First ``n`` digits of the (-beta)-expansion of x in [t_0, t_{-1})."""
    x = ctx.elem(x)
    if not in_domain(ctx, x):
        raise OutOfDomain(f"{x.exact_str()} is outside [t_0, t_-1)")
    out = []
    for _ in range(n):
        d = digit_at(ctx, x)
        out.append(d)
        x = -ctx.beta * x - d
    return out


def iota_scale(ctx: BetaContext, x) -> int:
    """Smallest n >= 0 with (-beta)^-n x strictly inside (t_0, t_{-1})."""
    x = ctx.elem(x)
    n = 0
    while not in_open_domain(ctx, x):
        x = x * ctx.neg_beta_inv
        n += 1
    return n


def iota(ctx: BetaContext, x) -> FieldElement:
    """Normalize x into the fundamental interval: T^n((-beta)^-n x), minimal interior n."""
    x = ctx.elem(x)
    n = 0
    while not in_open_domain(ctx, x):
        x = x * ctx.neg_beta_inv
        n += 1
    for _ in range(n):
        x = -ctx.beta * x - digit_at(ctx, x)
    return x


@dataclass(frozen=True)
class YrrapVerdict:
    is_yrrap: bool
    bound: int
    preperiod: int | None = None
    period: int | None = None

    def __str__(self):
        if self.is_yrrap:
            return f"yes: t_{self.preperiod + self.period} = t_{self.preperiod} (preperiod {self.preperiod}, period {self.period})"
        return f"no repetition up to n = {self.bound}"


def is_yrrap(ctx: BetaContext, bound: int = 1000) -> YrrapVerdict:
    """Detect a repetition t_m = t_n, m < n <= bound, by exact comparison."""
    if not ctx.algebraic:
        raise RequiresAlgebraicMode("orbit repetition needs exact equality")
    seen = {}
    for n in range(bound + 1):
        rep = ctx.t(n).rep
        if rep in seen:
            m = seen[rep]
            return YrrapVerdict(True, bound, m, n - m)
        seen[rep] = n
    return YrrapVerdict(False, bound)
