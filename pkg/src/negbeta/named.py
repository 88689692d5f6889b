"""Registered example bases."""
from __future__ import annotations

from fractions import Fraction

from .numeric import make_algebraic
from .orbit import BetaContext
from .sequences import prop11_sequence, prop12_sequence, prop13_sequence

# name -> (coefficients low-to-high, bracket, description)
ALGEBRAIC = {
    "golden": ((-1, -1, 1), ("3/2", "17/10"), "beta^2 = beta + 1"),
    "gm2": ((1, -3, 1), ("5/2", "27/10"), "beta^2 = 3 beta - 1"),
    "two": ((-2, 1), ("3/2", "5/2"), "beta = 2"),
    "small13": ((-13, 10), ("5/4", "7/5"), "beta = 13/10"),
    "small15": ((-3, 2), ("7/5", "8/5"), "beta = 3/2"),
}

STREAMED = {
    "prop11": (prop11_sequence, "3 0 1 0^3 1 0^5 1 ..."),
    "prop12": (prop12_sequence, "fixed point of 3>30032, 2>2, 0>00"),
    "prop13": (prop13_sequence, "fixed point of 3>31232, 2>2, 1>1"),
}

NAMES = tuple(ALGEBRAIC) + tuple(STREAMED)

_cache: dict[tuple, BetaContext] = {}


def named_base(name: str, precision_cap: int | None = None):
    if name in ALGEBRAIC:
        coeffs, (lo, hi), _ = ALGEBRAIC[name]
        return make_algebraic(coeffs, (Fraction(lo), Fraction(hi)))
    if name in STREAMED:
        from .solver import solve_beta, target_width_for
        kwargs = {} if precision_cap is None else {"precision_cap": precision_cap,
                                                   "target_width": target_width_for(precision_cap)}
        return solve_beta(STREAMED[name][0](), **kwargs)
    raise KeyError(f"unknown named base {name!r}; choose from {', '.join(NAMES)}")


def named_context(name: str, precision_cap: int | None = None, fresh: bool = False) -> BetaContext:
    """Shared context per name (orbit and fixed-point caches are reused)."""
    key = (name, precision_cap)
    if fresh or key not in _cache:
        ctx = BetaContext(named_base(name, precision_cap), name=name)
        if fresh:
            return ctx
        _cache[key] = ctx
    return _cache[key]


def named_sequence(name: str):
    return STREAMED[name][0]()
