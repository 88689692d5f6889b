"""Independent reference computations used to derive expected values.

Nothing here imports the package: orbits and bases are recomputed with mpmath
at high precision, and closed forms are simplified with sympy.
"""
from __future__ import annotations

import mpmath
import sympy

mpmath.mp.dps = 120


def mp_orbit(beta, n: int):
    """[(a_k, t_k)] for k = 0..n by direct iteration of the (-beta)-map."""
    beta = mpmath.mpf(beta)
    t = -beta / (beta + 1)
    c = beta / (beta + 1)
    out = [(0, t)]
    for _ in range(n):
        a = int(mpmath.floor(c - beta * t))
        t = -beta * t - a
        out.append((a, t))
    return out


def mp_root(digits, lo, hi, iters: int = 300):
    """Bisection on sum a_k (-x)^-k + x/(x+1) over the given finite digit list."""
    lo, hi = mpmath.mpf(lo), mpmath.mpf(hi)

    def g(x):
        s = mpmath.mpf(0)
        y = -1 / x
        p = y
        for d in digits:
            s += d * p
            p *= y
        return s + x / (x + 1)

    glo = g(lo)
    for _ in range(iters):
        mid = (lo + hi) / 2
        gm = g(mid)
        if (gm > 0) == (glo > 0):
            lo, glo = mid, gm
        else:
            hi = mid
    return (lo + hi) / 2


def sympy_orbit(beta_expr, n: int):
    """Exact orbit values for an algebraic beta given as a sympy expression."""
    b = sympy.nsimplify(beta_expr)
    t = sympy.radsimp(-b / (b + 1))
    out = [(0, t)]
    for _ in range(n):
        a = int(sympy.floor(sympy.N(b / (b + 1) - b * t, 60)))
        t = sympy.radsimp(sympy.expand(-b * t - a))
        out.append((a, t))
    return out


def brute_z_integers(beta: int, lo: int, hi: int, depth: int):
    """For integer beta, all sums of admissible digit strings (digits 0..beta-1 scaled)."""
    vals = set()
    for n in range(depth + 1):
        for code in range(beta ** n):
            v, m, p = 0, code, 1
            for _ in range(n):
                v += (m % beta) * p
                m //= beta
                p *= -beta
            if lo <= v <= hi:
                vals.add(v)
    return sorted(vals)
