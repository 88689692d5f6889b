"""Acceptance criteria 1-11, each timed on fresh contexts.

Every criterion prints one ``criterion N: PASS|FAIL`` line.  Run with ``pytest -s`` to see
them inline; the terminal summary repeats them.  ``python3 tests/test_acceptance.py`` runs
the same checks without pytest.
"""
from __future__ import annotations

import random
import sys
import time
from fractions import Fraction

import pytest

from negbeta.antimorphism import fixed_point_view, parse_word, psi, psi_system
from negbeta.diagnostics import (decay_witnesses, large_gap_witnesses, letter_window_gaps,
                                 small_gap_witnesses)
from negbeta.named import named_context, named_sequence
from negbeta.numeric import make_algebraic
from negbeta.orbit import INF, BetaContext, iota, t_map
from negbeta.pointset import (brute_force_oracle, derive_gap_morphism, gap_labels, z_enumerate)
from negbeta.sequences import SIGMA1, parse_sequence, prop11_sequence
from negbeta.solver import residual, solve_beta, validate_expansion

RESULTS: list[str] = []
ALL_BASES = ("golden", "gm2", "two", "small13", "small15", "prop11", "prop12", "prop13")


def fresh(name):
    return named_context(name, fresh=True)


def W(text):
    return tuple(parse_word(text))


def report(n, ok, elapsed, limit, detail):
    within = limit is None or elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    budget = "" if limit is None else f" (limit {limit:g} s)"
    line = f"criterion {n:>2}: {status}  {elapsed:6.2f} s{budget}  {detail}"
    RESULTS.append(line)
    print(line)
    return status == "PASS"


def c1():
    ctx = fresh("gm2")
    b = ctx.beta
    s = psi_system(ctx)
    rules = (psi(ctx, (INF, 0)) == W("(0,inf)")
             and psi(ctx, (0, INF)) == W("(inf,0)(0,inf)(inf,0)(0,1)")
             and psi(ctx, (0, 1)) == W("(0,inf)(inf,0)(0,1)")
             and s.letter(1, INF) == s.letter(0, INF))
    gm = derive_gap_morphism(ctx)
    morph = gm.closed and gm.format_rules() == "A -> A B; B -> A B B"
    lengths = gm.lengths["A"] == ctx.one and gm.lengths["B"] == b - 1
    win = z_enumerate(ctx, (-b ** 3, b ** 2))
    labels = gap_labels(win, gm)
    fig = len(win.z_points) == 19 and labels == "ABBABABBABBABABBAB"
    return rules and morph and lengths and fig, f"19 points, gaps {labels}"


def c2():
    ctx = fresh("golden")
    b = ctx.beta
    rules = psi(ctx, (INF, 0)) == W("(0,inf)") and psi(ctx, (0, INF)) == W("(inf,0)(0,inf)")
    gm = derive_gap_morphism(ctx)
    morph = gm.closed and gm.format_rules() == "A -> A B; B -> A"
    # expected points, written as m + n*b
    expect = [(-1, -2), (0, -2), (1, -2), (0, -1), (1, -1), (0, 0), (1, 0), (2, 0), (1, 1), (2, 1),
              (3, 1), (2, 2), (3, 2), (2, 3)]
    pts = z_enumerate(ctx, (-b ** 3, b ** 4)).z_points
    same = pts == [ctx.field.rational(m) + n * b for m, n in expect]
    return rules and morph and same, f"{len(pts)} points"


def c3():
    ctx = fresh("two")
    ints = [ctx.field.rational(k) for k in range(-20, 21)]
    pipe = z_enumerate(ctx, (-20, 20)).z_points
    oracle = brute_force_oracle(ctx, None, (-20, 20))
    return pipe == ints and list(oracle) == ints and not oracle.warnings, "41 integers both routes"


def c4():
    ok = True
    for name in ("small13", "small15"):
        ctx = fresh(name)
        ok &= z_enumerate(ctx, (-10, 10)).z_points == [ctx.zero]
        ok &= list(brute_force_oracle(ctx, None, (-10, 10))) == [ctx.zero]
    return ok, "{0} for beta = 1.3 and 1.5"


def c5():
    ctxs = [fresh("golden"), fresh("gm2"), fresh("two"),
            BetaContext(solve_beta(prop11_sequence()), name="prop11")]
    total, bad, warnings = 0, [], 0
    for ctx in ctxs:
        for m in range(1, 6):
            iv = (-ctx.beta ** m, ctx.beta ** m)
            oracle = brute_force_oracle(ctx, None, iv)
            warnings += len(oracle.warnings)
            pts = z_enumerate(ctx, iv).z_points
            total += len(pts)
            if pts != list(oracle):
                bad.append(f"{ctx.name}^{m}")
    return not bad and warnings == 0, f"{total} points compared, mismatches {bad}, warnings {warnings}"


def c6():
    rng = random.Random(20261016)
    letters_checked, conj, failures = 0, 0, []
    for name in ALL_BASES:
        ctx = fresh(name)
        s = psi_system(ctx)
        view = fixed_point_view(ctx)
        for u in set(view.window(-5000, 4999)):
            letters_checked += 1
            if s.word_length(s.psi(u)) != ctx.beta * s.length(u):
                failures.append(f"{name} scaling {u}")
        K = ctx.field
        for _ in range(1000):
            x = (K.rational(Fraction(rng.randint(-400, 400), rng.randint(1, 30)))
                 + K.rational(Fraction(rng.randint(-20, 20), rng.randint(1, 30))) * ctx.beta)
            conj += 1
            if iota(ctx, -ctx.beta * x) != t_map(ctx, iota(ctx, x)):
                failures.append(f"{name} conjugacy {x.exact_str()}")
    return not failures, f"{letters_checked} letters, {conj} elements, failures {failures[:3]}"


def c7():
    two_one_zero = parse_sequence("2 (1 0)^")
    b = solve_beta(two_one_zero)
    ok = b.is_rational and b.rational_value == 2
    ok &= not validate_expansion(two_one_zero, b)
    ok &= BetaContext(b).digits(40) == [2] * 40
    ok &= solve_beta(parse_sequence("(2 1)^")) == make_algebraic((1, -3, 1), (2, 3))
    bounds = []
    for name in ("prop11", "prop12", "prop13"):
        r = residual(named_sequence(name), solve_beta(named_sequence(name)))
        bounds.append(float(r.bound))
        ok &= r.bound < Fraction(1, 10 ** 30)
    return ok, "residual bounds " + ", ".join(f"{x:.1e}" for x in bounds)


def c8():
    ctx = fresh("prop11")
    b = ctx.beta
    ws = small_gap_witnesses(ctx, (1, 2, 3))
    ok = len(ws) == 3
    for w in ws:
        k = w.k
        idx = k * (k - 1) + 1
        bound = (b ** 2 + b ** 3) / (b ** (2 * k) * (b + 1))
        ok &= w.gap == ctx.t(idx) - ctx.t(idx + 1)
        ok &= (w.gap - bound).sign() < 0
        ok &= (w.window_min_gap - w.gap).sign() <= 0
    mins = [w.window_min_gap for w in ws]
    ok &= all((q - p).sign() < 0 for p, q in zip(mins, mins[1:]))
    return ok, "window min gaps " + ", ".join(m.decimal(6) for m in mins)


def c9():
    ctx = fresh("prop13")
    ws = large_gap_witnesses(ctx, ks=(1, 2, 3))
    third = ctx.field.rational(3) / ctx.beta
    ok = [w.level for w in ws] == [5, 13, 29]
    # level 29 = |sigma_2^3(3)|; the gap sits inside that window
    ok &= (ws[2].window_max_gap - third).sign() > 0 and (ws[2].span - third).sign() > 0
    maxes = [w.window_max_gap for w in ws]
    ok &= all((q - p).sign() > 0 for p, q in zip(maxes, maxes[1:]))
    return ok, "window max gaps " + ", ".join(m.decimal(6) for m in maxes) + f" vs 3/b = {third.decimal(6)}"


def c10():
    ctx = fresh("prop12")
    ws = decay_witnesses(ctx, named_sequence("prop12"), SIGMA1, (1, 2, 3))
    ok = all(w.n % 2 == 1 and w.t.sign() > 0 and w.digits_ok for w in ws)
    ok &= all((q.t - p.t).sign() < 0 for p, q in zip(ws, ws[1:]))
    g = letter_window_gaps(ctx, -5000, 4999)
    # regression constant recorded on the first run
    ok &= g.letters == 10000 and (g.min_gap - 1).sign() >= 0
    return ok, (f"t_n at n = {[w.n for w in ws]}: " + ", ".join(w.t.decimal(8) for w in ws)
                + f"; min gap over 10000 letters = {g.min_gap.decimal(6)}")


def c11():
    sizes = {}
    ok = True
    for name in ("golden", "gm2", "two"):
        g = derive_gap_morphism(fresh(name), max_letters=8)
        sizes[name] = len(g.words)
        ok &= g.closed
    g = derive_gap_morphism(fresh("prop11"), max_letters=64)
    ok &= not g.closed
    return ok, f"closed sizes {sizes}; prop11 open after {len(g.words)} letters"


CRITERIA = [(1, c1, 5), (2, c2, 5), (3, c3, 2), (4, c4, 2), (5, c5, 60), (6, c6, None),
            (7, c7, 30), (8, c8, None), (9, c9, None), (10, c10, None), (11, c11, None)]


def run(n, fn, limit):
    start = time.perf_counter()
    ok, detail = fn()
    return report(n, ok, time.perf_counter() - start, limit, detail)


@pytest.mark.parametrize("n,fn,limit", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(n, fn, limit):
    assert run(n, fn, limit), RESULTS[-1]


if __name__ == "__main__":
    passed = [run(*c) for c in CRITERIA]
    sys.exit(0 if all(passed) else 1)
