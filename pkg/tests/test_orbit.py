from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, strategies as st

from negbeta.named import named_context
from negbeta.numeric import RequiresAlgebraicMode
from negbeta.orbit import (INF, OutOfDomain, expansion_of_point, fmt_index, iota, iota_scale,
                           is_yrrap, parse_index, t_map)
from oracles import mp_orbit, sympy_orbit

SQRT5 = sympy.sqrt(5)


def _sympy_value(ctx, e, beta_expr):
    return sympy.nsimplify(sum(sympy.Rational(c.numerator, c.denominator) * beta_expr ** k
                               for k, c in enumerate(e.rep)))


def test_gm2_orbit_matches_closed_forms(gm2):
    beta = (3 + SQRT5) / 2
    ref = sympy_orbit(beta, 6)
    for n, (a, t) in enumerate(ref):
        assert gm2.a(n) == a
        assert sympy.simplify(_sympy_value(gm2, gm2.t(n), beta) - t) == 0
    assert gm2.t(2) == gm2.t(0)
    assert gm2.digits(6) == [2, 1, 2, 1, 2, 1]


def test_golden_orbit_hits_zero(golden):
    assert golden.t(1).is_zero()
    assert golden.t(1) == golden.t(INF)
    assert golden.digits(4) == [1, 0, 0, 0]


def test_integer_base_orbit(two):
    assert all(two.t(n) == two.field.rational(Fraction(-2, 3)) for n in range(6))
    assert two.digits(5) == [2] * 5


def test_special_indices(gm2):
    assert gm2.t(-1) == gm2.t_minus1
    assert gm2.t(INF).is_zero()
    assert gm2.a(0) == gm2.a(INF) == 0
    with pytest.raises(ValueError):
        gm2.t(-2)
    assert fmt_index(INF) == "inf" and parse_index("inf") == INF and parse_index("3") == 3


@pytest.mark.parametrize("name", ["prop11", "prop12", "prop13"])
def test_streamed_orbit_against_high_precision(name):
    ctx = named_context(name)
    lo, hi = ctx.base.current_bracket
    mpmath.mp.dps = 120
    ref = mp_orbit(mpmath.mpf(lo.numerator) / lo.denominator, 30)
    for n, (a, t) in enumerate(ref):
        assert ctx.a(n) == a
        assert abs(float(ctx.t(n)) - float(t)) < 1e-12


def test_t_map_domain(gm2):
    assert t_map(gm2, gm2.t0) == gm2.t(1)
    with pytest.raises(OutOfDomain):
        t_map(gm2, gm2.t_minus1)
    with pytest.raises(TypeError):
        t_map(gm2, 0.1)


def test_expansion_of_point(gm2, two):
    assert expansion_of_point(gm2, gm2.t0, 6) == gm2.digits(6)
    assert expansion_of_point(two, Fraction(-2, 3), 4) == [2, 2, 2, 2]
    assert expansion_of_point(two, 0, 3) == [0, 0, 0]


def test_yrrap_verdicts(gm2, golden, two):
    v = is_yrrap(gm2)
    assert v.is_yrrap and (v.preperiod, v.period) == (0, 2)
    assert is_yrrap(golden).is_yrrap
    assert (is_yrrap(two).preperiod, is_yrrap(two).period) == (0, 1)
    with pytest.raises(RequiresAlgebraicMode):
        is_yrrap(named_context("prop12"))


def test_iota_examples(gm2):
    # 1 lies outside the interval: scaled by (-beta)^-1 once, then mapped back
    assert iota_scale(gm2, 0) == 0 and iota(gm2, 0).is_zero()
    assert iota_scale(gm2, 1) >= 1
    x = iota(gm2, 1)
    assert (x - gm2.t0).sign() >= 0 and (x - gm2.t_minus1).sign() < 0


def _random_element(ctx, coeffs, den):
    K = ctx.field
    e = K.zero
    for k, c in enumerate(coeffs):
        e = e + K.rational(Fraction(c, den)) * ctx.beta ** k
    return e


@pytest.mark.parametrize("name", ["golden", "gm2", "two", "small13"])
@given(coeffs=st.lists(st.integers(-40, 40), min_size=1, max_size=3), den=st.integers(1, 9))
def test_conjugacy_algebraic(name, coeffs, den):
    ctx = named_context(name)
    x = _random_element(ctx, coeffs, den)
    assert iota(ctx, -ctx.beta * x) == t_map(ctx, iota(ctx, x))


@pytest.mark.parametrize("name", ["prop11", "prop12", "prop13"])
@given(num=st.integers(-500, 500), den=st.integers(1, 40))
def test_conjugacy_streamed(name, num, den):
    ctx = named_context(name)
    x = ctx.field.rational(Fraction(num, den))
    assert iota(ctx, -ctx.beta * x) == t_map(ctx, iota(ctx, x))
