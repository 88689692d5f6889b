from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from negbeta.named import named_context
from negbeta.numeric import make_algebraic, poly_eval
from negbeta.orbit import BetaContext, is_yrrap
from negbeta.sequences import (SIGMA1, SIGMA2, DigitSequence, parse_sequence, prop11_sequence,
                               prop12_sequence, prop13_sequence)
from negbeta.solver import (PreconditionFailed, alt_compare, alt_compare_strict, first_mismatch,
                            residual, series_polynomial, solve_beta, validate_admissibility,
                            validate_expansion)
from oracles import mp_root

TWO_ONE_ZERO = "2 (1 0)^"


def test_alt_compare_examples():
    a = parse_sequence(TWO_ONE_ZERO)
    assert alt_compare(a, a, 100, x_shift=1) == "less"
    assert alt_compare(a, a, 100) == "equal_up_to_horizon"
    assert not alt_compare_strict(a, a, 100)


def test_alt_compare_sign_rule():
    # first difference at p = 0 (sign +) and at p = 1 (sign -)
    assert alt_compare([1, 5], [2, 5], 2) == "less"
    assert alt_compare([2, 4], [2, 5], 2) == "greater"
    assert alt_compare_strict([0, 5], [2, 5], 2)
    assert not alt_compare_strict([1, 5], [2, 5], 2)


def test_strict_order_on_two_one_zero():
    a = parse_sequence(TWO_ONE_ZERO)
    # shift by 2 gives 0 1 0 1 ...: first difference 0 vs 2 at p = 0, so strictly below
    assert alt_compare_strict(a, a, 100, x_shift=2)
    # shift by 3 gives 1 0 1 0 ...: difference -1 only, not strict
    assert not alt_compare_strict(a, a, 100, x_shift=3)


def test_morphic_comparisons():
    for k in (1, 2, 3):
        w3 = SIGMA2.length((3,), k)
        seq = prop13_sequence()
        digits = seq.prefix(4 * w3 + 10)
        # find a later occurrence of sigma2^k(3) followed by 2
        block = digits[:w3]
        starts = [n for n in range(1, len(digits) - w3) if digits[n:n + w3] == block
                  and digits[n + w3] == 2]
        assert starts and digits[w3] == 1
        assert alt_compare(seq, seq, w3 + 1, x_shift=starts[0]) == "less"
    for k in (1, 2):
        w3 = SIGMA1.length((3,), k)
        seq = prop12_sequence()
        digits = seq.prefix(6 * w3 + 10)
        block = digits[:w3]
        starts = [n for n in range(1, len(digits) - w3) if digits[n:n + w3] == block
                  and digits[n + w3] == 2]
        assert starts and digits[w3] == 0
        assert alt_compare_strict(seq, seq, w3 + 1, x_shift=starts[0])


def test_admissibility_reports():
    r = validate_admissibility(parse_sequence(TWO_ONE_ZERO), horizon=500)
    assert r.shift_condition == "pass" and r.zero_condition == "fail" and r.zero_failure == 3
    for seq in (prop12_sequence(), prop11_sequence()):
        r = validate_admissibility(seq, horizon=3000)
        assert r.shift_pass and r.zero_pass, r.summary()
    bad = validate_admissibility(parse_sequence("2 (3)^"), horizon=50)
    assert bad.shift_condition == "fail" and bad.shift_failure == 1


def test_series_polynomial_closed_form():
    assert poly_eval(series_polynomial((), (3,)), 3) == 0
    assert poly_eval(series_polynomial((2,), (1, 0)), 2) == 0
    # (2 1)^ gives a multiple of x^2 - 3x + 1
    b = solve_beta(parse_sequence("(2 1)^"))
    assert b.minimal_polynomial == (1, -3, 1)


def test_solve_periodic_examples():
    b = solve_beta(parse_sequence(TWO_ONE_ZERO))
    assert b.is_rational and b.rational_value == 2
    a = parse_sequence(TWO_ONE_ZERO)
    assert not validate_expansion(a, b)
    assert BetaContext(b).digits(8) == [2] * 8
    assert validate_expansion(parse_sequence("(2)^"), b)
    gm = solve_beta(parse_sequence("(2 1)^"))
    assert gm == make_algebraic((1, -3, 1), (2, 3))
    assert validate_expansion(parse_sequence("(2 1)^"), gm, 200)
    assert solve_beta(parse_sequence("(3)^")).rational_value == 3


def test_precondition():
    with pytest.raises(PreconditionFailed):
        solve_beta(parse_sequence("(1)^"))
    with pytest.raises(PreconditionFailed):
        solve_beta(parse_sequence("2 (3)^"))


@pytest.mark.parametrize("name,expected", [("prop11", "3.86166884744713304957521607115"),
                                           ("prop12", "3.74204760088514294063406361079"),
                                           ("prop13", "3.60615907481008668970061856245")])
def test_streamed_roots_against_mpmath(name, expected):
    ctx = named_context(name)
    lo, hi = ctx.base.current_bracket
    mpmath.mp.dps = 60
    ref = mpmath.mpf(expected)
    tol = Fraction(1, 10 ** 28)
    assert lo - tol <= Fraction(expected) <= hi + tol
    seq = {"prop11": prop11_sequence, "prop12": prop12_sequence, "prop13": prop13_sequence}[name]()
    assert abs(mp_root(seq.prefix(300), 3, 4, iters=200) - ref) < mpmath.mpf(10) ** -28


@pytest.mark.parametrize("name", ["prop11", "prop12", "prop13"])
def test_residual_and_expansion(name):
    ctx = named_context(name)
    seq = {"prop11": prop11_sequence, "prop12": prop12_sequence, "prop13": prop13_sequence}[name]()
    r = residual(seq, ctx.base)
    assert r.bound < Fraction(1, 10 ** 30)
    assert first_mismatch(seq, ctx, 128) is None


@pytest.mark.parametrize("name,coeffs,bracket", [("gm2", (1, -3, 1), (2, 3)),
                                                 ("two", (-2, 1), (2, 2))])
def test_round_trip_yrrap_bases(name, coeffs, bracket):
    ctx = named_context(name)
    v = is_yrrap(ctx)
    digits = ctx.digits(v.preperiod + v.period)
    seq = DigitSequence.periodic(digits[:v.preperiod], digits[v.preperiod:])
    assert solve_beta(seq) == make_algebraic(coeffs, bracket)


@given(st.lists(st.integers(0, 3), min_size=0, max_size=3), st.lists(st.integers(0, 3), min_size=1, max_size=3))
def test_admissible_periodic_sequences_are_expansions(prefix, period):
    seq = DigitSequence.periodic([3] + prefix, period)
    report = validate_admissibility(seq, horizon=60)
    if not (report.shift_pass and report.zero_pass):
        return
    beta = solve_beta(seq, check_horizon=60)
    assert validate_expansion(seq, beta, 40)


def test_residual_accepts_rational():
    r = residual(parse_sequence("(3)^"), 3)
    assert r.bound < Fraction(1, 10 ** 30)
