import pytest
from hypothesis import given, strategies as st

from negbeta.antimorphism import (Letter, NotInAlphabet, fixed_point_view, format_word,
                                  parse_word, psi, psi_power, psi_system, psi_word)
from negbeta.named import named_context
from negbeta.orbit import INF

I = INF


def W(text):
    return tuple(parse_word(text))


def test_gm2_rules(gm2):
    # after identifying (1,inf) with (0,inf)
    assert psi(gm2, (I, 0)) == W("(0,inf)")
    assert psi(gm2, (0, I)) == W("(inf,0)(0,inf)(inf,0)(0,1)")
    assert psi(gm2, (0, 1)) == W("(0,inf)(inf,0)(0,1)")
    s = psi_system(gm2)
    assert s.letter(1, I) == s.letter(0, I)


def test_golden_rules(golden):
    s = psi_system(golden)
    assert s.letter(0, 1) == s.letter(0, I)
    assert psi(golden, (I, 0)) == W("(0,inf)")
    assert psi(golden, (0, I)) == W("(inf,0)(0,inf)")


def test_gm2_fixed_point_window(gm2):
    view = fixed_point_view(gm2)
    expect = W("(0,inf)(inf,0)(0,1)(0,inf)(inf,0)(0,inf)(inf,0)(0,1)(0,inf)"
               "(inf,0)(0,inf)(inf,0)(0,1)")
    assert tuple(view.window(-9, 3)) == expect
    assert all(view.letter_at(k) == expect[k + 9] for k in range(-9, 4))


def test_golden_fixed_point_window(golden):
    view = fixed_point_view(golden)
    assert tuple(view.window(-3, 4)) == W("(inf,0)(0,inf)(0,inf)(inf,0)(0,inf)(inf,0)(0,inf)(0,inf)")


def test_gap_words_of_gm2_split_at_z(gm2):
    A, B = W("(inf,0)(0,inf)"), W("(inf,0)(0,1)(0,inf)")
    assert psi_word(gm2, A) == A + B
    assert psi_word(gm2, B) == A + B + B


def test_letter_lengths(gm2):
    s = psi_system(gm2)
    b = gm2.beta
    assert s.length(s.letter(I, 0)) == 1 / (b + 1)
    assert s.length(s.letter(0, I)) == b / (b + 1)
    assert s.length(s.letter(0, 1)) == b - 2
    assert s.word_length(W("(inf,0)(0,inf)")) == gm2.one


def test_not_in_alphabet(gm2):
    s = psi_system(gm2)
    with pytest.raises(NotInAlphabet):
        s.letter(0, 0)  # (t_0, t_-1) straddles 0


def test_format_and_parse_round_trip():
    w = (Letter(I, 0), Letter(3, 7), Letter(0, I))
    assert format_word(w) == "(inf,0) (3,7) (0,inf)"
    assert tuple(parse_word(format_word(w))) == w


def test_y_positions(gm2):
    view = fixed_point_view(gm2)
    s = psi_system(gm2)
    assert view.y(0).is_zero()
    assert abs(float(view.y(-2)) + 1.3416407864998738) < 1e-12
    for k in range(-30, 30):
        assert view.y(k + 1) - view.y(k) == s.length(view.letter_at(k))
        assert view.locate(view.y(k)) == k


@pytest.mark.parametrize("name", ["golden", "gm2", "two", "prop11", "prop12", "prop13"])
def test_window_matches_explicit_powers(name):
    ctx = named_context(name)
    view = fixed_point_view(ctx)
    s = psi_system(ctx)
    seed = [(I, 0)]
    right = psi_power(ctx, seed, 6)
    left = psi_power(ctx, seed, 7)
    n_right, n_left = min(len(right), 400), min(len(left), 400)
    assert tuple(view.window(0, n_right - 1)) == right[:n_right]
    assert tuple(view.window(-n_left, -1)) == left[-n_left:]
    assert view.total_length(s.letter(I, 0), 6) == s.word_length(right)


@pytest.mark.parametrize("name", ["golden", "gm2", "prop11", "prop12", "prop13"])
@given(k=st.integers(-5000, 5000))
def test_scaling_law_on_fixed_point_letters(name, k):
    ctx = named_context(name)
    view = fixed_point_view(ctx)
    s = psi_system(ctx)
    u = view.letter_at(k)
    assert s.word_length(s.psi(u)) == ctx.beta * s.length(u)


@pytest.mark.parametrize("name", ["gm2", "prop12"])
@given(k=st.integers(-3000, 3000))
def test_locate_inverts_y(name, k):
    view = fixed_point_view(named_context(name))
    y = view.y(k)
    assert view.locate(y) == k
    mid = (y + view.y(k + 1)) / 2
    assert view.locate(mid) == k


def test_reachable_letters(gm2):
    s = psi_system(gm2)
    letters, closed = s.reachable([s.letter(I, 0)])
    assert closed and [str(u) for u in letters] == ["(inf,0)", "(0,inf)", "(0,1)"]
    cut, closed = psi_system(named_context("prop11")).reachable([Letter(I, 0)], limit=5)
    assert len(cut) == 5 and not closed
