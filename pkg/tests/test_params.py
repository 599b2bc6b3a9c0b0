from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from convex_sumset.params import (WARN_NO_BLOCK_PAIR, WARN_NO_BLOCKS, WARN_OVERLAP, ScaledInt,
                                  cmp, make_params, parse_rational)

from conftest import rat_alpha, rat_gamma


@pytest.mark.parametrize("n, theta, expected", [
    (2, "999/1000", (8000, 2000, 1, 800)),
    (1, 1, (1000, 1000, 1, 100)),
])
def test_make_params_examples(n, theta, expected):
    p = make_params(n, theta, 4)
    assert (p.D, p.alpha_scaled, p.gamma_scaled, p.eps_scaled) == expected
    # clearing oracle
    assert rat_alpha(n) * p.D == p.alpha_scaled
    assert rat_gamma(n) * p.D == p.gamma_scaled
    assert Fraction(1, 10) * p.D == p.eps_scaled


@pytest.mark.parametrize("args", [(0, 1, 4), (-3, 1, 4), (5, 0, 4), (5, "3/2", 4),
                                  (5, "-1/2", 4), (5, 1, 0), (5, "abc", 4)])
def test_make_params_rejects(args):
    with pytest.raises(ValueError):
        make_params(*args)


def test_float_theta_refused():
    with pytest.raises(TypeError):
        make_params(10, 0.999, 4)


def test_decimal_theta_is_exact():
    assert make_params(10, "0.999").theta == Fraction(999, 1000)
    assert parse_rational("7/8") == Fraction(7, 8)


@pytest.mark.parametrize("n", range(1, 60))
def test_scaling_identities(n):
    p = make_params(n, 1, 4)
    assert p.alpha_scaled * n * n == p.D
    assert p.gamma_scaled * 1000 * n**3 == p.D
    assert p.eps_scaled * 10 == p.D


def test_block_indices_and_warnings():
    assert make_params(4000).block_indices() == [3996, 4000]
    assert make_params(4000).warnings == ()
    assert make_params(64, "7/8").block_indices() == [56, 60, 64]
    assert WARN_NO_BLOCK_PAIR in make_params(100).warnings
    assert WARN_NO_BLOCKS in make_params(2, 1, 4).warnings
    assert WARN_OVERLAP in make_params(64, "1/2").warnings
    # theta = stride/6 exactly is still flagged
    assert WARN_OVERLAP in make_params(64, "2/3").warnings


def test_cmp_examples():
    D = 8000
    assert cmp(ScaledInt(5, D), ScaledInt(7, D)) == -1
    assert cmp(ScaledInt(-3, D), ScaledInt(-3, D)) == 0
    assert cmp(ScaledInt(10001, D), ScaledInt(6000, D)) == 1


def test_cmp_scale_mismatch():
    with pytest.raises(ValueError):
        cmp(ScaledInt(1, 8000), ScaledInt(1, 1000))
    with pytest.raises(ValueError):
        ScaledInt(1, 8000) < ScaledInt(1, 1000)


ints = st.integers(min_value=-10**30, max_value=10**30)


@given(ints, ints, ints, st.integers(min_value=1, max_value=10**12))
def test_cmp_matches_rational_order(a, b, c, D):
    x, y, z = ScaledInt(a, D), ScaledInt(b, D), ScaledInt(c, D)
    ref = (Fraction(a, D) > Fraction(b, D)) - (Fraction(a, D) < Fraction(b, D))
    assert cmp(x, y) == ref
    assert cmp(y, x) == -ref
    if cmp(x, y) <= 0 and cmp(y, z) <= 0:
        assert cmp(x, z) <= 0
    assert (x - y).value == x.value - y.value
