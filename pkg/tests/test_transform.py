from fractions import Fraction

import pytest

from lfwp._rand import random_stepfn, rng_from_seed
from lfwp.cyclotomic import CycNum
from lfwp.localfield import KElem, chi_at, u_index
from lfwp.stepspace import (
    StepFn,
    Window,
    bracket,
    bracket_bound,
    char_on_D,
    coset_rep,
    dilate_translate,
    fourier,
    fourier_coeff_D,
    fourier_naive,
    indicator,
    inner_product,
    inverse_fourier,
    orthonormality_criterion,
    reps_of_D_mod,
)

WINDOWS = {"q2": (2, 1), "q3": (1, 1), "q4": (1, 1), "q5": (1, 1), "q9": (1, 0)}


def test_indicator_transforms(any_params):
    params = any_params
    d = indicator(params, 0)
    assert fourier(d) == d
    expected = indicator(params, -1).scale(Fraction(1, params.q))
    assert fourier(indicator(params, 1)) == expected


def test_fast_transform_matches_naive(any_params):
    params = any_params
    J, k = WINDOWS[f"q{params.q}"]
    rng = rng_from_seed(101)
    f = random_stepfn(rng, params, J, k)
    g = f.scale(CycNum.half_power(params.p, 1))
    for fn in (f, g):
        assert fourier(fn) == fourier_naive(fn, -1)
        assert inverse_fourier(fn) == fourier_naive(fn, +1)


def test_object_path_fallback(q2):
    tiny = Fraction(1, 2**40 + 1)
    f = random_stepfn(rng_from_seed(7), q2, 1, 2)
    assert fourier(f.scale(tiny)) == fourier(f).scale(tiny)
    assert inverse_fourier(f.scale(tiny)) == inverse_fourier(f).scale(tiny)


def test_round_trip(q2, q3, q4):
    for params in (q2, q3, q4):
        rng = rng_from_seed(13)
        f = random_stepfn(rng, params, 1, 1)
        assert inverse_fourier(fourier(f)) == f
        assert fourier(inverse_fourier(f)) == f


def test_window_swap(q3):
    f = random_stepfn(rng_from_seed(19), q3, 2, 1)
    assert fourier(f).window == Window(1, 2)


def test_dilation_covariance(q2, q3):
    # fourier of q^{j/2} f(t^{-j} x - u(k)) is
    # q^{-j/2} conj(chi_k(t^j xi)) fhat(t^j xi)
    for params in (q2, q3):
        rng = rng_from_seed(23)
        f = random_stepfn(rng, params, 1, 1)
        fh = fourier(f)
        for j in (-1, 0, 1, 2):
            for k in (0, 1, 3):
                lhs = fourier(dilate_translate(f, j, k))
                amp = CycNum.half_power(params.p, -params.c * j)
                uk = u_index(params, k)
                win = lhs.window
                for m in range(params.q ** win.length):
                    xi = coset_rep(params, win, m)
                    rhs = amp * chi_at(uk, xi.shift(j)).conj() * fh.eval(xi.shift(j))
                    assert lhs.eval(xi) == rhs


def test_plancherel(q2, q3):
    for params in (q2, q3):
        rng = rng_from_seed(29)
        for _ in range(50):
            f = random_stepfn(rng, params, 1, 1)
            g = random_stepfn(rng, params, 1, 1)
            assert inner_product(f, g) == inner_product(fourier(f), fourier(g))


def test_fourier_coeff_of_indicator(q2, q3):
    for params in (q2, q3):
        d = indicator(params, 0)
        assert fourier_coeff_D(d, 0) == CycNum.one(params.p)
        for n in range(1, params.q ** 2):
            assert fourier_coeff_D(d, n).is_zero


def test_fourier_coeff_picks_out_character(q2):
    f = char_on_D(q2, 3)
    for n in range(8):
        expect = CycNum.one(2) if n == 3 else CycNum.zero(2)
        assert fourier_coeff_D(f, n) == expect


def test_fourier_coeff_vanishes_beyond_constancy(q3):
    f = random_stepfn(rng_from_seed(31), q3, 0, 1)
    for n in (3, 4, 9, 10):
        assert fourier_coeff_D(f, n).is_zero
    with pytest.raises(ValueError):
        fourier_coeff_D(random_stepfn(rng_from_seed(31), q3, 1, 1), 0)


def test_fourier_coeff_parseval(q2, q3):
    # sum over n < q^k of |coeff(n)|^2 equals the norm on D
    for params in (q2, q3):
        rng = rng_from_seed(37)
        for _ in range(20):
            f = random_stepfn(rng, params, 0, 2)
            total = CycNum.zero(params.p)
            for n in range(params.q ** 2):
                total = total + fourier_coeff_D(f, n).abs_sq()
            assert total == inner_product(f, f)


def test_bracket_of_indicator(q2):
    d = indicator(q2, 0)
    for xi in reps_of_D_mod(q2, 2):
        assert bracket(d, d, xi, 8) == CycNum.one(2)


def test_bracket_positivity_and_periodicity(q2, q3):
    for params in (q2, q3):
        rng = rng_from_seed(43)
        f = random_stepfn(rng, params, 1, 1)
        g = random_stepfn(rng, params, 1, 1)
        xi = coset_rep(params, Window(1, 1), 3)
        base = bracket(f, g, xi, 64)
        assert bracket(f, f, xi, 64).as_rational() >= 0
        for m in range(params.q ** 2):
            assert bracket(f, g, xi + u_index(params, m), 64) == base


def test_bracket_bound_enforced(q2):
    f = indicator(q2, 1)
    xi = KElem.zero(q2)
    assert bracket_bound(f, f, xi) == 2
    with pytest.raises(ValueError):
        bracket(f, f, xi, 1)


def test_orthonormality_criterion(q2, q3):
    for params in (q2, q3):
        d = indicator(params, 0)
        assert orthonormality_criterion(d) == (True, None)
        ok, witness = orthonormality_criterion(d.scale(2))
        assert not ok and witness is not None and witness.is_zero
        ok2, _ = orthonormality_criterion(indicator(params, -1))
        assert not ok2
        with pytest.raises(ValueError):
            orthonormality_criterion(indicator(params, 1), n_max=1)
