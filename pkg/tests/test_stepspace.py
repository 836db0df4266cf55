from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lfwp._rand import random_stepfn, rng_from_seed
from lfwp.cyclotomic import CycNum, root_of_unity
from lfwp.localfield import KElem, chi_n, preset, u_index
from lfwp.stepspace import (
    StepFn,
    Window,
    char_on_D,
    character_gram,
    coset_index,
    coset_rep,
    dilate_translate,
    gram,
    indicator,
    inner_product,
    make_step,
    norm_sq,
    reps_of_D_mod,
    translate,
)


def test_window_validation():
    with pytest.raises(ValueError):
        Window(-1, 0)
    with pytest.raises(ValueError):
        Window(0, -2)
    assert Window(1, 2).length == 3


def test_coset_reps_enumerate_quotient(q2):
    reps = reps_of_D_mod(q2, 2)
    assert len(reps) == 4
    assert len(set(reps)) == 4
    assert all(x.is_integral for x in reps)
    win = Window(0, 2)
    for m, x in enumerate(reps):
        assert coset_index(q2, win, x) == m


def test_coset_rep_digit_order(q2):
    win = Window(1, 1)
    assert coset_rep(q2, win, 2) == KElem.prime(q2, -1)
    assert coset_rep(q2, win, 1) == KElem.one(q2)
    with pytest.raises(ValueError):
        coset_rep(q2, win, 4)
    assert coset_index(q2, Window(0, 1), KElem.prime(q2, -1)) is None


def test_indicator_integrals(q2, q3):
    for params in (q2, q3):
        assert indicator(params, 0).integral() == CycNum.one(params.p)
        assert indicator(params, 1).integral() == CycNum.from_rational(
            params.p, Fraction(1, params.q))


def test_make_step_zero_collapses(q2):
    z = CycNum.zero(2)
    f = make_step(q2, Window(2, 1), [z] * 8)
    assert f.is_zero
    assert f.window == Window(0, 0)
    assert f == StepFn.zero(q2)


def test_canonical_merge(q2):
    one = CycNum.one(2)
    zero = CycNum.zero(2)
    assert StepFn(q2, Window(0, 2), [one] * 4) == indicator(q2, 0)
    assert StepFn(q2, Window(1, 1), [one, one, zero, zero]) == indicator(q2, 0)
    mixed = StepFn(q2, Window(0, 2), [one, one, zero, zero])
    assert mixed.window == Window(0, 1)


def test_eval_is_locally_constant(q3):
    rng = rng_from_seed(5)
    f = random_stepfn(rng, q3, 1, 1)
    for m in range(9):
        x = coset_rep(q3, Window(1, 1), m)
        assert f.eval(x + KElem.prime(q3, 1)) == f.eval(x)
        assert f.eval(x + KElem.prime(q3, 7)) == f.eval(x)
    assert f.eval(KElem.prime(q3, -3)).is_zero


def test_dilate_one_level_down(any_params):
    params = any_params
    q, p, c = params.q, params.p, params.c
    f = dilate_translate(indicator(params, 0), -1, 0)
    amp = CycNum.half_power(p, -c)
    assert f.eval(KElem.zero(params)) == amp
    assert f.eval(u_index(params, 1)) == amp
    assert f.eval(u_index(params, q)).is_zero
    assert f.window.J == 1
    assert inner_product(f, f) == CycNum.one(p)


def test_translate_routes_agree(q2):
    base = indicator(q2, 0)
    a = dilate_translate(base, 0, 1)
    b = indicator(q2, 0, shift=u_index(q2, 1))
    c = translate(base, 1)
    assert a == b == c
    assert a.eval(u_index(q2, 1)) == CycNum.one(2)
    assert a.eval(KElem.zero(q2)).is_zero


def test_dilation_preserves_norm(q2, q3, q4):
    for params in (q2, q3, q4):
        rng = rng_from_seed(17)
        f = random_stepfn(rng, params, 1, 1)
        base = norm_sq(f)
        for j in (-1, 0, 1, 2):
            for k in (0, 1, 3):
                assert norm_sq(dilate_translate(f, j, k)) == base


def test_dilation_composes(q2):
    rng = rng_from_seed(3)
    f = random_stepfn(rng, q2, 0, 2)
    for j1 in (-1, 0, 1, 2):
        for j2 in (-1, 0, 1):
            lhs = dilate_translate(dilate_translate(f, j1, 0), j2, 0)
            assert lhs == dilate_translate(f, j1 + j2, 0)


def test_inner_product_examples(q2):
    d = indicator(q2, 0)
    assert inner_product(d, d) == CycNum.one(2)
    assert inner_product(d, translate(d, 1)).is_zero
    assert inner_product(indicator(q2, 1), d) == CycNum.from_rational(2, Fraction(1, 2))
    z = root_of_unity(2, 1)
    f = random_stepfn(rng_from_seed(9), q2, 1, 1)
    g = random_stepfn(rng_from_seed(10), q2, 0, 2)
    assert inner_product(f, g.scale(z)) == inner_product(f, g) * z.conj()
    assert inner_product(f, g) == inner_product(g, f).conj()


def test_integral_is_translation_invariant(q3):
    f = random_stepfn(rng_from_seed(21), q3, 1, 1)
    for k in (0, 1, 4, 9):
        assert translate(f, k).integral() == f.integral()


def test_json_round_trip(q5):
    f = random_stepfn(rng_from_seed(2), q5, 1, 1)
    g = f.scale(CycNum.half_power(5, 1))
    for fn in (f, g, StepFn.zero(q5)):
        assert StepFn.from_json_dict(fn.to_json_dict()) == fn


def test_csv_rows(q2):
    rows = indicator(q2, 1).csv_rows()
    assert rows == [("0", 1.0, 0.0), ("1", 0.0, 0.0)]
    rows2 = indicator(q2, 0).scale(root_of_unity(2, 1)).csv_rows()
    assert rows2 == [("", -1.0, 0.0)]


def test_linear_ops(q3):
    rng = rng_from_seed(30)
    f = random_stepfn(rng, q3, 1, 0)
    g = random_stepfn(rng, q3, 0, 2)
    assert (f + g) - g == f
    assert f.scale(2) == f + f
    assert (-f) + f == StepFn.zero(q3)
    assert f.scale(Fraction(1, 3)).scale(3) == f
    with pytest.raises(ValueError):
        f + random_stepfn(rng, preset("q2"), 0, 1)


def test_gram_fast_path_matches_inner_product(q2, q3):
    for params in (q2, q3):
        rng = rng_from_seed(41)
        fns = [random_stepfn(rng, params, 1, 1) for _ in range(3)]
        others = [random_stepfn(rng, params, 0, 2) for _ in range(2)]
        G = gram(fns, others)
        for i, f in enumerate(fns):
            for j, g in enumerate(others):
                assert G[i][j] == inner_product(f, g)
        sq = gram(fns)
        for i in range(3):
            for j in range(3):
                assert sq[i][j] == inner_product(fns[i], fns[j])


def test_gram_object_fallback_matches(q2):
    # giant denominators push the packed numerators past the int64 budget
    rng = rng_from_seed(55)
    tiny = Fraction(1, 2**40 + 1)
    f = random_stepfn(rng, q2, 0, 2).scale(tiny)
    g = random_stepfn(rng, q2, 0, 2).scale(tiny)
    G = gram([f], [g])
    assert G[0][0] == inner_product(f, g)
    plain = gram([f.scale(1 / tiny)], [g.scale(1 / tiny)])[0][0]
    assert G[0][0] == plain.scale(tiny * tiny)


def test_gram_with_zero_function(q2):
    f = random_stepfn(rng_from_seed(56), q2, 0, 1)
    G = gram([StepFn.zero(q2), f])
    assert G[0][0].is_zero and G[0][1].is_zero and G[1][0].is_zero
    assert G[1][1] == inner_product(f, f)


def test_char_on_d_values(q2, q3):
    assert char_on_D(q2, 0) == indicator(q2, 0)
    f = char_on_D(q2, 3)
    assert f.window == Window(0, 2)
    one = CycNum.one(2)
    assert f.values == (one, -one, -one, one)
    g = char_on_D(q3, 5)
    for x in reps_of_D_mod(q3, 2):
        assert g.eval(x) == chi_n(q3, 5, x)


def test_character_gram_matches_generic_gram(q2, q3):
    for params, count in ((q2, 4), (q3, 3)):
        fast = character_gram(params, count)
        slow = gram([char_on_D(params, n) for n in range(count)])
        assert fast == slow
        for i in range(count):
            for j in range(count):
                expect = CycNum.one(params.p) if i == j else CycNum.zero(params.p)
                assert fast[i][j] == expect


small_vals = st.integers(min_value=-2, max_value=2)


def stepfns(name):
    params = preset(name)
    n = params.q ** 2
    return st.lists(small_vals, min_size=n, max_size=n).map(
        lambda cs: StepFn(params, Window(1, 1),
                          [CycNum.from_rational(params.p, c) for c in cs]))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["q2", "q3"]).flatmap(
    lambda name: st.tuples(stepfns(name), stepfns(name), stepfns(name))))
def test_inner_product_is_sesquilinear(fgh):
    f, g, h = fgh
    assert inner_product(f + g, h) == inner_product(f, h) + inner_product(g, h)
    assert inner_product(f, g) == inner_product(g, f).conj()
    n = inner_product(f, f)
    assert n.is_rational and n.as_rational() >= 0


def test_norm_sq_irrational_raises(q5):
    # 1 + zeta_5 has irrational squared modulus
    v = CycNum.one(5) + root_of_unity(5, 1)
    f = StepFn.constant(preset("q5"), v)
    with pytest.raises(ValueError):
        norm_sq(f)
    assert inner_product(f, f) == v.abs_sq()
