"""Closed loops, feedback realizations, worst-case precompensators."""

import random
from fractions import Fraction

import pytest

from latkern.feedback import (PreconditionError, StateSpace, closed_loop,
                              from_state_space, is_nonlatency_check,
                              static_feedback_realizable,
                              static_state_feedback_test, vg_representation,
                              worst_case_precompensator)
from latkern.latency import latency_kernel
from latkern.polymatrix import reachability_indices
from latkern.rational import Poly, RatFun
from latkern.simulate import SeriesMatrix
from latkern.transfer import TransferMatrix

from gen import (rand_bicausal, rand_matrix, rand_state_pair,
                 rand_strictly_causal_injective)

z = RatFun.zpow


def strictly_causal_2x2(rng):
    while True:
        f = rand_matrix(rng, 2, 2, 2)
        if not f.is_zero and f.order() >= 1:
            return f
        f = f * z(-2)
        if f.order() >= 1:
            return f


def test_closed_loop_identity_case():
    f = TransferMatrix.scalar(z(-1))
    i = TransferMatrix.identity(1)
    assert closed_loop(f, TransferMatrix.scalar(0), i, i) == f


def test_closed_loop_scalar_example():
    f = TransferMatrix.scalar(z(-1))
    i = TransferMatrix.identity(1)
    loop = closed_loop(f, i, i, i)
    assert loop == TransferMatrix.scalar(RatFun(Poly([1]), Poly([1, 1])))


def test_closed_loop_with_precompensation_simulates():
    f = TransferMatrix.scalar(z(-1))
    i = TransferMatrix.identity(1)
    l_pr = TransferMatrix.scalar(RatFun(Poly([0, 1]), Poly([1, 1])))
    loop = closed_loop(f, i, l_pr, i)
    expected = TransferMatrix.scalar(RatFun(Poly([1]), Poly([1, 1]))) * l_pr
    assert loop == expected
    lhs = SeriesMatrix.from_transfer(loop, 20)
    rhs = (SeriesMatrix.from_transfer(
        TransferMatrix.scalar(RatFun(Poly([1]), Poly([1, 1]))), 20)
        * SeriesMatrix.from_transfer(l_pr, 20))
    assert lhs.agrees_with(rhs)


def test_closed_loop_rejects_bad_arguments():
    f = TransferMatrix.scalar(z(-1))
    i = TransferMatrix.identity(1)
    with pytest.raises(PreconditionError, match="strictly causal"):
        closed_loop(i, i, i, i)
    with pytest.raises(PreconditionError, match="causal"):
        closed_loop(f, TransferMatrix.scalar(z(1)), i, i)
    with pytest.raises(PreconditionError, match="bicausal"):
        closed_loop(f, i, f, i)


def test_closed_loop_forms_agree_random():
    rng = random.Random(71)
    for _ in range(20):
        f = strictly_causal_2x2(rng)
        g = rand_matrix(rng, 2, 2, 1)
        if not g.is_zero and g.order() < 0:
            g = g * z(g.order())
        l_pr = rand_bicausal(rng, 2, 1)
        l_po = rand_bicausal(rng, 2, 1)
        loop = closed_loop(f, g, l_pr, l_po)  # asserts both forms internally
        assert (TransferMatrix.identity(2) + g * f).classify().bicausal
        assert (TransferMatrix.identity(2) + f * g).classify().bicausal
        assert loop.classify().strictly_causal


def test_static_feedback_examples():
    f = TransferMatrix.scalar(z(-1))
    l = TransferMatrix.scalar(RatFun(Poly([0, 1]), Poly([1, 1])))
    res = static_feedback_realizable(f, l)
    assert res.realizable
    assert res.g == TransferMatrix.identity(1)
    assert res.static_part == ((1,),)

    f2 = TransferMatrix.scalar(z(-2))
    res2 = static_feedback_realizable(f2, l)
    assert not res2.realizable
    assert res2.witness == (z(2),)


def test_nonlatent_plants_realize_everything():
    rng = random.Random(72)
    for _ in range(15):
        n = rng.randint(1, 3)
        m = rng.randint(1, n)
        a, b = rand_state_pair(rng, n, m)
        f = from_state_space(StateSpace(a, b))
        l = rand_bicausal(rng, m, 2)
        res = static_feedback_realizable(f, l)
        assert res.realizable
        l_inv = l.inverse()
        assert TransferMatrix.from_constant(res.static_part) + res.g * f == l_inv


def test_vg_representation_example():
    f = TransferMatrix.scalar(z(-2))
    l = TransferMatrix.scalar(RatFun(Poly([0, 1]), Poly([1, 1])))
    rep = vg_representation(f, l)
    assert rep.g == TransferMatrix.scalar(0)
    assert rep.v == l
    assert rep.sigma == (1,) and rep.nu == (1,)


def test_vg_representation_nonlatent_gives_static_remainder():
    rng = random.Random(73)
    for _ in range(10):
        n = rng.randint(1, 3)
        m = rng.randint(1, n)
        a, b = rand_state_pair(rng, n, m)
        f = from_state_space(StateSpace(a, b))
        l = rand_bicausal(rng, m, 2)
        rep = vg_representation(f, l)
        assert all(s == 0 for s in rep.sigma)


def test_vg_representation_random_pipeline():
    rng = random.Random(74)
    for _ in range(8):
        m = rng.randint(1, 2)
        f, nu = rand_strictly_causal_injective(rng, m + rng.randint(0, 1), m,
                                               max_nu=2, max_deg=1)
        l = rand_bicausal(rng, m, 2)
        rep = vg_representation(f, l)
        loop = TransferMatrix.identity(m) + rep.g * f
        assert loop.inverse() * rep.v == l
        assert rep.v.classify().bicausal
        assert all(s <= n for s, n in zip(rep.sigma, rep.nu))
        # remainder and its inverse share reachability indices
        assert reachability_indices(rep.v)[0] == \
            reachability_indices(rep.v.inverse())[0]
        # correction term certificates
        kernel = latency_kernel(f)
        d = kernel.poly_generator
        v_inv = rep.v.inverse()
        shifted = v_inv * (d * z(-1))
        assert all(e.is_polynomial for row in shifted.entries for e in row)


def test_worst_case_examples():
    f = TransferMatrix.scalar(z(-2))
    l = worst_case_precompensator(f)
    assert l == TransferMatrix.scalar(RatFun(Poly([0, 1]), Poly([1, 1])))
    rep = vg_representation(f, l)
    assert sum(rep.sigma) == sum(rep.nu) == 1

    d = TransferMatrix.diag([z(-1), z(-3)])
    rep2 = vg_representation(d, worst_case_precompensator(d))
    assert sum(rep2.sigma) == sum(rep2.nu) == 2


def test_worst_case_nonlatent_trivial():
    ss = StateSpace(a=((0, 1), (0, 0)), b=((0,), (1,)))
    f = from_state_space(ss)
    l = worst_case_precompensator(f)
    rep = vg_representation(f, l)
    assert sum(rep.sigma) == 0 == sum(rep.nu)


def test_from_state_space_examples():
    assert from_state_space(StateSpace(a=((0,),), b=((1,),))) == \
        TransferMatrix.scalar(z(-1))
    ss = StateSpace(a=((0, 1), (0, 0)), b=((0,), (1,)))
    # frozen from the adjugate: (zI-A)^-1 = [[1/z, 1/z^2], [0, 1/z]]
    assert from_state_space(ss) == TransferMatrix.from_columns([[z(-2), z(-1)]])
    zero_b = from_state_space(StateSpace(a=((1,),), b=((0,),)))
    assert zero_b.is_zero


def test_nonlatency_check_examples():
    rep = is_nonlatency_check(StateSpace(a=((0, 1), (0, 0)), b=((0,), (1,))))
    assert rep.injective and rep.nonlatent and rep.indices == (0,)

    rep2 = is_nonlatency_check(StateSpace(a=((0,),), b=((0,),)))
    assert not rep2.injective
    assert rep2.static_kernel == ((Fraction(1),),)

    rng = random.Random(75)
    for _ in range(10):
        n = rng.randint(1, 4)
        a, b = rand_state_pair(rng, n, rng.randint(1, n))
        assert is_nonlatency_check(StateSpace(a, b)).nonlatent


def test_static_state_feedback_examples():
    ss = StateSpace(a=((0, 1), (0, 0)), b=((0,), (1,)))
    l_yes = TransferMatrix.scalar(
        RatFun(Poly([1, 0, 1]), Poly([0, 0, 1]))).inverse()
    res = static_state_feedback_test(ss, l_yes)
    assert res.realizable
    assert res.gain == ((1, 0),)

    res_id = static_state_feedback_test(ss, TransferMatrix.identity(1))
    assert res_id.realizable and res_id.gain == ((0, 0),)

    l_no = TransferMatrix.scalar(
        RatFun(Poly([1, 0, 0, 1]), Poly([0, 0, 0, 1]))).inverse()
    res_no = static_state_feedback_test(ss, l_no)
    assert not res_no.realizable


def test_static_state_feedback_routes_agree_random():
    rng = random.Random(76)
    for _ in range(12):
        n = rng.randint(1, 3)
        m = rng.randint(1, n)
        a, b = rand_state_pair(rng, n, m)
        ss = StateSpace(a, b)
        f = from_state_space(ss)
        if rng.random() < 0.5:
            gain = TransferMatrix.from_constant(
                [[Fraction(rng.randint(-2, 2)) for _ in range(n)]
                 for _ in range(m)])
            core = TransferMatrix.identity(m) + gain * f
            if not core.classify().bicausal:
                continue
            l = core.inverse()
            res = static_state_feedback_test(ss, l)
            assert res.realizable
            got = TransferMatrix.from_constant(res.static_part) \
                + TransferMatrix.from_constant(res.gain) * f
            assert got == l.inverse()
        else:
            l = rand_bicausal(rng, m, 2)
            static_state_feedback_test(ss, l)  # must not raise: routes agree
