"""Transfer matrices: Markov coefficients, classification, inversion."""

import random

import pytest

from latkern.rational import ORD_INF, Poly, RatFun
from latkern.transfer import SingularMatrixError, TransferMatrix
from oracles import expansion_oracle

from gen import rand_matrix, rand_nonzero_matrix, rand_bicausal, rand_ratfun

z = RatFun.zpow


def test_markov_examples():
    f = TransferMatrix.scalar(RatFun(Poly([1]), Poly([-1, 1])))
    assert f.markov(3) == ((1,),)
    g = TransferMatrix.scalar(RatFun(Poly([2, 1]), Poly([0, 1])))
    assert g.markov(0) == ((1,),)
    d = TransferMatrix.diag([z(-1), z(-3)])
    assert d.markov(1) == ((1, 0), (0, 0))
    assert d.markov(0) == ((0, 0), (0, 0))


def test_map_order_examples():
    assert TransferMatrix.diag([z(-1), z(-3)]).order() == 1
    assert TransferMatrix([[z(1), z(-1)]]).order() == -1
    assert TransferMatrix.zero(2, 2).order() == ORD_INF


def test_classify_examples():
    r = TransferMatrix.scalar(RatFun(Poly([2, 1]), Poly([0, 1]))).classify()
    assert r.causal and r.bicausal and r.instantaneous
    assert not r.strictly_causal

    col = TransferMatrix.from_columns([[z(-1), z(-1)]]).classify()
    assert col.strictly_causal and col.order_consistent and col.nonlatent

    # all-z^-1 2x2 kills (1, -1): frozen from the order-jump oracle
    flat = TransferMatrix([[z(-1), z(-1)], [z(-1), z(-1)]])
    image = flat.apply([RatFun.const(1), RatFun.const(-1)])
    assert all(e.is_zero for e in image)  # order jumps to infinity
    rep = flat.classify()
    assert rep.strictly_causal and not rep.order_consistent


def test_invert_examples():
    f = TransferMatrix.scalar(RatFun(Poly([2, 1]), Poly([0, 1])))
    assert f.inverse() == TransferMatrix.scalar(RatFun(Poly([0, 1]), Poly([2, 1])))

    g = TransferMatrix([[z(-1), RatFun.const(0)], [z(-2), RatFun.const(1)]])
    gi = g.inverse()
    assert g * gi == TransferMatrix.identity(2)
    assert gi == TransferMatrix([[z(1), RatFun.const(0)],
                                 [-z(-1), RatFun.const(1)]])

    with pytest.raises(SingularMatrixError) as err:
        TransferMatrix([[z(-1), z(-1)], [z(-1), z(-1)]]).inverse()
    witness = err.value.witness
    assert witness == (RatFun.const(1), RatFun.const(-1))


def test_static_strict_split_examples():
    f = TransferMatrix.scalar(RatFun(Poly([2, 1]), Poly([0, 1])))
    l0, h = f.static_strict_split()
    assert l0 == ((1,),)
    assert h == TransferMatrix.scalar(RatFun(Poly([2]), Poly([0, 1])))

    g = TransferMatrix.scalar(RatFun(Poly([0, 1]), Poly([2, 1])))
    # frozen from the expansion oracle: A0 = 1, A1 = -2
    d = expansion_oracle(g.entry(0, 0), 1)
    assert d[0] == 1 and d[1] == -2
    l0, h = g.static_strict_split()
    assert l0 == ((1,),)
    assert h == TransferMatrix.scalar(RatFun(Poly([-2]), Poly([2, 1])))
    assert h.classify().strictly_causal

    l0, h = TransferMatrix.scalar(z(-1)).static_strict_split()
    assert l0 == ((0,),) and h == TransferMatrix.scalar(z(-1))


def test_split_requires_causal():
    with pytest.raises(ValueError):
        TransferMatrix.scalar(z(1)).static_strict_split()


def test_apply_examples():
    d = TransferMatrix.diag([z(-1), z(-3)])
    assert d.apply([z(1), z(3)]) == (RatFun.const(1), RatFun.const(1))
    assert TransferMatrix.scalar(z(-1)).apply([RatFun.const(0)]) == (RatFun.const(0),)
    # frozen from the convolution oracle at horizon 5
    row = TransferMatrix([[z(-1), z(-2)]])
    out = row.apply([RatFun.const(1), z(1)])
    assert out == (RatFun(Poly([2]), Poly([0, 1])),)
    d5 = expansion_oracle(out[0], 5)
    assert d5 == {1: 2}
    with pytest.raises(ValueError):
        row.apply([RatFun.const(1)])


def test_transpose_rank_examples():
    flat = TransferMatrix([[z(-1), z(-1)], [z(-1), z(-1)]])
    t, r = flat.transpose(), flat.rank()
    assert r == 1 and t == flat
    assert TransferMatrix.diag([z(-1), z(-3)]).rank() == 2
    assert TransferMatrix.zero(2, 3).rank() == 0


def test_classify_matches_window_definition():
    rng = random.Random(21)
    for _ in range(100):
        f = rand_matrix(rng, rng.randint(1, 3), rng.randint(1, 3), 3)
        rep = f.classify()
        window_causal = all(
            not any(v for row in f.markov(k) for v in row)
            for k in range(-10, 0))
        assert rep.causal == window_causal


def test_order_consistency_means_constant_order_drop():
    rng = random.Random(22)
    checked = 0
    while checked < 30:
        f = rand_nonzero_matrix(rng, 2, 2, 2)
        rep = f.classify()
        drops = set()
        for _ in range(20):
            u = [rand_ratfun(rng, 3) for _ in range(2)]
            if all(x.is_zero for x in u):
                continue
            image = f.apply(u)
            if all(e.is_zero for e in image):
                drops.add(ORD_INF)
                continue
            iord = min(e.order() for e in image if not e.is_zero)
            uord = min(x.order() for x in u if not x.is_zero)
            drops.add(iord - uord)
        if rep.order_consistent:
            assert drops == {rep.map_order}
        else:
            # a kernel vector of the leading coefficient shows the jump
            from latkern import linalg
            killer = linalg.nullspace_vector(f.markov(rep.map_order))
            u = [RatFun.const(c) for c in killer]
            image = f.apply(u)
            jumped = (all(e.is_zero for e in image)
                      or min(e.order() for e in image if not e.is_zero)
                      > rep.map_order)
            assert jumped
        checked += 1


def test_bicausal_inverse_properties():
    rng = random.Random(23)
    for _ in range(25):
        b = rand_bicausal(rng, 2, 2)
        rep = b.classify()
        assert rep.bicausal
        binv = b.inverse()
        inv_rep = binv.classify()
        assert inv_rep.bicausal and inv_rep.map_order == 0
        from latkern import linalg
        assert binv.markov(0) == linalg.invert(b.markov(0))


def test_static_strict_split_roundtrip_random():
    rng = random.Random(24)
    for _ in range(30):
        f = rand_bicausal(rng, 2, 3)
        l0, h = f.static_strict_split()
        assert TransferMatrix.from_constant(l0) + h == f
        assert h.classify().strictly_causal
