import pytest

from psl2coset.ffield import FieldElem, make_field
from psl2coset.mat2 import (PSL, PGL, Mat2, canon, enumerate_group,
                            group_order, identity, index_space, mat,
                            mat_from_text, proj_order, psl2_order,
                            sl2_order, unrank)
from oracles import brute_psl_order, brute_proj_order


def rand_mat(ctx, rng):
    while True:
        m = Mat2(*(FieldElem(ctx, rng.randrange(ctx.q)) for _ in range(4)))
        if not m.det().is_zero:
            return m


def rand_det1(ctx, rng):
    # scale the first row of a random invertible matrix to determinant 1
    m = rand_mat(ctx, rng)
    di = m.det().inv()
    return Mat2(m.m11 * di, m.m12 * di, m.m21, m.m22)


def test_matmul_and_inverse(f13, rng):
    ident = identity(f13)
    for _ in range(200):
        m = rand_mat(f13, rng)
        n = rand_mat(f13, rng)
        assert (m @ n).det() == m.det() * n.det()
        assert m @ m.inverse() == ident
        assert m.adjugate() @ m == ident.scale(m.det())
        assert (m @ n).trace() == (n @ m).trace()


def test_mat_text_roundtrip(f27, rng):
    for _ in range(50):
        m = rand_mat(f27, rng)
        assert mat_from_text(f27, m.text) == m


def test_canon_kills_scalars(f13, rng):
    for _ in range(100):
        m = rand_mat(f13, rng)
        assert canon(-m, PGL) == canon(m, PGL)
        for s in f13.elements():
            if s.is_zero:
                continue
            assert canon(m.scale(s), PGL) == canon(m, PGL)
        d1 = rand_det1(f13, rng)
        assert canon(-d1, PSL) == canon(d1, PSL)
        assert canon(canon(d1, PSL).rep, PSL) == canon(d1, PSL)


def test_group_orders():
    for q in (5, 7, 13, 27):
        ctx = make_field(*__import__("psl2coset.ffield",
                                     fromlist=["prime_power"]).prime_power(q))
        assert group_order(ctx, PSL) == q * (q * q - 1) // (1 if q % 2 == 0 else 2)
        assert group_order(ctx, PGL) == q ** 3 - q


def test_enumerate_psl_complete(f7):
    """PSL enumeration is gap-free and hits every class exactly once."""
    pts = list(enumerate_group(f7, PSL))
    assert len(pts) == group_order(f7, PSL) == 168
    assert len(set(pts)) == 168
    assert index_space(f7, PSL) == 168
    for i, pt in enumerate(pts):
        assert unrank(f7, PSL, i) == pt.rep


def test_enumerate_pgl_complete(f7):
    pts = list(enumerate_group(f7, PGL))
    assert len(pts) == group_order(f7, PGL) == 336
    assert len(set(pts)) == 336
    # the PGL index space is padded with singular slots
    assert index_space(f7, PGL) >= 336


def test_unrank_matches_enumeration_larger():
    ctx = make_field(43)
    pts = list(enumerate_group(ctx, PSL))
    assert len(pts) == group_order(ctx, PSL)
    import random
    rng = random.Random(7)
    for _ in range(200):
        i = rng.randrange(len(pts))
        assert unrank(ctx, PSL, i) == pts[i].rep


def test_psl_order_exhaustive_q7(f7):
    """Fast order against the repeated-multiplication walk, whole group."""
    for pt in enumerate_group(f7, PSL):
        assert psl2_order(pt.rep) == brute_psl_order(pt.rep)


def test_proj_order_exhaustive_q7(f7):
    for pt in enumerate_group(f7, PGL):
        assert proj_order(pt.rep) == brute_proj_order(pt.rep)


def test_orders_sampled_q13_q27(f13, f27, rng):
    for ctx in (f13, f27):
        n = group_order(ctx, PSL)
        for _ in range(60):
            m = unrank(ctx, PSL, rng.randrange(n))
            assert psl2_order(m) == brute_psl_order(m)
            o = sl2_order(m)
            assert o in (psl2_order(m), 2 * psl2_order(m))


def test_order_divides_group_exponent(f13):
    # PSL2(q) element orders divide one of r, (q-1)/d, (q+1)/d
    for pt in enumerate_group(f13, PSL):
        o = psl2_order(pt.rep)
        assert 13 % o == 0 or 6 % o == 0 or 7 % o == 0


def test_sl2_identity_orders(f7):
    ident = identity(f7)
    assert sl2_order(ident) == 1
    assert sl2_order(-ident) == 2
    assert psl2_order(-ident) == 1
    assert proj_order(-ident) == 1


def test_canon_rejects_nonsquare_det_psl(f7):
    g = f7.generator     # non-square
    m = mat(f7, [[g, f7.zero], [f7.zero, f7.one]])
    with pytest.raises(ValueError):
        canon(m, PSL)
