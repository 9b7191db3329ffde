import pytest

from psl2coset.ffield import (FieldElem, factorize, is_prime, make_field,
                              parse_field_text, prime_power)
from oracles import elem_orders, smallest_primitive_root


def test_prime_power_classification():
    assert prime_power(7) == (7, 1)
    assert prime_power(27) == (3, 3)
    assert prime_power(25) == (5, 2)
    assert prime_power(1024) == (2, 10)
    for n in (1, 6, 12, 100, 1000):
        assert prime_power(n) is None


def test_factorize_roundtrip(rng):
    for _ in range(200):
        n = rng.randrange(2, 10 ** 6)
        fac = factorize(n)
        prod = 1
        for p, e in fac:
            assert is_prime(p)
            prod *= p ** e
        assert prod == n


def field_axioms(ctx, rng):
    els = list(ctx.elements())
    assert len(els) == ctx.q
    zero, one = ctx.zero, ctx.one
    for x in els:
        assert x + zero == x
        assert x * one == x
        assert x + (-x) == zero
        if not x.is_zero:
            assert x * x.inv() == one
    for _ in range(300):
        x, y, z = (els[rng.randrange(ctx.q)] for _ in range(3))
        assert x + y == y + x
        assert x * y == y * x
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z


def test_axioms_prime_field(f7, f13, rng):
    field_axioms(f7, rng)
    field_axioms(f13, rng)


def test_axioms_extension_fields(f25, f27, rng):
    field_axioms(f25, rng)
    field_axioms(f27, rng)
    field_axioms(make_field(2, 4), rng)


def test_sqrt_exhaustive():
    # every element: sqrt exists iff the element is a square; (q+1)/2
    # squares including zero in odd characteristic
    for args in [(7,), (13,), (5, 2), (3, 3), (53,)]:
        ctx = make_field(*args)
        n_squares = 0
        for x in ctx.elements():
            s = ctx.sqrt(x)
            if s is not None:
                n_squares += 1
                assert s * s == x
        assert n_squares == (ctx.q + 1) // 2


def test_mult_order_against_walk(f13):
    walked = elem_orders(f13)
    for x in f13.elements():
        if x.is_zero:
            continue
        assert f13.mult_order(x) == walked[x.idx]
        assert (x ** walked[x.idx]) == f13.one


def test_mult_order_extension(f27):
    walked = elem_orders(f27)
    for idx, n in walked.items():
        assert f27.mult_order(FieldElem(f27, idx)) == n
        assert 26 % n == 0


def test_generator_determinism():
    """The generator is the key-smallest primitive element."""
    for q in (7, 13, 53, 139):
        ctx = make_field(q)
        assert ctx.generator.idx == smallest_primitive_root(q)
    assert make_field(7).generator.idx == 3
    assert make_field(13).generator.idx == 2


def test_modulus_determinism():
    assert make_field(3, 3).modulus == (1, 0, 2, 1)
    assert make_field(5, 2).modulus == (1, 1, 1)
    # rebuilt contexts are interchangeable
    a, b = make_field(3, 3), make_field(3, 3)
    assert a == b and a.generator == b.generator


def test_root_of_unity():
    for q, p in [(7, 3), (13, 3), (31, 5), (61, 5), (27, 13)]:
        ctx = make_field(*prime_power(q))
        theta = ctx.root_of_unity(p)
        assert ctx.mult_order(theta) == p
    with pytest.raises(ValueError):
        make_field(7).root_of_unity(5)     # 5 does not divide 6


def test_theta_frozen_values(f7, f13):
    assert f7.root_of_unity(3).idx == 2
    assert f13.root_of_unity(3).idx == 3


def test_key_order_extension_constants_late(f27):
    """Element keys sort little-endian coefficient tuples: x^2 = (0,0,1)
    precedes the constant 1 = (1,0,0)."""
    keys = [x.key() for x in f27.elements_by_key()]
    assert keys == sorted(keys)
    assert keys[0] == (0, 0, 0)
    assert keys.index((0, 0, 1)) < keys.index((1, 0, 0))


def test_pth_power_membership(f7):
    cubes = {(x * x * x).idx for x in f7.elements() if not x.is_zero}
    for x in f7.elements():
        if x.is_zero:
            continue
        assert f7.is_pth_power(x, 3) == (x.idx in cubes)


def test_int_ops_match_elem_ops(f25, rng):
    for _ in range(400):
        a = rng.randrange(25)
        b = rng.randrange(25)
        x, y = FieldElem(f25, a), FieldElem(f25, b)
        assert f25.add_i(a, b) == (x + y).idx
        assert f25.mul_i(a, b) == (x * y).idx
        assert f25.neg_i(a) == (-x).idx
        if a:
            assert f25.inv_i(a) == x.inv().idx
            assert f25.pow_i(a, 7) == (x ** 7).idx


def test_parse_field_text_roundtrip(f27, f53):
    for ctx in (f27, f53):
        again = parse_field_text(ctx.text)
        assert again == ctx
        assert again.generator == ctx.generator


def test_elem_text_roundtrip(f27, rng):
    for _ in range(50):
        x = FieldElem(f27, rng.randrange(27))
        assert f27.from_text(x.text) == x


def test_quad_ext_norm1():
    """The norm-1 subgroup of the quadratic extension has order q+1."""
    for q in (7, 13, 53):
        ctx = make_field(q)
        ext = ctx.quad_ext()
        g = ext.norm1_generator()
        assert ext.norm1_order(g) == q + 1
        seen = set()
        cur = g
        for _ in range(q + 1):
            seen.add(cur)
            cur = ext.mul(cur, g)
        assert len(seen) == q + 1


def test_make_field_rejections():
    with pytest.raises(ValueError):
        make_field(6)
    with pytest.raises(ValueError):
        make_field(7, 0)
    with pytest.raises(ValueError):
        make_field(2, 40)      # beyond the arithmetic cap
