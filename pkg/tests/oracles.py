"""Independent brute-force oracles.

Everything here ignores the package's optimized paths on purpose: orders
come from repeated multiplication, trace sets from sweeping every
determinant-1 matrix, and point counts from full tuple enumeration.
Slow and only usable at tiny q - that is the point.  Tests freeze these
values against the fast implementations.
"""

from __future__ import annotations

from psl2coset.ffield import FieldCtx, FieldElem
from psl2coset.mat2 import Mat2, mat


def brute_psl_order(m: Mat2) -> int:
    """Order of a det-1 matrix modulo {+-I}, by repeated multiplication."""
    ctx = m.ctx
    ident = mat(ctx, [[ctx.one, ctx.zero], [ctx.zero, ctx.one]])
    cur = m
    n = 1
    while True:
        if cur == ident or cur == -ident:
            return n
        cur = cur @ m
        n += 1
        if n > 2 * ctx.q * (ctx.q + 1):
            raise RuntimeError("order walk did not terminate")


def brute_proj_order(m: Mat2) -> int:
    """Order of an invertible matrix modulo scalars."""
    cur = m
    n = 1
    while True:
        if cur.is_scalar:
            return n
        cur = cur @ m
        n += 1
        if n > 2 * m.ctx.q * (m.ctx.q + 1):
            raise RuntimeError("order walk did not terminate")


def all_det1(ctx: FieldCtx):
    """Every matrix with determinant exactly 1, by quadruple sweep."""
    els = list(ctx.elements())
    for a in els:
        for b in els:
            for c in els:
                for d in els:
                    if a * d - b * c == ctx.one:
                        yield Mat2(a, b, c, d)


def brute_trace_set(ctx: FieldCtx, p: int) -> frozenset:
    """Traces of det-1 matrices whose projective order p divides."""
    out = set()
    for m in all_det1(ctx):
        if brute_psl_order(m) % p == 0:
            out.add(m.trace())
    return frozenset(out)


def brute_count_X(ctx: FieldCtx, p: int) -> int:
    """Count (a, b, c_1..c_p) satisfying every trace equation, by sweeping
    all q^(2+p) tuples.  The c_i conditions are independent, so the sweep
    runs coordinate-wise; each c_i still ranges over the whole field."""
    theta = ctx.root_of_unity(p)
    els = list(ctx.elements())
    total = 0
    for a in els:
        for b in els:
            n = 1
            for i in range(1, p + 1):
                rhs = a * theta ** i + b * theta ** (p - i)
                cnt = 0
                for c in els:
                    u = (c ** p) * theta
                    if u.is_zero:
                        continue
                    if u + u.inv() == rhs:
                        cnt += 1
                n *= cnt
                if n == 0:
                    break
            total += n
    return total


def brute_fiber_grid(ctx: FieldCtx, p: int) -> dict:
    """n(a, b) for every pair, counted by the same full c-sweep."""
    theta = ctx.root_of_unity(p)
    els = list(ctx.elements())
    grid = {}
    for a in els:
        for b in els:
            n = 1
            for i in range(1, p + 1):
                rhs = a * theta ** i + b * theta ** (p - i)
                cnt = sum(
                    1 for c in els
                    if not ((c ** p) * theta).is_zero
                    and (c ** p) * theta + ((c ** p) * theta).inv() == rhs)
                n *= cnt
                if n == 0:
                    break
            grid[(a.idx, b.idx)] = n
    return grid


def brute_count_Y(ctx: FieldCtx, p: int) -> int:
    """Weighted sweep over all (a, b, c, d, w) with ab + cd = w^2."""
    grid = brute_fiber_grid(ctx, p)
    els = list(ctx.elements())
    total = 0
    for a in els:
        for b in els:
            nab = grid[(a.idx, b.idx)]
            if nab == 0:
                continue
            for c in els:
                for d in els:
                    ncd = grid[(c.idx, d.idx)]
                    if ncd == 0:
                        continue
                    s = a * b + c * d
                    for w in els:
                        if w * w == s:
                            total += nab * ncd
    return total


def smallest_primitive_root(q: int) -> int:
    """Least primitive root of a prime q, by direct order computation."""
    for g in range(2, q):
        seen = set()
        x = 1
        for _ in range(q - 1):
            x = x * g % q
            seen.add(x)
        if len(seen) == q - 1:
            return g
    raise ValueError(f"no primitive root mod {q}")


def elem_orders(ctx: FieldCtx) -> dict:
    """Multiplicative order of every nonzero element, by power walk."""
    out = {}
    for x in ctx.elements():
        if x.is_zero:
            continue
        cur = x
        n = 1
        while cur != ctx.one:
            cur = cur * x
            n += 1
        out[x.idx] = n
    return out
