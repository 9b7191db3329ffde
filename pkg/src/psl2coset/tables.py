"""Packed integer tables shared by both scan backends.

Hot loops treat field elements as int32 indices and do all arithmetic
through flat lookup tables, so the same kernel code serves prime fields
and extension fields.  Table memory is O(q^2), which caps table-driven
work at KERNEL_CAP; the pure-API code paths have no such cap.

Also built here, once per field and cached on the context:

* psl_order_by_trace: PSL(2,q) element order as a function of the trace
  of a determinant-1 representative.  Away from trace +-2 the order is a
  class function of the trace alone; the +-2 slots store r, the order of
  the non-central (unipotent-type) classes, and every consumer of the
  table must treat those two slots specially.  Built in O(q) by walking
  the cyclic groups F_q^* (split classes, order dividing q-1) and the
  norm-one subgroup of F_{q^2} (non-split classes, order dividing q+1).
* pgl_order_by_tau: PGL(2,q) order as a function of tau = trace^2/det,
  which is scaling-invariant.  The tau=4 slot (equal eigenvalues) stores
  r and is special in the same way: such classes have order 1 or r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ffield import FieldCtx

KERNEL_CAP = 4096   # q above this would need >256MB of flat tables


@dataclass
class ArithPack:
    """Flat arithmetic tables for one field, all indexed by element index."""
    q: int
    r: int
    mul: np.ndarray       # int32[q*q], mul[a*q+b]
    add: np.ndarray       # int32[q*q]
    neg: np.ndarray       # int32[q]
    inv: np.ndarray       # int32[q], inv[0] = 0 sentinel (never consulted)
    bykey: np.ndarray     # int32[q], rank -> index
    rank: np.ndarray      # int32[q], index -> rank
    half: np.ndarray      # int32[(q-1)/2], key order, key(e) < key(-e)
    sqrt_idx: np.ndarray  # int32[q], canonical square root or -1


def arith_pack(ctx: FieldCtx) -> ArithPack:
    if "arith_pack" in ctx._cache:
        return ctx._cache["arith_pack"]
    q, r, k = ctx.q, ctx.r, ctx.k
    if q > KERNEL_CAP:
        raise ValueError(f"q={q} exceeds the table cap {KERNEL_CAP}")
    ar = np.arange(q, dtype=np.int64)
    if k == 1:
        mul = ((ar[:, None] * ar[None, :]) % q).astype(np.int32).ravel()
        add = ((ar[:, None] + ar[None, :]) % q).astype(np.int32).ravel()
        neg = ((q - ar) % q).astype(np.int32)
        inv = np.zeros(q, np.int32)
        inv[1] = 1
        for i in range(2, q):
            inv[i] = (q - (q // i) * inv[q % i]) % q
        bykey = ar.astype(np.int32)
        rank = ar.astype(np.int32)
    else:
        digs = np.empty((q, k), np.int64)
        tmp = ar.copy()
        for j in range(k):
            digs[:, j] = tmp % r
            tmp //= r
        weights = np.array([r ** j for j in range(k)], np.int64)
        # addition is digitwise; chunk rows to bound temporary memory
        add = np.empty(q * q, np.int32)
        step = max(1, (1 << 22) // max(q * k, 1))
        for lo in range(0, q, step):
            hi = min(q, lo + step)
            s = (digs[lo:hi, None, :] + digs[None, :, :]) % r
            add[lo * q:hi * q] = (s @ weights).astype(np.int32).ravel()
        ctx._ensure_tables()
        exp = np.array(ctx._exp, np.int64)
        log = np.array(ctx._log, np.int64)
        lsum = (log[:, None] + log[None, :]) % (q - 1)
        mul = exp[lsum].astype(np.int32)
        mul[0, :] = 0
        mul[:, 0] = 0
        mul = mul.ravel()
        neg = ((((r - digs) % r) @ weights)).astype(np.int32)
        inv = np.zeros(q, np.int32)
        inv[1:] = exp[(q - 1 - log[1:]) % (q - 1)].astype(np.int32)
        order = np.lexsort(tuple(digs[:, j] for j in range(k - 1, -1, -1)))
        bykey = order.astype(np.int32)
        rank = np.empty(q, np.int32)
        rank[bykey] = np.arange(q, dtype=np.int32)
    mask = (rank < rank[neg]) & (ar != 0)
    half = bykey[mask[bykey]]
    sq = mul[bykey.astype(np.int64) * q + bykey]
    sqrt_idx = np.full(q, -1, np.int32)
    sqrt_idx[sq[::-1]] = bykey[::-1]     # first key-order root wins
    pack = ArithPack(q=q, r=r, mul=mul, add=add, neg=neg, inv=inv,
                     bykey=bykey, rank=rank, half=half, sqrt_idx=sqrt_idx)
    ctx._cache["arith_pack"] = pack
    return pack


# ---------------------------------------------------------------------------
# Order-by-trace tables
# ---------------------------------------------------------------------------


def psl_order_by_trace(ctx: FieldCtx) -> np.ndarray:
    """int64[q]: PSL(2,q) order of a det-1 element by its trace index.

    Slots for trace +-2 hold r (the non-central order); the central
    classes at those traces have order 1.  All other slots are exact.
    """
    if "psl_order_by_trace" in ctx._cache:
        return ctx._cache["psl_order_by_trace"]
    q = ctx.q
    ord_t = np.full(q, -1, np.int64)
    two = ctx.elem(2).idx
    neg_one = ctx.neg_i(1)
    ord_t[two] = ctx.r
    ord_t[ctx.neg_i(two)] = ctx.r
    g = ctx.generator.idx
    gi = ctx.inv_i(g)
    u, v = 1, 1
    for e in range(1, q - 1):
        u = ctx.mul_i(u, g)
        v = ctx.mul_i(v, gi)
        if u == 1 or u == neg_one:
            continue
        n = (q - 1) // math.gcd(e, q - 1)
        ord_t[ctx.add_i(u, v)] = n // 2 if n % 2 == 0 else n
    qe = ctx.quad_ext()
    z = qe.norm1_generator()
    w = (1, 0)
    for e in range(1, q + 1):
        w = qe.mul(w, z)
        if w[1] == 0:        # +-1, the central norm-one elements
            continue
        n = (q + 1) // math.gcd(e, q + 1)
        ord_t[ctx.mul_i(two, w[0])] = n // 2 if n % 2 == 0 else n
    assert (ord_t >= 1).all(), "order table has uncovered traces"
    ctx._cache["psl_order_by_trace"] = ord_t
    return ord_t


def pgl_order_by_tau(ctx: FieldCtx) -> np.ndarray:
    """int64[q]: PGL(2,q) order by tau = trace^2/det.

    The tau=4 slot (equal eigenvalues) holds r; such classes have order
    1 (scalar) or r, so divisibility consumers treat it specially.
    """
    if "pgl_order_by_tau" in ctx._cache:
        return ctx._cache["pgl_order_by_tau"]
    q = ctx.q
    tab = np.full(q, -1, np.int64)
    two = ctx.elem(2).idx
    tab[ctx.elem(4).idx] = ctx.r
    g = ctx.generator.idx
    gi = ctx.inv_i(g)
    u, v = 1, 1
    for e in range(1, q - 1):
        u = ctx.mul_i(u, g)
        v = ctx.mul_i(v, gi)
        tau = ctx.add_i(ctx.add_i(u, v), two)
        tab[tau] = (q - 1) // math.gcd(e, q - 1)
    qe = ctx.quad_ext()
    z = qe.norm1_generator()
    w = (1, 0)
    for e in range(1, q + 1):
        w = qe.mul(w, z)
        if w[1] == 0:
            continue
        tau = ctx.add_i(ctx.mul_i(two, w[0]), two)
        tab[tau] = (q + 1) // math.gcd(e, q + 1)
    assert (tab >= 1).all(), "tau table has uncovered values"
    ctx._cache["pgl_order_by_tau"] = tab
    return tab


def _check_divisor(ctx: FieldCtx, d: int) -> None:
    # masks are only sound when neither order-1 nor order-r classes can
    # satisfy d | order; that is exactly d >= 2 and d != r
    if d < 2:
        raise ValueError(f"divisor d={d} must be at least 2")
    if d == ctx.r:
        raise ValueError(f"divisor d={d} equals the characteristic; "
                         "trace masks cannot separate unipotent classes")


def ok_mask_psl(ctx: FieldCtx, d: int) -> np.ndarray:
    """uint8[q]: trace index t -> d divides the PSL order of any det-1
    element with that trace (exact for every matrix, including +-2)."""
    key = ("ok_psl", d)
    if key not in ctx._cache:
        _check_divisor(ctx, d)
        ctx._cache[key] = (psl_order_by_trace(ctx) % d == 0).astype(np.uint8)
    return ctx._cache[key]


def ok_mask_pgl(ctx: FieldCtx, d: int) -> np.ndarray:
    """uint8[q]: tau index -> d divides the PGL order (exact, incl. tau=4)."""
    key = ("ok_pgl", d)
    if key not in ctx._cache:
        _check_divisor(ctx, d)
        ctx._cache[key] = (pgl_order_by_tau(ctx) % d == 0).astype(np.uint8)
    return ctx._cache[key]


def pth_power_mask(ctx: FieldCtx, p: int) -> np.ndarray:
    """uint8[q]: nonzero x that are p-th powers (slot 0 is 0)."""
    key = ("pth", p)
    if key not in ctx._cache:
        e = (ctx.q - 1) // p
        m = np.zeros(ctx.q, np.uint8)
        for i in range(1, ctx.q):
            m[i] = 1 if ctx.pow_i(i, e) == 1 else 0
        ctx._cache[key] = m
    return ctx._cache[key]


def theta_pow_arrays(ctx: FieldCtx, p: int) -> tuple[np.ndarray, np.ndarray]:
    """(theta^1..theta^p, theta^-1..theta^-p) as int32 index arrays."""
    key = ("theta_pows", p)
    if key not in ctx._cache:
        th = ctx.root_of_unity(p).idx
        pows = np.empty(p, np.int32)
        negpows = np.empty(p, np.int32)
        for i in range(1, p + 1):
            pows[i - 1] = ctx.pow_i(th, i)
            negpows[i - 1] = ctx.pow_i(th, p - i)
        ctx._cache[key] = (pows, negpows)
    return ctx._cache[key]


def pack_mats(mats) -> np.ndarray:
    """int32[n,4] of entry indices for a list of Mat2."""
    out = np.empty((len(mats), 4), np.int32)
    for i, m in enumerate(mats):
        out[i, 0] = m.m11.idx
        out[i, 1] = m.m12.idx
        out[i, 2] = m.m21.idx
        out[i, 3] = m.m22.idx
    return out


def pack_det_invs(mats) -> np.ndarray:
    """int32[n] of det(h)^-1 indices; rejects singular input."""
    out = np.empty(len(mats), np.int32)
    for i, m in enumerate(mats):
        d = m.det()
        if d.idx == 0:
            raise ValueError("singular matrix in packed subgroup")
        out[i] = d.inv().idx
    return out
