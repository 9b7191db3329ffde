"""NumPy scan kernels: the pure-Python backend.

Every function here has a twin in the compiled extension (_kernels.pyx)
with identical signature and identical results; psl2coset.backend picks
one at import time.  All arguments are flat integer tables from
tables.ArithPack plus small packed arrays, so these functions are free
of any field-context machinery.

Enumeration index spaces match mat2.unrank exactly:

* psl: [0, H*q) is the m11=0 block (H = (q-1)/2 key-ordered half
  elements), then H blocks of q*q for m11 in half, m12/m21 free in key
  order, m22 forced by det 1.
* pgl: [0, (q-1)*q) is the m11=0, m12=1 block; then q*q*q slots for
  m11=1 with m22 free, where slots with det 0 are skipped (gaps).
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "py"


def _coset_ok(q, mul, add, hmats, ok, m11, m12, m21, m22):
    """Boolean mask: all products (m @ h) pass the per-trace ok mask."""
    acc = np.ones(m11.shape, bool)
    q64 = np.int64(q)
    for h in range(hmats.shape[0]):
        h11, h12, h21, h22 = (int(x) for x in hmats[h])
        p11 = add[mul[m11 * q64 + h11].astype(np.int64) * q64
                  + mul[m12 * q64 + h21]]
        p22 = add[mul[m21 * q64 + h12].astype(np.int64) * q64
                  + mul[m22 * q64 + h22]]
        t = add[p11.astype(np.int64) * q64 + p22]
        acc &= ok[t].astype(bool)
        if not acc.any():
            break
    return acc


def _psl_chunks(q, mul, add, neg, inv, bykey, half, istart, istop):
    """Yield (base, lo, hi, m11, m12, m21, m22) entry vectors per chunk."""
    H = half.shape[0]
    bk = bykey.astype(np.int64)
    b0 = H * q
    if istart < b0:
        lo, hi = istart, min(istop, b0)
        pos = np.arange(lo, hi, dtype=np.int64)
        m12 = half[pos // q].astype(np.int64)
        m21 = neg[inv[m12]].astype(np.int64)
        m22 = bk[pos % q]
        m11 = np.zeros(pos.shape, np.int64)
        yield 0, lo, hi, m11, m12, m21, m22
    qq = q * q
    for j in range(H):
        base = b0 + j * qq
        if base + qq <= istart:
            continue
        if base >= istop:
            break
        lo = max(istart - base, 0)
        hi = min(istop - base, qq)
        pos = np.arange(lo, hi, dtype=np.int64)
        a = int(half[j])
        m12 = bk[pos // q]
        m21 = bk[pos % q]
        num = add[np.int64(q) + mul[m12 * q + m21]].astype(np.int64)  # 1 + bc
        m22 = mul[num * q + int(inv[a])].astype(np.int64)
        m11 = np.full(pos.shape, a, np.int64)
        yield base, lo, hi, m11, m12, m21, m22


def psl_first(q, mul, add, neg, inv, bykey, half, hmats, ok, istart, istop):
    for base, lo, hi, m11, m12, m21, m22 in _psl_chunks(
            q, mul, add, neg, inv, bykey, half, istart, istop):
        acc = _coset_ok(q, mul, add, hmats, ok, m11, m12, m21, m22)
        nz = np.flatnonzero(acc)
        if nz.size:
            return base + lo + int(nz[0])
    return -1


def psl_collect(q, mul, add, neg, inv, bykey, half, hmats, ok, istart, istop):
    found = []
    for base, lo, hi, m11, m12, m21, m22 in _psl_chunks(
            q, mul, add, neg, inv, bykey, half, istart, istop):
        acc = _coset_ok(q, mul, add, hmats, ok, m11, m12, m21, m22)
        nz = np.flatnonzero(acc)
        if nz.size:
            found.append(base + lo + nz.astype(np.int64))
    if not found:
        return np.empty(0, np.int64)
    return np.concatenate(found)


def _pgl_chunks(q, mul, add, neg, bykey, istart, istop):
    """Yield (base, lo, hi, m11, m12, m21, m22, det) per chunk; det=0 slots
    are gaps the consumer must mask out."""
    bk = bykey.astype(np.int64)
    q64 = np.int64(q)
    b0 = (q - 1) * q
    if istart < b0:
        lo, hi = istart, min(istop, b0)
        pos = np.arange(lo, hi, dtype=np.int64)
        m21 = bk[pos // q + 1]
        m22 = bk[pos % q]
        m11 = np.zeros(pos.shape, np.int64)
        m12 = np.ones(pos.shape, np.int64)
        det = neg[m21].astype(np.int64)
        yield 0, lo, hi, m11, m12, m21, m22, det
    qq = q * q
    for tb in range(q):
        base = b0 + tb * qq
        if base + qq <= istart:
            continue
        if base >= istop:
            break
        lo = max(istart - base, 0)
        hi = min(istop - base, qq)
        pos = np.arange(lo, hi, dtype=np.int64)
        b = int(bykey[tb])
        m21 = bk[pos // q]
        m22 = bk[pos % q]
        m11 = np.ones(pos.shape, np.int64)
        m12 = np.full(pos.shape, b, np.int64)
        det = add[m22 * q64 + neg[mul[m12 * q + m21]].astype(np.int64)]
        yield base, lo, hi, m11, m12, m21, m22, det.astype(np.int64)


def _pgl_coset_ok(q, mul, add, hmats, hdinv, pgl_ok, m11, m12, m21, m22,
                  det, dinv):
    acc = det != 0
    q64 = np.int64(q)
    for h in range(hmats.shape[0]):
        h11, h12, h21, h22 = (int(x) for x in hmats[h])
        p11 = add[mul[m11 * q64 + h11].astype(np.int64) * q64
                  + mul[m12 * q64 + h21]]
        p22 = add[mul[m21 * q64 + h12].astype(np.int64) * q64
                  + mul[m22 * q64 + h22]]
        t = add[p11.astype(np.int64) * q64 + p22].astype(np.int64)
        # det(m h) = det(m) det(h); tau is trace^2 over that
        dd = mul[dinv * q64 + int(hdinv[h])].astype(np.int64)
        tau = mul[mul[t * q64 + t].astype(np.int64) * q64 + dd]
        acc &= pgl_ok[tau].astype(bool)
        if not acc.any():
            break
    return acc


def pgl_first(q, mul, add, neg, inv, bykey, hmats, hdinv, pgl_ok,
              istart, istop):
    for base, lo, hi, m11, m12, m21, m22, det in _pgl_chunks(
            q, mul, add, neg, bykey, istart, istop):
        dinv = inv[np.where(det != 0, det, 0)].astype(np.int64)
        acc = _pgl_coset_ok(q, mul, add, hmats, hdinv, pgl_ok,
                            m11, m12, m21, m22, det, dinv)
        nz = np.flatnonzero(acc)
        if nz.size:
            return base + lo + int(nz[0])
    return -1


def pgl_collect(q, mul, add, neg, inv, bykey, hmats, hdinv, pgl_ok,
                istart, istop):
    found = []
    for base, lo, hi, m11, m12, m21, m22, det in _pgl_chunks(
            q, mul, add, neg, bykey, istart, istop):
        dinv = inv[np.where(det != 0, det, 0)].astype(np.int64)
        acc = _pgl_coset_ok(q, mul, add, hmats, hdinv, pgl_ok, m11, m12, m21,
                            m22, det, dinv)
        nz = np.flatnonzero(acc)
        if nz.size:
            found.append(base + lo + nz.astype(np.int64))
    if not found:
        return np.empty(0, np.int64)
    return np.concatenate(found)


def normalizer_collect(q, mul, add, neg, inv, bykey, half, rank,
                       submats, subpack, istart, istop):
    """Indices of canonical PSL reps g with g s g^-1 in the packed set for
    every s in submats.  det(g) = 1, so g^-1 is the adjugate."""
    q64 = np.int64(q)
    found = []
    for base, lo, hi, m11, m12, m21, m22 in _psl_chunks(
            q, mul, add, neg, inv, bykey, half, istart, istop):
        acc = np.ones(m11.shape, bool)
        g11, g12, g21, g22 = m11, m12, m21, m22
        a11 = g22
        a12 = neg[g12].astype(np.int64)
        a21 = neg[g21].astype(np.int64)
        a22 = g11
        for s in range(submats.shape[0]):
            s11, s12, s21, s22 = (int(x) for x in submats[s])
            u11 = add[mul[g11 * q64 + s11].astype(np.int64) * q64
                      + mul[g12 * q64 + s21]].astype(np.int64)
            u12 = add[mul[g11 * q64 + s12].astype(np.int64) * q64
                      + mul[g12 * q64 + s22]].astype(np.int64)
            u21 = add[mul[g21 * q64 + s11].astype(np.int64) * q64
                      + mul[g22 * q64 + s21]].astype(np.int64)
            u22 = add[mul[g21 * q64 + s12].astype(np.int64) * q64
                      + mul[g22 * q64 + s22]].astype(np.int64)
            c11 = add[mul[u11 * q64 + a11].astype(np.int64) * q64
                      + mul[u12 * q64 + a21]].astype(np.int64)
            c12 = add[mul[u11 * q64 + a12].astype(np.int64) * q64
                      + mul[u12 * q64 + a22]].astype(np.int64)
            c21 = add[mul[u21 * q64 + a11].astype(np.int64) * q64
                      + mul[u22 * q64 + a21]].astype(np.int64)
            c22 = add[mul[u21 * q64 + a12].astype(np.int64) * q64
                      + mul[u22 * q64 + a22]].astype(np.int64)
            fnz = np.where(c11 != 0, c11,
                           np.where(c12 != 0, c12,
                                    np.where(c21 != 0, c21, c22)))
            flip = rank[neg[fnz]] < rank[fnz]
            c11 = np.where(flip, neg[c11], c11).astype(np.int64)
            c12 = np.where(flip, neg[c12], c12).astype(np.int64)
            c21 = np.where(flip, neg[c21], c21).astype(np.int64)
            c22 = np.where(flip, neg[c22], c22).astype(np.int64)
            packed = ((c11 * q64 + c12) * q64 + c21) * q64 + c22
            acc &= np.isin(packed, subpack)
            if not acc.any():
                break
        nz = np.flatnonzero(acc)
        if nz.size:
            found.append(base + lo + nz.astype(np.int64))
    if not found:
        return np.empty(0, np.int64)
    return np.concatenate(found)


def sl2_mismatches(q, mul, add, neg, inv, fast, gen):
    """Count det-1 matrices where the fast trace mask and the order-derived
    mask disagree.  Exhaustive over SL(2,q) via the standard two-block
    parametrization; traces +-2 carry the same verdict in both masks for
    every matrix (order 1 or r, never divisible), so per-trace comparison
    is per-matrix exact."""
    q64 = np.int64(q)
    mism = (fast.astype(bool) != gen.astype(bool))
    # m11 = 0: m12 != 0 free, m21 forced, m22 free; trace = m22
    total = (q - 1) * int(mism.sum())
    # m11 = a != 0: m12, m21 free, m22 = (1 + m12 m21)/a; trace = a + m22
    grid = np.arange(q, dtype=np.int64)
    bc = mul[np.repeat(grid, q) * q64 + np.tile(grid, q)].astype(np.int64)
    num = add[q64 + bc].astype(np.int64)          # 1 + bc
    for a in range(1, q):
        m22 = mul[num * q64 + int(inv[a])].astype(np.int64)
        t = add[np.int64(a) * q64 + m22]
        total += int(mism[t].sum())
    return total


def build_a_set(q, mul, add, bykey, tpow, tnegpow, tmask):
    """All (a, b) in rank-lex order whose p shifted traces all pass tmask.

    Returns (ab int32[m,2], traces int32[m,p]) with traces[j][i-1] the
    trace a*theta^i + b*theta^-i."""
    p = tpow.shape[0]
    q64 = np.int64(q)
    bk = bykey.astype(np.int64)
    a = np.repeat(bk, q)
    b = np.tile(bk, q)
    acc = np.ones(q * q, bool)
    traces = np.empty((q * q, p), np.int32)
    for i in range(p):
        t = add[mul[a * q64 + int(tpow[i])].astype(np.int64) * q64
                + mul[b * q64 + int(tnegpow[i])]]
        traces[:, i] = t
        acc &= tmask[t].astype(bool)
    sel = np.flatnonzero(acc)
    ab = np.stack([a[sel], b[sel]], axis=1).astype(np.int32)
    return ab, traces[sel]


def variety_first_pair(q, mul, add, inv, ab, traces, psl_mode, okmask,
                       sqrt_idx, start_flat):
    """First flat pair index ia*m+ic passing determinant admissibility and
    the order-mask validation of all 2p (scaled) traces, or -1."""
    m = ab.shape[0]
    p = traces.shape[1]
    if m == 0:
        return -1
    q64 = np.int64(q)
    prod_ab = mul[ab[:, 0].astype(np.int64) * q64 + ab[:, 1]].astype(np.int64)
    for ia in range(m):
        flat_base = ia * m
        if flat_base + m <= start_flat:
            continue
        lo = max(0, start_flat - flat_base)
        pab = int(prod_ab[ia])
        cd = prod_ab[lo:]
        dd = add[np.int64(pab) * q64 + cd].astype(np.int64)
        if psl_mode:
            w = sqrt_idx[dd]
            okv = (dd != 0) & (w >= 0)
            wi = inv[np.where(w >= 0, w, 0)].astype(np.int64)
            for j in range(p):
                ta = int(traces[ia, j])
                okv &= okmask[mul[np.int64(ta) * q64 + wi]].astype(bool)
            tc = traces[lo:, :]
            for j in range(p):
                okv &= okmask[mul[tc[:, j].astype(np.int64) * q64 + wi]
                              ].astype(bool)
        else:
            okv = dd != 0
            di = inv[np.where(dd != 0, dd, 0)].astype(np.int64)
            for j in range(p):
                ta = int(traces[ia, j])
                tsq = int(mul[np.int64(ta) * q64 + ta])
                okv &= okmask[mul[np.int64(tsq) * q64 + di]].astype(bool)
            tc = traces[lo:, :]
            for j in range(p):
                tcj = tc[:, j].astype(np.int64)
                tsq = mul[tcj * q64 + tcj].astype(np.int64)
                okv &= okmask[mul[tsq * q64 + di]].astype(bool)
        nz = np.flatnonzero(okv)
        if nz.size:
            return flat_base + lo + int(nz[0])
    return -1


def count_x_fibers(q, mul, add, neg, inv, tpow, tnegpow, theta_inv, inv2,
                   four, sqrt_idx, pth, p):
    """Point count of the p-condition fiber system over all (a, b).

    Returns (total, A_s) where A_s[s] sums the fiber sizes over pairs with
    a*b = s.  Fiber size over (a,b) is the product over i of p times the
    number of roots d of X^2 - t_i X + 1 with d/theta a p-th power."""
    q64 = np.int64(q)
    ar = np.arange(q, dtype=np.int64)
    a = np.repeat(ar, q)
    b = np.tile(ar, q)
    prod = np.ones(q * q, np.int64)
    neg_four = int(neg[four])
    for i in range(p):
        t = add[mul[a * q64 + int(tpow[i])].astype(np.int64) * q64
                + mul[b * q64 + int(tnegpow[i])]].astype(np.int64)
        tsq = mul[t * q64 + t].astype(np.int64)
        disc = add[tsq * q64 + neg_four].astype(np.int64)
        s = sqrt_idx[disc]
        have = s >= 0
        s0 = np.where(have, s, 0).astype(np.int64)
        d1 = mul[add[t * q64 + s0].astype(np.int64) * q64 + inv2].astype(np.int64)
        d2 = mul[add[t * q64 + neg[s0].astype(np.int64)].astype(np.int64) * q64
                 + inv2].astype(np.int64)
        c1 = pth[mul[d1 * q64 + theta_inv]].astype(np.int64)
        c2 = pth[mul[d2 * q64 + theta_inv]].astype(np.int64)
        cnt = np.where(have, p * c1 + np.where(s0 != 0, p * c2, 0), 0)
        prod *= cnt
    total = int(prod.sum())
    A_s = np.zeros(q, np.int64)
    np.add.at(A_s, mul[a * q64 + b].astype(np.int64), prod)
    return total, A_s
