# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scan kernels.

Signature-for-signature and result-for-result identical to the NumPy
backend in _kernels_py.py; see that module for the index-space contract.
These loops win on early exit and cache behavior, which is what the time
budgets of the full-group scans care about.
"""

import numpy as np

from libc.stdint cimport int32_t, int64_t, uint8_t

BACKEND_NAME = "c"


cdef inline long long _trace_of_prod(int q, const int32_t[::1] mul,
                                     const int32_t[::1] add,
                                     long long m11, long long m12,
                                     long long m21, long long m22,
                                     long long h11, long long h12,
                                     long long h21, long long h22) nogil:
    cdef long long p11 = add[mul[m11 * q + h11] * q + mul[m12 * q + h21]]
    cdef long long p22 = add[mul[m21 * q + h12] * q + mul[m22 * q + h22]]
    return add[p11 * q + p22]


cdef inline bint _coset_ok_one(int q, const int32_t[::1] mul,
                               const int32_t[::1] add,
                               const int32_t[:, ::1] hmats,
                               const uint8_t[::1] ok,
                               long long m11, long long m12,
                               long long m21, long long m22) nogil:
    cdef Py_ssize_t h
    cdef long long t
    for h in range(hmats.shape[0]):
        t = _trace_of_prod(q, mul, add, m11, m12, m21, m22,
                           hmats[h, 0], hmats[h, 1], hmats[h, 2], hmats[h, 3])
        if not ok[t]:
            return False
    return True


def psl_first(int q, const int32_t[::1] mul, const int32_t[::1] add,
              const int32_t[::1] neg, const int32_t[::1] inv,
              const int32_t[::1] bykey, const int32_t[::1] half,
              const int32_t[:, ::1] hmats, const uint8_t[::1] ok,
              long long istart, long long istop):
    cdef Py_ssize_t H = half.shape[0]
    cdef long long i = 0, b0 = H * q
    cdef Py_ssize_t j, t
    cdef long long m11, m12, m21, m22, num, ainv
    if istart < b0:
        for j in range(H):
            if i + q <= istart:
                i += q
                continue
            if i >= istop:
                return -1
            m12 = half[j]
            m21 = neg[inv[m12]]
            for t in range(q):
                if i >= istop:
                    return -1
                if i >= istart:
                    m22 = bykey[t]
                    if _coset_ok_one(q, mul, add, hmats, ok, 0, m12, m21, m22):
                        return i
                i += 1
    else:
        i = b0
    cdef long long qq = <long long> q * q
    cdef Py_ssize_t tb, tc
    for j in range(H):
        if i + qq <= istart:
            i += qq
            continue
        if i >= istop:
            return -1
        m11 = half[j]
        ainv = inv[m11]
        for tb in range(q):
            if i + q <= istart:
                i += q
                continue
            if i >= istop:
                return -1
            m12 = bykey[tb]
            for tc in range(q):
                if i >= istop:
                    return -1
                if i >= istart:
                    m21 = bykey[tc]
                    num = add[q + mul[m12 * q + m21]]      # 1 + bc
                    m22 = mul[num * q + ainv]
                    if _coset_ok_one(q, mul, add, hmats, ok, m11, m12, m21, m22):
                        return i
                i += 1
    return -1


def psl_collect(int q, const int32_t[::1] mul, const int32_t[::1] add,
                const int32_t[::1] neg, const int32_t[::1] inv,
                const int32_t[::1] bykey, const int32_t[::1] half,
                const int32_t[:, ::1] hmats, const uint8_t[::1] ok,
                long long istart, long long istop):
    cdef Py_ssize_t H = half.shape[0]
    cdef long long i = 0, b0 = H * q
    cdef Py_ssize_t j, t, tb, tc
    cdef long long m11, m12, m21, m22, num, ainv
    out = []
    if istart < b0:
        for j in range(H):
            if i + q <= istart:
                i += q
                continue
            if i >= istop:
                break
            m12 = half[j]
            m21 = neg[inv[m12]]
            for t in range(q):
                if i >= istop:
                    break
                if i >= istart:
                    m22 = bykey[t]
                    if _coset_ok_one(q, mul, add, hmats, ok, 0, m12, m21, m22):
                        out.append(i)
                i += 1
    else:
        i = b0
    cdef long long qq = <long long> q * q
    for j in range(H):
        if i + qq <= istart:
            i += qq
            continue
        if i >= istop:
            break
        m11 = half[j]
        ainv = inv[m11]
        for tb in range(q):
            if i + q <= istart:
                i += q
                continue
            if i >= istop:
                break
            m12 = bykey[tb]
            for tc in range(q):
                if i >= istop:
                    break
                if i >= istart:
                    m21 = bykey[tc]
                    num = add[q + mul[m12 * q + m21]]
                    m22 = mul[num * q + ainv]
                    if _coset_ok_one(q, mul, add, hmats, ok, m11, m12, m21, m22):
                        out.append(i)
                i += 1
    return np.array(out, np.int64)


cdef inline bint _pgl_coset_ok_one(int q, const int32_t[::1] mul,
                                   const int32_t[::1] add,
                                   const int32_t[:, ::1] hmats,
                                   const int32_t[::1] hdinv,
                                   const uint8_t[::1] pgl_ok,
                                   long long m11, long long m12,
                                   long long m21, long long m22,
                                   long long dinv) nogil:
    cdef Py_ssize_t h
    cdef long long t, dd
    for h in range(hmats.shape[0]):
        t = _trace_of_prod(q, mul, add, m11, m12, m21, m22,
                           hmats[h, 0], hmats[h, 1], hmats[h, 2], hmats[h, 3])
        dd = mul[dinv * q + hdinv[h]]
        if not pgl_ok[mul[mul[t * q + t] * q + dd]]:
            return False
    return True


def pgl_first(int q, const int32_t[::1] mul, const int32_t[::1] add,
              const int32_t[::1] neg, const int32_t[::1] inv,
              const int32_t[::1] bykey, const int32_t[:, ::1] hmats,
              const int32_t[::1] hdinv,
              const uint8_t[::1] pgl_ok, long long istart, long long istop):
    cdef long long i = 0, b0 = <long long> (q - 1) * q
    cdef Py_ssize_t j, t, tb, tc, tf
    cdef long long m12, m21, m22, det, dinv
    if istart < b0:
        for j in range(q - 1):
            if i + q <= istart:
                i += q
                continue
            if i >= istop:
                return -1
            m21 = bykey[j + 1]
            dinv = inv[neg[m21]]
            for t in range(q):
                if i >= istop:
                    return -1
                if i >= istart:
                    m22 = bykey[t]
                    if _pgl_coset_ok_one(q, mul, add, hmats, hdinv, pgl_ok,
                                         0, 1, m21, m22, dinv):
                        return i
                i += 1
    else:
        i = b0
    cdef long long qq = <long long> q * q
    for tb in range(q):
        if i + qq <= istart:
            i += qq
            continue
        if i >= istop:
            return -1
        m12 = bykey[tb]
        for tc in range(q):
            if i + q <= istart:
                i += q
                continue
            if i >= istop:
                return -1
            m21 = bykey[tc]
            for tf in range(q):
                if i >= istop:
                    return -1
                if i >= istart:
                    m22 = bykey[tf]
                    det = add[m22 * q + neg[mul[m12 * q + m21]]]
                    if det != 0:
                        dinv = inv[det]
                        if _pgl_coset_ok_one(q, mul, add, hmats, hdinv, pgl_ok,
                                             1, m12, m21, m22, dinv):
                            return i
                i += 1
    return -1


def pgl_collect(int q, const int32_t[::1] mul, const int32_t[::1] add,
                const int32_t[::1] neg, const int32_t[::1] inv,
                const int32_t[::1] bykey, const int32_t[:, ::1] hmats,
                const int32_t[::1] hdinv,
                const uint8_t[::1] pgl_ok, long long istart, long long istop):
    cdef long long i = 0, b0 = <long long> (q - 1) * q
    cdef Py_ssize_t j, t, tb, tc, tf
    cdef long long m12, m21, m22, det, dinv
    out = []
    if istart < b0:
        for j in range(q - 1):
            if i + q <= istart:
                i += q
                continue
            if i >= istop:
                break
            m21 = bykey[j + 1]
            dinv = inv[neg[m21]]
            for t in range(q):
                if i >= istop:
                    break
                if i >= istart:
                    m22 = bykey[t]
                    if _pgl_coset_ok_one(q, mul, add, hmats, hdinv, pgl_ok,
                                         0, 1, m21, m22, dinv):
                        out.append(i)
                i += 1
    else:
        i = b0
    cdef long long qq = <long long> q * q
    for tb in range(q):
        if i + qq <= istart:
            i += qq
            continue
        if i >= istop:
            break
        m12 = bykey[tb]
        for tc in range(q):
            if i + q <= istart:
                i += q
                continue
            if i >= istop:
                break
            m21 = bykey[tc]
            for tf in range(q):
                if i >= istop:
                    break
                if i >= istart:
                    m22 = bykey[tf]
                    det = add[m22 * q + neg[mul[m12 * q + m21]]]
                    if det != 0:
                        dinv = inv[det]
                        if _pgl_coset_ok_one(q, mul, add, hmats, hdinv, pgl_ok,
                                             1, m12, m21, m22, dinv):
                            out.append(i)
                i += 1
    return np.array(out, np.int64)


cdef inline bint _normalizes(int q, const int32_t[::1] mul,
                             const int32_t[::1] add, const int32_t[::1] neg,
                             const int32_t[::1] rank,
                             const int32_t[:, ::1] submats,
                             const int64_t[::1] subpack,
                             long long g11, long long g12,
                             long long g21, long long g22) nogil:
    # g has det 1: inverse = adjugate (g22, -g12, -g21, g11)
    cdef long long a11 = g22, a12 = neg[g12], a21 = neg[g21], a22 = g11
    cdef long long u11, u12, u21, u22, c11, c12, c21, c22, fnz, packed
    cdef Py_ssize_t s, t
    cdef bint found
    for s in range(submats.shape[0]):
        u11 = add[mul[g11 * q + submats[s, 0]] * q + mul[g12 * q + submats[s, 2]]]
        u12 = add[mul[g11 * q + submats[s, 1]] * q + mul[g12 * q + submats[s, 3]]]
        u21 = add[mul[g21 * q + submats[s, 0]] * q + mul[g22 * q + submats[s, 2]]]
        u22 = add[mul[g21 * q + submats[s, 1]] * q + mul[g22 * q + submats[s, 3]]]
        c11 = add[mul[u11 * q + a11] * q + mul[u12 * q + a21]]
        c12 = add[mul[u11 * q + a12] * q + mul[u12 * q + a22]]
        c21 = add[mul[u21 * q + a11] * q + mul[u22 * q + a21]]
        c22 = add[mul[u21 * q + a12] * q + mul[u22 * q + a22]]
        if c11 != 0:
            fnz = c11
        elif c12 != 0:
            fnz = c12
        elif c21 != 0:
            fnz = c21
        else:
            fnz = c22
        if rank[neg[fnz]] < rank[fnz]:
            c11 = neg[c11]
            c12 = neg[c12]
            c21 = neg[c21]
            c22 = neg[c22]
        packed = ((c11 * q + c12) * q + c21) * q + c22
        found = False
        for t in range(subpack.shape[0]):
            if subpack[t] == packed:
                found = True
                break
        if not found:
            return False
    return True


def normalizer_collect(int q, const int32_t[::1] mul, const int32_t[::1] add,
                       const int32_t[::1] neg, const int32_t[::1] inv,
                       const int32_t[::1] bykey, const int32_t[::1] half,
                       const int32_t[::1] rank, const int32_t[:, ::1] submats,
                       const int64_t[::1] subpack,
                       long long istart, long long istop):
    cdef Py_ssize_t H = half.shape[0]
    cdef long long i = 0, b0 = H * q
    cdef Py_ssize_t j, t, tb, tc
    cdef long long m11, m12, m21, m22, num, ainv
    out = []
    if istart < b0:
        for j in range(H):
            if i + q <= istart:
                i += q
                continue
            if i >= istop:
                break
            m12 = half[j]
            m21 = neg[inv[m12]]
            for t in range(q):
                if i >= istop:
                    break
                if i >= istart:
                    m22 = bykey[t]
                    if _normalizes(q, mul, add, neg, rank, submats, subpack,
                                   0, m12, m21, m22):
                        out.append(i)
                i += 1
    else:
        i = b0
    cdef long long qq = <long long> q * q
    for j in range(H):
        if i + qq <= istart:
            i += qq
            continue
        if i >= istop:
            break
        m11 = half[j]
        ainv = inv[m11]
        for tb in range(q):
            if i + q <= istart:
                i += q
                continue
            if i >= istop:
                break
            m12 = bykey[tb]
            for tc in range(q):
                if i >= istop:
                    break
                if i >= istart:
                    m21 = bykey[tc]
                    num = add[q + mul[m12 * q + m21]]
                    m22 = mul[num * q + ainv]
                    if _normalizes(q, mul, add, neg, rank, submats, subpack,
                                   m11, m12, m21, m22):
                        out.append(i)
                i += 1
    return np.array(out, np.int64)


def sl2_mismatches(int q, const int32_t[::1] mul, const int32_t[::1] add,
                   const int32_t[::1] neg, const int32_t[::1] inv,
                   const uint8_t[::1] fast, const uint8_t[::1] gen):
    cdef long long total = 0
    cdef Py_ssize_t a, b, c, t
    cdef long long m22, tr, num, ainv
    # m11 = 0: trace = m22, (q-1) choices of m12
    for t in range(q):
        if (fast[t] != 0) != (gen[t] != 0):
            total += q - 1
    # m11 = a != 0: m22 = (1 + bc)/a
    for a in range(1, q):
        ainv = inv[a]
        for b in range(q):
            for c in range(q):
                num = add[q + mul[<long long> b * q + c]]
                m22 = mul[num * q + ainv]
                tr = add[<long long> a * q + m22]
                if (fast[tr] != 0) != (gen[tr] != 0):
                    total += 1
    return total


def build_a_set(int q, const int32_t[::1] mul, const int32_t[::1] add,
                const int32_t[::1] bykey, const int32_t[::1] tpow,
                const int32_t[::1] tnegpow, const uint8_t[::1] tmask):
    cdef Py_ssize_t p = tpow.shape[0]
    cdef Py_ssize_t ra, rb, i
    cdef long long a, b, t
    cdef bint good
    ab_out = []
    tr_out = []
    row = np.empty(p, np.int32)
    cdef int32_t[::1] rowv = row
    for ra in range(q):
        a = bykey[ra]
        for rb in range(q):
            b = bykey[rb]
            good = True
            for i in range(p):
                t = add[mul[a * q + tpow[i]] * q + mul[b * q + tnegpow[i]]]
                if not tmask[t]:
                    good = False
                    break
                rowv[i] = <int32_t> t
            if good:
                ab_out.append((a, b))
                tr_out.append(row.copy())
    if not ab_out:
        return np.empty((0, 2), np.int32), np.empty((0, p), np.int32)
    return np.array(ab_out, np.int32), np.array(tr_out, np.int32)


def variety_first_pair(int q, const int32_t[::1] mul, const int32_t[::1] add,
                       const int32_t[::1] inv, const int32_t[:, ::1] ab,
                       const int32_t[:, ::1] traces, bint psl_mode,
                       const uint8_t[::1] okmask, const int32_t[::1] sqrt_idx,
                       long long start_flat):
    cdef Py_ssize_t m = ab.shape[0]
    cdef Py_ssize_t p = traces.shape[1]
    cdef Py_ssize_t ia, ic, j
    cdef long long flat = 0, pab, pcd, dd, w, wi, di, t, tsq
    cdef bint good
    if m == 0:
        return -1
    for ia in range(m):
        if flat + m <= start_flat:
            flat += m
            continue
        pab = mul[<long long> ab[ia, 0] * q + ab[ia, 1]]
        for ic in range(m):
            if flat < start_flat:
                flat += 1
                continue
            pcd = mul[<long long> ab[ic, 0] * q + ab[ic, 1]]
            dd = add[pab * q + pcd]
            good = dd != 0
            if good:
                if psl_mode:
                    w = sqrt_idx[dd]
                    if w < 0:
                        good = False
                    else:
                        wi = inv[w]
                        for j in range(p):
                            if not okmask[mul[<long long> traces[ia, j] * q + wi]]:
                                good = False
                                break
                        if good:
                            for j in range(p):
                                if not okmask[mul[<long long> traces[ic, j] * q + wi]]:
                                    good = False
                                    break
                else:
                    di = inv[dd]
                    for j in range(p):
                        t = traces[ia, j]
                        tsq = mul[t * q + t]
                        if not okmask[mul[tsq * q + di]]:
                            good = False
                            break
                    if good:
                        for j in range(p):
                            t = traces[ic, j]
                            tsq = mul[t * q + t]
                            if not okmask[mul[tsq * q + di]]:
                                good = False
                                break
            if good:
                return flat
            flat += 1
    return -1


def count_x_fibers(int q, const int32_t[::1] mul, const int32_t[::1] add,
                   const int32_t[::1] neg, const int32_t[::1] inv,
                   const int32_t[::1] tpow, const int32_t[::1] tnegpow,
                   long long theta_inv, long long inv2, long long four,
                   const int32_t[::1] sqrt_idx, const uint8_t[::1] pth, int p):
    cdef long long total = 0
    A_s = np.zeros(q, np.int64)
    cdef int64_t[::1] av = A_s
    cdef Py_ssize_t a, b, i
    cdef long long t, tsq, disc, s, d1, d2, cnt, prod, neg_four
    neg_four = neg[four]
    for a in range(q):
        for b in range(q):
            prod = 1
            for i in range(p):
                t = add[mul[<long long> a * q + tpow[i]] * q
                        + mul[<long long> b * q + tnegpow[i]]]
                tsq = mul[t * q + t]
                disc = add[tsq * q + neg_four]
                s = sqrt_idx[disc]
                if s < 0:
                    prod = 0
                    break
                cnt = 0
                d1 = mul[add[t * q + s] * q + inv2]
                if pth[mul[d1 * q + theta_inv]]:
                    cnt += p
                if s != 0:
                    d2 = mul[add[t * q + neg[s]] * q + inv2]
                    if pth[mul[d2 * q + theta_inv]]:
                        cnt += p
                if cnt == 0:
                    prod = 0
                    break
                prod *= cnt
            if prod != 0:
                total += prod
                av[mul[<long long> a * q + b]] += prod
    return total, A_s
