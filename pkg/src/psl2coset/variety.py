"""Exact rational point counts for the coset trace varieties.

X sits in F_q^(2+p): coordinates (a, b, c_1..c_p) with
c_i^p theta + (c_i^p theta)^-1 = a theta^i + b theta^-i for each i.
Counting goes fiber-wise over (a,b): each i contributes p per root d of
d^2 - t_i d + 1 whose ratio d/theta is a p-th power, so the whole count
is O(q^2 p) instead of q^(2+p).

Y is the subvariety of X(a,b) x X(c,d) x A^1 cut out by ab + cd = w^2;
its count folds the per-pair totals through the multiplicative
convolution A(s) = sum of fiber products over ab = s.

Deviations |count - q^dim| / q^(dim - 1/2) are reported, never asserted:
the interesting output is the trend, which stays bounded when the
defining ideal is prime.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import backend
from .ffield import FieldCtx, FieldElem, factorize, make_field, prime_power
from .mat2 import PSL, PGL, Mat2, canon
from .oracle import build_trace_set
from .search import Witness, make_witness, task_admissible
from .subgrp import dihedral_2p
from .tables import KERNEL_CAP, arith_pack, pth_power_mask, theta_pow_arrays

X_DIM = 2
Y_DIM = 4


@dataclass(frozen=True)
class PointCount:
    q: int
    p: int
    which: str                 # "X" | "Y"
    count: int
    dim: int
    deviation: float

    def csv_fields(self) -> list:
        return [self.which, str(self.q), str(self.p), str(self.dim),
                str(self.count), f"{self.deviation:.6f}", ""]


def _deviation(count: int, q: int, dim: int) -> float:
    return abs(count - q ** dim) / float(q) ** (dim - 0.5)


def _fiber_inputs(ctx: FieldCtx, p: int):
    ts = build_trace_set(ctx, p)      # enforces p || q-1, odd char
    del ts                            # hypotheses only; masks rebuilt below
    if ctx.q > KERNEL_CAP:
        raise ValueError(f"q={ctx.q} exceeds kernel cap {KERNEL_CAP}")
    ap = arith_pack(ctx)
    tpow, tnegpow = theta_pow_arrays(ctx, p)
    pth = pth_power_mask(ctx, p)
    theta_inv = ctx.root_of_unity(p).inv().idx
    inv2 = ctx.elem(2).inv().idx
    four = ctx.elem(4).idx
    return ap, tpow, tnegpow, pth, theta_inv, inv2, four


def _x_total_and_conv(ctx: FieldCtx, p: int):
    ap, tpow, tnegpow, pth, theta_inv, inv2, four = _fiber_inputs(ctx, p)
    total, A_s = backend.count_x_fibers(
        ctx.q, ap.mul, ap.add, ap.neg, ap.inv, tpow, tnegpow,
        theta_inv, inv2, four, ap.sqrt_idx, pth, p)
    return int(total), A_s, ap


def count_points_X(ctx: FieldCtx, p: int) -> PointCount:
    """Exact |X(F_q)| for the 2p-equation system, dimension 2."""
    total, _, _ = _x_total_and_conv(ctx, p)
    return PointCount(ctx.q, p, "X", total, X_DIM,
                      _deviation(total, ctx.q, X_DIM))


def _assemble_y(A_s: np.ndarray, add: np.ndarray, rvec: np.ndarray,
                force_exact: bool = False) -> int:
    """sum over (s,t) of A(s) A(t) r(s+t); exact regardless of magnitude.

    The vectorized int64 path is provably overflow-free when
    2 (sum A)^2 fits; past that bound (or when forced) the assembly runs
    on Python integers.
    """
    q = int(A_s.shape[0])
    sigma = int(A_s.sum())
    if not force_exact and 2 * sigma * sigma < 2 ** 63 - 1:
        rmat = rvec[add.reshape(q, q).astype(np.int64)]
        return int(A_s @ (rmat @ A_s))
    a_list = [int(v) for v in A_s]
    r_list = [int(v) for v in rvec]
    total = 0
    for s in range(q):
        if a_list[s] == 0:
            continue
        row = add[s * q:(s + 1) * q]
        total += a_list[s] * sum(
            a_list[t] * r_list[row[t]] for t in range(q))
    return total


def count_points_Y(ctx: FieldCtx, p: int) -> PointCount:
    """Exact |Y(F_q)|, Y = {X(a,b) x X(c,d) x A^1 : ab + cd = w^2}."""
    q = ctx.q
    _, A_s, ap = _x_total_and_conv(ctx, p)
    # r(v) = #{w : w^2 = v}: 1 at zero, 2 at nonzero squares, else 0
    rvec = np.where(ap.sqrt_idx >= 0, 2, 0).astype(np.int64)
    rvec[0] = 1
    total = _assemble_y(A_s, ap.add, rvec)
    return PointCount(q, p, "Y", total, Y_DIM, _deviation(total, q, Y_DIM))


def x_fiber_products(ctx: FieldCtx, p: int) -> np.ndarray:
    """The q x q grid n(a,b) of per-pair fiber sizes, indexed by element
    idx.  Pure recomputation, independent of the scan backend; the X count
    is its sum."""
    q = ctx.q
    ap, tpow, tnegpow, pth, theta_inv, inv2, four = _fiber_inputs(ctx, p)
    theta = ctx.root_of_unity(p)
    two = ctx.elem(2)
    grid = np.zeros((q, q), np.int64)
    for a_i in range(q):
        a = FieldElem(ctx, a_i)
        for b_i in range(q):
            b = FieldElem(ctx, b_i)
            n = 1
            for i in range(1, p + 1):
                t = a * theta ** i + b * theta ** (p - i)
                disc = t * t - two * two
                s = ctx.sqrt(disc)
                if s is None:
                    n = 0
                    break
                cnt = 0
                for root in {(t + s), (t - s)}:
                    d = root * two.inv()
                    if ctx.is_pth_power_i((d * theta.inv()).idx, p):
                        cnt += p
                if cnt == 0:
                    n = 0
                    break
                n *= cnt
            grid[a_i, b_i] = n
    return grid


def _trace_conditions_hold(ctx: FieldCtx, p: int,
                           a: FieldElem, b: FieldElem) -> bool:
    ts = build_trace_set(ctx, p)
    theta = ctx.root_of_unity(p)
    for i in range(1, p + 1):
        if a * theta ** i + b * theta ** (p - i) not in ts:
            return False
    return True


def _admissible_primes(ctx: FieldCtx) -> list[int]:
    out = []
    for pr, e in factorize(ctx.q - 1):
        if pr >= 3 and e == 1 and pr != ctx.r:
            out.append(pr)
    return out


def point_to_witness(ctx: FieldCtx, a: FieldElem, b: FieldElem,
                     c: FieldElem, d: FieldElem, ambient: str = PSL,
                     p: Optional[int] = None) -> Optional[Witness]:
    """Witness g = [[a,-c],[d,b]] from variety parameters, if admissible.

    Both (a,b) and (c,d) must satisfy all p trace conditions; handing in
    pairs that fail them is a hard error, not a None (the caller claimed
    variety points).  When p is omitted it is inferred as the smallest
    odd prime exactly dividing q-1 whose conditions both pairs satisfy.
    Returns None when ab + cd is zero, a non-square in psl mode, or when
    the det-normalized coset fails the exact order validation.
    """
    if p is None:
        cands = _admissible_primes(ctx)
        if not cands:
            raise ValueError(f"no odd prime exactly divides q-1 = {ctx.q - 1}")
        for cand in cands:
            if (_trace_conditions_hold(ctx, cand, a, b)
                    and _trace_conditions_hold(ctx, cand, c, d)):
                p = cand
                break
        else:
            raise ValueError(
                "trace conditions fail for every admissible p "
                f"(tried {cands}): inputs are not variety points")
    else:
        for pair, name in (((a, b), "(a,b)"), ((c, d), "(c,d)")):
            if not _trace_conditions_hold(ctx, p, *pair):
                raise ValueError(
                    f"trace conditions violated for {name} at p={p}: "
                    "inputs are not variety points")

    delta = a * b + c * d
    if delta.is_zero:
        return None
    raw = Mat2(a, -c, d, b)
    if ambient == PSL:
        w = ctx.sqrt(delta)
        if w is None:
            return None
        g = canon(raw.scale(w.inv()), PSL)
    else:
        g = canon(raw, PGL)
    H = dihedral_2p(ctx, p, ambient)
    try:
        return make_witness(g, H, p, "variety")
    except ValueError:
        return None


def lang_weil_report(p: int, q_values, which: str = "X",
                     notes: Optional[list] = None) -> list[PointCount]:
    """PointCount per admissible q in q_values, in input order.

    q that fail the hypotheses, or whose count raises, never abort the
    report: a (q, reason) pair is appended to `notes` when the caller
    supplies a list, and the row is skipped.  Integers that are not odd
    prime powers name no field and are dropped the same way.
    """
    if which not in ("X", "Y"):
        raise ValueError(f"which must be 'X' or 'Y', got {which!r}")
    counter = count_points_X if which == "X" else count_points_Y

    def record(q, reason):
        if notes is not None:
            notes.append((q, reason))

    rows = []
    for q in q_values:
        pp = prime_power(q)
        if pp is None or pp[0] == 2:
            record(q, "not an odd prime power")
            continue
        if not task_admissible("dihedral", p, q):
            record(q, _why_inadmissible(p, q, pp[0]))
            continue
        try:
            rows.append(counter(make_field(*pp), p))
        except Exception as exc:
            record(q, f"error: {exc}")
    return rows


def _why_inadmissible(p: int, q: int, r: int) -> str:
    if p < 3:
        return "p must be an odd prime"
    if p == r:
        return f"p equals the field characteristic {r}"
    if (q - 1) % p != 0:
        return f"{p} does not divide q-1"
    if (q - 1) % (p * p) == 0:
        return f"{p}^2 divides q-1"
    return "inadmissible"
