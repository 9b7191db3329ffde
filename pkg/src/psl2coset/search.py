"""Witness search: find g with every element of gH of order divisible by d.

Two engines.  brute_search walks the whole projective group in canonical
index order, pre-filtering each candidate through the packed trace masks
and accepting only after exact order validation.  variety_search solves
the dihedral case in O(q^2 p) by building the set A of admissible (a,b)
trace pairs and pairing rows of A; any pair that passes determinant and
order-mask validation maps straight to a witness matrix [[a,-c],[d,b]].

Every witness returned anywhere re-validates through the exact projective
orders; the masks only steer the scans.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import numpy as np

from . import backend
from .ffield import FieldCtx, FieldElem, make_field, prime_power
from .mat2 import (PSL, PGL, Mat2, ProjPoint, canon, enumerate_group,
                   group_order, index_space, proj_order, psl2_order, unrank)
from .oracle import build_trace_set
from .subgrp import (Subgroup, dihedral_2p, is_A4, klein_four, normalizer,
                     sylow_p_diag)
from .tables import (KERNEL_CAP, arith_pack, ok_mask_pgl, ok_mask_psl,
                     pack_det_invs, pack_mats, theta_pow_arrays)


@dataclass(frozen=True)
class Witness:
    ctx: FieldCtx
    ambient: str
    subgroup: Subgroup
    g: ProjPoint
    audit: tuple               # ((ProjPoint, order) per coset element)
    method: str                # "brute" | "variety"
    d: int

    def to_doc(self, task: Optional[str] = None) -> dict:
        return {
            "found": True,
            "task": task or self.subgroup.kind,
            "q": self.ctx.q,
            "p": self.d,
            "ambient": self.ambient,
            "method": self.method,
            "g": self.g.text,
            "audit": [{"element": pt.text, "order": o}
                      for pt, o in self.audit],
        }

    def to_json(self, task: Optional[str] = None) -> str:
        return json.dumps(self.to_doc(task), sort_keys=True, indent=2) + "\n"


def none_doc(q: int, d: int, ambient: str, method: str,
             task: str) -> dict:
    """The 'verified absent' record: a determination, not an error."""
    return {"found": False, "task": task, "q": q, "p": d,
            "ambient": ambient, "method": method}


def _order_in(ambient: str, m: Mat2) -> int:
    return psl2_order(m) if ambient == PSL else proj_order(m)


def coset_all_divisible(g: ProjPoint, H: Subgroup, d: int) -> bool:
    """Exact validator: d divides the order of g*h for every h in H."""
    if g.ambient != H.ambient:
        raise ValueError("witness and subgroup ambient differ")
    for h in H.elements:
        if _order_in(H.ambient, g.rep @ h.rep) % d != 0:
            return False
    return True


def make_witness(g: ProjPoint, H: Subgroup, d: int, method: str) -> Witness:
    """Audit every coset element exactly; raise if any order fails."""
    audit = []
    for h in H.elements:
        prod = canon(g.rep @ h.rep, H.ambient)
        o = _order_in(H.ambient, prod.rep)
        if o % d != 0:
            raise ValueError(
                f"coset element {prod.text} has order {o}, not divisible "
                f"by {d}")
        audit.append((prod, o))
    return Witness(H.ctx, H.ambient, H, g, tuple(audit), method, d)


# ---------------------------------------------------------------------------
# brute force over the whole group

def _sub_idx_rows(H: Subgroup) -> tuple:
    return tuple((pt.rep.m11.idx, pt.rep.m12.idx, pt.rep.m21.idx,
                  pt.rep.m22.idx) for pt in H.elements)


def _kernel_inputs(ctx: FieldCtx, ambient: str, d: int, rows: tuple):
    ap = arith_pack(ctx)
    hmats = np.array(rows, np.int32).reshape(len(rows), 4)
    if ambient == PSL:
        ok = ok_mask_psl(ctx, d)
        return ap, hmats, None, ok
    ok = ok_mask_pgl(ctx, d)
    hdinv = np.empty(len(rows), np.int32)
    for i, (a, b, c, e) in enumerate(rows):
        det = ctx.sub_i(ctx.mul_i(a, e), ctx.mul_i(b, c))
        if det == 0:
            raise ValueError("singular subgroup representative")
        hdinv[i] = ctx.inv_i(det)
    return ap, hmats, hdinv, ok


def _brute_chunk(args) -> list:
    """Worker body: scan [lo,hi) of the index space, return hit indices."""
    (r, k, ambient, d, rows, lo, hi, collect) = args
    ctx = make_field(r, k)
    ap, hmats, hdinv, ok = _kernel_inputs(ctx, ambient, d, rows)
    q = ctx.q
    if ambient == PSL:
        if collect:
            out = backend.psl_collect(q, ap.mul, ap.add, ap.neg, ap.inv,
                                      ap.bykey, ap.half, hmats, ok, lo, hi)
            return out.tolist()
        first = backend.psl_first(q, ap.mul, ap.add, ap.neg, ap.inv,
                                  ap.bykey, ap.half, hmats, ok, lo, hi)
    else:
        if collect:
            out = backend.pgl_collect(q, ap.mul, ap.add, ap.neg, ap.inv,
                                      ap.bykey, hmats, hdinv, ok, lo, hi)
            return out.tolist()
        first = backend.pgl_first(q, ap.mul, ap.add, ap.neg, ap.inv,
                                  ap.bykey, hmats, hdinv, ok, lo, hi)
    return [] if first < 0 else [first]


def _mask_scan_indices(H: Subgroup, d: int, mode: str, workers: int) -> list:
    """Kernel-accelerated index scan; returns hit indices (all or first)."""
    ctx = H.ctx
    n = index_space(ctx, H.ambient)
    rows = _sub_idx_rows(H)
    collect = mode == "all"
    if workers <= 1:
        return _brute_chunk((ctx.r, ctx.k, H.ambient, d, rows, 0, n, collect))
    step = -(-n // workers)
    tasks = [(ctx.r, ctx.k, H.ambient, d, rows, lo, min(lo + step, n),
              collect) for lo in range(0, n, step)]
    hits: list = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_brute_chunk, tasks):
            if collect:
                hits.extend(part)
            elif part:
                return part[:1]     # chunks are in index order
    return hits


def _pure_scan_indices(H: Subgroup, d: int, mode: str) -> list:
    """Fallback without packed tables: exact orders straight off."""
    hits = []
    for i, pt in enumerate(enumerate_group(H.ctx, H.ambient)):
        if all(_order_in(H.ambient, pt.rep @ h.rep) % d == 0
               for h in H.elements):
            hits.append(i)
            if mode == "first":
                break
    return hits


def brute_search(H: Subgroup, d: int, mode: str = "first",
                 workers: int = 1, budget: int = 10 ** 8):
    """Deterministic whole-group scan for coset witnesses.

    mode="first" returns the earliest Witness or None; mode="all" returns
    the full list.  The scan runs on the packed-table kernels whenever the
    field fits (q <= KERNEL_CAP and d usable as a mask divisor), else on
    the exact-order fallback.  Worker counts do not change the output.
    """
    ctx = H.ctx
    if mode not in ("first", "all"):
        raise ValueError(f"mode must be 'first' or 'all', got {mode!r}")
    if group_order(ctx, H.ambient) > budget:
        raise ValueError(
            f"group order {group_order(ctx, H.ambient)} exceeds budget "
            f"{budget}")
    use_kernel = ctx.q <= KERNEL_CAP and d >= 2 and d != ctx.r
    if use_kernel:
        hits = _mask_scan_indices(H, d, mode, workers)
    else:
        hits = _pure_scan_indices(H, d, mode)
    witnesses = [make_witness(ProjPoint(unrank(ctx, H.ambient, i), H.ambient),
                              H, d, "brute") for i in hits]
    if mode == "all":
        return witnesses
    return witnesses[0] if witnesses else None


# ---------------------------------------------------------------------------
# the O(q^2 p) dihedral engine

def variety_search(ctx: FieldCtx, p: int, ambient: str = PSL
                   ) -> Optional[Witness]:
    """First witness for the dihedral coset problem via the A-set pairing.

    A = {(a,b) : a theta^i + b theta^-i lands in the trace set for all
    i = 1..p}; a witness is [[a,-c],[d,b]] for rows (a,b),(c,d) of A whose
    determinant ab+cd is nonzero (and a square, when ambient is psl),
    provided the det-normalized traces still certify order divisibility.
    Rows are paired in key order, so the returned witness is the first one.
    """
    ts = build_trace_set(ctx, p)     # also enforces the divisibility hyps
    if ctx.q > KERNEL_CAP:
        raise ValueError(f"q={ctx.q} exceeds kernel cap {KERNEL_CAP}")
    q = ctx.q
    ap = arith_pack(ctx)
    tpow, tnegpow = theta_pow_arrays(ctx, p)
    ab, traces = backend.build_a_set(q, ap.mul, ap.add, ap.bykey,
                                     tpow, tnegpow, ts.mask)
    m = int(ab.shape[0])
    if m == 0:
        return None
    psl_mode = ambient == PSL
    okmask = ok_mask_psl(ctx, p) if psl_mode else ok_mask_pgl(ctx, p)
    H = dihedral_2p(ctx, p, ambient)
    start = 0
    while True:
        flat = backend.variety_first_pair(q, ap.mul, ap.add, ap.inv, ab,
                                          traces, psl_mode, okmask,
                                          ap.sqrt_idx, start)
        if flat < 0:
            return None
        ia, ic = divmod(int(flat), m)
        a = FieldElem(ctx, int(ab[ia, 0]))
        b = FieldElem(ctx, int(ab[ia, 1]))
        c = FieldElem(ctx, int(ab[ic, 0]))
        dd = FieldElem(ctx, int(ab[ic, 1]))
        raw = Mat2(a, -c, dd, b)
        if psl_mode:
            w = ctx.sqrt(raw.det())
            if w is None:       # cannot happen: the kernel checked
                start = flat + 1
                continue
            g = canon(raw.scale(w.inv()), PSL)
        else:
            g = canon(raw, PGL)
        try:
            return make_witness(g, H, p, "variety")
        except ValueError:
            # defensive: masks certified the pair, but never hand out a
            # witness the exact validator has not signed off on
            start = flat + 1


# ---------------------------------------------------------------------------
# scan tables

TASKS = ("dihedral", "klein", "a4")


@dataclass
class ScanRow:
    q: int
    p: int
    task: str
    found: str                 # "true" | "false" | "error"
    witness: str               # g text, or "" when absent/error
    count: Optional[int]       # witness count in all-mode, else None
    ms: Optional[float]        # elapsed, populated only when timed
    error: str = ""            # diagnostic, never serialized to CSV

    def csv_fields(self) -> list:
        return [str(self.q), str(self.p), self.task, self.found,
                self.witness,
                "" if self.count is None else str(self.count),
                "" if self.ms is None else f"{self.ms:.1f}"]


def task_admissible(task: str, p: int, q: int) -> bool:
    """Does (p, q) satisfy the task's divisibility/congruence hypotheses?"""
    pp = prime_power(q)
    if pp is None or pp[0] == 2:
        return False
    r = pp[0]
    if task == "dihedral":
        return (p >= 3 and p != r and (q - 1) % p == 0
                and (q - 1) % (p * p) != 0)
    if task in ("klein", "a4"):
        return p == 2 and q % 8 in (3, 5)
    raise ValueError(f"unknown task {task!r}")


def _task_subgroup(ctx: FieldCtx, task: str, p: int,
                   ambient: str = PSL) -> tuple:
    if task not in TASKS:
        raise ValueError(f"unknown task {task!r}")
    if task == "dihedral":
        return dihedral_2p(ctx, p, ambient), p
    if ambient != PSL:
        raise ValueError(f"task {task} is defined inside psl")
    V = klein_four(ctx)
    if task == "klein":
        return V, 2
    N = normalizer(V)
    if not is_A4(N):
        raise AssertionError(
            f"normalizer at q={ctx.q} has size {len(N)}, not A4")
    return N, 2


def run_task(ctx: FieldCtx, task: str, p: int, mode: str = "auto",
             which: str = "first", workers: int = 1,
             budget: int = 10 ** 8, ambient: str = PSL):
    """One (task, q) search.  Returns (witness-or-None, count-or-None)."""
    if mode == "auto":
        mode = ("variety" if task == "dihedral" and which == "first"
                else "brute")
    if mode == "variety":
        if task != "dihedral":
            raise ValueError("the variety engine only solves task=dihedral")
        if which != "first":
            raise ValueError("the variety engine only finds the first "
                             "witness; use which=first")
        return variety_search(ctx, p, ambient), None
    H, d = _task_subgroup(ctx, task, p, ambient)
    res = brute_search(H, d, mode=which, workers=workers, budget=budget)
    if which == "all":
        return (res[0] if res else None), len(res)
    return res, None


def scan_q(task: str, p: int, q_values: Iterable[int], mode: str = "auto",
           which: str = "first", workers: int = 1, budget: int = 10 ** 8,
           timings: bool = False,
           sink: Optional[Callable[[ScanRow], None]] = None,
           ambient: str = PSL) -> list:
    """One ScanRow per admissible q, in order; errors land in rows."""
    rows = []
    for q in q_values:
        if not task_admissible(task, p, q):
            continue
        r, k = prime_power(q)
        ctx = make_field(r, k)
        t0 = time.perf_counter()
        try:
            wit, count = run_task(ctx, task, p, mode=mode, which=which,
                                  workers=workers, budget=budget,
                                  ambient=ambient)
            ms = (time.perf_counter() - t0) * 1000.0
            row = ScanRow(q, p, task, "true" if wit else "false",
                          wit.g.text if wit else "",
                          count, ms if timings else None)
        except Exception as exc:   # per-q failures must not kill the scan
            ms = (time.perf_counter() - t0) * 1000.0
            row = ScanRow(q, p, task, "error", "", None,
                          ms if timings else None, error=str(exc))
        rows.append(row)
        if sink is not None:
            sink(row)
    return rows


# ---------------------------------------------------------------------------
# canned reproductions

def verify_paige() -> Witness:
    """q=53: a coset of the order-4 Sylow 2-subgroup, all orders even."""
    ctx = make_field(53, 1)
    V = klein_four(ctx)
    assert len(V) == 4
    w = brute_search(V, 2, mode="first")
    if w is None:
        raise AssertionError("no even-order coset found at q=53")
    assert coset_all_divisible(w.g, V, 2)
    return w


def verify_thompson27() -> Witness:
    """Same reproduction over the 27-element field."""
    ctx = make_field(3, 3)
    V = klein_four(ctx)
    assert len(V) == 4
    w = brute_search(V, 2, mode="first")
    if w is None:
        raise AssertionError("no even-order coset found at q=27")
    assert coset_all_divisible(w.g, V, 2)
    return w


def verify_char2() -> Witness:
    """q=139: the A4 normalizer of the Klein group, coset of even orders."""
    ctx = make_field(139, 1)
    V = klein_four(ctx)
    N = normalizer(V)
    assert len(N) == 12, f"|N| = {len(N)}"
    assert is_A4(N), f"order stats {N.order_stats()}"
    w = brute_search(N, 2, mode="first")
    if w is None:
        raise AssertionError("no even-order coset of N found at q=139")
    assert coset_all_divisible(w.g, N, 2)
    assert len(w.audit) == 12
    return w
