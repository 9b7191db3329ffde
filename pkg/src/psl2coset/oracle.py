"""Two independent "order divisible by d" tests for det-1 matrices.

The generic test computes the exact projective order.  The fast test, valid
for an odd prime p with p || q-1, is a single trace lookup: a det-1 matrix
has order divisible by p exactly when its trace equals u + 1/u for some u
in a nontrivial coset of the p-th powers.  Every search accepts witnesses
through the generic test only; the fast one is a scan accelerator.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .ffield import FieldCtx, FieldElem
from .mat2 import Mat2, psl2_order


@dataclass(frozen=True)
class TraceSet:
    """Traces of det-1 matrices whose order is a multiple of p."""

    ctx: FieldCtx
    p: int
    members: frozenset
    mask: np.ndarray = field(repr=False, compare=False)

    def __contains__(self, e: FieldElem) -> bool:
        return bool(self.mask[e.idx])

    def dump(self) -> list[str]:
        """Sorted member list in element text form, for eyeballing."""
        return [e.text for e in sorted(self.members, key=lambda x: x.key())]


def build_trace_set(ctx: FieldCtx, p: int) -> TraceSet:
    """All values e^p θ^j + (e^p θ^j)^-1 over e in F_q^*, 0 < j < p.

    Requires p an odd prime with p | q-1 but p^2 not | q-1, and odd
    characteristic (projective orders in even characteristic follow other
    conventions and are rejected throughout).
    """
    q = ctx.q
    if ctx.r == 2:
        raise ValueError("trace criterion needs odd characteristic")
    if p < 3 or (q - 1) % p != 0:
        raise ValueError(f"need odd prime p dividing q-1, got p={p}, q={q}")
    if (q - 1) % (p * p) == 0:
        raise ValueError(f"need p^2 not dividing q-1, got p={p}, q={q}")
    theta = ctx.root_of_unity(p)
    mask = np.zeros(q, np.uint8)
    members = set()
    for e in ctx.elements():
        if e.is_zero:
            continue
        ep = e ** p
        u = ep
        for _ in range(1, p):
            u = u * theta                 # e^p theta^j, j = 1..p-1
            t = u + u.inv()
            if not mask[t.idx]:
                mask[t.idx] = 1
                members.add(t)
    two = ctx.elem(2)
    assert two not in members and -two not in members
    assert len(members) == (q - 1) * (p - 1) // (2 * p)
    return TraceSet(ctx, p, frozenset(members), mask)


def order_divisible(ctx: FieldCtx, m: Mat2, d: int) -> bool:
    """Exact test: does d divide the order of m in PSL(2,q)?"""
    if not m.det() == ctx.one:
        raise ValueError("order_divisible needs a det-1 representative")
    return psl2_order(m) % d == 0


def order_divisible_fast(ts: TraceSet, m: Mat2) -> bool:
    """Trace-lookup test, equivalent to order_divisible(ctx, m, p)."""
    if not m.det() == ts.ctx.one:
        raise ValueError("trace criterion needs a det-1 representative")
    return bool(ts.mask[m.trace().idx])
