"""Concrete subgroups of PSL(2,q)/PGL(2,q) used by the coset scans.

Constructors pin explicit generators so every downstream witness is
reproducible: the diagonal cyclic group of odd prime order p (when
p || q-1), the dihedral group of order 2p over it, the Klein four group
{I, x, y, xy} that is a full Sylow 2-subgroup exactly when q = +-3 mod 8,
and brute-force normalizers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import backend
from .ffield import FieldCtx, make_field, prime_power
from .mat2 import (PSL, PGL, AMBIENTS, Mat2, ProjPoint, canon, group_order,
                   identity, index_space, mat, mat_from_text, proj_order,
                   psl2_order, unrank)
from .tables import KERNEL_CAP, arith_pack, pack_mats

CYCLIC_P = "cyclic-p"
DIHEDRAL_2P = "dihedral-2p"
KLEIN_FOUR = "klein-four"
NORMALIZER = "normalizer"
GENERIC = "generic"


@dataclass(frozen=True)
class Subgroup:
    ctx: FieldCtx
    ambient: str
    elements: tuple            # ProjPoint, closed under the group law
    kind: str
    generators: tuple          # Mat2

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, pt: ProjPoint) -> bool:
        return pt in self.elements

    def mats(self) -> list[Mat2]:
        return [pt.rep for pt in self.elements]

    def element_order(self, pt: ProjPoint) -> int:
        if self.ambient == PSL:
            return psl2_order(pt.rep)
        return proj_order(pt.rep)

    def order_stats(self) -> dict[int, int]:
        stats: dict[int, int] = {}
        for pt in self.elements:
            o = self.element_order(pt)
            stats[o] = stats.get(o, 0) + 1
        return stats

    def to_json(self) -> str:
        doc = {
            "kind": self.kind,
            "ambient": self.ambient,
            "q": self.ctx.q,
            "generators": [g.text for g in self.generators],
            "elements": [pt.text for pt in self.elements],
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def from_json(text: str) -> Subgroup:
    doc = json.loads(text)
    pp = prime_power(doc["q"])
    if pp is None:
        raise ValueError(f"q={doc['q']} is not a prime power")
    ctx = make_field(*pp)
    ambient = doc["ambient"]
    if ambient not in AMBIENTS:
        raise ValueError(f"unknown ambient {ambient!r}")
    gens = tuple(mat_from_text(ctx, t) for t in doc["generators"])
    els = tuple(canon(mat_from_text(ctx, t), ambient) for t in doc["elements"])
    return Subgroup(ctx, ambient, els, doc["kind"], gens)


def closure(ctx: FieldCtx, ambient: str, gens, cap: int = 10000) -> tuple:
    """Subgroup generated by `gens`, as canonical points; BFS with a cap."""
    seen = {canon(identity(ctx), ambient)}
    frontier = [canon(g, ambient) for g in gens]
    seen.update(frontier)
    while frontier:
        nxt = []
        for a in list(seen):
            for b in frontier:
                c = canon(a.rep @ b.rep, ambient)
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
                    if len(seen) > cap:
                        raise ValueError(f"closure exceeded cap {cap}")
        frontier = nxt
    return tuple(sorted(seen, key=_point_key))


def _point_key(pt: ProjPoint):
    m = pt.rep
    return (m.m11.key(), m.m12.key(), m.m21.key(), m.m22.key())


def _require_sylow_hyp(ctx: FieldCtx, p: int) -> None:
    q = ctx.q
    if ctx.r == 2:
        raise ValueError("constructions assume odd characteristic")
    if p < 3 or (q - 1) % p != 0:
        raise ValueError(f"need odd prime p | q-1, got p={p}, q={q}")
    if (q - 1) % (p * p) == 0:
        raise ValueError(f"need p^2 not dividing q-1, got p={p}, q={q}")


def sylow_p_diag(ctx: FieldCtx, p: int) -> Subgroup:
    """Cyclic subgroup of order p generated by diag(theta, 1/theta)."""
    _require_sylow_hyp(ctx, p)
    theta = ctx.root_of_unity(p)
    s = mat(ctx, [[theta, ctx.zero], [ctx.zero, theta.inv()]])
    els = []
    cur = identity(ctx)
    for _ in range(p):
        els.append(canon(cur, PSL))
        cur = cur @ s
    assert cur.is_identity
    return Subgroup(ctx, PSL, tuple(els), CYCLIC_P, (s,))


def dihedral_2p(ctx: FieldCtx, p: int, ambient: str = PSL) -> Subgroup:
    """Dihedral group of order 2p: rotations s^i, reflections x s^i.

    The same matrices generate it inside either projective group; the
    ambient tag only changes which canonical representatives are stored.
    """
    _require_sylow_hyp(ctx, p)
    theta = ctx.root_of_unity(p)
    s = mat(ctx, [[theta, ctx.zero], [ctx.zero, theta.inv()]])
    x = mat(ctx, [[ctx.zero, ctx.one], [-ctx.one, ctx.zero]])
    rel = canon(x @ s @ x.inverse(), ambient)
    if rel != canon(s.inverse(), ambient):
        raise AssertionError("dihedral relation x s x^-1 = s^-1 failed")
    els = []
    cur = identity(ctx)
    for _ in range(p):
        els.append(canon(cur, ambient))
        els.append(canon(x @ cur, ambient))
        cur = cur @ s
    if len(set(els)) != 2 * p:
        raise AssertionError("dihedral group is not of order 2p")
    return Subgroup(ctx, ambient, tuple(els), DIHEDRAL_2P, (s, x))


def klein_four(ctx: FieldCtx) -> Subgroup:
    """The Sylow 2-subgroup {I, x, y, xy} of PSL(2,q) for q = +-3 mod 8.

    y = [[u,v],[v,-u]] needs u^2 + v^2 = -1; the first (u, v) in element
    key order is taken, so the construction is deterministic.
    """
    q = ctx.q
    if ctx.r == 2:
        raise ValueError("constructions assume odd characteristic")
    if q % 8 not in (3, 5):
        raise ValueError(
            f"Sylow 2-subgroup of PSL(2,{q}) has order 4 only for "
            f"q = +-3 mod 8, got q = {q % 8} mod 8")
    minus_one = -ctx.one
    found = None
    for u in ctx.elements_by_key():
        want = minus_one - u * u
        for v in ctx.elements_by_key():
            if v * v == want:
                found = (u, v)
                break
        if found:
            break
    if found is None:      # cannot happen: -1 is a sum of two squares
        raise AssertionError("no (u,v) with u^2+v^2 = -1")
    u, v = found
    x = mat(ctx, [[ctx.zero, ctx.one], [-ctx.one, ctx.zero]])
    y = mat(ctx, [[u, v], [v, -u]])
    els = (canon(identity(ctx), PSL), canon(x, PSL), canon(y, PSL),
           canon(x @ y, PSL))
    if len(set(els)) != 4:
        raise AssertionError("klein four group degenerated")
    return Subgroup(ctx, PSL, els, KLEIN_FOUR, (x, y))


def _pack_points(sub: Subgroup) -> np.ndarray:
    q = sub.ctx.q
    out = np.empty(len(sub.elements), np.int64)
    for i, pt in enumerate(sub.elements):
        m = pt.rep
        out[i] = (((m.m11.idx * q + m.m12.idx) * q + m.m21.idx) * q
                  + m.m22.idx)
    return out


def normalizer(sub: Subgroup, budget: int = 10 ** 8) -> Subgroup:
    """All g in the ambient group with g sub g^-1 = sub, by full scan."""
    ctx = sub.ctx
    n = group_order(ctx, sub.ambient)
    if n > budget:
        raise ValueError(f"group order {n} exceeds normalizer budget {budget}")
    if sub.ambient == PSL and ctx.q <= KERNEL_CAP:
        ap = arith_pack(ctx)
        submats = pack_mats(sub.mats())
        subpack = _pack_points(sub)
        idx = backend.normalizer_collect(
            ctx.q, ap.mul, ap.add, ap.neg, ap.inv, ap.bykey, ap.half,
            ap.rank, submats, subpack, 0, index_space(ctx, PSL))
        els = tuple(ProjPoint(unrank(ctx, PSL, int(i)), PSL) for i in idx)
    else:
        from .mat2 import enumerate_group
        members = set(sub.elements)
        els_list = []
        for pt in enumerate_group(ctx, sub.ambient, budget=budget):
            g = pt.rep
            gi = g.inverse()
            if all(canon(g @ s.rep @ gi, sub.ambient) in members
                   for s in sub.elements):
                els_list.append(pt)
        els = tuple(els_list)
    gens = _minimal_generators(ctx, sub.ambient, els)
    return Subgroup(ctx, sub.ambient, els, NORMALIZER, gens)


def _minimal_generators(ctx: FieldCtx, ambient: str, els: tuple) -> tuple:
    """Greedy generating set: walk the elements, keep what grows the span."""
    want = set(els)
    gens: list[Mat2] = []
    have = {canon(identity(ctx), ambient)}
    for pt in els:
        if pt in have:
            continue
        gens.append(pt.rep)
        have = set(closure(ctx, ambient, [g for g in gens],
                           cap=max(len(els), 16)))
        if have == want:
            break
    return tuple(gens)


def is_A4(sub: Subgroup) -> bool:
    """Order-12 with element orders (1, 2x3, 3x8) - that pins A4."""
    if len(sub) != 12:
        return False
    return sub.order_stats() == {1: 1, 2: 3, 3: 8}
