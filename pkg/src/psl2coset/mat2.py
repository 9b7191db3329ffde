"""2x2 matrices over a finite field and canonical projective points.

Two ambient projective groups are supported, tagged by strings:

* "psl": PSL(2,q), matrices of determinant 1 modulo +-1.  The canonical
  representative has determinant 1 and its first nonzero entry in scan
  order (m11, m12, m21, m22) is the key-smaller element of the +- pair.
* "pgl": PGL(2,q), invertible matrices modulo scalars.  The canonical
  representative has first nonzero entry equal to 1.

Element orders are computed from eigenvalues: a determinant-1 matrix with
trace t has eigenvalues solving X^2 - tX + 1, which live in F_q when
t^2 - 4 is a square and in F_{q^2} otherwise (where they have norm 1, so
their order divides q+1).  Characteristic 2 is rejected throughout: the
+-1 quotient collapses and none of the downstream searches need it.

enumerate_group yields every canonical representative exactly once, in
lexicographic order of coefficient keys of (m11, m12, m21, m22).  unrank
inverts the enumeration positionally so scans can be partitioned by index
range; for "pgl" the index space contains gaps at singular slots, which
unrank reports by raising ValueError.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .ffield import FieldCtx, FieldElem

PSL = "psl"
PGL = "pgl"

AMBIENTS = (PSL, PGL)


@dataclass(frozen=True)
class Mat2:
    m11: FieldElem
    m12: FieldElem
    m21: FieldElem
    m22: FieldElem

    @property
    def ctx(self) -> FieldCtx:
        return self.m11.ctx

    def __matmul__(self, other: "Mat2") -> "Mat2":
        a, b, c, d = self.m11, self.m12, self.m21, self.m22
        e, f, g, h = other.m11, other.m12, other.m21, other.m22
        return Mat2(a * e + b * g, a * f + b * h,
                    c * e + d * g, c * f + d * h)

    def det(self) -> FieldElem:
        return self.m11 * self.m22 - self.m12 * self.m21

    def trace(self) -> FieldElem:
        return self.m11 + self.m22

    def adjugate(self) -> "Mat2":
        return Mat2(self.m22, -self.m12, -self.m21, self.m11)

    def inverse(self) -> "Mat2":
        d = self.det()
        if d.is_zero:
            raise ZeroDivisionError("singular matrix")
        return self.adjugate().scale(d.inv())

    def scale(self, e: FieldElem) -> "Mat2":
        return Mat2(self.m11 * e, self.m12 * e, self.m21 * e, self.m22 * e)

    def __neg__(self) -> "Mat2":
        return Mat2(-self.m11, -self.m12, -self.m21, -self.m22)

    @property
    def is_scalar(self) -> bool:
        return self.m12.is_zero and self.m21.is_zero and self.m11 == self.m22

    @property
    def is_identity(self) -> bool:
        return self.is_scalar and self.m11 == self.ctx.one

    @property
    def entries(self) -> tuple[FieldElem, FieldElem, FieldElem, FieldElem]:
        return (self.m11, self.m12, self.m21, self.m22)

    @property
    def text(self) -> str:
        return (f"[[{self.m11.text},{self.m12.text}],"
                f"[{self.m21.text},{self.m22.text}]]")

    def __repr__(self) -> str:
        return f"Mat2(q={self.ctx.q}, {self.text})"


def mat(ctx: FieldCtx, rows) -> Mat2:
    """Build a Mat2 from [[a, b], [c, d]] of ints/digit-tuples/elements."""
    (a, b), (c, d) = rows
    return Mat2(ctx.elem(a), ctx.elem(b), ctx.elem(c), ctx.elem(d))


def identity(ctx: FieldCtx) -> Mat2:
    return Mat2(ctx.one, ctx.zero, ctx.zero, ctx.one)


def mat_from_text(ctx: FieldCtx, s: str) -> Mat2:
    body = s.strip()
    if not (body.startswith("[[") and body.endswith("]]")):
        raise ValueError(f"malformed matrix text {s!r}")
    rows = body[2:-2].split("],[")
    if len(rows) != 2:
        raise ValueError(f"malformed matrix text {s!r}")
    ents = []
    for row in rows:
        toks = row.split(",")
        if len(toks) != 2 * ctx.k:
            raise ValueError(f"row {row!r} does not hold two elements of F_{ctx.q}")
        ents.append(ctx.from_text(",".join(toks[:ctx.k])))
        ents.append(ctx.from_text(",".join(toks[ctx.k:])))
    return Mat2(*ents)


# ---------------------------------------------------------------------------
# Element orders
# ---------------------------------------------------------------------------


def _require_odd_char(ctx: FieldCtx) -> None:
    if ctx.r == 2:
        raise ValueError("odd characteristic required")


def sl2_order(m: Mat2) -> int:
    """Order of m in SL(2,q).  Requires det(m) = 1 and odd characteristic."""
    ctx = m.ctx
    _require_odd_char(ctx)
    if m.det() != ctx.one:
        raise ValueError("determinant must be 1")
    if m.is_scalar:
        return 1 if m.m11 == ctx.one else 2
    t = m.trace()
    two = ctx.elem(2)
    if t == two:
        return ctx.r
    if t == -two:
        return 2 * ctx.r
    disc = t * t - ctx.elem(4)
    s = ctx.sqrt(disc)
    half = two.inv()
    if s is not None:
        return ctx.mult_order((t + s) * half)
    # eigenvalues in F_{q^2}, norm 1: order divides q+1
    qe = ctx.quad_ext()
    s2 = ctx.sqrt(disc * FieldElem(ctx, qe.n).inv())
    u = (ctx.mul_i(t.idx, half.idx), ctx.mul_i(s2.idx, half.idx))
    return qe.norm1_order(u)


def psl2_order(m: Mat2) -> int:
    """Order of the image of m in PSL(2,q).  Requires det(m) = 1, odd q."""
    n = sl2_order(m)
    return n // 2 if n % 2 == 0 else n


def proj_order(m: Mat2) -> int:
    """Order of the image of m in PGL(2,q).  Requires det(m) != 0, odd q.

    Computed as the multiplicative order of the ratio of eigenvalues rho,
    which satisfies rho + 1/rho = t^2/det - 2 and is scaling-invariant.
    """
    ctx = m.ctx
    _require_odd_char(ctx)
    d = m.det()
    if d.is_zero:
        raise ValueError("matrix must be invertible")
    if m.is_scalar:
        return 1
    t = m.trace()
    four = ctx.elem(4)
    if t * t == four * d:
        return ctx.r           # equal eigenvalues, non-scalar
    e = t * t * d.inv() - ctx.elem(2)
    if e == ctx.elem(-2):
        return 2               # rho = -1
    disc = e * e - four
    s = ctx.sqrt(disc)
    half = ctx.elem(2).inv()
    if s is not None:
        return ctx.mult_order((e + s) * half)
    qe = ctx.quad_ext()
    s2 = ctx.sqrt(disc * FieldElem(ctx, qe.n).inv())
    u = (ctx.mul_i(e.idx, half.idx), ctx.mul_i(s2.idx, half.idx))
    return qe.norm1_order(u)


# ---------------------------------------------------------------------------
# Canonical projective representatives
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProjPoint:
    """A canonical representative of a projective matrix class."""
    rep: Mat2
    ambient: str

    @property
    def ctx(self) -> FieldCtx:
        return self.rep.ctx

    @property
    def text(self) -> str:
        return self.rep.text

    def __repr__(self) -> str:
        return f"ProjPoint({self.ambient}, q={self.ctx.q}, {self.rep.text})"


def canon(m: Mat2, ambient: str) -> ProjPoint:
    """Canonical representative of the class of m in the given ambient group."""
    ctx = m.ctx
    if ambient == PGL:
        d = m.det()
        if d.is_zero:
            raise ValueError("matrix must be invertible")
        for e in m.entries:
            if not e.is_zero:
                return ProjPoint(m.scale(e.inv()), PGL)
        raise AssertionError("unreachable: invertible matrix has a nonzero entry")
    if ambient != PSL:
        raise ValueError(f"unknown ambient {ambient!r}")
    _require_odd_char(ctx)
    d = m.det()
    if d.is_zero:
        raise ValueError("matrix must be invertible")
    w = ctx.sqrt(d)
    if w is None:
        raise ValueError("determinant is not a square: class lies outside PSL")
    m1 = m.scale(w.inv())
    for e in m1.entries:
        if not e.is_zero:
            if (-e).key() < e.key():
                m1 = -m1
            return ProjPoint(m1, PSL)
    raise AssertionError("unreachable")


def group_order(ctx: FieldCtx, ambient: str) -> int:
    _require_odd_char(ctx)
    q = ctx.q
    n = q * (q - 1) * (q + 1)
    if ambient == PSL:
        return n // 2
    if ambient == PGL:
        return n
    raise ValueError(f"unknown ambient {ambient!r}")


def _key_lists(ctx: FieldCtx) -> tuple[list[FieldElem], list[FieldElem]]:
    """(all elements in key order, nonzero key-smaller-than-negation half)."""
    if "key_lists" not in ctx._cache:
        bykey = list(ctx.elements_by_key())
        half = [e for e in bykey if not e.is_zero and e.key() < (-e).key()]
        ctx._cache["key_lists"] = (bykey, half)
    return ctx._cache["key_lists"]


def index_space(ctx: FieldCtx, ambient: str) -> int:
    """Size of the enumeration index space (PGL includes singular gaps)."""
    q = ctx.q
    if ambient == PSL:
        h = (q - 1) // 2
        return h * q + h * q * q
    if ambient == PGL:
        return (q - 1) * q + q * q * q
    raise ValueError(f"unknown ambient {ambient!r}")


def enumerate_group(ctx: FieldCtx, ambient: str,
                    budget: int = 10 ** 8) -> Iterator[ProjPoint]:
    """Yield every canonical representative once, in index order."""
    n = group_order(ctx, ambient)
    if n > budget:
        raise ValueError(f"group order {n} exceeds enumeration budget {budget}")
    bykey, half = _key_lists(ctx)
    zero, one = ctx.zero, ctx.one
    if ambient == PSL:
        for e in half:
            m21 = -(e.inv())
            for f in bykey:
                yield ProjPoint(Mat2(zero, e, m21, f), PSL)
        for a in half:
            ainv = a.inv()
            for b in bykey:
                for c in bykey:
                    yield ProjPoint(Mat2(a, b, c, (one + b * c) * ainv), PSL)
    else:
        for c in bykey[1:]:
            for f in bykey:
                yield ProjPoint(Mat2(zero, one, c, f), PGL)
        for b in bykey:
            for c in bykey:
                excl = b * c
                for f in bykey:
                    if f != excl:
                        yield ProjPoint(Mat2(one, b, c, f), PGL)


def unrank(ctx: FieldCtx, ambient: str, i: int) -> Mat2:
    """Canonical representative at enumeration index i.

    For "pgl", indices pointing at singular slots raise ValueError; the
    scan kernels never produce them.
    """
    bykey, half = _key_lists(ctx)
    q = ctx.q
    if i < 0 or i >= index_space(ctx, ambient):
        raise IndexError(f"index {i} out of range")
    if ambient == PSL:
        h = len(half)
        if i < h * q:
            j, t = divmod(i, q)
            e = half[j]
            return Mat2(ctx.zero, e, -(e.inv()), bykey[t])
        i -= h * q
        j, rem = divmod(i, q * q)
        tb, tc = divmod(rem, q)
        a, b, c = half[j], bykey[tb], bykey[tc]
        return Mat2(a, b, c, (ctx.one + b * c) * a.inv())
    if i < (q - 1) * q:
        j, t = divmod(i, q)
        return Mat2(ctx.zero, ctx.one, bykey[j + 1], bykey[t])
    i -= (q - 1) * q
    tb, rem = divmod(i, q * q)
    tc, tf = divmod(rem, q)
    b, c, f = bykey[tb], bykey[tc], bykey[tf]
    if f == b * c:
        raise ValueError(f"index {i} is a singular slot")
    return Mat2(ctx.one, b, c, f)
