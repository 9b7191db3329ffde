"""Exact arithmetic in finite fields F_q, q = r^k.

Elements are stored as integer indices 0..q-1 encoding the coefficient
vector of the element in the polynomial basis (little-endian base-r
digits, constant term first).  A field is described by a FieldCtx, which
fixes the defining modulus and a generator of the multiplicative group
once and for all, so that every derived quantity (roots of unity, square
roots, canonical forms downstream) is reproducible bit for bit across
runs and machines.

Conventions, applied uniformly:

* modulus: the monic irreducible of degree k over F_r whose coefficient
  sequence (constant term first) is lexicographically smallest;
* generator: the element of multiplicative order q-1 whose coefficient
  sequence is lexicographically smallest;
* "key order" on elements means lexicographic order of coefficient
  sequences, constant term first.  For prime fields this is the usual
  order on residues 0..q-1.

Fields of any characteristic are constructible here; operations that
require odd characteristic (square roots, and most of the downstream
group machinery) reject characteristic 2 themselves.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Iterator, Optional, Sequence

TABLE_CAP = 1 << 20   # exp/log tables are only built below this cardinality
ARITH_CAP = 1 << 31   # hard bound on q for any field construction


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n >= 1 as ((p, e), ...), primes ascending."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    for p in range(2, n):
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def prime_power(q: int) -> Optional[tuple[int, int]]:
    """(r, k) with q = r^k and r prime, or None if q is not a prime power."""
    if q < 2:
        return None
    fac = factorize(q)
    if len(fac) != 1:
        return None
    return fac[0]


# ---------------------------------------------------------------------------
# Polynomial helpers over F_r.  Polynomials are tuples of ints in [0, r),
# little-endian, with no trailing zeros (the zero polynomial is ()).
# Only used during field construction and in the large-q fallback path,
# so clarity wins over speed.
# ---------------------------------------------------------------------------


def _ptrim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _pmul(a: Sequence[int], b: Sequence[int], r: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % r
    return _ptrim(out)


def _pmod(a: Sequence[int], m: Sequence[int], r: int) -> tuple[int, ...]:
    # m is monic
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - dm
            for i in range(dm + 1):
                a[shift + i] = (a[shift + i] - lead * m[i]) % r
        a.pop()
    return _ptrim(a)


def _pmulmod(a, b, m, r):
    return _pmod(_pmul(a, b, r), m, r)


def _ppowmod(a, e: int, m, r) -> tuple[int, ...]:
    out: tuple[int, ...] = (1,)
    base = _pmod(a, m, r)
    while e:
        if e & 1:
            out = _pmulmod(out, base, m, r)
        base = _pmulmod(base, base, m, r)
        e >>= 1
    return out


def _pgcd(a, b, r):
    a, b = tuple(a), tuple(b)
    while b:
        a, b = b, _prem(a, b, r)
    return a


def _prem(a, b, r):
    """Remainder of a by b (b nonzero, not necessarily monic)."""
    return _pmod(a, _monic(b, r), r)


def _monic(b, r):
    inv_lead = pow(b[-1], r - 2, r)
    return tuple((c * inv_lead) % r for c in b)


def _poly_irreducible(f: Sequence[int], r: int) -> bool:
    """True iff monic f of degree k >= 1 has no factor of degree <= k//2."""
    k = len(f) - 1
    x = (0, 1)
    t = x
    for _ in range(k // 2):
        t = _ppowmod(t, r, f, r)          # t = x^(r^d) mod f
        g = _pgcd(f, _psub(t, x, r), r)
        if len(g) - 1 >= 1:
            return False
    return True


def _psub(a, b, r):
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        ai = a[i] if i < len(a) else 0
        bi = b[i] if i < len(b) else 0
        out[i] = (ai - bi) % r
    return _ptrim(out)


# ---------------------------------------------------------------------------
# Field elements and contexts
# ---------------------------------------------------------------------------


class FieldElem:
    """An element of a fixed finite field, stored as its basis index.

    Immutable by convention.  Equality and hashing use (r, k, index) so
    elements of the same abstract field compare equal even if the context
    objects differ.  Ring operators are overloaded; operations that need
    more than ring structure (inverse, sqrt, orders) live on the context.
    """

    __slots__ = ("ctx", "idx")

    def __init__(self, ctx: "FieldCtx", idx: int):
        self.ctx = ctx
        self.idx = idx

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.ctx.digits_of_idx(self.idx)

    @property
    def text(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    @property
    def is_zero(self) -> bool:
        return self.idx == 0

    def key(self) -> tuple[int, ...]:
        return self.coeffs

    def __eq__(self, other) -> bool:
        return (isinstance(other, FieldElem)
                and self.ctx.r == other.ctx.r
                and self.ctx.k == other.ctx.k
                and self.idx == other.idx)

    def __hash__(self) -> int:
        return hash((self.ctx.r, self.ctx.k, self.idx))

    def __add__(self, other: "FieldElem") -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.add_i(self.idx, other.idx))

    def __sub__(self, other: "FieldElem") -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.sub_i(self.idx, other.idx))

    def __mul__(self, other: "FieldElem") -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.mul_i(self.idx, other.idx))

    def __neg__(self) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.neg_i(self.idx))

    def __pow__(self, n: int) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.pow_i(self.idx, n))

    def inv(self) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.inv_i(self.idx))

    def __repr__(self) -> str:
        return f"FieldElem(q={self.ctx.q}, [{self.text}])"


class FieldCtx:
    """A finite field F_q = F_r[x]/(modulus) with all conventions pinned.

    Construct via make_field(); direct instantiation skips validation.
    """

    def __init__(self, r: int, k: int, modulus: tuple[int, ...],
                 generator_idx: int, q1_factors: tuple[tuple[int, int], ...]):
        self.r = r
        self.k = k
        self.q = r ** k
        self.modulus = modulus            # k+1 coefficients, constant first
        self.q1_factors = q1_factors     # factorization of q-1
        self._exp: Optional[list[int]] = None
        self._log: Optional[list[int]] = None
        self._cache: dict = {}
        self.generator = FieldElem(self, generator_idx)

    # -- identities ---------------------------------------------------------

    @property
    def zero(self) -> FieldElem:
        return FieldElem(self, 0)

    @property
    def one(self) -> FieldElem:
        return FieldElem(self, 1)

    @property
    def text(self) -> str:
        mod = ",".join(str(c) for c in self.modulus)
        return f"{self.r}^{self.k}:{mod}"

    def __repr__(self) -> str:
        return f"FieldCtx({self.text})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, FieldCtx) and self.r == other.r
                and self.k == other.k and self.modulus == other.modulus)

    def __hash__(self) -> int:
        return hash((self.r, self.k, self.modulus))

    def __getstate__(self):
        # keep pickles small and side-table free (workers rebuild caches)
        return (self.r, self.k, self.modulus, self.generator.idx, self.q1_factors)

    def __setstate__(self, state):
        r, k, modulus, gen_idx, q1f = state
        self.__init__(r, k, modulus, gen_idx, q1f)

    # -- digit packing ------------------------------------------------------

    def digits_of_idx(self, i: int) -> tuple[int, ...]:
        if self.k == 1:
            return (i,)
        out = []
        for _ in range(self.k):
            i, d = divmod(i, self.r)
            out.append(d)
        return tuple(out)

    def idx_of_digits(self, digits: Sequence[int]) -> int:
        if len(digits) > self.k:
            raise ValueError(f"too many digits for degree {self.k}")
        i = 0
        for d in reversed(digits):
            if not 0 <= d < self.r:
                raise ValueError(f"digit {d} out of range for base {self.r}")
            i = i * self.r + d
        return i

    def _idx_of_poly(self, poly: Sequence[int]) -> int:
        # like idx_of_digits but for trimmed tuples of length <= k, no checks
        i = 0
        for d in reversed(poly):
            i = i * self.r + d
        return i

    def elem(self, v) -> FieldElem:
        """Coerce an index (int) or a digit sequence to an element.

        An int is taken mod r and embedded via the prime subfield, so
        elem(5) in F_7 and elem(-1) in any field mean what they do on
        paper.  Use a sequence for general extension-field elements.
        """
        if isinstance(v, FieldElem):
            if v.ctx.r != self.r or v.ctx.k != self.k:
                raise ValueError("element from a different field")
            return v
        if isinstance(v, int):
            return FieldElem(self, v % self.r)
        return FieldElem(self, self.idx_of_digits(tuple(v)))

    def from_text(self, s: str) -> FieldElem:
        digits = tuple(int(t) for t in s.split(","))
        if len(digits) != self.k:
            raise ValueError(f"expected {self.k} digits, got {len(digits)}")
        return FieldElem(self, self.idx_of_digits(digits))

    def elements(self) -> Iterator[FieldElem]:
        """All elements in index order."""
        for i in range(self.q):
            yield FieldElem(self, i)

    def elements_by_key(self) -> Iterator[FieldElem]:
        """All elements in key order (lex on coefficient sequences)."""
        for digits in product(range(self.r), repeat=self.k):
            yield FieldElem(self, self.idx_of_digits(digits))

    # -- integer-index core arithmetic ---------------------------------------

    def add_i(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.r
        r, out, mult = self.r, 0, 1
        for _ in range(self.k):
            out += ((a + b) % r) * mult
            a //= r
            b //= r
            mult *= r
        return out

    def sub_i(self, a: int, b: int) -> int:
        return self.add_i(a, self.neg_i(b))

    def neg_i(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.r
        r, out, mult = self.r, 0, 1
        for _ in range(self.k):
            out += ((r - a % r) % r) * mult
            a //= r
            mult *= r
        return out

    def mul_i(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.r
        if a == 0 or b == 0:
            return 0
        self._ensure_tables()
        if self._exp is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return self._idx_of_poly(
            _pmulmod(self.digits_of_idx(a), self.digits_of_idx(b),
                     self.modulus, self.r))

    def inv_i(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.k == 1:
            return pow(a, self.r - 2, self.r)
        self._ensure_tables()
        if self._exp is not None:
            return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]
        return self.pow_i(a, self.q - 2)

    def pow_i(self, a: int, n: int) -> int:
        if a == 0:
            if n > 0:
                return 0
            if n == 0:
                return 1
            raise ZeroDivisionError("negative power of zero")
        n %= self.q - 1
        if self.k == 1:
            return pow(a, n, self.r)
        self._ensure_tables()
        if self._exp is not None:
            return self._exp[(self._log[a] * n) % (self.q - 1)]
        return self._idx_of_poly(
            _ppowmod(self.digits_of_idx(a), n, self.modulus, self.r))

    def _ensure_tables(self) -> None:
        if self._exp is not None or self.q > TABLE_CAP or self.k == 1:
            return
        exp = [0] * (self.q - 1)
        gp = self.digits_of_idx(self.generator.idx)
        cur: tuple[int, ...] = (1,)
        for e in range(self.q - 1):
            exp[e] = self._idx_of_poly(cur)
            cur = _pmulmod(cur, gp, self.modulus, self.r)
        log = [-1] * self.q
        for e, idx in enumerate(exp):
            log[idx] = e
        self._exp, self._log = exp, log

    # -- element-level convenience wrappers ----------------------------------

    def add(self, x: FieldElem, y: FieldElem) -> FieldElem:
        return x + y

    def sub(self, x: FieldElem, y: FieldElem) -> FieldElem:
        return x - y

    def mul(self, x: FieldElem, y: FieldElem) -> FieldElem:
        return x * y

    def neg(self, x: FieldElem) -> FieldElem:
        return -x

    def inv(self, x: FieldElem) -> FieldElem:
        return x.inv()

    def pow(self, x: FieldElem, n: int) -> FieldElem:
        return x ** n

    # -- multiplicative structure ---------------------------------------------

    def mult_order_i(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("order of zero")
        n = self.q - 1
        for p, _ in self.q1_factors:
            while n % p == 0 and self.pow_i(a, n // p) == 1:
                n //= p
        return n

    def mult_order(self, x: FieldElem) -> int:
        return self.mult_order_i(x.idx)

    def root_of_unity(self, p: int) -> FieldElem:
        """The canonical primitive p-th root of unity, generator^((q-1)/p)."""
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if (self.q - 1) % p != 0:
            raise ValueError(f"p={p} does not divide q-1={self.q - 1}")
        return self.generator ** ((self.q - 1) // p)

    def is_pth_power_i(self, a: int, p: int) -> bool:
        if a == 0:
            raise ValueError("zero has no p-th power class")
        if (self.q - 1) % p != 0:
            raise ValueError(f"p={p} does not divide q-1={self.q - 1}")
        return self.pow_i(a, (self.q - 1) // p) == 1

    def is_pth_power(self, x: FieldElem, p: int) -> bool:
        return self.is_pth_power_i(x.idx, p)

    def is_square_i(self, a: int) -> bool:
        if self.r == 2:
            return True
        if a == 0:
            return True
        return self.pow_i(a, (self.q - 1) // 2) == 1

    # -- square roots ----------------------------------------------------------

    def sqrt_i(self, a: int) -> Optional[int]:
        """Index of the canonical square root of a, or None.

        Canonical means the root whose coefficient key is lexicographically
        smaller of the +-pair.  Characteristic 2 is rejected: downstream
        canonical forms rely on -w != w.
        """
        if self.r == 2:
            raise ValueError("sqrt requires odd characteristic")
        if a == 0:
            return 0
        if not self.is_square_i(a):
            return None
        if self.k > 1 and self.q <= TABLE_CAP:
            self._ensure_tables()
            w = self._exp[self._log[a] // 2] if self._log[a] % 2 == 0 else None
            if w is None:   # odd log of a square cannot happen; guard anyway
                return None
        else:
            w = self._tonelli_shanks(a)
        other = self.neg_i(w)
        if self.digits_of_idx(other) < self.digits_of_idx(w):
            w = other
        return w

    def sqrt(self, x: FieldElem) -> Optional[FieldElem]:
        w = self.sqrt_i(x.idx)
        return None if w is None else FieldElem(self, w)

    def _tonelli_shanks(self, a: int) -> int:
        q1 = self.q - 1
        s = 0
        m = q1
        while m % 2 == 0:
            m //= 2
            s += 1
        z = self.generator.idx           # primitive, hence a non-square
        c = self.pow_i(z, m)
        t = self.pow_i(a, m)
        w = self.pow_i(a, (m + 1) // 2)
        e = s
        while t != 1:
            # find least 0 < i < e with t^(2^i) = 1
            i, t2 = 0, t
            while t2 != 1:
                t2 = self.mul_i(t2, t2)
                i += 1
            b = c
            for _ in range(e - i - 1):
                b = self.mul_i(b, b)
            c = self.mul_i(b, b)
            t = self.mul_i(t, c)
            w = self.mul_i(w, b)
            e = i
        return w

    # -- cached auxiliary structures --------------------------------------------

    @property
    def qp1_factors(self) -> tuple[tuple[int, int], ...]:
        if "qp1" not in self._cache:
            self._cache["qp1"] = factorize(self.q + 1)
        return self._cache["qp1"]

    def quad_ext(self) -> "QuadExt":
        if "quad" not in self._cache:
            self._cache["quad"] = QuadExt(self)
        return self._cache["quad"]


class QuadExt:
    """F_{q^2} modeled as ctx[w]/(w^2 - n), n the key-smallest non-square.

    Elements are pairs (alpha_idx, beta_idx) meaning alpha + beta*w.  Only
    the handful of operations needed for eigenvalue orders live here.
    """

    def __init__(self, ctx: FieldCtx):
        if ctx.r == 2:
            raise ValueError("quadratic extension helper requires odd characteristic")
        self.ctx = ctx
        self.n = next(e.idx for e in ctx.elements_by_key()
                      if e.idx != 0 and not ctx.is_square_i(e.idx))

    ONE = (1, 0)

    def mul(self, x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
        c = self.ctx
        a, b = x
        d, e = y
        alpha = c.add_i(c.mul_i(a, d), c.mul_i(self.n, c.mul_i(b, e)))
        beta = c.add_i(c.mul_i(a, e), c.mul_i(b, d))
        return (alpha, beta)

    def pow(self, x: tuple[int, int], e: int) -> tuple[int, int]:
        out = (1, 0)
        while e:
            if e & 1:
                out = self.mul(out, x)
            x = self.mul(x, x)
            e >>= 1
        return out

    def conj(self, x: tuple[int, int]) -> tuple[int, int]:
        return (x[0], self.ctx.neg_i(x[1]))

    def norm1_order(self, x: tuple[int, int]) -> int:
        """Multiplicative order of x, assuming x^(q+1) = 1."""
        n = self.ctx.q + 1
        for p, _ in self.ctx.qp1_factors:
            while n % p == 0 and self.pow(x, n // p) == (1, 0):
                n //= p
        return n

    def norm1_generator(self) -> tuple[int, int]:
        """A generator of the norm-one subgroup (cyclic of order q+1).

        Deterministic: first a in key order such that (a + w)^(q-1) has
        full order q+1.  The map a -> (a+w)^(q-1) covers the whole norm-one
        group except 1, so a small a always works.
        """
        c = self.ctx
        qp1 = c.q + 1
        for a in c.elements_by_key():
            z = self.pow((a.idx, 1), c.q - 1)
            if all(self.pow(z, qp1 // p) != (1, 0) for p, _ in c.qp1_factors):
                return z
        raise RuntimeError("no norm-one generator found")  # unreachable


@lru_cache(maxsize=None)
def make_field(r: int, k: int = 1) -> FieldCtx:
    """Construct F_q, q = r^k, with deterministic modulus and generator.

    Raises ValueError if r is not prime, k < 1, or q exceeds the arithmetic
    cap.  Characteristic 2 fields are constructible; odd-characteristic
    requirements are enforced by the operations that need them.
    """
    if k < 1:
        raise ValueError(f"k={k} must be >= 1")
    if not is_prime(r):
        raise ValueError(f"r={r} is not prime")
    q = r ** k
    if q > ARITH_CAP:
        raise ValueError(f"q={q} exceeds the arithmetic cap {ARITH_CAP}")

    if k == 1:
        modulus = (0, 1)
    else:
        modulus = None
        for tail in product(range(r), repeat=k):
            f = tuple(tail) + (1,)
            if _poly_irreducible(f, r):
                modulus = f
                break
        if modulus is None:  # a degree-k irreducible always exists
            raise RuntimeError(f"no irreducible of degree {k} over F_{r}")

    ctx = FieldCtx(r, k, modulus, 1, factorize(q - 1) if q > 2 else ())

    # Generator: first element in key order with full multiplicative order.
    # Uses raw polynomial arithmetic: ctx's fast paths bootstrap off the
    # generator, which is not known yet.
    def _powidx(i: int, n: int) -> int:
        if k == 1:
            return pow(i, n, r)
        return ctx._idx_of_poly(_ppowmod(ctx.digits_of_idx(i), n, modulus, r))

    checks = [(q - 1) // p for p, _ in ctx.q1_factors]
    for cand in ctx.elements_by_key():
        i = cand.idx
        if i == 0:
            continue
        if all(_powidx(i, n) != 1 for n in checks):
            ctx.generator = FieldElem(ctx, i)
            break
    return ctx


def parse_field_text(s: str) -> FieldCtx:
    """Inverse of FieldCtx.text; validates against the canonical construction."""
    head, mod = s.split(":")
    r_s, k_s = head.split("^")
    ctx = make_field(int(r_s), int(k_s))
    digits = tuple(int(t) for t in mod.split(","))
    if digits != ctx.modulus:
        raise ValueError(f"non-canonical modulus in {s!r}")
    return ctx
