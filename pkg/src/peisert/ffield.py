"""Finite fields F_{p^{2t}} for primes p = 3 (mod 4).

Elements are integers in [0, q) encoding polynomial residues base p:
enc = sum(a_i * p**i) for the residue a_0 + a_1*x + ... mod a fixed
monic irreducible of degree 2t.  Construction picks the
lexicographically smallest irreducible (coefficients compared
low-degree-first) and the primitive element with smallest encoding, so
a field context is reproducible from (p, t) alone.

A full discrete-log table is precomputed: every multiplicative question
downstream (residue classes, character values) is an O(1) lookup.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

DEFAULT_MAX_Q = 1 << 14


def is_prime(n: int) -> bool:
    """Trial division; the size bound keeps inputs tiny."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of n, ascending."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class PrimePower:
    """q = p^{2t} with p prime, p = 3 (mod 4); then q = 1 (mod 8)."""

    p: int
    t: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.p % 4 != 3:
            raise ValueError(f"p={self.p} is not 3 (mod 4)")
        if self.t < 1:
            raise ValueError(f"t={self.t} must be positive")

    @property
    def q(self) -> int:
        return self.p ** (2 * self.t)

    @property
    def n(self) -> int:
        """Extension degree over F_p."""
        return 2 * self.t


# ---------------------------------------------------------------------------
# polynomial arithmetic over F_p (coefficient lists, low degree first,
# no trailing zeros) -- used only while building a field context


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_modred(out, mod, p)


def _poly_modred(a: list[int], mod: list[int], p: int) -> list[int]:
    a = list(a)
    dm = len(mod) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            # mod is monic: subtract c * x^(i-dm) * mod
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * mod[j]) % p
    del a[dm:]
    return _poly_trim(a)


def _poly_powmod(a: list[int], e: int, mod: list[int], p: int) -> list[int]:
    acc = [1]
    base = _poly_modred(list(a), mod, p)
    while e:
        if e & 1:
            acc = _poly_mulmod(acc, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return acc


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        # a mod b with b made monic on the fly
        lead_inv = pow(b[-1], p - 2, p)
        bm = [(c * lead_inv) % p for c in b]
        r = list(a)
        for i in range(len(r) - 1, len(bm) - 2, -1):
            c = r[i] % p
            if c:
                off = i - (len(bm) - 1)
                for j in range(len(bm)):
                    r[off + j] = (r[off + j] - c * bm[j]) % p
        a, b = b, _poly_trim(r)
    return a


def _is_irreducible(mod: list[int], p: int, t: int) -> bool:
    """Monic degree-2t polynomial has no factor of degree <= t.

    Any proper factorization of a degree-2t polynomial contains a factor
    of degree <= t, and every irreducible of degree d divides
    x^{p^d} - x, so gcd tests against x^{p^i} - x for i = 1..t decide
    irreducibility.
    """
    for i in range(1, t + 1):
        xp = _poly_powmod([0, 1], p ** i, mod, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        g = _poly_gcd(mod, _poly_trim(diff), p)
        if len(g) != 1:
            return False
    return True


def _smallest_irreducible(p: int, t: int) -> list[int]:
    n = 2 * t
    for low in product(range(p), repeat=n):
        mod = list(low) + [1]
        if low[0] == 0:
            continue  # divisible by x
        if _is_irreducible(mod, p, t):
            return mod
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------


class FieldCtx:
    """Immutable context for F_q: modulus, primitive element, log tables.

    Treat instances as read-only; they are safe to share across workers.
    """

    def __init__(self, pp: PrimePower, *, max_q: int = DEFAULT_MAX_Q):
        q = pp.q
        if q > max_q:
            raise ValueError(f"q={q} exceeds size bound {max_q}")
        self.pp = pp
        self.p = pp.p
        self.t = pp.t
        self.n = pp.n
        self.q = q

        self.modulus: tuple[int, ...] = tuple(_smallest_irreducible(pp.p, pp.t))

        # digit table: digits[e] = base-p digits of e (low first);
        # int16 keeps the pairwise add_outer blocks small
        digits = np.zeros((q, self.n), dtype=np.int16)
        e = np.arange(q)
        for i in range(self.n):
            digits[:, i] = e % self.p
            e = e // self.p
        self._digits = digits
        self._pows = (self.p ** np.arange(self.n)).astype(np.int64)

        self.g = self._find_primitive()
        self._build_log_tables()

        neg = ((self.p - digits) % self.p) @ self._pows
        self._neg = neg
        self._one_minus = self.add_np(1, neg)  # enc(1 - x) for every x

    # -- construction helpers ------------------------------------------------

    def _poly_of(self, enc: int) -> list[int]:
        out = []
        while enc:
            enc, r = divmod(enc, self.p)
            out.append(r)
        return out

    def _enc_of(self, poly: list[int]) -> int:
        return sum(c * self.p ** i for i, c in enumerate(poly))

    def _find_primitive(self) -> int:
        mod = list(self.modulus)
        order = self.q - 1
        ells = prime_factors(order)
        for enc in range(2, self.q):
            a = self._poly_of(enc)
            if all(_poly_powmod(a, order // ell, mod, self.p) != [1]
                   for ell in ells):
                return enc
        raise AssertionError("no primitive element found")  # unreachable

    def _build_log_tables(self) -> None:
        mod = list(self.modulus)
        antilog = np.zeros(self.q - 1, dtype=np.int64)
        dlog = np.full(self.q, -1, dtype=np.int64)
        cur = [1]
        gp = self._poly_of(self.g)
        for k in range(self.q - 1):
            e = self._enc_of(cur)
            antilog[k] = e
            dlog[e] = k
            cur = _poly_mulmod(cur, gp, mod, self.p)
        if cur != [1] or (dlog[1:] < 0).any():
            raise AssertionError("discrete-log table is not a bijection")
        self._antilog = antilog
        self._dlog = dlog

    # -- additive structure ----------------------------------------------

    def add_np(self, xs, ys) -> np.ndarray:
        """Elementwise field addition of encoding arrays (broadcasting)."""
        s = (self._digits[xs] + self._digits[ys]) % self.p
        return s @ self._pows

    def sub_np(self, xs, ys) -> np.ndarray:
        d = (self._digits[xs] - self._digits[ys]) % self.p
        return d @ self._pows

    def add_outer(self, xs, ys, chunk: int = 256) -> np.ndarray:
        """Matrix of enc(x + y) over xs (rows) and ys (columns)."""
        xs = np.asarray(xs)
        ys = np.asarray(ys)
        out = np.empty((len(xs), len(ys)), dtype=np.int64)
        dx, dy = self._digits[xs], self._digits[ys]
        for i in range(0, len(xs), chunk):
            blk = (dx[i:i + chunk, None, :] + dy[None, :, :]) % self.p
            out[i:i + chunk] = blk @ self._pows
        return out

    def add(self, x: int, y: int) -> int:
        return int(self.add_np(x, y))

    def sub(self, x: int, y: int) -> int:
        return int(self.sub_np(x, y))

    def neg(self, x: int) -> int:
        return int(self._neg[x])

    def one_minus(self, x: int) -> int:
        return int(self._one_minus[x])

    @property
    def neg_table(self) -> np.ndarray:
        return self._neg

    @property
    def one_minus_table(self) -> np.ndarray:
        return self._one_minus

    # -- multiplicative structure ------------------------------------------

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return int(self._antilog[(self._dlog[x] + self._dlog[y]) % (self.q - 1)])

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self._antilog[(-self._dlog[x]) % (self.q - 1)])

    def pow_(self, x: int, k: int) -> int:
        if x == 0:
            if k == 0:
                return 1
            if k < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        return int(self._antilog[(self._dlog[x] * k) % (self.q - 1)])

    def dlog(self, x: int) -> int:
        if x == 0:
            raise ValueError("dlog of zero")
        return int(self._dlog[x])

    def antilog(self, k: int) -> int:
        return int(self._antilog[k % (self.q - 1)])

    @property
    def dlog_table(self) -> np.ndarray:
        """dlog per encoding; entry 0 is the sentinel -1."""
        return self._dlog

    def minus_one(self) -> int:
        return self.neg(1)

    def elements(self) -> range:
        return range(self.q)

    def primitive_elements(self) -> list[int]:
        order = self.q - 1
        return [int(self._antilog[k]) for k in range(order)
                if math.gcd(k, order) == 1]

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, t={self.t}, q={self.q}, g={self.g})"


@lru_cache(maxsize=None)
def _cached_field(p: int, t: int, max_q: int) -> FieldCtx:
    return FieldCtx(PrimePower(p, t), max_q=max_q)


def build_field(p: int, t: int, *, max_q: int = DEFAULT_MAX_Q) -> FieldCtx:
    """Field context for F_{p^{2t}}; cached, since construction is O(q)."""
    return _cached_field(p, t, max_q)


def field_for_q(q: int, *, max_q: int = DEFAULT_MAX_Q) -> FieldCtx:
    """Resolve q = p^{2t} to its field context; rejects malformed q."""
    for p in prime_factors(q):
        k = 0
        m = q
        while m % p == 0:
            m //= p
            k += 1
        if m == 1 and k % 2 == 0:
            return build_field(p, k // 2, max_q=max_q)
        break
    raise ValueError(f"q={q} is not an even prime power p^(2t)")
