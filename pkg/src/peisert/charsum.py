"""Multiplicative characters of F_q and exact character sums.

The characters that matter here all take values in <z8>: the quartic
character chi4, the quadratic phi = chi4^2, the octic chi8 with
chi8^2 = chi4, and the trivial eps.  A character is stored as its
exponent e mod 8 relative to the field's primitive element g, i.e.
chi(g^k) = z8^(e*k), extended by chi(0) = 0 (for every character,
the trivial one included).

Everything downstream reduces to two kinds of evaluation:

* one-dimensional sums (Jacobi sums, Weil sums) accumulated into eight
  integer buckets, one per power of z8;
* two-dimensional sums over (x, y) grids -- the hypergeometric double
  sum and the triple-character tables -- which all factor through one
  contingency table per (field, lambda): the count of (x, y) pairs per
  joint residue pattern of (x, 1-x, y, 1-y, x-lambda*y), where each
  slot carries its quartic residue class 0..3 or the marker 4 for
  "argument is zero".  The table has 5^5 cells, costs O(q^2) once, and
  makes every individual sum O(1).

Float-valued general characters (exponent j mod q-1) exist solely to
evaluate the character-sum definition of the hypergeometric function as
an independent cross-check of the exact path.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cyclo import Cyclo8, from_rational, from_zeta_counts, zeta_pow
from .ffield import FieldCtx

# fixed pinning: chi8(g) = z8, hence chi4(g) = z8^2 = i.
CHI8_EXP = 1
CHI4_EXP = 2
PHI_EXP = 4
EPS_EXP = 0


@dataclass(frozen=True, slots=True)
class MultChar:
    """Character chi(g^k) = z8^(e*k) with chi(0) = 0; well defined as 8 | q-1."""

    e: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "e", self.e % 8)

    def __mul__(self, other: "MultChar") -> "MultChar":
        return MultChar(self.e + other.e)

    def conj(self) -> "MultChar":
        return MultChar(-self.e)

    def __pow__(self, k: int) -> "MultChar":
        return MultChar(self.e * k)

    @property
    def order(self) -> int:
        import math
        return 8 // math.gcd(8, self.e)

    @property
    def is_trivial(self) -> bool:
        return self.e == 0

    def quartic_exponent(self) -> int:
        """t with self = chi4^t; requires a chi4 power (even e)."""
        if self.e % 2:
            raise ValueError(f"{self} is not a power of chi4")
        return (self.e // 2) % 4


EPS = MultChar(EPS_EXP)
PHI = MultChar(PHI_EXP)
CHI4 = MultChar(CHI4_EXP)
CHI4_BAR = MultChar(-CHI4_EXP)
CHI8 = MultChar(CHI8_EXP)

CHAR_NAMES = {
    "eps": EPS, "phi": PHI,
    "chi4": CHI4, "chi4bar": CHI4_BAR, "chi4^3": CHI4_BAR,
    "chi8": CHI8, "chi8bar": CHI8.conj(),
}


@dataclass(frozen=True, slots=True)
class GeneralChar:
    """Float-valued character chi_j(g^k) = exp(2*pi*i*j*k/(q-1))."""

    j: int
    modulus: int  # q - 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "j", self.j % self.modulus)

    def __mul__(self, other: "GeneralChar") -> "GeneralChar":
        if self.modulus != other.modulus:
            raise ValueError("character groups differ")
        return GeneralChar(self.j + other.j, self.modulus)

    def conj(self) -> "GeneralChar":
        return GeneralChar(-self.j, self.modulus)


# ax_kind tokens for vsum: prefactor attached to the outer variable
VSUM_AX_KINDS = ("none", "chi4_x", "chi4bar_x", "chi4_1mx", "chi4bar_1mx")

# exponents (l1, l2) on the residue classes of x and 1-x
_AX_RULES = {
    "none": (0, 0),
    "chi4_x": (1, 0),
    "chi4bar_x": (3, 0),
    "chi4_1mx": (0, 1),
    "chi4bar_1mx": (0, 3),
}

_GRID = np.indices((5, 5, 5, 5, 5))
_ALL_NONZERO = ((_GRID[0] < 4) & (_GRID[1] < 4) & (_GRID[2] < 4)
                & (_GRID[3] < 4) & (_GRID[4] < 4))


class CharCtx:
    """Character sums over one field context; immutable, cached tables."""

    def __init__(self, field: FieldCtx):
        self.field = field
        self.q = field.q
        dl = field.dlog_table
        # quartic residue class per encoding; 4 marks the zero element
        cat = (dl % 4).astype(np.int64)
        cat[0] = 4
        self._cat = cat
        self._count5_cache: dict[int, np.ndarray] = {}
        self._jacobi_float_cache: dict[tuple[int, int], complex] = {}
        m = self.q - 1
        self._unit_roots = np.exp(2j * np.pi * np.arange(m) / m)
        xs = np.arange(2, self.q)
        self._sum_dom = xs
        self._sum_dom_onem = field.one_minus_table[xs]

    # -- pointwise values ---------------------------------------------------

    def char_value(self, c: MultChar, x: int) -> Cyclo8:
        if x == 0:
            return from_rational(0)
        return zeta_pow(c.e * self.field.dlog(x))

    def general_char(self, c: MultChar) -> GeneralChar:
        return GeneralChar(c.e * (self.q - 1) // 8, self.q - 1)

    def char_value_float(self, c: GeneralChar, x: int) -> complex:
        if x == 0:
            return 0j
        return complex(self._unit_roots[(c.j * self.field.dlog(x)) % (self.q - 1)])

    @property
    def h(self) -> Cyclo8:
        """1 - chi4(g) = 1 - i."""
        return from_rational(1) - zeta_pow(2)

    @property
    def rho(self) -> int:
        """-(-p)^t, the common quartic Jacobi-sum value."""
        return -((-self.field.p) ** self.field.t)

    # -- one-dimensional exact sums ------------------------------------------

    def jacobi_sum(self, a: MultChar, b: MultChar) -> Cyclo8:
        """sum over x of a(x) * b(1-x), exact."""
        dl = self.field.dlog_table
        k = (a.e * dl[self._sum_dom] + b.e * dl[self._sum_dom_onem]) % 8
        return from_zeta_counts(np.bincount(k, minlength=8))

    def binom(self, a: MultChar, b: MultChar) -> Cyclo8:
        """b(-1)/q * J(a, conj(b))."""
        sign = self.char_value(b, self.field.minus_one())
        return (sign * self.jacobi_sum(a, b.conj())).scale(Fraction(1, self.q))

    def indicator_quartic_pair(self, x: int) -> Fraction:
        """1 if x lies in <g^4> or g<g^4>, else 0, via the character identity
        (2 + h*chi4(x) + conj(h)*conj(chi4)(x)) / 4."""
        if x == 0:
            raise ValueError("indicator undefined at zero")
        h = self.h
        val = (from_rational(2) + h * self.char_value(CHI4, x)
               + h.conj() * self.char_value(CHI4_BAR, x)).scale(Fraction(1, 4))
        r = val.as_rational()
        if r not in (0, 1):
            raise ArithmeticError(f"indicator returned {r} at x={x}")
        return r

    def lemma_quadratic_sum(self, a: int) -> Cyclo8:
        """sum over y of chi4((y-1)(y-a)) for a outside {0, 1}."""
        if a in (0, 1):
            raise ValueError("a must avoid 0 and 1")
        f = self.field
        ys = np.arange(self.q)
        e1 = f.sub_np(ys, 1)
        e2 = f.sub_np(ys, a)
        ok = (e1 != 0) & (e2 != 0)
        dl = f.dlog_table
        k = (CHI4_EXP * (dl[e1[ok]] + dl[e2[ok]])) % 8
        return from_zeta_counts(np.bincount(k, minlength=8))

    def lemma_ratio_sum(self, a: int) -> Cyclo8:
        """sum over y of chi4(y) * conj(chi4)(a-y) for a outside {0, 1}."""
        if a in (0, 1):
            raise ValueError("a must avoid 0 and 1")
        return self._ratio_sum_any(a)

    def _ratio_sum_any(self, a: int) -> Cyclo8:
        f = self.field
        ys = np.arange(self.q)
        e2 = f.sub_np(a, ys)
        ok = (ys != 0) & (e2 != 0)
        dl = f.dlog_table
        k = (CHI4_EXP * dl[ys[ok]] + (8 - CHI4_EXP) * dl[e2[ok]]) % 8
        return from_zeta_counts(np.bincount(k, minlength=8))

    # -- the residue contingency table and double sums -----------------------

    def residue_counts(self, lam: int = 1) -> np.ndarray:
        """5^5 table: #pairs (x, y) per residue pattern of
        (x, 1-x, y, 1-y, x-lam*y); class 4 flags a zero argument."""
        tab = self._count5_cache.get(lam)
        if tab is None:
            tab = self._build_count5(lam)
            self._count5_cache[lam] = tab
        return tab

    def _build_count5(self, lam: int) -> np.ndarray:
        f = self.field
        q = self.q
        cat = self._cat
        onem = f.one_minus_table
        all_e = np.arange(q)
        if lam == 0:
            neg_lam_y = np.zeros(q, dtype=np.int64)
        else:
            dl, al = f.dlog_table, np.asarray([f.antilog(k) for k in range(q - 1)])
            neg_lam_y = np.zeros(q, dtype=np.int64)
            nz = all_e[1:]
            neg_lam_y[nz] = f.neg_table[al[(dl[lam] + dl[nz]) % (q - 1)]]
        ypart = cat[all_e] * 5 + cat[onem]
        counts = np.zeros(5 ** 5, dtype=np.int64)
        chunk = max(1, (1 << 22) // q)
        for lo in range(0, q, chunk):
            xs = all_e[lo:lo + chunk]
            sub = f.add_outer(xs, neg_lam_y)  # enc(x - lam*y)
            code = ((cat[xs] * 5 + cat[onem[xs]]) * 125)[:, None]
            code = code + ypart[None, :] * 5 + cat[sub]
            counts += np.bincount(code.ravel(), minlength=5 ** 5)
        return counts

    def _masked_value(self, counts: np.ndarray, expo: tuple[int, ...]) -> Cyclo8:
        """Sum count * i^(expo . pattern) over cells with every slot nonzero."""
        grid = counts.reshape((5,) * 5)
        k = sum(e * _GRID[s] for s, e in enumerate(expo)) % 4
        n = [int(grid[_ALL_NONZERO & (k == r)].sum()) for r in range(4)]
        return Cyclo8(n[0] - n[2], 0, n[1] - n[3], 0)

    def hyper3f2_raw(self, a0: MultChar, a1: MultChar, a2: MultChar,
                     b1: MultChar, b2: MultChar, lam: int = 1) -> Cyclo8:
        """The unnormalized hypergeometric double sum
        sum over (x, y) of A0*conj(B2)(x) * conj(A2)B2(1-x) * A1(y)
        * conj(A1)B1(1-y) * conj(A0)(x-lam*y)."""
        t = [c.quartic_exponent() for c in (a0, a1, a2, b1, b2)]
        expo = ((t[0] - t[4]) % 4, (t[4] - t[2]) % 4, t[1] % 4,
                (t[3] - t[1]) % 4, (-t[0]) % 4)
        counts = self.residue_counts(lam)
        return self._masked_value(counts, expo)

    def hyper3f2_exact(self, a0: MultChar, a1: MultChar, a2: MultChar,
                       b1: MultChar, b2: MultChar, lam: int = 1) -> Cyclo8:
        """Exact 3F2 value: the raw double sum normalized by 1/q^2.

        The 1/q^2 constant is pinned by cross-validation against the
        character-sum definition (hyper3f2_float) and the reference data;
        see tests for the regression lock.
        """
        return self.hyper3f2_raw(a0, a1, a2, b1, b2, lam).scale(
            Fraction(1, self.q ** 2))

    def hyper3f2_tuple(self, t5: tuple[int, int, int, int, int],
                       lam: int = 1) -> Cyclo8:
        """3F2 with parameters (chi4^t1, chi4^t2, chi4^t3; chi4^t4, chi4^t5)."""
        chars = [CHI4 ** t for t in t5]
        return self.hyper3f2_exact(*chars, lam=lam)

    def q2_f32_int(self, t5: tuple[int, int, int, int, int], lam: int = 1) -> int:
        """q^2 * 3F2 as an exact integer (alarms if not a rational integer)."""
        chars = [CHI4 ** t for t in t5]
        return self.hyper3f2_raw(*chars, lam=lam).as_integer()

    def vsum(self, ax_kind, i1: int, i2: int, i3: int) -> Cyclo8:
        """Double sums sum_x A_x sum_y chi4^i1(y) chi4^i2(1-y) chi4^i3(x-y)
        over x outside {0, 1}.

        ax_kind selects the outer factor A_x: "none" (no factor), one of
        "chi4_x"/"chi4bar_x"/"chi4_1mx"/"chi4bar_1mx" for chi4^{+-1}
        applied to x or 1-x, or a pair (l1, l2) for the product
        chi4^l1(x) * chi4^l2(1-x).  Whenever a factor is present it
        vanishes on part of the excluded set anyway; the tabulated values
        these sums are checked against all use the common domain.
        """
        if isinstance(ax_kind, tuple):
            l1, l2 = ax_kind[0] % 4, ax_kind[1] % 4
        else:
            try:
                l1, l2 = _AX_RULES[ax_kind]
            except KeyError:
                raise ValueError(f"unknown ax_kind {ax_kind!r}") from None
        for i in (i1, i2, i3):
            if i not in (1, -1):
                raise ValueError("inner exponents must be +-1")
        counts = self.residue_counts(1)
        expo = (l1, l2, i1 % 4, i2 % 4, i3 % 4)
        return self._masked_value(counts, expo)

    # -- float path: Greene's character-sum definition ------------------------

    def _jacobi_float(self, a: int, b: int) -> complex:
        m = self.q - 1
        key = (a % m, b % m)
        val = self._jacobi_float_cache.get(key)
        if val is None:
            dl = self.field.dlog_table
            k = (key[0] * dl[self._sum_dom] + key[1] * dl[self._sum_dom_onem]) % m
            val = complex(self._unit_roots[k].sum())
            self._jacobi_float_cache[key] = val
        return val

    def _binom_float(self, a: int, b: int) -> complex:
        sign = -1.0 if b % 2 else 1.0  # chi_b(-1) = (-1)^b since dlog(-1) = (q-1)/2
        return sign / self.q * self._jacobi_float(a, -b)

    def hyper3f2_float(self, a0, a1, a2, b1, b2, lam: int = 1) -> complex:
        """Greene's definition: (q/(q-1)) * sum over all q-1 characters chi of
        binom(A0*chi, chi) * binom(A1*chi, B1*chi) * binom(A2*chi, B2*chi) * chi(lam).

        Accepts GeneralChar or MultChar parameters; independent of the
        exact double-sum path (used to cross-check it to 1e-9).
        """
        if lam == 0:
            return 0j
        params = [self.general_char(c) if isinstance(c, MultChar) else c
                  for c in (a0, a1, a2, b1, b2)]
        ja0, ja1, ja2, jb1, jb2 = (c.j for c in params)
        m = self.q - 1
        dl_lam = self.field.dlog(lam)
        total = 0j
        for j in range(m):
            term = self._binom_float(ja0 + j, j)
            if term == 0j:
                continue
            term *= self._binom_float(ja1 + j, jb1 + j)
            term *= self._binom_float(ja2 + j, jb2 + j)
            total += term * self._unit_roots[(j * dl_lam) % m]
        return total * self.q / m

    # -- Weil-type polynomial character sums ----------------------------------

    def weil_sum(self, s: int, roots: list[int]) -> Cyclo8:
        """sum over x of chi(f(x)) for f = prod (x - r), chi of order s."""
        if s not in (2, 4, 8):
            raise ValueError("character order must be 2, 4, or 8")
        if len(set(roots)) != len(roots):
            raise ValueError("roots must be distinct")
        chi = MultChar(8 // s)
        f = self.field
        dl = f.dlog_table
        xs = np.arange(self.q)
        logsum = np.zeros(self.q, dtype=np.int64)
        nonzero = np.ones(self.q, dtype=bool)
        for r in roots:
            d = f.sub_np(xs, r)
            nonzero &= d != 0
            logsum[nonzero] += dl[d[nonzero]]
        k = (chi.e * (logsum[nonzero] % (self.q - 1))) % 8
        return from_zeta_counts(np.bincount(k, minlength=8))

    def weil_check(self, s: int, roots: list[int]) -> "WeilCheck":
        """Exact check |sum_x chi(f(x))| <= (d-1) * sqrt(q) for distinct roots.

        Distinct roots of multiplicity one guarantee f is not a constant
        times an s-th power, so the bound applies.
        """
        val = self.weil_sum(s, roots)
        d = len(roots)
        norm = val * val.conj()
        # a real element of Q(z8) is r0 + r1*sqrt(2) with sqrt(2) = z8 - z8^3
        if norm.c2 != 0 or norm.c1 != -norm.c3:
            raise ArithmeticError(f"|sum|^2 not real: {norm}")
        r0, r1 = norm.c0, norm.c1
        bound_sq = Fraction((d - 1) ** 2 * self.q)
        ok = _le_with_sqrt2(r0, r1, bound_sq)
        mag = abs(val.approx())
        limit = (d - 1) * self.q ** 0.5
        ratio = mag / limit if limit else (0.0 if mag < 1e-9 else float("inf"))
        return WeilCheck(s=s, roots=tuple(roots), degree=d,
                         magnitude=mag, bound=limit, ratio=ratio, ok=ok)


def _le_with_sqrt2(r0: Fraction, r1: Fraction, bound: Fraction) -> bool:
    """Exact test r0 + r1*sqrt(2) <= bound."""
    rest = bound - r0
    if r1 == 0:
        return rest >= 0
    if r1 > 0:
        return rest >= 0 and 2 * r1 * r1 <= rest * rest
    return rest >= 0 or 2 * r1 * r1 >= rest * rest


@dataclass(frozen=True)
class WeilCheck:
    s: int
    roots: tuple[int, ...]
    degree: int
    magnitude: float
    bound: float
    ratio: float
    ok: bool


def weil_trials(cs: CharCtx, trials: int, rng) -> list[WeilCheck]:
    """Randomized Weil-bound instances: distinct roots, order in {2,4,8}."""
    out = []
    q = cs.q
    for _ in range(trials):
        s = rng.choice((2, 4, 8))
        d = rng.randint(1, min(6, q - 1))
        roots = rng.sample(range(q), d)
        out.append(cs.weil_check(s, roots))
    return out


_CHARCTX_CACHE: dict[tuple[int, int], CharCtx] = {}


def char_ctx(field: FieldCtx) -> CharCtx:
    key = (field.p, field.t)
    ctx = _CHARCTX_CACHE.get(key)
    if ctx is None or ctx.field is not field:
        ctx = CharCtx(field)
        _CHARCTX_CACHE[key] = ctx
    return ctx
