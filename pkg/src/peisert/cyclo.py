"""Exact arithmetic in the 8th cyclotomic field Q(z8).

Elements are stored in the power basis {1, z8, z8^2, z8^3} with the
reduction z8^4 = -1, so equality is plain coefficient comparison.
Coefficients are exact rationals.  Every multiplicative-character value
used elsewhere in this package is a power of z8, so all character sums
live in this ring; floats only appear through :meth:`Cyclo8.approx`.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

RationalLike = Union[int, Fraction]

# z8 under the fixed embedding z8 = exp(i*pi/4)
_Z8_COMPLEX = cmath.exp(1j * cmath.pi / 4)


@dataclass(frozen=True, slots=True)
class Cyclo8:
    """c0 + c1*z8 + c2*z8^2 + c3*z8^3 with exact rational coefficients."""

    c0: Fraction = Fraction(0)
    c1: Fraction = Fraction(0)
    c2: Fraction = Fraction(0)
    c3: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        for name in ("c0", "c1", "c2", "c3"):
            v = getattr(self, name)
            if not isinstance(v, Fraction):
                object.__setattr__(self, name, Fraction(v))

    @property
    def coeffs(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.c0, self.c1, self.c2, self.c3)

    def __add__(self, other: Cyclo8 | RationalLike) -> Cyclo8:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Cyclo8(self.c0 + other.c0, self.c1 + other.c1,
                      self.c2 + other.c2, self.c3 + other.c3)

    __radd__ = __add__

    def __neg__(self) -> Cyclo8:
        return Cyclo8(-self.c0, -self.c1, -self.c2, -self.c3)

    def __sub__(self, other: Cyclo8 | RationalLike) -> Cyclo8:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Cyclo8 | RationalLike) -> Cyclo8:
        return _coerce(other) + (-self)

    def __mul__(self, other: Cyclo8 | RationalLike) -> Cyclo8:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        # convolution with z8^(i+j) folded by z8^4 = -1
        out = [Fraction(0)] * 4
        for i in range(4):
            if not a[i]:
                continue
            for j in range(4):
                if not b[j]:
                    continue
                k = i + j
                if k < 4:
                    out[k] += a[i] * b[j]
                else:
                    out[k - 4] -= a[i] * b[j]
        return Cyclo8(*out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Cyclo8:
        if n < 0:
            raise ValueError("negative powers are not supported")
        acc = ONE
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def scale(self, r: RationalLike) -> Cyclo8:
        r = Fraction(r)
        return Cyclo8(self.c0 * r, self.c1 * r, self.c2 * r, self.c3 * r)

    def conj(self) -> Cyclo8:
        """Complex conjugation: z8 -> -z8^3, z8^2 -> -z8^2, z8^3 -> -z8."""
        return Cyclo8(self.c0, -self.c3, -self.c2, -self.c1)

    def is_rational(self) -> bool:
        return not (self.c1 or self.c2 or self.c3)

    def as_rational(self) -> Fraction:
        """Coerce to a rational; raises if any z8 component survives.

        Quantities that are provably real rationals are routed through
        this, so a failure here is a correctness alarm rather than a
        recoverable condition.
        """
        if not self.is_rational():
            raise ValueError(f"not a rational value: {self}")
        return self.c0

    def as_integer(self) -> int:
        r = self.as_rational()
        if r.denominator != 1:
            raise ValueError(f"not an integer value: {self}")
        return r.numerator

    def approx(self) -> complex:
        """Double-precision value under the embedding z8 = exp(i*pi/4)."""
        return (complex(self.c0) + complex(self.c1) * _Z8_COMPLEX
                + complex(self.c2) * _Z8_COMPLEX ** 2
                + complex(self.c3) * _Z8_COMPLEX ** 3)

    def __str__(self) -> str:
        parts = []
        for coeff, sym in zip(self.coeffs, ("", "z8", "z8^2", "z8^3")):
            if not coeff:
                continue
            parts.append(str(coeff) if not sym else f"{coeff}*{sym}")
        return " + ".join(parts) if parts else "0"


def _coerce(x: Cyclo8 | RationalLike) -> Cyclo8:
    if isinstance(x, Cyclo8):
        return x
    if isinstance(x, (int, Fraction)):
        return Cyclo8(Fraction(x))
    return NotImplemented


ZERO = Cyclo8()
ONE = Cyclo8(Fraction(1))

# powers z8^0..z8^7 in reduced form
_ZETA_POWERS = (
    Cyclo8(1, 0, 0, 0), Cyclo8(0, 1, 0, 0), Cyclo8(0, 0, 1, 0), Cyclo8(0, 0, 0, 1),
    Cyclo8(-1, 0, 0, 0), Cyclo8(0, -1, 0, 0), Cyclo8(0, 0, -1, 0), Cyclo8(0, 0, 0, -1),
)


def zeta_pow(k: int) -> Cyclo8:
    """z8^k, any integer k."""
    return _ZETA_POWERS[k % 8]


def from_rational(r: RationalLike) -> Cyclo8:
    return Cyclo8(Fraction(r))


def from_zeta_counts(counts) -> Cyclo8:
    """Sum of counts[k] copies of z8^k for k = 0..7.

    Character sums accumulate into eight integer buckets (one per power
    of z8) and reduce here once, keeping rational arithmetic out of the
    hot loops.
    """
    if len(counts) != 8:
        raise ValueError("expected 8 bucket counts")
    return Cyclo8(Fraction(int(counts[0]) - int(counts[4])),
                  Fraction(int(counts[1]) - int(counts[5])),
                  Fraction(int(counts[2]) - int(counts[6])),
                  Fraction(int(counts[3]) - int(counts[7])))
