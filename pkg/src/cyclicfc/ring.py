"""Exact arithmetic in Z[sqrt2, sqrt3].

Elements are a + b*sqrt2 + c*sqrt3 + d*sqrt6 with integer coefficients.
This is enough to write down the geometric representation of any Coxeter
system whose finite matrix entries lie in {2, 3, 4, 6}.
"""

from __future__ import annotations

from math import isqrt


class RingElem:
    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: int = 0, b: int = 0, c: int = 0, d: int = 0):
        self.a = a
        self.b = b
        self.c = c
        self.d = d

    @classmethod
    def coerce(cls, x) -> RingElem:
        if isinstance(x, RingElem):
            return x
        if isinstance(x, int):
            return cls(x)
        raise TypeError(f"cannot coerce {x!r} to RingElem")

    def coeffs(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __add__(self, other):
        o = RingElem.coerce(other)
        return RingElem(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __neg__(self):
        return RingElem(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other):
        return self + (-RingElem.coerce(other))

    def __rsub__(self, other):
        return RingElem.coerce(other) - self

    def __mul__(self, other):
        o = RingElem.coerce(other)
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = o.a, o.b, o.c, o.d
        # sqrt2*sqrt3 = sqrt6, sqrt2*sqrt6 = 2 sqrt3, sqrt3*sqrt6 = 3 sqrt2
        return RingElem(
            a1 * a2 + 2 * b1 * b2 + 3 * c1 * c2 + 6 * d1 * d2,
            a1 * b2 + b1 * a2 + 3 * (c1 * d2 + d1 * c2),
            a1 * c2 + c1 * a2 + 2 * (b1 * d2 + d1 * b2),
            a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = RingElem(other)
        if not isinstance(other, RingElem):
            return NotImplemented
        return self.coeffs() == other.coeffs()

    def __hash__(self):
        return hash(self.coeffs())

    def is_zero(self) -> bool:
        # {1, sqrt2, sqrt3, sqrt6} is a Q-basis, so this test is exact.
        return not (self.a or self.b or self.c or self.d)

    def sign(self) -> int:
        """Certified sign (-1, 0 or 1).

        Bounds each irrational term by an integer interval at scale 2**k,
        doubling the scale until the summed interval excludes zero.
        """
        if self.is_zero():
            return 0
        k = 4
        while True:
            scale = 1 << k
            lo = hi = self.a * scale
            for coeff, radicand in ((self.b, 2), (self.c, 3), (self.d, 6)):
                if coeff == 0:
                    continue
                # floor(|coeff| * sqrt(radicand) * scale)
                f = isqrt(coeff * coeff * radicand * scale * scale)
                if coeff > 0:
                    lo += f
                    hi += f + 1
                else:
                    lo -= f + 1
                    hi -= f
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            k *= 2

    def __float__(self):
        return self.a + self.b * 2 ** 0.5 + self.c * 3 ** 0.5 + self.d * 6 ** 0.5

    def __repr__(self):
        return f"RingElem({self.a}, {self.b}, {self.c}, {self.d})"

    def __str__(self):
        parts = []
        for coeff, unit in zip(self.coeffs(), ("", "√2", "√3", "√6")):
            if coeff:
                parts.append(f"{coeff}{unit}" if unit else str(coeff))
        return " + ".join(parts) if parts else "0"


ZERO = RingElem()
ONE = RingElem(1)
