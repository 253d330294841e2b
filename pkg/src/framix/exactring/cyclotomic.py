"""Exact arithmetic in the cyclotomic field Q(zeta_d).

Elements are coefficient vectors in the power basis ``1, zeta, ..., zeta^(k-1)``
with ``k = deg Phi_d``, always reduced modulo the cyclotomic polynomial, so
equality is structural.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Any, Sequence

QPoly = list  # dense list of Fractions, lowest degree first


def _trim(p: QPoly) -> QPoly:
    while p and p[-1] == 0:
        p.pop()
    return p


def _pmul(a: Sequence, b: Sequence) -> QPoly:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _pdivmod(a: Sequence, b: Sequence) -> tuple[QPoly, QPoly]:
    a = [Fraction(x) for x in a]
    b = _trim([Fraction(x) for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(_trim(a)) >= len(b):
        shift = len(a) - len(b)
        factor = a[-1] / lead
        quot[shift] = factor
        for i, y in enumerate(b):
            a[shift + i] -= factor * y
    return _trim(quot), a


@lru_cache(maxsize=None)
def cyclotomic_polynomial(d: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_d, lowest degree first."""
    if d < 1:
        raise ValueError("cyclotomic order must be positive")
    num: QPoly = [Fraction(-1)] + [Fraction(0)] * (d - 1) + [Fraction(1)]
    for k in range(1, d):
        if d % k == 0:
            num, rem = _pdivmod(num, cyclotomic_polynomial(k))
            assert not rem
    return tuple(int(c) for c in num)


@lru_cache(maxsize=None)
def _power_table(d: int) -> tuple[tuple[Fraction, ...], ...]:
    """Reduced power-basis vectors of zeta^j for 0 <= j < 2*deg - 1 (and j < d)."""
    phi = cyclotomic_polynomial(d)
    deg = len(phi) - 1
    rows = []
    for j in range(max(2 * deg - 1, d)):
        mono = [Fraction(0)] * j + [Fraction(1)]
        _, rem = _pdivmod(mono, phi)
        rows.append(tuple(rem + [Fraction(0)] * (deg - len(rem))))
    return tuple(rows)


class Cyclotomic:
    """An element of Q(zeta_d), zeta_d = exp(2*pi*i/d)."""

    __slots__ = ("order", "coeffs")
    _is_exact_coefficient = True

    def __init__(self, order: int, coeffs: Sequence[Any] = ()):
        phi = cyclotomic_polynomial(order)
        deg = len(phi) - 1
        vec = [Fraction(c) for c in coeffs]
        if len(vec) > deg:
            table = _power_table(order)
            red = [Fraction(0)] * deg
            for j, c in enumerate(vec):
                if c:
                    if j >= len(table):
                        _, row = _pdivmod([Fraction(0)] * j + [Fraction(1)], phi)
                        row = row + [Fraction(0)] * (deg - len(row))
                    else:
                        row = table[j]
                    for i in range(deg):
                        red[i] += c * row[i]
            vec = red
        else:
            vec = vec + [Fraction(0)] * (deg - len(vec))
        self.order = order
        self.coeffs = tuple(vec)

    @classmethod
    def _raw(cls, order: int, vec) -> Cyclotomic:
        """Trusted constructor: ``vec`` is a reduced tuple of Fractions."""
        out = object.__new__(cls)
        out.order = order
        out.coeffs = tuple(vec)
        return out

    @classmethod
    def _reduce_raw(cls, order: int, vec: Sequence[Fraction]) -> Cyclotomic:
        table = _power_table(order)
        deg = len(table[0])
        if len(vec) <= deg:
            return cls._raw(order, list(vec) + [Fraction(0)] * (deg - len(vec)))
        if len(vec) > len(table):
            return cls(order, vec)
        red = list(vec[:deg])
        for j in range(deg, len(vec)):
            c = vec[j]
            if c:
                row = table[j]
                for i in range(deg):
                    if row[i]:
                        red[i] += c * row[i]
        return cls._raw(order, red)

    @classmethod
    def zeta(cls, d: int, power: int = 1) -> Cyclotomic:
        power %= d
        return cls(d, _power_table(d)[power])

    @classmethod
    def rational(cls, d: int, value: Any) -> Cyclotomic:
        return cls(d, [value])

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def _lift(self, other: Any) -> Cyclotomic | None:
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                raise ValueError(f"cannot mix Q(zeta_{self.order}) and Q(zeta_{other.order})")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.order, [other])
        return None

    def __add__(self, other: Any) -> Cyclotomic:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Cyclotomic._raw(self.order, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic._raw(self.order, [-a for a in self.coeffs])

    def __sub__(self, other: Any) -> Cyclotomic:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Cyclotomic._raw(self.order, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other: Any) -> Cyclotomic:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: Any) -> Cyclotomic:
        if isinstance(other, (int, Fraction)):
            return Cyclotomic._raw(self.order, [a * other for a in self.coeffs])
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Cyclotomic._reduce_raw(self.order, _pmul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> Cyclotomic:
        if self == 0:
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        # extended Euclid: find u with u*self = 1 mod Phi_d
        r0, r1 = [Fraction(c) for c in cyclotomic_polynomial(self.order)], _trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            quot, rem = _pdivmod(r0, r1)
            r0, r1 = r1, rem
            prod = _pmul(quot, s1)
            width = max(len(s0), len(prod))
            s0, s1 = s1, _trim([(s0[i] if i < len(s0) else 0) - (prod[i] if i < len(prod) else 0)
                                for i in range(width)])
        c = r1[0]
        return Cyclotomic(self.order, [x / c for x in s1])

    def __truediv__(self, other: Any) -> Cyclotomic:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Any) -> Cyclotomic:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> Cyclotomic:
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Cyclotomic(self.order, [1])
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> Cyclotomic:
        """Complex conjugate (zeta -> zeta^-1)."""
        total = Cyclotomic(self.order)
        for j, c in enumerate(self.coeffs):
            if c:
                total = total + Cyclotomic.zeta(self.order, -j) * c
        return total

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Cyclotomic):
            return self.order == other.order and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and (self.coeffs[0] if self.coeffs else 0) == other
        return NotImplemented

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coeffs[0] if self.coeffs else Fraction(0))
        return hash((self.order, self.coeffs))

    def __str__(self) -> str:
        parts = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = abs(c)
            text = f"{mag.numerator}" if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
            var = "" if j == 0 else ("zeta" if j == 1 else f"zeta^{j}")
            if var:
                body = var if mag == 1 else f"{text}*{var}"
            else:
                body = text
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts) or "0"

    def __repr__(self) -> str:
        return f"Cyclotomic({self.order}, {str(self)!r})"


def simplify_coefficient(c: Any) -> Any:
    """Collapse rational cyclotomic values to ``Fraction``."""
    if isinstance(c, Cyclotomic) and c.is_rational():
        return c.to_rational()
    return c
