"""Harmonic analysis on the cyclic group C_d and solutions of the E-system.

Group-algebra elements are coefficient vectors ``(c_0, ..., c_{d-1})`` for
``sum c_k t^k`` with exact :class:`Cyclotomic` entries.  Characters are
``i_a(t^m) = zeta_d^{am}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .exactring import Cyclotomic


class InvalidSubsetError(ValueError):
    pass


def _cyc(d: int, v) -> Cyclotomic:
    if isinstance(v, Cyclotomic):
        if v.order != d:
            raise ValueError(f"value lives in Q(zeta_{v.order}), expected Q(zeta_{d})")
        return v
    return Cyclotomic.rational(d, v)


@dataclass(frozen=True)
class GroupAlgebraElement:
    d: int
    coeffs: tuple[Cyclotomic, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.d:
            raise ValueError(f"need {self.d} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(_cyc(self.d, c) for c in self.coeffs))

    @classmethod
    def of(cls, d: int, values: Sequence) -> GroupAlgebraElement:
        return cls(d, tuple(values))

    def __call__(self, k: int) -> Cyclotomic:
        """Value of the function ``k -> c_k`` (index taken mod d)."""
        return self.coeffs[k % self.d]

    def __add__(self, other: GroupAlgebraElement) -> GroupAlgebraElement:
        _same(self, other)
        return GroupAlgebraElement(self.d, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c) -> GroupAlgebraElement:
        return GroupAlgebraElement(self.d, tuple(a * c for a in self.coeffs))

    def reversed(self) -> GroupAlgebraElement:
        """``sum c_{d-r} t^r``."""
        return GroupAlgebraElement(self.d, tuple(self(-r) for r in range(self.d)))

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coeffs) + ")"


def _same(a: GroupAlgebraElement, b: GroupAlgebraElement) -> None:
    if a.d != b.d:
        raise ValueError(f"orders differ: {a.d} vs {b.d}")


def delta(d: int, a: int) -> GroupAlgebraElement:
    return GroupAlgebraElement(d, tuple(1 if k == a % d else 0 for k in range(d)))


def character(d: int, a: int) -> GroupAlgebraElement:
    """``i_a = sum_s zeta^{as} t^s``."""
    return GroupAlgebraElement(d, tuple(Cyclotomic.zeta(d, a * s) for s in range(d)))


def convolve(a: GroupAlgebraElement, b: GroupAlgebraElement) -> GroupAlgebraElement:
    _same(a, b)
    d = a.d
    out = []
    for r in range(d):
        acc = Cyclotomic(d)
        for s in range(d):
            acc = acc + a.coeffs[s] * b(r - s)
        out.append(acc)
    return GroupAlgebraElement(d, tuple(out))


def pointwise(a: GroupAlgebraElement, b: GroupAlgebraElement) -> GroupAlgebraElement:
    _same(a, b)
    return GroupAlgebraElement(a.d, tuple(x * y for x, y in zip(a.coeffs, b.coeffs)))


def fourier(y: GroupAlgebraElement) -> GroupAlgebraElement:
    """``y^ = sum_m (y * i_m)(0) t^m``."""
    d = y.d
    out = []
    for m in range(d):
        acc = Cyclotomic(d)
        for s in range(d):
            acc = acc + y.coeffs[s] * Cyclotomic.zeta(d, -m * s)
        out.append(acc)
    return GroupAlgebraElement(d, tuple(out))


def inverse_fourier(yhat: GroupAlgebraElement) -> GroupAlgebraElement:
    return fourier(yhat).reversed().scale(Fraction(1, yhat.d))


# -- E-system ------------------------------------------------------------------


@dataclass(frozen=True)
class ESystemSolution:
    d: int
    D: tuple[int, ...]
    x: tuple[Cyclotomic, ...]  # x_1 .. x_{d-1}

    @property
    def E(self) -> Fraction:
        return Fraction(1, len(self.D))

    @property
    def vector(self) -> tuple[Cyclotomic, ...]:
        return (Cyclotomic.rational(self.d, 1),) + self.x

    def is_rational(self) -> bool:
        return all(v.is_rational() for v in self.x)

    def __str__(self) -> str:
        subset = "{" + ",".join(str(m) for m in self.D) + "}"
        return f"D={subset} x=({', '.join(str(v) for v in self.vector)}) E=1/{len(self.D)}"


def normalize_subset(d: int, D: Iterable[int] | None) -> tuple[int, ...]:
    if D is None:
        return tuple(range(d))
    out = tuple(sorted({int(m) % d for m in D}))
    if not out:
        raise InvalidSubsetError("D must be a non-empty subset of Z/dZ")
    return out


def esystem_solution(d: int, D: Iterable[int] | None = None) -> ESystemSolution:
    """``x_s = (1/|D|) sum_{m in D} zeta^{ms}``."""
    if d < 1:
        raise ValueError("d must be positive")
    D = normalize_subset(d, D)
    xs = []
    for s in range(1, d):
        acc = Cyclotomic(d)
        for m in D:
            acc = acc + Cyclotomic.zeta(d, m * s)
        xs.append(acc * Fraction(1, len(D)))
    return ESystemSolution(d, D, tuple(xs))


def e_shift_value(x: Sequence, m: int) -> Cyclotomic:
    """``E^{(m)} = (1/d) sum_s x_{m+s} x_{d-s}`` for a full vector ``x`` (x_0 included)."""
    d = len(x)
    acc = Cyclotomic(d)
    for s in range(d):
        acc = acc + _cyc(d, x[(m + s) % d]) * _cyc(d, x[-s % d])
    return acc * Fraction(1, d)


def verify_esystem(x: Sequence) -> bool:
    """Check ``sum_s x_{m+s} x_{d-s} = x_m sum_s x_s x_{d-s}`` for every m."""
    d = len(x)
    if d == 0 or _cyc(d, x[0]) != 1:
        raise ValueError("the vector must start with x_0 = 1")
    e0 = e_shift_value(x, 0)
    return all(e_shift_value(x, m) == _cyc(d, x[m]) * e0 for m in range(d))


def all_solutions(d: int) -> list[ESystemSolution]:
    """One solution per non-empty subset, ordered by size then lexicographically."""
    return [esystem_solution(d, D) for k in range(1, d + 1) for D in combinations(range(d), k)]


def fourier_search(d: int) -> list[tuple[int, ...]]:
    """Exhaustive search in the Fourier domain.

    ``x * x = c x`` with ``c = (x*x)(0)`` becomes ``xhat^2 = c xhat``
    pointwise, so ``xhat = c 1_S``.  Every support S is tried, c is fixed by
    ``x_0 = 1`` and the candidate is checked against the E-system directly.
    Returns the full vectors found.
    """
    found = []
    for k in range(0, d + 1):
        for S in combinations(range(d), k):
            ind = GroupAlgebraElement(d, tuple(1 if m in S else 0 for m in range(d)))
            base = inverse_fourier(ind)
            if base(0) == 0:
                continue
            x = base.scale(base(0).inverse())
            if verify_esystem(x.coeffs):
                found.append(x.coeffs)
    return found
