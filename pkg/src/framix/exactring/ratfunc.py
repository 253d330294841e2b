"""Rational functions over Q in Laurent variables, in reduced canonical form.

Canonical form: ``num/den`` with both sides honest polynomials (no negative
exponents), no common factor, and the leading coefficient of ``den`` (largest
exponent tuple in the global variable order) equal to 1.  Two equal rational
functions therefore have identical ``num`` and ``den``.

The multivariate gcd is delegated to :mod:`sympy.polys.rings`; everything else
is done on :class:`~framix.exactring.poly.Poly`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Any, Mapping

from sympy import QQ
from sympy.polys.rings import ring

from .poly import Poly, sort_vars


class ExactDivisionError(ArithmeticError):
    """A division that should have been exact left a remainder."""

    def __init__(self, message: str, residual: Any = None):
        super().__init__(message)
        self.residual = residual


@lru_cache(maxsize=64)
def _sympy_ring(names: tuple[str, ...]):
    return ring(",".join(names), QQ)[0]


def _to_sympy(p: Poly, names: tuple[str, ...]):
    R = _sympy_ring(names)
    return R.from_dict({e: QQ(c.numerator, c.denominator) for e, c in p.terms.items()})


def _from_sympy(el, names: tuple[str, ...]) -> Poly:
    return Poly(names, {tuple(e): Fraction(int(c.numerator), int(c.denominator))
                        for e, c in el.terms()}, _trusted=True)


def _check_rational_coeffs(p: Poly) -> None:
    for c in p.terms.values():
        if not isinstance(c, Fraction):
            raise TypeError("RationalFunction coefficients must be rational")


def _split_monomial(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    """Move all monomial factors so both sides are polynomials without common monomials."""
    names = num.vars
    shift_n = [min(e[i] for e in num.terms) for i in range(len(names))]
    shift_d = [min(e[i] for e in den.terms) for i in range(len(names))]
    net = [a - b for a, b in zip(shift_n, shift_d)]
    up_n = [max(x, 0) for x in net]
    up_d = [max(-x, 0) for x in net]
    n2 = {tuple(x - s + u for x, s, u in zip(e, shift_n, up_n)): c for e, c in num.terms.items()}
    d2 = {tuple(x - s + u for x, s, u in zip(e, shift_d, up_d)): c for e, c in den.terms.items()}
    return Poly(names, n2, _trusted=True), Poly(names, d2, _trusted=True)


def _reduce(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if den.is_zero():
        raise ZeroDivisionError("rational function with zero denominator")
    _check_rational_coeffs(num)
    _check_rational_coeffs(den)
    if num.is_zero():
        return Poly(), Poly.const(1)
    names = sort_vars(num.used_vars() + den.used_vars())
    num = num.extend(names).drop_unused().extend(names)
    den = den.extend(names).drop_unused().extend(names)
    num, den = _split_monomial(num, den)
    if len(den.terms) > 1 and len(num.terms) > 0 and names:
        a, b = _to_sympy(num, names).cancel(_to_sympy(den, names))
        num, den = _from_sympy(a, names), _from_sympy(b, names)
    lead = den.terms[max(den.terms)]
    if lead != 1:
        num = num * (1 / lead)
        den = den * (1 / lead)
    return num.drop_unused(), den.drop_unused()


class RationalFunction:
    """Immutable reduced quotient of two polynomials with rational coefficients."""

    __slots__ = ("num", "den")

    def __init__(self, num: Any = 0, den: Any = 1, *, _reduced: bool = False):
        num = num if isinstance(num, Poly) else Poly.const(num)
        den = den if isinstance(den, Poly) else Poly.const(den)
        if not _reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    @classmethod
    def of(cls, x: Any) -> RationalFunction:
        if isinstance(x, RationalFunction):
            return x
        return cls(x)

    @classmethod
    def var(cls, name: str) -> RationalFunction:
        return cls(Poly.var(name))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_laurent(self) -> bool:
        return len(self.den.terms) == 1

    def variables(self) -> tuple[str, ...]:
        return sort_vars(self.num.used_vars() + self.den.used_vars())

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: Any) -> RationalFunction:
        o = _lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> RationalFunction:
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __sub__(self, other: Any) -> RationalFunction:
        o = _lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> RationalFunction:
        o = _lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: Any) -> RationalFunction:
        o = _lift(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> RationalFunction:
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other: Any) -> RationalFunction:
        o = _lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Any) -> RationalFunction:
        o = _lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> RationalFunction:
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(self.num ** k, self.den ** k, _reduced=True)

    # -- comparison and text ------------------------------------------------

    def __eq__(self, other: object) -> bool:
        o = _lift(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __str__(self) -> str:
        if self.den == 1:
            return str(self.num)
        if self.is_laurent():
            return str(to_laurent(self))
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RationalFunction({str(self)!r})"

    def to_latex(self) -> str:
        if self.is_laurent():
            return poly_latex(to_laurent(self))
        return r"\frac{%s}{%s}" % (poly_latex(self.num), poly_latex(self.den))


def _lift(x: Any) -> RationalFunction | None:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (Poly, int, Fraction)):
        return RationalFunction(x)
    return None


def to_laurent(r: RationalFunction) -> Poly:
    """Return ``r`` as a Laurent polynomial; the denominator must be a monomial."""
    if not r.is_laurent():
        raise ExactDivisionError(f"denominator {r.den} does not divide the numerator", residual=r.den)
    (exps, c), = r.den.terms.items()
    inv = {v: -e for v, e in zip(r.den.vars, exps)}
    return (r.num * (1 / c)).shift(inv).drop_unused()


def substitute(p: Poly | RationalFunction, bindings: Mapping[str, Any]) -> RationalFunction:
    """Exactly substitute rational functions for variables.

    Variables that are not bound stay free.  A binding that makes a
    denominator vanish raises ``ZeroDivisionError`` naming the variable.
    """
    if isinstance(p, RationalFunction):
        return substitute(p.num, bindings) / substitute(p.den, bindings)
    if not isinstance(p, Poly):
        p = Poly.const(p)
    _check_rational_coeffs(p)
    values = {v: RationalFunction.of(b) for v, b in bindings.items() if v in p.vars}
    if not values:
        return RationalFunction(p)
    idx = {v: p.vars.index(v) for v in values}
    hi = {v: max(max(e[i] for e in p.terms), 0) for v, i in idx.items()} if p.terms else {}
    lo = {v: max(max(-e[i] for e in p.terms), 0) for v, i in idx.items()} if p.terms else {}
    for v in values:
        if lo.get(v) and values[v].is_zero():
            raise ZeroDivisionError(f"substituting 0 for {v} divides by zero")
    # multiply through by prod den_v**hi_v * num_v**lo_v so every term is polynomial
    keep = [i for i, v in enumerate(p.vars) if v not in values]
    kept = tuple(p.vars[i] for i in keep)
    groups: dict[tuple[int, ...], dict] = {}
    for exps, c in p.terms.items():
        key = tuple(exps[idx[v]] for v in values)
        groups.setdefault(key, {})[tuple(exps[i] for i in keep)] = c
    cache: dict[tuple[str, str, int], Poly] = {}

    def pw(v: str, side: str, k: int) -> Poly:
        if (v, side, k) not in cache:
            base = values[v].num if side == "n" else values[v].den
            cache[(v, side, k)] = base ** k
        return cache[(v, side, k)]

    names = list(values)
    total = Poly()
    for key, terms in groups.items():
        part = Poly(kept, terms, _trusted=True)
        for v, e in zip(names, key):
            part = part * pw(v, "n", e + lo[v]) * pw(v, "d", hi[v] - e)
        total = total + part
    denom = Poly.const(1)
    for v in names:
        denom = denom * pw(v, "d", hi[v]) * pw(v, "n", lo[v])
    return RationalFunction(total, denom)


def poly_latex(p: Poly) -> str:
    text = str(p)
    out = []
    for tok in text.split(" "):
        if tok in "+-":
            out.append(tok)
            continue
        pieces = []
        for f in tok.split("*"):
            if "^" in f:
                v, e = f.split("^")
                pieces.append(f"{v}^{{{e}}}")
            elif "/" in f:
                a, b = f.lstrip("-").split("/")
                pieces.append(("-" if f.startswith("-") else "") + rf"\frac{{{a}}}{{{b}}}")
            else:
                pieces.append(f)
        out.append(" ".join(pieces))
    return " ".join(out)


class CyclotomicRationalFunction:
    """``sum_j zeta_d^j R_j`` with rational functions R_j, j < deg Phi_d.

    Phi_d stays irreducible over Q(q, s, ...), so the components are unique
    and equality is componentwise.
    """

    __slots__ = ("order", "parts")

    def __init__(self, order: int, parts):
        from .cyclotomic import cyclotomic_polynomial

        deg = len(cyclotomic_polynomial(order)) - 1
        parts = [RationalFunction.of(p) for p in parts]
        if len(parts) > deg:
            raise ValueError("too many components for the power basis")
        self.order = order
        self.parts = tuple(parts + [RationalFunction(0)] * (deg - len(parts)))

    @classmethod
    def from_poly(cls, p: Poly, order: int) -> CyclotomicRationalFunction:
        """Split a Poly whose coefficients are rationals or Cyclotomic values."""
        from .cyclotomic import Cyclotomic, cyclotomic_polynomial

        deg = len(cyclotomic_polynomial(order)) - 1
        comps: list[dict] = [{} for _ in range(deg)]
        for e, c in p.terms.items():
            if not isinstance(c, Cyclotomic):
                c = Cyclotomic.rational(order, c)
            for j, v in enumerate(c.coeffs):
                if v:
                    comps[j][e] = v
        return cls(order, [RationalFunction(Poly(p.vars, t)) for t in comps])

    def is_rational(self) -> bool:
        return all(p.is_zero() for p in self.parts[1:])

    def rational_part(self) -> RationalFunction:
        if not self.is_rational():
            raise ValueError("value has irrational cyclotomic components")
        return self.parts[0]

    def map(self, fn) -> CyclotomicRationalFunction:
        """Apply a Q-linear map (e.g. a substitution or a rational scalar) componentwise."""
        return CyclotomicRationalFunction(self.order, [fn(p) for p in self.parts])

    def __add__(self, other):
        o = self._lift(other)
        return CyclotomicRationalFunction(self.order, [a + b for a, b in zip(self.parts, o.parts)])

    __radd__ = __add__

    def __neg__(self):
        return self.map(lambda p: -p)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (RationalFunction, Poly, int, Fraction)):
            return self.map(lambda p: p * other)
        o = self._lift(other)
        from .cyclotomic import Cyclotomic

        out = [RationalFunction(0)] * len(self.parts)
        for i, a in enumerate(self.parts):
            if a.is_zero():
                continue
            for j, b in enumerate(o.parts):
                if b.is_zero():
                    continue
                basis = Cyclotomic.zeta(self.order, i + j).coeffs
                for k, v in enumerate(basis):
                    if v:
                        out[k] = out[k] + a * b * v
        return CyclotomicRationalFunction(self.order, out)

    __rmul__ = __mul__

    def _lift(self, other) -> CyclotomicRationalFunction:
        if isinstance(other, CyclotomicRationalFunction):
            if other.order != self.order:
                raise ValueError("cyclotomic orders differ")
            return other
        return CyclotomicRationalFunction(self.order, [RationalFunction.of(other)])

    def __eq__(self, other):
        try:
            o = self._lift(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.parts == o.parts

    def __hash__(self):
        return hash((self.order, self.parts))

    def __str__(self) -> str:
        pieces = []
        for j, p in enumerate(self.parts):
            if p.is_zero():
                continue
            unit = "" if j == 0 else ("zeta" if j == 1 else f"zeta^{j}")
            pieces.append(f"({p})" + (f"*{unit}" if unit else ""))
        return " + ".join(pieces) or "0"

    def __repr__(self) -> str:
        return f"CyclotomicRationalFunction({self.order}, {str(self)!r})"
    def to_latex(self) -> str:
        pieces = []
        for j, p in enumerate(self.parts):
            if p.is_zero():
                continue
            unit = "" if j == 0 else (r"\zeta_{%d}" % self.order + ("" if j == 1 else "^{%d}" % j))
            pieces.append(r"\left(%s\right)%s" % (p.to_latex(), unit))
        return " + ".join(pieces) or "0"
