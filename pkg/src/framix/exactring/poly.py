"""Sparse multivariate Laurent polynomials with exact coefficients.

A :class:`Poly` maps exponent tuples to coefficients.  Coefficients are
``Fraction`` by default; :class:`~framix.exactring.cyclotomic.Cyclotomic`
values work as well since only ``+``, ``*`` and comparison with zero are used.

Variables are kept in one global order (see :func:`var_key`) so two
polynomials over the same variable set always agree on exponent layout, and
the canonical text form is independent of how the value was built.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Any, Iterable, Mapping

Exponents = tuple[int, ...]

_PRIORITY = {"s": 0, "z": 1, "E": 2, "u": 90, "q": 100}


def var_key(name: str) -> tuple:
    if name in _PRIORITY:
        return (_PRIORITY[name], 0, name)
    m = re.fullmatch(r"x(\d+)", name)
    if m:
        return (10, int(m.group(1)), name)
    return (50, 0, name)


def sort_vars(names: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(set(names), key=var_key))


def _fmt_rational(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


class Poly:
    """Immutable sparse Laurent polynomial."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Iterable[str] = (), terms: Mapping[Exponents, Any] | None = None,
                 *, _trusted: bool = False):
        vars = tuple(vars)
        if _trusted:
            self.vars = vars
            self.terms = terms
        else:
            ordered = sort_vars(vars)
            if len(ordered) != len(vars):
                raise ValueError(f"duplicate variables in {vars}")
            perm = [vars.index(v) for v in ordered]
            clean: dict[Exponents, Any] = {}
            for exps, c in (terms or {}).items():
                if len(exps) != len(vars):
                    raise ValueError("exponent tuple length does not match variables")
                c = _coerce(c)
                if c == 0:
                    continue
                key = tuple(int(exps[i]) for i in perm)
                if key in clean:
                    s = clean[key] + c
                    if s == 0:
                        del clean[key]
                    else:
                        clean[key] = s
                else:
                    clean[key] = c
            self.vars = ordered
            self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, c: Any) -> Poly:
        return cls((), {(): c})

    @classmethod
    def var(cls, name: str, power: int = 1) -> Poly:
        return cls((name,), {(power,): Fraction(1)})

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coeff: Any = 1) -> Poly:
        names = tuple(exps)
        return cls(names, {tuple(exps[n] for n in names): coeff})

    @classmethod
    def laurent(cls, coeffs: Mapping[int, Any], var: str = "q") -> Poly:
        return cls((var,), {(e,): c for e, c in coeffs.items()})

    # -- basic queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and all(e == 0 for e in next(iter(self.terms))))

    def constant_term(self) -> Any:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def used_vars(self) -> tuple[str, ...]:
        used = set()
        for exps in self.terms:
            for v, e in zip(self.vars, exps):
                if e:
                    used.add(v)
        return sort_vars(used)

    def degree(self, var: str) -> int:
        if var not in self.vars or not self.terms:
            return 0 if self.terms else -1
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def min_degree(self, var: str) -> int:
        if var not in self.vars or not self.terms:
            return 0
        i = self.vars.index(var)
        return min(e[i] for e in self.terms)

    def is_polynomial(self) -> bool:
        return all(e >= 0 for exps in self.terms for e in exps)

    def items(self):
        return self.terms.items()

    def coefficient(self, exps: Mapping[str, int]) -> Any:
        p = self.extend(tuple(exps))
        key = tuple(exps.get(v, 0) for v in p.vars)
        return p.terms.get(key, Fraction(0))

    def coefficients_in(self, var: str) -> dict[int, Poly]:
        """Split into ``{k: c_k}`` with ``self = sum c_k * var**k``."""
        if var not in self.vars:
            return {0: self} if self.terms else {}
        i = self.vars.index(var)
        rest = self.vars[:i] + self.vars[i + 1:]
        out: dict[int, dict] = {}
        for exps, c in self.terms.items():
            out.setdefault(exps[i], {})[exps[:i] + exps[i + 1:]] = c
        return {k: Poly(rest, t, _trusted=True) for k, t in out.items()}

    # -- alignment ----------------------------------------------------------

    def extend(self, names: Iterable[str]) -> Poly:
        new = sort_vars(tuple(self.vars) + tuple(names))
        if new == self.vars:
            return self
        idx = [new.index(v) for v in self.vars]
        terms = {}
        for exps, c in self.terms.items():
            key = [0] * len(new)
            for j, e in zip(idx, exps):
                key[j] = e
            terms[tuple(key)] = c
        return Poly(new, terms, _trusted=True)

    def drop_unused(self) -> Poly:
        used = self.used_vars()
        if used == self.vars:
            return self
        idx = [self.vars.index(v) for v in used]
        return Poly(used, {tuple(e[i] for i in idx): c for e, c in self.terms.items()}, _trusted=True)

    # -- arithmetic ---------------------------------------------------------

    def _align(self, other: Any) -> tuple[Poly, Poly]:
        other = _as_poly(other)
        if other.vars == self.vars:
            return self, other
        names = tuple(self.vars) + tuple(other.vars)
        return self.extend(names), other.extend(names)

    def __add__(self, other: Any) -> Poly:
        if not isinstance(other, (Poly, int, Fraction)) and not _is_coeff(other):
            return NotImplemented
        a, b = self._align(other)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            s = terms.get(e)
            if s is None:
                terms[e] = c
            else:
                s = s + c
                if s == 0:
                    del terms[e]
                else:
                    terms[e] = s
        return Poly(a.vars, terms, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(self.vars, {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other: Any) -> Poly:
        if not isinstance(other, (Poly, int, Fraction)) and not _is_coeff(other):
            return NotImplemented
        return self + (-_as_poly(other))

    def __rsub__(self, other: Any) -> Poly:
        return _as_poly(other) - self

    def __mul__(self, other: Any) -> Poly:
        if isinstance(other, (int, Fraction)) or (_is_coeff(other) and not isinstance(other, Poly)):
            if other == 0:
                return Poly(self.vars, {}, _trusted=True)
            return Poly(self.vars, {e: c * other for e, c in self.terms.items()}, _trusted=True)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self._align(other)
        terms: dict[Exponents, Any] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = terms.get(e)
                terms[e] = c1 * c2 if s is None else s + c1 * c2
        return Poly(a.vars, {e: c for e, c in terms.items() if c != 0}, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        if k < 0:
            if len(self.terms) != 1:
                raise ArithmeticError("negative power of a non-monomial")
            (e, c), = self.terms.items()
            return Poly(self.vars, {tuple(x * k for x in e): 1 / c ** -k}, _trusted=True)
        result = Poly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, exps: Mapping[str, int]) -> Poly:
        """Multiply by the monomial ``prod v**exps[v]``."""
        p = self.extend(tuple(exps))
        add = tuple(exps.get(v, 0) for v in p.vars)
        return Poly(p.vars, {tuple(x + y for x, y in zip(e, add)): c for e, c in p.terms.items()},
                    _trusted=True)

    def map_coefficients(self, fn) -> Poly:
        return Poly(self.vars, {e: fn(c) for e, c in self.terms.items()})

    def evaluate(self, values: Mapping[str, Any]) -> Poly:
        """Substitute Poly/number values for variables (negative powers need monomial values)."""
        result = Poly(self.vars, {}, _trusted=True)
        powers: dict[tuple[str, int], Poly] = {}

        def power(v: str, e: int) -> Poly:
            key = (v, e)
            if key not in powers:
                powers[key] = _as_poly(values[v]) ** e
            return powers[key]

        keep = [i for i, v in enumerate(self.vars) if v not in values]
        kept_vars = tuple(self.vars[i] for i in keep)
        groups: dict[tuple, dict] = {}
        for exps, c in self.terms.items():
            sub_key = tuple((v, e) for v, e in zip(self.vars, exps) if v in values and e)
            groups.setdefault(sub_key, {})[tuple(exps[i] for i in keep)] = c
        for sub_key, terms in groups.items():
            part = Poly(kept_vars, terms, _trusted=True)
            for v, e in sub_key:
                part = part * power(v, e)
            result = result + part
        return result

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)) or (_is_coeff(other) and not isinstance(other, Poly)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.drop_unused(), other.drop_unused()
        return a.vars == b.vars and a.terms == b.terms

    def __hash__(self) -> int:
        if self._hash is None:
            p = self.drop_unused()
            self._hash = hash((p.vars, frozenset(p.terms.items())))
        return self._hash

    # -- text ---------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Exponents, Any]]:
        return sorted(self.terms.items(), key=lambda t: t[0])

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for i, (exps, c) in enumerate(self.sorted_terms()):
            sign, body = _term_text(self.vars, exps, c)
            if i == 0:
                out.append(("-" if sign < 0 else "") + body)
            else:
                out.append((" - " if sign < 0 else " + ") + body)
        return "".join(out)

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"


def _term_text(vars: tuple[str, ...], exps: Exponents, c: Any) -> tuple[int, str]:
    factors = []
    for v, e in zip(vars, exps):
        if e == 1:
            factors.append(v)
        elif e:
            factors.append(f"{v}^{e}")
    if isinstance(c, Fraction) or isinstance(c, int):
        c = Fraction(c)
        sign = -1 if c < 0 else 1
        mag = abs(c)
        if mag == 1 and factors:
            return sign, "*".join(factors)
        return sign, "*".join([_fmt_rational(mag)] + factors)
    text = f"({c})"
    return 1, "*".join([text] + factors)


def _is_coeff(x: Any) -> bool:
    return hasattr(x, "_is_exact_coefficient")


def _coerce(c: Any) -> Any:
    if isinstance(c, int):
        return Fraction(c)
    return c


def _as_poly(x: Any) -> Poly:
    if isinstance(x, Poly):
        return x
    return Poly.const(x)


# -- text grammar --------------------------------------------------------------

_TERM_SPLIT = re.compile(r"\s+([+\-−])\s+")
_FACTOR = re.compile(r"^([A-Za-z][A-Za-z0-9]*)(?:\^(-?\d+))?$")
_NUMBER = re.compile(r"^\d+(?:/\d+)?$")


def parse_poly(text: str) -> Poly:
    """Parse the canonical text form produced by ``str(Poly)``.

    >>> str(parse_poly("q^-2 - 2 + 1/3*q^2*s"))
    'q^-2 - 2 + 1/3*s*q^2'
    """
    text = text.strip().replace("−", "-")
    if not text:
        raise ValueError("empty polynomial text")
    sign = 1
    if text.startswith("-"):
        sign = -1
        text = text[1:].lstrip()
    pieces = _TERM_SPLIT.split(text)
    chunks = [(sign, pieces[0])]
    for k in range(1, len(pieces), 2):
        chunks.append((-1 if pieces[k] in "-−" else 1, pieces[k + 1]))
    result = Poly()
    for sgn, body in chunks:
        coeff = Fraction(sgn)
        exps: dict[str, int] = {}
        for factor in body.split("*"):
            factor = factor.strip()
            if _NUMBER.match(factor):
                coeff *= Fraction(factor)
                continue
            m = _FACTOR.match(factor)
            if not m:
                raise ValueError(f"cannot parse factor {factor!r} in {body!r}")
            exps[m.group(1)] = exps.get(m.group(1), 0) + int(m.group(2) or 1)
        result = result + Poly.monomial(exps, coeff)
    return result
