"""The Yokonuma-Hecke algebra Y_{d,n}(q) and its Markov trace.

Elements are sparse maps from monomials ``(a, w)`` to Laurent polynomials
in q, where ``(a, w)`` stands for ``t_1^{a_1} ... t_n^{a_n} g_w``.  The
permutation convention is the one in :mod:`framix.braids`; with it
``g_w t_k = t_{w(k)} g_w``.

The module also holds a plain Iwahori-Hecke engine with the Ocneanu trace,
written separately so the d = 1 degeneration can be checked against code
that shares nothing with the framed engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple

from .braids import BraidWord, FramedBraidWord, as_framed, word_permutation
from .esystem import esystem_solution, normalize_subset
from .exactring import Cyclotomic, Poly, sort_vars

Perm = tuple[int, ...]

_Q = ("q",)


def qpoly(coeffs: Mapping[int, object]) -> Poly:
    """Laurent polynomial in q with all coefficients on the variable tuple ``("q",)``."""
    return Poly(_Q, {(e,): Fraction(c) for e, c in coeffs.items() if c})


ONE = qpoly({0: 1})
QDIFF = qpoly({1: 1, -1: -1})


def _as_q(c) -> Poly:
    if isinstance(c, Poly):
        return c.extend(_Q) if c.vars != _Q else c
    return qpoly({0: c})


@lru_cache(maxsize=None)
def reduced_word(w: Perm) -> tuple[int, ...]:
    """0-based positions j with ``w = s_{j1} o ... o s_{jk}`` reduced."""
    for j in range(len(w) - 1):
        if w[j] > w[j + 1]:
            v = list(w)
            v[j], v[j + 1] = v[j + 1], v[j]
            return reduced_word(tuple(v)) + (j,)
    return ()


def perm_length(w: Perm) -> int:
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])


def perm_inverse(w: Perm) -> Perm:
    inv = [0] * len(w)
    for i, x in enumerate(w):
        inv[x] = i
    return tuple(inv)


def compose(u: Perm, v: Perm) -> Perm:
    """``u o v``."""
    return tuple(u[x] for x in v)


def all_perms(n: int) -> list[Perm]:
    from itertools import permutations
    return [tuple(p) for p in permutations(range(n))]


class YMonomial(NamedTuple):
    framing: tuple[int, ...]
    perm: Perm


def _add(out: dict, key, c: Poly) -> None:
    s = out.get(key)
    if s is None:
        out[key] = c
    else:
        s = s + c
        if s.terms:
            out[key] = s
        else:
            del out[key]


@dataclass(frozen=True, eq=False)
class YElement:
    d: int
    n: int
    terms: Mapping[YMonomial, Poly]

    def _check(self, other: YElement) -> None:
        if (self.d, self.n) != (other.d, other.n):
            raise ValueError(f"Y({self.d},{self.n}) vs Y({other.d},{other.n})")

    def __add__(self, other: YElement) -> YElement:
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add(out, k, c)
        return YElement(self.d, self.n, out)

    def __neg__(self) -> YElement:
        return YElement(self.d, self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: YElement) -> YElement:
        return self + (-other)

    def scale(self, c) -> YElement:
        c = _as_q(c)
        if not c.terms:
            return YElement(self.d, self.n, {})
        return YElement(self.d, self.n, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, YElement):
            return multiply(self, other)
        if isinstance(other, (int, Fraction, Poly)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> YElement:
        result = unit(self.d, self.n)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, YElement):
            return NotImplemented
        return (self.d, self.n) == (other.d, other.n) and self.terms == other.terms

    def __hash__(self):
        return hash((self.d, self.n, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, w) in sorted(self.terms):
            parts.append(f"({self.terms[(a, w)]})*[{','.join(map(str, a))}|{''.join(str(x + 1) for x in w)}]")
        return " + ".join(parts)


# -- elementary right multiplications (shared by the algebra and the trace) -----


def _rmul_g(terms: Mapping, j: int, d: int, coef: Poly) -> dict:
    """Right multiplication by g_{j+1}; ``coef = (q - q^-1)/d``."""
    out: dict = {}
    for (a, w), c in terms.items():
        ws = list(w)
        ws[j], ws[j + 1] = ws[j + 1], ws[j]
        _add(out, (a, tuple(ws)), c)
        if w[j] > w[j + 1]:
            cc = c * coef
            x, y = w[j + 1], w[j]
            for s in range(d):
                b = list(a)
                b[x] = (b[x] + s) % d
                b[y] = (b[y] - s) % d
                _add(out, (tuple(b), w), cc)
    return out


def _rmul_t(terms: Mapping, k: int, m: int, d: int) -> dict:
    out: dict = {}
    for (a, w), c in terms.items():
        b = list(a)
        b[w[k]] = (b[w[k]] + m) % d
        _add(out, (tuple(b), w), c)
    return out


def _rmul_e(terms: Mapping, i: int, k: int, d: int) -> dict:
    """Right multiplication by ``e_{i,k} = (1/d) sum_s t_i^s t_k^-s`` (0-based strands)."""
    inv_d = Fraction(1, d)
    out: dict = {}
    for (a, w), c in terms.items():
        cc = c * inv_d
        x, y = w[i], w[k]
        for s in range(d):
            b = list(a)
            b[x] = (b[x] + s) % d
            b[y] = (b[y] - s) % d
            _add(out, (tuple(b), w), cc)
    return out


@lru_cache(maxsize=None)
def _coef(d: int) -> Poly:
    return QDIFF * Fraction(1, d)


def _rmul_word(terms: Mapping, word: Iterable[int], d: int) -> dict:
    coef = _coef(d)
    for j in word:
        terms = _rmul_g(terms, j, d, coef)
    return dict(terms)


def _act(w: Perm, b: tuple[int, ...], a: tuple[int, ...], d: int) -> tuple[int, ...]:
    """Framing of ``t^a g_w t^b`` after moving t^b left: ``a + w.b``."""
    out = list(a)
    for k, x in enumerate(b):
        if x:
            out[w[k]] = (out[w[k]] + x) % d
    return tuple(out)


def multiply(x: YElement, y: YElement) -> YElement:
    x._check(y)
    d = x.d
    out: dict = {}
    for (b, v), cy in y.terms.items():
        moved: dict = {}
        for (a, w), cx in x.terms.items():
            _add(moved, (_act(w, b, a, d), w), cx)
        prod = _rmul_word(moved, reduced_word(v), d)
        for k, c in prod.items():
            _add(out, YMonomial(*k), c * cy)
    return YElement(d, x.n, out)


# -- generators ----------------------------------------------------------------


def unit(d: int, n: int) -> YElement:
    return YElement(d, n, {YMonomial((0,) * n, tuple(range(n))): ONE})


def monomial(d: int, framing: Iterable[int], perm: Perm, coeff=1) -> YElement:
    framing = tuple(int(a) % d for a in framing)
    return YElement(d, len(framing), {YMonomial(framing, tuple(perm)): _as_q(coeff)})


def _check_index(i: int, lo: int, hi: int, what: str) -> None:
    if not lo <= i <= hi:
        raise IndexError(f"{what} index {i} outside {lo}..{hi}")


def generator(kind: str, d: int, n: int, *idx: int) -> YElement:
    """``g``, ``g_inv``, ``t``, ``e``, ``e_pair`` or ``e_shift`` with 1-based indices.

    ``t(i, a=1)``, ``e(i)``, ``e_pair(i, j)``, ``e_shift(i, m)``.
    """
    one = unit(d, n)
    ident = tuple(range(n))
    zero_fr = (0,) * n
    if kind in ("g", "g_inv", "e", "e_shift"):
        i = idx[0]
        _check_index(i, 1, n - 1, kind)
    if kind == "g":
        return YElement(d, n, {YMonomial(zero_fr, compose(ident, _swap(n, i - 1))): ONE})
    if kind == "g_inv":
        return generator("g", d, n, i) - generator("e", d, n, i).scale(QDIFF)
    if kind == "t":
        i = idx[0]
        a = idx[1] if len(idx) > 1 else 1
        _check_index(i, 1, n, kind)
        fr = [0] * n
        fr[i - 1] = a % d
        return YElement(d, n, {YMonomial(tuple(fr), ident): ONE})
    if kind == "e":
        return YElement(d, n, _rmul_e(one.terms, i - 1, i, d))
    if kind == "e_pair":
        i, j = idx
        _check_index(i, 1, n, kind)
        _check_index(j, 1, n, kind)
        if i == j:
            raise IndexError("e_pair needs two distinct strands")
        return YElement(d, n, _rmul_e(one.terms, i - 1, j - 1, d))
    if kind == "e_shift":
        m = idx[1]
        return generator("t", d, n, i, m) * generator("e", d, n, i)
    raise ValueError(f"unknown generator kind {kind!r}")


def switched_generator(d: int, n: int, i: int) -> YElement:
    """``g~_i = g_i + (q - 1) e_i g_i``, the generator of the presentation with u = q^2.

    It satisfies ``g~_i^2 = 1 + (u - 1) e_i + (u - 1) e_i g~_i``.
    """
    g = generator("g", d, n, i)
    return g + (generator("e", d, n, i) * g).scale(qpoly({1: 1, 0: -1}))


def _swap(n: int, j: int) -> Perm:
    p = list(range(n))
    p[j], p[j + 1] = p[j + 1], p[j]
    return tuple(p)


def rmul_letter(x: YElement, letter: int) -> YElement:
    """``x * g_k`` or ``x * g_k^-1`` for a signed braid letter."""
    j = abs(letter) - 1
    terms = _rmul_g(x.terms, j, x.d, _coef(x.d))
    if letter < 0:
        for k, c in _rmul_e(x.terms, j, j + 1, x.d).items():
            _add(terms, k, -c * QDIFF)
    return YElement(x.d, x.n, {YMonomial(*k): c for k, c in terms.items()})


def braid_to_element(b: FramedBraidWord | BraidWord | str, d: int | None = None) -> YElement:
    """Image under ``sigma_i -> g_i``, ``t_i -> t_i``; framings sit on top."""
    fb = as_framed(b, d)
    d = fb.d
    x = monomial(d, fb.framings, tuple(range(fb.n)))
    for letter in fb.letters:
        x = rmul_letter(x, letter)
    return x


# -- the trace -----------------------------------------------------------------


def trace_vars(d: int) -> tuple[str, ...]:
    return sort_vars(["z", "q"] + [f"x{s}" for s in range(1, d)])


class TraceEngine:
    """Memoized monomial traces for a fixed d (any number of strands)."""

    def __init__(self, d: int):
        self.d = d
        self.vars = trace_vars(d)
        self._z = self.vars.index("z")
        self._q = self.vars.index("q")
        self._x = {s: self.vars.index(f"x{s}") for s in range(1, d)}
        self._memo: dict = {}
        self.one = Poly(self.vars, {(0,) * len(self.vars): Fraction(1)}, _trusted=True)

    def _lift_q(self, c: Poly) -> Poly:
        width = len(self.vars)
        out = {}
        for (e,), v in c.terms.items():
            key = [0] * width
            key[self._q] = e
            out[tuple(key)] = v
        return Poly(self.vars, out, _trusted=True)

    def _times_var(self, p: Poly, index: int) -> Poly:
        return Poly(self.vars, {e[:index] + (e[index] + 1,) + e[index + 1:]: c
                                for e, c in p.terms.items()}, _trusted=True)

    def monomial_trace(self, a: tuple[int, ...], w: Perm) -> Poly:
        key = (a, w)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        n = len(a)
        if n == 0:
            return self.one
        p = n - 1
        i = w.index(p)
        if i == p:
            rest = self.monomial_trace(a[:p], w[:p])
            res = rest if a[p] == 0 else self._times_var(rest, self._x[a[p]])
        else:
            # w = w' o s_{n-2} o c' with c' = s_{n-3} o ... o s_i
            c = list(range(n))
            for j in range(n - 3, i - 1, -1):
                c[j], c[j + 1] = c[j + 1], c[j]
            cperm = tuple(c)
            full = compose(_swap(n, n - 2), cperm)
            wprime = compose(w, perm_inverse(full))
            ca = [0] * n
            for k in range(n):
                ca[cperm[k]] = a[k]
            X = _rmul_word({(tuple(ca), cperm): ONE}, reduced_word(wprime), self.d)
            res = Poly(self.vars, {}, _trusted=True)
            for (b, x), coeff in X.items():
                assert x[p] == p
                low = list(b[:p])
                low[p - 1] = (low[p - 1] + b[p]) % self.d
                sub = self.monomial_trace(tuple(low), x[:p])
                res = res + self._lift_q(coeff) * sub
            res = self._times_var(res, self._z)
        self._memo[key] = res
        return res

    def trace(self, x: YElement) -> Poly:
        if x.d != self.d:
            raise ValueError("modulus mismatch")
        total = Poly(self.vars, {}, _trusted=True)
        for (a, w), c in x.terms.items():
            total = total + self._lift_q(c) * self.monomial_trace(a, w)
        return total


_ENGINES: dict[int, TraceEngine] = {}


def trace_engine(d: int) -> TraceEngine:
    if d not in _ENGINES:
        _ENGINES[d] = TraceEngine(d)
    return _ENGINES[d]


def trace(x: YElement) -> Poly:
    """The Juyumaya trace, a polynomial in z and x_1..x_{d-1} over Laurent q."""
    return trace_engine(x.d).trace(x).drop_unused()


def specialize_trace(t: Poly, d: int, D: Iterable[int] | None = None) -> Poly:
    """Bind ``x_s`` to the E-system solution for D; rational cases come back over Q."""
    sol = esystem_solution(d, normalize_subset(d, D))
    values = {f"x{s}": (v.to_rational() if v.is_rational() else v) for s, v in zip(range(1, d), sol.x)}
    out = t.evaluate({k: v for k, v in values.items() if k in t.vars})
    return out.map_coefficients(lambda c: c.to_rational() if isinstance(c, Cyclotomic) and c.is_rational() else c)


def specialized_trace(x: YElement, D: Iterable[int] | None = None) -> Poly:
    return specialize_trace(trace(x), x.d, D).drop_unused()


# -- Iwahori-Hecke algebra with the Ocneanu trace ------------------------------


@dataclass(frozen=True, eq=False)
class HeckeElement:
    n: int
    terms: Mapping[Perm, Poly]

    def __add__(self, other: HeckeElement) -> HeckeElement:
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add(out, k, c)
        return HeckeElement(self.n, out)

    def __sub__(self, other: HeckeElement) -> HeckeElement:
        return self + other.scale(-1)

    def scale(self, c) -> HeckeElement:
        c = _as_q(c)
        return HeckeElement(self.n, {k: v * c for k, v in self.terms.items() if (v * c).terms})

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return hecke_multiply(self, other)
        return self.scale(other)

    __rmul__ = scale

    def __eq__(self, other: object) -> bool:
        return isinstance(other, HeckeElement) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))


def _hecke_rmul(terms: Mapping[Perm, Poly], j: int) -> dict:
    # h_w h_j = h_{w s_j} if the length goes up, else h_{w s_j} + (q - q^-1) h_w
    out: dict = {}
    for w, c in terms.items():
        ws = list(w)
        ws[j], ws[j + 1] = ws[j + 1], ws[j]
        _add(out, tuple(ws), c)
        if w[j] > w[j + 1]:
            _add(out, w, c * QDIFF)
    return out


def hecke_unit(n: int) -> HeckeElement:
    return HeckeElement(n, {tuple(range(n)): ONE})


def hecke_generator(n: int, i: int) -> HeckeElement:
    _check_index(i, 1, n - 1, "h")
    return HeckeElement(n, {_swap(n, i - 1): ONE})


def hecke_basis(n: int, w: Perm) -> HeckeElement:
    return HeckeElement(n, {tuple(w): ONE})


def hecke_multiply(x: HeckeElement, y: HeckeElement) -> HeckeElement:
    out: dict = {}
    for v, cy in y.terms.items():
        prod = dict(x.terms)
        for j in reduced_word(v):
            prod = _hecke_rmul(prod, j)
        for k, c in prod.items():
            _add(out, k, c * cy)
    return HeckeElement(x.n, out)


def hecke_braid(b: BraidWord | FramedBraidWord | str) -> HeckeElement:
    fb = as_framed(b)
    terms: dict = {tuple(range(fb.n)): ONE}
    for letter in fb.letters:
        j = abs(letter) - 1
        new = _hecke_rmul(terms, j)
        if letter < 0:  # h^-1 = h - (q - q^-1)
            for k, c in terms.items():
                _add(new, k, -c * QDIFF)
        terms = new
    return HeckeElement(fb.n, terms)


_OCNEANU_VARS = ("z", "q")
_OCNEANU_MEMO: dict[Perm, Poly] = {}


def _ocneanu_basis(w: Perm) -> Poly:
    """tau(h_w): peel the top strand, ``tau(a h_{n-1}) = z tau(a)``."""
    hit = _OCNEANU_MEMO.get(w)
    if hit is not None:
        return hit
    n = len(w)
    if n <= 1:
        res = Poly(_OCNEANU_VARS, {(0, 0): Fraction(1)}, _trusted=True)
    elif w[n - 1] == n - 1:
        res = _ocneanu_basis(w[:-1])
    else:
        # cycle the descending run below the top generator to the front
        i = w.index(n - 1)
        run = list(range(n - 2, i - 1, -1))  # positions n-2, ..., i
        tail = run[1:]
        wp = list(w)
        for j in reversed(run):  # strip h_{n-2} ... h_i from the right
            wp[j], wp[j + 1] = wp[j + 1], wp[j]
        wprime = tuple(wp)
        terms: dict = {tuple(range(n)): ONE}
        for j in tail:
            terms = _hecke_rmul(terms, j)
        for j in reduced_word(wprime):
            terms = _hecke_rmul(terms, j)
        res = Poly(_OCNEANU_VARS, {}, _trusted=True)
        for x, c in terms.items():
            res = res + c.extend(_OCNEANU_VARS) * _ocneanu_basis(x[:-1])
        res = Poly(_OCNEANU_VARS, {(e[0] + 1, e[1]): v for e, v in res.terms.items()}, _trusted=True)
    _OCNEANU_MEMO[w] = res
    return res


def ocneanu_trace(x: HeckeElement) -> Poly:
    total = Poly(_OCNEANU_VARS, {}, _trusted=True)
    for w, c in x.terms.items():
        total = total + c.extend(_OCNEANU_VARS) * _ocneanu_basis(w)
    return total.drop_unused()


def framing_vector_of(x: YElement) -> set:
    return {a for (a, _) in x.terms}


__all__ = [
    "YMonomial", "YElement", "generator", "multiply", "braid_to_element", "trace",
    "specialize_trace", "specialized_trace", "unit", "monomial", "HeckeElement",
    "hecke_braid", "hecke_generator", "hecke_unit", "hecke_basis", "ocneanu_trace", "QDIFF", "ONE",
    "qpoly", "reduced_word", "all_perms", "word_permutation",
]
