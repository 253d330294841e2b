"""The algebra of braids and ties E_n(q) and its Markov trace with symbolic E.

A monomial ``(P, w)`` is ``eps_P b_w``: ``P`` is a set partition of the
strands (stored as restricted-growth labels) and ``w`` a permutation, with
the convention of :mod:`framix.braids`.  Ties move through braids by
``b_w eps_P = eps_{w(P)} b_w``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping

from .braids import BraidWord, FramedBraidWord, as_framed
from .exactring import Poly, sort_vars
from .yokonuma import (ONE, QDIFF, YElement, YMonomial, _add, _as_q, _rmul_e, _rmul_word,
                       all_perms, braid_to_element, compose, perm_inverse, reduced_word,
                       specialized_trace)

Perm = tuple[int, ...]


# -- set partitions ------------------------------------------------------------


@dataclass(frozen=True, order=True)
class SetPartition:
    """Partition of ``{0..n-1}`` as restricted-growth labels (block of each element)."""

    labels: tuple[int, ...]

    @classmethod
    def discrete(cls, n: int) -> SetPartition:
        return cls(tuple(range(n)))

    @classmethod
    def from_labels(cls, labels: Iterable) -> SetPartition:
        seen: dict = {}
        return cls(tuple(seen.setdefault(x, len(seen)) for x in labels))

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> SetPartition:
        labels = list(range(n))
        for k, blk in enumerate(blocks):
            for i in blk:
                labels[i] = n + k
        return cls.from_labels(labels)

    @property
    def n(self) -> int:
        return len(self.labels)

    def blocks(self) -> list[tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for i, b in enumerate(self.labels):
            out.setdefault(b, []).append(i)
        return [tuple(v) for v in out.values()]

    def join(self, other: SetPartition) -> SetPartition:
        if other.n != self.n:
            raise ValueError("partitions of different sets")
        parent = list(range(self.n))

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for labels in (self.labels, other.labels):
            first: dict[int, int] = {}
            for i, b in enumerate(labels):
                if b in first:
                    parent[find(i)] = find(first[b])
                else:
                    first[b] = i
        return SetPartition.from_labels(find(i) for i in range(self.n))

    __or__ = join

    def tie(self, i: int, j: int) -> SetPartition:
        """Join the blocks of i and j."""
        a, b = self.labels[i], self.labels[j]
        if a == b:
            return self
        return SetPartition.from_labels(a if x == b else x for x in self.labels)

    def act(self, w: Perm) -> SetPartition:
        """``w(P)``: element i moves to ``w[i]``."""
        labels = [0] * self.n
        for i, b in enumerate(self.labels):
            labels[w[i]] = b
        return SetPartition.from_labels(labels)

    def is_singleton(self, i: int) -> bool:
        return self.labels.count(self.labels[i]) == 1

    def remove_last(self) -> SetPartition:
        return SetPartition.from_labels(self.labels[:-1])

    def __str__(self) -> str:
        return "|".join("".join(str(i + 1) for i in b) for b in self.blocks())


def all_partitions(n: int) -> list[SetPartition]:
    """All restricted-growth strings of length n (Bell(n) of them)."""
    out = []

    def grow(prefix: list[int], top: int) -> None:
        if len(prefix) == n:
            out.append(SetPartition(tuple(prefix)))
            return
        for b in range(top + 2):
            grow(prefix + [b], max(top, b))

    if n == 0:
        return [SetPartition(())]
    grow([0], 0)
    return out


# -- elements ------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class EElement:
    n: int
    terms: Mapping[tuple[SetPartition, Perm], Poly]

    def _check(self, other: EElement) -> None:
        if self.n != other.n:
            raise ValueError(f"E_{self.n} vs E_{other.n}")

    def __add__(self, other: EElement) -> EElement:
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add(out, k, c)
        return EElement(self.n, out)

    def __neg__(self) -> EElement:
        return EElement(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: EElement) -> EElement:
        return self + (-other)

    def scale(self, c) -> EElement:
        c = _as_q(c)
        if not c.terms:
            return EElement(self.n, {})
        return EElement(self.n, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, EElement):
            return e_multiply(self, other)
        if isinstance(other, (int, Fraction, Poly)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*[{P}|{''.join(str(x + 1) for x in w)}]"
                          for (P, w), c in sorted(self.terms.items()))


def _rmul_b(terms: Mapping, j: int) -> dict:
    out: dict = {}
    for (P, w), c in terms.items():
        ws = list(w)
        ws[j], ws[j + 1] = ws[j + 1], ws[j]
        _add(out, (P, tuple(ws)), c)
        if w[j] > w[j + 1]:
            _add(out, (P.tie(w[j], w[j + 1]), w), c * QDIFF)
    return out


def _rmul_bword(terms: Mapping, word: Iterable[int]) -> dict:
    for j in word:
        terms = _rmul_b(terms, j)
    return dict(terms)


def e_multiply(x: EElement, y: EElement) -> EElement:
    x._check(y)
    out: dict = {}
    for (R, v), cy in y.terms.items():
        moved: dict = {}
        for (P, w), cx in x.terms.items():
            _add(moved, (P.join(R.act(w)), w), cx)
        for k, c in _rmul_bword(moved, reduced_word(v)).items():
            _add(out, k, c * cy)
    return EElement(x.n, out)


def e_unit(n: int) -> EElement:
    return EElement(n, {(SetPartition.discrete(n), tuple(range(n))): ONE})


def e_monomial(P: SetPartition, w: Perm, coeff=1) -> EElement:
    return EElement(P.n, {(P, tuple(w)): _as_q(coeff)})


def b(n: int, i: int) -> EElement:
    if not 1 <= i <= n - 1:
        raise IndexError(f"b index {i} outside 1..{n - 1}")
    w = list(range(n))
    w[i - 1], w[i] = w[i], w[i - 1]
    return e_monomial(SetPartition.discrete(n), tuple(w))


def b_inv(n: int, i: int) -> EElement:
    return b(n, i) - eps(n, i).scale(QDIFF)


def switched_b(n: int, i: int) -> EElement:
    """``b~_i = b_i + (q - 1) eps_i b_i``; it satisfies the quadratic relation with u = q^2."""
    bi = b(n, i)
    return bi + (eps(n, i) * bi).scale(Poly.laurent({1: 1, 0: -1}))


def eps(n: int, i: int, j: int | None = None) -> EElement:
    """``eps_i`` ties strands i and i+1; ``eps(n, i, j)`` ties i and j (1-based)."""
    j = i + 1 if j is None else j
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError("tie index out of range")
    return e_monomial(SetPartition.discrete(n).tie(i - 1, j - 1), tuple(range(n)))


def braid_to_eelement(word: BraidWord | FramedBraidWord | str) -> EElement:
    fb = as_framed(word)
    if any(fb.framings):
        raise ValueError("the ties engine only takes classical braids")
    terms: dict = {(SetPartition.discrete(fb.n), tuple(range(fb.n))): ONE}
    for letter in fb.letters:
        j = abs(letter) - 1
        new = _rmul_b(terms, j)
        if letter < 0:
            for (P, w), c in terms.items():
                _add(new, (P.tie(w[j], w[j + 1]), w), -c * QDIFF)
        terms = new
    return EElement(fb.n, terms)


# -- trace ---------------------------------------------------------------------

E_VARS = sort_vars(["z", "E", "q"])
_IZ, _IE, _IQ = (E_VARS.index(v) for v in ("z", "E", "q"))
_ETRACE_MEMO: dict = {}
_ZERO = Poly(E_VARS, {}, _trusted=True)
_UNIT = Poly(E_VARS, {(0, 0, 0): Fraction(1)}, _trusted=True)


def _lift(c: Poly) -> Poly:
    out = {}
    for (e,), v in c.terms.items():
        key = [0, 0, 0]
        key[_IQ] = e
        out[tuple(key)] = v
    return Poly(E_VARS, out, _trusted=True)


def _bump(p: Poly, index: int) -> Poly:
    return Poly(E_VARS, {e[:index] + (e[index] + 1,) + e[index + 1:]: c for e, c in p.terms.items()},
                _trusted=True)


def _swap(n: int, j: int) -> Perm:
    p = list(range(n))
    p[j], p[j + 1] = p[j + 1], p[j]
    return tuple(p)


def monomial_etrace(P: SetPartition, w: Perm) -> Poly:
    key = (P, w)
    hit = _ETRACE_MEMO.get(key)
    if hit is not None:
        return hit
    n = len(w)
    p = n - 1
    if n <= 1:
        res = _UNIT
    elif w[p] == p:
        rest = monomial_etrace(P.remove_last(), w[:p])
        res = rest if P.is_singleton(p) else _bump(rest, _IE)
    else:
        i = w.index(p)
        c = list(range(n))
        for j in range(n - 3, i - 1, -1):
            c[j], c[j + 1] = c[j + 1], c[j]
        cperm = tuple(c)
        wprime = compose(w, perm_inverse(compose(_swap(n, n - 2), cperm)))
        X = _rmul_bword({(P.act(cperm), cperm): ONE}, reduced_word(wprime))
        res = _ZERO
        for (R, x), coeff in X.items():
            low = R.remove_last()
            if not R.is_singleton(p):
                k = next(m for m in range(p) if R.labels[m] == R.labels[p])
                low = low.tie(perm_inverse(x)[k], p - 1)
            res = res + _lift(coeff) * monomial_etrace(low, x[:p])
        res = _bump(res, _IZ)
    _ETRACE_MEMO[key] = res
    return res


def e_trace(x: EElement) -> Poly:
    """Markov trace on E_n(q) with values in Laurent(q)[z, E]."""
    total = _ZERO
    for (P, w), c in x.terms.items():
        total = total + _lift(c) * monomial_etrace(P, w)
    return total.drop_unused()


# -- comparison map into Y_{d,n}(q) --------------------------------------------


def phi_monomial(P: SetPartition, w: Perm, d: int) -> YElement:
    n = P.n
    terms: dict = {((0,) * n, tuple(range(n))): ONE}
    for blk in P.blocks():
        for a, c in zip(blk, blk[1:]):
            terms = _rmul_e(terms, a, c, d)
    terms = _rmul_word(terms, reduced_word(w), d)
    return YElement(d, n, {YMonomial(*k): v for k, v in terms.items()})


def phi_map(x: EElement, d: int) -> YElement:
    """``b_i -> g_i``, ``eps_i -> e_i``."""
    total = YElement(d, x.n, {})
    for (P, w), c in x.terms.items():
        total = total + phi_monomial(P, w, d).scale(c)
    return total


def phi_rank(n: int, d: int) -> tuple[int, int]:
    """Rank of the phi images of all tied monomials, and their number."""
    from sympy import Matrix

    rows = []
    columns: dict = {}
    for P in all_partitions(n):
        for w in all_perms(n):
            img = phi_monomial(P, w, d)
            row = {}
            for k, c in img.terms.items():
                if not c.is_constant():
                    raise AssertionError("phi images of monomials have rational coefficients")
                row[columns.setdefault(k, len(columns))] = c.constant_term()
            rows.append(row)
    M = Matrix(len(rows), len(columns), lambda i, j: rows[i].get(j, 0))
    return M.rank(), len(rows)


def cross_engine_check(word: BraidWord | FramedBraidWord | str, d: int) -> bool:
    """Tied trace at ``E = 1/d`` equals the specialized Y trace of the word and of its phi image."""
    x = braid_to_eelement(word)
    et = e_trace(x)
    if "E" in et.vars:
        et = et.evaluate({"E": Fraction(1, d)}).drop_unused()
    yt = specialized_trace(braid_to_element(as_framed(word).with_modulus(d)))
    pt = specialized_trace(phi_map(x, d))
    return et == yt == pt
