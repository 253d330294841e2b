"""Link invariants from the Markov traces, skein verifiers and a skein-resolution oracle.

Every invariant is computed in z-form first (a trace polynomial in z), then
``z = (q - q^-1) E / (1 - lambda)`` is substituted and the normalization
``((1 - lambda) / (sqrt(lambda) (q - q^-1) E))^(n-1) sqrt(lambda)^eps`` is
applied.  ``sqrt(lambda)`` is the variable ``s``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .braids import (BraidWord, FramedBraidWord, LinkRecord, as_framed, closure_components,
                     crossing_labels, mixed_crossings, split_union)
from .esystem import normalize_subset
from .exactring import (Cyclotomic, CyclotomicRationalFunction, Poly, RationalFunction,
                        substitute)
from .ties import braid_to_eelement, e_trace
from .yokonuma import (YElement, braid_to_element, generator, hecke_braid, monomial,
                       ocneanu_trace, specialize_trace, trace)

KINDS = ("homflypt", "jones", "theta_d", "theta_small_d", "phi_dD", "theta_general")

q = Poly.var("q")
s = Poly.var("s")
z = Poly.var("z")
E_VAR = Poly.var("E")
QD = q - Poly.var("q", -1)
LAM = s * s


class NotAKnotError(ValueError):
    pass


class NotMixedError(ValueError):
    pass


class ResolutionBudgetError(RuntimeError):
    pass


@dataclass(frozen=True)
class InvariantSpec:
    kind: str
    d: int = 1
    D: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown invariant kind {self.kind!r}; expected one of {KINDS}")
        if self.d < 1:
            raise ValueError("d must be positive")
        if self.kind in ("homflypt", "jones") and self.d != 1:
            object.__setattr__(self, "d", 1)
        object.__setattr__(self, "D", normalize_subset(self.d, self.D))

    @property
    def E(self) -> Fraction:
        return Fraction(1, len(self.D))


# -- z-form ----------------------------------------------------------------------


def _classical(b) -> FramedBraidWord:
    fb = as_framed(b)
    if any(fb.framings):
        raise ValueError("this invariant takes classical (unframed) braids")
    return fb


def homflypt_zform(b) -> Poly:
    """Ocneanu trace tau(pi(b)) as a polynomial in z."""
    return ocneanu_trace(hecke_braid(_classical(b)))


def theta_zform(b, d: int, D: Iterable[int] | None = None) -> Poly:
    """Specialized trace tr_{d,D} of a classical braid."""
    fb = _classical(b).with_modulus(d)
    return specialize_trace(trace(braid_to_element(fb)), d, D).drop_unused()


def framed_zform(b, d: int, D: Iterable[int] | None = None) -> Poly:
    fb = as_framed(b, d)
    return specialize_trace(trace(braid_to_element(fb)), d, D).drop_unused()


def general_zform(b) -> Poly:
    """Trace on the algebra of braids and ties, symbolic in z and E."""
    return e_trace(braid_to_eelement(_classical(b)))


def zform(spec: InvariantSpec, b) -> Poly:
    if spec.kind in ("homflypt", "jones"):
        return homflypt_zform(b)
    if spec.kind in ("theta_d", "theta_small_d"):
        return theta_zform(b, spec.d, spec.D)
    if spec.kind == "phi_dD":
        return framed_zform(b, spec.d, spec.D)
    return general_zform(b)


# -- normalization ---------------------------------------------------------------


def _is_rational_poly(p: Poly) -> bool:
    return all(not isinstance(c, Cyclotomic) for c in p.terms.values())


def normalize(T: Poly, n: int, eps: int, E) -> RationalFunction | CyclotomicRationalFunction:
    """Substitute ``z = (q-q^-1)E/(1-s^2)`` and apply the normalization factor."""
    E = E if isinstance(E, Poly) else Poly.const(Fraction(E))
    zval = RationalFunction(QD * E, 1 - LAM)
    factor = RationalFunction(1 - LAM, s * QD * E) ** (n - 1) * RationalFunction(s) ** eps

    def finish(p: Poly) -> RationalFunction:
        return substitute(p, {"z": zval}) * factor

    if _is_rational_poly(T):
        return finish(T)
    order = next(c.order for c in T.terms.values() if isinstance(c, Cyclotomic))
    split = CyclotomicRationalFunction.from_poly(T, order)
    return split.map(lambda r: substitute(r, {"z": zval}) * factor)


def _at_lambda_q4(r):
    if isinstance(r, CyclotomicRationalFunction):
        return r.map(_at_lambda_q4)
    return substitute(r, {"s": q * q})


def invariant(spec: InvariantSpec, b) -> RationalFunction | CyclotomicRationalFunction:
    """The invariant of the closure of ``b`` as a canonical rational function in q, s (and E)."""
    fb = as_framed(b) if spec.kind != "phi_dD" else as_framed(b, spec.d)
    T = zform(spec, fb)
    if spec.kind in ("homflypt", "jones"):
        E = 1
    elif spec.kind == "theta_general":
        E = E_VAR
    else:
        E = spec.E
    r = normalize(T, fb.n, fb.exponent_sum, E)
    if spec.kind in ("jones", "theta_small_d"):
        r = _at_lambda_q4(r)
    return r


def theta_small_direct(b, d: int, D: Iterable[int] | None = None):
    """``(-(1+q^2)/(q E))^(n-1) q^(2 eps) tr_{d,D}`` at ``z = -q^-1/((q^2+1)|D|)``."""
    D = normalize_subset(d, D)
    fb = as_framed(b, d)
    E = Fraction(1, len(D))
    T = framed_zform(fb, d, D)
    zval = RationalFunction(-Poly.var("q", -1) * E, q * q + 1)
    factor = RationalFunction(-(1 + q * q), q * E) ** (fb.n - 1) * RationalFunction(q) ** (2 * fb.exponent_sum)
    if _is_rational_poly(T):
        return substitute(T, {"z": zval}) * factor
    order = next(c.order for c in T.terms.values() if isinstance(c, Cyclotomic))
    return CyclotomicRationalFunction.from_poly(T, order).map(lambda r: substitute(r, {"z": zval}) * factor)


def lambda_of(z_value, E) -> RationalFunction:
    """``lambda = (z - (q - q^-1) E) / z``."""
    zr = RationalFunction.of(z_value)
    return (zr - RationalFunction(QD) * E) / zr


def mirror(r: RationalFunction) -> RationalFunction:
    """The substitution ``q -> q^-1``, ``lambda -> lambda^-1``."""
    return substitute(r, {"q": Poly.var("q", -1), "s": Poly.var("s", -1)})


# -- coincidence checks ----------------------------------------------------------


def _z_scaled(T: Poly, E: Fraction) -> Poly:
    """``T(z/E)``."""
    return T.evaluate({"z": z * (1 / E)}) if "z" in T.vars else T


def knot_coincidence_check(b, d: int, D: Iterable[int] | None = None) -> bool:
    """``tr_{d,D}(b) = E^(n-1) tau(b)(z/E)`` and ``Theta_d = P`` for a knot."""
    fb = _classical(b)
    if closure_components(fb)[0] != 1:
        raise NotAKnotError("closure has more than one component")
    D = normalize_subset(d, D)
    E = Fraction(1, len(D))
    tr = theta_zform(fb, d, D)
    tau = homflypt_zform(fb)
    zform_ok = tr == _z_scaled(tau, E) * E ** (fb.n - 1)
    theta = invariant(InvariantSpec("theta_d", d, D), fb)
    return zform_ok and theta == invariant(InvariantSpec("homflypt"), fb)


def hopf_difference(d: int) -> tuple[Poly, RationalFunction]:
    """z-form and normalized differences Theta_d(Hopf) - P(q, z/E)(Hopf)."""
    hopf = BraidWord(2, (1, 1))
    E = Fraction(1, d)
    tr = theta_zform(hopf, d)
    zdiff = tr - _z_scaled(homflypt_zform(hopf), E) * E
    full = invariant(InvariantSpec("theta_d", d), hopf) - invariant(InvariantSpec("homflypt"), hopf)
    return zdiff, full


def disjoint_union_check(parts: Sequence[BraidWord], d: int) -> bool:
    """Theta_d of a split union of k knots equals E^(1-k) P, and split multiplicativity."""
    for p in parts:
        if closure_components(p)[0] != 1:
            raise NotAKnotError("every part must close to a knot")
    k = len(parts)
    union = split_union(*parts)
    E = Fraction(1, d)
    tr = theta_zform(union, d)
    ok = tr == _z_scaled(homflypt_zform(union), E) * E ** (union.n - k)
    theta = invariant(InvariantSpec("theta_d", d), union)
    ok &= theta == invariant(InvariantSpec("homflypt"), union) * Fraction(d) ** (k - 1)
    if k >= 2:
        left, right = split_union(*parts[:-1]), parts[-1]
        spec = InvariantSpec("theta_d", d)
        glue = RationalFunction(1 - LAM, s * QD * E)
        ok &= theta == glue * invariant(spec, left) * invariant(spec, right)
    return ok


# -- skein relations -------------------------------------------------------------

SKEIN_KINDS = ("homflypt", "theta_mixed", "theta_small_mixed", "phi_framed")


def _variant(fb: FramedBraidWord, position: int, letter: int | None) -> FramedBraidWord:
    letters = list(fb.letters)
    if letter is None:
        del letters[position]
    else:
        letters[position] = letter
    return FramedBraidWord(BraidWord(fb.n, tuple(letters)), fb.framings, fb.d)


def skein_check(kind: str, b, position: int, d: int = 2, D: Iterable[int] | None = None) -> bool:
    """Check the skein identity of ``kind`` at letter ``position`` (0-based)."""
    if kind not in SKEIN_KINDS:
        raise ValueError(f"unknown skein kind {kind!r}")
    fb = as_framed(b, d if kind == "phi_framed" else None)
    if not 0 <= position < len(fb.letters):
        raise IndexError("position outside the word")
    k = abs(fb.letters[position])
    plus, minus, zero = _variant(fb, position, k), _variant(fb, position, -k), _variant(fb, position, None)
    qd = RationalFunction(QD)
    if kind == "homflypt":
        spec = InvariantSpec("homflypt")
        P = lambda w: invariant(spec, w)
        return P(plus) * RationalFunction(1, s) - P(minus) * s == qd * P(zero)
    if kind in ("theta_mixed", "theta_small_mixed"):
        if position not in mixed_crossings(fb):
            raise NotMixedError(f"letter {position} is not a crossing between different components")
        if kind == "theta_mixed":
            spec = InvariantSpec("theta_d", d, D)
            a, c = RationalFunction(1, s), RationalFunction(s)
        else:
            spec = InvariantSpec("theta_small_d", d, D)
            a, c = RationalFunction(1, q * q), RationalFunction(q * q)
        I = lambda w: invariant(spec, w)
        return I(plus) * a - I(minus) * c == qd * I(zero)
    # framed relation: L_s inserts t_k^s t_{k+1}^-s in place of the crossing
    spec = InvariantSpec("phi_dD", d, D)
    Dn = normalize_subset(d, D)
    E = Fraction(1, len(Dn))
    before, after = fb.letters[:position], fb.letters[position + 1:]
    head = braid_to_element(FramedBraidWord(BraidWord(fb.n, before), fb.framings, d))
    tail = braid_to_element(FramedBraidWord(BraidWord(fb.n, after), (), d))
    total = None
    for sh in range(d):
        mid = generator("t", d, fb.n, k, sh) * generator("t", d, fb.n, k + 1, -sh)
        T = specialize_trace(trace(head * mid * tail), d, Dn).drop_unused()
        val = normalize(T, fb.n, fb.exponent_sum - (1 if fb.letters[position] > 0 else -1), E)
        total = val if total is None else total + val
    rhs = total * (qd * Fraction(1, d))
    lhs = invariant(spec, plus) * RationalFunction(1, s) - invariant(spec, minus) * s
    return lhs == rhs


# -- skein-resolution oracle for Theta -----------------------------------------------


@dataclass
class Resolution:
    value: RationalFunction
    nodes: int
    leaves: dict[tuple[int, ...], Poly] = field(default_factory=dict)


def _violations(word: BraidWord) -> list[int]:
    """Mixed crossings where the higher-numbered component passes over."""
    out = []
    for p, (left, right) in enumerate(crossing_labels(word)):
        if left == right:
            continue
        over, under = (left, right) if word.letters[p] > 0 else (right, left)
        if over > under:
            out.append(p)
    return out


def skein_resolve_theta(b, d: int | None = None, budget: int = 100000) -> Resolution:
    """Theta by resolving mixed crossings with the special skein relation.

    Components are numbered by their lowest strand; every mixed crossing where
    a higher-numbered component passes over is switched, spawning a smoothed
    word.  Leaves are stacked, hence split unions of k knots, and contribute
    ``E^(1-k) P``.  ``d=None`` keeps E symbolic.
    """
    fb = _classical(b)
    weights: dict[tuple[int, ...], Poly] = {}
    stack: list[tuple[tuple[int, ...], Poly]] = [(fb.letters, Poly.const(1))]
    lam, lam_inv = s * s, Poly.var("s", -2)
    sq, sq_inv = s * QD, Poly.var("s", -1) * QD
    nodes = 0
    while stack:
        letters, weight = stack.pop()
        nodes += 1
        if nodes > budget:
            raise ResolutionBudgetError(f"resolution exceeded {budget} nodes")
        word = BraidWord(fb.n, letters)
        bad = _violations(word)
        if not bad:
            weights[letters] = weights.get(letters, Poly()) + weight
            continue
        p = bad[0]
        x = letters[p]
        switched = letters[:p] + (-x,) + letters[p + 1:]
        smoothed = letters[:p] + letters[p + 1:]
        if x > 0:  # T(L+) = lambda T(L-) + s (q - q^-1) T(L0)
            stack.append((switched, weight * lam))
            stack.append((smoothed, weight * sq))
        else:  # T(L-) = lambda^-1 T(L+) - s^-1 (q - q^-1) T(L0)
            stack.append((switched, weight * lam_inv))
            stack.append((smoothed, -weight * sq_inv))
    E = E_VAR if d is None else Poly.const(Fraction(1, d))
    spec = InvariantSpec("homflypt")
    total = RationalFunction(0)
    for letters, weight in weights.items():
        if weight.is_zero():
            continue
        word = BraidWord(fb.n, letters)
        k = closure_components(word)[0]
        total = total + RationalFunction(weight) * RationalFunction(E) ** (1 - k) * invariant(spec, word)
    return Resolution(total, nodes, weights)


# -- pair comparison -------------------------------------------------------------


@dataclass
class PairComparison:
    first: str
    second: str
    kind: str
    difference: RationalFunction
    target: RationalFunction | None = None
    matches: bool | None = None
    mirror_matches: bool | None = None
    negated_matches: bool | None = None

    def report(self) -> str:
        line = f"{self.kind}({self.first}) - {self.kind}({self.second}) = {self.difference}"
        if self.target is not None:
            line += (f"\n  target {'MATCH' if self.matches else 'differs'};"
                     f" mirror {'MATCH' if self.mirror_matches else 'differs'};"
                     f" negated {'MATCH' if self.negated_matches else 'differs'}")
        return line


def general_theta(b) -> RationalFunction:
    """Theta(q, lambda, E), with lambda = s^2."""
    return invariant(InvariantSpec("theta_general"), b)


def general_theta_small(b) -> RationalFunction:
    """theta(q, E) = Theta(q, q^4, E)."""
    return substitute(general_theta(b), {"s": q * q})


def compare_pair(a: LinkRecord | BraidWord, b: LinkRecord | BraidWord, kind: str = "Theta",
                 d: int | None = None, target: RationalFunction | None = None) -> PairComparison:
    """Difference of ``Theta`` (3-variable) or ``theta`` (2-variable) invariants.

    With ``d`` given, E is set to 1/d.
    """
    fn = {"Theta": general_theta, "theta": general_theta_small}[kind]
    wa = a.braid if isinstance(a, LinkRecord) else a
    wb = b.braid if isinstance(b, LinkRecord) else b
    diff = fn(wa) - fn(wb)
    if d is not None:
        diff = substitute(diff, {"E": Fraction(1, d)})
    out = PairComparison(getattr(a, "name", str(a)), getattr(b, "name", str(b)), kind, diff)
    if target is not None:
        out.target = target
        out.matches = diff == target
        out.mirror_matches = mirror(diff) == target
        out.negated_matches = -diff == target or -mirror(diff) == target
    return out


def lambda_ratio(d: int, D: Iterable[int] | None = None) -> RationalFunction:
    """``tr(g_1^-1) / tr(g_1)`` in Y_{d,2} after specialization."""
    D = normalize_subset(d, D)
    num = specialize_trace(trace(generator("g_inv", d, 2, 1)), d, D).drop_unused()
    den = specialize_trace(trace(generator("g", d, 2, 1)), d, D).drop_unused()
    return RationalFunction(num) / RationalFunction(den)
