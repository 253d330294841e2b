"""Trace-level checks for the Temperley-Lieb, FTL and PTL quotients.

Quotients are never built.  A trace passes to a quotient by a principal ideal
``<r>`` exactly when ``tr(m r) = 0`` for every basis monomial ``m``, so each
statement here is an annihilation check in the parent algebra.  The FTL
conditions are stated in the presentation with ``u = q^2`` and generators
``g~_i = g_i + (q - 1) e_i g_i``; there ``tr(g~_i) = q z``, so a u-side value
``z_u`` is the q-side value ``z_u / q``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .esystem import esystem_solution, normalize_subset
from .exactring import (Cyclotomic, CyclotomicRationalFunction, Poly, RationalFunction,
                        substitute)
from .exactring.ratfunc import _from_sympy, _to_sympy
from .ties import (EElement, all_partitions, b, e_monomial, e_trace, e_unit, eps,
                   phi_map)
from .yokonuma import (HeckeElement, YElement, YMonomial, all_perms, generator, hecke_basis,
                       hecke_generator, hecke_unit, ocneanu_trace, qpoly, switched_generator,
                       specialize_trace, trace, unit)

q = Poly.var("q")
QINV = Poly.var("q", -1)
U = q * q

# z values on the q side
JONES_Z = RationalFunction(-QINV, q * q + 1)
DISCARDED_Z = RationalFunction(-QINV)


class OverlappingSupportError(ValueError):
    pass


def _steinberg(one, g1, g2):
    """``1 + q(g1 + g2) + q^2(g1 g2 + g2 g1) + q^3 g1 g2 g1``."""
    return (one + (g1 + g2).scale(q) + (g1 * g2 + g2 * g1).scale(q ** 2)
            + (g1 * g2 * g1).scale(q ** 3))


# -- Temperley-Lieb --------------------------------------------------------------


def steinberg_element() -> HeckeElement:
    """``h_{1,2}`` in H_3(q)."""
    return _steinberg(hecke_unit(3), hecke_generator(3, 1), hecke_generator(3, 2))


def tl_trace_polys() -> list[Poly]:
    """``tau(h_w h_{1,2})`` for the six basis elements of H_3, as polynomials in z."""
    h = steinberg_element()
    return [ocneanu_trace(hecke_basis(3, w) * h) for w in all_perms(3)]


def _zq_ring_element(p: Poly):
    """Clear negative q powers and move into Q[z, q]."""
    p = p.extend(("z", "q"))
    low = min(e[1] for e in p.terms)
    shifted = Poly(("z", "q"), {(a, c - low): v for (a, c), v in p.terms.items()})
    return _to_sympy(shifted, ("z", "q"))


def tl_gcd() -> Poly:
    """Primitive gcd of the six trace polynomials in Q[z, q] (q powers cleared)."""
    names = ("z", "q")
    polys = [_zq_ring_element(p) for p in tl_trace_polys() if not p.is_zero()]
    g = polys[0]
    for p in polys[1:]:
        g = g.gcd(p)
    return _from_sympy(g, names)


def tl_gcd_monic() -> dict[int, RationalFunction]:
    """The gcd over Q(q)[z], made monic: coefficient of z^k for each k."""
    g = tl_gcd()
    coeffs: dict[int, dict] = {}
    for (a, c), v in g.terms.items():
        coeffs.setdefault(a, {})[(c,)] = v
    top = max(coeffs)
    lead = RationalFunction(Poly(("q",), coeffs[top]))
    return {k: RationalFunction(Poly(("q",), t)) / lead for k, t in sorted(coeffs.items())}


def tl_jones_z_check() -> set[RationalFunction]:
    """Common roots in z of the six traces ``tau(m h_{1,2})``."""
    g = tl_gcd()
    roots = set()
    for factor, _ in _to_sympy(g, ("z", "q")).factor_list()[1]:
        f = _from_sympy(factor, ("z", "q"))
        zdeg = max(e[0] for e in f.terms)
        if zdeg == 0:
            continue  # content in q only
        if zdeg != 1:
            raise ArithmeticError(f"non-linear factor {f} in the common trace gcd")
        a = Poly(("q",), {(e[1],): c for e, c in f.terms.items() if e[0] == 1})
        c0 = Poly(("q",), {(e[1],): c for e, c in f.terms.items() if e[0] == 0})
        roots.add(RationalFunction(-c0, a))
    return roots


def f_element(i: int) -> HeckeElement:
    """``(q^2 + 1) f_i = q h_i + 1`` in H_3 (scaled to stay over Laurent q)."""
    return hecke_generator(3, i).scale(q) + hecke_unit(3)


def tl_idempotent_check() -> bool:
    """``f_i^2 = f_i``, i.e. ``F_i^2 = (q^2 + 1) F_i`` for ``F_i = (q^2+1) f_i``."""
    return all(f_element(i) * f_element(i) == f_element(i).scale(q * q + 1) for i in (1, 2))


def tl_delta_check(zval: RationalFunction = JONES_Z) -> bool:
    """``f_i f_j f_i - delta f_i`` is killed by the trace against every basis element of H_3.

    With ``F = (q^2+1) f`` and ``delta^-1 = 2 + q^2 + q^-2`` the element is
    ``(F_i F_j F_i - q^2 F_i) / (q^2+1)^3``.
    """
    for i, j in ((1, 2), (2, 1)):
        Fi, Fj = f_element(i), f_element(j)
        G = Fi * Fj * Fi - Fi.scale(q * q)
        for w in all_perms(3):
            t = ocneanu_trace(hecke_basis(3, w) * G)
            if not substitute(t, {"z": zval}).is_zero():
                return False
    return True


# -- evaluation of trace polynomials at parameter values -------------------------
#
# Parameter values share one denominator: value_v = num_v / den.  A trace
# polynomial of total degree <= top in (z, x_k) then vanishes exactly when
# sum c * prod num_v^e * den^(top - deg) does, and that sum is a Laurent
# polynomial in q with cyclotomic coefficients.


@dataclass(frozen=True)
class Parameters:
    """Trace parameters ``x_k = num[xk] / den`` and ``z = num[z] / den``."""

    d: int
    num: dict
    den: Poly

    def bind_x(self, x: Sequence) -> Parameters:
        nums = dict(self.num)
        for k, v in zip(range(1, self.d), x):
            nums[f"x{k}"] = self.den * v
        return Parameters(self.d, nums, self.den)


def _qpoly(v) -> Poly:
    return v.extend(("q",)) if isinstance(v, Poly) else Poly.const(v).extend(("q",))


def cleared_value(p: Poly, params: Parameters) -> Poly:
    """``den^top * p(values)`` as a polynomial in q; zero iff p vanishes at the values."""
    names = [v for v in p.vars if v != "q"]
    iq = p.vars.index("q") if "q" in p.vars else None
    degs = {e: sum(e[p.vars.index(v)] for v in names) for e in p.terms}
    top = max(degs.values(), default=0)
    powers: dict = {}

    def pw(v: str, k: int) -> Poly:
        if (v, k) not in powers:
            base = params.den if v == "den" else _qpoly(params.num[v])
            powers[(v, k)] = Poly.const(1).extend(("q",)) if k == 0 else pw(v, k - 1) * base
        return powers[(v, k)]

    total = Poly()
    for e, c in p.terms.items():
        term = Poly.monomial({"q": e[iq] if iq is not None else 0}, c)
        for v in names:
            k = e[p.vars.index(v)]
            if k:
                term = term * pw(v, k)
        total = total + term * pw("den", top - degs[e])
    return total.map_coefficients(_simplify).drop_unused()


def _simplify(c):
    if isinstance(c, Cyclotomic) and c.is_rational():
        return c.to_rational()
    return c


def parameters(d: int, x: Sequence, z) -> Parameters:
    """Parameters from cyclotomic x-values and a rational-function z."""
    zr = RationalFunction.of(z)
    base = Parameters(d, {"z": zr.num}, _qpoly(zr.den))
    return base.bind_x(x)


# -- FTL -------------------------------------------------------------------------


def ftl_generator(d: int) -> YElement:
    """``r_{1,2} = e_1 e_2 g_{1,2}`` in Y_{d,3}(q)."""
    one = unit(d, 3)
    g = _steinberg(one, generator("g", d, 3, 1), generator("g", d, 3, 2))
    return generator("e", d, 3, 1) * generator("e", d, 3, 2) * g


def ftl_basis(d: int) -> list[YElement]:
    """The 6 d^3 monomials ``t^a g_w`` of Y_{d,3}(q)."""
    return [YElement(d, 3, {YMonomial(a, w): qpoly({0: 1})})
            for w in all_perms(3) for a in product(range(d), repeat=3)]


@lru_cache(maxsize=8)
def ftl_basis_traces(d: int) -> tuple[Poly, ...]:
    """``tr(m r_{1,2})`` for every basis monomial m, with generic parameters."""
    r = ftl_generator(d)
    return tuple(trace(m * r) for m in ftl_basis(d))


def ftl_basis_residuals(d: int, params: Parameters) -> list[Poly]:
    return [cleared_value(t, params) for t in ftl_basis_traces(d)]


def ftl_annihilation_check(d: int, D: Iterable[int] | None, z0) -> bool:
    """All ``tr_{d,D}(m r_{1,2})`` vanish at ``z = z0`` (a q-side value)."""
    sol = esystem_solution(d, normalize_subset(d, D))
    return all(r.is_zero() for r in ftl_basis_residuals(d, parameters(d, sol.x, z0)))


def _x(k: int, d: int) -> Poly:
    k %= d
    return Poly.const(1) if k == 0 else Poly.var(f"x{k}")


def e_shift_poly(d: int, m: int) -> Poly:
    """``E^(m) = (1/d) sum_s x_{m+s} x_{d-s}`` as a polynomial in the x_k."""
    return sum((_x(m + s, d) * _x(-s, d) for s in range(d)), Poly()) * Fraction(1, d)


@lru_cache(maxsize=8)
def ftl_system(d: int) -> tuple[Poly, ...]:
    """``(u+1) z^2 x_m + (u+2) z E^(m) + tr(e_1^(m) e_2)`` for m = 0..d-1, u = q^2, z u-sided."""
    z = Poly.var("z")
    out = []
    for m in range(d):
        tee = trace(generator("e_shift", d, 3, 1, m) * generator("e", d, 3, 2))
        out.append((U + 1) * z * z * _x(m, d) + (U + 2) * z * e_shift_poly(d, m) + tee)
    return tuple(out)


def ftl_system_residuals(d: int, params: Parameters) -> list[Poly]:
    return [cleared_value(p, params) for p in ftl_system(d)]


@dataclass
class FTLParameterFamily:
    d: int
    sup1: tuple[int, ...]
    sup2: tuple[int, ...]
    x: tuple[RationalFunction | CyclotomicRationalFunction, ...]  # x_1 .. x_{d-1}
    z_u: RationalFunction
    residuals: list = field(default_factory=list)
    basis_residuals: list = field(default_factory=list)

    @property
    def z(self) -> RationalFunction:
        """The q-side trace parameter."""
        return self.z_u / q

    def vanishes(self) -> bool:
        return all(r.is_zero() for r in self.residuals) and all(r.is_zero() for r in self.basis_residuals)


def ftl_family(d: int, sup1: Iterable[int], sup2: Iterable[int], basis: bool = True) -> FTLParameterFamily:
    """Trace parameters of the FTL condition for disjoint supports, with both residual forms.

    ``residuals`` come from the d-equation system (u-side z), ``basis_residuals``
    from the 6 d^3 monomial checks (q-side z); both are cleared numerators.
    """
    s1 = tuple(sorted({m % d for m in sup1}))
    s2 = tuple(sorted({m % d for m in sup2}))
    if set(s1) & set(s2):
        raise OverlappingSupportError("Sup1 and Sup2 must be disjoint")
    if not s1 and not s2:
        raise OverlappingSupportError("Sup1 and Sup2 cannot both be empty")
    N = Poly.const(len(s1)) + (U + 1) * len(s2)  # z_u = -1/N
    nums = {}
    xs = []
    for k in range(1, d):
        c1 = sum((Cyclotomic.zeta(d, m * k) for m in s1), Cyclotomic(d))
        c2 = sum((Cyclotomic.zeta(d, m * k) for m in s2), Cyclotomic(d))
        num = (Poly.const(_simplify(c1)) + (U + 1) * _simplify(c2)).map_coefficients(_simplify)
        nums[f"x{k}"] = num  # x_k = -z_u (c1 + (u+1) c2) = num / N
        xs.append(CyclotomicRationalFunction.from_poly(num, d).map(lambda r: r / RationalFunction(N)))
    z_u = RationalFunction(-1, N)
    fam = FTLParameterFamily(d, s1, s2, tuple(x.rational_part() if x.is_rational() else x for x in xs), z_u)
    fam.residuals = ftl_system_residuals(d, Parameters(d, {**nums, "z": Poly.const(-1)}, N))
    if basis:
        # z_q = z_u / q; scale every value by q to keep one denominator q N
        qn = {k: v * q for k, v in nums.items()}
        fam.basis_residuals = ftl_basis_residuals(d, Parameters(d, {**qn, "z": Poly.const(-1)}, N * q))
    return fam


def admissible_supports(d: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Every pair of disjoint subsets of Z/dZ, not both empty."""
    out = []
    for labels in product((0, 1, 2), repeat=d):
        s1 = tuple(m for m in range(d) if labels[m] == 1)
        s2 = tuple(m for m in range(d) if labels[m] == 2)
        if s1 or s2:
            out.append((s1, s2))
    return out


def power_formula(m: int, z_u, E, printed: bool = False) -> RationalFunction:
    """Closed form of ``tr(g~^m)`` in the u-presentation.

    Even m: ``c z + c E + 1`` with ``c = (u^m - 1)/(u + 1)``.  Odd m:
    ``c z + c E - E`` with ``c = (u^m + 1)/(u + 1)``, which holds for every z;
    ``printed=True`` uses ``u^m - 1`` for odd m too, which agrees only at ``z = -E``.
    """
    sign = -1 if m % 2 == 0 or printed else 1
    c = RationalFunction(U ** m + sign, U + 1)
    base = c * z_u + c * E
    return base + 1 if m % 2 == 0 else base - E


def switched_power_trace(d: int, D: Iterable[int] | None, m: int) -> RationalFunction:
    """``tr_{d,D}(g~_1^m)`` in terms of the u-side parameter, kept as the variable z."""
    D = normalize_subset(d, D)
    x = unit(d, 2)
    g = switched_generator(d, 2, 1)
    for _ in range(m):
        x = x * g
    t = specialize_trace(trace(x), d, D).drop_unused()
    return substitute(t, {"z": RationalFunction(Poly.var("z"), q)})


def power_formula_check(d: int, D: Iterable[int] | None, m: int) -> bool:
    """The closed form holds for generic z, and the printed one at ``z = -1/|D|``."""
    D = normalize_subset(d, D)
    E = Fraction(1, len(D))
    got = switched_power_trace(d, D, m)
    z = RationalFunction.var("z")
    generic = got == power_formula(m, z, E)
    at_discarded = substitute(got, {"z": -E}) == power_formula(m, RationalFunction(-E), E, printed=True)
    return generic and at_discarded


# -- PTL -------------------------------------------------------------------------


def ptl_generator(n: int = 3) -> EElement:
    """``eps_1 eps_2 b_{1,2}`` in the algebra of braids and ties."""
    one = e_unit(n)
    return eps(n, 1) * eps(n, 2) * _steinberg(one, b(n, 1), b(n, 2))


@dataclass
class PTLReport:
    d: int
    phi_matches: bool
    annihilated: bool
    symbolic_annihilated: bool

    @property
    def ok(self) -> bool:
        return self.phi_matches and self.annihilated and self.symbolic_annihilated


def ptl_checks(d: int) -> PTLReport:
    """phi(eps_1 eps_2 b_{1,2}) = e_1 e_2 g_{1,2}, and the tied trace kills the ideal.

    Annihilation is checked over all Bell(3) * 3! tied monomials, at ``E = 1/d``
    with ``z = -q^-1 E / (q^2 + 1)``, and once more with E symbolic.
    """
    r = ptl_generator(3)
    phi_ok = phi_map(r, d) == ftl_generator(d)
    E = Poly.var("E")
    sym_z = RationalFunction(-QINV * E, q * q + 1)
    num_z = substitute(sym_z, {"E": Fraction(1, d)})
    ann = sym = True
    for P in all_partitions(3):
        for w in all_perms(3):
            t = e_trace(e_monomial(P, w) * r)
            sym &= substitute(t, {"z": sym_z}).is_zero()
            ann &= substitute(t, {"z": num_z, "E": Fraction(1, d)}).is_zero()
    return PTLReport(d, phi_ok, ann, sym)
