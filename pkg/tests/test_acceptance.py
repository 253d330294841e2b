"""One pass/fail line per acceptance criterion; every comparison is exact equality."""

from __future__ import annotations

import random
import time
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE_LINES
from framix.braids import (BraidWord, FramedBraidWord, catalog_index, load_catalog, markov_move,
                           mixed_crossings, random_braid, random_knot_braid, random_link_braid)
from framix.esystem import (all_solutions, character, convolve, delta, fourier, fourier_search,
                            pointwise, verify_esystem, GroupAlgebraElement)
from framix.exactring import Cyclotomic, Poly, RationalFunction, substitute
from framix.invariants import (InvariantSpec, compare_pair, disjoint_union_check, general_theta,
                               hopf_difference, homflypt_zform, invariant, knot_coincidence_check,
                               skein_check, skein_resolve_theta, theta_zform)
from framix.quotients import (admissible_supports, ftl_annihilation_check, ftl_basis, ftl_family,
                              tl_jones_z_check)
from framix.ties import cross_engine_check
from framix.yokonuma import braid_to_element, specialized_trace

q, s, z, E = Poly.var("q"), Poly.var("s"), Poly.var("z"), Poly.var("E")
QI = Poly.var("q", -1)
QD = q - QI
LAM = s * s
CATALOG = load_catalog()
INDEX = catalog_index(CATALOG)


def report(k: int, ok: bool, detail: str) -> None:
    line = f"CRITERION {k:2d} {'PASS' if ok else 'FAIL'} {detail}"
    ACCEPTANCE_LINES[k] = line
    print(line)


def test_criterion_01_hopf_trace():
    hopf = BraidWord(2, (1, 1))
    got = {d: specialized_trace(braid_to_element(hopf, d)) for d in (1, 2, 3)}
    ok = all(v == 1 + QD * z for v in got.values())
    report(1, ok, f"tr(s1^2) = {got[2]} for d = 1, 2, 3")
    assert ok


def test_criterion_02_knot_coincidence():
    t0 = time.time()
    rng = random.Random(2)
    words = [BraidWord(2, (1, 1, 1)), BraidWord(3, (1, -2, 1, -2))]
    while len(words) < 22:
        n = rng.randint(2, 4)
        words.append(random_knot_braid(rng, n, 8))
    ok = all(knot_coincidence_check(w, d) for w in words for d in (2, 3))
    elapsed = time.time() - t0
    ok &= elapsed < 120
    report(2, ok, f"{len(words)} knots x d in {{2,3}} in {elapsed:.1f}s")
    assert ok


def test_criterion_03_disjoint_unions():
    rng = random.Random(3)
    cases = 0
    ok = True
    for d in (2, 3):
        for k in (1, 2, 3):
            for _ in range(3):
                parts = [random_knot_braid(rng, rng.randint(1, 3), 5) for _ in range(k)]
                ok &= disjoint_union_check(parts, d)
                cases += 1
    report(3, ok, f"{cases} split unions of k <= 3 knots, d in {{2,3}}")
    assert ok


def test_criterion_04_hopf_inequality():
    hopf = BraidWord(2, (1, 1))
    ok = True
    for d in (2, 3, 4, 5):
        Ed = Fraction(1, d)
        zdiff, full = hopf_difference(d)
        tau = homflypt_zform(hopf)
        # tr_d(s1^2) = 1 - E + E tau(s1^2)(z/E)
        ok &= theta_zform(hopf, d) == 1 - Ed + tau.evaluate({"z": z * d}) * Ed
        ok &= zdiff == Poly.const(1 - Ed) and not full.is_zero()
    report(4, ok, "Theta_d(Hopf) != P(Hopf) for d = 2..5, z-form gap 1 - E_D")
    assert ok


def _random_group_element(rng, d):
    vals = []
    for _ in range(d):
        c = Cyclotomic.rational(d, Fraction(rng.randint(-3, 3), rng.randint(1, 2)))
        if rng.random() < 0.5:
            c = c + Cyclotomic.zeta(d, rng.randrange(d)) * rng.randint(-2, 2)
        vals.append(c)
    return GroupAlgebraElement(d, tuple(vals))


def test_criterion_05_esystem():
    ok = True
    for d in range(1, 7):
        sols = all_solutions(d)
        ok &= len(sols) == 2 ** d - 1 and all(verify_esystem(x.vector) for x in sols)
        ok &= sorted(map(str, fourier_search(d))) == sorted(str(x.vector) for x in sols)
    rng = random.Random(5)
    for d in range(1, 9):
        for a in range(d):
            ok &= fourier(delta(d, a)) == character(d, -a)
            ok &= fourier(character(d, a)) == delta(d, a).scale(d)
        for _ in range(200):
            x, y = _random_group_element(rng, d), _random_group_element(rng, d)
            hx, hy = fourier(x), fourier(y)
            ok &= fourier(convolve(x, y)) == pointwise(hx, hy)
            ok &= fourier(pointwise(x, y)) == convolve(hx, hy).scale(Fraction(1, d))
            ok &= fourier(hx) == x.reversed().scale(d)
    report(5, ok, "2^d - 1 solutions, complete for d <= 6; Fourier properties 200 trials per d <= 8")
    assert ok


def test_criterion_06_jones_values():
    got = tl_jones_z_check()
    want = {RationalFunction(-QI, q * q + 1), RationalFunction(-QI)}
    ok = got == want
    report(6, ok, "common zeros {" + ", ".join(sorted(map(str, got))) + "}")
    assert ok


def test_criterion_07_ftl():
    t0 = time.time()
    ok = True
    checks = families = 0
    for d in (1, 2, 3):
        z0 = RationalFunction(-QI, (q * q + 1) * d)
        ok &= ftl_annihilation_check(d, None, z0)
        checks += len(ftl_basis(d))
        for s1, s2 in admissible_supports(d):
            ok &= ftl_family(d, s1, s2).vanishes()
            families += 1
    elapsed = time.time() - t0
    ok &= elapsed < 300
    report(7, ok, f"{checks} basis checks, {families} (Sup1, Sup2) families in {elapsed:.1f}s")
    assert ok


def test_criterion_08_skein():
    rng = random.Random(8)
    ok = True
    homflypt = mixed = framed = 0
    for _ in range(50):
        n = rng.randint(2, 4)
        w = random_braid(rng, n, rng.randint(1, 6))
        for p in range(len(w.letters)):
            ok &= skein_check("homflypt", w, p)
            homflypt += 1
    for i in range(50):
        d = 2 + i % 2
        w = random_link_braid(rng, rng.randint(2, 4), 6)
        for p in mixed_crossings(w):
            ok &= skein_check("theta_mixed", w, p, d)
            ok &= skein_check("theta_small_mixed", w, p, d)
            mixed += 1
    for d in (2, 3):
        for _ in range(10):
            w = random_braid(rng, 3, rng.randint(1, 4))
            fb = FramedBraidWord(w, tuple(rng.randrange(d) for _ in range(3)), d)
            D = tuple(sorted(rng.sample(range(d), rng.randint(1, d))))
            for p in range(len(w.letters)):
                ok &= skein_check("phi_framed", fb, p, d, D)
                framed += 1
    report(8, ok, f"{homflypt} Homflypt, {mixed} mixed Theta/theta, {framed} framed Phi crossings")
    assert ok


def test_criterion_09_cross_engine():
    rng = random.Random(9)
    ok = True
    for _ in range(100):
        n = rng.randint(1, 4)
        w = random_braid(rng, n, rng.randint(0, 8))
        ok &= cross_engine_check(w, rng.choice((1, 2, 3)))
    report(9, ok, "100 random words, n <= 4, d in {1,2,3}")
    assert ok


def test_criterion_10_resolution_oracle():
    ok = True
    count = 0
    for r in CATALOG:
        if any(r.framings) or r.components > 3:
            continue
        ok &= skein_resolve_theta(r.braid).value == general_theta(r.braid)
        count += 1
    report(10, ok, f"{count} catalog links with <= 3 components, E symbolic")
    assert ok


# six pairs: (first, second, Theta difference, theta difference) as printed
_base = (E - 1) * (LAM - 1) * (q - 1) ** 2 * (q + 1) ** 2
_c = (q - 1) ** 5 * (q + 1) ** 5 * (q * q + 1) * (q * q + q + 1) * (q * q - q + 1)
PAIRS = [
    ("L11n358{0,1}", "L11n418{0,0}",
     RationalFunction(_base * (q * q - LAM) * (LAM * q * q - 1), E * LAM ** 4 * q ** 4),
     RationalFunction((1 - E) * _c, E * q ** 18)),
    ("L11a467{0,1}", "L11a527{0,0}",
     RationalFunction(_base * (q * q - LAM) * (LAM * q * q - 1), E * LAM ** 4 * q ** 4),
     RationalFunction((1 - E) * _c, E * q ** 18)),
    ("L11n325{1,1}", "L11n424{0,0}",
     RationalFunction(-_base * (q * q - LAM) * (LAM * q * q - 1), E * LAM ** 3 * q ** 4),
     RationalFunction((E - 1) * _c, E * q ** 14)),
    ("L10n79{1,1}", "L10n95{1,0}",
     RationalFunction(_base * (LAM + LAM * q ** 4 + LAM * q * q - q * q), E * LAM ** 4 * q ** 4),
     RationalFunction((E - 1) * (q * q - 1) ** 3 * (q ** 8 + 2 * q ** 6 + 2 * q ** 4 - 1), E * q ** 18)),
    ("L11a404{1,1}", "L11a428{0,1}",
     RationalFunction(_base * (LAM + 1) * (q ** 4 - LAM * q * q + 1), E * q ** 4),
     RationalFunction((1 - E) * (q - 1) ** 3 * (q + 1) ** 3 * (q * q + 1) * (q ** 4 + 1) * (q ** 6 - q ** 4 + 1),
                      E * q ** 4)),
    ("L10n76{1,1}", "L11n425{1,0}",
     RationalFunction(_base * (LAM + 1), E * LAM ** 3 * q * q),
     RationalFunction((E - 1) * (q - 1) ** 3 * (q + 1) ** 3 * (q * q + 1) * (q ** 4 + 1), E * q ** 10)),
]


def _pair_results():
    out = []
    for a, b, T, t in PAIRS:
        big = compare_pair(INDEX[a], INDEX[b], "Theta", target=T)
        small = compare_pair(INDEX[a], INDEX[b], "theta", target=t)
        out.append((a, b, T, t, big, small))
    return out


_RESULTS: list = []


def pair_results():
    if not _RESULTS:
        _RESULTS.extend(_pair_results())
    return _RESULTS


@pytest.mark.xfail(strict=True, reason="two printed theta differences are inconsistent with the printed "
                                       "Theta differences at lambda = q^4; see the decisions ledger")
def test_criterion_11_six_pairs_exact():
    hits = []
    for a, b, T, t, big, small in pair_results():
        hit_big = big.matches or big.mirror_matches or big.negated_matches
        hit_small = small.matches or small.mirror_matches or small.negated_matches
        hits.append((hit_big, hit_small))
    big_ok = sum(h for h, _ in hits)
    small_ok = sum(h for _, h in hits)
    ok = big_ok == 6 and small_ok == 6
    report(11, ok, f"Theta {big_ok}/6 and theta {small_ok}/6 equal the printed differences with the pair "
                   f"order reversed; printed theta for pairs 5, 6 contradicts printed Theta at lambda = q^4")
    assert ok


def test_criterion_11_documented_relations():
    """What does hold: every Theta difference is the printed one with the pair order reversed,
    theta is Theta at lambda = q^4, and the (E - 1) factor divides every difference."""
    for k, (a, b, T, t, big, small) in enumerate(pair_results(), 1):
        assert big.difference == -T
        assert small.difference == substitute(big.difference, {"s": q * q})
        assert small.difference == -substitute(T, {"s": q * q})
        if k <= 4:
            assert small.difference == -t
        else:
            assert small.difference != -t
        assert substitute(big.difference, {"E": 1}).is_zero()
        assert not big.difference.is_zero()


def test_criterion_12_markov_and_d1_collapse():
    ok = True
    count = 0
    for r in CATALOG:
        if any(r.framings):
            continue
        w = r.braid
        P = invariant(InvariantSpec("homflypt"), w)
        V = invariant(InvariantSpec("jones"), w)
        ok &= invariant(InvariantSpec("theta_d", 1), w) == P
        ok &= invariant(InvariantSpec("theta_small_d", 1), w) == V
        for spec in (InvariantSpec("homflypt"), InvariantSpec("theta_d", 2)):
            v = P if spec.kind == "homflypt" else invariant(spec, w)
            if w.n >= 2:
                ok &= invariant(spec, markov_move(w, "conjugate", 1)) == v
            ok &= invariant(spec, markov_move(w, "stabilize", -1)) == v
            ok &= invariant(spec, markov_move(w, "stabilize", 1)) == v
        count += 1
    report(12, ok, f"{count} catalog links: Theta_1 = P, theta_1 = V, Markov moves preserve P and Theta_2")
    assert ok
