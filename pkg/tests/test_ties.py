from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from framix.braids import random_braid
from framix.exactring import Poly
from framix.ties import (EElement, SetPartition, all_partitions, b, b_inv, braid_to_eelement,
                         cross_engine_check, e_monomial, e_trace, e_unit, eps, phi_map, phi_rank,
                         switched_b)
from framix.yokonuma import QDIFF, generator, hecke_braid, ocneanu_trace, qpoly

z, E = Poly.var("z"), Poly.var("E")

labels = st.integers(1, 5).flatmap(lambda n: st.lists(st.integers(0, 3), min_size=n, max_size=n))


@settings(max_examples=60, deadline=None)
@given(labels, labels, labels)
def test_join_lattice(a, b_, c):
    n = min(len(a), len(b_), len(c))
    P, Q, R = (SetPartition.from_labels(x[:n]) for x in (a, b_, c))
    assert P | P == P
    assert P | Q == Q | P
    assert (P | Q) | R == P | (Q | R)
    assert P | SetPartition.discrete(n) == P


def test_partition_basics():
    assert [len(all_partitions(n)) for n in range(6)] == [1, 1, 2, 5, 15, 52]
    P = SetPartition.from_blocks(4, [(0, 2)])
    assert P.blocks() == [(0, 2), (1,), (3,)]
    assert str(P) == "13|2|4"
    assert P.act((1, 0, 2, 3)).blocks() == [(0,), (1, 2), (3,)]


def _gens(n):
    return [b(n, i) for i in range(1, n)], [eps(n, i) for i in range(1, n)]


@pytest.mark.parametrize("n", [3, 4])
def test_presentation_relations(n):
    B, P = _gens(n)
    one = e_unit(n)
    for i in range(n - 1):
        assert P[i] * P[i] == P[i]
        assert P[i] * B[i] == B[i] * P[i]
        assert B[i] * B[i] == one + (P[i] * B[i]).scale(QDIFF)
        assert B[i] * b_inv(n, i + 1) == one
        for j in range(n - 1):
            assert P[i] * P[j] == P[j] * P[i]
            if abs(i - j) > 1:
                assert B[i] * B[j] == B[j] * B[i]
                assert P[i] * B[j] == B[j] * P[i]
            if abs(i - j) == 1:
                assert B[i] * B[j] * B[i] == B[j] * B[i] * B[j]
                assert P[i] * B[j] * B[i] == B[j] * B[i] * P[j]
                assert P[i] * P[j] * B[i] == P[j] * B[i] * P[j] == B[i] * P[i] * P[j]


def test_trace_examples():
    assert e_trace(b(2, 1)) == z
    assert e_trace(eps(2, 1)) == E
    assert e_trace(eps(2, 1) * b(2, 1)) == z
    assert e_trace(braid_to_eelement("B2 s1 s1")) == 1 + QDIFF * z
    assert e_trace(e_unit(3)) == Poly.const(1)
    assert e_trace(eps(3, 1) * eps(3, 2)) == E * E


def test_trace_markov_rules():
    rng = random.Random(3)
    for _ in range(10):
        w = random_braid(rng, 3, rng.randint(0, 5))
        x = braid_to_eelement(w)
        x4 = EElement(4, {(SetPartition(P.labels + (max(P.labels, default=-1) + 1,)), p + (3,)): c
                          for (P, p), c in x.terms.items()})
        assert e_trace(x4 * b(4, 3)) == z * e_trace(x)
        assert e_trace(x4 * eps(4, 3)) == E * e_trace(x)
        assert e_trace(x4 * eps(4, 3) * b(4, 3)) == z * e_trace(x)
        y = braid_to_eelement(random_braid(rng, 3, 3))
        assert e_trace(x * y) == e_trace(y * x)


@pytest.mark.parametrize("d", [2, 3])
def test_phi_homomorphism(d):
    rng = random.Random(d)
    n = 3
    pool = [b(n, 1), b(n, 2), eps(n, 1), eps(n, 2), b_inv(n, 1)]
    for _ in range(15):
        x = rng.choice(pool) * rng.choice(pool)
        y = rng.choice(pool) * rng.choice(pool)
        assert phi_map(x * y, d) == phi_map(x, d) * phi_map(y, d)
    assert phi_map(eps(n, 1), d) == generator("e", d, n, 1)
    assert phi_map(b(n, 1) * b(n, 1), d) == generator("g", d, n, 1) * generator("g", d, n, 1)
    full = e_monomial(SetPartition((0, 0, 0)), (0, 1, 2))
    assert phi_map(full, d) == generator("e", d, n, 1) * generator("e", d, n, 2)


def test_phi_injective_when_d_at_least_n():
    assert phi_rank(2, 2) == (4, 4)
    assert phi_rank(3, 3) == (30, 30)


def test_cross_engine_oracle():
    rng = random.Random(11)
    for _ in range(25):
        n = rng.randint(2, 4)
        w = random_braid(rng, n, rng.randint(0, 8))
        assert cross_engine_check(w, rng.choice((1, 2, 3)))


def test_switched_b_quadratic():
    n = 2
    bt = switched_b(n, 1)
    e = eps(n, 1)
    u1 = qpoly({2: 1, 0: -1})
    assert bt * bt == e_unit(n) + e.scale(u1) + (e * bt).scale(u1)
    assert bt + (e * bt).scale(qpoly({-1: 1, 0: -1})) == b(n, 1)


def test_E_one_is_ocneanu():
    rng = random.Random(4)
    for _ in range(15):
        w = random_braid(rng, rng.randint(2, 4), rng.randint(0, 7))
        t = e_trace(braid_to_eelement(w))
        if "E" in t.vars:
            t = t.evaluate({"E": 1}).drop_unused()
        assert t == ocneanu_trace(hecke_braid(w))
