from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from framix.braids import (BraidParseError, BraidWord, CatalogError, FramedBraidWord, MarkovError,
                           closure_components, crossing_labels, emit, free_reduce, load_catalog,
                           markov_move, mixed_crossings, parse_braid, parse_catalog,
                           random_knot_braid, random_link_braid, split_union)


def test_parse_simple():
    fb = parse_braid("B2 s1 s1 s1")
    assert fb.n == 2 and fb.letters == (1, 1, 1) and fb.framings == (0, 0) and fb.d == 1


def test_parse_powers_and_inference():
    fb = parse_braid("s1^2 s2^-1")
    assert fb.n == 3 and fb.letters == (1, 1, -2)


def test_parse_framings_collect_to_top():
    # t_2 after s1 sits on the strand that started in position 1
    fb = parse_braid("B2 d=3 s1 t2")
    assert fb.framings == (1, 0)
    fb = parse_braid("B2 d=3 t1^4 s1")
    assert fb.framings == (1, 0)


@pytest.mark.parametrize("text", ["B2 x1", "B2 s0", "B2 s3", "B2 s1^0", "B2 t1", "B1 d=2 t2", "B2 d=0 s1"])
def test_parse_errors(text):
    with pytest.raises(BraidParseError):
        parse_braid(text)


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 5), st.lists(st.integers(-4, 4).filter(bool), max_size=10),
       st.integers(1, 4), st.data())
def test_emit_roundtrip(n, letters, d, data):
    letters = [x for x in letters if abs(x) < n]
    framings = tuple(data.draw(st.integers(0, d - 1)) for _ in range(n))
    fb = FramedBraidWord(BraidWord(n, tuple(letters)), framings, d)
    assert parse_braid(emit(fb)) == fb


def test_components():
    assert closure_components(BraidWord(2, (1, 1)))[0] == 2
    assert closure_components(BraidWord(2, (1, 1, 1)))[0] == 1
    assert closure_components(BraidWord(3, ()))[0] == 3
    count, labels = closure_components(BraidWord(3, (1, 1, 2)))
    assert count == 2 and labels == (0, 1, 1)
    assert closure_components(BraidWord(3, (1, 2)))[1] == (0, 0, 0)


def test_mixed_crossings():
    b = BraidWord(3, (1, 1, 2))
    assert mixed_crossings(b) == [0, 1]
    b = BraidWord(3, (1, 1, 2, 2))
    assert mixed_crossings(b) == [0, 1, 2, 3]
    b = BraidWord(3, (1, 2, 1, 1))  # knot: no mixed crossings
    assert mixed_crossings(b) == []
    b = BraidWord(3, (1, 1, 1, 2, 2))  # strands 0,1 form one component
    labels = crossing_labels(b)
    assert [i for i, (l, r) in enumerate(labels) if l != r] == mixed_crossings(b) == [3, 4]


def test_markov_moves():
    b = BraidWord(3, (1, -2, 1))
    c = markov_move(b, "conjugate", 2)
    assert c.letters == (2, 1, -2, 1, -2)
    st_ = markov_move(b, "stabilize", -1)
    assert st_.n == 4 and st_.letters[-1] == -3
    assert markov_move(st_, "destabilize") == b
    with pytest.raises(MarkovError):
        markov_move(b, "conjugate", 3)
    with pytest.raises(MarkovError):
        markov_move(BraidWord(3, (2, 2)), "destabilize")


def test_markov_framed_push():
    fb = FramedBraidWord(BraidWord(2, (1,)), (1, 0), 3)
    c = markov_move(fb, "conjugate", 1)
    assert c.framings == (0, 1)
    s = markov_move(FramedBraidWord(BraidWord(2, (1,)), (1, 2), 3), "stabilize", 1)
    assert s.framings == (1, 2, 0)
    assert markov_move(s, "destabilize").framings == (1, 2)


def test_free_reduce_and_split():
    assert free_reduce(BraidWord(3, (1, 2, -2, -1, 2))).letters == (2,)
    u = split_union(BraidWord(2, (1, 1, 1)), BraidWord(1, ()), BraidWord(2, (-1,)))
    assert u.n == 5 and u.letters == (1, 1, 1, -4)
    assert closure_components(u)[0] == 3


def test_random_generators():
    rng = random.Random(1)
    for _ in range(30):
        n = rng.randint(2, 4)
        k = random_knot_braid(rng, n, 7)
        assert closure_components(k)[0] == 1 and len(k.letters) <= 7
        link = random_link_braid(rng, n, 6)
        assert closure_components(link)[0] >= 2 and mixed_crossings(link) and len(link.letters) <= 6
    with pytest.raises(ValueError):
        random_link_braid(rng, 2, 1)


def test_catalog_parsing():
    recs = parse_catalog("# c\nx|2|1 1|1,0|homflypt=1\ny|1|\n")
    assert [r.name for r in recs] == ["x", "y"]
    assert recs[0].framings == (1, 0) and recs[0].fixtures == {"homflypt": "1"}
    assert recs[0].components == 2
    for bad in ("x|2", "x|a|1", "x|2|1|1", "x|2|5", "x|2|1 1||nofix", "x|2|1\nx|2|1"):
        with pytest.raises(CatalogError):
            parse_catalog(bad)


def test_catalog_env(tmp_path, monkeypatch):
    path = tmp_path / "c.txt"
    path.write_text("only|2|1 1 1\n")
    monkeypatch.setenv("FRAMIX_CATALOG", str(path))
    assert [r.name for r in load_catalog()] == ["only"]


def test_bundled_catalog():
    recs = load_catalog()
    names = {r.name for r in recs}
    for name in ("trefoil", "figure8", "hopf", "L11n358{0,1}", "L10n76{1,1}", "L11n425{1,0}"):
        assert name in names
    paper = [r for r in recs if r.name.startswith(("L10n7", "L10n9", "L11"))]
    assert len(paper) == 12 and all(r.components == 3 for r in paper)
