"""Regenerate src/framix/data/catalog.txt from the LinkInfo/KnotInfo tables.

Development-only: needs ``database_knotinfo`` (not a runtime dependency).
Imported fixtures are converted to this package's conventions:

* homflypt: ``(q - q^-1)^(c-1) P`` with ``P(q, s) = P_table(v=s, z=q-q^-1)``,
  a Laurent polynomial for a c-component link;
* jones: ``V(q) = V_table(x=q)`` for links, ``V_table(t=q^2)`` for knots.

Every imported record is kept only if the engine's HOMFLYPT polynomial of its
braid word equals the converted table value, which certifies that the word
realizes the named orientation.
"""

from __future__ import annotations

import argparse
import re
import sys
from importlib.metadata import version
from pathlib import Path

import database_knotinfo as dk
import sympy as sp

from framix.braids import BraidWord, closure_components
from framix.exactring import Poly, RationalFunction, parse_poly
from framix.invariants import InvariantSpec, invariant

q, s, v, z, x, t = sp.symbols("q s v z x t")

PAPER_LINKS = [
    "L11n358{0,1}", "L11n418{0,0}", "L11a467{0,1}", "L11a527{0,0}",
    "L11n325{1,1}", "L11n424{0,0}", "L10n79{1,1}", "L10n95{1,0}",
    "L11a404{1,1}", "L11a428{0,1}", "L10n76{1,1}", "L11n425{1,0}",
]

# pairs with equal HOMFLYPT and equal Theta(q, lambda, E)
EQUIVALENT_PAIRS = [("L9n14{0}", "L10n42{1}"), ("L10a136{1,0}", "L10a156{1,0}"),
                    ("L10n35{0}", "L10n58{0}")]

# orientations whose table braid word repeats an earlier entry are left out
SMALL_LINKS = ["L2a1{1}", "L2a1{0}", "L4a1{0}", "L4a1{1}", "L5a1{0}", "L6a4{0,0}", "L6n1{0,0}",
               "L6a5{0,0}", "L7n1{0}"]

KNOTS = {"trefoil": "3_1", "figure8": "4_1", "cinquefoil": "5_1", "knot5_2": "5_2"}

HAND = [
    ("unknot", 1, "", "", "homflypt=1;jones=1"),
    ("unlink2", 2, "", "", ""),
    ("chain3", 3, "1 1 2 2", "", ""),
    ("trefoil_unknot", 3, "1 1 1", "", ""),
    ("hopf_framed", 2, "1 1", "1,0", ""),
]


def _word(text: str) -> BraidWord:
    """LinkInfo notation ``{n, {letters}}``."""
    xs = [int(a) for a in re.findall(r"-?\d+", text)]
    return BraidWord(xs[0], tuple(xs[1:]))


def _laurent(expr) -> Poly:
    """A sympy Laurent polynomial in s, q as a Poly."""
    num, den = sp.fraction(sp.cancel(sp.together(expr)))
    pn, pd = sp.Poly(num, s, q), sp.Poly(den, s, q)
    if len(pd.terms()) != 1:
        raise ValueError(f"not a Laurent polynomial: {expr}")
    (ds, dq), dc = pd.terms()[0]
    out = Poly()
    for (es, eq), c in pn.terms():
        c = sp.Rational(c) / sp.Rational(dc)
        out = out + Poly.monomial({"s": es - ds, "q": eq - dq}, int(c.p) if c.q == 1 else c)
    return out


def _sym(text: str):
    return sp.sympify(text.replace("^", "**"), locals={"v": v, "z": z, "x": x, "t": t})


def fixtures(homfly: str, jones: str, c: int, jones_var) -> tuple[Poly, Poly]:
    qd = q - 1 / q
    h = _laurent(_sym(homfly).subs({v: s, z: qd}) * qd ** (c - 1))
    j = _laurent(_sym(jones).subs(jones_var))
    return h, j


def _check(word: BraidWord, h: Poly) -> bool:
    c = closure_components(word)[0]
    P = invariant(InvariantSpec("homflypt"), word)
    return P * RationalFunction(Poly.var("q") - Poly.var("q", -1)) ** (c - 1) == RationalFunction(h)


def _line(name, n, letters, framings, fx) -> str:
    fields = [name, str(n), letters, framings, fx]
    while len(fields) > 3 and not fields[-1]:
        fields.pop()
    return "|".join(fields)


def build() -> str:
    links = {r["name"]: r for r in dk.link_list(proper_links=True)[1:]}
    knots = {r["name"]: r for r in dk.link_list()[1:]}
    out = [
        "# framix link catalog",
        "# format: name|strands|signed letters|framings|key=polynomial;...",
        f"# imported records: LinkInfo/KnotInfo via database_knotinfo {version('database_knotinfo')}",
        "# braid words realize the named orientation (validated by HOMFLYPT match)",
        "# homflypt = (q - q^-1)^(c-1) P(q, s) with lambda = s^2; jones = V(q), t = q^2",
        "",
        "# hand-written small links",
    ]
    for name, n, letters, framings, fx in HAND:
        out.append(_line(name, n, letters, framings, fx))

    def emit_link(name: str, label: str | None = None) -> None:
        r = links[name]
        w = _word(r["braid_notation"])
        c = int(r["components"])
        h, j = fixtures(r["homflypt_polynomial"], r["jones_polynomial"], c, {x: q})
        if not _check(w, h):
            raise SystemExit(f"{name}: braid word does not reproduce the table HOMFLYPT")
        letters = " ".join(str(a) for a in w.letters)
        out.append(_line(label or name, w.n, letters, "", f"homflypt={h};jones={j}"))

    out += ["", "# knots (KnotInfo)"]
    for label, name in KNOTS.items():
        r = knots[name]
        letters = tuple(int(a) for a in re.findall(r"-?\d+", r["braid_notation"]))
        w = BraidWord(max(abs(a) for a in letters) + 1, letters)
        h, j = fixtures(r["homfly_polynomial"], r["jones_polynomial"], 1, {t: q ** 2})
        if not _check(w, h):
            raise SystemExit(f"{name}: braid word does not reproduce the table HOMFLYPT")
        out.append(_line(label, w.n, " ".join(str(a) for a in w.letters), "", f"homflypt={h};jones={j}"))

    out += ["", "# small links (LinkInfo)"]
    out.append(_line("hopf", 2, "1 1", "", ""))
    for name in SMALL_LINKS:
        emit_link(name)
    out += ["", "# the six pairs compared for Theta_d and theta_d"]
    for name in PAPER_LINKS:
        emit_link(name)
    out += ["", "# pairs with equal HOMFLYPT that Theta does not separate"]
    for pair in EQUIVALENT_PAIRS:
        for name in pair:
            emit_link(name)
    # self-check: every fixture round-trips through the parser
    for line in out:
        if "homflypt=" in line:
            for kv in line.rsplit("|", 1)[1].split(";"):
                key, val = kv.split("=", 1)
                assert str(parse_poly(val)) == val, (line, key)
    return "\n".join(out) + "\n"


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    default = Path(__file__).resolve().parents[1] / "src" / "framix" / "data" / "catalog.txt"
    ap.add_argument("--output", type=Path, default=default)
    args = ap.parse_args(argv)
    args.output.write_text(build(), encoding="utf-8")
    print(f"wrote {args.output}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
