"""Command-line front end: ``framix invariant|esystem|verify|compare|catalog``."""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from .braids import (BraidParseError, BraidWord, CatalogError, FramedBraidWord, as_framed,
                     catalog_index, closure_components, load_catalog, markov_move,
                     mixed_crossings, parse_braid, random_braid, random_knot_braid,
                     random_link_braid, split_union)
from .esystem import InvalidSubsetError, all_solutions, fourier_search, verify_esystem
from .exactring import Poly, RationalFunction, parse_poly
from .invariants import (KINDS, InvariantSpec, compare_pair, hopf_difference, invariant,
                         knot_coincidence_check, disjoint_union_check, general_theta,
                         skein_check, skein_resolve_theta)
from .quotients import (DISCARDED_Z, JONES_Z, admissible_supports, ftl_annihilation_check,
                        ftl_basis, ftl_family, power_formula_check, ptl_checks,
                        tl_delta_check, tl_idempotent_check, tl_jones_z_check)
from .ties import cross_engine_check
from .yokonuma import braid_to_element, specialized_trace

SUITES = ("trace", "esystem", "tl", "ftl", "ptl", "skein", "knots", "oracle", "catalog")

q = Poly.var("q")
QD = q - Poly.var("q", -1)


class UsageError(Exception):
    pass


@dataclass
class Check:
    name: str
    ok: bool
    witness: str = ""

    def line(self) -> str:
        return f"CHECK {self.name} {'PASS' if self.ok else 'FAIL'} {self.witness}".rstrip()


# -- argument handling -----------------------------------------------------------


def _parse_D(text: str | None, d: int) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        values = [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"invalid D {text!r}: expected comma-separated integers") from None
    if not values:
        raise UsageError("D must be a non-empty subset of Z/dZ")
    if any(not 0 <= m < d for m in values):
        raise UsageError(f"invalid D {text!r}: entries must lie in 0..{d - 1}")
    return tuple(sorted(set(values)))


def _records(path):
    try:
        return load_catalog(path)
    except (OSError, CatalogError) as exc:
        raise UsageError(f"cannot load catalog: {exc}") from None


def _lookup(name: str, path):
    index = catalog_index(_records(path))
    if name not in index:
        raise UsageError(f"unknown link {name!r}")
    return index[name]


def _input_word(args) -> FramedBraidWord:
    if args.braid is not None:
        try:
            return parse_braid(args.braid)
        except BraidParseError as exc:
            raise UsageError(f"bad braid text: {exc}") from None
    return _lookup(args.link, args.catalog).framed(1)


def _render(value, output: str) -> str:
    return value.to_latex() if output == "latex" else str(value)


# -- subcommands -----------------------------------------------------------------


def cmd_invariant(args, out) -> int:
    word = _input_word(args)
    d = args.d
    D = _parse_D(args.D, d)
    try:
        spec = InvariantSpec(args.kind, d, D)
    except (ValueError, InvalidSubsetError) as exc:
        raise UsageError(str(exc)) from None
    if args.kind == "phi_dD":
        try:
            word = as_framed(word, d)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    elif any(word.framings):
        raise UsageError(f"kind {args.kind} takes classical braids; use phi_dD for framed input")
    out(_render(invariant(spec, word), args.output))
    return 0


def cmd_esystem(args, out) -> int:
    if args.d < 1:
        raise UsageError("d must be positive")
    ok = True
    for sol in all_solutions(args.d):
        ok &= verify_esystem(sol.vector)
        out(str(sol))
    return 0 if ok else 1


def cmd_catalog(args, out) -> int:
    for r in _records(args.catalog):
        fr = ",".join(map(str, r.framings)) if r.framings else "-"
        out(f"{r.name} n={r.n} components={r.components} word={' '.join(map(str, r.letters)) or '-'}"
            f" framings={fr}")
    return 0


def cmd_compare(args, out) -> int:
    a = _lookup(args.first, args.catalog)
    b = _lookup(args.second, args.catalog)
    for r in (a, b):
        if any(r.framings):
            raise UsageError(f"{r.name} is framed; comparisons take classical links")
    res = compare_pair(a, b, args.kind, args.d)
    if args.output == "latex":
        out(res.difference.to_latex())
    else:
        out(res.report())
    return 0


def cmd_verify(args, out) -> int:
    if args.d < 1 or args.n < 2 or args.count < 0:
        raise UsageError("need d >= 1, n >= 2 and count >= 0")
    suites = SUITES if args.suite == "all" else (args.suite,)
    ok = True
    for suite in suites:
        rng = random.Random(f"{args.seed}:{suite}")
        for check in SUITE_FUNCS[suite](args, rng):
            ok &= check.ok
            out(check.line())
    return 0 if ok else 1


# -- verification suites ---------------------------------------------------------


def _random_words(rng, args, maker=random_braid, length: int = 6) -> Iterator[BraidWord]:
    for _ in range(args.count):
        n = rng.randint(2, args.n)
        if maker is random_braid:
            yield maker(rng, n, rng.randint(1, length))
        else:  # these draw their own length up to the bound
            yield maker(rng, n, max(length, n - 1))


def _tagged(name: str, fn: Callable[[], bool], witness: str = "") -> Check:
    try:
        return Check(name, bool(fn()), witness)
    except Exception as exc:  # a crash inside a check is reported as a failure
        return Check(name, False, f"{witness} error={type(exc).__name__}: {exc}".strip())


def suite_trace(args, rng) -> Iterator[Check]:
    hopf = BraidWord(2, (1, 1))
    expected = Poly.const(1) + QD * Poly.var("z")
    for d in range(1, args.d + 1):
        yield _tagged(f"trace.hopf[d={d}]", lambda: specialized_trace(braid_to_element(hopf, d)) == expected,
                      f"tr(s1^2)={specialized_trace(braid_to_element(hopf, d))}")
    for d in range(2, args.d + 1):
        zdiff, _ = hopf_difference(d)
        yield Check(f"trace.hopf_differs[d={d}]", not zdiff.is_zero(), f"zdiff={zdiff}")
    for d in range(1, args.d + 1):
        spec = InvariantSpec("theta_d", d)
        for i, w in enumerate(_random_words(rng, args, length=5)):
            conj = markov_move(w, "conjugate", rng.choice((1, -1)) * rng.randint(1, w.n - 1))
            stab = markov_move(w, "stabilize", rng.choice((1, -1)))
            yield _tagged(f"trace.markov[d={d},{i}]",
                          lambda: invariant(spec, w) == invariant(spec, conj) == invariant(spec, stab),
                          f"word={' '.join(map(str, w.letters))} n={w.n}")


def suite_esystem(args, rng) -> Iterator[Check]:
    for d in range(1, args.d + 1):
        sols = all_solutions(d)
        yield _tagged(f"esystem.solutions[d={d}]", lambda: all(verify_esystem(s.vector) for s in sols),
                      f"count={len(sols)}")
        found = fourier_search(d)
        yield Check(f"esystem.complete[d={d}]",
                    sorted(map(str, found)) == sorted(str(s.vector) for s in sols), f"found={len(found)}")


def suite_tl(args, rng) -> Iterator[Check]:
    roots = tl_jones_z_check()
    yield Check("tl.jones_z", roots == {JONES_Z, DISCARDED_Z}, "z in {" + ", ".join(sorted(map(str, roots))) + "}")
    yield _tagged("tl.idempotent", tl_idempotent_check)
    yield _tagged("tl.delta", tl_delta_check)


def suite_ftl(args, rng) -> Iterator[Check]:
    for d in range(1, args.d + 1):
        z0 = RationalFunction(-Poly.var("q", -1), (q * q + 1) * d)
        yield _tagged(f"ftl.annihilation[d={d}]", lambda: ftl_annihilation_check(d, None, z0),
                      f"basis={len(ftl_basis(d))} z={z0}")
    for d in range(1, args.d + 1):
        for s1, s2 in admissible_supports(d):
            fam = ftl_family(d, s1, s2)
            yield _tagged(f"ftl.family[d={d},sup1={set(s1) or '{}'},sup2={set(s2) or '{}'}]",
                          fam.vanishes, f"z={fam.z}")
    for d in range(1, args.d + 1):
        for m in range(1, 5):
            yield _tagged(f"ftl.power[d={d},m={m}]", lambda: power_formula_check(d, None, m))


def suite_ptl(args, rng) -> Iterator[Check]:
    for d in range(1, args.d + 1):
        rep = ptl_checks(d)
        yield Check(f"ptl.relations[d={d}]", rep.ok,
                    f"phi={rep.phi_matches} annihilated={rep.annihilated} symbolic={rep.symbolic_annihilated}")


def suite_skein(args, rng) -> Iterator[Check]:
    for i, w in enumerate(_random_words(rng, args, length=5)):
        for p in range(len(w.letters)):
            yield _tagged(f"skein.homflypt[{i},{p}]", lambda: skein_check("homflypt", w, p),
                          f"word={' '.join(map(str, w.letters))} n={w.n}")
    for d in range(2, args.d + 1):
        for i, w in enumerate(_random_words(rng, args, random_link_braid, length=5)):
            for p in mixed_crossings(w):
                for kind in ("theta_mixed", "theta_small_mixed"):
                    yield _tagged(f"skein.{kind}[d={d},{i},{p}]", lambda: skein_check(kind, w, p, d),
                                  f"word={' '.join(map(str, w.letters))} n={w.n}")
        for i, w in enumerate(_random_words(rng, args, length=4)):
            if not w.letters:
                continue
            fb = FramedBraidWord(w, tuple(rng.randrange(d) for _ in range(w.n)), d)
            p = rng.randrange(len(w.letters))
            yield _tagged(f"skein.phi_framed[d={d},{i},{p}]", lambda: skein_check("phi_framed", fb, p, d),
                          f"word={' '.join(map(str, w.letters))} framings={fb.framings}")


def suite_knots(args, rng) -> Iterator[Check]:
    fixed = {"trefoil": BraidWord(2, (1, 1, 1)), "figure8": BraidWord(3, (1, -2, 1, -2))}
    for d in range(2, args.d + 1):
        for name, w in fixed.items():
            yield _tagged(f"knots.coincidence[d={d},{name}]", lambda: knot_coincidence_check(w, d))
        for i, w in enumerate(_random_words(rng, args, random_knot_braid, length=7)):
            yield _tagged(f"knots.coincidence[d={d},{i}]", lambda: knot_coincidence_check(w, d),
                          f"word={' '.join(map(str, w.letters))} n={w.n}")
        for k in (1, 2, 3):
            parts = [random_knot_braid(rng, rng.randint(1, 2), 3) for _ in range(k)]
            yield _tagged(f"knots.disjoint_union[d={d},k={k}]", lambda: disjoint_union_check(parts, d),
                          "parts=" + " | ".join(" ".join(map(str, p.letters)) or "-" for p in parts))


def suite_oracle(args, rng) -> Iterator[Check]:
    for d in range(1, args.d + 1):
        for i, w in enumerate(_random_words(rng, args, length=6)):
            yield _tagged(f"oracle.ties[d={d},{i}]", lambda: cross_engine_check(w, d),
                          f"word={' '.join(map(str, w.letters))} n={w.n}")
    for r in _records(args.catalog):
        if any(r.framings) or r.components > 3 or r.n > args.n:
            continue
        yield _tagged(f"oracle.resolution[{r.name}]",
                      lambda: skein_resolve_theta(r.braid, budget=args.budget).value == general_theta(r.braid))


def _catalog_record_ok(r) -> tuple[bool, str]:
    P = invariant(InvariantSpec("homflypt"), r.braid)
    V = invariant(InvariantSpec("jones"), r.braid)
    ok = invariant(InvariantSpec("theta_d", 1), r.braid) == P
    ok &= invariant(InvariantSpec("theta_small_d", 1), r.braid) == V
    if "homflypt" in r.fixtures:
        scale = RationalFunction(QD) ** (r.components - 1)
        ok &= P * scale == RationalFunction(parse_poly(r.fixtures["homflypt"]))
    if "jones" in r.fixtures:
        ok &= V == RationalFunction(parse_poly(r.fixtures["jones"]))
    return ok, f"fixtures={','.join(sorted(r.fixtures)) or '-'}"


def suite_catalog(args, rng) -> Iterator[Check]:
    for r in _records(args.catalog):
        if any(r.framings) or r.n > args.n:
            continue
        try:
            ok, witness = _catalog_record_ok(r)
        except Exception as exc:
            ok, witness = False, f"error={type(exc).__name__}: {exc}"
        yield Check(f"catalog.record[{r.name}]", ok, witness)


SUITE_FUNCS = {
    "trace": suite_trace, "esystem": suite_esystem, "tl": suite_tl, "ftl": suite_ftl,
    "ptl": suite_ptl, "skein": suite_skein, "knots": suite_knots, "oracle": suite_oracle,
    "catalog": suite_catalog,
}


# -- entry point -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="framix", description="Framed link invariants from Yokonuma-Hecke traces.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, d_default=1):
        p.add_argument("--d", type=int, default=d_default, help="framing modulus")
        p.add_argument("--catalog", default=None, help="catalog file (default: $FRAMIX_CATALOG or bundled)")
        p.add_argument("--output", choices=("text", "latex"), default="text")

    p = sub.add_parser("invariant", help="compute an invariant of a braid closure")
    common(p)
    p.add_argument("--kind", choices=KINDS, required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--braid", help='braid text, e.g. "B2 s1 s1 s1"')
    src.add_argument("--link", help="catalog link name")
    p.add_argument("--D", default=None, help='subset of Z/dZ, e.g. "0,1" (default: all of Z/dZ)')

    p = sub.add_parser("esystem", help="list the E-system solutions")
    common(p)

    p = sub.add_parser("verify", help="run verification suites")
    common(p, d_default=2)
    p.add_argument("--suite", choices=("all",) + SUITES, default="all")
    p.add_argument("--n", type=int, default=3, help="maximum strand count for random words")
    p.add_argument("--count", type=int, default=5, help="random words per check family")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=100000, help="resolution-tree node budget")

    p = sub.add_parser("compare", help="difference of Theta or theta for two catalog links")
    common(p, d_default=None)
    p.add_argument("--first", required=True)
    p.add_argument("--second", required=True)
    p.add_argument("--kind", choices=("Theta", "theta"), default="Theta")

    p = sub.add_parser("catalog", help="list catalog records")
    common(p)
    return parser


COMMANDS = {"invariant": cmd_invariant, "esystem": cmd_esystem, "verify": cmd_verify,
            "compare": cmd_compare, "catalog": cmd_catalog}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, lambda line: print(line, flush=True))
    except UsageError as exc:
        print(f"framix: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
