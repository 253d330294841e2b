"""Braid words, framed braid words, closure analysis and the link catalog.

Permutation convention (used by every engine): a permutation is a tuple of
0-based images.  The word ``i1 i2 ... ik`` has permutation
``s_{i1} o s_{i2} o ... o s_{ik}``, so appending letter ``k`` swaps the
entries at positions ``k-1`` and ``k``.  With this choice ``g_w t_j =
t_{w(j)} g_w`` in the Yokonuma-Hecke engine.
"""

from __future__ import annotations

import os
import random
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence


class BraidParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class CatalogError(ValueError):
    def __init__(self, message: str, line: int, path: str | None = None):
        where = f"{path}:{line}" if path else f"line {line}"
        super().__init__(f"{where}: {message}")
        self.line = line


class MarkovError(ValueError):
    pass


# -- words ---------------------------------------------------------------------


@dataclass(frozen=True)
class BraidWord:
    n: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a braid needs at least one strand")
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        for x in self.letters:
            if x == 0 or abs(x) >= self.n:
                raise ValueError(f"letter {x} out of range for B{self.n}")

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def exponent_sum(self) -> int:
        return sum(1 if x > 0 else -1 for x in self.letters)

    def permutation(self) -> tuple[int, ...]:
        return word_permutation(self.n, self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        if other.n != self.n:
            raise ValueError("strand counts differ")
        return BraidWord(self.n, self.letters + other.letters)

    def inverse(self) -> BraidWord:
        return BraidWord(self.n, tuple(-x for x in reversed(self.letters)))

    def __str__(self) -> str:
        return emit(FramedBraidWord(self))


@dataclass(frozen=True)
class FramedBraidWord:
    """``t_1^{a_1} ... t_n^{a_n}`` followed by a classical braid word."""

    braid: BraidWord
    framings: tuple[int, ...] = ()
    d: int = 1

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("modulus must be positive")
        fr = tuple(self.framings) or (0,) * self.braid.n
        if len(fr) != self.braid.n:
            raise ValueError("framing vector length must equal the strand count")
        object.__setattr__(self, "framings", tuple(int(a) % self.d for a in fr))

    @property
    def n(self) -> int:
        return self.braid.n

    @property
    def letters(self) -> tuple[int, ...]:
        return self.braid.letters

    @property
    def exponent_sum(self) -> int:
        return self.braid.exponent_sum

    def with_modulus(self, d: int) -> FramedBraidWord:
        return FramedBraidWord(self.braid, self.framings, d)

    def __str__(self) -> str:
        return emit(self)


def word_permutation(n: int, letters: Iterable[int]) -> tuple[int, ...]:
    perm = list(range(n))
    for x in letters:
        k = abs(x)
        perm[k - 1], perm[k] = perm[k], perm[k - 1]
    return tuple(perm)


# -- parsing -------------------------------------------------------------------

_TOKEN = re.compile(r"\S+")
_SIGMA = re.compile(r"^s(\d+)(?:\^(-?\d+))?$")
_FRAME = re.compile(r"^t(\d+)(?:\^(-?\d+))?$")
_HEAD_N = re.compile(r"^B(\d+)$")
_HEAD_D = re.compile(r"^d=(\d+)$")


def parse_braid(text: str) -> FramedBraidWord:
    """Parse ``B<n> d=<d> t1^2 s1 s2^-1 ...``.

    Framing tokens may appear anywhere; they are pushed to the top of the
    braid with ``sigma_w t_j = t_{w(j)} sigma_w``.
    """
    n = None
    d = 1
    body: list[tuple[int, str, int, int]] = []  # (offset, kind, index, exponent)
    for m in _TOKEN.finditer(text):
        tok, pos = m.group(0), m.start()
        if (h := _HEAD_N.match(tok)) and not body:
            n = int(h.group(1))
            continue
        if (h := _HEAD_D.match(tok)) and not body:
            d = int(h.group(1))
            if d < 1:
                raise BraidParseError("modulus must be positive", pos)
            continue
        if s := _SIGMA.match(tok):
            k, e = int(s.group(1)), int(s.group(2) or 1)
            if k < 1:
                raise BraidParseError(f"generator index must be >= 1 in {tok!r}", pos)
            if e == 0:
                raise BraidParseError(f"zero exponent in {tok!r}", pos)
            body.append((pos, "s", k, e))
        elif f := _FRAME.match(tok):
            i, a = int(f.group(1)), int(f.group(2) or 1)
            if i < 1:
                raise BraidParseError(f"strand index must be >= 1 in {tok!r}", pos)
            body.append((pos, "t", i, a))
        else:
            raise BraidParseError(f"unknown token {tok!r}", pos)
    if n is None:
        n = max([k + 1 for _, kind, k, _ in body if kind == "s"]
                + [i for _, kind, i, _ in body if kind == "t"] + [1])
    letters: list[int] = []
    framings = [0] * n
    perm = list(range(n))
    for pos, kind, k, e in body:
        if kind == "s":
            if k >= n:
                raise BraidParseError(f"s{k} out of range for B{n}", pos)
            letters.extend([k if e > 0 else -k] * abs(e))
            for _ in range(abs(e) % 2):
                perm[k - 1], perm[k] = perm[k], perm[k - 1]
        else:
            if k > n:
                raise BraidParseError(f"t{k} out of range for B{n}", pos)
            if d == 1:
                raise BraidParseError("framing token needs a modulus d > 1", pos)
            framings[perm[k - 1]] += e
    return FramedBraidWord(BraidWord(n, tuple(letters)), tuple(framings), d)


def emit(b: FramedBraidWord | BraidWord) -> str:
    """Canonical text; ``parse_braid(emit(b)) == b``."""
    if isinstance(b, BraidWord):
        b = FramedBraidWord(b)
    parts = [f"B{b.n}"]
    if b.d != 1:
        parts.append(f"d={b.d}")
    parts += [f"t{i + 1}^{a}" for i, a in enumerate(b.framings) if a]
    parts += [f"s{x}" if x > 0 else f"s{-x}^-1" for x in b.letters]
    return " ".join(parts)


def as_framed(b: FramedBraidWord | BraidWord | str, d: int | None = None) -> FramedBraidWord:
    if isinstance(b, str):
        b = parse_braid(b)
    if isinstance(b, BraidWord):
        b = FramedBraidWord(b, (), d or 1)
    if d is not None and d != b.d:
        if any(b.framings):
            raise ValueError(f"framed word has modulus {b.d}, expected {d}")
        b = b.with_modulus(d)
    return b


# -- closure analysis ----------------------------------------------------------


def closure_components(b: BraidWord | FramedBraidWord) -> tuple[int, tuple[int, ...]]:
    """Number of components and a strand-to-component labeling.

    Components are numbered by their smallest strand.
    """
    perm = word_permutation(b.n, b.letters)
    label = [-1] * b.n
    count = 0
    for start in range(b.n):
        if label[start] >= 0:
            continue
        j = start
        while label[j] < 0:
            label[j] = count
            j = perm[j]
        count += 1
    return count, tuple(label)


def crossing_labels(b: BraidWord | FramedBraidWord) -> list[tuple[int, int]]:
    """Component labels ``(left strand, right strand)`` at each letter."""
    _, label = closure_components(b)
    cur = list(label)
    out = []
    for x in b.letters:
        k = abs(x)
        out.append((cur[k - 1], cur[k]))
        cur[k - 1], cur[k] = cur[k], cur[k - 1]
    return out


def mixed_crossings(b: BraidWord | FramedBraidWord) -> list[int]:
    return [p for p, (a, c) in enumerate(crossing_labels(b)) if a != c]


# -- Markov moves --------------------------------------------------------------


def _push_framings(n: int, letters: Sequence[int], framings: Sequence[int]) -> list[int]:
    """Framings ``a`` placed below ``letters`` rewritten as framings on top."""
    perm = word_permutation(n, letters)
    out = [0] * n
    for j, a in enumerate(framings):
        out[perm[j]] += a
    return out


def markov_move(b: BraidWord | FramedBraidWord, move: str, arg: int | Sequence[int] = 1):
    """Apply ``conjugate`` (by a letter or word), ``stabilize`` (sign) or ``destabilize``."""
    framed = isinstance(b, FramedBraidWord)
    fb = b if framed else FramedBraidWord(b)
    n, letters, fr, d = fb.n, list(fb.letters), list(fb.framings), fb.d
    if move == "conjugate":
        g = [arg] if isinstance(arg, int) else list(arg)
        for x in g:
            if x == 0 or abs(x) >= n:
                raise MarkovError(f"conjugating letter {x} out of range")
        # g . t^a beta . g^-1 = t^{g.a} g beta g^-1
        new_fr = _push_framings(n, g, fr)
        res = FramedBraidWord(BraidWord(n, tuple(g + letters + [-x for x in reversed(g)])),
                              tuple(new_fr), d)
    elif move == "stabilize":
        sign = 1 if arg >= 0 else -1
        res = FramedBraidWord(BraidWord(n + 1, tuple(letters + [sign * n])), tuple(fr + [0]), d)
    elif move == "destabilize":
        if n < 2 or not letters or abs(letters[-1]) != n - 1:
            raise MarkovError("destabilization needs a final letter +-(n-1)")
        if sum(1 for x in letters if abs(x) == n - 1) != 1:
            raise MarkovError(f"letter {n - 1} must occur exactly once")
        new_fr = fr[:-2] + [fr[-2] + fr[-1]]
        res = FramedBraidWord(BraidWord(n - 1, tuple(letters[:-1])), tuple(new_fr), d)
    else:
        raise ValueError(f"unknown Markov move {move!r}")
    return res if framed else res.braid


def free_reduce(b: BraidWord) -> BraidWord:
    out: list[int] = []
    for x in b.letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return BraidWord(b.n, tuple(out))


# -- random words --------------------------------------------------------------


def random_braid(rng: random.Random, n: int, length: int) -> BraidWord:
    if n < 2:
        return BraidWord(n, ())
    return BraidWord(n, tuple(rng.choice((1, -1)) * rng.randint(1, n - 1) for _ in range(length)))


def random_knot_braid(rng: random.Random, n: int, length: int) -> BraidWord:
    """Random word of at most ``length`` letters whose closure is a knot.

    An n-cycle has parity n - 1, so the length is drawn with that parity.
    """
    if length < n - 1:
        raise ValueError(f"a knot on {n} strands needs at least {n - 1} letters")
    while True:
        k = rng.randrange(n - 1, length + 1, 2)
        b = random_braid(rng, n, k)
        if closure_components(b)[0] == 1:
            return b


def random_link_braid(rng: random.Random, n: int, length: int, min_components: int = 2) -> BraidWord:
    """Random word of at most ``length`` letters with a mixed crossing and enough components."""
    if n < min_components or length < 2 or min_components < 2:
        raise ValueError(f"no {min_components}-component link with a mixed crossing on {n} strands"
                         f" within {length} letters")
    while True:
        b = random_braid(rng, n, rng.randint(2, length))
        if closure_components(b)[0] >= min_components and mixed_crossings(b):
            return b


def split_union(*parts: BraidWord) -> BraidWord:
    """Place braids side by side on disjoint strand blocks."""
    letters: list[int] = []
    offset = 0
    for p in parts:
        letters += [x + offset if x > 0 else x - offset for x in p.letters]
        offset += p.n
    return BraidWord(offset, tuple(letters))


# -- catalog -------------------------------------------------------------------


@dataclass(frozen=True)
class LinkRecord:
    name: str
    n: int
    letters: tuple[int, ...]
    framings: tuple[int, ...] = ()
    fixtures: dict[str, str] = field(default_factory=dict, compare=False, hash=False)

    @property
    def braid(self) -> BraidWord:
        return BraidWord(self.n, self.letters)

    def framed(self, d: int = 1) -> FramedBraidWord:
        return FramedBraidWord(self.braid, self.framings, d)

    @property
    def components(self) -> int:
        return closure_components(self.braid)[0]


def default_catalog_path() -> Path:
    env = os.environ.get("FRAMIX_CATALOG")
    if env:
        return Path(env)
    return Path(__file__).with_name("data") / "catalog.txt"


def parse_catalog(text: str, path: str | None = None) -> list[LinkRecord]:
    records: list[LinkRecord] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split("|")]
        if not 3 <= len(fields) <= 5:
            raise CatalogError(f"expected 3 to 5 '|' fields, got {len(fields)}", lineno, path)
        fields += [""] * (5 - len(fields))
        name, n_text, word_text, fr_text, fix_text = fields
        if not name:
            raise CatalogError("empty name", lineno, path)
        if name in seen:
            raise CatalogError(f"duplicate name {name!r}", lineno, path)
        try:
            n = int(n_text)
            letters = tuple(int(x) for x in word_text.split())
            framings = tuple(int(x) for x in fr_text.split(",")) if fr_text else ()
            braid = BraidWord(n, letters)
        except ValueError as exc:
            raise CatalogError(str(exc), lineno, path) from None
        if framings and len(framings) != n:
            raise CatalogError("framing vector length must equal the strand count", lineno, path)
        fixtures = {}
        for item in filter(None, (x.strip() for x in fix_text.split(";"))):
            key, sep, val = item.partition("=")
            if not sep or not key.strip():
                raise CatalogError(f"bad fixture {item!r}", lineno, path)
            fixtures[key.strip()] = val.strip()
        seen.add(name)
        records.append(LinkRecord(name, braid.n, braid.letters, framings, fixtures))
    return records


def load_catalog(path: str | os.PathLike | None = None) -> list[LinkRecord]:
    p = Path(path) if path is not None else default_catalog_path()
    return parse_catalog(p.read_text(encoding="utf-8"), str(p))


def catalog_index(records: Iterable[LinkRecord]) -> dict[str, LinkRecord]:
    return {r.name: r for r in records}
