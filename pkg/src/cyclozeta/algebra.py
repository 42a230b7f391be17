"""Finitely supported linear combinations of words and their products.

The same sparse container backs the full word algebra over X, its
subalgebras of words ending in a group letter (the Y-encodable ones) and the
convergent subalgebra, as well as Y-side combinations.  Products:

* :func:`shuffle` -- the interleaving product, on either alphabet;
* :func:`quasi_shuffle` -- the generic letter-merging product driven by a
  :class:`DiamondProduct`;
* :func:`harmonic` -- the Y-side specialization merging ``y_{n1,g1}`` and
  ``y_{n2,g2}`` into ``y_{n1+n2, g1 g2}``.

Elements are immutable in practice (no method mutates ``terms``) and all
products are pure functions, so values can be shared freely across threads.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable

from .errors import AlphabetMismatchError, NotInH1Error, ParseError
from .groups import FiniteAbelianGroup
from .rings import RATIONAL
from . import words as W


@dataclass(frozen=True)
class AlgebraElement:
    """A finitely supported map word -> coefficient over one alphabet."""

    ring: object
    kind: str  # 'x' or 'y'
    group: FiniteAbelianGroup
    terms: dict

    @staticmethod
    def make(ring, kind, group, mapping: dict) -> "AlgebraElement":
        cleaned = {w: c for w, c in mapping.items() if not ring.is_stored_zero(c)}
        return AlgebraElement(ring, kind, group, cleaned)

    @staticmethod
    def zero(ring, kind, group) -> "AlgebraElement":
        return AlgebraElement(ring, kind, group, {})

    @staticmethod
    def one(ring, kind, group) -> "AlgebraElement":
        return AlgebraElement(ring, kind, group, {(): ring.one})

    @staticmethod
    def from_word(ring, kind, group, word, coeff=None) -> "AlgebraElement":
        c = ring.one if coeff is None else ring.coerce(coeff)
        return AlgebraElement.make(ring, kind, group, {tuple(word): c})

    # -- linear structure ----------------------------------------------------

    def _check(self, other: "AlgebraElement"):
        if (self.ring, self.kind, self.group) != (other.ring, other.kind, other.group):
            raise AlphabetMismatchError(
                f"cannot combine {self.kind}/{self.group} with {other.kind}/{other.group}")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return AlgebraElement.make(self.ring, self.kind, self.group, out)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + other.scale(-1)

    def __neg__(self) -> "AlgebraElement":
        return self.scale(-1)

    def scale(self, c) -> "AlgebraElement":
        if c == 0:
            return AlgebraElement.zero(self.ring, self.kind, self.group)
        return AlgebraElement.make(
            self.ring, self.kind, self.group,
            {w: c * v for w, v in self.terms.items()})

    def concat(self, other: "AlgebraElement") -> "AlgebraElement":
        """The noncommutative concatenation product."""
        self._check(other)
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
        return AlgebraElement.make(self.ring, self.kind, self.group, out)

    # -- queries ---------------------------------------------------------

    def coeff(self, word):
        return self.terms.get(tuple(word), self.ring.zero)

    def is_zero(self) -> bool:
        return all(self.ring.is_zero(c) for c in self.terms.values())

    def max_abs(self) -> float:
        return max((self.ring.abs(c) for c in self.terms.values()), default=0.0)

    def approx_equal(self, other: "AlgebraElement") -> bool:
        self._check(other)
        return (self - other).is_zero()

    def degree(self) -> int:
        if self.kind == "x":
            return max((len(w) for w in self.terms), default=0)
        return max((W.y_weight(w) for w in self.terms), default=0)

    def map_words(self, fn: Callable) -> "AlgebraElement":
        """Apply a word -> word map linearly (used by the label twists)."""
        out: dict = {}
        for w, c in self.terms.items():
            nw = fn(w)
            out[nw] = out.get(nw, 0) + c
        return AlgebraElement.make(self.ring, self.kind, self.group, out)

    def __str__(self):
        return format_element_combo(self)


# -- diamond products ---------------------------------------------------------


class DiamondProduct:
    """A commutative, associative product on letters with sparse constants.

    ``mul(a, b)`` returns the finitely many ``(letter, rational)`` pairs of
    ``a <> b``; the empty result is the zero product.
    """

    name = "zero"

    def mul(self, a, b) -> Iterable[tuple[object, Fraction]]:
        return ()


class ZeroDiamond(DiamondProduct):
    """Degenerates the quasi-shuffle to the plain shuffle."""


class HarmonicDiamond(DiamondProduct):
    """Y-letter merge ``y_{n1,g1} <> y_{n2,g2} = y_{n1+n2, g1 g2}``."""

    name = "harmonic"

    def mul(self, a, b):
        (n1, g1), (n2, g2) = a, b
        return (((n1 + n2, g1 * g2), 1),)


ZERO_DIAMOND = ZeroDiamond()
HARMONIC_DIAMOND = HarmonicDiamond()


# -- products ------------------------------------------------------------


@lru_cache(maxsize=200_000)
def shuffle_words(w1: tuple, w2: tuple) -> dict:
    """Interleaving counts of two words; cached globally (pure data)."""
    if not w1:
        return {w2: 1}
    if not w2:
        return {w1: 1}
    out: dict = {}
    for word, count in shuffle_words(w1[1:], w2).items():
        key = (w1[0],) + word
        out[key] = out.get(key, 0) + count
    for word, count in shuffle_words(w1, w2[1:]).items():
        key = (w2[0],) + word
        out[key] = out.get(key, 0) + count
    return out


def shuffle(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """The bilinear shuffle product."""
    a._check(b)
    if not a.terms or not b.terms:
        return AlgebraElement.zero(a.ring, a.kind, a.group)
    out: dict = {}
    for w1, c1 in a.terms.items():
        for w2, c2 in b.terms.items():
            c = c1 * c2
            for word, count in shuffle_words(w1, w2).items():
                out[word] = out.get(word, 0) + count * c
    return AlgebraElement.make(a.ring, a.kind, a.group, out)


def quasi_shuffle(a: AlgebraElement, b: AlgebraElement,
                  diamond: DiamondProduct) -> AlgebraElement:
    """The quasi-shuffle product ``*_<>`` for an arbitrary diamond.

    The word-level recursion is memoized per call; the suffix pairs it visits
    recur combinatorially often.
    """
    a._check(b)
    if not a.terms or not b.terms:
        return AlgebraElement.zero(a.ring, a.kind, a.group)
    memo: dict = {}

    def qs(w1: tuple, w2: tuple) -> dict:
        if not w1:
            return {w2: 1}
        if not w2:
            return {w1: 1}
        key = (w1, w2)
        hit = memo.get(key)
        if hit is not None:
            return hit
        out: dict = {}
        for word, c in qs(w1[1:], w2).items():
            key1 = (w1[0],) + word
            out[key1] = out.get(key1, 0) + c
        for word, c in qs(w1, w2[1:]).items():
            key2 = (w2[0],) + word
            out[key2] = out.get(key2, 0) + c
        for letter, lam in diamond.mul(w1[0], w2[0]):
            for word, c in qs(w1[1:], w2[1:]).items():
                key3 = (letter,) + word
                out[key3] = out.get(key3, 0) + lam * c
        memo[key] = out
        return out

    out: dict = {}
    for w1, c1 in a.terms.items():
        for w2, c2 in b.terms.items():
            c = c1 * c2
            for word, count in qs(w1, w2).items():
                out[word] = out.get(word, 0) + count * c
    return AlgebraElement.make(a.ring, a.kind, a.group, out)


def harmonic(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """The harmonic (stuffle) product on Y-side combinations."""
    if a.kind != "y":
        raise AlphabetMismatchError("harmonic product needs Y-side input")
    return quasi_shuffle(a, b, HARMONIC_DIAMOND)


# -- label twist, conversions, membership ---------------------------------


def qg_apply(a: AlgebraElement, inverse: bool = False) -> AlgebraElement:
    """The label twist ``q_G`` (or its reciprocal) extended linearly."""
    if a.kind == "x":
        return a.map_words(lambda w: W.qg_x_word(w, inverse))
    return a.map_words(lambda w: W.qg_y_word(w, inverse))


def x_to_y(a: AlgebraElement) -> AlgebraElement:
    """Re-encode a combination of words ending in group letters to Y form."""
    if a.kind != "x":
        raise AlphabetMismatchError("x_to_y needs X-side input")
    out: dict = {}
    for w, c in a.terms.items():
        if not W.x_word_in_h1(w):
            raise NotInH1Error(f"{W.format_x_word(w)} ends in x0")
        yw = W.x_to_y_word(w)
        out[yw] = out.get(yw, 0) + c
    return AlgebraElement.make(a.ring, "y", a.group, out)


def y_to_x(a: AlgebraElement) -> AlgebraElement:
    if a.kind != "y":
        raise AlphabetMismatchError("y_to_x needs Y-side input")
    out: dict = {}
    for w, c in a.terms.items():
        xw = W.y_to_x_word(w)
        out[xw] = out.get(xw, 0) + c
    return AlgebraElement.make(a.ring, "x", a.group, out)


class Membership(enum.Enum):
    H0 = "in_H0"
    H1 = "in_H1"
    NEITHER = "neither"


def membership(a: AlgebraElement) -> Membership:
    """Classify an X-side combination against the convergent filtration."""
    if a.kind != "x":
        raise AlphabetMismatchError("membership applies to X-side input")
    if all(W.x_word_in_h0(w) for w in a.terms):
        return Membership.H0
    if all(W.x_word_in_h1(w) for w in a.terms):
        return Membership.H1
    return Membership.NEITHER


def project_piY(a: AlgebraElement) -> AlgebraElement:
    """Kill monomials ending in x0 and re-encode the rest to Y form."""
    if a.kind != "x":
        raise AlphabetMismatchError("project_piY applies to X-side input")
    out: dict = {}
    for w, c in a.terms.items():
        if W.x_word_in_h1(w):
            yw = W.x_to_y_word(w)
            out[yw] = out.get(yw, 0) + c
    return AlgebraElement.make(a.ring, "y", a.group, out)


def pairing(obj, word):
    """Coefficient extraction ``(obj | word)`` for elements and series."""
    return obj.coeff(tuple(word))


# -- textual form -------------------------------------------------------------


def format_element_combo(a: AlgebraElement) -> str:
    if not a.terms:
        return "0"
    fmt_word = W.format_x_word if a.kind == "x" else W.format_y_word
    if a.kind == "x":
        keys = sorted(a.terms, key=lambda w: (len(w), fmt_word(w)))
    else:
        keys = sorted(a.terms, key=lambda w: (W.y_weight(w), fmt_word(w)))
    parts = []
    for w in keys:
        c = a.terms[w]
        if c == a.ring.one:
            parts.append(fmt_word(w))
        elif c == -a.ring.one:
            parts.append(f"-{fmt_word(w)}")
        else:
            parts.append(f"{a.ring.format(c)}*{fmt_word(w)}")
    return " + ".join(parts)


def _split_top_level(text: str, sep: str):
    """Split on a separator that does not occur inside brackets or parens."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return parts


def parse_element_combo(text: str, ring, kind: str,
                        group: FiniteAbelianGroup) -> AlgebraElement:
    """Parse ``coeff*word + coeff*word + ...`` (also bare words)."""
    text = text.strip()
    if text in ("", "0"):
        return AlgebraElement.zero(ring, kind, group)
    normalized = re.sub(r"\s*\+\s*-", " + -", text)
    out: dict = {}
    for chunk in _split_top_level(normalized, "+"):
        chunk = chunk.strip()
        if not chunk:
            continue
        stars = _split_top_level(chunk, "*")
        if len(stars) == 1:
            coeff_text, word_text = None, stars[0].strip()
        elif len(stars) == 2:
            coeff_text, word_text = stars[0].strip(), stars[1].strip()
        else:
            raise ParseError(f"bad term {chunk!r}")
        if coeff_text is None:
            neg = word_text.startswith("-")
            if neg:
                word_text = word_text[1:].strip()
            coeff = -ring.one if neg else ring.one
        else:
            coeff = ring.parse(coeff_text)
        word = (W.parse_x_word(word_text, group) if kind == "x"
                else W.parse_y_word(word_text, group))
        out[word] = out.get(word, 0) + coeff
    return AlgebraElement.make(ring, kind, group, out)


def word_element(group: FiniteAbelianGroup, text: str, ring=RATIONAL,
                 kind: str = "x") -> AlgebraElement:
    """Convenience: one word from its textual form, with coefficient 1."""
    word = (W.parse_x_word(text, group) if kind == "x"
            else W.parse_y_word(text, group))
    return AlgebraElement.from_word(ring, kind, group, word)
