"""Degree-truncated noncommutative power series.

A series holds the coefficients of every word of degree at most its bound
over a fixed alphabet; absent words are zero.  X-series are graded by word
length, Y-series by the weight ``sum(n_i)``.  The concatenation product is
exact through the bound, and formal exp/log are inverse to each other there.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterator

from .errors import AlphabetMismatchError, DegreeBoundError, InvalidArgumentError
from .groups import FiniteAbelianGroup, GroupElement
from . import words as W


@dataclass(frozen=True)
class Alphabet:
    """The letter universe of a series: kind ('x' or 'y'), the ambient group
    and the tuple of admissible group letters (a subgroup for the restricted
    alphabets used by the distribution maps)."""

    kind: str
    group: FiniteAbelianGroup
    letters: tuple[GroupElement, ...]

    @staticmethod
    def x(group: FiniteAbelianGroup, letters=None) -> "Alphabet":
        return Alphabet("x", group, tuple(letters) if letters is not None
                        else tuple(group.elements()))

    @staticmethod
    def y(group: FiniteAbelianGroup, letters=None) -> "Alphabet":
        return Alphabet("y", group, tuple(letters) if letters is not None
                        else tuple(group.elements()))

    def words_up_to(self, degree: int) -> Iterator[tuple]:
        if self.kind == "x":
            return W.x_words_up_to(self.letters, degree)
        return W.y_words_up_to(self.letters, degree)

    def word_degree(self, word: tuple) -> int:
        return len(word) if self.kind == "x" else W.y_weight(word)


@dataclass(frozen=True)
class TruncatedSeries:
    """All word coefficients up to ``degree_bound``, stored sparsely."""

    ring: object
    alphabet: Alphabet
    degree_bound: int
    coeffs: dict

    @staticmethod
    def make(ring, alphabet, degree_bound, mapping: dict) -> "TruncatedSeries":
        cleaned = {}
        for w, c in mapping.items():
            if alphabet.word_degree(w) > degree_bound:
                continue
            if not ring.is_stored_zero(c):
                cleaned[w] = c
        return TruncatedSeries(ring, alphabet, degree_bound, cleaned)

    @staticmethod
    def one(ring, alphabet, degree_bound) -> "TruncatedSeries":
        return TruncatedSeries(ring, alphabet, degree_bound, {(): ring.one})

    @staticmethod
    def zero(ring, alphabet, degree_bound) -> "TruncatedSeries":
        return TruncatedSeries(ring, alphabet, degree_bound, {})

    @staticmethod
    def from_function(ring, alphabet, degree_bound,
                      fn: Callable[[tuple], object]) -> "TruncatedSeries":
        out = {}
        for w in alphabet.words_up_to(degree_bound):
            out[w] = fn(w)
        return TruncatedSeries.make(ring, alphabet, degree_bound, out)

    # -- queries -----------------------------------------------------------

    def coeff(self, word):
        word = tuple(word)
        if self.alphabet.word_degree(word) > self.degree_bound:
            raise DegreeBoundError(
                f"word of degree {self.alphabet.word_degree(word)} is beyond "
                f"the bound {self.degree_bound}")
        return self.coeffs.get(word, self.ring.zero)

    @cached_property
    def _by_degree(self) -> dict:
        out: dict = {}
        for w, c in self.coeffs.items():
            out.setdefault(self.alphabet.word_degree(w), {})[w] = c
        return out

    def _check(self, other: "TruncatedSeries"):
        if (self.ring, self.alphabet, self.degree_bound) != (
                other.ring, other.alphabet, other.degree_bound):
            raise AlphabetMismatchError("series bounds/alphabets/rings differ")

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, 0) + c
        return TruncatedSeries.make(self.ring, self.alphabet, self.degree_bound, out)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + other.scale(-1)

    def scale(self, c) -> "TruncatedSeries":
        return TruncatedSeries.make(
            self.ring, self.alphabet, self.degree_bound,
            {w: c * v for w, v in self.coeffs.items()})

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        """Concatenation-convolution, exact through the degree bound."""
        self._check(other)
        out: dict = {}
        for d1, level1 in self._by_degree.items():
            for d2, level2 in other._by_degree.items():
                if d1 + d2 > self.degree_bound:
                    continue
                for w1, c1 in level1.items():
                    for w2, c2 in level2.items():
                        w = w1 + w2
                        out[w] = out.get(w, 0) + c1 * c2
        return TruncatedSeries.make(self.ring, self.alphabet, self.degree_bound, out)

    def max_abs_diff(self, other: "TruncatedSeries") -> float:
        self._check(other)
        keys = set(self.coeffs) | set(other.coeffs)
        return max((self.ring.abs(self.coeffs.get(w, self.ring.zero)
                                  - other.coeffs.get(w, self.ring.zero))
                    for w in keys), default=0.0)

    def approx_equal(self, other: "TruncatedSeries") -> bool:
        self._check(other)
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.ring.eq(self.coeffs.get(w, self.ring.zero),
                                other.coeffs.get(w, self.ring.zero))
                   for w in keys)


def series_exp(a: TruncatedSeries) -> TruncatedSeries:
    """Formal exponential; requires zero constant term."""
    if not a.ring.is_stored_zero(a.coeffs.get((), a.ring.zero)):
        raise InvalidArgumentError("series_exp needs a zero constant term")
    result = TruncatedSeries.one(a.ring, a.alphabet, a.degree_bound)
    power = result
    for k in range(1, a.degree_bound + 1):
        power = power * a
        if not power.coeffs:
            break
        result = result + power.scale(Fraction(1, _factorial(k)))
    return result


def series_log(a: TruncatedSeries) -> TruncatedSeries:
    """Formal logarithm; requires constant term one."""
    if not a.ring.eq(a.coeffs.get((), a.ring.zero), a.ring.one):
        raise InvalidArgumentError("series_log needs constant term 1")
    x = a - TruncatedSeries.one(a.ring, a.alphabet, a.degree_bound)
    result = TruncatedSeries.zero(a.ring, a.alphabet, a.degree_bound)
    power = TruncatedSeries.one(a.ring, a.alphabet, a.degree_bound)
    for k in range(1, a.degree_bound + 1):
        power = power * x
        if not power.coeffs:
            break
        result = result + power.scale(Fraction((-1) ** (k + 1), k))
    return result


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out
