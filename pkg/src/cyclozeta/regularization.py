"""Shuffle regularization into T-polynomials and the scalar correction maps.

The regularization of a word is computed by two-phase shuffle division:
trailing x0 letters are eliminated first (phase handled by
:func:`tilde_reg`, sending x0 to 0), then leading identity letters are
divided out with ``x_1 -> T``.  Both phases rewrite a word against the
shuffle of its divergent run with the rest, where the target word occurs
exactly once and every other interleaving is strictly closer to the
convergent subalgebra.  The composition is the unique shuffle-algebra map
that fixes convergent words and sends ``x0 -> 0``, ``x1 -> T``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import AlgebraElement, Membership, membership, qg_apply, shuffle_words, y_to_x
from .errors import AlphabetMismatchError, DegreeBoundError, NotInH0Error, NotInH1Error
from .words import X0, x_word_in_h0, x_word_in_h1, format_x_word


# -- T-polynomials ---------------------------------------------------------


def _stored_zero(value) -> bool:
    if isinstance(value, AlgebraElement):
        return not value.terms
    return value == 0


@dataclass(frozen=True)
class TPolynomial:
    """A polynomial in one commuting variable T with coefficients in any
    additive domain (scalars, or word combinations for the algebra-valued
    regularization)."""

    coeffs: dict

    @staticmethod
    def make(mapping: dict) -> "TPolynomial":
        return TPolynomial({l: c for l, c in mapping.items() if not _stored_zero(c)})

    @staticmethod
    def constant(value) -> "TPolynomial":
        return TPolynomial.make({0: value})

    def coeff(self, l: int, zero=0):
        return self.coeffs.get(l, zero)

    def degree(self) -> int:
        return max(self.coeffs, default=0)

    def __add__(self, other: "TPolynomial") -> "TPolynomial":
        out = dict(self.coeffs)
        for l, c in other.coeffs.items():
            out[l] = out[l] + c if l in out else c
        return TPolynomial.make(out)

    def __sub__(self, other: "TPolynomial") -> "TPolynomial":
        return self + other.scale(-1)

    def scale(self, c) -> "TPolynomial":
        def mul(v):
            return v.scale(c) if isinstance(v, AlgebraElement) else c * v
        return TPolynomial.make({l: mul(v) for l, v in self.coeffs.items()})

    def mul(self, other: "TPolynomial", multiply) -> "TPolynomial":
        """Convolution in T; ``multiply`` combines coefficients (e.g. shuffle)."""
        out: dict = {}
        for l1, c1 in self.coeffs.items():
            for l2, c2 in other.coeffs.items():
                l = l1 + l2
                term = multiply(c1, c2)
                out[l] = out[l] + term if l in out else term
        return TPolynomial.make(out)

    def max_abs_diff(self, other: "TPolynomial", ring) -> float:
        exps = set(self.coeffs) | set(other.coeffs)
        return max((ring.abs(self.coeff(l, ring.zero) - other.coeff(l, ring.zero))
                    for l in exps), default=0.0)


# -- word-level regularization tables -------------------------------------


def _prune(mapping: dict) -> dict:
    return {k: v for k, v in mapping.items() if v != 0}


@lru_cache(maxsize=None)
def _tilde_word(word: tuple) -> tuple:
    """``tilde_reg`` of one word as ``((word, Fraction), ...)``."""
    if x_word_in_h1(word):
        return ((word, Fraction(1)),)
    k = len(word)
    while k > 0 and word[k - 1] is X0:
        k -= 1
    run = len(word) - k
    head = word[:k]
    if not head:
        return ()  # pure x0 power maps to 0
    out: dict = {}
    for other, count in shuffle_words(head, (X0,) * run).items():
        if other == word:
            continue
        for w, c in _tilde_word(other):
            out[w] = out.get(w, 0) - count * c
    return tuple(_prune(out).items())


@lru_cache(maxsize=None)
def _regt_word(word: tuple) -> tuple:
    """``reg^T`` of one word of the x0-free-tail algebra, as
    ``((l, word, Fraction), ...)``; assumes the word ends in a group letter."""
    if not word or word[0] is X0 or not word[0].is_identity:
        return ((0, word, Fraction(1)),)
    m = 0
    while m < len(word) and word[m] is not X0 and word[m].is_identity:
        m += 1
    tail = word[m:]
    out: dict = {(m, tail): Fraction(1, math.factorial(m))}
    for other, count in shuffle_words(word[:m], tail).items():
        if other == word:
            continue
        for l, w, c in _regt_word(other):
            key = (l, w)
            out[key] = out.get(key, 0) - count * c
    return tuple((l, w, c) for (l, w), c in _prune(out).items())


def tilde_reg(a: AlgebraElement) -> AlgebraElement:
    """The shuffle-algebra retraction killing x0, identity on words that end
    in a group letter."""
    if a.kind != "x":
        raise AlphabetMismatchError("tilde_reg applies to X-side input")
    out: dict = {}
    for word, coeff in a.terms.items():
        for w, c in _tilde_word(word):
            out[w] = out.get(w, 0) + coeff * c
    return AlgebraElement.make(a.ring, "x", a.group, out)


def bar_reg_T(a: AlgebraElement) -> TPolynomial:
    """Regularize into T-polynomials with convergent-word coefficients:
    the unique shuffle map fixing those words, with x0 -> 0 and x1 -> T."""
    if a.kind != "x":
        raise AlphabetMismatchError("bar_reg_T applies to X-side input")
    acc: dict = {}
    for word, coeff in a.terms.items():
        for w1, c1 in _tilde_word(word):
            for l, w2, c2 in _regt_word(w1):
                level = acc.setdefault(l, {})
                level[w2] = level.get(w2, 0) + coeff * c1 * c2
    return TPolynomial.make({
        l: AlgebraElement.make(a.ring, "x", a.group, level)
        for l, level in acc.items()})


def reg_T(a: AlgebraElement) -> TPolynomial:
    """The restriction of :func:`bar_reg_T` to combinations of words ending
    in a group letter."""
    if membership(a) is Membership.NEITHER:
        raise NotInH1Error("reg_T input must have all monomials ending in a group letter")
    return bar_reg_T(a)


def bar_reg(a: AlgebraElement) -> AlgebraElement:
    """Evaluation of :func:`bar_reg_T` at T = 0 (x0 -> 0 and x1 -> 0)."""
    tp = bar_reg_T(a)
    return tp.coeff(0, AlgebraElement.zero(a.ring, "x", a.group))


# -- evaluation maps -------------------------------------------------------


class ZMap:
    """A linear functional on the convergent word basis.

    Subclasses provide :meth:`eval_word`; evaluation of combinations and of
    algebra-valued T-polynomials extends it linearly.  ``degree_bound`` is the
    working truncation degree (None means unbounded / lazy).
    """

    def __init__(self, ring, group, degree_bound: int | None = None):
        self.ring = ring
        self.group = group
        self.degree_bound = degree_bound

    def eval_word(self, word: tuple):
        raise NotImplementedError

    def _eval_checked(self, word: tuple):
        if not x_word_in_h0(word):
            raise NotInH0Error(f"{format_x_word(word)} is not a convergent word")
        if self.degree_bound is not None and len(word) > self.degree_bound:
            raise DegreeBoundError(
                f"word of length {len(word)} exceeds working degree {self.degree_bound}")
        if not word:
            return self.ring.one
        return self.eval_word(word)

    def eval_element(self, a: AlgebraElement):
        total = self.ring.zero
        for word, coeff in a.terms.items():
            total = total + coeff * self._eval_checked(word)
        return total

    def eval_tpoly(self, tp: TPolynomial) -> TPolynomial:
        return TPolynomial.make(
            {l: self.eval_element(c) for l, c in tp.coeffs.items()})


class TableZMap(ZMap):
    """A Z map backed by an explicit word table (exact or engineered values)."""

    def __init__(self, ring, group, table: dict, degree_bound: int | None = None):
        super().__init__(ring, group, degree_bound)
        self.table = {tuple(w): ring.coerce(c) for w, c in table.items()}

    def eval_word(self, word: tuple):
        try:
            return self.table[word]
        except KeyError:
            raise DegreeBoundError(
                f"{format_x_word(word)} is outside this map's table") from None


# -- correction series -----------------------------------------------------


def _formal_exp(series: list, degree: int) -> list:
    """exp of a power series with zero constant term, through u^degree."""
    out = [series[0] * 0 + 1]
    for m in range(1, degree + 1):
        acc = 0
        for j in range(1, m + 1):
            if j < len(series):
                acc = acc + j * series[j] * out[m - j]
        out.append(acc * Fraction(1, m))
    return out


@dataclass(frozen=True)
class GammaSeries:
    """Coefficients of the comparison series between the two regularizations:
    ``inverse_coeffs[l]`` is the u^l coefficient of the reciprocal series
    (gamma_l), ``forward_coeffs[l]`` the one of the series itself."""

    degree: int
    inverse_coeffs: tuple
    forward_coeffs: tuple


def gamma_series(Z: ZMap, degree: int) -> GammaSeries:
    """Expand ``exp(sum_{n>=2} ((-1)^n / n) Z(x0^{n-1} x1) u^n)`` and its
    reciprocal through u^degree."""
    identity = Z.group.identity()
    log_terms = [Z.ring.zero] * (degree + 1)
    for n in range(2, degree + 1):
        word = (X0,) * (n - 1) + (identity,)
        log_terms[n] = Fraction((-1) ** n, n) * Z._eval_checked(word)
    fwd = _formal_exp(log_terms, degree)
    inv = _formal_exp([-t for t in log_terms], degree)
    return GammaSeries(degree, tuple(inv), tuple(fwd))


def rho_apply(Z: ZMap, p: TPolynomial, inverse: bool = False) -> TPolynomial:
    """The module automorphism comparing shuffle and harmonic regularization,
    acting through its table on the monomials T^l / l!."""
    degree = p.degree()
    gs = gamma_series(Z, degree)
    coefs = gs.inverse_coeffs if inverse else gs.forward_coeffs
    return _lower_triangular_apply(p, coefs)


@dataclass(frozen=True)
class DeltaSeries:
    """Coefficients of ``exp(delta_1 u)`` where delta_1 sums the weight-one
    values over the nontrivial d-torsion."""

    degree: int
    delta1: object
    coeffs: tuple


def delta_series(Z: ZMap, kernel, degree: int) -> DeltaSeries:
    delta1 = Z.ring.zero
    for g in kernel:
        if not g.is_identity:
            delta1 = delta1 + Z._eval_checked((g,))
    coeffs = tuple(delta1 ** l * Fraction(1, math.factorial(l))
                   for l in range(degree + 1))
    return DeltaSeries(degree, delta1, coeffs)


def sigma_apply(Z: ZMap, kernel, p: TPolynomial) -> TPolynomial:
    """The distribution-side correction automorphism of A[T] for the given
    d-torsion subgroup ``kernel``."""
    ds = delta_series(Z, kernel, p.degree())
    return _lower_triangular_apply(p, ds.coeffs)


def _lower_triangular_apply(p: TPolynomial, coefs) -> TPolynomial:
    # image of T^l is  l! * sum_j coefs[j] T^(l-j) / (l-j)!
    out: dict = {}
    for l, c in p.coeffs.items():
        for j in range(0, l + 1):
            if j < len(coefs):
                factor = Fraction(math.factorial(l), math.factorial(l - j))
                term = c * coefs[j] * factor
                out[l - j] = out[l - j] + term if (l - j) in out else term
    return TPolynomial.make(out)


# -- extension of an algebra map to the whole word algebra ------------------


def extend_Z_sh(Z: ZMap, a: AlgebraElement) -> TPolynomial:
    """The unique T-polynomial-valued extension of Z along the shuffle
    regularization: evaluate Z on each T-coefficient of ``bar_reg_T``."""
    return Z.eval_tpoly(bar_reg_T(a))


def extend_Z_st(Z: ZMap, a: AlgebraElement) -> TPolynomial:
    """The harmonic-side regularized map, computed as the composition
    rho^(-1) o Z-extension o label-untwist (its only definition here)."""
    if a.kind == "y":
        a = y_to_x(a)
    return rho_apply(Z, extend_Z_sh(Z, qg_apply(a, inverse=True)), inverse=True)
