"""Relation elements and the word-level identities between them.

Everything in this module lives over exact rationals in the convergent
subalgebra: the distribution tails ``FDT``, the finite double shuffle
elements ``FDS`` and the regularized ones ``RDS``, the exact decomposition
of the depth-two distribution tail into those pieces, the kernel
reformulations, and the weight-two regularized-distribution verifier.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass

from .algebra import (AlgebraElement, Membership, harmonic, membership,
                      qg_apply, shuffle, y_to_x)
from .dmr import functor_sharp, grouplike_check, phi_from_Z
from .errors import InvalidArgumentError
from .groups import (FiniteAbelianGroup, GroupElement, PowerStructure,
                     divisors_of_order, hom_inclusion, hom_power, power_structure)
from .regularization import (TPolynomial, ZMap, extend_Z_sh, extend_Z_st,
                             sigma_apply)
from .rings import RATIONAL
from .words import X0, x_words_up_to


def _word(group, *letters) -> AlgebraElement:
    return AlgebraElement.from_word(RATIONAL, "x", group, tuple(letters))


@dataclass(frozen=True)
class RelationElement:
    """A tagged relation element of the convergent subalgebra."""

    tag: str
    params: tuple
    value: AlgebraElement

    def __post_init__(self):
        if membership(self.value) is not Membership.H0:
            raise InvalidArgumentError(f"{self.tag}{self.params} left the convergent subalgebra")


def fdt1_element(ps: PowerStructure, h: GroupElement) -> RelationElement:
    """``d * sum_{g^d = h} x0 x_g  -  x0 x_h``."""
    if h not in ps.preimages:
        raise InvalidArgumentError(f"{h} is not a d-th power")
    group = ps.group
    acc = AlgebraElement.zero(RATIONAL, "x", group)
    for g in ps.preimages[h]:
        acc = acc + _word(group, X0, g).scale(ps.d)
    acc = acc - _word(group, X0, h)
    return RelationElement("FDT1", (ps.d, h), acc)


def fdt2_element(ps: PowerStructure, h1: GroupElement,
                 h2: GroupElement) -> RelationElement:
    """``sum_{g1^d=h1, g2^d=h2} x_{g1} x_{g2}  -  x_{h1} x_{h2}``; needs h1 != 1."""
    if h1.is_identity:
        raise InvalidArgumentError("FDT2 requires h1 != 1")
    for h in (h1, h2):
        if h not in ps.preimages:
            raise InvalidArgumentError(f"{h} is not a d-th power")
    group = ps.group
    acc = AlgebraElement.zero(RATIONAL, "x", group)
    for g1 in ps.preimages[h1]:
        for g2 in ps.preimages[h2]:
            acc = acc + _word(group, g1, g2)
    acc = acc - _word(group, h1, h2)
    return RelationElement("FDT2", (ps.d, h1, h2), acc)


def fds_element(g1: GroupElement, g2: GroupElement) -> RelationElement:
    """``x0 x_{g1 g2} + x_{g1} x_{g1 g2} + x_{g2} x_{g1 g2} - x_{g1} x_{g2} - x_{g2} x_{g1}``."""
    if g1.is_identity or g2.is_identity:
        raise InvalidArgumentError("FDS requires g1, g2 != 1")
    group = g1.group
    g12 = g1 * g2
    acc = (_word(group, X0, g12) + _word(group, g1, g12) + _word(group, g2, g12)
           - _word(group, g1, g2) - _word(group, g2, g1))
    return RelationElement("FDS", (g1, g2), acc)


def rds_element(g: GroupElement) -> RelationElement:
    """``x0 x_g + x_g x_g - x_g x_1``."""
    if g.is_identity:
        raise InvalidArgumentError("RDS requires g != 1")
    group = g.group
    acc = _word(group, X0, g) + _word(group, g, g) - _word(group, g, group.identity())
    return RelationElement("RDS", (g,), acc)


def build_relation(kind: str, group: FiniteAbelianGroup, *,
                   d: int | None = None, h=None, h1=None, h2=None,
                   g=None, g1=None, g2=None) -> RelationElement:
    """String-dispatched constructor (CLI front end for the four families)."""
    kind = kind.upper()
    if kind in ("FDT1", "FDT2"):
        if d is None:
            raise InvalidArgumentError(f"{kind} needs the divisor d")
        ps = power_structure(group, d)
        if kind == "FDT1":
            return fdt1_element(ps, h)
        return fdt2_element(ps, h1, h2)
    if kind == "FDS":
        return fds_element(g1, g2)
    if kind == "RDS":
        return rds_element(g)
    raise InvalidArgumentError(f"unknown relation kind {kind!r}")


# -- the depth-two decomposition ---------------------------------------------


@dataclass(frozen=True)
class FDTd1Report:
    d: int
    h: GroupElement
    branch: str
    lhs: AlgebraElement
    rhs: AlgebraElement
    difference: AlgebraElement
    passed: bool

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} fdt1-decomposition d={self.d} h={self.h} branch={self.branch}"


def fdtd1_identity_check(group: FiniteAbelianGroup, d: int,
                         h: GroupElement) -> FDTd1Report:
    """Exact equality of the depth-two distribution tail against its
    decomposition into double-shuffle and lower-weight pieces.

    Both branches count the nontrivial d-torsion as ``d - 1`` elements, so
    pairs with ``|K_d| != d`` are refused rather than checked vacuously.
    """
    ps = power_structure(group, d)
    if not ps.kernel_order_is_d:
        raise InvalidArgumentError(
            f"|K_{d}| = {len(ps.kernel)} != {d}: the decomposition hypothesis fails")
    if h not in ps.preimages:
        raise InvalidArgumentError(f"{h} is not a d-th power")
    lhs = fdt1_element(ps, h).value
    kernel_nontrivial = [g for g in ps.kernel if not g.is_identity]
    acc = AlgebraElement.zero(RATIONAL, "x", group)
    if h.is_identity:
        branch = "h=1"
        for g1 in kernel_nontrivial:
            for g2 in kernel_nontrivial:
                acc = acc + fds_element(g1, g2).value
        for g in kernel_nontrivial:
            acc = acc + rds_element(g).value.scale(2)
    else:
        branch = "h!=1"
        for g1 in ps.preimages[h]:
            for g2 in kernel_nontrivial:
                acc = acc + fds_element(g1, g2).value
        for g in ps.preimages[h]:
            acc = acc + rds_element(g).value
        acc = acc - rds_element(h).value
        acc = acc + fdt2_element(ps, h, group.identity()).value
        acc = acc - fdt2_element(ps, h, h).value
    difference = lhs - acc
    return FDTd1Report(d, h, branch, lhs, acc, difference, not difference.terms)


def fdtd1_grid(group: FiniteAbelianGroup) -> list[FDTd1Report]:
    """Run the decomposition over every divisor >= 2 and every d-th power."""
    out = []
    for d in divisors_of_order(group):
        if d < 2:
            continue
        ps = power_structure(group, d)
        if not ps.kernel_order_is_d:
            continue
        for h in ps.subgroup:
            out.append(fdtd1_identity_check(group, d, h))
    return out


# -- kernel reformulations ----------------------------------------------------


@dataclass(frozen=True)
class KernelLemmaReport:
    tag: str
    lhs_value: object
    rhs_value: object
    passed: bool
    detail: str = ""


def kernel_lemma_eval(Z: ZMap, relation: RelationElement,
                      ps: PowerStructure | None = None) -> KernelLemmaReport:
    """Evaluate a relation element against its kernel reformulation.

    Returns ``Z(element)`` next to the reformulated difference (always taken
    reformulation-left minus reformulation-right); the two values agreeing is
    the content of the reformulation.  The distribution cases compare against
    the letter-substitution maps (so the FDT1 case matches exactly when the
    d-torsion has order d); the RDS case needs Z to be multiplicative for the
    shuffle, since it goes through the harmonic-side regularized map.
    """
    ring = Z.ring
    lhs_value = Z.eval_element(relation.value)
    group = Z.group
    if relation.tag in ("FDT1", "FDT2"):
        d = relation.params[0]
        if ps is None or ps.d != d:
            ps = power_structure(group, d)
        if relation.tag == "FDT1":
            h = relation.params[1]
            base = AlgebraElement.from_word(ring, "x", group, (X0, h))
        else:
            h1, h2 = relation.params[1:]
            base = AlgebraElement.from_word(ring, "x", group, (h1, h2))
        p_val = Z.eval_element(functor_sharp(base, hom_power(ps), "lower"))
        i_val = Z.eval_element(functor_sharp(base, hom_inclusion(ps), "upper"))
        rhs_value = p_val - i_val
        detail = "Z(p_sharp) - Z(i_sharp)"
    elif relation.tag == "FDS":
        g1, g2 = relation.params
        u = AlgebraElement.from_word(ring, "y", group, ((1, g1),))
        v = AlgebraElement.from_word(ring, "y", group, ((1, g2),))
        stuffle = qg_apply(y_to_x(harmonic(u, v)), inverse=True)
        shuffled = shuffle(
            AlgebraElement.from_word(ring, "x", group, (g1,)),
            AlgebraElement.from_word(ring, "x", group, (g2,)))
        rhs_value = Z.eval_element(stuffle) - Z.eval_element(shuffled)
        detail = "Z(q^-1(u * v)) - Z(u sh v)"
    elif relation.tag == "RDS":
        g = relation.params[0]
        x1 = AlgebraElement.from_word(ring, "y", group, ((1, group.identity()),))
        xg = AlgebraElement.from_word(ring, "y", group, ((1, g),))
        lhs_poly = extend_Z_st(Z, y_to_x(harmonic(x1, xg)))
        rhs_poly = extend_Z_st(Z, y_to_x(x1)).mul(
            extend_Z_st(Z, y_to_x(xg)), operator.mul)
        diff = lhs_poly - rhs_poly
        rhs_value = diff.coeff(0, ring.zero)
        higher = max((ring.abs(c) for l, c in diff.coeffs.items() if l > 0),
                     default=0.0)
        detail = f"Zst(x1 * xg) - Zst(x1) Zst(xg); higher-T residue {higher:.2e}"
    else:
        raise InvalidArgumentError(f"no kernel reformulation for {relation.tag!r}")
    return KernelLemmaReport(relation.tag, lhs_value, rhs_value,
                             ring.eq(lhs_value, rhs_value), detail)


# -- weight-two regularized distribution --------------------------------------


def _cell_label(h) -> str:
    if h is X0:
        return "x0"
    return "1" if h.is_identity else "h"


@dataclass(frozen=True)
class ZhaoHypotheses:
    eds_spot_degree: int
    eds_ok: bool
    weight1_ok: bool
    weight1_residual: float
    depth2_ok: bool
    depth2_residual: float

    @property
    def all_ok(self) -> bool:
        return self.eds_ok and self.weight1_ok and self.depth2_ok


@dataclass(frozen=True)
class ZhaoCellReport:
    d: int
    h1: object
    h2: object
    cell: str
    lhs: TPolynomial
    rhs: TPolynomial
    residual: float
    passed: bool

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} zhao cell=({self.cell}) d={self.d} residual={self.residual:.3e}"


def zhao_hypotheses(Z: ZMap, ps: PowerStructure,
                    eds_spot_degree: int = 2) -> ZhaoHypotheses:
    """Spot-check the three hypotheses: multiplicativity of the generating
    series through a small degree, and the two finite distribution families."""
    ring = Z.ring
    sh_report = grouplike_check(phi_from_Z(Z, eds_spot_degree), "shuffle")
    pd, incl = hom_power(ps), hom_inclusion(ps)

    def dist_diff(word) -> object:
        base = AlgebraElement.from_word(ring, "x", ps.group, word)
        return (Z.eval_element(functor_sharp(base, pd, "lower"))
                - Z.eval_element(functor_sharp(base, incl, "upper")))

    w1_res, d2_res = 0.0, 0.0
    w1_ok = d2_ok = True
    for h in ps.subgroup:
        if h.is_identity:
            continue
        diff = dist_diff((h,))
        w1_res = max(w1_res, ring.abs(diff))
        w1_ok = w1_ok and ring.is_zero(diff)
        for h2 in ps.subgroup:
            diff = dist_diff((h, h2))
            d2_res = max(d2_res, ring.abs(diff))
            d2_ok = d2_ok and ring.is_zero(diff)
    return ZhaoHypotheses(eds_spot_degree, sh_report.passed,
                          w1_ok, w1_res, d2_ok, d2_res)


def zhao_regdist_check(Z: ZMap, ps: PowerStructure, h1, h2) -> ZhaoCellReport:
    """One cell of the weight-two case table: compare the regularized
    evaluations of the two letter-substitution images of ``x_{h1} x_{h2}``.

    ``h1`` and ``h2`` are d-th powers or the sentinel ``X0`` for the letter x0.
    """
    for h in (h1, h2):
        if h is not X0 and h not in ps.preimages:
            raise InvalidArgumentError(f"{h} is neither x0 nor a d-th power")
    ring = Z.ring
    word = (h1 if h1 is not X0 else X0, h2 if h2 is not X0 else X0)
    base = AlgebraElement.from_word(ring, "x", ps.group, word)
    lhs = extend_Z_sh(Z, functor_sharp(base, hom_power(ps), "lower"))
    rhs = sigma_apply(Z, ps.kernel,
                      extend_Z_sh(Z, functor_sharp(base, hom_inclusion(ps), "upper")))
    residual = lhs.max_abs_diff(rhs, ring)
    diff = lhs - rhs
    passed = all(ring.is_zero(c) for c in diff.coeffs.values())
    cell = f"{_cell_label(h1)},{_cell_label(h2)}"
    return ZhaoCellReport(ps.d, h1, h2, cell, lhs, rhs, residual, passed)


def zhao_case_table(Z: ZMap, group: FiniteAbelianGroup, d: int,
                    eds_spot_degree: int = 2):
    """All case-table cells (x0, identity and each nontrivial d-th power in
    both slots) plus the hypothesis spot checks."""
    ps = power_structure(group, d)
    hypotheses = zhao_hypotheses(Z, ps, eds_spot_degree)
    choices = [X0] + list(ps.subgroup)
    cells = [zhao_regdist_check(Z, ps, h1, h2)
             for h1 in choices for h2 in choices]
    return hypotheses, cells


# -- full regularized distribution check --------------------------------------


@dataclass(frozen=True)
class RegDistReport:
    d: int
    max_len: int
    t_level_residual: float
    ev0_level_residual: float
    t_level_passed: bool
    ev0_level_passed: bool
    generator_residual: float
    generator_passed: bool
    words_checked: int

    @property
    def passed(self) -> bool:
        return self.t_level_passed and self.ev0_level_passed and self.generator_passed

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} regdist d={self.d} len<={self.max_len} "
                f"T-level={self.t_level_residual:.3e} "
                f"ev0-level={self.ev0_level_residual:.3e} "
                f"generators={self.generator_residual:.3e}")


def regdist_full_check(Z: ZMap, group: FiniteAbelianGroup, d: int,
                       max_len: int) -> RegDistReport:
    """Check the regularized distribution relation on every word over the
    d-th power alphabet up to ``max_len``, its evaluation at T = 0, and the
    generating family ``x1^m sh w`` with ``w`` not starting in x1."""
    ps = power_structure(group, d)
    ring = Z.ring
    pd, incl = hom_power(ps), hom_inclusion(ps)

    def both_sides(elem: AlgebraElement) -> tuple[TPolynomial, TPolynomial]:
        lhs = extend_Z_sh(Z, functor_sharp(elem, pd, "lower"))
        rhs = sigma_apply(Z, ps.kernel,
                          extend_Z_sh(Z, functor_sharp(elem, incl, "upper")))
        return lhs, rhs

    t_res = ev0_res = gen_res = 0.0
    t_ok = ev0_ok = gen_ok = True
    count = 0
    identity = group.identity()
    for w in x_words_up_to(ps.subgroup, max_len):
        count += 1
        elem = AlgebraElement.from_word(ring, "x", group, w)
        lhs, rhs = both_sides(elem)
        diff = lhs - rhs
        t_res = max(t_res, lhs.max_abs_diff(rhs, ring))
        if any(not ring.is_zero(c) for c in diff.coeffs.values()):
            t_ok = False
        ev_diff = lhs.coeff(0, ring.zero) - rhs.coeff(0, ring.zero)
        ev0_res = max(ev0_res, ring.abs(ev_diff))
        if not ring.is_zero(ev_diff):
            ev0_ok = False
    for m in range(0, max_len + 1):
        x1m = AlgebraElement.from_word(ring, "x", group, (identity,) * m)
        for w in x_words_up_to(ps.subgroup, max_len - m):
            if w and w[0] is not X0 and w[0].is_identity:
                continue
            elem = shuffle(x1m, AlgebraElement.from_word(ring, "x", group, w))
            lhs, rhs = both_sides(elem)
            diff = lhs - rhs
            gen_res = max(gen_res, lhs.max_abs_diff(rhs, ring))
            if any(not ring.is_zero(c) for c in diff.coeffs.values()):
                gen_ok = False
    return RegDistReport(d, max_len, t_res, ev0_res, t_ok, ev0_ok,
                         gen_res, gen_ok, count)
