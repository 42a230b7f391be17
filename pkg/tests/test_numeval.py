"""Nested-sum engine: anchors, self-consistency, identity suites."""

import math

import numpy as np
import pytest

from conftest import em_tail_oracle, oracle_nested_sum
from cyclozeta.errors import DivergentSeriesError, NotInH0Error
from cyclozeta.numeval import (NumericZMap, PolylogQuery, numeric_relation_suite,
                               polylog_numeric, word_to_query, zc_eval)
from cyclozeta.words import X0


def li(ks, residues, level, cutoff=200_000):
    return polylog_numeric(PolylogQuery(tuple(ks), tuple(residues), level,
                                        cutoff))


class TestAnchors:
    def test_li2_at_one(self):
        result = li([2], [0], 1)
        assert abs(result.value - math.pi ** 2 / 6) < 1e-6

    def test_li2_at_minus_one(self):
        result = li([2], [1], 2)
        assert abs(result.value - (-math.pi ** 2 / 12)) < 1e-6

    def test_li1_at_minus_one(self):
        result = li([1], [1], 2)
        assert abs(result.value - (-math.log(2))) < 1e-6

    def test_against_partial_sum_oracle(self):
        # the engine value sits within the oracle's integral tail bound
        m = 10 ** 6
        partial = oracle_nested_sum((2,), (0,), 1, m)[-1]
        engine = li([2], [0], 1).value
        assert abs(engine - partial) <= 1.0 / m + 1.0 / m ** 2


class TestDepthOneSelfConsistency:
    @pytest.mark.parametrize("k,a,level", [
        (2, 0, 1), (3, 0, 1), (4, 0, 1),
        (2, 1, 2), (3, 1, 2), (2, 1, 3), (2, 2, 3), (2, 1, 4),
    ])
    def test_engine_matches_direct_summation(self, k, a, level):
        m = 400_000
        sums = oracle_nested_sum((k,), (a,), level, m)
        if a % level == 0:
            oracle = sums[-1] + em_tail_oracle(k, m)
        else:
            # one period-average of the oracle partial sums
            oracle = complex(np.mean(sums[-level:])) if level > 1 else sums[-1]
        engine = li([k], [a], level).value
        assert abs(engine - oracle) < 1e-9


class TestEngineContracts:
    def test_divergent_query_rejected(self):
        with pytest.raises(DivergentSeriesError):
            PolylogQuery((1,), (0,), 3)

    def test_cutoff_doubling_stability(self):
        for ks, rs, level in [((2, 1), (0, 0), 1), ((1, 1), (1, 0), 2),
                              ((2, 1, 1), (0, 0, 0), 1), ((1, 2), (2, 1), 3)]:
            first = li(ks, rs, level, cutoff=200_000)
            second = li(ks, rs, level, cutoff=400_000)
            assert abs(first.value - second.value) <= first.tail_bound + second.tail_bound

    def test_symmetric_expression_invariance(self):
        # stuffle-symmetric combination is symmetric under swapping arguments
        level = 3
        for a1, a2 in [(1, 2), (1, 1), (2, 2)]:
            def symmetric(x, y):
                return (li((1, 1), (x, y), level).value
                        + li((1, 1), (y, x), level).value
                        + li((2,), ((x + y) % level,), level).value)
            assert abs(symmetric(a1, a2) - symmetric(a2, a1)) < 1e-12

    def test_low_precision_flag(self):
        result = polylog_numeric(PolylogQuery((2,), (0,), 1, 200_000,
                                              tolerance=1e-30))
        assert result.low_precision


class TestZcEval:
    def test_zeta_two(self):
        G1 = NumericZMap(1).group
        word = (X0, G1.identity())
        assert abs(zc_eval(1, word) - math.pi ** 2 / 6) < 1e-6

    def test_level_two_letter(self):
        G = NumericZMap(2).group
        word = (X0, G.element(1))
        assert abs(zc_eval(2, word) - (-math.pi ** 2 / 12)) < 1e-6

    def test_depth_two_argument_twist(self):
        # x_{e1} x_{e2} evaluates with second argument e2 - e1
        level = 4
        G = NumericZMap(4).group
        e1, e2 = G.element(1), G.element(3)
        direct = li((1, 1), (1, 2), level).value  # (e1, e2 - e1)
        assert abs(zc_eval(level, (e1, e2)) - direct) < 1e-9

    def test_rejects_divergent_word(self):
        G = NumericZMap(2).group
        with pytest.raises(NotInH0Error):
            zc_eval(2, (G.identity(),))
        with pytest.raises(NotInH0Error):
            zc_eval(2, (G.element(1), X0))

    def test_word_to_query_convergence_matches_membership(self):
        G = NumericZMap(2).group
        q = word_to_query((X0, G.identity()), 2)
        assert q.indices == (2,) and q.residues == (0,)

    def test_zmap_caches(self):
        Z = NumericZMap(2, cutoff=50_000)
        w = (X0, Z.group.element(1))
        first = Z.eval_word(w)
        assert Z._cache[w].value == first


class TestIdentitySuites:
    def test_weight_two_level_three(self):
        report = numeric_relation_suite(3, 2, tolerance=1e-5)
        assert report.rows and report.passed
        assert report.max_residual < 1e-5
        kinds = {row.kind for row in report.rows}
        assert kinds == {"fds", "dist"}

    def test_distribution_level_two(self):
        report = numeric_relation_suite(2, 2, tolerance=1e-6)
        dist_rows = [r for r in report.rows if r.kind == "dist"]
        assert dist_rows
        assert all(r.residual < 1e-6 for r in dist_rows)

    def test_level_one_distribution_empty(self):
        report = numeric_relation_suite(1, 2, tolerance=1e-5)
        assert all(r.kind == "fds" for r in report.rows)
        assert report.passed

    def test_scalar_distribution_instance(self):
        # Li2(1) = 2 (Li2(1) + Li2(-1))
        lhs = li([2], [0], 2).value
        rhs = 2 * (li([2], [0], 2).value + li([2], [1], 2).value)
        assert abs(lhs - rhs) < 1e-6


class TestNumericCorrectionSeries:
    def test_gamma_coefficient_is_half_zeta_two(self):
        # at level one the u^2 coefficient of the comparison series is zeta(2)/2
        from cyclozeta.regularization import gamma_series
        Z = NumericZMap(1)
        gs = gamma_series(Z, 2)
        assert abs(gs.forward_coeffs[2] - 0.8224670) < 1e-6
        assert abs(gs.inverse_coeffs[2] + 0.8224670) < 1e-6

    def test_phi_star_weight_two_coefficient(self):
        from cyclozeta.dmr import phi_from_Z, phi_star
        Z = NumericZMap(1)
        star = phi_star(phi_from_Z(Z, 2))
        coeff = star.coeff(((2, Z.group.identity()),))
        assert abs(coeff - math.pi ** 2 / 6) < 1e-6


class TestHigherWeightAnchor:
    def test_weight_five_duality(self):
        # the nested sum with indices (2,1,1,1) at argument one equals the
        # depth-one weight-five value
        lhs = li((2, 1, 1, 1), (0, 0, 0, 0), 1).value
        rhs = li((5,), (0,), 1).value
        assert abs(lhs - rhs) < 1e-7

    def test_cutoff_floor_scales_with_level(self):
        from cyclozeta.errors import InvalidArgumentError
        with pytest.raises(InvalidArgumentError):
            PolylogQuery((2,), (0,), 500, cutoff=2000)


class TestExternalCrossCheck:
    def test_depth_one_against_mpmath(self):
        mpmath = pytest.importorskip("mpmath")
        cases = [(2, 1, 4), (2, 1, 3), (3, 1, 4), (2, 1, 6)]
        for k, a, level in cases:
            z = complex(mpmath.e ** (2j * mpmath.pi * a / level))
            reference = complex(mpmath.polylog(k, z))
            engine = li((k,), (a,), level).value
            assert abs(engine - reference) < 1e-9
