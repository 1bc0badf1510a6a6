"""Closed-form upper bounds and their sharpness identities."""

import math

import pytest

from tailmax.bounds import hoeffding_bound, hs_bound, markov_bound, report
from tailmax.distcore import Problem
from tailmax.exact2 import RegionN2, solve


class TestMarkov:
    def test_worked_value(self):
        assert markov_bound(0.5, 0.25) == pytest.approx(2.0 / 3.0, abs=1e-15)

    def test_t_zero(self):
        assert markov_bound(0.3, 0.0) == pytest.approx(0.7, abs=1e-15)

    def test_domain(self):
        with pytest.raises(ValueError):
            markov_bound(0.5, 0.5)
        with pytest.raises(ValueError):
            markov_bound(1.0, 0.2)
        with pytest.raises(ValueError):
            markov_bound(0.5, -0.1)

    def test_is_sharp_for_one_draw(self):
        # attained by mass (1-pi) at t and pi at 1 with mean m
        m, t = 0.62, 0.31
        pi = (m - t) / (1.0 - t)
        assert 1.0 - pi == pytest.approx(markov_bound(m, t), abs=1e-15)


class TestHoeffding:
    def test_frozen_values(self):
        # independently computed from ((1-m)/(1-t/n))^(n-t) * (m/(t/n))^t
        assert hoeffding_bound(Problem(n=2, m=0.6, t=0.6)) == pytest.approx(
            0.6924122285196149, abs=1e-15
        )
        assert hoeffding_bound(Problem(n=1, m=0.5, t=0.25)) == pytest.approx(
            0.8773826753016616, abs=1e-15
        )

    def test_t_zero_limit(self):
        assert hoeffding_bound(Problem(n=3, m=0.5, t=0.0)) == pytest.approx(
            0.125, abs=1e-15
        )

    def test_trivial_rejected(self):
        with pytest.raises(ValueError):
            hoeffding_bound(Problem(n=2, m=0.4, t=0.8))

    def test_dominates_markov(self):
        for m, t in [(0.5, 0.25), (0.62, 0.31), (0.9, 0.1)]:
            assert markov_bound(m, t) <= hoeffding_bound(Problem(n=1, m=m, t=t)) + 1e-12

    def test_in_unit_interval(self):
        for m in (0.1, 0.5, 0.9):
            for frac in (0.1, 0.5, 0.9):
                p = Problem(n=3, m=m, t=3 * m * frac)
                assert 0.0 <= hoeffding_bound(p) <= 1.0


class TestHsBound:
    def test_branch_values(self):
        # c = 2.5 -> middle, c = 4 -> outer, c = 2 -> boundary
        assert hs_bound(0.4, 0.5) == pytest.approx(0.64, abs=1e-15)
        assert hs_bound(0.8, 1.2) == pytest.approx(0.4375, abs=1e-15)
        assert hs_bound(0.25, 0.5) == 1.0

    def test_frozen_values(self):
        assert hs_bound(0.6, 0.6) == pytest.approx(0.489795918367347, abs=1e-15)
        assert hs_bound(0.9, 1.7) == pytest.approx(0.5555555555555554, abs=1e-14)

    def test_continuity_at_branch_points(self):
        # c = 2: pick t -> 2m; c = 5/2: solve (2-t)/(1-m) = 5/2
        m = 0.4
        t_at_2 = 2.0 * m
        below = hs_bound(m, t_at_2 - 1e-9)
        assert abs(below - 1.0) <= 1e-8
        t_at_52 = 2.0 - 2.5 * (1.0 - m)
        left = hs_bound(m, t_at_52 - 1e-9)
        right = hs_bound(m, t_at_52 + 1e-9)
        assert abs(left - right) <= 1e-8
        assert hs_bound(m, t_at_52) == pytest.approx(0.64, abs=1e-12)

    def test_domain(self):
        with pytest.raises(ValueError):
            hs_bound(0.2, 0.5)
        with pytest.raises(ValueError):
            hs_bound(1.0, 0.5)

    def test_equals_exact2_on_half_t_one_region(self):
        # middle branch 4/c^2 is the {t/2, 1} closed form; the identity
        # needs 5m <= 2t+1 so that the branch actually applies
        for m, t in [(0.4, 0.5), (0.3, 0.4), (0.45, 0.7), (0.45, 0.75)]:
            r = solve(Problem(n=2, m=m, t=t))
            assert r.maximizers[0][0] is RegionN2.HALF_T_ONE
            assert abs(hs_bound(m, t) - r.value) <= 1e-12

    def test_equals_exact2_on_tminus1_one_region(self):
        # outer branch 2/c - 1/c^2 is the {t-1, 1} closed form
        for m, t in [(0.8, 1.2), (0.9, 1.3), (0.95, 1.6), (0.85, 1.1)]:
            r = solve(Problem(n=2, m=m, t=t))
            assert r.maximizers[0][0] is RegionN2.TMINUS1_ONE
            assert abs(hs_bound(m, t) - r.value) <= 1e-12

    def test_dominates_exact2(self):
        for i in range(1, 20):
            m = i / 20.0
            for j in range(1, 20):
                t = 2.0 * m * j / 20.0
                r = solve(Problem(n=2, m=m, t=t))
                assert r.value <= hs_bound(m, t) + 1e-12


class TestReport:
    def test_n1_has_markov(self):
        rep = report(Problem(n=1, m=0.5, t=0.25))
        assert rep.markov == pytest.approx(2.0 / 3.0, abs=1e-15)
        assert rep.hs is None

    def test_n2_has_hs(self):
        rep = report(Problem(n=2, m=0.6, t=0.6))
        assert rep.hs == pytest.approx(0.489795918367347, abs=1e-15)
        assert rep.markov is None

    def test_n3_only_hoeffding(self):
        rep = report(Problem(n=3, m=0.5, t=0.9))
        assert rep.markov is None and rep.hs is None
        assert math.isfinite(rep.hoeffding)

    def test_trivial_rejected(self):
        with pytest.raises(ValueError):
            report(Problem(n=2, m=0.3, t=0.9))
