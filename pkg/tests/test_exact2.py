"""Two-draw closed-form solver: values, regions, maximizers, ties."""

import math

import pytest

from tailmax.distcore import Problem, cdf_at, iid_sum, mean
from tailmax.exact2 import RegionN2, m1_curve, solve


def _direct_value(dist, n, t):
    return cdf_at(iid_sum(dist, n), t)


class TestFrozenValues:
    def test_zero_t_region(self):
        r = solve(Problem(n=2, m=0.9, t=0.95))
        assert r.value == pytest.approx(0.10249307479224368, abs=1e-15)
        assert [reg for reg, _ in r.maximizers] == [RegionN2.ZERO_T]

    def test_zero_t_one_region(self):
        r = solve(Problem(n=2, m=0.85, t=0.9))
        assert r.value == pytest.approx(0.11842105263157901, abs=1e-15)
        assert [reg for reg, _ in r.maximizers] == [RegionN2.ZERO_T_ONE]
        # closed-form weights 1.5/19, 13.5/19, 4/19
        (x0, w0), (x1, w1), (x2, w2) = r.maximizers[0][1].atoms
        assert (x0, x1, x2) == (0.0, 0.9, 1.0)
        assert w0 == pytest.approx(1.5 / 19.0, abs=1e-12)
        assert w1 == pytest.approx(13.5 / 19.0, abs=1e-12)
        assert w2 == pytest.approx(4.0 / 19.0, abs=1e-12)

    def test_tminus1_one_region(self):
        r = solve(Problem(n=2, m=0.9, t=1.2))
        assert r.value == pytest.approx(0.234375, abs=1e-14)
        assert [reg for reg, _ in r.maximizers] == [RegionN2.TMINUS1_ONE]

    def test_half_t_one_region(self):
        r = solve(Problem(n=2, m=0.4, t=0.5))
        assert r.value == pytest.approx(0.64, abs=1e-14)
        assert [reg for reg, _ in r.maximizers] == [RegionN2.HALF_T_ONE]
        assert r.maximizers[0][1].atoms[0][0] == pytest.approx(0.25, abs=1e-15)

    def test_mid_zero_t(self):
        r = solve(Problem(n=2, m=0.62, t=0.9))
        assert r.value == pytest.approx(0.5254320987654322, abs=1e-14)
        assert [reg for reg, _ in r.maximizers] == [RegionN2.ZERO_T]


class TestTrivialRegime:
    def test_point_mass_attains_one(self):
        r = solve(Problem(n=2, m=0.5, t=1.0))
        assert r.value == 1.0
        assert [reg for reg, _ in r.maximizers] == [RegionN2.TRIVIAL]
        assert r.maximizers[0][1].atoms == ((0.5, 1.0),)

    def test_above_boundary(self):
        r = solve(Problem(n=2, m=0.3, t=0.99))
        assert r.value == 1.0
        assert r.maximizers[0][0] is RegionN2.TRIVIAL


class TestTies:
    def test_tie_on_5m_eq_2t_plus_1(self):
        # 5m = 2t+1 at (0.8, 1.5): both branches reach 0.64
        r = solve(Problem(n=2, m=0.8, t=1.5))
        assert r.value == pytest.approx(0.64, abs=1e-14)
        regions = [reg for reg, _ in r.maximizers]
        assert regions == [RegionN2.HALF_T_ONE, RegionN2.TMINUS1_ONE]

    def test_tie_distributions_differ(self):
        r = solve(Problem(n=2, m=0.8, t=1.5))
        d1, d2 = (d for _, d in r.maximizers)
        assert d1.atoms[0][0] == pytest.approx(0.75, abs=1e-12)
        assert d2.atoms[0][0] == pytest.approx(0.5, abs=1e-12)


class TestM1Curve:
    def test_endpoint_values(self):
        assert m1_curve(0.8) == pytest.approx(16.0 / 25.0, abs=1e-14)
        assert m1_curve(1.0) == pytest.approx(3.0 / 5.0, abs=1e-14)

    def test_frozen_interior(self):
        assert m1_curve(0.9) == pytest.approx(0.5788511934118119, abs=1e-15)

    def test_domain(self):
        with pytest.raises(ValueError):
            m1_curve(0.5)
        with pytest.raises(ValueError):
            m1_curve(1.2)

    def test_crossing_property(self):
        # just below the curve {t/2,1} wins, just above {0,t} wins
        t = 0.9
        mc = m1_curve(t)
        below = solve(Problem(n=2, m=mc - 1e-3, t=t))
        above = solve(Problem(n=2, m=mc + 1e-3, t=t))
        assert below.maximizers[0][0] is RegionN2.HALF_T_ONE
        assert above.maximizers[0][0] is RegionN2.ZERO_T


class TestMaximizerConsistency:
    @pytest.mark.parametrize(
        "m,t",
        [
            (0.9, 0.95),
            (0.85, 0.9),
            (0.9, 1.2),
            (0.4, 0.5),
            (0.8, 1.5),
            (0.62, 0.9),
            (0.2, 0.1),
            (0.97, 1.93),
        ],
    )
    def test_direct_evaluation_matches(self, m, t):
        r = solve(Problem(n=2, m=m, t=t))
        for _, dist in r.maximizers:
            assert abs(_direct_value(dist, 2, t) - r.value) <= 1e-10

    @pytest.mark.parametrize(
        "m,t", [(0.9, 0.95), (0.85, 0.9), (0.9, 1.2), (0.4, 0.5), (0.8, 1.5)]
    )
    def test_maximizer_mean_and_mass(self, m, t):
        r = solve(Problem(n=2, m=m, t=t))
        for _, dist in r.maximizers:
            assert mean(dist) == pytest.approx(m, abs=1e-12)
            assert math.fsum(w for _, w in dist.atoms) == pytest.approx(1.0, abs=1e-12)


class TestDomain:
    def test_n_must_be_two(self):
        with pytest.raises(ValueError):
            solve(Problem(n=3, m=0.5, t=0.5))
        with pytest.raises(ValueError):
            solve(Problem(n=1, m=0.5, t=0.25))


class TestRegionGates:
    def test_zero_t_needs_high_t(self):
        # below t = 4/5 the {0,t} family never wins
        for m in (0.2, 0.4, 0.6):
            r = solve(Problem(n=2, m=m, t=0.7))
            assert r.maximizers[0][0] is not RegionN2.ZERO_T

    def test_three_point_needs_t_below_sqrt_m(self):
        # {0,t,1} gate: 4/5 <= t < sqrt(m)
        r = solve(Problem(n=2, m=0.85, t=0.9))
        assert 0.8 <= 0.9 < math.sqrt(0.85)

    def test_tminus1_needs_t_above_one(self):
        for m in (0.7, 0.9):
            r = solve(Problem(n=2, m=m, t=0.95))
            assert r.maximizers[0][0] is not RegionN2.TMINUS1_ONE

    def test_value_in_unit_interval(self):
        for i in range(1, 25):
            m = i / 25.0
            for j in range(1, 25):
                t = 2.0 * m * j / 25.0
                v = solve(Problem(n=2, m=m, t=t)).value
                assert 0.0 < v <= 1.0
