"""Incremental fit state: zones, classification, and the re-fit update."""

import math

import pytest
from hypothesis import given, strategies as st

from trajsimp.datagen import gen_stepwise_adversarial
from trajsimp.fitting import (
    K_CAP_LIMIT,
    Classification,
    FitConfig,
    FitState,
    classify,
    first_active_threshold,
    fit_step,
    zone_index,
)
from trajsimp.geometry import Point


def cfg_with(zeta=4.0, **kw):
    base = dict(opt1=False, opt2=True, opt3=True, opt4=True, opt5=True)
    base.update(kw)
    return FitConfig(zeta=zeta, **base)


def seeded_state(cfg):
    """Anchor at the origin, first active point (2, 0): with zeta=4 the
    fitted line is (length 2, theta 0) sitting in zone 1."""
    state = FitState(Point(0.0, 0.0, 0.0))
    assert fit_step(state, Point(2.0, 0.0, 1.0), cfg) is state
    assert state.fit_len == 2.0
    assert state.fit_theta == 0.0
    assert state.last_zone == 1
    return state


class TestFitConfig:
    def test_defaults(self):
        cfg = FitConfig(zeta=1.0)
        assert cfg.k_cap == K_CAP_LIMIT
        assert cfg.opt1 and cfg.opt2 and cfg.opt3 and cfg.opt4 and cfg.opt5
        assert cfg.gamma_m == pytest.approx(math.pi / 3)

    @pytest.mark.parametrize("zeta", [0.0, -1.0, math.inf, math.nan])
    def test_bad_zeta(self, zeta):
        with pytest.raises(ValueError):
            FitConfig(zeta=zeta)

    @pytest.mark.parametrize("k_cap", [0, -5, K_CAP_LIMIT + 1])
    def test_bad_k_cap(self, k_cap):
        with pytest.raises(ValueError):
            FitConfig(zeta=1.0, k_cap=k_cap)

    def test_k_cap_limit_itself_is_fine(self):
        FitConfig(zeta=1.0, k_cap=K_CAP_LIMIT)
        FitConfig(zeta=1.0, k_cap=1)

    @pytest.mark.parametrize("gm", [-0.1, math.pi + 0.1, math.nan])
    def test_bad_gamma(self, gm):
        with pytest.raises(ValueError):
            FitConfig(zeta=1.0, gamma_m=gm)

    def test_bad_parallel_tol(self):
        with pytest.raises(ValueError):
            FitConfig(zeta=1.0, parallel_tol=0.0)


def test_first_active_threshold_toggles_on_opt1():
    assert first_active_threshold(FitConfig(zeta=8.0, opt1=True)) == 8.0
    assert first_active_threshold(FitConfig(zeta=8.0, opt1=False)) == 2.0


class TestZoneIndex:
    def test_known_value(self):
        assert zone_index(math.sqrt(17.0), 4.0) == 2

    def test_zone_boundaries_are_half_open_above(self):
        # zone j ends at (j + 1/2) * zeta / 2, inclusive
        assert zone_index(0.75, 1.0) == 1
        assert zone_index(0.75 + 1e-6, 1.0) == 2
        assert zone_index(0.25, 1.0) == 0
        assert zone_index(0.25 + 1e-6, 1.0) == 1

    def test_snap_absorbs_float_noise(self):
        # a radius lying one ulp above a boundary must not jump a zone
        assert zone_index(0.75 * (1.0 + 1e-15), 1.0) == 1

    def test_never_negative(self):
        assert zone_index(0.0, 1.0) == 0

    @given(
        st.floats(min_value=1e-6, max_value=1e6),
        st.floats(min_value=1e-3, max_value=1e3),
    )
    def test_partition_property(self, r, zeta):
        j = zone_index(r, zeta)
        half = 0.5 * zeta
        slack = 1e-9 * max(r, zeta)
        assert j >= 0
        assert r > (j - 0.5) * half - slack
        assert r <= (j + 0.5) * half + slack


class TestClassify:
    def test_inactive_inside_first_active_radius(self):
        cfg = FitConfig(zeta=4.0)  # opt1 on: threshold is zeta itself
        state = FitState(Point(0.0, 0.0))
        assert classify(state, Point(2.0, 0.0, 1.0), cfg) is Classification.INACTIVE
        cfg_off = cfg_with()
        assert classify(state, Point(2.0, 0.0, 1.0), cfg_off) is Classification.ACTIVE

    def test_classify_is_pure(self):
        cfg = cfg_with()
        state = seeded_state(cfg)
        before = (
            state.fit_len,
            state.fit_theta,
            state.points_in_segment,
            state.d_plus_max,
            state.d_minus_max,
            state.last_zone,
        )
        classify(state, Point(4.0, 1.0, 2.0), cfg)
        classify(state, Point(2.0, 3.0, 2.0), cfg)
        after = (
            state.fit_len,
            state.fit_theta,
            state.points_in_segment,
            state.d_plus_max,
            state.d_minus_max,
            state.last_zone,
        )
        assert before == after

    def test_break_depends_on_opt2(self):
        # deviation 3 with zeta 4: the per-point test d <= zeta/2 fails,
        # the two-sided test d_plus + d_minus <= zeta does not
        p = Point(2.0, 3.0, 2.0)
        state = seeded_state(cfg_with(opt2=False))
        assert classify(state, p, cfg_with(opt2=False)) is Classification.BREAK
        state = seeded_state(cfg_with(opt2=True))
        assert classify(state, p, cfg_with(opt2=True)) is Classification.ACTIVE

    def test_k_cap_forces_break(self):
        cfg = FitConfig(zeta=1.0, k_cap=1)
        state = FitState(Point(0.0, 0.0))
        fit_step(state, Point(0.1, 0.0, 1.0), cfg)
        assert state.points_in_segment == 1
        assert classify(state, Point(0.2, 0.0, 2.0), cfg) is Classification.BREAK


class TestFitStep:
    def test_first_active_point_snaps_to_radial_bearing(self):
        cfg = cfg_with()
        state = FitState(Point(0.0, 0.0))
        fit_step(state, Point(3.0, 3.0, 1.0), cfg)
        r = math.hypot(3.0, 3.0)
        assert state.fit_theta == pytest.approx(math.pi / 4)
        assert state.last_zone == zone_index(r, 4.0)
        assert state.fit_len == state.last_zone * 2.0
        assert state.ra_len == pytest.approx(r)
        assert state.last_active == Point(3.0, 3.0, 1.0)

    def test_refit_rotates_by_scaled_arcsin(self):
        # opt3/opt4 off: theta steps by asin(d / (j*zeta/2)) / j
        cfg = cfg_with(opt3=False, opt4=False)
        state = seeded_state(cfg)
        fit_step(state, Point(4.0, 1.0, 2.0), cfg)
        assert state.fit_len == 4.0
        assert state.last_zone == 2
        assert state.fit_theta == pytest.approx(0.12634012757103932, abs=1e-15)
        assert state.last_active == Point(4.0, 1.0, 2.0)

    def test_inactive_point_updates_extremes_only(self):
        cfg = cfg_with()
        state = seeded_state(cfg)
        fit_step(state, Point(2.5, 1.0, 2.0), cfg)
        assert state.fit_len == 2.0 and state.fit_theta == 0.0
        assert state.points_in_segment == 2
        assert state.d_plus_max == pytest.approx(1.0)
        assert state.d_minus_max == 0.0
        assert state.last_active == Point(2.0, 0.0, 1.0)

    def test_opt3_cap_limits_the_borrowed_extreme(self):
        # an inactive point parks d_plus_max at 1.0; the next active point
        # has raw deviation 0.4, so opt3 borrows the extreme but the cap
        # holds the step to the full-weight angle of the raw deviation
        for opt3, expect in ((True, 0.1001674211615598), (False, 0.0500837105807799)):
            cfg = cfg_with(opt3=opt3, opt4=False)
            state = seeded_state(cfg)
            fit_step(state, Point(2.5, 1.0, 2.0), cfg)
            fit_step(state, Point(4.0, 0.4, 3.0), cfg)
            assert state.fit_theta == pytest.approx(expect, abs=1e-15), opt3

    def test_opt4_scales_by_zones_skipped(self):
        # jump straight from zone 1 to zone 4: opt4 multiplies the step by 3
        cfg_on = cfg_with(opt3=False, opt4=True)
        state = seeded_state(cfg_on)
        fit_step(state, Point(8.0, 1.0, 2.0), cfg_on)
        th_on = state.fit_theta
        cfg_off = cfg_with(opt3=False, opt4=False)
        state = seeded_state(cfg_off)
        fit_step(state, Point(8.0, 1.0, 2.0), cfg_off)
        assert state.last_zone == 4
        assert th_on == pytest.approx(3.0 * state.fit_theta, rel=1e-12)

    def test_breaking_point_raises_and_leaves_state_alone(self):
        cfg = cfg_with(opt2=False)
        state = seeded_state(cfg)
        with pytest.raises(ValueError):
            fit_step(state, Point(2.0, 3.0, 2.0), cfg)
        assert state.points_in_segment == 1
        assert state.fit_len == 2.0 and state.fit_theta == 0.0


def test_stepwise_spiral_structure():
    """With every shortcut off, spiral point i is active in zone i and the
    fitted direction drifts one asin((1 - 1e-8)/i)/i notch per step."""
    k = 200
    traj = gen_stepwise_adversarial(k, zeta=1.0)
    assert len(traj) == k + 1
    cfg = FitConfig(
        zeta=1.0, opt1=False, opt2=False, opt3=False, opt4=False, opt5=False
    )
    state = FitState(traj[0])
    fit_step(state, traj[1], cfg)
    theta_1 = state.fit_theta
    assert theta_1 == 0.0
    assert state.last_zone == 1
    for i, p in enumerate(traj[2:], start=2):
        assert classify(state, p, cfg) is Classification.ACTIVE, i
        fit_step(state, p, cfg)
        assert state.last_zone == i
    drift = abs(state.fit_theta - theta_1)
    closed = sum(math.asin(1.0 / i) / i for i in range(2, k + 1))
    # the generator's 1e-8 boundary inset shaves a hair off every step
    assert drift == pytest.approx(closed, abs=2e-8)
