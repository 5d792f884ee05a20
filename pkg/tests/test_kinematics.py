import math

import numpy as np
import pytest

from aeromesh import (
    PlatformSpec,
    Scenario,
    ScenarioError,
    TimeInterval,
    pair_distance,
    pair_distance_extrema,
    position_at,
)
from aeromesh.kinematics import pair_distance_squared

TWO_PI = 2.0 * math.pi


def make(id="p", cx=0.0, cy=0.0, alt=0.0, r=1.0, omega=1.0, phase=0.0):
    return PlatformSpec(id, cx, cy, alt, r, omega, phase)


class TestPlatformSpec:
    def test_phase_normalized(self):
        p = make(phase=TWO_PI + 1.25)
        assert p.initial_phase == pytest.approx(1.25, abs=1e-12)
        assert 0.0 <= make(phase=-0.5).initial_phase < TWO_PI

    def test_speed_is_derived(self):
        assert make(r=3.0, omega=-2.0).speed == 6.0

    @pytest.mark.parametrize("bad", [0.0, -1.0])
    def test_radius_must_be_positive(self, bad):
        with pytest.raises(ScenarioError):
            make(r=bad)

    def test_omega_must_be_finite(self):
        with pytest.raises(ScenarioError):
            make(omega=math.inf)

    def test_scenario_rejects_duplicate_ids(self):
        with pytest.raises(ScenarioError):
            Scenario((make("a"), make("a", cx=5.0)), 0.0, 1.0, 2.0)

    def test_scenario_rejects_bad_window_and_threshold(self):
        with pytest.raises(ScenarioError):
            Scenario((make("a"),), 2.0, 1.0, 2.0)
        with pytest.raises(ScenarioError):
            Scenario((make("a"),), 0.0, 1.0, 0.0)


class TestPositionAt:
    def test_phase_zero_start(self):
        p = make(omega=math.pi / 2)
        assert position_at(p, 0.0) == pytest.approx((1.0, 0.0, 0.0))

    def test_quarter_turn(self):
        p = make(omega=math.pi / 2)
        assert position_at(p, 1.0) == pytest.approx((0.0, 1.0, 0.0), abs=1e-12)

    def test_polar_center_ingestion(self):
        # center at polar (15, pi/3) = (7.5, 12.990381056766578)
        p = PlatformSpec.from_polar_center("i", 15.0, math.pi / 3, 0.0, 1.0, 1.0, 0.0)
        x, y, z = position_at(p, 0.0)
        assert x == pytest.approx(8.5, abs=1e-12)
        assert y == pytest.approx(12.990381056766578, abs=1e-12)
        assert z == 0.0


def oscillating_pair():
    """Centers 10 apart, r=2, opposite phases: s(t) = sqrt(116 - 80 cos t)."""
    p = make("a", 0.0, 0.0, 0.0, 2.0, 1.0, 0.0)
    q = make("b", 10.0, 0.0, 0.0, 2.0, 1.0, math.pi)
    return p, q


class TestPairDistance:
    def test_identical_specs_coincide(self):
        p = make("a", 3.0, -2.0, 7.0, 2.5, 0.7, 1.1)
        q = make("b", 3.0, -2.0, 7.0, 2.5, 0.7, 1.1)
        for t in np.linspace(-5.0, 20.0, 17):
            assert pair_distance(p, q, float(t)) == pytest.approx(0.0, abs=1e-12)

    def test_antipodal_concentric_constant(self):
        p = make("a", r=3.0, omega=0.4, phase=0.2)
        q = make("b", r=3.0, omega=0.4, phase=0.2 + math.pi)
        for t in np.linspace(0.0, 40.0, 23):
            assert pair_distance(p, q, float(t)) == pytest.approx(6.0, abs=1e-9)

    def test_matches_closed_form(self):
        p, q = oscillating_pair()
        assert pair_distance(p, q, 0.0) == pytest.approx(6.0)
        assert pair_distance(p, q, math.pi) == pytest.approx(14.0)
        for t in np.linspace(0.0, TWO_PI, 41):
            expected = math.sqrt(116.0 - 80.0 * math.cos(float(t)))
            assert pair_distance(p, q, float(t)) == pytest.approx(expected, rel=1e-12)

    def test_symmetry_and_altitude(self):
        p = make("a", alt=10.0, r=2.0, omega=0.3)
        q = make("b", cx=4.0, alt=30.0, r=1.0, omega=-0.8, phase=2.0)
        for t in (0.0, 1.7, 9.2):
            assert pair_distance(p, q, t) == pair_distance(q, p, t)
        # coincident horizontally at t=0 except phase/radius: altitude floor
        assert pair_distance(p, q, 0.0) >= 20.0


class TestExtrema:
    def test_antipodal_constant(self):
        p = make("a", r=3.0, omega=0.4)
        q = make("b", r=3.0, omega=0.4, phase=math.pi)
        lo, hi = pair_distance_extrema(p, q, TimeInterval(0.0, 50.0))
        assert lo == pytest.approx(6.0, abs=1e-9)
        assert hi == pytest.approx(6.0, abs=1e-9)

    def test_oscillating_full_period(self):
        p, q = oscillating_pair()
        lo, hi = pair_distance_extrema(p, q, TimeInterval(0.0, TWO_PI))
        assert lo == pytest.approx(6.0, abs=1e-6)
        assert hi == pytest.approx(14.0, abs=1e-6)

    def test_equal_specs(self):
        p = make("a", r=2.0)
        q = make("b", r=2.0)
        lo, hi = pair_distance_extrema(p, q, TimeInterval(0.0, 10.0))
        assert (lo, hi) == (0.0, 0.0)

    def test_partial_window_misses_global_max(self):
        p, q = oscillating_pair()
        lo, hi = pair_distance_extrema(p, q, TimeInterval(0.0, 1.0))
        assert lo == pytest.approx(6.0, abs=1e-9)  # t=0 endpoint
        assert hi == pytest.approx(math.sqrt(116.0 - 80.0 * math.cos(1.0)), abs=1e-9)


def random_platform(rng, id):
    return PlatformSpec(
        id=id,
        center_x=float(rng.uniform(-30, 30)),
        center_y=float(rng.uniform(-30, 30)),
        altitude=float(rng.uniform(0, 8)),
        orbit_radius=float(rng.uniform(0.5, 8.0)),
        angular_velocity=float(rng.uniform(-1.5, 1.5)),
        initial_phase=float(rng.uniform(0, TWO_PI)),
    )


class TestInvariants:
    def test_translation_invariance(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            p = random_platform(rng, "a")
            q = random_platform(rng, "b")
            dx, dy = rng.uniform(-100, 100, 2)
            p2 = PlatformSpec("a", p.center_x + dx, p.center_y + dy, p.altitude,
                              p.orbit_radius, p.angular_velocity, p.initial_phase)
            q2 = PlatformSpec("b", q.center_x + dx, q.center_y + dy, q.altitude,
                              q.orbit_radius, q.angular_velocity, q.initial_phase)
            for t in rng.uniform(-10, 10, 8):
                d1 = pair_distance(p, q, float(t))
                d2 = pair_distance(p2, q2, float(t))
                assert d2 == pytest.approx(d1, rel=1e-9, abs=1e-9)

    def test_common_phase_shift_equals_time_shift(self):
        # For platforms sharing omega, adding delta to both phases is the
        # same as evaluating delta/omega later.
        rng = np.random.default_rng(8)
        for _ in range(20):
            omega = float(rng.uniform(0.2, 2.0))
            p = random_platform(rng, "a")
            q = random_platform(rng, "b")
            p = PlatformSpec("a", p.center_x, p.center_y, p.altitude, p.orbit_radius,
                             omega, p.initial_phase)
            q = PlatformSpec("b", q.center_x, q.center_y, q.altitude, q.orbit_radius,
                             omega, q.initial_phase)
            delta = float(rng.uniform(0, TWO_PI))
            p_shift = PlatformSpec("a", p.center_x, p.center_y, p.altitude,
                                   p.orbit_radius, omega, p.initial_phase + delta)
            q_shift = PlatformSpec("b", q.center_x, q.center_y, q.altitude,
                                   q.orbit_radius, omega, q.initial_phase + delta)
            for t in rng.uniform(0, 10, 6):
                assert pair_distance(p_shift, q_shift, float(t)) == pytest.approx(
                    pair_distance(p, q, float(t) + delta / omega), rel=1e-9, abs=1e-9
                )

    def test_shared_rate_periodicity(self):
        rng = np.random.default_rng(9)
        for _ in range(20):
            omega = float(rng.uniform(0.1, 2.0))
            r = float(rng.uniform(0.5, 5.0))
            p = PlatformSpec("a", *rng.uniform(-20, 20, 2), 0.0, r, omega,
                             float(rng.uniform(0, TWO_PI)))
            q = PlatformSpec("b", *rng.uniform(-20, 20, 2), 0.0, r, omega,
                             float(rng.uniform(0, TWO_PI)))
            period = TWO_PI / omega
            for t in rng.uniform(0, 30, 6):
                assert pair_distance(p, q, float(t) + period) == pytest.approx(
                    pair_distance(p, q, float(t)), rel=1e-9, abs=1e-9
                )

    def test_agrees_with_trigonometric_expansion(self):
        # Independent oracle: law-of-cosines expansion of |R_i - R_j|^2 in
        # the polar decomposition (orbit-center vector + rotating vector).
        rng = np.random.default_rng(10)
        for _ in range(30):
            p = random_platform(rng, "a")
            q = random_platform(rng, "b")
            rc_i = math.hypot(p.center_x, p.center_y)
            al_i = math.atan2(p.center_y, p.center_x)
            rc_j = math.hypot(q.center_x, q.center_y)
            al_j = math.atan2(q.center_y, q.center_x)
            for t in rng.uniform(-5, 15, 8):
                t = float(t)
                bi = p.initial_phase + p.angular_velocity * t
                bj = q.initial_phase + q.angular_velocity * t
                ri, rj = p.orbit_radius, q.orbit_radius
                s2 = (
                    rc_i**2 + ri**2 + 2 * rc_i * ri * math.cos(bi - al_i)
                    + rc_j**2 + rj**2 + 2 * rc_j * rj * math.cos(bj - al_j)
                    - 2 * (
                        rc_i * rc_j * math.cos(al_i - al_j)
                        + ri * rj * math.cos(bi - bj)
                        + rc_i * rj * math.cos(al_i - bj)
                        + rc_j * ri * math.cos(al_j - bi)
                    )
                    + (p.altitude - q.altitude) ** 2
                )
                got = float(pair_distance_squared(p, q, np.array([t]))[0])
                assert got == pytest.approx(s2, rel=1e-9, abs=1e-9)
