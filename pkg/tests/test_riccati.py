"""Time-dependent Riccati pipeline: transform, consistency check, superposition."""

import pytest

from liesuper.odeint import ConstraintViolation, integrate
from liesuper.riccati import (
    build_riccati,
    superpose_riccati,
    transform_state,
    transformed_rhs_check,
    untransform_state,
)
from liesuper.superpose import SuperposeProblem, reconstruct

from conftest import sample_generic_ics

A0, A1, A2, A3 = "0.1*cos(t)", "0.2", "0.1*sin(t)", "(1 + 0.1*sin(t))^2"
WINDOW = (0.0, 0.8)


def coeffs():
    return build_riccati(A0, A1, A2, A3, interval=WINDOW)


def grid(n=81):
    t0, t1 = WINDOW
    return [t0 + (t1 - t0) * i / (n - 1) for i in range(n)]


class TestBuild:
    def test_derived_damping(self):
        c = coeffs()
        # at t = 0: a3 = 1, a3' = 0.2, a2 = 0 -> b0 = -0.1, b1 = 3
        assert c.b0.eval(0.0) == pytest.approx(-0.1, rel=1e-12)
        assert c.b1.eval(0.0) == pytest.approx(3.0, rel=1e-12)

    def test_constraints_enforced(self):
        with pytest.raises(ConstraintViolation):
            build_riccati("0", "0", "0", "2 + t", interval=WINDOW)
        with pytest.raises(ConstraintViolation):
            build_riccati("0", "0", "0", "1 - 2*t^2", interval=(0.0, 1.0))


class TestTransform:
    def test_identity_at_t0(self):
        c = coeffs()
        s = (0.3, -0.2)
        assert transform_state(c, 0.0, s) == s  # a3(0) = 1, bit for bit

    def test_inverse(self):
        c = coeffs()
        for t in (0.1, 0.4, 0.75):
            s = (0.37, -1.21)
            back = untransform_state(c, t, transform_state(c, t, s))
            assert back[0] == s[0]
            assert back[1] == pytest.approx(s[1], rel=1e-14)

    def test_positions_untouched(self):
        c = coeffs()
        assert transform_state(c, 0.5, (1.7, 0.3))[0] == 1.7


class TestTransformedRhs:
    def test_chain_rule_identity(self):
        report = transformed_rhs_check(coeffs())
        assert report.passed
        worst = float(report.records[0].computed)
        assert worst <= 1e-10

    def test_negative_control_dropped_derivative_term(self):
        # replacing b0 by just a2/sqrt(a3) (no -a3'/(2 a3) term) must break
        # the push-forward identity by a visible margin
        c = coeffs()
        from liesuper.coeffexpr import Sqrt

        wrong_b0 = c.a2 / Sqrt(c.a3)
        report = transformed_rhs_check(c, b0_override=wrong_b0)
        worst = float(report.records[0].computed)
        assert worst > 1e-3


class TestSuperposeRiccati:
    def test_round_trip(self):
        c = coeffs()
        sys = c.system()
        g = grid(81)
        ics = sample_generic_ics(21, 5)
        trajs = [integrate(sys, ic, 0.0, g, 1e-10) for ic in ics]
        result = superpose_riccati(c, trajs[:4], target=trajs[4].states[0])
        err = max(
            max(abs(a[0] - b[0]), abs(a[1] - b[1]))
            for a, b in zip(result.trajectory.states, trajs[4].states)
        )
        assert err < 1e-6

    def test_a3_one_bit_matches_time_independent_path(self):
        c = build_riccati("0", "0", "0", "1", interval=(0.0, 1.0))
        sys = c.system()
        g = [i / 60 for i in range(61)]
        ics = sample_generic_ics(33, 5)
        trajs = [integrate(sys, ic, 0.0, g, 1e-10) for ic in ics]
        via_riccati = superpose_riccati(c, trajs[:4], target=trajs[4].states[0])
        direct = reconstruct(
            SuperposeProblem(trajs[:4], target=trajs[4].states[0])
        )
        assert via_riccati.trajectory.states == direct.trajectory.states
        assert via_riccati.lam1 == direct.lam1
        assert via_riccati.lam2 == direct.lam2
