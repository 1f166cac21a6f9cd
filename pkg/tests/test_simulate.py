from dataclasses import replace

import numpy as np
import pytest

from domkit.lti import StateSpace, statespace_from_tf
from domkit.lti.catalog import chua_linear_part, three_pole_system
from domkit.simulate import (
    LureLoop,
    Trajectory,
    a_priori_state_bound,
    classify,
    classify_batch,
    equilibria,
    from_table,
    linear,
    recurrence_residual,
    simulate,
    simulate_batch,
    tanh_plus_linear,
    tanh_scaled,
    trajectory_frame,
    zero,
)
from domkit.utils.errors import BoundaryError, NumericsError


def _oscillator():
    return LureLoop(StateSpace([[0.0, 1.0], [-1.0, 0.0]], [[0.0], [0.0]], [[1.0, 0.0]]), zero())


def _bistable():
    return LureLoop(statespace_from_tf(three_pole_system(10, (2, 3, 5))), tanh_scaled(10, 10), feedback_sign=1)


def _limit_cycle():
    return LureLoop(statespace_from_tf(three_pole_system(1, (1, 2, 3))), tanh_scaled(10, 10))


def _trajectory(states, dt):
    states = np.asarray(states, dtype=float)
    times = dt * np.arange(len(states))
    return Trajectory(times, states, dt, states[:, 0], np.zeros(len(states)))


@pytest.mark.unit
def test_linear_decay():
    loop = LureLoop(StateSpace([[-1.0]], [[1.0]], [[1.0]]), zero())
    traj = simulate(loop, [1.0], 0.01, 1.0)
    assert len(traj) == 101
    assert traj.times[-1] == pytest.approx(1.0)
    assert traj.states[-1, 0] == pytest.approx(np.exp(-1.0), rel=1e-8)
    assert not traj.diverged


@pytest.mark.unit
def test_rk4_fourth_order():
    def error(dt):
        traj = simulate(_oscillator(), [1.0, 0.0], dt, 2.0)
        return np.linalg.norm(traj.states[-1] - [np.cos(2.0), -np.sin(2.0)])

    assert error(0.1) / error(0.05) >= 12


@pytest.mark.unit
def test_divergence_is_flagged():
    loop = LureLoop(StateSpace([[1.0]], [[1.0]], [[1.0]]), zero())
    traj = simulate(loop, [1.0], 0.1, 100.0)
    assert traj.diverged
    assert len(traj) < 1001
    assert np.all(np.isfinite(traj.states))
    assert classify(traj).kind == "diverged"


@pytest.mark.unit
def test_simulate_validation():
    loop = _oscillator()
    with pytest.raises(ValueError):
        simulate(loop, [1.0, 0.0], 0.0, 1.0)
    with pytest.raises(ValueError):
        simulate(loop, [1.0, 0.0], 0.1, 0.01)
    with pytest.raises(ValueError):
        simulate(loop, [1.0, 0.0, 0.0], 0.1, 1.0)
    with pytest.raises(ValueError):
        simulate(LureLoop(StateSpace([[-1.0]], [[1.0]], [[1.0]], [[1.0]]), zero()), [1.0], 0.1, 1.0)


@pytest.mark.unit
def test_lure_loop_validation():
    with pytest.raises(ValueError):
        LureLoop(_oscillator().linear, zero(), feedback_sign=0)
    with pytest.raises(ValueError):
        LureLoop(StateSpace(np.eye(2), np.eye(2), np.eye(2)), zero())


@pytest.mark.unit
def test_positive_feedback_as_negated_input():
    loop = _bistable()
    flipped = loop.as_negative_feedback()
    assert flipped.feedback_sign == -1
    np.testing.assert_allclose(flipped.linear.B, -loop.linear.B)
    X = np.random.default_rng(0).normal(size=(5, 3))
    np.testing.assert_allclose(flipped.vector_field(X), loop.vector_field(X))
    negative = _limit_cycle()
    assert negative.as_negative_feedback() is negative


@pytest.mark.unit
def test_batch_matches_single_runs():
    loop = _limit_cycle()
    X0 = np.array([[0.1, 0.0, 0.0], [-0.3, 0.2, 0.5]])
    batch = simulate_batch(loop, X0, 0.01, 2.0)
    for x0, traj in zip(X0, batch):
        single = simulate(loop, x0, 0.01, 2.0)
        np.testing.assert_allclose(traj.states, single.states, rtol=1e-12, atol=1e-12)
        np.testing.assert_allclose(traj.inputs, -loop.phi(traj.outputs))


@pytest.mark.unit
def test_equilibria_unique_for_negative_feedback():
    roots = equilibria(_limit_cycle())
    assert len(roots) == 1
    assert roots[0].u == pytest.approx(0.0, abs=1e-9)
    np.testing.assert_allclose(roots[0].x, 0.0, atol=1e-9)


@pytest.mark.unit
def test_equilibria_bistable():
    loop = _bistable()
    roots = equilibria(loop)
    assert len(roots) == 3
    ys = sorted(r.y for r in roots)
    assert ys[0] == pytest.approx(-3.3333, abs=0.01)
    assert ys[1] == pytest.approx(0.0, abs=1e-9)
    assert ys[2] == pytest.approx(3.3333, abs=0.01)
    for r in roots:
        np.testing.assert_allclose(loop.vector_field(r.x[None, :]), 0.0, atol=1e-9)


@pytest.mark.unit
def test_equilibria_pole_at_origin():
    loop = LureLoop(StateSpace([[0.0]], [[1.0]], [[1.0]]), tanh_scaled(1, 1))
    with pytest.raises(BoundaryError):
        equilibria(loop)


@pytest.mark.integration
def test_bistable_initial_conditions_settle():
    rng = np.random.default_rng(2024)
    directions = rng.normal(size=(20, 3))
    X0 = directions / np.linalg.norm(directions, axis=1, keepdims=True) * rng.uniform(0.5, 5.0, size=(20, 1))
    loop = _bistable()
    labels = classify_batch(simulate_batch(loop, X0, 0.01, 30.0))
    for label in labels:
        assert label.kind == "fixed_point"
        y = float(loop.output(label.witness[None, :])[0])
        assert abs(y) == pytest.approx(3.3333, abs=0.01)


@pytest.mark.integration
def test_limit_cycle_is_periodic():
    traj = simulate(_limit_cycle(), [0.1, 0.0, 0.0], 0.005, 60.0)
    label = classify(traj)
    assert label.kind == "periodic"
    assert label.period == pytest.approx(1.9, abs=0.01)
    assert label.residual < 1e-3 * label.diameter


@pytest.mark.unit
def test_classify_constant():
    label = classify(_trajectory(np.ones((2000, 2)), 0.01))
    assert label.kind == "fixed_point"
    np.testing.assert_allclose(label.witness, [1.0, 1.0])
    assert label.to_dict()["period"] is None


@pytest.mark.unit
def test_classify_sine():
    t = 0.01 * np.arange(4001)
    states = np.column_stack([np.sin(np.pi * t), np.cos(np.pi * t)])
    label = classify(_trajectory(states, 0.01))
    assert label.kind == "periodic"
    assert label.period == pytest.approx(2.0, abs=1e-3)
    assert recurrence_residual(states[2000:], 200.0) < 1e-9


@pytest.mark.unit
def test_classify_too_short():
    with pytest.raises(ValueError):
        classify(_trajectory(np.ones((1500, 2)), 0.01))


@pytest.mark.unit
def test_classify_noise_is_other():
    states = np.random.default_rng(5).normal(size=(4000, 2))
    assert classify(_trajectory(states, 0.01)).kind == "other"


@pytest.mark.integration
def test_a_priori_bound_holds():
    loop = _limit_cycle()
    x0 = np.array([0.5, -0.5, 1.0])
    bound = a_priori_state_bound(loop.linear, x0, loop.phi.bound)
    traj = simulate(loop, x0, 0.005, 20.0)
    assert np.linalg.norm(traj.states, axis=1).max() <= bound


@pytest.mark.unit
def test_a_priori_bound_validation():
    with pytest.raises(NumericsError):
        a_priori_state_bound(StateSpace([[1.0]], [[1.0]], [[1.0]]), [1.0], 1.0)
    with pytest.raises(ValueError):
        a_priori_state_bound(StateSpace([[-1.0]], [[1.0]], [[1.0]]), [1.0], np.inf)


@pytest.mark.unit
def test_nonlinearity_sectors():
    phi = tanh_scaled(10, 10)
    assert phi.sector == (0.0, 100.0)
    assert phi.bound == 10
    assert phi.validate_sector()
    chua = tanh_plus_linear(2.0, 0.7)
    assert chua.sector == pytest.approx((0.7, 2.7))
    assert chua.validate_sector()
    assert not replace(chua, sector=(0.7, 2.0)).validate_sector()
    assert np.isinf(chua.bound)
    assert tanh_plus_linear(1.0, 0.0).bound == 1.0


@pytest.mark.unit
def test_linear_and_zero_nonlinearities():
    y = np.array([-1.0, 0.0, 2.0])
    np.testing.assert_allclose(linear(3.0)(y), [-3.0, 0.0, 6.0])
    np.testing.assert_allclose(linear(3.0).derivative(y), 3.0)
    assert linear(3.0).sector == (3.0, 3.0)
    np.testing.assert_allclose(zero()(y), 0.0)


@pytest.mark.unit
def test_table_nonlinearity():
    phi = from_table([-1.0, 0.0, 1.0], [-1.0, 0.0, 2.0])
    np.testing.assert_allclose(phi([-2.0, 0.5, 2.0]), [-2.0, 1.0, 4.0])
    np.testing.assert_allclose(phi.derivative([-0.5, 0.5]), [1.0, 2.0])
    assert phi.sector == (1.0, 2.0)
    assert np.isinf(phi.bound)
    saturation = from_table([-2.0, -1.0, 1.0, 2.0], [-1.0, -1.0, 1.0, 1.0])
    assert saturation.bound == 1.0
    assert saturation.sector == (0.0, 1.0)
    with pytest.raises(ValueError):
        from_table([0.0, 0.0], [1.0, 2.0])
    with pytest.raises(ValueError):
        from_table([0.0], [1.0])


@pytest.mark.unit
def test_trajectory_frame_columns():
    traj = simulate(_limit_cycle(), [0.1, 0.0, 0.0], 0.01, 1.0)
    frame = trajectory_frame(traj)
    assert list(frame.columns) == ["t", "x1", "x2", "x3", "y", "u"]
    assert len(frame) == 101
    np.testing.assert_allclose(frame["u"], -np.tanh(10 * frame["y"]) * 10)


def _chua():
    return LureLoop(chua_linear_part(), tanh_plus_linear(2.0, 0.7))


@pytest.mark.unit
@pytest.mark.parametrize("make_loop, count", [(_bistable, 3), (_limit_cycle, 1), (_chua, 3)])
def test_equilibria_of_odd_nonlinearity(make_loop, count):
    # An odd φ gives roots symmetric about u = 0, so their number is odd.
    points = equilibria(make_loop())
    us = np.array([eq.u for eq in points])
    assert len(points) == count
    assert len(points) % 2 == 1
    np.testing.assert_allclose(us, -us[::-1], atol=1e-8)
    assert min(abs(us)) < 1e-8


@pytest.mark.integration
def test_a_priori_bound_holds_over_batch():
    loop = _limit_cycle()
    X0 = np.random.default_rng(11).uniform(-2.0, 2.0, size=(8, 3))
    batch = simulate_batch(loop, X0, 0.01, 500.0)
    for x0, traj in zip(X0, batch):
        assert not traj.diverged
        assert np.linalg.norm(traj.states, axis=1).max() <= a_priori_state_bound(loop.linear, x0, loop.phi.bound)
