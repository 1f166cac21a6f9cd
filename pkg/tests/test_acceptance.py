import numpy as np
import pytest

from domkit.cli import analyze_spec, load_system_spec
from domkit.dominance import (
    kyp_frequency_test,
    passive_supply,
    passivity_rate_scan,
    pointwise_gain_stability_scan,
    positive_window,
    scan_loop_gain,
)
from domkit.frequency import circle_criterion, nyquist_locus, winding_number
from domkit.lti import pole_zero_split, shift
from domkit.lti.catalog import controller_loop, lag_controller_plant, three_pole_system
from domkit.simulate import LureLoop, classify, classify_batch, equilibria, simulate, simulate_batch


def _loop(spec):
    return LureLoop(spec.realization(), spec.nonlinearity, spec.feedback_sign)


@pytest.mark.acceptance
def test_shifted_nyquist_example(spec_path, assert_roots_close):
    spec = load_system_spec(spec_path("nyquist_example"))
    assert_roots_close(shift(spec.G, spec.lam).poles(), [1.5 + 1j, 1.5 - 1j, -0.5], atol=1e-8)
    locus = nyquist_locus(spec.G, spec.lam)
    for k in (0.1, 1.0, 10.0, 100.0):
        assert winding_number(locus, -1.0 / k) == 0
    assert analyze_spec(spec).verdict["p"] == 2


@pytest.mark.acceptance
@pytest.mark.parametrize(
    "name, M, betas, p",
    [("passive_window_m10", -10, (2, 3, 5), 1), ("passive_window_m1", 1, (1, 2, 3), 2)],
)
def test_passivity_windows(spec_path, name, M, betas, p):
    spec = load_system_spec(spec_path(name))
    assert kyp_frequency_test(three_pole_system(M, betas), 2.6, passive_supply(), p).holds
    rows = passivity_rate_scan(spec.G, np.linspace(1.5, 3.5, 81), p=p)
    lo, hi = positive_window(rows)
    assert lo >= 2.0 - 0.05
    assert hi <= 3.0 + 0.05


@pytest.mark.acceptance
def test_kalman_counterexample(spec_path):
    spec = load_system_spec(spec_path("kalman"))
    k1, k2 = spec.sector
    assert pointwise_gain_stability_scan(spec.linear, k1, k2)
    report = circle_criterion(spec.G, spec.lam, k1, k2)
    assert report.verdict == 2
    sim = spec.simulation
    traj = simulate(_loop(spec), sim.x0, sim.dt, sim.T)
    assert not traj.diverged
    assert classify(traj).kind != "fixed_point"


@pytest.mark.acceptance
def test_bistability(spec_path):
    spec = load_system_spec(spec_path("bistable"))
    loop = _loop(spec)
    roots = equilibria(loop)
    assert len(roots) == 3
    rng = np.random.default_rng(11)
    directions = rng.normal(size=(20, 3))
    X0 = directions / np.linalg.norm(directions, axis=1, keepdims=True) * rng.uniform(0.1, 5.0, size=(20, 1))
    labels = classify_batch(simulate_batch(loop, X0, spec.simulation.dt, spec.simulation.T))
    for label in labels:
        assert label.kind == "fixed_point"
        y = float(loop.output(label.witness[None, :])[0])
        assert abs(y) == pytest.approx(3.333, abs=0.01)


@pytest.mark.acceptance
def test_limit_cycle(spec_path):
    spec = load_system_spec(spec_path("limit_cycle"))
    k1, k2 = spec.sector
    assert circle_criterion(spec.loop, spec.lam, k1, k2).verdict == 2
    loop = _loop(spec)
    rng = np.random.default_rng(12)
    X0 = rng.normal(size=(10, 3))
    X0 = X0[np.linalg.norm(X0, axis=1) > 1e-3]
    labels = classify_batch(simulate_batch(loop, X0, spec.simulation.dt, spec.simulation.T))
    assert [label.kind for label in labels] == ["periodic"] * len(X0)
    periods = [label.period for label in labels]
    np.testing.assert_allclose(periods, periods[0], atol=0.01)


@pytest.mark.acceptance
def test_chua(spec_path):
    spec = load_system_spec(spec_path("chua"))
    k1, k2 = spec.sector
    report = circle_criterion(spec.G, spec.lam, k1, k2)
    assert report.verdict == 3
    assert report.encirclements == 1
    assert report.disk.center == pytest.approx(-0.9643, abs=1e-4)
    assert report.disk.radius == pytest.approx(0.4643, abs=1e-4)

    scan = spec.rate_scan
    lambdas = np.linspace(scan["lambda_min"], scan["lambda_max"], scan["steps"])
    lo, _ = positive_window(passivity_rate_scan(spec.G, lambdas, p=scan["p"]))
    assert lo == pytest.approx(9.67, abs=0.1)

    sim = spec.simulation
    traj = simulate(_loop(spec), sim.x0, sim.dt, sim.T)
    assert not traj.diverged
    assert np.abs(traj.states).max() < 50.0
    assert classify(traj).kind == "other"


@pytest.mark.acceptance
def test_controller_design(spec_path):
    plant, lag = lag_controller_plant()
    assert pole_zero_split(-(plant * lag), 2.1).p == 3
    found = [
        (gain, report)
        for gain, report in scan_loop_gain(controller_loop(1.0), 2.1, 1.0, 5.0, np.linspace(0.8, 1.2, 9))
        if report is not None and report.verdict is not None
    ]
    assert found
    for gain, report in found:
        assert report.pole_count_q == 3
        assert report.encirclements == -2
        assert report.verdict == 1
    assert analyze_spec(load_system_spec(spec_path("lag_controller"))).verdict["p"] == 1


@pytest.mark.acceptance
def test_lag_controller_bistability(spec_path):
    spec = load_system_spec(spec_path("lag_controller"))
    loop = _loop(spec)
    ys = [eq.y for eq in equilibria(loop)]
    np.testing.assert_allclose(ys, [-0.2585, 0.0, 0.2585], atol=1e-3)

    sim = spec.simulation
    X0 = np.random.default_rng(3).normal(scale=0.5, size=(6, len(sim.x0)))
    batch = simulate_batch(loop, X0, sim.dt, sim.T)
    labels = classify_batch(batch)
    assert [label.kind for label in labels] == ["fixed_point"] * len(X0)
    for traj in batch:
        assert abs(traj.outputs[-1]) == pytest.approx(0.2585, abs=0.01)
