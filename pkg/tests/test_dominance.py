import numpy as np
import pytest

from domkit.dominance import (
    DominanceCertificate,
    Supply,
    admissible_passivity_degrees,
    build_dominance_certificate,
    dissipativity_matrix,
    kyp_frequency_test,
    passive_supply,
    passivity_degree_candidates,
    passivity_rate_scan,
    pointwise_gain_stability_scan,
    positive_window,
    scan_loop_gain,
    sector_supply,
    strictly_input_passive_supply,
    strictly_output_passive_supply,
    supply_admits_slope,
    supply_form,
    transformed_sector_supply,
    verify_dissipativity_certificate,
    verify_dominance_certificate,
    zero_supply,
)
from domkit.frequency import circle_inequality, loop_transform, positive_real_values
from domkit.lti import StateSpace, TransferFunction, from_roots, shift, tf_from_statespace
from domkit.lti.catalog import (
    chua_linear_part,
    controller_loop,
    kalman_counterexample,
    three_pole_modal_realization,
    three_pole_system,
)
from domkit.utils.errors import BoundaryError

# Exact (eps = 0) 1-passivity storage for the modal realization of -10/((s+2)(s+3)(s+5)) at rate 2.6.
ONE_PASSIVE_P = np.array(
    [
        [-38.0 / 15.0, 0.8, -1.6],
        [0.8, 5.8, -1.6],
        [-1.6, -1.6, 23.0 / 15.0],
    ]
)

# Degrees p ≤ 3 compatible with relative degree Δ and r right-half-plane zeros.
PASSIVITY_TABLE = {
    (0, 0): {0},
    (0, 1): {1},
    (0, 2): {2},
    (0, 3): {3},
    (1, 0): {0, 1},
    (1, 1): {1, 2},
    (1, 2): {2, 3},
    (1, 3): {3},
    (2, 0): {1},
    (2, 1): {2},
    (2, 2): {3},
    (2, 3): set(),
    (3, 0): {1, 2},
    (3, 1): {2, 3},
    (3, 2): {3},
    (3, 3): set(),
    (4, 0): {2},
    (4, 1): {3},
    (5, 0): {2, 3},
    (5, 1): {3},
    (6, 0): {3},
    (7, 0): {3},
}


def _realize_degrees(delta, r, q=3):
    zeros = [float(i + 1) for i in range(r)] + [-float(i + 1) for i in range(q - r)]
    poles = [-(i + 1.5) for i in range(q + delta)]
    return TransferFunction(from_roots(zeros), from_roots(poles))


@pytest.mark.unit
def test_build_dominance_certificate_diagonal():
    cert = build_dominance_certificate(np.diag([-1.0, 2.0]), 0.0)
    np.testing.assert_allclose(cert.P, np.diag([0.5, -0.25]), atol=1e-12)
    assert (cert.p, cert.eps, cert.lam) == (1, 1.0, 0.0)
    assert cert.strict
    assert verify_dominance_certificate(np.diag([-1.0, 2.0]), cert)


@pytest.mark.unit
def test_build_dominance_certificate_counts_shifted_eigenvalues():
    A = kalman_counterexample().A
    cert = build_dominance_certificate(A, 0.275)
    assert cert.p == 2
    result = verify_dominance_certificate(A, cert)
    assert result.ok
    assert result.reason is None


@pytest.mark.unit
def test_build_dominance_certificate_rejects_boundary_rate():
    with pytest.raises(BoundaryError):
        build_dominance_certificate(np.diag([-1.0, -2.0]), 1.0)
    with pytest.raises(ValueError):
        build_dominance_certificate(np.eye(2), -0.5)


@pytest.mark.unit
def test_certificate_rescaling():
    A = np.array([[0.0, 1.0], [2.0, -1.0]])
    cert = build_dominance_certificate(A, 0.3)
    assert verify_dominance_certificate(A, cert.rescaled(3.0))
    with pytest.raises(ValueError):
        cert.rescaled(-1.0)


@pytest.mark.unit
def test_verify_dominance_rejection_reasons():
    A = np.diag([-1.0, 2.0])
    cert = build_dominance_certificate(A, 0.0)
    assert verify_dominance_certificate(A, DominanceCertificate(cert.P, 1.0, 0.0, 0)).reason == "inertia"
    asymmetric = cert.P + np.array([[0.0, 0.1], [0.0, 0.0]])
    assert verify_dominance_certificate(A, DominanceCertificate(asymmetric, 1.0, 0.0, 1)).reason == "asymmetric"
    assert verify_dominance_certificate(np.eye(3), cert).reason == "dimension"


@pytest.mark.unit
def test_verify_dominance_lmi_violation():
    # P = 1 solves the shifted equation at rate 0.5 but not at rate 0.9.
    cert = build_dominance_certificate([[-1.0]], 0.5)
    np.testing.assert_allclose(cert.P, [[1.0]])
    result = verify_dominance_certificate([[-1.0]], cert.with_rate(0.9))
    assert not result
    assert result.reason == "lmi"
    assert result.max_eigenvalue == pytest.approx(0.8)


@pytest.mark.unit
def test_zero_supply_delegates_to_dominance():
    sys = StateSpace(np.diag([-1.0, 2.0]), [[1.0], [1.0]], [[1.0, 1.0]])
    cert = build_dominance_certificate(sys.A, 0.0)
    assert verify_dissipativity_certificate(sys, zero_supply(), cert)
    # The full block with a zero supply is indefinite as soon as PB ≠ 0.
    assert np.linalg.eigvalsh(dissipativity_matrix(sys, zero_supply(), cert)).max() > 0


@pytest.mark.unit
def test_one_passive_certificate():
    sys = three_pole_modal_realization(-10, (2, 3, 5))
    cert = DominanceCertificate(ONE_PASSIVE_P, 0.0, 2.6, 1)
    result = verify_dissipativity_certificate(sys, passive_supply(), cert)
    assert result.ok
    assert not cert.strict


@pytest.mark.unit
def test_one_passive_certificate_fails_below_window():
    sys = three_pole_modal_realization(-10, (2, 3, 5))
    cert = DominanceCertificate(ONE_PASSIVE_P, 0.0, 2.6, 1).with_rate(1.5)
    result = verify_dissipativity_certificate(sys, passive_supply(), cert)
    assert not result
    assert result.reason == "lmi"
    assert not kyp_frequency_test(three_pole_system(-10, (2, 3, 5)), 1.5, passive_supply(), 1).holds


@pytest.mark.unit
def test_dissipativity_dimension_mismatch():
    sys = three_pole_modal_realization(-10, (2, 3, 5))
    cert = DominanceCertificate(ONE_PASSIVE_P, 0.0, 2.6, 1)
    assert verify_dissipativity_certificate(sys, passive_supply(m=2), cert).reason == "dimension"


@pytest.mark.integration
def test_certificate_agrees_with_frequency_test():
    sys = three_pole_modal_realization(-10, (2, 3, 5))
    G = tf_from_statespace(sys)
    assert verify_dissipativity_certificate(sys, passive_supply(), DominanceCertificate(ONE_PASSIVE_P, 0.0, 2.6, 1))
    report = kyp_frequency_test(G, 2.6, passive_supply(), 1)
    assert report.holds
    assert report.finite_margin > 0


@pytest.mark.unit
def test_supply_presets():
    assert zero_supply().is_zero()
    assert passive_supply().scalars() == (0.0, 1.0, 0.0)
    assert strictly_output_passive_supply(0.1).scalars() == (-0.1, 1.0, 0.0)
    assert strictly_input_passive_supply(0.2).scalars() == (0.0, 1.0, -0.2)
    assert sector_supply(0.7, 2.0).scalars() == pytest.approx((2.8, 2.7, 2.0))
    assert transformed_sector_supply(0.7, 2.0).scalars() == pytest.approx((0.0, 1.3, 2.0))
    with pytest.raises(ValueError):
        sector_supply(2.0, 1.0)
    with pytest.raises(ValueError):
        transformed_sector_supply(1.0, 1.0)


@pytest.mark.unit
def test_supply_validation():
    with pytest.raises(ValueError):
        Supply([[0.0, 1.0], [0.0, 0.0]], np.eye(2), np.zeros((2, 2)))
    with pytest.raises(ValueError):
        Supply(np.zeros((2, 2)), 1.0, 0.0)
    with pytest.raises(ValueError):
        passive_supply(m=2).scalars()


@pytest.mark.unit
@pytest.mark.parametrize(
    "supply, slope, admitted",
    [
        (passive_supply(), 1.0, True),
        (passive_supply(), 0.0, True),
        (passive_supply(), -1.0, False),
        (sector_supply(1.0, 5.0), 1.0, True),
        (sector_supply(1.0, 5.0), 3.0, True),
        (sector_supply(1.0, 5.0), 5.0, True),
        (sector_supply(1.0, 5.0), 0.5, False),
        (sector_supply(1.0, 5.0), 6.0, False),
    ],
)
def test_supply_admits_slope(supply, slope, admitted):
    assert supply_admits_slope(supply, slope) is admitted


@pytest.mark.unit
def test_sector_supply_form_is_twice_circle_inequality():
    rng = np.random.default_rng(17)
    values = rng.normal(scale=2.0, size=200) + 1j * rng.normal(scale=2.0, size=200)
    np.testing.assert_allclose(
        supply_form(values, sector_supply(0.7, 2.0)), 2.0 * circle_inequality(values, 0.7, 2.0), rtol=1e-12, atol=1e-12
    )


@pytest.mark.unit
def test_transformed_supply_matches_positive_real_margin():
    G = tf_from_statespace(chua_linear_part())
    s = 1j * np.linspace(0.0, 20.0, 101) - 4.0
    values = G.evaluate(s)
    transformed = loop_transform(G, 0.7).evaluate(s)
    np.testing.assert_allclose(
        supply_form(transformed, transformed_sector_supply(0.7, 2.0)),
        2.0 * positive_real_values(values, 0.7, 2.0),
        rtol=1e-9,
        atol=1e-9,
    )


@pytest.mark.unit
def test_kyp_one_passive_window():
    report = kyp_frequency_test(three_pole_system(-10, (2, 3, 5)), 2.6, passive_supply(), 1)
    assert report.holds
    assert report.p == report.requested_p == 1
    assert report.finite_margin > 0
    assert report.infinity_margin == 0.0
    assert report.min_margin == 0.0
    assert np.isinf(report.argmin_omega)
    assert not report.strict


@pytest.mark.unit
def test_kyp_two_passive_window():
    report = kyp_frequency_test(three_pole_system(1, (1, 2, 3)), 2.6, passive_supply(), 2)
    assert report.holds
    assert report.p == 2


@pytest.mark.unit
def test_kyp_stable_but_not_passive():
    report = kyp_frequency_test(three_pole_system(1, (1, 2, 3)), 0.5, passive_supply(), 0)
    assert report.p == 0
    assert report.min_margin < 0
    assert not report.holds


@pytest.mark.unit
def test_kyp_pole_count_mismatch():
    report = kyp_frequency_test(three_pole_system(-10, (2, 3, 5)), 2.6, passive_supply(), 2)
    assert report.p == 1
    assert report.requested_p == 2
    assert not report.holds


@pytest.mark.unit
def test_kyp_strict_with_feedthrough():
    # (s+2)/(s+1) has Re > 0 on the imaginary axis and 1 at infinity.
    report = kyp_frequency_test(TransferFunction.from_descending([1.0, 2.0], [1.0, 1.0]), 0.0, passive_supply(), 0)
    assert report.strict
    assert report.infinity_margin == pytest.approx(2.0)


@pytest.mark.unit
def test_kyp_boundary_pole():
    with pytest.raises(BoundaryError):
        kyp_frequency_test(TransferFunction.from_descending([1.0], [1.0, 2.0]), 2.0, passive_supply(), 0)


@pytest.mark.unit
def test_kyp_report_serializes():
    out = kyp_frequency_test(three_pole_system(1, (1, 2, 3)), 2.6, passive_supply(), 2).to_dict()
    assert out["holds"] is True
    assert out["requested_p"] == 2


@pytest.mark.unit
def test_passivity_candidates_three_pole_family():
    assert passivity_degree_candidates(three_pole_system(-10, (2, 3, 5)), 2.6) == {1, 2}


@pytest.mark.unit
def test_passivity_candidates_boundary():
    with pytest.raises(BoundaryError) as e:
        passivity_degree_candidates(TransferFunction.from_descending([1.0, 1.0], [1.0, 5.0, 6.0]), 1.0)
    assert e.value.reason == "boundary zero"


@pytest.mark.unit
@pytest.mark.parametrize("delta, r", sorted(PASSIVITY_TABLE))
def test_passivity_table(delta, r):
    G = _realize_degrees(delta, r)
    split_r = sum(1 for z in shift(G, 0.0).zeros() if z.real > 0)
    assert split_r == r
    assert passivity_degree_candidates(G, 0.0) & {0, 1, 2, 3} == PASSIVITY_TABLE[(delta, r)]


@pytest.mark.unit
def test_admissible_degrees_relative_degree_bound():
    for delta in range(8):
        for p in admissible_passivity_degrees(delta, 0, 10):
            assert delta <= 2 * p + 1


@pytest.mark.unit
@pytest.mark.parametrize("k1, k2, expected", [(0.0125, 1.0125, True), (0.0, 1e6, False), (10.0, 100.0, False)])
def test_pointwise_gain_scan_kalman(k1, k2, expected):
    assert pointwise_gain_stability_scan(kalman_counterexample(), k1, k2) is expected


@pytest.mark.unit
def test_pointwise_gain_scan_validation():
    with pytest.raises(ValueError):
        pointwise_gain_stability_scan(kalman_counterexample(), 2.0, 1.0)


@pytest.mark.integration
@pytest.mark.parametrize("M, betas, p", [(-10, (2, 3, 5), 1), (1, (1, 2, 3), 2)])
def test_rate_scan_passivity_windows(M, betas, p):
    rows = passivity_rate_scan(three_pole_system(M, betas), np.linspace(1.5, 3.5, 81), p=p)
    lo, hi = positive_window(rows)
    assert 2.0 - 0.05 <= lo < 2.6 < hi <= 3.0 + 0.05
    assert all(row.holds for row in rows if lo <= row.lam <= hi)
    at_two = next(row for row in rows if row.lam == pytest.approx(2.0))
    assert not at_two.holds
    assert at_two.reason == "boundary pole"


@pytest.mark.integration
def test_rate_scan_chua_threshold():
    rows = passivity_rate_scan(tf_from_statespace(chua_linear_part()), np.linspace(8.0, 12.0, 41), p=3)
    lo, hi = positive_window(rows)
    assert lo == pytest.approx(9.67, abs=0.1)
    assert hi > lo


@pytest.mark.unit
def test_rate_scan_rows():
    rows = passivity_rate_scan(TransferFunction.from_descending([1.0], [1.0, 1.0]), [0.5, 1.0, 1.5])
    assert [row.p for row in rows] == [0, None, 1]
    assert rows[1].reason == "boundary pole"
    out = rows[0].to_dict()
    assert out["lambda"] == 0.5
    assert out["pole_split"]["p"] == 0
    assert out["holds"] is True
    with pytest.raises(ValueError):
        passivity_rate_scan(TransferFunction.from_descending([1.0], [1.0, 1.0]), [1.0, 0.5])


@pytest.mark.unit
def test_positive_window_empty():
    rows = passivity_rate_scan(three_pole_system(1, (1, 2, 3)), [0.5, 1.5], p=2)
    assert positive_window(rows) is None


@pytest.mark.integration
def test_scan_loop_gain_controller():
    results = scan_loop_gain(controller_loop(1.0), 2.1, 1.0, 5.0, [1.0, 5.0])
    assert [gain for gain, _ in results] == [1.0, 5.0]
    report = results[0][1]
    assert report.verdict == 1
    assert report.encirclements == -2
    assert results[1][1] is None or results[1][1].verdict is None


@pytest.mark.integration
def test_dominance_certificate_round_trip_random():
    rng = np.random.default_rng(2024)
    accepted = 0
    while accepted < 100:
        n = int(rng.integers(1, 7))
        A = rng.normal(size=(n, n))
        lam = rng.uniform(0.0, 2.0)
        mu = np.linalg.eigvals(A + lam * np.eye(n))
        # Keep the shifted spectrum away from the axis and the Lyapunov operator well conditioned.
        if np.abs(mu.real).min() < 0.05 or np.abs(mu[:, None] + mu[None, :]).min() < 0.05:
            continue
        accepted += 1
        cert = build_dominance_certificate(A, lam)
        result = verify_dominance_certificate(A, cert)
        assert result.ok, result.reason
        assert cert.p == int(np.sum(mu.real > 0))
