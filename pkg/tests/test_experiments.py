"""Disentanglement-time detection, scaling fits, sweeps, and reports."""

from math import log, pi, sqrt

import numpy as np
import pytest

from centralspin import (
    BathSpec,
    HBAR_UEV_NS,
    MU_B_UEV_PER_T,
    NegativityEvaluator,
    NeverEntangledError,
    NoReturnToZeroError,
    PhysicalParams,
    QubitState,
    field_birth_report,
    find_tau,
    fit_scaling,
    parity_report,
    single_nucleus_tau_estimate,
    sweep,
    trace_negativity,
)
from centralspin.experiments import tau_time_grid

A = 83.0


def make_trace(n=1, f=0.5, alpha=1.0, bfield=0.0, points=1500, t_max=None):
    spec = BathSpec(n, f)
    params = PhysicalParams(a_uev=A, bfield_t=bfield)
    qubit = QubitState.from_alpha(alpha)
    if t_max is None:
        times = tau_time_grid(params, points=points)
    else:
        times = np.linspace(0.0, t_max, points)
    return trace_negativity(spec, params, qubit, times)


def test_trace_starts_at_zero_and_carries_provenance():
    trace = make_trace(points=400)
    assert trace.values[0] == 0.0
    assert np.all(trace.values >= 0)
    assert trace.params["n"] == 1 and trace.params["bfield_T"] == 0.0


def test_single_nucleus_tau_is_half_recurrence_at_zero_field():
    trace = make_trace()
    det = find_tau(trace)
    assert det.method == "first-return-to-zero"
    assert det.tau_ns == pytest.approx(pi * HBAR_UEV_NS / A, rel=1e-6)
    # within five percent of the closed-form estimate with constant 3
    assert abs(det.tau_ns / (3 * HBAR_UEV_NS / A) - 1) < 0.05


def test_tau_estimate_helper():
    assert single_nucleus_tau_estimate(PhysicalParams(a_uev=A)) == pytest.approx(
        pi * HBAR_UEV_NS / A
    )
    params = PhysicalParams(a_uev=A, bfield_t=1.0)
    gap = sqrt(A**2 + (0.44 * MU_B_UEV_PER_T) ** 2)
    assert single_nucleus_tau_estimate(params) == pytest.approx(2 * pi * HBAR_UEV_NS / gap)


def test_finite_field_zero_is_full_period():
    trace = make_trace(bfield=1.0)
    det = find_tau(trace)
    gap = sqrt(A**2 + (0.44 * MU_B_UEV_PER_T * 1.0) ** 2)
    assert det.tau_ns == pytest.approx(2 * pi * HBAR_UEV_NS / gap, rel=1e-6)


def test_tau_grid_robustness():
    coarse = find_tau(make_trace(points=750)).tau_ns
    fine = find_tau(make_trace(points=1500)).tau_ns
    assert abs(coarse / fine - 1) < 0.005


def test_never_entangled_without_coupling():
    spec = BathSpec(1, 0.5)
    params = PhysicalParams(a_uev=0.0, bfield_t=1.0)
    trace = trace_negativity(spec, params, QubitState.from_alpha(0.9), np.linspace(0, 1.0, 50))
    with pytest.raises(NeverEntangledError):
        find_tau(trace)


def test_no_return_to_zero_in_short_window():
    trace = make_trace(bfield=1.0, t_max=0.012, points=300)  # first zero near 0.048 ns
    with pytest.raises(NoReturnToZeroError):
        find_tau(trace)


def test_fit_scaling_recovers_synthetic_models():
    xs = np.array([1.0, 2.0, 3.0, 4.0, 5.0])
    linear = fit_scaling(xs, 2.0 + 3.0 * xs, "linear")
    assert linear.coefficients == (pytest.approx(2.0), pytest.approx(3.0))
    assert linear.r_squared == pytest.approx(1.0)
    logfit = fit_scaling(xs, 1.0 + 0.5 * np.log(xs), "log")
    assert logfit.coefficients[1] == pytest.approx(0.5)
    assert logfit.r_squared == pytest.approx(1.0)
    expfit = fit_scaling(xs, 2.0 * np.exp(-0.3 * xs), "exponential")
    assert expfit.coefficients == (pytest.approx(log(2.0)), pytest.approx(-0.3))
    assert expfit.r_squared == pytest.approx(1.0)


def test_fit_scaling_validation():
    with pytest.raises(ValueError):
        fit_scaling([1.0], [2.0], "linear")
    with pytest.raises(ValueError):
        fit_scaling([-1.0, 2.0], [1.0, 2.0], "log")
    with pytest.raises(ValueError):
        fit_scaling([1.0, 2.0], [-1.0, 2.0], "exponential")
    with pytest.raises(ValueError):
        fit_scaling([1.0, 2.0], [1.0, 2.0], "quadratic")


def test_fit_of_constant_response_reports_no_scaling():
    report = fit_scaling([1.0, 2.0, 3.0], [4.0, 4.0, 4.0], "linear")
    assert report.r_squared == 0.0


def test_sweep_is_deterministic_and_ordered():
    fixed = {"n": 1, "alpha": 1.0}
    first = sweep("F", [0.5, 1.0], fixed, points=500)
    second = sweep("F", [0.5, 1.0], fixed, points=500)
    assert [p.value for p in first] == [0.5, 1.0]
    for a, b in zip(first, second):
        assert a == b
    assert all(p.error is None for p in first)
    assert all(p.tau_ns > 0 for p in first)


def test_sweep_parallel_matches_serial():
    fixed = {"n": 2, "alpha": 0.9}
    serial = sweep("B", [0.0, 1.0], fixed, points=400, jobs=1)
    parallel = sweep("B", [0.0, 1.0], fixed, points=400, jobs=2)
    assert serial == parallel


def test_sweep_records_per_point_errors_and_continues():
    points = sweep("F", [0.5, 0.3, 1.0], {"n": 1}, points=300)
    assert points[0].error is None
    assert points[1].error is not None and "0.3" in points[1].error
    assert points[2].error is None


def test_sweep_rejects_bad_axis_and_empty_values():
    with pytest.raises(ValueError):
        sweep("gamma", [1.0], {})
    with pytest.raises(ValueError):
        sweep("F", [], {})


def test_parity_report_orders_and_validates():
    with pytest.raises(ValueError):
        parity_report([3, 4, 5], f=1.0)
    with pytest.raises(ValueError):
        parity_report([2])
    with pytest.raises(ValueError):
        parity_report([2, 4])
    report = parity_report([3, 4], points=900)
    taus = dict(report.entries)
    assert report.even_exceeds_odd
    assert taus[4] > taus[3]


def test_field_birth_report_validates_and_reports_tail():
    with pytest.raises(ValueError):
        field_birth_report(1, 0.5, [0.0, 1.0])
    with pytest.raises(ValueError):
        field_birth_report(1, 0.5, [1.0, 2.0, 3.0])
    report = field_birth_report(1, 0.5, [0.0, 1.0, 3.0, 20.0], points=500)
    by_b = dict(report.entries)
    assert report.peak_max == max(m for b, m in report.entries if b > 0)
    assert report.tail_below_peak  # strong field suppresses the flip-flop
    assert by_b[20.0] < by_b[1.0]


def test_equal_superposition_matches_aligned_qubit_at_zero_field():
    # the zero-field model is isotropic and the bath fully mixed, so every
    # pure qubit state yields the same negativity curve
    aligned = make_trace(n=2, alpha=1.0, t_max=0.05, points=120)
    balanced = make_trace(n=2, alpha=1 / sqrt(2), t_max=0.05, points=120)
    tilted = make_trace(n=2, alpha=0.9, t_max=0.05, points=120)
    np.testing.assert_allclose(balanced.values, aligned.values, atol=1e-11)
    np.testing.assert_allclose(tilted.values, aligned.values, atol=1e-11)
    assert aligned.max_value() > 0.05
