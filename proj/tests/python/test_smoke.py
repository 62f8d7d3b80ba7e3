import math

import pytest

import qdistil


def test_version():
    assert isinstance(qdistil.__version__, str)
    assert qdistil.__version__


def test_bell_filter_reference_point():
    out = qdistil.bell_filter(0.5, 0.5, 0.5, 0.5)
    assert out["probability"] == pytest.approx(0.375)
    assert out["concurrence"] == pytest.approx(2.0 / 3.0)


def test_bell_filtering_costs_efficiency():
    filtered = qdistil.bell_efficiency(0.3, 0.3, 0.4, 0.4)
    plain = qdistil.bell_efficiency(0.3, 0.3, 0.0, 0.0)
    assert filtered < plain


def test_bisection_reference_value():
    assert qdistil.bisection_efficiency(0.5, 0.5, copies=32) == pytest.approx(
        0.06246544625246661, rel=1e-12
    )


def test_w_trajectory_reference_point():
    tr = qdistil.w_trajectory(3, 0.2, 0.5)
    assert tr["steps"] == 4
    assert tr["fidelities"][-1] >= 1 - 1e-6
    assert 0 < tr["efficiency"] < tr["filter_probability"]


def test_not_distillable_raises():
    with pytest.raises(qdistil.NotDistillableError):
        qdistil.w_trajectory(3, 0.3, 0.0)


def test_bad_arguments_raise_value_error():
    with pytest.raises(ValueError):
        qdistil.bell_filter(-0.1, 0.5, 0.5, 0.5)
    with pytest.raises(ValueError):
        qdistil.w_round(1, 0.5)


def test_efficiency_ratio_reference_value():
    ratio = qdistil.efficiency_ratio(3, 0.2, 0.5)
    assert ratio == pytest.approx(12.915005194116409, rel=1e-12)
    with pytest.raises(qdistil.RatioUndefinedError):
        qdistil.efficiency_ratio(3, 0.3, 0.5)


def test_asymptotic_ratio_limits():
    assert qdistil.asymptotic_ratio(3, 0.17, 0.0) == 1.0
    assert qdistil.asymptotic_ratio(3, 0.0, 0.4) == pytest.approx(0.36)


def test_optimal_w_dominates_unfiltered():
    best = qdistil.optimal_w(3, 0.1)
    reference = qdistil.w_trajectory(3, 0.1, 0.0)
    assert best["efficiency"] >= reference["efficiency"]
    assert math.isfinite(best["w"])


def test_run_validation_smoke():
    summary = qdistil.run_validation(seed=7, samples=2)
    assert summary["passed"]
    assert summary["checks"] > 50
    assert summary["max_abs_error"] < 1e-12
