import numpy as np
import pytest
from numpy.testing import assert_allclose

from config import CATALOG
from managers.flow_engine import FlowEngine
from models.chart import MetricSpec, SliceSpec
from models.trajectory import Direction, FlowBudget, Trajectory, TrajectoryStatus
from utils.exceptions import InputError, PreconditionError

from conftest import chart_function


@pytest.fixture
def square():
    return chart_function("x1^2", 1, 0, [[-2, 2]])


@pytest.fixture
def bowl():
    return chart_function("x1^2 + v1^2", 1, 1, [[-1, 1], [-1, 1]])


def test_forward_run_leaves_the_box(flow_engine, square):
    """Test that ascent from x = 1 on x^2 exits through the boundary"""
    run = flow_engine.integrate(square, None, [1.0], Direction.FORWARD)
    assert run.status is TrajectoryStatus.EXITED_BOX
    assert abs(run.final_point[0]) > 2
    assert all(t >= 0 for t in run.times)
    assert flow_engine.verify_monotone(run)


def test_backward_run_converges_to_the_minimum(flow_engine, square):
    """Test that descent on x^2 reaches the critical point with negative times"""
    run = flow_engine.integrate(square, None, [1.0], Direction.BACKWARD)
    assert run.status is TrajectoryStatus.CONVERGED
    assert_allclose(run.limit, [0.0], atol=1e-12)
    assert not run.degenerate_limit
    assert run.times[0] == 0.0
    assert all(t < 0 for t in run.times[1:])
    assert flow_engine.verify_monotone(run)
    # x(t) = e^(2t) for t < 0
    for t, point in zip(run.times[1:20], run.points[1:20]):
        assert point[0] == pytest.approx(np.exp(2 * t), rel=1e-6)


def test_start_on_the_critical_locus_converges_at_once(flow_engine, square):
    """Test a run started at a critical point"""
    run = flow_engine.integrate(square, None, [0.0], Direction.FORWARD)
    assert run.status is TrajectoryStatus.CONVERGED
    assert run.steps == 0
    assert run.limit == (0.0,)


def test_transverse_coordinates_are_frozen(flow_engine, bowl):
    """Test that a run stays on its leaf"""
    run = flow_engine.integrate(bowl, None, [0.5, 0.3], Direction.BACKWARD)
    assert run.status is TrajectoryStatus.CONVERGED
    assert flow_engine.verify_leafwise(run, 1)
    assert all(point[1] == 0.3 for point in run.points)
    assert run.limit[1] == 0.3
    assert run.limit[0] == pytest.approx(0.0, abs=1e-12)


def test_level_stop(flow_engine, bowl):
    """Test the stop below a level used by the descent classification"""
    run = flow_engine.integrate(bowl, None, [0.9, 0.1], Direction.BACKWARD, stop_below=0.25)
    assert run.status is TrajectoryStatus.PASSED_LEVEL
    assert run.values[-1] < 0.25


def test_time_budget(flow_engine, square):
    """Test that a tiny budget ends the run"""
    run = flow_engine.integrate(square, None, [1.0], Direction.BACKWARD, FlowBudget(max_time=0.1))
    assert run.status is TrajectoryStatus.TIME_BUDGET_EXHAUSTED
    assert run.times[-1] == pytest.approx(-0.1)


def test_leafwise_gradient_uses_the_metric(flow_engine, square):
    """Test G^-1 d f"""
    assert_allclose(flow_engine.leafwise_gradient(square, None, [1.0]), [2.0])
    metric = MetricSpec.constant([[2]], 1)
    assert_allclose(flow_engine.leafwise_gradient(square, metric, [1.0]), [1.0])


def test_metric_slows_the_flow_uniformly(flow_engine, square):
    """Test that a constant metric rescales time"""
    metric = MetricSpec.constant([[2]], 1)
    run = flow_engine.integrate(square, metric, [1.0], Direction.BACKWARD)
    assert run.status is TrajectoryStatus.CONVERGED
    for t, point in zip(run.times[1:20], run.points[1:20]):
        assert point[0] == pytest.approx(np.exp(t), rel=1e-6)


def test_start_must_lie_in_the_box(flow_engine, square):
    """Test start point validation"""
    with pytest.raises(PreconditionError):
        flow_engine.integrate(square, None, [3.0])
    with pytest.raises(PreconditionError):
        flow_engine.integrate(square, None, [0.0, 1.0])


def test_indefinite_metric_is_rejected(flow_engine, square):
    """Test that the metric must be positive definite"""
    with pytest.raises(InputError):
        flow_engine.integrate(square, MetricSpec.constant([[-1]], 1), [1.0])


def test_limit_points(flow_engine, square):
    """Test the pair of runs from one point"""
    backward, forward = flow_engine.limit_points(square, None, [-0.5])
    assert backward.status is TrajectoryStatus.CONVERGED
    assert forward.status is TrajectoryStatus.EXITED_BOX


def test_trajectory_rows(flow_engine, bowl):
    """Test the tabular form of a run"""
    run = flow_engine.integrate(bowl, None, [0.5, 0.3], Direction.FORWARD)
    rows = run.to_rows(["x1", "v1"])
    assert list(rows[0]) == ["t", "x1", "v1", "f"]
    assert rows[0]["f"] == pytest.approx(0.34)
    assert run.to_dict()["status"] == "ExitedBox"


def test_skeleton_of_the_bowl_is_empty_and_of_the_cap_is_the_axis(flow_engine):
    """Test skeleton sampling"""
    bowl = chart_function("x1^2 + v1^2", 1, 1, [[-1, 1], [-1, 1]])
    assert flow_engine.skeleton_sample(bowl, None, SliceSpec(0.1, 1.0), grid_density=6) == []

    cap = chart_function("-x1^2 + v1^2", 1, 1, [[-1, 1], [-1, 1]])
    samples = flow_engine.skeleton_sample(cap, None, SliceSpec(-0.5, 1.0), grid_density=6)
    assert samples
    assert all(abs(s.limit[0]) < 1e-9 for s in samples)
    assert all(s.limit[1] == s.start[1] for s in samples)


def test_skeleton_rejects_an_empty_slice(flow_engine, bowl):
    """Test slice validation"""
    with pytest.raises(PreconditionError):
        flow_engine.skeleton_sample(bowl, None, SliceSpec(1.0, 0.5))


def test_cubic_phase_line(flow_engine):
    """Test that ascent and descent from 0 on x^3 - 3x reach the two critical points"""
    cubic = chart_function("x1^3 - 3*x1", 1, 0, [[-2, 2]])
    ascent = flow_engine.integrate(cubic, None, [0.0], Direction.FORWARD)
    assert ascent.status is TrajectoryStatus.CONVERGED
    assert ascent.limit[0] == pytest.approx(-1.0, abs=1e-9)
    descent = flow_engine.integrate(cubic, None, [0.0], Direction.BACKWARD)
    assert descent.status is TrajectoryStatus.CONVERGED
    assert descent.limit[0] == pytest.approx(1.0, abs=1e-9)
    assert flow_engine.verify_monotone(ascent) and flow_engine.verify_monotone(descent)


def test_limit_does_not_depend_on_the_error_control(chart_analyzer):
    """Test that halving the error control moves the limit by less than 1e-6"""
    entry = CATALOG["charts"]["fold_model"]
    f = chart_function(entry["expression"], entry["n"], entry["q"], entry["box"])
    runs = [
        FlowEngine(chart_analyzer, error_control=tolerance).integrate(f, None, [0.3, 0.2, 1.0], Direction.BACKWARD)
        for tolerance in (1e-9, 5e-10)
    ]
    assert all(run.status is TrajectoryStatus.CONVERGED for run in runs)
    assert np.max(np.abs(np.subtract(runs[0].limit, runs[1].limit))) < 1e-6
    assert_allclose(runs[0].limit, [0.0, np.sqrt(1 / 3), 1.0], atol=1e-9)


@pytest.mark.parametrize("name", sorted(CATALOG["charts"]))
def test_catalog_runs_are_monotone_and_leafwise(flow_engine, name):
    """Test f-monotonicity and frozen transverse coordinates from random starts"""
    entry = CATALOG["charts"][name]
    f = chart_function(entry["expression"], entry["n"], entry["q"], entry["box"])
    box = np.array(entry["box"], dtype=float)
    starts = np.random.default_rng(3).uniform(box[:, 0], box[:, 1], size=(4, entry["n"] + entry["q"]))
    for start in starts:
        for run in flow_engine.limit_points(f, None, start):
            assert flow_engine.verify_monotone(run)
            assert flow_engine.verify_leafwise(run, entry["n"])


def test_monotonicity_slack_is_absolute(flow_engine):
    """Test that the per-step slack does not grow with |f|"""
    def backward_run(values):
        run = Trajectory((0.0,), Direction.BACKWARD)
        for t, value in enumerate(values):
            run.append(-t, (0.0,), value)
        return run

    assert flow_engine.verify_monotone(backward_run([1.0, 0.5, 0.5 + 5e-10]))
    assert flow_engine.verify_monotone(backward_run([1e6, 1e6 + 5e-10]))
    assert not flow_engine.verify_monotone(backward_run([1e6, 1e6 + 2e-9]))
    assert not flow_engine.verify_monotone(backward_run([1.0, 1.0 + 2e-9]))
