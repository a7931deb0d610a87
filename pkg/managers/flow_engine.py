"""
Flow engine: integration of the leafwise gradient flow and skeleton sampling
"""

import logging
from itertools import product
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import RK45

from config import AppSettings
from managers.chart_analyzer import ChartAnalyzer
from models.chart import MetricSpec, SliceSpec
from models.foliated_function import FoliatedFunction
from models.trajectory import Direction, FlowBudget, SkeletonSample, Trajectory, TrajectoryStatus
from utils.exceptions import PreconditionError


class FlowEngine:
    """Integrates x' = +/- grad_leaf f on the leaf through the starting point.

    Forward runs ascend f. The transverse coordinates are frozen for the
    whole run, so trajectories never leave their leaf.
    """

    def __init__(self, analyzer: Optional[ChartAnalyzer] = None,
                 error_control: float = AppSettings.FLOW_ERROR_CONTROL,
                 convergence_norm: float = AppSettings.FLOW_CONVERGENCE_NORM,
                 monotonicity_slack: float = AppSettings.MONOTONICITY_SLACK):
        self.analyzer = analyzer or ChartAnalyzer()
        self.error_control = error_control
        self.convergence_norm = convergence_norm
        self.monotonicity_slack = monotonicity_slack

    @staticmethod
    def leafwise_gradient(f: FoliatedFunction, metric: Optional[MetricSpec], point: Sequence[float]) -> np.ndarray:
        """G_leaf^-1 * d_leaf f"""
        partials = f.leaf_gradient(point)
        if metric is None or metric.is_euclidean:
            return partials
        return np.linalg.solve(metric.matrix_at(point), partials)

    def integrate(self, f: FoliatedFunction, metric: Optional[MetricSpec], start: Sequence[float],
                  direction: Direction = Direction.FORWARD, budget: FlowBudget = FlowBudget(),
                  stop_below: Optional[float] = None) -> Trajectory:
        """One run until convergence, box exit, level crossing or budget exhaustion"""
        start = np.asarray(start, dtype=float)
        if start.shape != (f.chart.total_dim,):
            raise PreconditionError(f"Start point must have {f.chart.total_dim} coordinates")
        if not f.chart.contains(start):
            raise PreconditionError(f"Start point {start.tolist()} lies outside the box")
        if metric is not None:
            metric.require_positive_definite(start)

        n = f.leaf_dim
        frozen = start[n:].copy()
        sign = direction.sign
        trajectory = Trajectory(tuple(start.tolist()), direction)
        trajectory.append(0.0, start, f.value(start))

        def full(leaf):
            return np.concatenate([leaf, frozen])

        def rhs(_t, leaf):
            return sign * self.leafwise_gradient(f, metric, full(leaf))

        if np.linalg.norm(self.leafwise_gradient(f, metric, start)) < self.convergence_norm:
            return self._finish_converged(f, trajectory, start[:n], frozen)

        solver = RK45(rhs, 0.0, start[:n], budget.max_time,
                      rtol=self.error_control, atol=self.error_control)
        steps = 0
        while True:
            message = solver.step()
            steps += 1
            if solver.status == "failed":
                trajectory.step_underflow = True
                trajectory.status = TrajectoryStatus.TIME_BUDGET_EXHAUSTED
                logging.info(f"Integration from {start.tolist()} failed: {message}")
                return trajectory
            point = full(solver.y)
            value = f.value(point)
            trajectory.append(sign * solver.t, point, value)
            if not f.chart.contains(point):
                trajectory.status = TrajectoryStatus.EXITED_BOX
                return trajectory
            if stop_below is not None and value < stop_below:
                trajectory.status = TrajectoryStatus.PASSED_LEVEL
                return trajectory
            if np.linalg.norm(self.leafwise_gradient(f, metric, point)) < self.convergence_norm:
                return self._finish_converged(f, trajectory, solver.y, frozen)
            if solver.status == "finished" or steps >= budget.max_steps:
                trajectory.status = TrajectoryStatus.TIME_BUDGET_EXHAUSTED
                return trajectory

    def _finish_converged(self, f: FoliatedFunction, trajectory: Trajectory, leaf, frozen) -> Trajectory:
        """Polish the limit by Newton; keep the flow end point when polishing fails"""
        polished, residual = self.analyzer.newton(f, leaf, frozen)
        trajectory.status = TrajectoryStatus.CONVERGED
        if polished is not None and residual < self.analyzer.residual_tolerance:
            limit = np.concatenate([polished, frozen])
            _, _, (_, _, d_zero) = self.analyzer.foliated_hessian(f, limit)
            trajectory.degenerate_limit = d_zero > 0
        else:
            limit = np.concatenate([np.asarray(leaf, dtype=float), frozen])
            trajectory.degenerate_limit = True
        trajectory.limit = tuple(float(x) for x in limit)
        return trajectory

    def limit_points(self, f: FoliatedFunction, metric: Optional[MetricSpec], point: Sequence[float],
                     budget: FlowBudget = FlowBudget()) -> Tuple[Trajectory, Trajectory]:
        """Backward and forward runs from the same point"""
        backward = self.integrate(f, metric, point, Direction.BACKWARD, budget)
        forward = self.integrate(f, metric, point, Direction.FORWARD, budget)
        return backward, forward

    # -- invariants of a single run -------------------------------------------------

    def verify_monotone(self, trajectory: Trajectory) -> bool:
        """f is nondecreasing along forward runs and nonincreasing along backward runs"""
        sign = trajectory.direction.sign
        values = trajectory.values
        return all(
            sign * (later - earlier) >= -self.monotonicity_slack
            for earlier, later in zip(values, values[1:])
        )

    @staticmethod
    def verify_leafwise(trajectory: Trajectory, leaf_dim: int) -> bool:
        """Every sample keeps the transverse coordinates of the start"""
        transverse = trajectory.start[leaf_dim:]
        return all(point[leaf_dim:] == transverse for point in trajectory.points)

    # -- sampling -----------------------------------------------------------------

    @staticmethod
    def box_grid(f: FoliatedFunction, density: int) -> List[np.ndarray]:
        axes = [np.linspace(lo, hi, density) for lo, hi in f.chart.box]
        return [np.array(p, dtype=float) for p in product(*axes)]

    def skeleton_sample(self, f: FoliatedFunction, metric: Optional[MetricSpec], slice_spec: SliceSpec,
                        grid_density: int = AppSettings.DEFAULT_LEAF_GRID,
                        budget: FlowBudget = FlowBudget()) -> List[SkeletonSample]:
        """Grid points in the slice whose forward run converges inside the slice"""
        is_valid, errors = slice_spec.validate()
        if not is_valid:
            raise PreconditionError("; ".join(errors))
        samples = []
        for point in self.box_grid(f, grid_density):
            value = f.value(point)
            if not slice_spec.contains(value):
                continue
            run = self.integrate(f, metric, point, Direction.FORWARD, budget)
            if run.status is not TrajectoryStatus.CONVERGED or run.limit is None:
                continue
            if slice_spec.contains(f.value(run.limit), slack=1e-9):
                samples.append(SkeletonSample(tuple(point.tolist()), run.limit, value))
        logging.info(f"Skeleton sample of {f.describe()} on [{slice_spec.lower}, {slice_spec.upper}]: "
                     f"{len(samples)} points")
        return samples
