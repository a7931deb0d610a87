"""
Flow verifier: flow-level checks on model charts.

* confinement: for f = x_1^2 + ... + x_d^2 + r(x_(d+1), ..., v) the sampled
  skeleton stays on the plane P = {x_1 = ... = x_d = 0}, and runs started
  on P never leave it;
* stable set: with a metric adapted to P, P is invariant and the distance
  to P never decreases along forward runs near P;
* descent dichotomy: every backward run from a slice [a, b] either drops
  below a or converges to the skeleton inside the slice.
"""

import logging
from fractions import Fraction
from typing import Dict, List, Optional

import numpy as np

from config import AppSettings
from managers.flow_engine import FlowEngine
from models.chart import MetricSpec, SliceSpec
from models.expression import evaluate
from models.foliated_function import FoliatedFunction
from models.trajectory import CheckResult, DescentClass, Direction, FlowBudget, TrajectoryStatus
from utils.exceptions import PreconditionError


class FlowVerifier:
    """Runs the confinement, stable-set and descent checks"""

    def __init__(self, engine: Optional[FlowEngine] = None, seed: int = AppSettings.DEFAULT_SAMPLE_SEED):
        self.engine = engine or FlowEngine()
        self.seed = seed

    # -- model shape --------------------------------------------------------

    @staticmethod
    def _check_plane_dim(f: FoliatedFunction, model_dim: int) -> None:
        if not 1 <= model_dim <= f.leaf_dim:
            raise PreconditionError(f"Model dimension d = {model_dim} outside 1..{f.leaf_dim}")

    def model_shape_holds(self, f: FoliatedFunction, model_dim: int, samples: int = 8) -> bool:
        """df/dx_i = 2 x_i for i <= d, checked exactly at rational sample points"""
        self._check_plane_dim(f, model_dim)
        rng = np.random.default_rng(self.seed)
        for _ in range(samples):
            point = [Fraction(int(k), 7) for k in rng.integers(-14, 15, size=f.chart.total_dim)]
            for i in range(model_dim):
                partial = evaluate(f.gradient_exprs[i], point, f.leaf_dim)
                if partial != 2 * point[i]:
                    return False
        return True

    @staticmethod
    def plane_distance(point, model_dim: int) -> float:
        return float(np.linalg.norm(np.asarray(point[:model_dim], dtype=float)))

    def _plane_points(self, f: FoliatedFunction, model_dim: int, count: int) -> List[np.ndarray]:
        rng = np.random.default_rng(self.seed)
        points = []
        for _ in range(count):
            point = np.array([rng.uniform(lo, hi) for lo, hi in f.chart.box])
            point[:model_dim] = 0.0
            points.append(point)
        return points

    # -- confinement --------------------------------------------------------

    def confinement_check(self, f: FoliatedFunction, metric: Optional[MetricSpec], model_dim: int,
                          slice_spec: SliceSpec, grid_density: int = AppSettings.DEFAULT_LEAF_GRID,
                          tolerance: float = AppSettings.CONFINEMENT_TOLERANCE,
                          budget: FlowBudget = FlowBudget(), plane_samples: int = 8) -> CheckResult:
        """Skeleton samples and runs started on P stay within ``tolerance`` of P"""
        if not self.model_shape_holds(f, model_dim):
            raise PreconditionError(f"Function is not of the form x_1^2 + ... + x_{model_dim}^2 + rest")
        skeleton = self.engine.skeleton_sample(f, metric, slice_spec, grid_density, budget)
        skeleton_deviation = max(
            (max(self.plane_distance(s.start, model_dim), self.plane_distance(s.limit, model_dim))
             for s in skeleton), default=0.0)

        plane_deviation = 0.0
        for start in self._plane_points(f, model_dim, plane_samples):
            run = self.engine.integrate(f, metric, start, Direction.FORWARD, budget)
            inside = [p for p in run.points if f.chart.contains(p)]
            plane_deviation = max([plane_deviation] + [self.plane_distance(p, model_dim) for p in inside])

        deviation = max(skeleton_deviation, plane_deviation)
        result = CheckResult("confinement", deviation <= tolerance, deviation, {
            'model_dim': model_dim,
            'skeleton_points': len(skeleton),
            'skeleton_deviation': skeleton_deviation,
            'plane_sample_deviation': plane_deviation,
            'tolerance': tolerance,
        })
        logging.info(f"Confinement check for {f.describe()}: {result.verdict} (deviation {deviation:.3e})")
        return result

    # -- stable set ---------------------------------------------------------

    def require_adapted(self, f: FoliatedFunction, metric: Optional[MetricSpec], model_dim: int,
                        samples: int = 8) -> None:
        """The metric must make P orthogonal to the remaining leaf directions along P"""
        if metric is None or metric.is_euclidean:
            return
        for point in self._plane_points(f, model_dim, samples):
            matrix = metric.matrix_at(point)
            coupling = matrix[:model_dim, model_dim:f.leaf_dim]
            if coupling.size and np.max(np.abs(coupling)) > AppSettings.ADAPTEDNESS_TOLERANCE:
                raise PreconditionError("Metric is not adapted to the plane P: off-diagonal block does not vanish")

    def stable_set_check(self, f: FoliatedFunction, metric: Optional[MetricSpec], model_dim: int,
                         radius: float, samples: int = 16, budget: FlowBudget = FlowBudget()) -> CheckResult:
        """P is invariant and the distance to P is nondecreasing on forward runs inside the radius"""
        self._check_plane_dim(f, model_dim)
        if radius <= 0:
            raise PreconditionError("Neighbourhood radius must be positive")
        if not self.model_shape_holds(f, model_dim):
            raise PreconditionError(f"Function is not of the form x_1^2 + ... + x_{model_dim}^2 + rest")
        self.require_adapted(f, metric, model_dim)

        drift = 0.0
        for start in self._plane_points(f, model_dim, samples):
            run = self.engine.integrate(f, metric, start, Direction.FORWARD, budget)
            drift = max([drift] + [self.plane_distance(p, model_dim) for p in run.points])

        rng = np.random.default_rng(self.seed + 1)
        decrease = 0.0
        violations = 0
        for start in self._plane_points(f, model_dim, samples):
            offset = rng.normal(size=model_dim)
            offset *= rng.uniform(0.1, 1.0) * radius / np.linalg.norm(offset)
            start[:model_dim] = offset
            if not f.chart.contains(start):
                continue
            run = self.engine.integrate(f, metric, start, Direction.FORWARD, budget)
            distances = [self.plane_distance(p, model_dim) for p in run.points]
            for earlier, later in zip(distances, distances[1:]):
                if earlier > radius:
                    break
                if later < earlier - AppSettings.STABLE_SET_STEP_TOLERANCE:
                    violations += 1
                    decrease = max(decrease, earlier - later)

        passed = drift <= AppSettings.STABLE_SET_DRIFT_TOLERANCE and violations == 0
        result = CheckResult("stable_set", passed, max(drift, decrease), {
            'model_dim': model_dim,
            'radius': radius,
            'plane_drift': drift,
            'distance_decrease_violations': violations,
            'largest_decrease': decrease,
        })
        logging.info(f"Stable set check for {f.describe()}: {result.verdict}")
        return result

    # -- descent dichotomy --------------------------------------------------

    def classify_descent(self, f: FoliatedFunction, metric: Optional[MetricSpec], start, slice_spec: SliceSpec,
                         budget: FlowBudget, epsilon: float):
        run = self.engine.integrate(f, metric, start, Direction.BACKWARD, budget, stop_below=slice_spec.lower)
        if run.status is TrajectoryStatus.PASSED_LEVEL:
            return DescentClass.REACHED_BELOW, run
        if run.status is TrajectoryStatus.CONVERGED and run.limit is not None:
            near = float(np.linalg.norm(np.subtract(run.final_point, run.limit))) <= epsilon
            if near and slice_spec.contains(f.value(run.limit), slack=1e-9):
                return DescentClass.NEAR_SKELETON, run
        return DescentClass.UNRESOLVED, run

    def descent_dichotomy(self, f: FoliatedFunction, metric: Optional[MetricSpec], slice_spec: SliceSpec,
                          grid_density: int = 50, budget: FlowBudget = FlowBudget(),
                          epsilon: float = AppSettings.NEAR_SKELETON_EPSILON) -> CheckResult:
        """Partition of the slice's grid points by the fate of their backward run"""
        is_valid, errors = slice_spec.validate()
        if not is_valid:
            raise PreconditionError("; ".join(errors))
        counts: Dict[str, int] = {c.value: 0 for c in DescentClass}
        classes = []
        gap = None
        for point in self.engine.box_grid(f, grid_density):
            value = f.value(point)
            if not slice_spec.contains(value):
                continue
            label, run = self.classify_descent(f, metric, point, slice_spec, budget, epsilon)
            counts[label.value] += 1
            classes.append({'point': point.tolist(), 'class': label.value})
            if run.status is TrajectoryStatus.CONVERGED and run.steps > 0:
                drop = value - f.value(run.limit)
                gap = drop if gap is None else min(gap, drop)

        total = sum(counts.values())
        unresolved = counts[DescentClass.UNRESOLVED.value] / total if total else 0.0
        result = CheckResult("descent_dichotomy", unresolved <= AppSettings.DESCENT_UNRESOLVED_FRACTION, unresolved, {
            'slice': [slice_spec.lower, slice_spec.upper],
            'counts': counts,
            'points': total,
            'slicing_gap': gap,
            'classes': classes,
        })
        logging.info(f"Descent dichotomy for {f.describe()}: {counts}")
        return result
