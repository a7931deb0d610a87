"""
Chart analyzer: leafwise critical points, foliated Hessians and openness checks
"""

import logging
import warnings
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations, product
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import linalg

from config import AppSettings
from managers.boardman_engine import BoardmanEngine
from managers.symbol_calculus import stratum_order_leq
from models.chart import MetricSpec
from models.critical_point import CriticalPointRecord, GenericityReport, OpennessReport
from models.foliated_function import FoliatedFunction
from utils.exceptions import InvariantViolation, OffCriticalWarning, PreconditionError

GridDensity = Union[int, Tuple[int, int]]


class ChartAnalyzer:
    """Finds and classifies leafwise critical points of a foliated function"""

    def __init__(self, engine: Optional[BoardmanEngine] = None,
                 residual_tolerance: float = AppSettings.RESIDUAL_TOLERANCE,
                 dedup_radius: float = AppSettings.DEDUP_RADIUS,
                 eigen_threshold: float = AppSettings.EIGEN_ZERO_THRESHOLD,
                 max_iterations: int = AppSettings.NEWTON_MAX_ITERATIONS):
        self.engine = engine or BoardmanEngine()
        self.residual_tolerance = residual_tolerance
        self.dedup_radius = dedup_radius
        self.eigen_threshold = eigen_threshold
        self.max_iterations = max_iterations

    # -- second differential ----------------------------------------------

    def foliated_hessian(self, f: FoliatedFunction, point: Sequence[float],
                         metric: Optional[MetricSpec] = None):
        """Leafwise Hessian at a point, its g-eigenvalues and signature (d+, d-, d0)"""
        point = np.asarray(point, dtype=float)
        gradient_norm = float(np.linalg.norm(f.leaf_gradient(point)))
        if gradient_norm > AppSettings.OFF_CRITICAL_GRADIENT:
            warnings.warn(f"Point {point.tolist()} is not leafwise critical "
                          f"(gradient norm {gradient_norm:.3e})", OffCriticalWarning)
        hessian = f.leaf_hessian(point)
        hessian = (hessian + hessian.T) / 2
        if metric is None or metric.is_euclidean:
            eigenvalues = np.linalg.eigvalsh(hessian)
        else:
            eigenvalues = linalg.eigh(hessian, metric.require_positive_definite(point), eigvals_only=True)
        signature = self.signature(eigenvalues)
        return hessian, eigenvalues, signature

    def zero_threshold(self, eigenvalues: Sequence[float]) -> float:
        scale = max((abs(e) for e in eigenvalues), default=0.0)
        return self.eigen_threshold * (1 + scale)

    def signature(self, eigenvalues: Sequence[float]) -> Tuple[int, int, int]:
        threshold = self.zero_threshold(eigenvalues)
        d_plus = sum(1 for e in eigenvalues if e > threshold)
        d_minus = sum(1 for e in eigenvalues if e < -threshold)
        return d_plus, d_minus, len(eigenvalues) - d_plus - d_minus

    def schur_rank_consistent(self, hessian: np.ndarray, rank: int) -> bool:
        """With a nonsingular leading r x r block A: rank S = r iff D - B^T A^-1 B = 0"""
        size = hessian.shape[0]
        if rank == size:
            return True
        eigenvalues = np.linalg.eigvalsh(hessian)
        threshold = self.zero_threshold(eigenvalues)
        if rank == 0:
            return bool(np.all(np.abs(hessian) <= threshold))
        for chosen in combinations(range(size), rank):
            rest = [i for i in range(size) if i not in chosen]
            block = hessian[np.ix_(chosen, chosen)]
            if np.min(np.abs(np.linalg.eigvalsh(block))) <= threshold:
                continue
            coupling = hessian[np.ix_(chosen, rest)]
            tail = hessian[np.ix_(rest, rest)]
            complement = tail - coupling.T @ np.linalg.solve(block, coupling)
            return bool(np.all(np.abs(complement) <= threshold))
        return False

    # -- Newton search ------------------------------------------------------

    def newton(self, f: FoliatedFunction, leaf_start: Sequence[float], transverse: Sequence[float]):
        """Newton iteration on the leafwise gradient with the transverse part frozen"""
        x = np.array(leaf_start, dtype=float)
        frozen = np.array(transverse, dtype=float)
        spans = np.array([hi - lo for lo, hi in f.chart.leaf_box])
        lows = np.array([lo for lo, _ in f.chart.leaf_box]) - 10 * spans
        highs = np.array([hi for _, hi in f.chart.leaf_box]) + 10 * spans
        for _ in range(self.max_iterations):
            point = np.concatenate([x, frozen])
            gradient = f.leaf_gradient(point)
            if not np.any(gradient):
                break
            step = np.linalg.lstsq(f.leaf_hessian(point), gradient, rcond=None)[0]
            x = x - step
            if not np.all(np.isfinite(x)) or np.any(x < lows) or np.any(x > highs):
                return None, float("inf")
            if np.linalg.norm(step) <= 1e-15 * (1 + np.linalg.norm(x)):
                break
        residual = float(np.linalg.norm(f.leaf_gradient(np.concatenate([x, frozen]))))
        return x, residual

    @staticmethod
    def _densities(grid_density: GridDensity) -> Tuple[int, int]:
        if isinstance(grid_density, int):
            return grid_density, grid_density
        return int(grid_density[0]), int(grid_density[1])

    @staticmethod
    def transverse_grid(f: FoliatedFunction, density: int):
        """(index, value) pairs of the transverse sweep; a single empty pair when q = 0"""
        axes = [np.linspace(lo, hi, density) for lo, hi in f.chart.transverse_box]
        if not axes:
            return [((), ())]
        indices = product(*[range(len(axis)) for axis in axes])
        return [(idx, tuple(float(axes[k][i]) for k, i in enumerate(idx))) for idx in indices]

    @staticmethod
    def leaf_seeds(f: FoliatedFunction, density: int):
        axes = [np.linspace(lo, hi, density) for lo, hi in f.chart.leaf_box]
        return [np.array(seed, dtype=float) for seed in product(*axes)]

    def find_critical_points(self, f: FoliatedFunction, metric: Optional[MetricSpec] = None,
                             grid_density: GridDensity = (AppSettings.DEFAULT_LEAF_GRID,
                                                          AppSettings.DEFAULT_TRANSVERSE_GRID)
                             ) -> List[CriticalPointRecord]:
        """Leafwise critical points in the box, swept over a grid of transverse values"""
        leaf_density, transverse_density = self._densities(grid_density)
        if leaf_density < 1 or transverse_density < 1:
            raise PreconditionError("Grid densities must be positive")
        records = []
        for index, transverse in self.transverse_grid(f, transverse_density):
            found: List[np.ndarray] = []
            for seed in self.leaf_seeds(f, leaf_density):
                root, residual = self.newton(f, seed, transverse)
                if root is None or residual >= self.residual_tolerance:
                    continue
                if not f.chart.leaf_contains(root, slack=1e-9):
                    continue
                if any(np.linalg.norm(root - other) <= self.dedup_radius for other in found):
                    continue
                found.append(root)
            for root in found:
                records.append(self._record(f, tuple(root) + tuple(transverse), index, metric))
        records.sort(key=lambda r: (r.transverse_index, r.location))
        logging.info(f"Found {len(records)} leafwise critical points of {f.describe()}")
        return records

    def _record(self, f: FoliatedFunction, location, index, metric) -> CriticalPointRecord:
        point = np.array(location, dtype=float)
        hessian, eigenvalues, (d_plus, d_minus, d_zero) = self.foliated_hessian(f, point, metric)
        return CriticalPointRecord(
            location=tuple(float(x) for x in location),
            leaf_dim=f.leaf_dim,
            value=f.value(point),
            gradient_norm=float(np.linalg.norm(f.leaf_gradient(point))),
            hessian=tuple(tuple(float(x) for x in row) for row in hessian),
            eigenvalues=tuple(float(e) for e in eigenvalues),
            d_plus=d_plus,
            d_minus=d_minus,
            d_zero=d_zero,
            transverse_index=tuple(index),
        )

    # -- classification -----------------------------------------------------

    @staticmethod
    def rational_point(f: FoliatedFunction, location: Sequence[float]) -> Optional[List[Fraction]]:
        """Snap to small-denominator rationals when f is exactly leafwise critical there"""
        snapped = [Fraction(x).limit_denominator(AppSettings.EXACT_POINT_DENOMINATOR) for x in location]
        if any(abs(float(s) - x) > 1e-9 for s, x in zip(snapped, location)):
            return None
        if any(g != 0 for g in f.exact_leaf_gradient(snapped)):
            return None
        return snapped

    def classify_point(self, record: CriticalPointRecord, f: FoliatedFunction,
                       order: int = AppSettings.SYMBOL_JET_ORDER) -> CriticalPointRecord:
        """Attach the Boardman symbol: exact at rational points, (n, n - rank) otherwise"""
        rank = record.hessian_rank
        if not self.schur_rank_consistent(np.array(record.hessian), rank):
            logging.warning(f"Schur complement test disagrees with rank {rank} at {record.location}")
        exact_point = self.rational_point(f, record.location)
        if exact_point is None:
            record.symbol = (f.leaf_dim, f.leaf_dim - rank)
            record.exact = False
            return record
        symbol = self.engine.foliated_symbol(f.jet_at(exact_point, order), order)
        if symbol[0] != f.leaf_dim or (len(symbol) > 1 and symbol[1] != f.leaf_dim - rank):
            raise InvariantViolation(
                f"Exact symbol {symbol} disagrees with Hessian rank {rank} at {record.location}")
        record.symbol = symbol.entries
        record.exact = True
        return record

    def classify_all(self, records: List[CriticalPointRecord], f: FoliatedFunction,
                     order: int = AppSettings.SYMBOL_JET_ORDER) -> List[CriticalPointRecord]:
        return [self.classify_point(r, f, order) for r in records]

    # -- checks ------------------------------------------------------------------

    def openness_check(self, f: FoliatedFunction, metric: Optional[MetricSpec] = None,
                       grid_density: GridDensity = (AppSettings.DEFAULT_LEAF_GRID,
                                                    AppSettings.DEFAULT_TRANSVERSE_GRID)
                       ) -> OpennessReport:
        """PASS iff every sampled leafwise critical point has d+ >= 1"""
        records = self.find_critical_points(f, metric, grid_density)
        report = OpennessReport(records, f.chart.declared_proper)
        if report.passed and report.declared_proper:
            logging.warning("Openness check passed on a chart declared proper: "
                            "a closed foliated manifold always carries leafwise maxima")
        logging.info(f"Openness check for {f.describe()}: {report.verdict} "
                     f"({len(report.witnesses)} witnesses, {len(report.suspects)} suspects)")
        return report

    def genericity_spotcheck(self, f: FoliatedFunction,
                             records: List[CriticalPointRecord]) -> GenericityReport:
        """Separation, degeneracy pattern and ordinary critical points of a sample"""
        separation = None
        by_leaf = {}
        for record in records:
            by_leaf.setdefault(record.transverse_index, []).append(record)
        for group in by_leaf.values():
            for a, b in combinations(group, 2):
                distance = float(np.linalg.norm(np.subtract(a.leaf_point, b.leaf_point)))
                separation = distance if separation is None else min(separation, distance)

        degenerate = sorted({r.transverse_index for r in records if r.is_degenerate})
        isolated = not any(
            sum(abs(x - y) for x, y in zip(a, b)) == 1 for a, b in combinations(degenerate, 2)
        )
        totally_degenerate = sum(1 for r in records if r.d_zero == f.leaf_dim)

        ordinary, nondegenerate = [], []
        for record in records:
            point = np.array(record.location)
            if np.linalg.norm(f.gradient(point)) < AppSettings.FLOW_CONVERGENCE_NORM:
                eigenvalues = np.linalg.eigvalsh(f.hessian(point))
                ordinary.append(record.location)
                nondegenerate.append(bool(np.min(np.abs(eigenvalues)) > self.zero_threshold(eigenvalues)))
        return GenericityReport(separation, sum(1 for r in records if r.is_degenerate), degenerate,
                                isolated, totally_degenerate, ordinary, nondegenerate)

    @staticmethod
    def order_strata(records: List[CriticalPointRecord]) -> List[Tuple[int, Tuple[int, ...]]]:
        """Distinct (d+, symbol) strata of the records, smallest first"""
        strata = {
            (r.d_plus, tuple(r.symbol if r.symbol is not None else (r.leaf_dim, r.d_zero)))
            for r in records
        }
        if not strata:
            return []
        leaf_dim = records[0].leaf_dim

        def compare(a, b):
            below = stratum_order_leq(a, b, leaf_dim)
            above = stratum_order_leq(b, a, leaf_dim)
            if below and not above:
                return -1
            if above and not below:
                return 1
            return (a > b) - (a < b)

        return sorted(strata, key=cmp_to_key(compare))
