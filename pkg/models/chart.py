"""
Product charts, leafwise metrics and slices
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from models.expression import Const, Expr, compile_float, render
from utils.exceptions import InputError


@dataclass(frozen=True)
class ChartSpec:
    """Product chart R^n x R^q with a bounded box, leaf coordinates first"""
    leaf_dim: int
    transverse_dim: int
    box: Tuple[Tuple[float, float], ...]
    declared_proper: bool = False

    def __post_init__(self):
        object.__setattr__(self, "box", tuple((float(lo), float(hi)) for lo, hi in self.box))

    @property
    def total_dim(self) -> int:
        return self.leaf_dim + self.transverse_dim

    @property
    def leaf_box(self) -> Tuple[Tuple[float, float], ...]:
        return self.box[:self.leaf_dim]

    @property
    def transverse_box(self) -> Tuple[Tuple[float, float], ...]:
        return self.box[self.leaf_dim:]

    def validate(self) -> Tuple[bool, List[str]]:
        """Validate dimensions and box"""
        errors = []
        if self.leaf_dim < 1:
            errors.append("Leaf dimension must be at least 1")
        if self.transverse_dim < 0:
            errors.append("Transverse dimension must be non-negative")
        if len(self.box) != self.total_dim:
            errors.append(f"Box has {len(self.box)} intervals, chart has {self.total_dim} coordinates")
        for i, (lo, hi) in enumerate(self.box):
            if not np.isfinite(lo) or not np.isfinite(hi) or lo >= hi:
                errors.append(f"Interval {i + 1} [{lo}, {hi}] is empty or unbounded")
        return len(errors) == 0, errors

    def contains(self, point: Sequence[float], slack: float = 0.0) -> bool:
        return all(lo - slack <= x <= hi + slack for x, (lo, hi) in zip(point, self.box))

    def leaf_contains(self, leaf_point: Sequence[float], slack: float = 0.0) -> bool:
        return all(lo - slack <= x <= hi + slack for x, (lo, hi) in zip(leaf_point, self.leaf_box))

    def coordinate_names(self) -> List[str]:
        return [f"x{i + 1}" for i in range(self.leaf_dim)] + [f"v{j + 1}" for j in range(self.transverse_dim)]

    def extended(self, interval: Tuple[float, float] = (-1.0, 1.0)) -> "ChartSpec":
        """The chart with one more leaf coordinate inserted after the leaf block"""
        box = self.leaf_box + (tuple(interval),) + self.transverse_box
        return ChartSpec(self.leaf_dim + 1, self.transverse_dim, box, self.declared_proper)

    def to_dict(self) -> dict:
        return {
            'leaf_dim': self.leaf_dim,
            'transverse_dim': self.transverse_dim,
            'box': [list(interval) for interval in self.box],
            'declared_proper': self.declared_proper,
        }


@dataclass(frozen=True)
class SliceSpec:
    """Closed sublevel slice a <= f <= b"""
    lower: float
    upper: float

    def validate(self) -> Tuple[bool, List[str]]:
        errors = []
        if not self.lower < self.upper:
            errors.append(f"Slice [{self.lower}, {self.upper}] must satisfy a < b")
        return len(errors) == 0, errors

    def contains(self, value: float, slack: float = 0.0) -> bool:
        return self.lower - slack <= value <= self.upper + slack


@dataclass(frozen=True)
class MetricSpec:
    """Leafwise Riemannian metric: a symmetric n x n block of expressions"""
    entries: Optional[Tuple[Tuple[Expr, ...], ...]] = None
    leaf_dim: int = 1
    _compiled: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if self.entries is not None:
            compiled = tuple(tuple(compile_float(e, self.leaf_dim) for e in row) for row in self.entries)
            object.__setattr__(self, "_compiled", compiled)

    @classmethod
    def euclidean(cls, leaf_dim: int) -> "MetricSpec":
        return cls(None, leaf_dim)

    @classmethod
    def constant(cls, matrix: Sequence[Sequence], leaf_dim: int) -> "MetricSpec":
        entries = tuple(tuple(Const(Fraction(value)) for value in row) for row in matrix)
        return cls(entries, leaf_dim)

    @property
    def is_euclidean(self) -> bool:
        return self.entries is None

    def validate(self) -> Tuple[bool, List[str]]:
        """Shape and symmetry of the block"""
        errors = []
        if self.entries is None:
            return True, errors
        if len(self.entries) != self.leaf_dim or any(len(row) != self.leaf_dim for row in self.entries):
            errors.append(f"Metric must be a {self.leaf_dim}x{self.leaf_dim} block")
            return False, errors
        for i in range(self.leaf_dim):
            for j in range(i + 1, self.leaf_dim):
                if render(self.entries[i][j]) != render(self.entries[j][i]):
                    errors.append(f"Metric entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) differ")
        return len(errors) == 0, errors

    def matrix_at(self, point: Sequence[float]) -> np.ndarray:
        if self.entries is None:
            return np.eye(self.leaf_dim)
        return np.array([[fn(point) for fn in row] for row in self._compiled], dtype=float)

    def require_positive_definite(self, point: Sequence[float]) -> np.ndarray:
        matrix = self.matrix_at(point)
        try:
            np.linalg.cholesky(matrix)
        except np.linalg.LinAlgError:
            raise InputError(f"Metric is not positive definite at {list(point)}")
        return matrix

    def extended(self) -> "MetricSpec":
        """Block sum with 1 on a new leaf coordinate appended to the leaf block"""
        if self.entries is None:
            return MetricSpec(None, self.leaf_dim + 1)
        zero, one = Const(Fraction(0)), Const(Fraction(1))
        rows = tuple(tuple(row) + (zero,) for row in self.entries)
        rows = rows + (tuple([zero] * self.leaf_dim + [one]),)
        return MetricSpec(rows, self.leaf_dim + 1)

    def to_dict(self) -> dict:
        if self.entries is None:
            return {'euclidean': True}
        return {'euclidean': False, 'entries': [[render(e) for e in row] for row in self.entries]}
