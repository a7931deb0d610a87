"""
Leafwise gradient trajectories and the results of the flow checks
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

from config import AppSettings


class TrajectoryStatus(Enum):
    """How an integration run ended"""
    CONVERGED = "Converged"
    EXITED_BOX = "ExitedBox"
    TIME_BUDGET_EXHAUSTED = "TimeBudgetExhausted"
    PASSED_LEVEL = "PassedLevel"


class Direction(Enum):
    FORWARD = "forward"
    BACKWARD = "backward"

    @property
    def sign(self) -> float:
        return 1.0 if self is Direction.FORWARD else -1.0


class DescentClass(Enum):
    """Classification of a backward run started in a slice"""
    REACHED_BELOW = "ReachedBelowA"
    NEAR_SKELETON = "NearSkeleton"
    UNRESOLVED = "Unresolved"


@dataclass(frozen=True)
class FlowBudget:
    max_time: float = AppSettings.FLOW_MAX_TIME
    max_steps: int = AppSettings.FLOW_MAX_STEPS


@dataclass
class Trajectory:
    """Time-ordered samples (t, point, f) of one run"""
    start: Tuple[float, ...]
    direction: Direction
    times: List[float] = field(default_factory=list)
    points: List[Tuple[float, ...]] = field(default_factory=list)
    values: List[float] = field(default_factory=list)
    status: TrajectoryStatus = TrajectoryStatus.TIME_BUDGET_EXHAUSTED
    limit: Optional[Tuple[float, ...]] = None
    degenerate_limit: bool = False
    step_underflow: bool = False

    def append(self, t: float, point, value: float) -> None:
        self.times.append(float(t))
        self.points.append(tuple(float(x) for x in point))
        self.values.append(float(value))

    @property
    def steps(self) -> int:
        return max(len(self.times) - 1, 0)

    @property
    def final_point(self) -> Tuple[float, ...]:
        return self.points[-1]

    def to_rows(self, names: List[str]) -> List[Dict[str, float]]:
        rows = []
        for t, point, value in zip(self.times, self.points, self.values):
            row = {'t': t}
            row.update({name: x for name, x in zip(names, point)})
            row['f'] = value
            rows.append(row)
        return rows

    def to_dict(self) -> dict:
        """Convert to dictionary for serialization"""
        return {
            'start': list(self.start),
            'direction': self.direction.value,
            'status': self.status.value,
            'steps': self.steps,
            'final_point': list(self.final_point) if self.points else None,
            'limit': list(self.limit) if self.limit is not None else None,
            'degenerate_limit': self.degenerate_limit,
            'step_underflow': self.step_underflow,
        }


@dataclass
class CheckResult:
    """Verdict of a flow-level verification"""
    name: str
    passed: bool
    metric: float
    details: Dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def to_dict(self) -> dict:
        return {'check': self.name, 'verdict': self.verdict, 'metric': self.metric, 'details': self.details}


@dataclass(frozen=True)
class SkeletonSample:
    """A grid point whose forward run converged inside the slice"""
    start: Tuple[float, ...]
    limit: Tuple[float, ...]
    value: float

    def to_dict(self) -> dict:
        return {'start': list(self.start), 'limit': list(self.limit), 'value': self.value}
