"""
Leafwise critical point record
"""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple


@dataclass
class CriticalPointRecord:
    """A leafwise critical point of f together with its second-order data"""
    location: Tuple[float, ...]
    leaf_dim: int
    value: float
    gradient_norm: float
    hessian: Tuple[Tuple[float, ...], ...]
    eigenvalues: Tuple[float, ...]
    d_plus: int
    d_minus: int
    d_zero: int
    transverse_index: Tuple[int, ...] = field(default_factory=tuple)
    symbol: Optional[Tuple[int, ...]] = None
    exact: bool = False

    @property
    def leaf_point(self) -> Tuple[float, ...]:
        return self.location[:self.leaf_dim]

    @property
    def transverse_point(self) -> Tuple[float, ...]:
        return self.location[self.leaf_dim:]

    @property
    def is_degenerate(self) -> bool:
        return self.d_zero > 0

    @property
    def is_leafwise_max(self) -> bool:
        """Nondegenerate maximum on its leaf"""
        return self.d_plus == 0 and self.d_zero == 0

    @property
    def is_suspect(self) -> bool:
        """No positive direction, but degenerate: second order is inconclusive"""
        return self.d_plus == 0 and self.d_zero > 0

    @property
    def hessian_rank(self) -> int:
        return self.leaf_dim - self.d_zero

    def stratum_label(self) -> str:
        """Sigma_d^I with d = d_plus and I the (possibly partial) symbol"""
        entries = self.symbol if self.symbol is not None else (self.leaf_dim, self.d_zero)
        return f"Sigma_{self.d_plus}^({','.join(str(e) for e in entries)})"

    def validate(self) -> Tuple[bool, List[str]]:
        """Signature and shape consistency"""
        errors = []
        if self.d_plus + self.d_minus + self.d_zero != self.leaf_dim:
            errors.append("Signature does not add up to the leaf dimension")
        if len(self.hessian) != self.leaf_dim:
            errors.append("Hessian has the wrong size")
        if self.symbol is not None and (self.symbol[0] != self.leaf_dim or
                                        (len(self.symbol) > 1 and self.symbol[1] != self.d_zero)):
            errors.append("Symbol prefix disagrees with the Hessian")
        return len(errors) == 0, errors

    def to_dict(self) -> dict:
        """Convert to dictionary for serialization"""
        return {
            'location': list(self.location),
            'value': self.value,
            'gradient_norm': self.gradient_norm,
            'hessian': [list(row) for row in self.hessian],
            'eigenvalues': list(self.eigenvalues),
            'd_plus': self.d_plus,
            'd_minus': self.d_minus,
            'd_zero': self.d_zero,
            'symbol': list(self.symbol) if self.symbol is not None else None,
            'exact': self.exact,
            'stratum': self.stratum_label(),
        }


@dataclass
class OpennessReport:
    """Second-order test for the absence of leafwise maxima"""
    records: List[CriticalPointRecord]
    declared_proper: bool = False

    @property
    def witnesses(self) -> List[CriticalPointRecord]:
        return [r for r in self.records if r.is_leafwise_max]

    @property
    def suspects(self) -> List[CriticalPointRecord]:
        return [r for r in self.records if r.is_suspect]

    @property
    def passed(self) -> bool:
        return all(r.d_plus >= 1 for r in self.records)

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def to_dict(self) -> dict:
        """Convert to dictionary for serialization"""
        return {
            'verdict': self.verdict,
            'declared_proper': self.declared_proper,
            'record_count': len(self.records),
            'witnesses': [r.to_dict() for r in self.witnesses],
            'suspects': [r.to_dict() for r in self.suspects],
        }


@dataclass
class GenericityReport:
    """Spot-check of the genericity conditions on a sample of critical points"""
    min_separation: Optional[float]
    degenerate_count: int
    degenerate_transverse: List[Tuple[int, ...]]
    degenerate_isolated: bool
    totally_degenerate_count: int
    ordinary_points: List[Tuple[float, ...]] = field(default_factory=list)
    ordinary_nondegenerate: List[bool] = field(default_factory=list)

    @property
    def separated(self) -> bool:
        return self.min_separation is None or self.min_separation > 0

    def to_dict(self) -> dict:
        """Convert to dictionary for serialization"""
        return {
            'min_separation': self.min_separation,
            'degenerate_count': self.degenerate_count,
            'degenerate_transverse': [list(t) for t in self.degenerate_transverse],
            'degenerate_isolated': self.degenerate_isolated,
            'totally_degenerate_count': self.totally_degenerate_count,
            'ordinary_points': [list(p) for p in self.ordinary_points],
            'ordinary_nondegenerate': list(self.ordinary_nondegenerate),
        }
