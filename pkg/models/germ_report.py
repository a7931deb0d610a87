"""
Result models of the germ analyzer
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple


@dataclass(frozen=True)
class CodimResult:
    """dim m/J computed by stabilisation of dim m/(J + m^j), j = 2..W"""
    value: Optional[int]
    order: int
    sequence: Tuple[int, ...] = field(default_factory=tuple)

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def exceeds(self, bound: int) -> bool:
        """Strictly greater than ``bound``; an unstabilised value always exceeds"""
        return self.value is None or self.value > bound

    def label(self) -> str:
        return str(self.value) if self.is_finite else f"infinite-at-order-{self.order}"

    def to_dict(self) -> Dict:
        return {
            'codim': self.value,
            'finite': self.is_finite,
            'label': self.label(),
            'order': self.order,
            'sequence': list(self.sequence),
        }


@dataclass(frozen=True)
class ZkResult:
    """Membership of a singular jet in Z^k, decided along two paths"""
    k: int
    member: bool
    span_dimension: int
    ambient_dimension: int
    codim: CodimResult

    def to_dict(self) -> Dict:
        return {
            'k': self.k,
            'member': self.member,
            'span_dimension': self.span_dimension,
            'ambient_dimension': self.ambient_dimension,
            'codim': self.codim.to_dict(),
        }


@dataclass
class GermReport:
    """Summary of the algebraic invariants of a function germ"""
    germ: str
    n: int
    codim: CodimResult
    isolated: bool
    determinacy_bound: Optional[int]
    symbol: Optional[Tuple[int, ...]] = None
    zk: List[ZkResult] = field(default_factory=list)

    def to_dict(self) -> Dict:
        """Convert to dictionary for serialization"""
        return {
            'germ': self.germ,
            'n': self.n,
            'codim': self.codim.to_dict(),
            'isolated': self.isolated,
            'determinacy_bound': self.determinacy_bound,
            'symbol': list(self.symbol) if self.symbol is not None else None,
            'zk': [z.to_dict() for z in self.zk],
        }
