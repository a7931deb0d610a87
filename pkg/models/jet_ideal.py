"""
Jet ideal model: finitely generated ideal of the truncated ring plus an m^t tail
"""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from models.truncated_poly import RingDims, TruncatedPoly, degree_monomials, format_poly


@dataclass(frozen=True)
class JetIdeal:
    """Ideal (g_1, ..., g_a) + m^t in E_n / m^(W+1)"""
    dims: RingDims
    generators: Tuple[TruncatedPoly, ...] = field(default_factory=tuple)
    tail_order: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))

    def tail_monomials(self) -> List[TruncatedPoly]:
        """The m^t tail materialized as its degree-t monomials (empty when t > W)"""
        if self.tail_order is None or self.tail_order > self.dims.order:
            return []
        return [TruncatedPoly.monomial(self.dims, m) for m in degree_monomials(self.dims.n, self.tail_order)]

    def all_generators(self) -> List[TruncatedPoly]:
        return list(self.generators) + self.tail_monomials()

    def has_tail(self) -> bool:
        return self.tail_order is not None and self.tail_order <= self.dims.order

    def is_proper(self) -> bool:
        if self.tail_order == 0:
            return False
        return all(g.constant_term() == 0 for g in self.generators)

    def validate(self) -> Tuple[bool, List[str]]:
        """Validate ring membership and properness"""
        errors = []
        for i, g in enumerate(self.generators):
            if g.dims != self.dims:
                errors.append(f"Generator {i} lives in {g.dims}, ideal in {self.dims}")
        if self.tail_order is not None and self.tail_order < 1:
            errors.append("Tail order must be at least 1")
        if not self.is_proper():
            errors.append("Ideal is not proper (contains a unit)")
        return len(errors) == 0, errors

    def with_generators(self, extra: List[TruncatedPoly]) -> "JetIdeal":
        return JetIdeal(self.dims, self.generators + tuple(extra), self.tail_order)

    def describe(self) -> str:
        gens = ", ".join(format_poly(g) for g in self.generators) or "0"
        tail = f" + m^{self.tail_order}" if self.tail_order is not None else ""
        return f"({gens}){tail}"

    def to_dict(self) -> dict:
        """Convert to dictionary for serialization"""
        return {
            'n': self.dims.n,
            'order': self.dims.order,
            'generators': [g.to_dict()['terms'] for g in self.generators],
            'tail_order': self.tail_order,
        }
