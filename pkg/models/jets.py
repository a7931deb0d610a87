"""
Map jets, foliated jets and Boardman symbols
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from models.truncated_poly import RingDims, TruncatedPoly, format_poly


@dataclass(frozen=True, order=False)
class BoardmanSymbol:
    """Nonincreasing sequence (i_1 >= i_2 >= ... >= i_k >= 0)"""
    entries: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, item):
        return self.entries[item]

    def validate(self) -> Tuple[bool, List[str]]:
        """Validate the symbol shape"""
        errors = []
        if not self.entries:
            errors.append("Symbol must have at least one entry")
        if any(e < 0 for e in self.entries):
            errors.append("Symbol entries must be non-negative")
        if any(a < b for a, b in zip(self.entries, self.entries[1:])):
            errors.append("Symbol entries must be nonincreasing")
        return len(errors) == 0, errors

    def shift(self, times: int = 1) -> "BoardmanSymbol":
        """Drop the first ``times`` entries"""
        return BoardmanSymbol(self.entries[times:])

    def prefix(self, length: int) -> "BoardmanSymbol":
        return BoardmanSymbol(self.entries[:length])

    def canonical(self) -> "BoardmanSymbol":
        """Cut after the first zero; the remaining entries are forced to vanish"""
        if 0 in self.entries:
            return BoardmanSymbol(self.entries[:self.entries.index(0) + 1])
        return self

    def __str__(self) -> str:
        return "(" + ",".join(str(e) for e in self.entries) + ")"

    def to_list(self) -> List[int]:
        return list(self.entries)


@dataclass(frozen=True)
class MapJet:
    """k-jet of a germ (R^n, 0) -> (R^p, 0): p components in one ring"""
    components: Tuple[TruncatedPoly, ...]
    jet_order: int

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    @property
    def source_dim(self) -> int:
        return self.components[0].dims.n

    @property
    def target_dim(self) -> int:
        return len(self.components)

    def validate(self) -> Tuple[bool, List[str]]:
        """Validate shape and vanishing at the origin"""
        errors = []
        if not self.components:
            errors.append("A map jet needs at least one component")
            return False, errors
        dims = self.components[0].dims
        if self.jet_order < 1:
            errors.append("Jet order must be at least 1")
        for i, c in enumerate(self.components):
            if c.dims.n != dims.n:
                errors.append(f"Component {i + 1} has {c.dims.n} variables, expected {dims.n}")
            if c.constant_term() != 0:
                errors.append(f"Component {i + 1} does not vanish at the origin")
            if c.degree() > self.jet_order:
                errors.append(f"Component {i + 1} has degree {c.degree()} above the jet order {self.jet_order}")
        return len(errors) == 0, errors

    def in_ring(self, dims: RingDims) -> "MapJet":
        return MapJet(tuple(TruncatedPoly(dims, c.terms) for c in self.components), self.jet_order)

    def describe(self) -> str:
        return "(" + ", ".join(format_poly(c) for c in self.components) + ")"


@dataclass(frozen=True)
class FoliatedJet:
    """k-jet at the origin of f: R^n x R^q -> R on the product chart.

    Variables 0..n-1 are the leaf coordinates x, n..n+q-1 the transverse v.
    """
    function: TruncatedPoly
    leaf_dim: int
    transverse_dim: int
    jet_order: int
    names: Optional[Tuple[str, ...]] = field(default=None, compare=False)

    @property
    def total_dim(self) -> int:
        return self.leaf_dim + self.transverse_dim

    def variable_names(self) -> List[str]:
        if self.names:
            return list(self.names)
        return [f"x{i + 1}" for i in range(self.leaf_dim)] + [f"v{j + 1}" for j in range(self.transverse_dim)]

    def validate(self) -> Tuple[bool, List[str]]:
        """Validate dimensions and leafwise criticality at the origin"""
        errors = []
        if self.leaf_dim < 1:
            errors.append("Leaf dimension must be at least 1")
        if self.transverse_dim < 0:
            errors.append("Transverse dimension must be non-negative")
        if self.function.dims.n != self.total_dim:
            errors.append(f"Jet has {self.function.dims.n} variables, chart has {self.total_dim}")
        if self.jet_order < 1:
            errors.append("Jet order must be at least 1")
        if not errors and not self.is_leafwise_critical():
            errors.append("Origin is not a leafwise critical point")
        return len(errors) == 0, errors

    def is_leafwise_critical(self) -> bool:
        linear = self.function.linear_part()
        return all(c == 0 for c in linear[:self.leaf_dim])

    def leaf_restriction(self) -> TruncatedPoly:
        """Restriction to the leaf through the origin (v = 0)"""
        return self.function.restrict(list(range(self.leaf_dim)))

    def describe(self) -> str:
        return format_poly(self.function, self.variable_names())
