"""
Exact linear algebra over the rationals.

Rows are sparse mappings ``column -> value``. Elimination is fraction-free:
every row is scaled to a primitive integer vector before use, pivot updates
are integer cross-multiplications followed by content removal, and only the
final reduced echelon form is normalised back to Fractions.
"""

from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Iterable, List, Mapping, Sequence

IntRow = Dict[int, int]
RationalRow = Dict[int, Fraction]


def to_primitive_row(row: Mapping[int, Fraction]) -> IntRow:
    """Scale a rational row to a primitive integer row with the same span"""
    entries = {col: Fraction(val) for col, val in row.items() if val != 0}
    if not entries:
        return {}
    denominator = 1
    for val in entries.values():
        denominator = lcm(denominator, val.denominator)
    scaled = {col: int(val * denominator) for col, val in entries.items()}
    return _primitive(scaled)


def _primitive(row: IntRow) -> IntRow:
    content = 0
    for val in row.values():
        content = gcd(content, val)
    if content > 1:
        row = {col: val // content for col, val in row.items()}
    lead = min(row)
    if row[lead] < 0:
        row = {col: -val for col, val in row.items()}
    return row


def _eliminate(row: IntRow, pivot_row: IntRow, col: int) -> IntRow:
    """Cancel ``row[col]`` against ``pivot_row`` without leaving the integers"""
    a = row[col]
    p = pivot_row[col]
    g = gcd(a, p)
    a_scale, p_scale = a // g, p // g
    result = {c: v * p_scale for c, v in row.items()}
    for c, v in pivot_row.items():
        updated = result.get(c, 0) - a_scale * v
        if updated:
            result[c] = updated
        else:
            result.pop(c, None)
    return _primitive(result) if result else result


class EchelonBasis:
    """Incrementally maintained echelon basis of a subspace of Q^N"""

    def __init__(self):
        self._pivots: Dict[int, IntRow] = {}

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def reduce(self, row: IntRow) -> IntRow:
        """Reduce a primitive row against the current pivots (leading columns only)"""
        while row:
            lead = min(row)
            pivot_row = self._pivots.get(lead)
            if pivot_row is None:
                return row
            row = _eliminate(row, pivot_row, lead)
        return row

    def add(self, row: Mapping[int, Fraction]) -> bool:
        """Insert a row; returns True when it enlarged the span"""
        reduced = self.reduce(to_primitive_row(row))
        if not reduced:
            return False
        self._pivots[min(reduced)] = reduced
        return True

    def contains(self, row: Mapping[int, Fraction]) -> bool:
        return not self.reduce(to_primitive_row(row))

    def reduced_rows(self) -> List[RationalRow]:
        """Reduced row echelon form, rows ordered by pivot column, pivots equal to 1"""
        columns = sorted(self._pivots)
        rows = {col: dict(self._pivots[col]) for col in columns}
        for col in reversed(columns):
            pivot_row = rows[col]
            for other in columns:
                if other != col and col in rows[other]:
                    rows[other] = _eliminate(rows[other], pivot_row, col)
        result = []
        for col in columns:
            row = rows[col]
            pivot = row[col]
            result.append({c: Fraction(v, pivot) for c, v in sorted(row.items())})
        return result


def matrix_rank(rows: Iterable[Sequence[Fraction]]) -> int:
    """Exact rank of a dense rational matrix given as a sequence of rows"""
    basis = EchelonBasis()
    for row in rows:
        basis.add({i: Fraction(v) for i, v in enumerate(row) if v != 0})
    return basis.rank
