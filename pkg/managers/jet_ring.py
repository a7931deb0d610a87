"""
Exact arithmetic in the truncated local ring and on its jet ideals
"""

import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from models.jet_ideal import JetIdeal
from models.truncated_poly import Monomial, RingDims, TruncatedPoly, monomials_up_to
from utils.exact_linalg import EchelonBasis, matrix_rank
from utils.exceptions import InvariantViolation, PreconditionError, RingMismatchError


def mul_trunc(a: TruncatedPoly, b: TruncatedPoly) -> TruncatedPoly:
    """Product of two elements of the same ring, terms above W dropped"""
    if a.dims != b.dims:
        raise RingMismatchError(f"Ring mismatch: {a.dims} vs {b.dims}")
    return a * b


def partial_derivative(p: TruncatedPoly, index: int) -> TruncatedPoly:
    """Partial derivative in the variable with 0-based ``index``"""
    return p.derivative(index)


def require_proper(ideal: JetIdeal) -> None:
    if not ideal.is_proper():
        raise InvariantViolation(f"Ideal {ideal.describe()} is not proper")


def ideal_rank(ideal: JetIdeal) -> int:
    """Dimension of the span of the linear parts of all generators, tail included"""
    require_proper(ideal)
    return matrix_rank(g.linear_part() for g in ideal.all_generators())


class _ColumnIndex:
    """Monomials of degree 0..cap, column 0 being the grlex-largest"""

    def __init__(self, n: int, cap: int):
        self.monomials = monomials_up_to(n, cap, 0)
        self.position: Dict[Monomial, int] = {m: i for i, m in enumerate(self.monomials)}

    def row(self, terms: Dict[Monomial, Fraction]) -> Dict[int, Fraction]:
        return {self.position[m]: c for m, c in terms.items()}

    def poly(self, dims: RingDims, row: Dict[int, Fraction]) -> TruncatedPoly:
        return TruncatedPoly(dims, {self.monomials[col]: c for col, c in row.items()})


def _shifted_terms(g: TruncatedPoly, alpha: Monomial, cap: int) -> Dict[Monomial, Fraction]:
    """Terms of x^alpha * g of degree <= cap"""
    shift = sum(alpha)
    result = {}
    for mono, coeff in g.terms.items():
        if sum(mono) + shift <= cap:
            result[tuple(a + b for a, b in zip(mono, alpha))] = coeff
    return result


def _effective_cap(ideal: JetIdeal, cap: int) -> int:
    """Degrees at or above the tail are spanned by the tail alone"""
    if ideal.tail_order is not None and ideal.tail_order <= cap:
        return ideal.tail_order - 1
    return cap


def _module_rows(ideal: JetIdeal, cap: int, min_shift: int = 0):
    n = ideal.dims.n
    for g in ideal.generators:
        truncated = g.truncate(cap)
        if truncated.is_zero():
            continue
        low = truncated.order_of_vanishing()
        for alpha in monomials_up_to(n, cap - low, min_shift) if cap >= low else ():
            terms = _shifted_terms(truncated, alpha, cap)
            if terms:
                yield terms


def ideal_subspace_basis(ideal: JetIdeal, degree_cap: int) -> List[TruncatedPoly]:
    """Reduced echelon basis of (I + m^(cap+1)) / m^(cap+1), pivots in grlex order.

    The result is canonical: two ideals agree up to ``degree_cap`` exactly
    when their bases are equal.
    """
    if degree_cap < 0 or degree_cap > ideal.dims.order:
        raise PreconditionError(f"Degree cap {degree_cap} outside 0..{ideal.dims.order}")
    columns = _ColumnIndex(ideal.dims.n, degree_cap)
    effective = _effective_cap(ideal, degree_cap)
    basis = EchelonBasis()
    for terms in _module_rows(ideal, effective):
        basis.add(columns.row(terms))
    rows = basis.reduced_rows()
    if effective < degree_cap:
        for mono in monomials_up_to(ideal.dims.n, degree_cap, ideal.tail_order):
            rows.append({columns.position[mono]: Fraction(1)})
    rows.sort(key=min)
    return [columns.poly(ideal.dims, row) for row in rows]


def ideal_contains(ideal: JetIdeal, element: TruncatedPoly, degree_cap: Optional[int] = None) -> bool:
    """Membership of ``element`` truncated at ``degree_cap`` in I + m^(cap+1)"""
    if element.dims.n != ideal.dims.n:
        raise RingMismatchError("Element and ideal have different numbers of variables")
    cap = ideal.dims.order if degree_cap is None else degree_cap
    columns = _ColumnIndex(ideal.dims.n, cap)
    basis = EchelonBasis()
    for poly in ideal_subspace_basis(ideal, cap):
        basis.add(columns.row(poly.terms))
    return basis.contains(columns.row(element.truncate(cap).terms))


def ideal_equal(first: JetIdeal, second: JetIdeal, degree_cap: int) -> bool:
    """Equality of two ideals modulo m^(cap+1)"""
    if first.dims.n != second.dims.n:
        raise RingMismatchError(f"Ring mismatch: {first.dims} vs {second.dims}")
    if degree_cap > min(first.dims.order, second.dims.order):
        raise PreconditionError("Degree cap exceeds the working order of an operand")
    left = [p.terms for p in ideal_subspace_basis(first, degree_cap)]
    right = [p.terms for p in ideal_subspace_basis(second, degree_cap)]
    return left == right


def ideal_sum(first: JetIdeal, second: JetIdeal) -> JetIdeal:
    """I + J in a common ring"""
    if first.dims != second.dims:
        raise RingMismatchError(f"Ring mismatch: {first.dims} vs {second.dims}")
    tails = [t for t in (first.tail_order, second.tail_order) if t is not None]
    return JetIdeal(first.dims, first.generators + second.generators, min(tails) if tails else None)


def quotient_dimension(ideal: JetIdeal, power: int) -> int:
    """dim_Q m / (I + m^power)"""
    if power < 1:
        raise PreconditionError("Power must be at least 1")
    cap = power - 1
    total = len(monomials_up_to(ideal.dims.n, cap, 1))
    if cap == 0:
        return 0
    inside = ideal_subspace_basis(ideal, cap)
    return total - len(inside)


def minimal_generators(ideal: JetIdeal) -> JetIdeal:
    """Same ideal (modulo m^(W+1)) with a minimal subset of its generators.

    A generator is kept when it is independent of m*I + m^(W+1) and of the
    generators kept before it; kept generators are truncated below the tail.
    """
    effective = _effective_cap(ideal, ideal.dims.order)
    columns = _ColumnIndex(ideal.dims.n, ideal.dims.order)
    basis = EchelonBasis()
    for terms in _module_rows(ideal, effective, min_shift=1):
        basis.add(columns.row(terms))
    kept = []
    for g in ideal.generators:
        truncated = g.truncate(effective)
        if truncated.is_zero():
            continue
        if basis.add(columns.row(truncated.terms)):
            kept.append(truncated)
    logging.debug(f"Compressed {len(ideal.generators)} generators to {len(kept)}")
    return JetIdeal(ideal.dims, tuple(kept), ideal.tail_order)


def principal_ideal(components: Sequence[TruncatedPoly], tail_order: Optional[int] = None) -> JetIdeal:
    """Ideal generated by the components of a map jet, plus an optional tail"""
    if not components:
        raise PreconditionError("At least one component is required")
    dims = components[0].dims
    for c in components:
        if c.dims != dims:
            raise RingMismatchError("Components live in different rings")
    return JetIdeal(dims, tuple(c.without_constant() for c in components), tail_order)
