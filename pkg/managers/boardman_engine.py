"""
Boardman engine: Jacobian extensions, delta iteration and Boardman symbols
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from managers.jet_ring import (
    ideal_equal,
    ideal_rank,
    minimal_generators,
    principal_ideal,
    require_proper,
)
from models.jet_ideal import JetIdeal
from models.jets import BoardmanSymbol, FoliatedJet, MapJet
from models.truncated_poly import RingDims, TruncatedPoly
from utils.exceptions import InvariantViolation, PreconditionError

MINORS = "minors"
SCHUR = "schur"


@dataclass(frozen=True)
class SplittingRanks:
    """Ranks of the delta iterates along both foliated pipelines"""
    leaf_ranks: Tuple[int, ...]
    map_ranks: Tuple[int, ...]
    transverse_dim: int

    def consistent(self) -> bool:
        return all(m == self.transverse_dim + l for l, m in zip(self.leaf_ranks, self.map_ranks))


def _determinant(matrix: List[List[TruncatedPoly]]) -> TruncatedPoly:
    """Laplace expansion along the first row"""
    size = len(matrix)
    if size == 1:
        return matrix[0][0]
    total = TruncatedPoly.zero(matrix[0][0].dims)
    for j, entry in enumerate(matrix[0]):
        if entry.is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = entry * _determinant(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


class BoardmanEngine:
    """Computes Boardman symbols of map jets and foliated jets exactly"""

    def __init__(self, extension_method: str = SCHUR):
        if extension_method not in (MINORS, SCHUR):
            raise PreconditionError(f"Unknown extension method '{extension_method}'")
        self.extension_method = extension_method

    # -- Jacobian extension -------------------------------------------

    @staticmethod
    def jacobian_matrix(generators: Sequence[TruncatedPoly], dims: RingDims) -> List[List[TruncatedPoly]]:
        """Rows indexed by variables, columns by generators; entries in ring order W-1"""
        return [[TruncatedPoly(dims, g.derivative(i).terms) for g in generators] for i in range(dims.n)]

    def jacobian_extension(self, ideal: JetIdeal, size: int, method: Optional[str] = None) -> JetIdeal:
        """Delta_size(I): I together with the size x size minors of its Jacobian matrix.

        The result lives in the ring of working order W-1, the order up to
        which derivatives of the generators are exact.
        """
        require_proper(ideal)
        generators = ideal.all_generators()
        n = ideal.dims.n
        if size < 1 or size > min(n, len(generators)):
            raise PreconditionError(
                f"Minor size {size} outside 1..min({n}, {len(generators)})")
        if ideal.dims.order < 2:
            raise PreconditionError("Working order must be at least 2 to take a Jacobian extension")
        method = method or self.extension_method
        tail_is_maximal = ideal.tail_order == 1
        if method == SCHUR and not tail_is_maximal and size - 1 <= ideal_rank(ideal):
            result = self._extension_by_elimination(ideal, size)
        else:
            result = self._extension_by_minors(ideal, size)
        require_proper(result)
        return result

    @staticmethod
    def _extension_by_minors(ideal: JetIdeal, size: int) -> JetIdeal:
        lowered = ideal.dims.with_order(ideal.dims.order - 1)
        generators = ideal.all_generators()
        jacobian = BoardmanEngine.jacobian_matrix(generators, lowered)
        minors = []
        for rows in combinations(range(ideal.dims.n), size):
            for cols in combinations(range(len(generators)), size):
                block = [[jacobian[i][j] for j in cols] for i in rows]
                minor = _determinant(block)
                if not minor.is_zero():
                    minors.append(minor)
        base = tuple(TruncatedPoly(lowered, g.terms) for g in ideal.generators)
        return JetIdeal(lowered, base + tuple(minors), ideal.tail_order)

    @staticmethod
    def _extension_by_elimination(ideal: JetIdeal, size: int) -> JetIdeal:
        """Minors through a Schur complement.

        With an invertible (size-1) block A the size x size minors generate
        the same ideal as the entries of D - C A^-1 B. Tail columns are not
        formed: with at least one row left over, the derivatives of the
        degree-t monomials contribute exactly m^(t-1).
        """
        lowered = ideal.dims.with_order(ideal.dims.order - 1)
        jacobian = BoardmanEngine.jacobian_matrix(ideal.generators, lowered)
        rows = list(range(ideal.dims.n))
        cols = list(range(len(ideal.generators)))
        for _ in range(size - 1):
            pivot = next(((i, j) for j in cols for i in rows if jacobian[i][j].is_unit()), None)
            if pivot is None:
                raise InvariantViolation("Constant Jacobian block smaller than the ideal rank")
            i0, j0 = pivot
            inverse = jacobian[i0][j0].inverse()
            rows.remove(i0)
            cols.remove(j0)
            for i in rows:
                if jacobian[i][j0].is_zero():
                    continue
                factor = jacobian[i][j0] * inverse
                for j in cols:
                    if not jacobian[i0][j].is_zero():
                        jacobian[i][j] = jacobian[i][j] - factor * jacobian[i0][j]
        entries = [jacobian[i][j] for i in rows for j in cols if not jacobian[i][j].is_zero()]
        base = tuple(TruncatedPoly(lowered, g.terms) for g in ideal.generators)
        tail = ideal.tail_order
        if ideal.has_tail() and tail > 1:
            tail -= 1
        return JetIdeal(lowered, base + tuple(entries), tail)

    def delta(self, ideal: JetIdeal) -> JetIdeal:
        """delta(I) = Delta_(rank I + 1)(I), with a minimal generating set"""
        rank = ideal_rank(ideal)
        size = rank + 1
        if size > ideal.dims.n or size > len(ideal.all_generators()):
            # no minors of this size exist
            lowered = ideal.dims.with_order(ideal.dims.order - 1)
            result = JetIdeal(lowered, tuple(TruncatedPoly(lowered, g.terms) for g in ideal.generators),
                              ideal.tail_order)
        else:
            result = self.jacobian_extension(ideal, size)
        if self.extension_method == SCHUR:
            result = minimal_generators(result)
        if ideal_rank(result) < rank:
            raise InvariantViolation("Rank decreased under delta")
        return result

    def delta_iterates(self, ideal: JetIdeal, steps: int) -> List[JetIdeal]:
        """[I, delta I, ..., delta^steps I]"""
        if steps > ideal.dims.order - 1:
            raise PreconditionError(
                f"{steps} delta steps need working order at least {steps + 1}, have {ideal.dims.order}")
        iterates = [ideal]
        for _ in range(steps):
            iterates.append(self.delta(iterates[-1]))
        return iterates

    # -- Boardman symbols ---------------------------------------------

    @staticmethod
    def jet_ideal(jet: MapJet, order: Optional[int] = None) -> JetIdeal:
        """I(z) = (z_1, ..., z_p) + m^(k+1) in the ring of working order k+1"""
        k = jet.jet_order if order is None else order
        dims = RingDims(jet.source_dim, k + 1)
        components = [TruncatedPoly(dims, c.truncate(k).terms) for c in jet.components]
        return principal_ideal(components, tail_order=k + 1)

    @staticmethod
    def truncate_jet(jet: MapJet, order: int) -> MapJet:
        """The order-k truncation of a jet of order >= k"""
        if order < 1 or order > jet.jet_order:
            raise PreconditionError(f"Cannot truncate a {jet.jet_order}-jet to order {order}")
        return MapJet(tuple(c.truncate(order) for c in jet.components), order)

    def boardman_symbol(self, jet: MapJet, order: Optional[int] = None) -> BoardmanSymbol:
        """(n - r_1, ..., n - r_k) with r_l the rank of the (l-1)-th delta iterate"""
        is_valid, errors = jet.validate()
        if not is_valid:
            raise PreconditionError("; ".join(errors))
        k = jet.jet_order if order is None else order
        if k < 1:
            raise PreconditionError("Symbol length must be at least 1")
        n = jet.source_dim
        iterates = self.delta_iterates(self.jet_ideal(jet, k), k - 1)
        symbol = BoardmanSymbol(tuple(n - ideal_rank(ideal) for ideal in iterates))
        ok, errors = symbol.validate()
        if not ok:
            raise InvariantViolation(f"Computed symbol {symbol} is malformed: {'; '.join(errors)}")
        logging.debug(f"Boardman symbol of {jet.describe()} at order {k}: {symbol}")
        return symbol

    # -- foliated symbols -----------------------------------------------

    @staticmethod
    def leaf_jet(fjet: FoliatedJet) -> MapJet:
        """Restriction to the leaf through the origin as a map jet R^n -> R"""
        leaf = fjet.leaf_restriction()
        return MapJet((leaf.without_constant(),), fjet.jet_order)

    @staticmethod
    def extended_map_jet(fjet: FoliatedJet) -> MapJet:
        """(f, v_1, ..., v_q) as a map jet R^(n+q) -> R^(1+q)"""
        dims = fjet.function.dims
        transverse = [TruncatedPoly.variable(dims, fjet.leaf_dim + j) for j in range(fjet.transverse_dim)]
        return MapJet((fjet.function.without_constant(), *transverse), fjet.jet_order)

    def foliated_symbol(self, fjet: FoliatedJet, order: Optional[int] = None) -> BoardmanSymbol:
        """Symbol of a leafwise critical foliated jet, computed two independent ways"""
        is_valid, errors = fjet.validate()
        if not is_valid:
            raise PreconditionError("; ".join(errors))
        k = fjet.jet_order if order is None else order
        by_leaf = self.boardman_symbol(self.leaf_jet(fjet), k)
        by_map = self.boardman_symbol(self.extended_map_jet(fjet), k)
        if by_leaf != by_map:
            raise InvariantViolation(
                f"Foliated pipelines disagree for {fjet.describe()}: leaf {by_leaf}, extended map {by_map}")
        return by_leaf

    def splitting_ranks(self, fjet: FoliatedJet, order: Optional[int] = None) -> SplittingRanks:
        """Ranks of the delta iterates of I(f restricted) and of I(f, v)"""
        k = fjet.jet_order if order is None else order
        leaf = self.delta_iterates(self.jet_ideal(self.leaf_jet(fjet), k), k - 1)
        full = self.delta_iterates(self.jet_ideal(self.extended_map_jet(fjet), k), k - 1)
        return SplittingRanks(
            tuple(ideal_rank(i) for i in leaf),
            tuple(ideal_rank(i) for i in full),
            fjet.transverse_dim,
        )

    def transverse_splitting_check(self, fjet: FoliatedJet, steps: int, order: Optional[int] = None) -> bool:
        """delta^steps I(f, v) equals (v) + delta^steps I(f restricted to the leaf)"""
        is_valid, errors = fjet.validate()
        if not is_valid:
            raise PreconditionError("; ".join(errors))
        k = fjet.jet_order if order is None else order
        if steps < 0 or steps > k - 1:
            raise PreconditionError(f"Number of delta steps must lie in 0..{k - 1}")
        full = self.delta_iterates(self.jet_ideal(self.extended_map_jet(fjet), k), steps)[-1]
        leaf = self.delta_iterates(self.jet_ideal(self.leaf_jet(fjet), k), steps)[-1]

        dims = full.dims
        positions = list(range(fjet.leaf_dim))
        embedded = [g.embed(dims, positions) for g in leaf.all_generators()]
        transverse = [TruncatedPoly.variable(dims, fjet.leaf_dim + j) for j in range(fjet.transverse_dim)]
        expected = JetIdeal(dims, tuple(transverse + embedded), None)
        agrees = ideal_equal(full, expected, dims.order)
        logging.debug(f"Splitting check for {fjet.describe()} after {steps} steps: {agrees}")
        return agrees
