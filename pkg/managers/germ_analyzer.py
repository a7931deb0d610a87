"""
Germ analyzer: Jacobian codimension, Z^k membership and finite determinacy
"""

import logging
from typing import List, Optional, Tuple

from config import AppSettings
from managers.boardman_engine import BoardmanEngine
from managers.jet_ring import ideal_subspace_basis, quotient_dimension
from models.germ_report import CodimResult, GermReport, ZkResult
from models.jet_ideal import JetIdeal
from models.jets import MapJet
from models.truncated_poly import RingDims, TruncatedPoly, format_poly, monomials_up_to
from utils.exceptions import InvariantViolation, PreconditionError


class GermAnalyzer:
    """Algebraic invariants of function germs (R^n, 0) -> R"""

    def __init__(self, engine: Optional[BoardmanEngine] = None):
        self.engine = engine or BoardmanEngine()

    @staticmethod
    def default_order(f: TruncatedPoly, expected_codim: Optional[int] = None) -> int:
        """Working order 2 * (expected codim) + padding; degree stands in when unknown"""
        expected = expected_codim if expected_codim is not None else max(f.degree(), 1)
        return 2 * expected + AppSettings.DEFAULT_CODIM_PADDING

    @staticmethod
    def jacobian_ideal(f: TruncatedPoly, order: int) -> JetIdeal:
        """(df/dx_1, ..., df/dx_n) in the ring of working order ``order``.

        ``f`` is read as a polynomial, so the partials are exact at any order.
        """
        lifted = f.with_order(max(order + 1, f.dims.order))
        dims = RingDims(f.dims.n, order)
        partials = [TruncatedPoly(dims, lifted.derivative(i).terms) for i in range(f.dims.n)]
        return JetIdeal(dims, tuple(p for p in partials if not p.is_zero()), None)

    def jacobian_codim(self, f: TruncatedPoly, order: Optional[int] = None,
                       expected_codim: Optional[int] = None) -> CodimResult:
        """dim m/J, read off the first j with dim m/(J+m^j) = dim m/(J+m^(j+1))"""
        order = order if order is not None else self.default_order(f, expected_codim)
        if order < 2:
            raise PreconditionError("Working order must be at least 2")
        if any(c != 0 for c in f.linear_part()):
            # J is the unit ideal
            return CodimResult(0, order, ())
        ideal = self.jacobian_ideal(f, order)
        sequence: List[int] = []
        for j in range(2, order + 1):
            sequence.append(quotient_dimension(ideal, j))
            if len(sequence) >= 2 and sequence[-1] < sequence[-2]:
                raise InvariantViolation(f"Quotient dimensions decreased: {sequence}")
            if len(sequence) >= 2 and sequence[-1] == sequence[-2]:
                logging.debug(f"Jacobian codim of {format_poly(f)} stabilised at j={j - 1}: {sequence[-1]}")
                return CodimResult(sequence[-1], order, tuple(sequence))
        logging.info(f"Jacobian codim of {format_poly(f)} did not stabilise up to order {order}")
        return CodimResult(None, order, tuple(sequence))

    @staticmethod
    def _require_singular_jet(z: TruncatedPoly, k: int) -> TruncatedPoly:
        if k < 2:
            raise PreconditionError("Z^k is defined for k >= 2")
        if any(c != 0 for c in z.linear_part()):
            raise PreconditionError("Z^k membership needs a singular jet (vanishing linear part)")
        if z.degree() > k:
            raise PreconditionError(f"Jet has degree {z.degree()} above k = {k}")
        return z.without_constant()

    def zk_membership(self, z: TruncatedPoly, k: int) -> ZkResult:
        """Decide z in Z^k by the span dimension test and by the Jacobian codimension"""
        z = self._require_singular_jet(z, k)
        n = z.dims.n
        ambient = len(monomials_up_to(n, k - 1, 1))
        ideal = self.jacobian_ideal(z, k - 1)
        span = len(ideal_subspace_basis(ideal, k - 1)) if ideal.generators else 0
        by_span = span < ambient - (k - 2)

        codim = self.jacobian_codim(z, order=k + 1)
        by_codim = codim.exceeds(k - 2)
        if by_span != by_codim:
            raise InvariantViolation(
                f"Z^{k} membership of {format_poly(z)} disagrees: span test {by_span}, codim test {by_codim}")
        return ZkResult(k, by_span, span, ambient, codim)

    def zk_truncation_compatible(self, z: TruncatedPoly, k: int, ell: int) -> Tuple[bool, bool, bool]:
        """(z in Z^ell, k-truncation in Z^k, implication holds)"""
        if not 2 <= k < ell:
            raise PreconditionError("Need 2 <= k < ell")
        upper = self.zk_membership(z, ell)
        lower = self.zk_membership(z.truncate(k), k)
        return upper.member, lower.member, (not upper.member) or lower.member

    def quotient_dimension_sequence(self, f: TruncatedPoly, order: int) -> List[int]:
        """dim m/(J + m^j) for j = 2..order, without stopping at stabilisation"""
        if order < 2:
            raise PreconditionError("Working order must be at least 2")
        if any(c != 0 for c in f.linear_part()):
            return [0] * (order - 1)
        ideal = self.jacobian_ideal(f, order)
        return [quotient_dimension(ideal, j) for j in range(2, order + 1)]

    def isolated_certificate(self, f: TruncatedPoly, order: Optional[int] = None) -> bool:
        """A finite Jacobian codimension certifies an isolated critical point"""
        return self.jacobian_codim(f, order).is_finite

    def determinacy_bound(self, f: TruncatedPoly, order: Optional[int] = None) -> Optional[int]:
        """codim + 2 when finite"""
        codim = self.jacobian_codim(f, order)
        return codim.value + 2 if codim.is_finite else None

    def germ_report(self, f: TruncatedPoly, order: Optional[int] = None,
                    zk_orders: Optional[List[int]] = None) -> GermReport:
        """Codimension, determinacy, Boardman symbol and Z^k memberships of a germ.

        Z^k is decided for the k-truncation of f, k = 2..W unless ``zk_orders``
        names other orders.
        """
        f = f.without_constant()
        codim = self.jacobian_codim(f, order)
        if zk_orders is None:
            zk_orders = list(range(2, codim.order + 1))
        bound = codim.value + 2 if codim.is_finite else None
        symbol = None
        jet_order = max(f.degree(), 1)
        if not f.is_zero():
            jet = MapJet((f.truncate(jet_order),), jet_order)
            symbol = self.engine.boardman_symbol(jet).entries

        zk = []
        if all(c == 0 for c in f.linear_part()):
            for k in zk_orders:
                zk.append(self.zk_membership(f.truncate(k), k))
        report = GermReport(format_poly(f), f.dims.n, codim, codim.is_finite, bound, symbol, zk)
        logging.info(f"Germ report for {report.germ}: codim {codim.label()}, symbol {symbol}")
        return report
