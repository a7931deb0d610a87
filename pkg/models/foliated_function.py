"""
Foliated function: a smooth expression on a product chart with its derivatives
"""

from fractions import Fraction
from typing import List, Sequence

import numpy as np

from models.chart import ChartSpec
from models.expression import (
    Expr,
    chart_variables,
    compile_float,
    differentiate,
    evaluate,
    leaf_var,
    make_add,
    make_pow,
    polynomial_degree,
    render,
    to_truncated_poly,
)
from models.jets import FoliatedJet
from models.truncated_poly import RingDims
from utils.exceptions import PreconditionError


class FoliatedFunction:
    """f(x, v) on a chart, with leafwise and full first and second derivatives"""

    def __init__(self, expr: Expr, chart: ChartSpec):
        self.expr = expr
        self.chart = chart
        n, total = chart.leaf_dim, chart.total_dim
        names = chart.coordinate_names()
        lookup = chart_variables(chart.leaf_dim, chart.transverse_dim)
        self.coordinates = [lookup[name] for name in names]

        self.gradient_exprs = [differentiate(expr, var) for var in self.coordinates]
        self.hessian_exprs = [
            [differentiate(self.gradient_exprs[i], var) for var in self.coordinates] for i in range(total)
        ]
        self._value = compile_float(expr, n)
        self._gradient = [compile_float(e, n) for e in self.gradient_exprs]
        self._hessian = [[compile_float(e, n) for e in row] for row in self.hessian_exprs]

    @property
    def leaf_dim(self) -> int:
        return self.chart.leaf_dim

    @property
    def transverse_dim(self) -> int:
        return self.chart.transverse_dim

    def describe(self) -> str:
        return render(self.expr)

    # -- float evaluation ------------------------------------------------

    def value(self, point: Sequence[float]) -> float:
        return float(self._value(point))

    def gradient(self, point: Sequence[float]) -> np.ndarray:
        return np.array([fn(point) for fn in self._gradient], dtype=float)

    def leaf_gradient(self, point: Sequence[float]) -> np.ndarray:
        """Partials in the leaf coordinates only"""
        return np.array([fn(point) for fn in self._gradient[:self.leaf_dim]], dtype=float)

    def hessian(self, point: Sequence[float]) -> np.ndarray:
        return np.array([[fn(point) for fn in row] for row in self._hessian], dtype=float)

    def leaf_hessian(self, point: Sequence[float]) -> np.ndarray:
        n = self.leaf_dim
        return np.array([[fn(point) for fn in row[:n]] for row in self._hessian[:n]], dtype=float)

    # -- exact evaluation ------------------------------------------------

    def exact_value(self, point: Sequence[Fraction]) -> Fraction:
        return evaluate(self.expr, [Fraction(x) for x in point], self.leaf_dim)

    def exact_leaf_gradient(self, point: Sequence[Fraction]) -> List[Fraction]:
        exact = [Fraction(x) for x in point]
        return [evaluate(e, exact, self.leaf_dim) for e in self.gradient_exprs[:self.leaf_dim]]

    def derivative_expr(self, *positions: int) -> Expr:
        """Iterated partial derivative in the given coordinate positions"""
        expr = self.expr
        for position in positions:
            expr = differentiate(expr, self.coordinates[position])
        return expr

    # -- jets ------------------------------------------------------------

    def jet_at(self, point: Sequence[Fraction], order: int) -> FoliatedJet:
        """Exact k-jet at a rational point, recentred at the origin"""
        if len(point) != self.chart.total_dim:
            raise PreconditionError(f"Point must have {self.chart.total_dim} coordinates")
        degree = max(polynomial_degree(self.expr), order, 1)
        dims = RingDims(self.chart.total_dim, degree)
        poly = to_truncated_poly(self.expr, dims, self.leaf_dim).translate([Fraction(x) for x in point])
        jet = poly.truncate(order).with_order(order)
        return FoliatedJet(jet, self.leaf_dim, self.transverse_dim, order, tuple(self.chart.coordinate_names()))

    def product_extension(self, interval=(-1.0, 1.0)) -> "FoliatedFunction":
        """f + t^2 with t a new leaf coordinate"""
        t = leaf_var(self.leaf_dim + 1)
        return FoliatedFunction(make_add([self.expr, make_pow(t, 2)]), self.chart.extended(interval))


def build_function(expr: Expr, chart: ChartSpec) -> FoliatedFunction:
    """Validate the chart and attach the expression to it"""
    is_valid, errors = chart.validate()
    if not is_valid:
        raise PreconditionError("; ".join(errors))
    return FoliatedFunction(expr, chart)
