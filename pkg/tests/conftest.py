"""
Shared fixtures and small builders for the test-suite
"""

from fractions import Fraction

import pytest

from managers.boardman_engine import BoardmanEngine
from managers.chart_analyzer import ChartAnalyzer
from managers.flow_engine import FlowEngine
from managers.germ_analyzer import GermAnalyzer
from models.chart import ChartSpec
from models.expression import polynomial_degree, to_truncated_poly
from models.foliated_function import build_function
from models.jets import FoliatedJet, MapJet
from models.truncated_poly import RingDims
from utils.expression_parser import parse_expression


def poly(text, n, order=None):
    """Exact polynomial from an expression in x1..xn"""
    expr = parse_expression(text, n)
    degree = max(polynomial_degree(expr), 1)
    return to_truncated_poly(expr, RingDims(n, order or degree), n)


def map_jet(texts, n, k):
    return MapJet(tuple(poly(t, n, k).truncate(k) for t in texts), k)


def foliated_jet(text, leaf_dim, transverse_dim, k):
    expr = parse_expression(text, leaf_dim, transverse_dim)
    dims = RingDims(leaf_dim + transverse_dim, max(k, polynomial_degree(expr)))
    jet = to_truncated_poly(expr, dims, leaf_dim).truncate(k).with_order(k)
    return FoliatedJet(jet, leaf_dim, transverse_dim, k)


def chart_function(text, leaf_dim, transverse_dim, box):
    expr = parse_expression(text, leaf_dim, transverse_dim)
    return build_function(expr, ChartSpec(leaf_dim, transverse_dim, tuple(map(tuple, box))))


@pytest.fixture
def engine():
    return BoardmanEngine()


@pytest.fixture
def germ_analyzer(engine):
    return GermAnalyzer(engine)


@pytest.fixture
def chart_analyzer():
    return ChartAnalyzer()


@pytest.fixture
def flow_engine(chart_analyzer):
    return FlowEngine(chart_analyzer)


@pytest.fixture
def half():
    return Fraction(1, 2)


def invertible_matrix(rng, size):
    """Random integer matrix of determinant 1: unit lower times unit upper triangular"""
    lower = [[1 if i == j else (rng.randint(-2, 2) if j < i else 0) for j in range(size)] for i in range(size)]
    upper = [[1 if i == j else (rng.randint(-2, 2) if j > i else 0) for j in range(size)] for i in range(size)]
    return [[sum(lower[i][m] * upper[m][j] for m in range(size)) for j in range(size)] for i in range(size)]
