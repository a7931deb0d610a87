import warnings

import numpy as np
import pytest
from numpy.testing import assert_allclose

from config import CATALOG, AppSettings
from managers.chart_analyzer import ChartAnalyzer
from models.chart import MetricSpec
from utils.exceptions import OffCriticalWarning

from conftest import chart_function


def catalog_function(name):
    entry = CATALOG["charts"][name]
    return chart_function(entry["expression"], entry["n"], entry["q"], entry["box"])


def test_bowl_has_one_minimum_per_leaf(chart_analyzer):
    """Test x^2 + v^2: a leafwise minimum on every sampled leaf"""
    f = catalog_function("bowl")
    records = chart_analyzer.find_critical_points(f, grid_density=(11, 5))
    assert len(records) == 5
    assert all(r.d_plus == 1 and r.d_zero == 0 for r in records)
    assert_allclose([r.leaf_point[0] for r in records], 0.0, atol=1e-12)
    assert_allclose([r.transverse_point[0] for r in records], np.linspace(-1, 1, 5))
    assert chart_analyzer.openness_check(f, grid_density=(11, 5)).passed


def test_cap_fails_openness_with_witnesses(chart_analyzer):
    """Test -x^2 + v^2: leafwise maxima are reported"""
    report = chart_analyzer.openness_check(catalog_function("cap"), grid_density=(7, 3))
    assert report.verdict == "FAIL"
    assert len(report.witnesses) == 3
    assert all(abs(w.leaf_point[0]) < 1e-12 for w in report.witnesses)
    assert report.to_dict()['witnesses'][0]['stratum'] == "Sigma_0^(1,0)"


def test_saddle_signature_and_exact_symbol(chart_analyzer):
    """Test x1^2 - x2^2 without transverse directions"""
    f = catalog_function("saddle")
    records = chart_analyzer.classify_all(chart_analyzer.find_critical_points(f, grid_density=5), f)
    assert len(records) == 1
    record = records[0]
    assert (record.d_plus, record.d_minus, record.d_zero) == (1, 1, 0)
    assert record.exact
    assert record.symbol == (2, 0, 0)
    assert chart_analyzer.openness_check(f, grid_density=5).passed


def test_fold_degenerates_at_the_origin(chart_analyzer):
    """Test x^3 - v x: the two branches meet in a degenerate point at v = 0"""
    f = catalog_function("fold")
    records = chart_analyzer.classify_all(chart_analyzer.find_critical_points(f, grid_density=(11, 5)), f)
    degenerate = [r for r in records if r.is_degenerate]
    assert len(degenerate) == 1
    origin = degenerate[0]
    assert origin.transverse_point == (0.0,)
    assert origin.exact
    assert origin.symbol == (1, 1, 0)
    assert origin.is_suspect
    # v = 3/4 gives the rational pair x = +/- 1/2
    halves = [r for r in records if r.transverse_point == (0.75,)]
    assert sorted(round(r.leaf_point[0], 12) for r in halves) == [-0.5, 0.5]
    assert all(r.exact and r.symbol == (1, 0, 0) for r in halves)
    assert not chart_analyzer.openness_check(f, grid_density=(11, 5)).passed


def test_irrational_points_get_the_second_order_symbol(chart_analyzer):
    """Test the (n, n - rank) symbol away from rational points"""
    f = catalog_function("fold")
    records = chart_analyzer.classify_all(chart_analyzer.find_critical_points(f, grid_density=(11, 5)), f)
    inexact = [r for r in records if not r.exact]
    assert inexact
    assert all(r.symbol == (1, 0) for r in inexact)


@pytest.mark.parametrize("name", sorted(CATALOG["charts"]))
def test_product_extension_always_passes(chart_analyzer, name):
    """Test that f + t^2 has no leafwise maxima"""
    extended = catalog_function(name).product_extension()
    assert extended.leaf_dim == CATALOG["charts"][name]["n"] + 1
    assert chart_analyzer.openness_check(extended, grid_density=(5, 3)).passed


def test_metric_changes_eigenvalues_not_signature(chart_analyzer):
    """Test g-eigenvalues of the leafwise Hessian"""
    f = catalog_function("saddle")
    metric = MetricSpec.constant([[2, 0], [0, 4]], 2)
    _, eigenvalues, signature = chart_analyzer.foliated_hessian(f, [0.0, 0.0], metric)
    assert_allclose(sorted(eigenvalues), [-0.5, 1.0])
    assert signature == (1, 1, 0)


def test_off_critical_point_warns(chart_analyzer):
    """Test the warning for points off the critical locus"""
    f = catalog_function("bowl")
    with pytest.warns(OffCriticalWarning):
        chart_analyzer.foliated_hessian(f, [0.5, 0.0])
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        chart_analyzer.foliated_hessian(f, [0.0, 0.3])


def test_off_critical_threshold_comes_from_the_settings(chart_analyzer, monkeypatch):
    """Test the gradient norm above which a Hessian warns"""
    f = catalog_function("bowl")
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        chart_analyzer.foliated_hessian(f, [4e-7, 0.0])
    with pytest.warns(OffCriticalWarning):
        chart_analyzer.foliated_hessian(f, [1e-6, 0.0])
    monkeypatch.setattr(AppSettings, "OFF_CRITICAL_GRADIENT", 1.0)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        chart_analyzer.foliated_hessian(f, [0.4, 0.0])


def test_signature_threshold_is_relative():
    """Test the zero threshold for eigenvalues"""
    analyzer = ChartAnalyzer(eigen_threshold=1e-7)
    assert analyzer.signature([1e6, 1e-3, -2.0]) == (1, 1, 1)
    assert analyzer.signature([1.0, 1e-3]) == (2, 0, 0)


def test_schur_rank_test():
    """Test the Schur complement rank check"""
    analyzer = ChartAnalyzer()
    rank_one = np.array([[2.0, 2.0], [2.0, 2.0]])
    assert analyzer.schur_rank_consistent(rank_one, 1)
    assert not analyzer.schur_rank_consistent(np.eye(2), 1)
    assert analyzer.schur_rank_consistent(np.zeros((2, 2)), 0)


def test_genericity_spotcheck_on_the_fold(chart_analyzer):
    """Test the genericity summary"""
    f = catalog_function("fold")
    records = chart_analyzer.find_critical_points(f, grid_density=(11, 5))
    report = chart_analyzer.genericity_spotcheck(f, records)
    assert report.degenerate_count == 1
    assert report.degenerate_isolated
    assert report.separated
    assert report.totally_degenerate_count == 1


def test_strata_are_ordered(chart_analyzer):
    """Test the order of the strata found on the fold"""
    f = catalog_function("fold")
    records = chart_analyzer.classify_all(chart_analyzer.find_critical_points(f, grid_density=(11, 5)), f)
    strata = chart_analyzer.order_strata(records)
    assert strata[0] == (0, (1, 1, 0))
    assert (1, (1, 0, 0)) in strata
