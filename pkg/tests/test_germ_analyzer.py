import random
from typing import Tuple

import pytest

from models.truncated_poly import RingDims, TruncatedPoly, monomials_up_to
from utils.exceptions import PreconditionError

from conftest import invertible_matrix, poly


@pytest.mark.parametrize("k", range(2, 9))
def test_a_k_ladder(germ_analyzer, k):
    """Test codim and determinacy of x^(k+1)"""
    f = poly(f"x1^{k + 1}", 1)
    codim = germ_analyzer.jacobian_codim(f)
    assert codim.value == k - 1
    assert germ_analyzer.determinacy_bound(f) == k + 1
    assert germ_analyzer.isolated_certificate(f)


def test_d4_codim(germ_analyzer):
    """Test x^3 + y^3"""
    codim = germ_analyzer.jacobian_codim(poly("x1^3 + x2^3", 2))
    assert codim.value == 3
    assert codim.sequence == (2, 3, 3)


def test_non_isolated_germ_has_no_finite_codim(germ_analyzer):
    """Test x^2 y, whose critical locus is a line"""
    f = poly("x1^2*x2", 2)
    codim = germ_analyzer.jacobian_codim(f, order=8)
    assert codim.value is None
    assert codim.label() == "infinite-at-order-8"
    assert not germ_analyzer.isolated_certificate(f, 8)
    assert germ_analyzer.determinacy_bound(f, 8) is None


def test_regular_germ_has_codim_zero(germ_analyzer):
    """Test a germ with a linear term"""
    f = poly("x1 + x2^2", 2)
    assert germ_analyzer.jacobian_codim(f).value == 0
    assert germ_analyzer.quotient_dimension_sequence(f, 4) == [0, 0, 0]


def test_morse_germ(germ_analyzer):
    """Test a nondegenerate quadratic form"""
    assert germ_analyzer.jacobian_codim(poly("x1^2 - x2^2 + x3^2", 3)).value == 0


def test_quotient_sequence_does_not_stop(germ_analyzer):
    """Test the full sequence of quotient dimensions"""
    assert germ_analyzer.quotient_dimension_sequence(poly("x1^3", 1), 5) == [1, 1, 1, 1]
    assert germ_analyzer.quotient_dimension_sequence(poly("x1^2*x2", 2), 5) == [2, 3, 4, 5]


def test_default_order_pads_the_expected_codim(germ_analyzer):
    """Test the default working order"""
    f = poly("x1^3", 1)
    assert germ_analyzer.default_order(f) == 10
    assert germ_analyzer.default_order(f, expected_codim=1) == 6


def test_zk_examples(germ_analyzer):
    """Test Z^k membership on hand computed jets"""
    assert not germ_analyzer.zk_membership(poly("x1^3", 1), 3).member
    zero = TruncatedPoly.zero(RingDims(2, 3))
    assert germ_analyzer.zk_membership(zero, 3).member
    assert not germ_analyzer.zk_membership(poly("x1^2 + x2^2", 2), 2).member
    assert germ_analyzer.zk_membership(poly("x1^2*x2", 2), 3).member


def test_zk_needs_a_singular_jet(germ_analyzer):
    """Test the Z^k preconditions"""
    with pytest.raises(PreconditionError):
        germ_analyzer.zk_membership(poly("x1 + x1^2", 1), 2)
    with pytest.raises(PreconditionError):
        germ_analyzer.zk_membership(poly("x1^4", 1), 3)
    with pytest.raises(PreconditionError):
        germ_analyzer.zk_membership(poly("x1^2", 1), 1)


def _random_singular_jet(rng: random.Random) -> Tuple[TruncatedPoly, int]:
    n = rng.randint(1, 3)
    k = rng.randint(2, 4)
    dims = RingDims(n, k)
    terms = {mono: rng.randint(-3, 3) for mono in monomials_up_to(n, k, 2) if rng.random() < 0.4}
    return TruncatedPoly(dims, terms), k


@pytest.mark.parametrize("seed", range(100))
def test_zk_paths_agree_on_random_jets(germ_analyzer, seed):
    """Test that the span test and the codimension test never disagree"""
    z, k = _random_singular_jet(random.Random(seed))
    result = germ_analyzer.zk_membership(z, k)
    assert result.member == result.codim.exceeds(k - 2)
    assert result.ambient_dimension == len(monomials_up_to(z.dims.n, k - 1, 1))


def test_zk_truncation_compatibility(germ_analyzer):
    """Test that Z^ell membership passes to the k-truncation"""
    f = poly("x1^2*x2 + x2^4", 2)
    upper, lower, holds = germ_analyzer.zk_truncation_compatible(f, 3, 4)
    assert holds
    assert not upper or lower
    with pytest.raises(PreconditionError):
        germ_analyzer.zk_truncation_compatible(f, 4, 4)


def test_germ_report(germ_analyzer):
    """Test the combined report"""
    report = germ_analyzer.germ_report(poly("x1^3", 1))
    data = report.to_dict()
    assert data['codim']['codim'] == 1
    assert data['isolated'] is True
    assert data['determinacy_bound'] == 3
    assert data['symbol'] == [1, 1, 0]
    assert [z['k'] for z in data['zk']] == list(range(2, report.codim.order + 1))
    # x^3 truncated to order 2 is the zero jet
    assert data['zk'][0]['member'] is True
    assert data['zk'][1]['member'] is False


def test_germ_report_with_explicit_orders(germ_analyzer):
    """Test that zk_orders selects the decided orders"""
    report = germ_analyzer.germ_report(poly("x1^2*x2", 2), order=6, zk_orders=[3])
    assert [z.k for z in report.zk] == [3]
    assert report.codim.label() == "infinite-at-order-6"


GERMS_WITH_FINITE_CODIM = [
    ("x1^4", 1),
    ("x1^3 + x2^3", 2),
    ("x1^2 + x2^3", 2),
    ("x1^3 + x1*x2^2", 2),
    ("x1^2 + x2^2 + x3^3", 3),
]


@pytest.mark.parametrize("seed", range(20))
def test_codim_is_invariant_under_linear_changes(germ_analyzer, seed):
    """Test dim m/J on f and on f composed with an invertible linear map"""
    rng = random.Random(seed)
    text, n = GERMS_WITH_FINITE_CODIM[seed % len(GERMS_WITH_FINITE_CODIM)]
    f = poly(text, n)
    changed = f.compose_linear(invertible_matrix(rng, n))
    assert changed.degree() == f.degree()
    original = germ_analyzer.jacobian_codim(f, order=6)
    transformed = germ_analyzer.jacobian_codim(changed, order=6)
    assert original.value is not None
    assert transformed.value == original.value
    assert transformed.sequence == original.sequence
