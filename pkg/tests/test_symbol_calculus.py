import logging
from itertools import combinations_with_replacement, product

import pytest

from managers.symbol_calculus import (
    closure_candidates,
    enumerate_symbols,
    mu,
    partition_symbols,
    stratum_codim,
    stratum_order_leq,
    symbol_lex_geq,
    symbol_nonempty,
)
from models.jets import BoardmanSymbol
from utils.exceptions import PreconditionError


@pytest.mark.parametrize("symbol,expected", [
    ((0,), 0),
    ((1,), 1),
    ((3,), 3),
    ((1, 1), 2),
    ((2, 1), 4),
    ((2, 1, 0), 4),
    ((2, 2, 1), 8),
])
def test_mu(symbol, expected):
    """Test the counting function mu"""
    assert mu(symbol) == expected


@pytest.mark.parametrize("symbol,expected", [
    ((2, 0), 2),
    ((2, 1, 0), 3),
    ((2, 1, 1), 4),
    ((2, 2, 0), 5),
    ((2, 2, 1), 7),
    ((1, 1, 1), 0),
])
def test_codim_of_function_strata_in_the_plane(symbol, expected):
    """Test codimensions in J^k(2, 1)"""
    assert stratum_codim(symbol, 2, 1) == expected


def test_codim_accepts_symbol_objects():
    """Test that BoardmanSymbol and tuples are interchangeable"""
    assert stratum_codim(BoardmanSymbol((2, 1, 0)), 2, 1) == stratum_codim((2, 1, 0), 2, 1)


def test_malformed_symbols_are_rejected():
    """Test symbol validation"""
    with pytest.raises(PreconditionError):
        mu((1, 2))
    with pytest.raises(PreconditionError):
        stratum_codim((3,), 2, 1)
    with pytest.raises(PreconditionError):
        mu(())


def test_nonemptiness():
    """Test which symbols have nonempty strata"""
    assert symbol_nonempty((2, 1, 0), 2, 1)
    assert symbol_nonempty((1, 1, 1), 2, 1)
    assert not symbol_nonempty((1, 0), 2, 1)
    assert not symbol_nonempty((0,), 2, 1)
    assert symbol_nonempty((0,), 1, 2)
    assert not symbol_nonempty((3,), 2, 1)


def test_strata_of_plane_functions():
    """Test the enumeration of J^3(2, 1) up to codimension 3"""
    found = [(symbol.entries, codim) for symbol, codim in enumerate_symbols(2, 1, 3, 3)]
    assert found == [((2,), 2), ((2, 0), 2), ((2, 1), 3), ((2, 1, 0), 3)]


def test_enumeration_is_sorted_and_bounded():
    """Test ordering and the codimension window"""
    found = enumerate_symbols(3, 2, 3, 6)
    codims = [codim for _, codim in found]
    assert codims == sorted(codims)
    assert all(1 <= codim <= 6 for codim in codims)
    assert all(symbol_nonempty(symbol, 3, 2) for symbol, _ in found)


def test_partition_contains_the_open_stratum():
    """Test that the full partition keeps codimension zero"""
    strata = partition_symbols(2, 1, 2)
    assert (BoardmanSymbol((1, 1)), 0) in strata
    assert strata[0][1] == 0


def _positive_symbols(n, length):
    for entries in combinations_with_replacement(range(n, 0, -1), length):
        yield tuple(entries)


@pytest.mark.parametrize("n", range(1, 5))
@pytest.mark.parametrize("p", range(1, 5))
def test_codim_grows_along_deeper_strata(n, p):
    """Test that a positive new entry raises the codimension and a zero keeps it"""
    for length in (1, 2, 3):
        for entries in _positive_symbols(n, length):
            base = stratum_codim(entries, n, p)
            if entries[0] == n - p and len(set(entries)) == 1:
                # constant symbols on the boundary stay in codimension zero
                assert stratum_codim(entries + (entries[-1],), n, p) == base == 0
                continue
            if entries[0] <= n - p:
                continue
            assert stratum_codim(entries + (0,), n, p) == base
            for last in range(1, entries[-1] + 1):
                deeper = entries + (last,)
                assert symbol_nonempty(deeper, n, p)
                assert stratum_codim(deeper, n, p) > base


def _mu_by_enumeration(entries):
    bounds = [range(i + 1) for i in entries]
    return sum(
        1 for js in product(*bounds)
        if js[0] > 0 and all(a >= b for a, b in zip(js, js[1:]))
    )


@pytest.mark.parametrize("length", range(1, 5))
def test_mu_matches_enumeration(length):
    """Test mu against a direct count of the sequences"""
    for entries in combinations_with_replacement(range(4, -1, -1), length):
        assert mu(entries) == _mu_by_enumeration(entries)


def test_lexicographic_order_pads_with_minus_infinity():
    """Test the symbol order"""
    assert symbol_lex_geq((1, 0), (1,))
    assert not symbol_lex_geq((1,), (1, 0))
    assert symbol_lex_geq((2, 0), (1, 1, 1))


def test_stratum_order():
    """Test the order on (d, I) strata"""
    assert stratum_order_leq((0, (1, 0)), (0, (1, 0)), 2)
    assert stratum_order_leq((0, (2, 0)), (1, (1, 0)), 2)
    assert not stratum_order_leq((1, (1, 0)), (0, (2, 0)), 2)
    assert stratum_order_leq((1, (2, 1)), (1, (2, 0)), 2)


def test_closure_candidates_are_lexicographically_larger():
    """Test the candidate list"""
    candidates = closure_candidates((2, 1, 0), 2, 1)
    assert BoardmanSymbol((2, 1, 0)) in candidates
    assert BoardmanSymbol((2, 2, 0)) in candidates
    assert BoardmanSymbol((2, 0)) not in candidates


def test_enumeration_logs_on_the_root_logger(caplog):
    """Test that the enumeration reports its size through the root logger"""
    with caplog.at_level(logging.DEBUG):
        enumerate_symbols(2, 1, 3, 3)
    records = [r for r in caplog.records if r.getMessage().startswith("Enumerated 4 symbols")]
    assert records and all(r.name == "root" for r in records)
