"""
Combinatorics of Boardman symbols: mu, codimensions, nonemptiness and orderings
"""

import logging
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import List, Sequence, Tuple, Union

from models.jets import BoardmanSymbol
from utils.exceptions import PreconditionError

SymbolLike = Union[BoardmanSymbol, Sequence[int]]
NEG_INFINITY = float("-inf")


def _entries(symbol: SymbolLike) -> Tuple[int, ...]:
    entries = tuple(symbol.entries if isinstance(symbol, BoardmanSymbol) else symbol)
    if not entries:
        raise PreconditionError("Symbol must have at least one entry")
    if any(e < 0 for e in entries) or any(a < b for a, b in zip(entries, entries[1:])):
        raise PreconditionError(f"Symbol {entries} is not a nonincreasing sequence of naturals")
    return entries


@lru_cache(maxsize=None)
def _count_bounded(bounds: Tuple[int, ...], ceiling: int) -> int:
    """Nonincreasing sequences j with j_r <= min(bounds[r], previous j)"""
    if not bounds:
        return 1
    top = min(bounds[0], ceiling)
    return sum(_count_bounded(bounds[1:], j) for j in range(top + 1))


def mu(symbol: SymbolLike) -> int:
    """Number of nonincreasing (j_1, ..., j_k) with i_r >= j_r >= 0 and j_1 > 0"""
    entries = _entries(symbol)
    return sum(_count_bounded(entries[1:], j) for j in range(1, entries[0] + 1))


def stratum_codim(symbol: SymbolLike, n: int, p: int) -> int:
    """Codimension of the Boardman stratum of the symbol in J^k(n, p)"""
    entries = _entries(symbol)
    if n < 1 or p < 1:
        raise PreconditionError("Source and target dimensions must be positive")
    if entries[0] > n:
        raise PreconditionError(f"Leading entry {entries[0]} exceeds the source dimension {n}")
    codim = (p - n + entries[0]) * mu(entries)
    for j in range(1, len(entries)):
        codim -= (entries[j - 1] - entries[j]) * mu(entries[j:])
    return codim


def symbol_nonempty(symbol: SymbolLike, n: int, p: int) -> bool:
    """i_1 > n - p, or i_1 = n - p with all entries equal"""
    entries = _entries(symbol)
    if entries[0] > n:
        return False
    if entries[0] > n - p:
        return True
    return entries[0] == n - p and len(set(entries)) == 1


def _canonical_symbols(n: int, k: int) -> List[Tuple[int, ...]]:
    """Length-k symbols cut after their first zero: the strata partitioning J^k"""
    result = []
    for length in range(1, k + 1):
        for positive in combinations_with_replacement(range(n, 0, -1), length - 1):
            head = tuple(positive)
            result.append(head + (0,))
            if length == k:
                for last in range(1, (head[-1] if head else n) + 1):
                    result.append(head + (last,))
    return result


def _symbols_up_to(n: int, k: int) -> List[Tuple[int, ...]]:
    """Nonincreasing symbols of length 1..k with at most one trailing zero"""
    result = []
    for length in range(1, k + 1):
        for positive in combinations_with_replacement(range(n, 0, -1), length):
            result.append(tuple(positive))
        for positive in combinations_with_replacement(range(n, 0, -1), length - 1):
            result.append(tuple(positive) + (0,))
    return result


def enumerate_symbols(n: int, p: int, k: int, max_codim: int) -> List[Tuple[BoardmanSymbol, int]]:
    """Nonempty singular symbols of length <= k with 1 <= codim <= max_codim.

    Every length up to k is listed, so (2) and (2, 0) both appear. Ordered
    by codimension, then lexicographically.
    """
    if n < 1 or p < 1 or k < 1:
        raise PreconditionError("n, p and k must be positive")
    found = []
    for entries in _symbols_up_to(n, k):
        if not symbol_nonempty(entries, n, p):
            continue
        codim = stratum_codim(entries, n, p)
        if 1 <= codim <= max_codim:
            found.append((BoardmanSymbol(entries), codim))
    found.sort(key=lambda item: (item[1], item[0].entries))
    logging.debug(f"Enumerated {len(found)} symbols for n={n}, p={p}, k={k}, codim<={max_codim}")
    return found


def partition_symbols(n: int, p: int, k: int) -> List[Tuple[BoardmanSymbol, int]]:
    """Every nonempty stratum of J^k(n, p), the open one included"""
    found = [
        (BoardmanSymbol(entries), stratum_codim(entries, n, p))
        for entries in _canonical_symbols(n, k)
        if symbol_nonempty(entries, n, p)
    ]
    found.sort(key=lambda item: (item[1], item[0].entries))
    return found


def _padded(entries: Tuple[int, ...], length: int) -> Tuple[float, ...]:
    return tuple(entries) + (NEG_INFINITY,) * (length - len(entries))


def symbol_lex_geq(first: SymbolLike, second: SymbolLike) -> bool:
    """Lexicographic comparison, a missing entry counting as minus infinity"""
    a, b = _entries(first), _entries(second)
    length = max(len(a), len(b))
    return _padded(a, length) >= _padded(b, length)


def stratum_order_leq(first: Tuple[int, SymbolLike], second: Tuple[int, SymbolLike], leaf_dim: int) -> bool:
    """Whether the stratum (d, I) lies below the stratum (e, J).

    (d, I) <= (e, J) exactly when (n - d, I) >= (n - e, J) lexicographically.
    """
    d, symbol_i = first
    e, symbol_j = second
    a = (leaf_dim - d,) + _entries(symbol_i)
    b = (leaf_dim - e,) + _entries(symbol_j)
    length = max(len(a), len(b))
    return _padded(a, length) >= _padded(b, length)


def closure_candidates(symbol: SymbolLike, n: int, p: int) -> List[BoardmanSymbol]:
    """Nonempty strata of the same order k that may meet the closure of the given one"""
    entries = _entries(symbol)
    k = len(entries)
    candidates = [
        BoardmanSymbol(other) for other in _canonical_symbols(n, k)
        if symbol_nonempty(other, n, p) and symbol_lex_geq(other, entries)
    ]
    return sorted(candidates, key=lambda s: s.entries)
