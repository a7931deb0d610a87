"""
Truncated polynomial model: elements of the local ring E_n modulo m^(W+1)
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from utils.exceptions import PreconditionError, RingMismatchError

Monomial = Tuple[int, ...]
Scalar = Union[int, Fraction]


def monomial_degree(mono: Monomial) -> int:
    return sum(mono)


def grlex_key(mono: Monomial) -> Tuple[int, Monomial]:
    """Graded lexicographic key; larger key means larger monomial"""
    return (sum(mono), mono)


@lru_cache(maxsize=None)
def degree_monomials(n: int, degree: int) -> Tuple[Monomial, ...]:
    """All exponent vectors of total degree ``degree`` in n variables, grlex-descending"""
    if n == 0:
        return ((),) if degree == 0 else ()
    result = []
    for combo in combinations_with_replacement(range(n), degree):
        exps = [0] * n
        for var in combo:
            exps[var] += 1
        result.append(tuple(exps))
    return tuple(sorted(set(result), reverse=True))


@lru_cache(maxsize=None)
def monomials_up_to(n: int, degree: int, min_degree: int = 0) -> Tuple[Monomial, ...]:
    """Monomials with min_degree <= |alpha| <= degree, grlex-descending"""
    result: List[Monomial] = []
    for d in range(degree, min_degree - 1, -1):
        result.extend(degree_monomials(n, d))
    return tuple(result)


@dataclass(frozen=True)
class RingDims:
    """Number of variables n and working order W of the truncated ring"""
    n: int
    order: int

    def validate(self) -> Tuple[bool, List[str]]:
        errors = []
        if self.n < 1:
            errors.append("Number of variables must be at least 1")
        if self.order < 1:
            errors.append("Working order must be at least 1")
        return len(errors) == 0, errors

    def with_order(self, order: int) -> "RingDims":
        return RingDims(self.n, order)


class TruncatedPoly:
    """Polynomial with rational coefficients, every term of degree <= W.

    Instances are immutable; arithmetic returns new objects and drops
    every monomial of degree above the working order.
    """

    __slots__ = ("dims", "_terms", "_hash")

    def __init__(self, dims: RingDims, terms: Optional[Mapping[Monomial, Scalar]] = None):
        self.dims = dims
        clean: Dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != dims.n:
                raise RingMismatchError(
                    f"Exponent vector {mono} has length {len(mono)}, ring has {dims.n} variables")
            if any(e < 0 for e in mono):
                raise PreconditionError(f"Negative exponent in {mono}")
            if sum(mono) > dims.order:
                continue
            value = Fraction(coeff)
            if value != 0:
                clean[mono] = clean.get(mono, Fraction(0)) + value
                if clean[mono] == 0:
                    del clean[mono]
        self._terms = clean
        self._hash = None

    # -- construction -------------------------------------------------

    @classmethod
    def zero(cls, dims: RingDims) -> "TruncatedPoly":
        return cls(dims)

    @classmethod
    def constant(cls, dims: RingDims, value: Scalar) -> "TruncatedPoly":
        return cls(dims, {(0,) * dims.n: value})

    @classmethod
    def variable(cls, dims: RingDims, index: int) -> "TruncatedPoly":
        """The coordinate x_(index+1); indices are 0-based"""
        _check_index(dims, index)
        exps = [0] * dims.n
        exps[index] = 1
        return cls(dims, {tuple(exps): 1})

    @classmethod
    def monomial(cls, dims: RingDims, exps: Sequence[int], coeff: Scalar = 1) -> "TruncatedPoly":
        return cls(dims, {tuple(exps): coeff})

    @classmethod
    def from_terms(cls, dims: RingDims, terms: Iterable[Tuple[Sequence[int], Scalar]]) -> "TruncatedPoly":
        """Build from (exponents, coefficient) pairs, summing repeated monomials"""
        acc: Dict[Monomial, Fraction] = {}
        for exps, coeff in terms:
            mono = tuple(exps)
            acc[mono] = acc.get(mono, Fraction(0)) + Fraction(coeff)
        return cls(dims, acc)

    # -- inspection ---------------------------------------------------

    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> List[Tuple[Monomial, Fraction]]:
        """Terms in grlex-descending order"""
        return sorted(self._terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def coefficient(self, mono: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Highest total degree present; -1 for the zero polynomial"""
        return max((sum(m) for m in self._terms), default=-1)

    def order_of_vanishing(self) -> int:
        """Lowest total degree present; W+1 for the zero polynomial"""
        return min((sum(m) for m in self._terms), default=self.dims.order + 1)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.dims.n, Fraction(0))

    def linear_part(self) -> List[Fraction]:
        """Coefficients of x_1 .. x_n"""
        coeffs = []
        for i in range(self.dims.n):
            exps = [0] * self.dims.n
            exps[i] = 1
            coeffs.append(self._terms.get(tuple(exps), Fraction(0)))
        return coeffs

    def is_unit(self) -> bool:
        return self.constant_term() != 0

    # -- ring operations ----------------------------------------------

    def _check_same_ring(self, other: "TruncatedPoly") -> None:
        if self.dims != other.dims:
            raise RingMismatchError(f"Ring mismatch: {self.dims} vs {other.dims}")

    def _coerce(self, other) -> "TruncatedPoly":
        if isinstance(other, TruncatedPoly):
            self._check_same_ring(other)
            return other
        if isinstance(other, (int, Fraction)):
            return TruncatedPoly.constant(self.dims, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for mono, coeff in other._terms.items():
            acc[mono] = acc.get(mono, Fraction(0)) + coeff
        return TruncatedPoly(self.dims, acc)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedPoly(self.dims, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, TruncatedPoly):
            return NotImplemented
        self._check_same_ring(other)
        return _mul_trunc(self, other)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise PreconditionError("Exponent must be a non-negative integer")
        result = TruncatedPoly.constant(self.dims, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def scale(self, factor: Scalar) -> "TruncatedPoly":
        factor = Fraction(factor)
        return TruncatedPoly(self.dims, {m: c * factor for m, c in self._terms.items()})

    def inverse(self) -> "TruncatedPoly":
        """Multiplicative inverse of a unit, via the finite geometric series"""
        c = self.constant_term()
        if c == 0:
            raise PreconditionError("Only units (non-zero constant term) are invertible")
        nilpotent = TruncatedPoly.constant(self.dims, 1) - self.scale(1 / c)
        result = TruncatedPoly.constant(self.dims, 1)
        power = TruncatedPoly.constant(self.dims, 1)
        for _ in range(self.dims.order):
            power = power * nilpotent
            if power.is_zero():
                break
            result = result + power
        return result.scale(1 / c)

    def derivative(self, index: int) -> "TruncatedPoly":
        """Partial derivative in x_(index+1) (0-based index), same ring"""
        _check_index(self.dims, index)
        acc: Dict[Monomial, Fraction] = {}
        for mono, coeff in self._terms.items():
            e = mono[index]
            if e == 0:
                continue
            lowered = list(mono)
            lowered[index] -= 1
            acc[tuple(lowered)] = coeff * e
        return TruncatedPoly(self.dims, acc)

    # -- truncation and change of ring ---------------------------------

    def truncate(self, degree: int) -> "TruncatedPoly":
        """Drop every term of degree above ``degree`` (ring unchanged)"""
        return TruncatedPoly(self.dims, {m: c for m, c in self._terms.items() if sum(m) <= degree})

    def with_order(self, order: int) -> "TruncatedPoly":
        """Same polynomial regarded in the ring of working order ``order``"""
        return TruncatedPoly(self.dims.with_order(order), self._terms)

    def without_constant(self) -> "TruncatedPoly":
        return TruncatedPoly(self.dims, {m: c for m, c in self._terms.items() if sum(m) > 0})

    def substitute_zero(self, indices: Iterable[int]) -> "TruncatedPoly":
        """Set the listed variables to zero (ring unchanged)"""
        killed = set(indices)
        for index in killed:
            _check_index(self.dims, index)
        return TruncatedPoly(self.dims, {
            m: c for m, c in self._terms.items() if all(m[i] == 0 for i in killed)
        })

    def restrict(self, keep: Sequence[int]) -> "TruncatedPoly":
        """Set all variables not in ``keep`` to zero and drop them from the ring"""
        for index in keep:
            _check_index(self.dims, index)
        dropped = [i for i in range(self.dims.n) if i not in set(keep)]
        dims = RingDims(len(keep), self.dims.order)
        return TruncatedPoly(dims, {
            tuple(m[i] for i in keep): c
            for m, c in self._terms.items() if all(m[i] == 0 for i in dropped)
        })

    def embed(self, dims: RingDims, positions: Sequence[int]) -> "TruncatedPoly":
        """Place variable i of this ring at ``positions[i]`` of a larger ring"""
        if len(positions) != self.dims.n or any(p < 0 or p >= dims.n for p in positions):
            raise RingMismatchError(f"Cannot embed {self.dims.n} variables at {list(positions)}")
        acc = {}
        for mono, coeff in self._terms.items():
            exps = [0] * dims.n
            for i, e in enumerate(mono):
                exps[positions[i]] = e
            acc[tuple(exps)] = coeff
        return TruncatedPoly(dims, acc)

    def compose_linear(self, matrix: Sequence[Sequence[Scalar]]) -> "TruncatedPoly":
        """Substitute x_i -> sum_j matrix[i][j] * x_j"""
        n = self.dims.n
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise RingMismatchError(f"Linear substitution must be {n}x{n}")
        images = [
            TruncatedPoly(self.dims, {
                tuple(1 if k == j else 0 for k in range(n)): matrix[i][j] for j in range(n)
            })
            for i in range(n)
        ]
        result = TruncatedPoly.zero(self.dims)
        for mono, coeff in self._terms.items():
            term = TruncatedPoly.constant(self.dims, coeff)
            for i, e in enumerate(mono):
                if e:
                    term = term * images[i] ** e
            result = result + term
        return result

    def translate(self, point: Sequence[Scalar]) -> "TruncatedPoly":
        """Substitute x_i -> x_i + point_i (exact for polynomials of degree <= W)"""
        if len(point) != self.dims.n:
            raise RingMismatchError(f"Point must have {self.dims.n} coordinates")
        shifted = [TruncatedPoly.variable(self.dims, i) + Fraction(point[i]) for i in range(self.dims.n)]
        result = TruncatedPoly.zero(self.dims)
        for mono, coeff in self._terms.items():
            term = TruncatedPoly.constant(self.dims, coeff)
            for i, e in enumerate(mono):
                if e:
                    term = term * shifted[i] ** e
            result = result + term
        return result

    def evaluate(self, point: Sequence[Union[Scalar, float]]):
        """Value at a point; exact when the point is rational"""
        if len(point) != self.dims.n:
            raise RingMismatchError(f"Point must have {self.dims.n} coordinates")
        total = Fraction(0)
        for mono, coeff in self._terms.items():
            term = coeff
            for x, e in zip(point, mono):
                if e:
                    term = term * x ** e
            total = total + term
        return total

    # -- dunder helpers -------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = TruncatedPoly.constant(self.dims, other)
        if not isinstance(other, TruncatedPoly):
            return NotImplemented
        return self.dims == other.dims and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.dims, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"TruncatedPoly({self.dims.n}, W={self.dims.order}, {format_poly(self)})"

    def to_dict(self) -> dict:
        """Convert to dictionary for serialization"""
        return {
            'n': self.dims.n,
            'order': self.dims.order,
            'terms': [
                {'exponents': list(mono), 'coefficient': format_rational(coeff)}
                for mono, coeff in self.items()
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TruncatedPoly":
        """Create from dictionary"""
        dims = RingDims(int(data['n']), int(data['order']))
        return cls.from_terms(dims, [
            (term['exponents'], Fraction(str(term['coefficient']))) for term in data.get('terms', [])
        ])


def _check_index(dims: RingDims, index: int) -> None:
    if not isinstance(index, int) or index < 0 or index >= dims.n:
        raise RingMismatchError(f"Variable index {index} out of range for {dims.n} variables")


def _mul_trunc(a: TruncatedPoly, b: TruncatedPoly) -> TruncatedPoly:
    order = a.dims.order
    acc: Dict[Monomial, Fraction] = {}
    b_items = sorted(b._terms.items(), key=lambda kv: sum(kv[0]))
    for ma, ca in a._terms.items():
        da = sum(ma)
        for mb, cb in b_items:
            if da + sum(mb) > order:
                break
            mono = tuple(x + y for x, y in zip(ma, mb))
            acc[mono] = acc.get(mono, Fraction(0)) + ca * cb
    return TruncatedPoly(a.dims, acc)


def format_rational(value: Fraction) -> str:
    """Rationals are serialized as 'num/den' (integers without the denominator)"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_poly(poly: TruncatedPoly, names: Optional[Sequence[str]] = None) -> str:
    """Human readable rendering, grlex-descending"""
    if poly.is_zero():
        return "0"
    names = list(names) if names else [f"x{i + 1}" for i in range(poly.dims.n)]
    pieces = []
    for mono, coeff in poly.items():
        factors = []
        for name, e in zip(names, mono):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        body = "*".join(factors)
        magnitude = abs(coeff)
        if not body:
            text = format_rational(magnitude)
        elif magnitude == 1:
            text = body
        else:
            text = f"{format_rational(magnitude)}*{body}"
        sign = "-" if coeff < 0 else "+"
        pieces.append((sign, text))
    first_sign, first_text = pieces[0]
    rendered = ("-" if first_sign == "-" else "") + first_text
    for sign, text in pieces[1:]:
        rendered += f" {sign} {text}"
    return rendered
