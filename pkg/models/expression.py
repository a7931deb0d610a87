"""
Smooth expressions on a product chart: polynomial AST with exact derivatives.

Leaf variables are x1..xn, transverse variables v1..vq. Coordinate vectors
list the leaf variables first.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import singledispatch
from typing import Callable, Dict, Sequence, Tuple, Union

from models.truncated_poly import RingDims, TruncatedPoly
from utils.exceptions import PreconditionError

Number = Union[int, Fraction, float]


class Expr:
    """Base node; operators build new trees"""

    def __add__(self, other):
        return Add((self, as_expr(other)))

    def __radd__(self, other):
        return Add((as_expr(other), self))

    def __sub__(self, other):
        return Add((self, Neg(as_expr(other))))

    def __rsub__(self, other):
        return Add((as_expr(other), Neg(self)))

    def __mul__(self, other):
        return Mul((self, as_expr(other)))

    def __rmul__(self, other):
        return Mul((as_expr(other), self))

    def __neg__(self):
        return Neg(self)

    def __pow__(self, exponent: int):
        return Pow(self, exponent)

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, eq=True)
class Const(Expr):
    value: Fraction


@dataclass(frozen=True, eq=True)
class Var(Expr):
    kind: str  # 'x' (leaf) or 'v' (transverse)
    index: int  # 1-based

    def position(self, leaf_dim: int) -> int:
        return self.index - 1 if self.kind == "x" else leaf_dim + self.index - 1

    @property
    def name(self) -> str:
        return f"{self.kind}{self.index}"


@dataclass(frozen=True, eq=True)
class Add(Expr):
    terms: Tuple[Expr, ...]


@dataclass(frozen=True, eq=True)
class Mul(Expr):
    factors: Tuple[Expr, ...]


@dataclass(frozen=True, eq=True)
class Pow(Expr):
    base: Expr
    exponent: int


@dataclass(frozen=True, eq=True)
class Neg(Expr):
    operand: Expr


ZERO = Const(Fraction(0))
ONE = Const(Fraction(1))


def as_expr(value) -> Expr:
    if isinstance(value, Expr):
        return value
    if isinstance(value, (int, Fraction)):
        return Const(Fraction(value))
    if isinstance(value, float):
        return Const(Fraction(value))
    raise TypeError(f"Cannot build an expression from {value!r}")


# -- simplification --------------------------------------------------------

def _is_const(expr: Expr, value=None) -> bool:
    return isinstance(expr, Const) and (value is None or expr.value == value)


def make_add(terms: Sequence[Expr]) -> Expr:
    flat = []
    constant = Fraction(0)
    for term in terms:
        parts = term.terms if isinstance(term, Add) else (term,)
        for part in parts:
            if isinstance(part, Const):
                constant += part.value
            else:
                flat.append(part)
    if constant != 0 or not flat:
        flat.append(Const(constant))
    return flat[0] if len(flat) == 1 else Add(tuple(flat))


def make_mul(factors: Sequence[Expr]) -> Expr:
    flat = []
    constant = Fraction(1)
    for factor in factors:
        parts = factor.factors if isinstance(factor, Mul) else (factor,)
        for part in parts:
            if isinstance(part, Const):
                constant *= part.value
            else:
                flat.append(part)
    if constant == 0:
        return ZERO
    if constant != 1 or not flat:
        flat.insert(0, Const(constant))
    return flat[0] if len(flat) == 1 else Mul(tuple(flat))


def make_neg(operand: Expr) -> Expr:
    if isinstance(operand, Const):
        return Const(-operand.value)
    if isinstance(operand, Neg):
        return operand.operand
    return make_mul((Const(Fraction(-1)), operand))


def make_pow(base: Expr, exponent: int) -> Expr:
    if exponent == 0:
        return ONE
    if exponent == 1:
        return base
    if isinstance(base, Const):
        return Const(base.value ** exponent)
    return Pow(base, exponent)


# -- derivatives -------------------------------------------------------------

@singledispatch
def differentiate(expr: Expr, var: Var) -> Expr:
    raise TypeError(f"Unsupported node {type(expr).__name__}")


@differentiate.register
def _(expr: Const, var: Var) -> Expr:
    return ZERO


@differentiate.register
def _(expr: Var, var: Var) -> Expr:
    return ONE if expr == var else ZERO


@differentiate.register
def _(expr: Add, var: Var) -> Expr:
    return make_add([differentiate(t, var) for t in expr.terms])


@differentiate.register
def _(expr: Mul, var: Var) -> Expr:
    terms = []
    for i, factor in enumerate(expr.factors):
        d = differentiate(factor, var)
        if _is_const(d, 0):
            continue
        terms.append(make_mul(list(expr.factors[:i]) + [d] + list(expr.factors[i + 1:])))
    return make_add(terms) if terms else ZERO


@differentiate.register
def _(expr: Pow, var: Var) -> Expr:
    d = differentiate(expr.base, var)
    if _is_const(d, 0):
        return ZERO
    return make_mul((Const(Fraction(expr.exponent)), make_pow(expr.base, expr.exponent - 1), d))


@differentiate.register
def _(expr: Neg, var: Var) -> Expr:
    return make_neg(differentiate(expr.operand, var))


# -- evaluation --------------------------------------------------------------

@singledispatch
def evaluate(expr: Expr, point: Sequence[Number], leaf_dim: int):
    raise TypeError(f"Unsupported node {type(expr).__name__}")


@evaluate.register
def _(expr: Const, point, leaf_dim):
    return expr.value


@evaluate.register
def _(expr: Var, point, leaf_dim):
    return point[expr.position(leaf_dim)]


@evaluate.register
def _(expr: Add, point, leaf_dim):
    total = Fraction(0)
    for term in expr.terms:
        total = total + evaluate(term, point, leaf_dim)
    return total


@evaluate.register
def _(expr: Mul, point, leaf_dim):
    product = Fraction(1)
    for factor in expr.factors:
        product = product * evaluate(factor, point, leaf_dim)
    return product


@evaluate.register
def _(expr: Pow, point, leaf_dim):
    return evaluate(expr.base, point, leaf_dim) ** expr.exponent


@evaluate.register
def _(expr: Neg, point, leaf_dim):
    return -evaluate(expr.operand, point, leaf_dim)


# -- rendering and compilation -----------------------------------------------

@singledispatch
def render(expr: Expr) -> str:
    raise TypeError(f"Unsupported node {type(expr).__name__}")


@render.register
def _(expr: Const) -> str:
    value = expr.value
    text = str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    return f"({text})" if value < 0 or value.denominator != 1 else text


@render.register
def _(expr: Var) -> str:
    return expr.name


@render.register
def _(expr: Add) -> str:
    return "(" + " + ".join(render(t) for t in expr.terms) + ")"


@render.register
def _(expr: Mul) -> str:
    return "*".join(render(f) for f in expr.factors)


@render.register
def _(expr: Pow) -> str:
    return f"{render(expr.base)}^{expr.exponent}"


@render.register
def _(expr: Neg) -> str:
    return f"-({render(expr.operand)})"


@singledispatch
def _python_source(expr: Expr, leaf_dim: int) -> str:
    raise TypeError(f"Unsupported node {type(expr).__name__}")


@_python_source.register
def _(expr: Const, leaf_dim: int) -> str:
    return repr(float(expr.value))


@_python_source.register
def _(expr: Var, leaf_dim: int) -> str:
    return f"p[{expr.position(leaf_dim)}]"


@_python_source.register
def _(expr: Add, leaf_dim: int) -> str:
    return "(" + " + ".join(_python_source(t, leaf_dim) for t in expr.terms) + ")"


@_python_source.register
def _(expr: Mul, leaf_dim: int) -> str:
    return "(" + " * ".join(_python_source(f, leaf_dim) for f in expr.factors) + ")"


@_python_source.register
def _(expr: Pow, leaf_dim: int) -> str:
    return f"({_python_source(expr.base, leaf_dim)} ** {expr.exponent})"


@_python_source.register
def _(expr: Neg, leaf_dim: int) -> str:
    return f"(-{_python_source(expr.operand, leaf_dim)})"


def compile_float(expr: Expr, leaf_dim: int) -> Callable[[Sequence[float]], float]:
    """Float evaluator: the tree is rendered once to a Python lambda"""
    source = f"lambda p: {_python_source(expr, leaf_dim)}"
    return eval(compile(source, "<expression>", "eval"), {"__builtins__": {}})


# -- conversion to exact polynomials -------------------------------------------

@singledispatch
def to_truncated_poly(expr: Expr, dims: RingDims, leaf_dim: int) -> TruncatedPoly:
    raise TypeError(f"Unsupported node {type(expr).__name__}")


@to_truncated_poly.register
def _(expr: Const, dims, leaf_dim):
    return TruncatedPoly.constant(dims, expr.value)


@to_truncated_poly.register
def _(expr: Var, dims, leaf_dim):
    position = expr.position(leaf_dim)
    if position >= dims.n:
        raise PreconditionError(f"Variable {expr.name} outside a ring of {dims.n} variables")
    return TruncatedPoly.variable(dims, position)


@to_truncated_poly.register
def _(expr: Add, dims, leaf_dim):
    result = TruncatedPoly.zero(dims)
    for term in expr.terms:
        result = result + to_truncated_poly(term, dims, leaf_dim)
    return result


@to_truncated_poly.register
def _(expr: Mul, dims, leaf_dim):
    result = TruncatedPoly.constant(dims, 1)
    for factor in expr.factors:
        result = result * to_truncated_poly(factor, dims, leaf_dim)
    return result


@to_truncated_poly.register
def _(expr: Pow, dims, leaf_dim):
    return to_truncated_poly(expr.base, dims, leaf_dim) ** expr.exponent


@to_truncated_poly.register
def _(expr: Neg, dims, leaf_dim):
    return -to_truncated_poly(expr.operand, dims, leaf_dim)


@singledispatch
def polynomial_degree(expr: Expr) -> int:
    raise TypeError(f"Unsupported node {type(expr).__name__}")


@polynomial_degree.register
def _(expr: Const) -> int:
    return 0


@polynomial_degree.register
def _(expr: Var) -> int:
    return 1


@polynomial_degree.register
def _(expr: Add) -> int:
    return max(polynomial_degree(t) for t in expr.terms)


@polynomial_degree.register
def _(expr: Mul) -> int:
    return sum(polynomial_degree(f) for f in expr.factors)


@polynomial_degree.register
def _(expr: Pow) -> int:
    return polynomial_degree(expr.base) * expr.exponent


@polynomial_degree.register
def _(expr: Neg) -> int:
    return polynomial_degree(expr.operand)


@singledispatch
def variables(expr: Expr) -> frozenset:
    raise TypeError(f"Unsupported node {type(expr).__name__}")


@variables.register
def _(expr: Const) -> frozenset:
    return frozenset()


@variables.register
def _(expr: Var) -> frozenset:
    return frozenset([expr])


@variables.register(Add)
@variables.register(Mul)
def _(expr) -> frozenset:
    children = expr.terms if isinstance(expr, Add) else expr.factors
    found = frozenset()
    for child in children:
        found |= variables(child)
    return found


@variables.register
def _(expr: Pow) -> frozenset:
    return variables(expr.base)


@variables.register
def _(expr: Neg) -> frozenset:
    return variables(expr.operand)


def leaf_var(index: int) -> Var:
    return Var("x", index)


def transverse_var(index: int) -> Var:
    return Var("v", index)


def chart_variables(leaf_dim: int, transverse_dim: int) -> Dict[str, Var]:
    names = {f"x{i}": leaf_var(i) for i in range(1, leaf_dim + 1)}
    names.update({f"v{j}": transverse_var(j) for j in range(1, transverse_dim + 1)})
    return names
