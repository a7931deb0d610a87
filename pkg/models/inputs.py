"""
Input file schemas: germ jets, foliated jets and foliated charts
"""

from fractions import Fraction
from typing import List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from config import AppSettings
from models.chart import ChartSpec, MetricSpec
from models.foliated_function import FoliatedFunction, build_function
from models.jets import FoliatedJet, MapJet
from models.truncated_poly import RingDims, TruncatedPoly
from utils.exceptions import InputError
from utils.expression_parser import parse_expression
from utils.validators import parse_rational, validate_box, validate_exponents


class TermInput(BaseModel):
    """One monomial: exponent vector and an exact coefficient"""
    model_config = ConfigDict(extra="forbid")

    exponents: List[int]
    coefficient: Union[int, str]

    @field_validator("coefficient")
    @classmethod
    def coefficient_is_rational(cls, value):
        if parse_rational(value) is None:
            raise ValueError(f"coefficient {value!r} is not an exact decimal or fraction")
        return value

    def rational(self) -> Fraction:
        return parse_rational(self.coefficient)


def _to_poly(terms: List[TermInput], dims: RingDims) -> TruncatedPoly:
    return TruncatedPoly.from_terms(dims, [(tuple(t.exponents), t.rational()) for t in terms])


class GermInput(BaseModel):
    """Polynomial k-jet of a map germ (R^n, 0) -> (R^p, 0)"""
    model_config = ConfigDict(extra="forbid")

    n: int = Field(ge=1)
    p: int = Field(ge=1)
    order: int = Field(ge=1)
    components: List[List[TermInput]]

    @model_validator(mode="after")
    def shapes_agree(self):
        if len(self.components) != self.p:
            raise ValueError(f"expected {self.p} components, got {len(self.components)}")
        for component in self.components:
            for term in component:
                is_valid, errors = validate_exponents(term.exponents, self.n)
                if not is_valid:
                    raise ValueError("; ".join(errors))
        return self

    def to_map_jet(self) -> MapJet:
        dims = RingDims(self.n, max(self.order, self._degree()))
        jet = MapJet(tuple(_to_poly(c, dims) for c in self.components), self.order)
        is_valid, errors = jet.validate()
        if not is_valid:
            raise InputError("; ".join(errors))
        return jet

    def _degree(self) -> int:
        return max((sum(t.exponents) for c in self.components for t in c), default=0)


class FoliatedGermInput(BaseModel):
    """Polynomial k-jet at the origin of f on R^leaf_dim x R^transverse_dim"""
    model_config = ConfigDict(extra="forbid")

    leaf_dim: int = Field(ge=1)
    transverse_dim: int = Field(ge=0)
    order: int = Field(ge=1)
    terms: List[TermInput]

    @model_validator(mode="after")
    def shapes_agree(self):
        for term in self.terms:
            is_valid, errors = validate_exponents(term.exponents, self.leaf_dim + self.transverse_dim)
            if not is_valid:
                raise ValueError("; ".join(errors))
        return self

    def to_foliated_jet(self) -> FoliatedJet:
        degree = max((sum(t.exponents) for t in self.terms), default=0)
        dims = RingDims(self.leaf_dim + self.transverse_dim, max(self.order, degree))
        poly = _to_poly(self.terms, dims).truncate(self.order).with_order(self.order)
        jet = FoliatedJet(poly, self.leaf_dim, self.transverse_dim, self.order)
        is_valid, errors = jet.validate()
        if not is_valid:
            raise InputError("; ".join(errors))
        return jet


class ToleranceInput(BaseModel):
    """Per-file overrides of the numeric tolerances"""
    model_config = ConfigDict(extra="forbid")

    residual: Optional[float] = Field(default=None, gt=0)
    dedup_radius: Optional[float] = Field(default=None, gt=0)
    eigen_zero: Optional[float] = Field(default=None, gt=0)
    flow_error: Optional[float] = Field(default=None, gt=0)
    convergence_norm: Optional[float] = Field(default=None, gt=0)
    near_skeleton: Optional[float] = Field(default=None, gt=0)
    confinement: Optional[float] = Field(default=None, gt=0)


class ChartInput(BaseModel):
    """Foliated chart R^n x R^q, a function on it and an optional leafwise metric"""
    model_config = ConfigDict(extra="forbid")

    n: int = Field(ge=1)
    q: int = Field(ge=0)
    box: List[Tuple[float, float]]
    expression: str
    metric: Optional[List[List[str]]] = None
    declared_proper: bool = False
    grid_leaf: int = Field(default=AppSettings.DEFAULT_LEAF_GRID, ge=1)
    grid_transverse: int = Field(default=AppSettings.DEFAULT_TRANSVERSE_GRID, ge=1)
    tolerances: ToleranceInput = Field(default_factory=ToleranceInput)

    @model_validator(mode="after")
    def box_matches_chart(self):
        is_valid, errors = validate_box(self.box, self.n + self.q)
        if not is_valid:
            raise ValueError("; ".join(errors))
        return self

    def chart(self) -> ChartSpec:
        return ChartSpec(self.n, self.q, tuple(self.box), self.declared_proper)

    def function(self) -> FoliatedFunction:
        try:
            expr = parse_expression(self.expression, self.n, self.q)
        except InputError as e:
            raise InputError(f"expression: {e.args[0]}", column=e.column)
        return build_function(expr, self.chart())

    def metric_spec(self) -> MetricSpec:
        if self.metric is None:
            return MetricSpec.euclidean(self.n)
        if len(self.metric) != self.n or any(len(row) != self.n for row in self.metric):
            raise InputError(f"metric must be a {self.n}x{self.n} matrix of expressions")
        entries = []
        for i, row in enumerate(self.metric):
            parsed = []
            for j, text in enumerate(row):
                try:
                    parsed.append(parse_expression(text, self.n, self.q))
                except InputError as e:
                    raise InputError(f"metric[{i}][{j}]: {e.args[0]}", column=e.column)
            entries.append(tuple(parsed))
        metric = MetricSpec(tuple(entries), self.n)
        is_valid, errors = metric.validate()
        if not is_valid:
            raise InputError("; ".join(errors))
        return metric


def load_input(model, data: dict):
    """Validate a decoded JSON document, turning schema errors into InputError"""
    try:
        return model.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(part) for part in first["loc"]) or "document"
        raise InputError(f"{where}: {first['msg']} ({e.error_count()} error(s))")
