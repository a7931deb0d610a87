"""
Resolve command inputs: JSON files on disk or entries of the built-in catalog
"""

from pathlib import Path
from typing import Any, Dict, Union

from config import CATALOG
from models.expression import polynomial_degree, to_truncated_poly
from models.inputs import ChartInput, FoliatedGermInput, GermInput, load_input
from models.truncated_poly import RingDims, format_rational
from utils.exceptions import InputError
from utils.expression_parser import parse_expression
from utils.file_handlers import import_from_json


def catalog_germ_document(name: str) -> Dict[str, Any]:
    """A catalog germ rewritten in the GermInput layout"""
    entry = CATALOG["germs"][name]
    n = entry["n"]
    components = []
    for text in entry["components"]:
        expr = parse_expression(text, n)
        dims = RingDims(n, max(entry["order"], polynomial_degree(expr), 1))
        poly = to_truncated_poly(expr, dims, n)
        components.append([
            {"exponents": list(mono), "coefficient": format_rational(coeff)} for mono, coeff in poly.items()
        ])
    return {"n": n, "p": entry["p"], "order": entry["order"], "components": components}


def catalog_chart_document(name: str) -> Dict[str, Any]:
    entry = CATALOG["charts"][name]
    return {key: entry[key] for key in ("n", "q", "expression", "box")}


def resolve_document(source: str, section: str) -> Dict[str, Any]:
    if Path(source).exists():
        return import_from_json(source)
    if source in CATALOG[section]:
        if section == "germs":
            return catalog_germ_document(source)
        return catalog_chart_document(source)
    raise InputError(f"No input file or {section[:-1]} catalog entry named '{source}'")


def load_jet(source: str) -> Union[GermInput, FoliatedGermInput]:
    """A map germ jet, or a foliated jet when the document names leaf_dim"""
    data = resolve_document(source, "germs")
    if "leaf_dim" in data:
        return load_input(FoliatedGermInput, data)
    return load_input(GermInput, data)


def load_function_germ(source: str) -> GermInput:
    germ = load_input(GermInput, resolve_document(source, "germs"))
    if germ.p != 1:
        raise InputError(f"Function germ expected (p = 1), got p = {germ.p}")
    return germ


def load_chart(source: str) -> ChartInput:
    return load_input(ChartInput, resolve_document(source, "charts"))
