from fractions import Fraction

import pytest

from utils.file_handlers import dumps_report, rows_to_csv
from utils.formatters import format_cell, format_float, format_number, format_symbol, format_table
from utils.validators import (
    parse_point,
    parse_rational,
    validate_box,
    validate_exponents,
    validate_grid_density,
    validate_slice,
    validate_tolerance,
)


@pytest.mark.parametrize("value,expected", [
    (3, Fraction(3)),
    ("-2/6", Fraction(-1, 3)),
    ("0.25", Fraction(1, 4)),
    ("1/0", None),
    ("abc", None),
    (True, None),
    (0.5, None),
])
def test_parse_rational(value, expected):
    """Test exact coefficient parsing"""
    assert parse_rational(value) == expected


def test_validate_exponents():
    """Test exponent vector validation"""
    assert validate_exponents([1, 0], 2) == (True, [])
    is_valid, errors = validate_exponents([1, -1, 0], 2)
    assert not is_valid
    assert len(errors) == 2


def test_validate_box_and_slice():
    """Test box and slice validation"""
    assert validate_box([[-1, 1], [0, 2]], 2)[0]
    assert not validate_box([[1, 1]], 1)[0]
    assert not validate_box([[-1, 1]], 2)[0]
    assert validate_slice(0.0, 1.0)[0]
    assert not validate_slice(1.0, 1.0)[0]


def test_scalar_validators():
    """Test grid densities and tolerances"""
    assert validate_grid_density(5)
    assert not validate_grid_density(0)
    assert not validate_grid_density(True)
    assert validate_tolerance("1e-9")
    assert not validate_tolerance(0)
    assert not validate_tolerance("inf")


def test_parse_point():
    """Test comma separated points"""
    assert parse_point("0.5, -1") == (True, [0.5, -1.0], [])
    assert not parse_point("a,b")[0]
    assert not parse_point("")[0]


def test_number_formatting():
    """Test rationals and full precision floats"""
    assert format_number(Fraction(-3, 6)) == "-1/2"
    assert format_number(4) == "4"
    assert format_float(0.1) == "0.10000000000000001"
    assert float(format_float(1 / 3)) == 1 / 3
    assert format_symbol([2, 1, 0]) == "(2,1,0)"
    assert format_symbol(None) == "-"


def test_cells():
    """Test table cell rendering"""
    assert format_cell((1, 0)) == "(1,0)"
    assert format_cell([0.5, 0.25]) == "(0.5, 0.25)"
    assert format_cell(None) == "-"
    assert format_cell(True) == "True"


def test_table_and_csv():
    """Test the table and CSV renderings of report rows"""
    rows = [{'symbol': (1, 0), 'codim': 1}, {'symbol': (1, 1, 0), 'codim': 2}]
    table = format_table(rows)
    assert "(1,1,0)" in table
    assert format_table([]) == "(no rows)"
    assert rows_to_csv([{'x': 0.1, 'y': 2}]).splitlines() == ["x,y", "0.10000000000000001,2"]
    assert rows_to_csv([]) == ""


def test_json_is_sorted():
    """Test the deterministic JSON rendering"""
    assert dumps_report({'b': 1, 'a': [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'
