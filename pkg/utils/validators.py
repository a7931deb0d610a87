"""
Input validation functions
"""

from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple


def parse_rational(value: Any) -> Optional[Fraction]:
    """Exact rational from an integer, a decimal string or a 'num/den' string"""
    if isinstance(value, bool):
        return None
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            return None
    return None


def validate_exponents(exponents: Sequence[Any], n: int) -> Tuple[bool, List[str]]:
    """Validate an exponent vector of length n with natural entries"""
    errors = []
    if len(exponents) != n:
        errors.append(f"Exponent vector {list(exponents)} must have length {n}")
    if any(not isinstance(e, int) or isinstance(e, bool) or e < 0 for e in exponents):
        errors.append(f"Exponent vector {list(exponents)} must contain non-negative integers")
    return len(errors) == 0, errors


def validate_box(box: Sequence[Sequence[float]], dimension: int) -> Tuple[bool, List[str]]:
    """Validate box bounds: one nonempty interval per coordinate"""
    errors = []
    if len(box) != dimension:
        errors.append(f"Box must have {dimension} intervals, got {len(box)}")
    for i, interval in enumerate(box):
        if len(interval) != 2:
            errors.append(f"Interval {i + 1} must have two bounds")
        elif not interval[0] < interval[1]:
            errors.append(f"Interval {i + 1} must satisfy lower < upper")
    return len(errors) == 0, errors


def validate_slice(lower: float, upper: float) -> Tuple[bool, List[str]]:
    """Validate slice bounds a < b"""
    if lower < upper:
        return True, []
    return False, [f"Slice bounds must satisfy a < b, got [{lower}, {upper}]"]


def validate_grid_density(density: Any) -> bool:
    """Validate a grid density (points per axis)"""
    return isinstance(density, int) and not isinstance(density, bool) and density >= 1


def validate_tolerance(value: Any) -> bool:
    """Validate a positive finite tolerance"""
    try:
        tolerance = float(value)
        return 0 < tolerance < float("inf")
    except (ValueError, TypeError):
        return False


def parse_point(text: str) -> Tuple[bool, List[float], List[str]]:
    """Parse 'a,b,c' into floats"""
    try:
        values = [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        return False, [], [f"Cannot read '{text}' as comma separated numbers"]
    if not values:
        return False, [], ["Point must have at least one coordinate"]
    return True, values, []


def sanitize_filename(filename: str) -> str:
    """Sanitize filename for safe file operations"""
    invalid_chars = '<>:"/\\|?*'
    for char in invalid_chars:
        filename = filename.replace(char, '_')
    return filename
