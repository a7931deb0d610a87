"""
Format rationals, floats, symbols and verdicts for reports
"""

from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from config import AppSettings
from models.truncated_poly import format_rational


def format_float(value: float) -> str:
    """Decimal with 17 significant digits (round-trips every double)"""
    return f"{float(value):.{AppSettings.FLOAT_SIGNIFICANT_DIGITS}g}"


def format_number(value) -> str:
    """Rationals as 'num/den', floats with full precision, anything else via str"""
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, (int, Fraction)):
        return format_rational(Fraction(value))
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def format_symbol(entries: Optional[Sequence[int]]) -> str:
    """Boardman symbol as (i1,i2,...)"""
    if entries is None:
        return "-"
    return "(" + ",".join(str(e) for e in entries) + ")"


def format_signature(d_plus: int, d_minus: int, d_zero: int) -> str:
    return f"({d_plus},{d_minus},{d_zero})"


def format_point(point: Sequence[float], digits: int = 6) -> str:
    """Short point rendering for tables"""
    return "(" + ", ".join(f"{x:.{digits}g}" for x in point) + ")"


def format_table(rows: List[Dict[str, Any]], columns: Optional[Sequence[str]] = None) -> str:
    """Fixed-width text table through pandas"""
    if not rows:
        return "(no rows)"
    import pandas as pd

    df = pd.DataFrame(rows, columns=list(columns) if columns else None)
    df = df.apply(lambda column: column.map(format_cell))
    return df.to_string(index=False)


def format_cell(value: Any) -> str:
    if isinstance(value, (list, tuple)):
        if any(isinstance(v, (list, tuple, dict)) for v in value):
            return str(value)
        if all(isinstance(v, int) and not isinstance(v, bool) for v in value):
            return format_symbol(value)
        return format_point(value)
    if value is None:
        return "-"
    return format_number(value)
