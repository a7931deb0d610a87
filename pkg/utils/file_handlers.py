"""
File import/export utilities
"""
import csv
import io
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Sequence

from utils.exceptions import InputError
from utils.formatters import format_float


def import_from_json(file_path: str) -> Dict[str, Any]:
    """Read a JSON input file; syntax errors carry line and column"""
    path = Path(file_path)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as e:
        raise InputError(f"Cannot read {file_path}: {e.strerror or e}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"Invalid JSON in {file_path}: {e.msg}", line=e.lineno, column=e.colno)
    if not isinstance(data, dict):
        raise InputError(f"{file_path} must contain a JSON object", line=1, column=1)
    logging.info(f"Imported data from {file_path}")
    return data


def dumps_report(data: Dict[str, Any]) -> str:
    """Deterministic JSON: sorted keys, fixed indentation, trailing newline"""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False, allow_nan=False) + "\n"


def _cell(value: Any) -> Any:
    if isinstance(value, float):
        return format_float(value)
    return value


def rows_to_csv(rows: List[Dict[str, Any]], fieldnames: Sequence[str] = None) -> str:
    """RFC-4180 CSV text, floats with 17 significant digits"""
    buffer = io.StringIO()
    if not rows:
        return ""
    writer = csv.DictWriter(buffer, fieldnames=list(fieldnames or rows[0].keys()))
    writer.writeheader()
    writer.writerows({key: _cell(value) for key, value in row.items()} for row in rows)
    return buffer.getvalue()


def export_to_csv(data: List[Dict[str, Any]], file_path: str) -> bool:
    """Export data to CSV file"""
    try:
        if not data:
            logging.warning("No data to export")
            return False

        with open(file_path, 'w', newline='', encoding='utf-8') as file:
            file.write(rows_to_csv(data))

        logging.info(f"Exported {len(data)} rows to {file_path}")
        return True

    except Exception as e:
        logging.error(f"Failed to export CSV: {e}")
        return False


def export_to_json(data: Dict[str, Any], file_path: str) -> bool:
    """Export data to JSON file"""
    try:
        with open(file_path, 'w', encoding='utf-8') as file:
            file.write(dumps_report(data))

        logging.info(f"Exported data to {file_path}")
        return True

    except Exception as e:
        logging.error(f"Failed to export JSON: {e}")
        return False


def export_to_excel(data: Dict[str, List[Dict[str, Any]]], file_path: str) -> bool:
    """Export data to Excel file (requires pandas and openpyxl)"""
    try:
        import pandas as pd

        with pd.ExcelWriter(file_path, engine='openpyxl') as writer:
            for sheet_name, sheet_data in data.items():
                if sheet_data:
                    df = pd.DataFrame(sheet_data)
                    df.to_excel(writer, sheet_name=sheet_name[:31], index=False)

        logging.info(f"Exported data to Excel: {file_path}")
        return True

    except ImportError:
        logging.warning("pandas/openpyxl not installed - Excel export unavailable")
        return False
    except Exception as e:
        logging.error(f"Failed to export Excel: {e}")
        return False


def export_rows(rows: List[Dict[str, Any]], report: Dict[str, Any], file_path: str, sheet: str = "report") -> bool:
    """Write a report to the file named by --out, choosing the format by suffix"""
    suffix = Path(file_path).suffix.lower()
    if suffix == ".xlsx":
        return export_to_excel({sheet: rows}, file_path)
    if suffix == ".csv":
        return export_to_csv(rows, file_path)
    return export_to_json(report, file_path)
