"""
Command result and its renderings (table, JSON, CSV)
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from config import EXIT_SUCCESS
from utils.file_handlers import dumps_report, rows_to_csv
from utils.formatters import format_cell, format_table


@dataclass
class CommandResult:
    """What a subcommand produced: a report, its table rows and the exit code"""
    title: str
    report: Dict[str, Any]
    rows: List[Dict[str, Any]] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)
    exit_code: int = EXIT_SUCCESS
    columns: Optional[List[str]] = None

    def render(self, output_format: str) -> str:
        if output_format == "json":
            return dumps_report(self.report)
        if output_format == "csv":
            return rows_to_csv(self.rows, self.columns)
        return self.render_table()

    def render_table(self) -> str:
        lines = [self.title, "=" * len(self.title)]
        width = max((len(key) for key in self.summary), default=0)
        for key, value in self.summary.items():
            lines.append(f"{key.ljust(width)} : {format_cell(value)}")
        if self.rows:
            lines.append("")
            lines.append(format_table(self.rows, self.columns))
        return "\n".join(lines) + "\n"
