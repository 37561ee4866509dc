"""Text / CSV / JSON rendering of tables and verification reports."""
import json
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

FORMATS = ("text", "json", "csv")


def _check_format(fmt: str) -> None:
    if fmt not in FORMATS:
        raise ValueError(f"unknown format '{fmt}'. Known: {', '.join(FORMATS)}")


def render_records(records: List[Dict[str, Any]], fmt: str = "text", payload: Optional[Any] = None) -> str:
    """Flat records as an aligned table or CSV; JSON emits ``payload`` when given."""
    _check_format(fmt)
    if fmt == "json":
        return json.dumps(payload if payload is not None else records, indent=2, sort_keys=True, default=str)
    df = pd.DataFrame.from_records(records)
    if fmt == "csv":
        return df.to_csv(index=False).rstrip("\n")
    return df.to_string(index=False) if not df.empty else "(empty)"


def matrix_frame(matrix: Sequence[Sequence[Any]], rows: Sequence[str], columns: Sequence[str]) -> pd.DataFrame:
    cleaned = [["" if v is None else v for v in row] for row in matrix]
    return pd.DataFrame(cleaned, index=list(rows), columns=list(columns))


def render_matrix(matrix, rows, columns, fmt: str = "text", payload: Optional[Any] = None) -> str:
    _check_format(fmt)
    if fmt == "json":
        body = payload if payload is not None else {"rows": list(rows), "columns": list(columns), "matrix": matrix}
        return json.dumps(body, indent=2, sort_keys=True, default=str)
    df = matrix_frame(matrix, rows, columns)
    if fmt == "csv":
        return df.to_csv(index_label="module").rstrip("\n")
    return df.to_string()


def render_pairing_table(table, fmt: str = "text") -> str:
    """Module × class layout with empty cells where the parities do not match."""
    out = render_matrix(table.matrix(), table.modules, table.classes, fmt, payload=table.to_dict())
    if fmt == "text":
        status = "stabilized" if table.stabilized else "NOT stabilized"
        out += f"\n\nalgebra={table.algebra.value} window={table.window} degree={table.degree} ({status})"
    return out


def render_module_report(report, fmt: str = "text") -> str:
    records = [{"module": report.module, **c.to_dict()} for c in report.checks]
    return render_records(records, fmt, payload=report.to_dict())


def render_suite(suite, fmt: str = "text") -> str:
    records = [
        {"identity": r.identity, "bound": r.bound, "tuples": r.tuples_checked, "passed": r.passed}
        for r in suite.reports
    ]
    out = render_records(records, fmt, payload=suite.to_dict())
    if fmt == "text":
        out += f"\n\n{suite.suite}: {suite.passed_count}/{len(suite.reports)} passed"
    return out
