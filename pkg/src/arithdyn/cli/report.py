"""Tabular reports rendered as aligned text, JSON or CSV from the same cells."""

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction


def cell(value):
    """JSON-safe scalar: floats to 12 significant digits, rationals as strings."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        return float(f"{value:.12g}")
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): cell(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [cell(v) for v in value]
    return str(value)


def _text(value):
    value = cell(value)
    if value is None:
        return "-"
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    return str(value)


@dataclass
class Report:
    command: str
    columns: list
    rows: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def as_dict(self):
        return {"command": self.command, "meta": cell(self.meta),
                "columns": list(self.columns),
                "rows": [dict(zip(self.columns, cell(list(r)))) for r in self.rows]}

    def render(self, fmt="table"):
        if fmt == "json":
            return json.dumps(self.as_dict(), sort_keys=True, indent=2) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(self.columns)
            for r in self.rows:
                w.writerow([_text(v) for v in r])
            return buf.getvalue()
        return self._table()

    def _table(self):
        cells = [[_text(v) for v in r] for r in self.rows]
        widths = [max([len(c)] + [len(r[i]) for r in cells])
                  for i, c in enumerate(self.columns)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(self.columns, widths)).rstrip(),
                 "  ".join("-" * w for w in widths)]
        lines += ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in cells]
        for k in sorted(self.meta):
            lines.append(f"# {k}: {_text(self.meta[k])}")
        return "\n".join(lines) + "\n"


def error_document(exc):
    doc = {"type": type(exc).__name__, "message": str(exc)}
    for attr in ("line", "column", "cap_name", "estimate"):
        v = getattr(exc, attr, None)
        if v is not None:
            doc[attr] = v
    return json.dumps({"error": doc}, sort_keys=True) + "\n"
