from __future__ import annotations

import io
import json
import math
from typing import Any, Sequence

from ._runspec import RunSpec


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def render_csv(spec: RunSpec, columns: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    buf.write(f"# runspec: {spec.canonical_json()}\n")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(_cell(v) for v in row) + "\n")
    return buf.getvalue()


def render_json(spec: RunSpec, columns: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    payload = {
        "runspec": spec.to_dict(),
        "columns": list(columns),
        "rows": [[_json_value(v) for v in row] for row in rows],
    }
    return json.dumps(payload, sort_keys=True, indent=1) + "\n"


def render(spec: RunSpec, columns: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    if spec.format == "json":
        return render_json(spec, columns, rows)
    return render_csv(spec, columns, rows)
