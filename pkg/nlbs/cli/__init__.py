from ._runspec import RunSpec
from ._writers import render, render_csv, render_json
from ._commands import (
    Table,
    cmd_eval,
    cmd_residual,
    cmd_solve,
    cmd_converge,
    cmd_greeks,
    cmd_sweep,
)
from ._main import build_parser, configure_logging, main


__all__ = [
    "RunSpec",
    "render",
    "render_csv",
    "render_json",
    "Table",
    "cmd_eval",
    "cmd_residual",
    "cmd_solve",
    "cmd_converge",
    "cmd_greeks",
    "cmd_sweep",
    "build_parser",
    "configure_logging",
    "main",
]
