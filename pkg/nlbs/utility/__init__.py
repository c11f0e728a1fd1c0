from ._ranges import RangeSpec, parse_range, parse_values
from ._io import atomic_write_text, emit


__all__ = [
    "RangeSpec",
    "parse_range",
    "parse_values",
    "atomic_write_text",
    "emit",
]
