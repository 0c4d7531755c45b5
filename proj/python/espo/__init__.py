"""Python bindings for the espo exact counting library."""

import json

from ._espo import (
    BudgetError,
    ValidationError,
    __version__,
    count,
    elliptic_multiple,
    filtration_level_size,
    grid_star_count,
    point_line_incidences,
    run,
    subgroup_dimension,
    sumprod,
    verify_z22,
)


class UsageError(ValueError):
    """Unknown subcommand or flag (CLI exit code 64)."""


def report(*args):
    """Runs a CLI subcommand with JSON output and returns the parsed report."""
    code, out, err = run([str(a) for a in args])
    if code == 0:
        return json.loads(out)
    message = err.strip()
    if code == 3:
        raise BudgetError(message)
    if code == 64:
        raise UsageError(message)
    raise ValidationError(message)


__all__ = [
    "BudgetError",
    "UsageError",
    "ValidationError",
    "__version__",
    "count",
    "elliptic_multiple",
    "filtration_level_size",
    "grid_star_count",
    "point_line_incidences",
    "report",
    "run",
    "subgroup_dimension",
    "sumprod",
    "verify_z22",
]
