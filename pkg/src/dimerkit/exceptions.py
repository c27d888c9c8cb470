"""Exception types shared across the package.

The CLI maps these onto exit codes: invalid input (2), negative verdict (3)
and internal invariant violations (1).
"""

from __future__ import annotations


class InvalidModelError(ValueError):
    """Input data does not describe a usable dimer model or argument."""


class CapacityError(ValueError):
    """Input exceeds a documented size bound for an exhaustive algorithm."""


class DegenerateModelError(RuntimeError):
    """A computation requires a non-degenerate model and the input is not."""


class InternalConsistencyError(RuntimeError):
    """An invariant that should hold for every valid input failed; a bug."""
