"""Shared numerical tolerance policy.

Every geometric predicate compares through the same two knobs: a relative
epsilon that scales with the magnitudes involved, and an absolute floor that
guards rank and ratio decisions near zero.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerance:
    rel_eps: float = 1e-9
    abs_floor: float = 1e-12

    def __post_init__(self):
        if self.rel_eps <= 0.0 or self.abs_floor <= 0.0:
            raise ValueError("tolerances must be positive")


DEFAULT_TOL = Tolerance()
