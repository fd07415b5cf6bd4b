"""Desk-scale caps.

Every exhaustive operation checks a cap before starting and raises
CapExceeded when the input is too large.  Caps are configuration, not
policy baked into algorithms; callers may pass a custom DeskCaps.
"""

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class DeskCaps:
    element_sweep: int = 4096   # full element sweeps (center, omega1, ...)
    subgroup_enum: int = 256    # subgroup-lattice enumeration
    auto_search: int = 128      # automorphism backtracking search
    cohomology: int = 4096      # |Q| * |A| for total cocycle tables
    bijection: int = 32         # double-enumeration cross checks

    def with_override(self, cap):
        """A copy with every group-order cap set to `cap` (CLI --cap)."""
        if cap is None:
            return self
        return replace(
            self,
            element_sweep=cap,
            subgroup_enum=cap,
            auto_search=cap,
            cohomology=cap,
            bijection=cap,
        )


DEFAULT_CAPS = DeskCaps()
