"""pgforge: a finite p-group workbench.

Power-commutator presentations with unique normal forms, subgroup and
quotient machinery, automorphism construction and exhaustive search,
low-dimensional cohomology of center modules, a built-in corpus of
desk-scale groups and a theorem-check harness (`forge` on the command
line).
"""

from pgforge.caps import DEFAULT_CAPS, DeskCaps
from pgforge.core import (
    Element,
    PcPresentation,
    commutator,
    conjugate,
    consistency_check,
    element_order,
    inverse,
    multiply,
    parse_presentation,
    power,
    serialize_presentation,
)
from pgforge.errors import (
    CapExceeded,
    ConsistencyError,
    DomainError,
    ForgeError,
    HypothesesUnmet,
    MixedPresentationError,
    PresentationError,
)
from pgforge.kernel import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "ConsistencyError",
    "DEFAULT_CAPS",
    "DeskCaps",
    "DomainError",
    "Element",
    "ForgeError",
    "HypothesesUnmet",
    "KERNEL_BACKEND",
    "MixedPresentationError",
    "PcPresentation",
    "PresentationError",
    "commutator",
    "conjugate",
    "consistency_check",
    "element_order",
    "inverse",
    "multiply",
    "parse_presentation",
    "power",
    "serialize_presentation",
]
