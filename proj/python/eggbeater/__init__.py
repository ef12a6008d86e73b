"""Fixed points, Conley-Zehnder indices, actions and Hofer bounds of linked twist maps."""

from ._eggbeater import (
    EggbeaterError,
    FixedPoint,
    IndexValue,
    Profile,
    census,
    default_delta,
    gap_sweep,
    growth_count,
    inverse_word,
    is_symplectic,
    power_word,
    reduce_word,
    signature,
    smallest_prime_factor,
    solve_root,
    standard_J,
    to_even_form,
)

__version__ = "0.1.0"

__all__ = [
    "EggbeaterError",
    "FixedPoint",
    "IndexValue",
    "Profile",
    "census",
    "default_delta",
    "gap_sweep",
    "growth_count",
    "inverse_word",
    "is_symplectic",
    "power_word",
    "reduce_word",
    "signature",
    "smallest_prime_factor",
    "solve_root",
    "standard_J",
    "to_even_form",
]
