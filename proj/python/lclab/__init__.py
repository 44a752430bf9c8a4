# SPDX-License-Identifier: Apache-2.0
"""Log-concave measure laboratory: perimeters, level sets and Brunn-Minkowski checks."""

from ._lclab import (
    Body,
    Error,
    Measure,
    __version__,
    bm_check,
    body,
    coarea_integral,
    default_exponent,
    entropy,
    exact_level_set_mass,
    functional_perimeter,
    legendre_1d,
    level_set_contains,
    measure,
    measure_keys,
    moreau,
    mu_perimeter,
    radial_identities,
    sample,
    set_threads,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
