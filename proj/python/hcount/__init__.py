"""Height-ball census and asymptotic-count verification.

Thin wrapper over the C++ core.  Exact rationals cross the boundary as
"p/q" strings; heights returned to Python are floating approximations of
the exact internal values.
"""

from ._hcount import (
    ExtensionContext,
    NumberField,
    SeriesCoefficients,
    Submodule,
    build_field,
    build_series,
    condition_check,
    count_O_k_n_e,
    count_pisot,
    delta_g_upper,
    extension_context,
    heightball,
    main_term_ball,
    main_term_series,
    main_term_region,
    maximal_order,
    mc_volume_Z,
    quadratic_census,
    run_census,
    run_experiment,
    schmidt_bound,
    submodule,
    verify,
    vol_SI,
    vol_Z,
    zeta_principal_part,
)

__all__ = [
    "ExtensionContext",
    "NumberField",
    "SeriesCoefficients",
    "Submodule",
    "build_field",
    "build_series",
    "condition_check",
    "count_O_k_n_e",
    "count_pisot",
    "delta_g_upper",
    "extension_context",
    "heightball",
    "main_term_ball",
    "main_term_series",
    "main_term_region",
    "maximal_order",
    "mc_volume_Z",
    "quadratic_census",
    "run_census",
    "run_experiment",
    "schmidt_bound",
    "submodule",
    "verify",
    "vol_SI",
    "vol_Z",
    "zeta_principal_part",
]
