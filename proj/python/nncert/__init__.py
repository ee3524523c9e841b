"""Python interface to the shear-dependent compressible flow certification library."""

from ._nncert import (
    ConfigError,
    ViscosityLaw,
    YoungFunction,
    certify_exponential_decomposition,
    certify_growth_chain,
    certify_monotonicity_exponent,
    certify_pointwise_conditions,
    check_delta2,
    conjugate_numeric,
    eval_young,
    fit_pairing_exponent,
    h_gap,
    pairing,
    run_convergence_study,
    sbp_residual,
    simulate_config,
)

__all__ = [
    "ConfigError",
    "ViscosityLaw",
    "YoungFunction",
    "certify_exponential_decomposition",
    "certify_growth_chain",
    "certify_monotonicity_exponent",
    "certify_pointwise_conditions",
    "check_delta2",
    "conjugate_numeric",
    "eval_young",
    "fit_pairing_exponent",
    "h_gap",
    "pairing",
    "run_convergence_study",
    "sbp_residual",
    "simulate_config",
]
