"""Exact computations in the Jacobson-Witt algebra W_n and the special
algebra S_n over small prime fields: brackets, p-th powers, invariants,
adjoint quotients, regularity tests, slices and the verification suites.
"""

from ._core import (  # noqa: F401
    Ambient,
    Automorphism,
    Derivation,
    ElementParseError,
    InternalCheckError,
    MathDomainError,
    MismatchError,
    SnContext,
    TruncPoly,
    act,
    bracket,
    centralizer_dim,
    compose,
    constants_dim,
    delta_eps,
    divergence,
    filtration_degree,
    inspect_json,
    is_nilpotent,
    jordan_chevalley,
    list_suites,
    minimal_p_polynomial,
    omega_element,
    p_power,
    phi_differential,
    phi_vector,
    quotient_s,
    quotient_w,
    random_automorphism,
    regularity,
    run_suite,
    sigma_embed,
    special_generator,
    tangent_decomposition,
    witt_dim,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
