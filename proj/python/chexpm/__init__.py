"""Matrix exponentials as Cayley-Hamilton polynomials.

exp(itM) for an N x N complex matrix is an order-(N-1) matrix polynomial whose
coefficients combine elementary symmetric trace invariants with derivatives of
the spectral response function. This package wraps the C++ core: the polynomial
exponential and its scaling-and-squaring oracle, invariant calculus, explicit
SU(2..5) group-element forms, embedded spin-j generators, and the simplex
projection that parameterizes traceless real spectra by a radius and N-2
angles.
"""

from ._chexpm import (
    InvalidInputError,
    UnsupportedOrderError,
    InconsistentInvariantsError,
    NumericalError,
    DegenerateSpectrumError,
    PoleProximityError,
    trace_powers,
    determinant,
    eig_hermitian,
    char_roots_general,
    sym_from_traces,
    sym_from_spectrum,
    explicit_low_invariants,
    charpoly_coeffs,
    response_derivs,
    spin_response,
    response_contour_oracle,
    expm_ch,
    expm_oracle,
    su_explicit,
    resolvent_poly,
    simplex_vertices,
    project_spectrum,
    angles_to_spectrum,
    spectrum_to_angles,
    invariants_from_angles,
    su3_angle_from_invariants,
    su4_angles_from_invariants,
    spin_generator,
    character,
    spin_trace_moments,
    random_traceless_hermitian,
    run_bench,
)

__all__ = [
    "InvalidInputError",
    "UnsupportedOrderError",
    "InconsistentInvariantsError",
    "NumericalError",
    "DegenerateSpectrumError",
    "PoleProximityError",
    "trace_powers",
    "determinant",
    "eig_hermitian",
    "char_roots_general",
    "sym_from_traces",
    "sym_from_spectrum",
    "explicit_low_invariants",
    "charpoly_coeffs",
    "response_derivs",
    "spin_response",
    "response_contour_oracle",
    "expm_ch",
    "expm_oracle",
    "su_explicit",
    "resolvent_poly",
    "simplex_vertices",
    "project_spectrum",
    "angles_to_spectrum",
    "spectrum_to_angles",
    "invariants_from_angles",
    "su3_angle_from_invariants",
    "su4_angles_from_invariants",
    "spin_generator",
    "character",
    "spin_trace_moments",
    "random_traceless_hermitian",
    "run_bench",
]

__version__ = "0.1.0"
