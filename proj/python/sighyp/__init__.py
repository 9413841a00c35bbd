"""Expected signatures of stopped Brownian motion and their hyperbolic development."""

from ._sighyp import (
    Domain,
    PoleError,
    bessel_j,
    bracket_theta_root,
    component_names,
    development,
    h1_closed_form,
    hd1_center_general,
    hd1_closed_form,
    hyperboloid_residual,
    mc_development,
    mc_exit_time,
    mc_expected_signature,
    numerator_ball,
    pde_point_values,
    remainder_bound,
    signature,
    tensor_mul,
    theta,
    verify,
)

__all__ = [
    "Domain",
    "PoleError",
    "bessel_j",
    "bracket_theta_root",
    "component_names",
    "development",
    "h1_closed_form",
    "hd1_center_general",
    "hd1_closed_form",
    "hyperboloid_residual",
    "mc_development",
    "mc_exit_time",
    "mc_expected_signature",
    "numerator_ball",
    "pde_point_values",
    "remainder_bound",
    "signature",
    "tensor_mul",
    "theta",
    "verify",
]
