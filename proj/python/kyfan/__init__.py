"""Variational calculus of the Ky Fan k-norm.

Thin python layer over the compiled `_core` extension: norms and their
duals, the Moreau proximal pair, validation of solution pairs of the
generalized equation 0 in -S + d theta(X), directional derivatives, cone
membership tests, and the sigma-term (Upsilon) computations.
"""

from ._core import (
    __version__,
    analyze,
    cone_member,
    dual_norm,
    norm,
    project_dual_ball,
    prox_pair,
    random_instance,
    sigma_term,
    strict_complementarity,
    theta_dd1,
    theta_dd2,
    vector_norm,
    vector_prox,
    verify,
)

__all__ = [
    "__version__",
    "analyze",
    "cone_member",
    "dual_norm",
    "norm",
    "project_dual_ball",
    "prox_pair",
    "random_instance",
    "sigma_term",
    "strict_complementarity",
    "theta_dd1",
    "theta_dd2",
    "vector_norm",
    "vector_prox",
    "verify",
]
