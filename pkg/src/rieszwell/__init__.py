"""Two-route evaluation of the Riesz fractional derivative of the
truncated-cosine square-well state.

The closed route (`closedform`) evaluates incomplete-Gamma expressions
for the kernel integrals K, J, I and the edge value f; the oracle route
(`oracle`) integrates the defining integrals directly.  `analysis`
cross-validates the two and makes the qualitative claims executable
(non-vanishing boundary residual, monotone f, branch-cut ambiguity of
the |q|^alpha replacement).
"""

from .closedform import (EvalResult, FractionalOrder, WellConfig, f_closed,
                         i_closed, j_closed, k_closed, riesz_psi0)
from .errors import (BranchCutError, ConvergenceError, DomainError,
                     PoleError, RieszWellError)
from .oracle import (OscillatoryTailSpec, QuadratureSettings, f_direct,
                     i_direct, k_direct, stable_kernel_g)
from .analysis import (BranchChoice, ConsistencyReport, boundary_residual,
                       branch_ambiguity_demo, consistency_sweep, i_hybrid,
                       monotonicity_scan)
from .specfun import (beta, gamma, upper_incomplete_gamma,
                      upper_incomplete_gamma_oracle)

__version__ = "0.1.0"

__all__ = [
    "BranchChoice", "BranchCutError", "ConsistencyReport",
    "ConvergenceError", "DomainError", "EvalResult", "FractionalOrder",
    "OscillatoryTailSpec", "PoleError", "QuadratureSettings",
    "RieszWellError", "WellConfig", "beta", "boundary_residual",
    "branch_ambiguity_demo", "consistency_sweep", "f_closed", "f_direct",
    "gamma", "i_closed", "i_direct", "i_hybrid", "j_closed", "k_closed",
    "k_direct", "monotonicity_scan", "riesz_psi0", "stable_kernel_g",
    "upper_incomplete_gamma", "upper_incomplete_gamma_oracle",
]
