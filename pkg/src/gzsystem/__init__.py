"""Gelfand-Tsetlin integrable systems on gl(n) and so(n)."""

from .errors import (
    ConvergenceError,
    DimensionError,
    GenericityError,
    GZError,
    OffFiberError,
    SkewnessError,
)
from .fibers import gamma, gamma_inverse, torus_act
from .flows import act, flow_step, orbit_sample
from .invariants import AlgebraKind, InvariantId, eval_invariant, generators, grad_invariant, invariant_id
from .linalg import char_poly, cutoff, eigenvalues, embed, mat_exp, numerical_rank, pfaffian
from .moment import FiberTarget, coeff_moment, element_in_omega, fiber_residual, in_omega, moment_map
from .nilfibre import check_nilradical_example, in_nilfibre
from .poisson import gz_distribution, ham_field, poisson_bracket
from .regularity import centralizer_basis, is_regular, is_strongly_regular, sreg_via_centralizers
from .solvar_gl import TorusPoint, gamma_gl, gamma_gl_inverse, torus_act_gl
from .solvar_so import SoTorusPoint, block_diagonalize, gamma_so, psi_inverse, torus_act_so

__all__ = [
    "AlgebraKind", "ConvergenceError", "DimensionError", "FiberTarget", "GZError",
    "GenericityError", "InvariantId", "OffFiberError", "SkewnessError", "SoTorusPoint",
    "TorusPoint", "act", "block_diagonalize", "centralizer_basis", "char_poly",
    "check_nilradical_example", "coeff_moment", "cutoff", "eigenvalues", "element_in_omega",
    "embed", "eval_invariant", "fiber_residual", "flow_step", "gamma", "gamma_gl",
    "gamma_gl_inverse", "gamma_inverse", "gamma_so", "generators", "grad_invariant",
    "gz_distribution", "ham_field", "in_nilfibre", "in_omega", "invariant_id", "is_regular",
    "is_strongly_regular", "mat_exp", "moment_map", "numerical_rank", "orbit_sample",
    "pfaffian", "poisson_bracket", "psi_inverse", "sreg_via_centralizers", "torus_act",
    "torus_act_gl", "torus_act_so",
]
