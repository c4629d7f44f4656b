"""The action of ``A = C^d`` on ``g_n`` by composed adjoint flows."""

import numpy as np

from .errors import DimensionError, GenericityError
from .invariants import flow_generators, grad_invariant
from .linalg import as_matrix, embed_group, mat_exp


def flow_step(gid, t, x):
    """``Ad(exp(-t grad f(x_i))) x``; the level-``i`` cutoff is left fixed."""
    x = as_matrix(x)
    if gid.level >= x.shape[0]:
        raise DimensionError("top-level generators have trivial flows")
    g = grad_invariant(gid, x)
    return mat_exp(-t * g) @ x @ mat_exp(t * g)


def flow_step_gl(level, power, t, x):
    """Closed-form ``gl`` flow: conjugation by ``exp(-t j x_i^{j-1})`` on the level block."""
    x = as_matrix(x)
    n = x.shape[0]
    if level >= n:
        raise DimensionError("top-level generators have trivial flows")
    block = power * np.linalg.matrix_power(x[:level, :level], power - 1)
    g = embed_group(mat_exp(-t * block), n)
    g_inv = embed_group(mat_exp(t * block), n)
    return g @ x @ g_inv


def act(kind, times, x, order=None):
    """Apply ``t = (t_{1,1}, ..., t_{n-1,r_{n-1}})`` by composing single flows.

    `order` lists generator positions in application order (default ascending).
    """
    ids = flow_generators(kind)
    times = np.asarray(times, dtype=complex)
    if times.shape != (len(ids),):
        raise DimensionError(f"expected {len(ids)} flow times, got {times.shape}")
    if order is None:
        order = range(len(ids))
    order = list(order)
    if sorted(order) != list(range(len(ids))):
        raise ValueError("order must be a permutation of the generator positions")
    y = as_matrix(x)
    for k in order:
        if times[k] != 0:
            y = flow_step(ids[k], times[k], y)
    return y


def centralizer_product(kind, coeffs, x):
    """``Ad(g_1) ... Ad(g_{n-1}) x`` with ``g_i = prod_j exp(c_{ij} grad f_{ij}(x_i))``."""
    ids = flow_generators(kind)
    x = as_matrix(x)
    y = x
    for level in range(kind.n - 1, 0, -1):
        g = np.eye(kind.n, dtype=complex)
        g_inv = np.eye(kind.n, dtype=complex)
        for k, gid in enumerate(ids):
            if gid.level == level and coeffs[k] != 0:
                grad = grad_invariant(gid, x)
                g = g @ mat_exp(coeffs[k] * grad)
                g_inv = mat_exp(-coeffs[k] * grad) @ g_inv
        y = g @ y @ g_inv
    return y


def orbit_sample(kind, x, count, seed=0, scale=0.5, check=True):
    """Random points of the ``A``-orbit of a strongly regular `x`.

    The coefficient of each generator has modulus at most `scale` divided by
    the norm of its gradient at `x`, which keeps the conjugating factors well
    conditioned; ``scale=0`` returns copies of `x`.
    """
    from .regularity import is_strongly_regular

    x = as_matrix(x)
    if check and not is_strongly_regular(kind, x):
        raise GenericityError("orbit sampling needs a strongly regular element")
    rng = np.random.default_rng(seed)
    ids = flow_generators(kind)
    m = len(ids)
    norms = np.array([max(1.0, np.linalg.norm(grad_invariant(g, x))) for g in ids])
    out = []
    for _ in range(count):
        radius = scale * np.sqrt(rng.uniform(size=m))
        coeffs = radius * np.exp(2j * np.pi * rng.uniform(size=m)) / norms
        out.append(centralizer_product(kind, coeffs, x))
    return out

