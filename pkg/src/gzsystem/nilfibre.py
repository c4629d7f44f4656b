"""Membership in the nilfibre of ``gl(n)`` and a worked nilradical."""

import numpy as np

from .invariants import AlgebraKind
from .linalg import as_matrix
from .moment import coeff_moment

NIL_TOL = 1e-8

# 1-based (row, col) support of the nilradical reached from n^- in gl(4).
NILRADICAL_PATTERN = frozenset({(1, 4), (2, 1), (2, 4), (3, 1), (3, 2), (3, 4)})

# sigma(1) = 4, sigma(2) = 1, sigma(3) = 2, sigma(4) = 3, i.e. the 4-cycle (1432).
NILRADICAL_PERMUTATION = (4, 1, 2, 3)


def in_nilfibre(x, tau=NIL_TOL):
    """True when every cutoff ``x_i`` is nilpotent.

    The coefficient of ``t^{j-1}`` in ``det(t - x_i)`` is homogeneous of degree
    ``i - j + 1``, so it is compared against ``tau * max(1, |x|)^(i - j + 1)``.
    """
    x = as_matrix(x)
    n = x.shape[0]
    coeffs = coeff_moment(AlgebraKind("gl", n), x)
    scale = max(1.0, float(np.linalg.norm(x, 2)))
    pos = 0
    for i in range(1, n + 1):
        for j in range(1, i + 1):
            if abs(coeffs[pos]) > tau * scale ** (i - j + 1):
                return False
            pos += 1
    return True


def permutation_matrix(images):
    """``P`` with ``P e_b = e_{images[b]}`` (1-based images)."""
    n = len(images)
    if sorted(images) != list(range(1, n + 1)):
        raise ValueError("images must be a permutation of 1..n")
    p = np.zeros((n, n))
    for b, a in enumerate(images):
        p[a - 1, b] = 1.0
    return p


def compose(*perms):
    """Right-to-left composition of permutations given by their image tuples."""
    n = len(perms[0])
    out = list(range(1, n + 1))
    for perm in reversed(perms):
        out = [perm[v - 1] for v in out]
    return tuple(out)


def long_element(k, n):
    """Order-reversing permutation of ``1..k`` extended by the identity to ``1..n``."""
    return tuple(list(range(k, 0, -1)) + list(range(k + 1, n + 1)))


def nilradical_matrix(a):
    """Generic element of the nilradical with entries ``a_1..a_6`` in row order."""
    m = np.zeros((4, 4), dtype=complex)
    for (row, col), v in zip(sorted(NILRADICAL_PATTERN), a):
        m[row - 1, col - 1] = v
    return m


def strictly_lower_support(n):
    return frozenset((a, b) for a in range(1, n + 1) for b in range(1, a))


def conjugated_support(images, support):
    """Support of ``P E_ab P^{-1}`` for every ``(a, b)`` in `support`, by matrix products."""
    p = permutation_matrix(images)
    n = p.shape[0]
    out = set()
    for a, b in support:
        e = np.zeros((n, n))
        e[a - 1, b - 1] = 1.0
        img = p @ e @ p.T
        rows, cols = np.nonzero(img)
        out |= {(r + 1, c + 1) for r, c in zip(rows, cols)}
    return frozenset(out)


def check_nilradical_example(perm=None):
    """Whether `perm` conjugates the strictly lower triangle of ``gl(4)`` onto the pattern."""
    if perm is None:
        perm = NILRADICAL_PERMUTATION
    return conjugated_support(perm, strictly_lower_support(4)) == NILRADICAL_PATTERN
