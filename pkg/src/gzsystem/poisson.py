"""Lie-Poisson bracket, Hamiltonian fields and the distribution ``V_x``."""

from dataclasses import dataclass

import numpy as np

from .invariants import InvariantId, flow_generators, grad_invariant
from .linalg import as_matrix, commutator


@dataclass(frozen=True)
class LinearFunctional:
    """``x -> tr(gradient @ x)``; a non-invariant test function."""

    gradient: np.ndarray

    @classmethod
    def entry(cls, n, row, col):
        """Functional returning the ``(row, col)`` entry (0-based) of an ``n x n`` matrix."""
        g = np.zeros((n, n), dtype=complex)
        g[col, row] = 1.0
        return cls(g)

    def __call__(self, x):
        return complex(np.trace(self.gradient @ x))

    @property
    def degree(self):
        return 1


def gradient(f, x):
    if isinstance(f, InvariantId):
        return grad_invariant(f, x)
    if isinstance(f, LinearFunctional):
        return np.asarray(f.gradient, dtype=complex)
    raise TypeError(f"unsupported function {f!r}")


def trace_form(a, b):
    return complex(np.sum(a * b.T))


def poisson_bracket(f, g, x):
    """``{f, g}(x) = tr(x [grad f, grad g])``."""
    x = as_matrix(x)
    return trace_form(x, commutator(gradient(f, x), gradient(g, x)))


def ham_field(f, x):
    """Matrix ``[x, grad f(x)]`` of the Hamiltonian vector field at `x`."""
    x = as_matrix(x)
    return commutator(x, gradient(f, x))


def gz_distribution(kind, x):
    """Spanning vectors ``[x, grad f_{i,j}]`` of ``V_x`` for all levels below ``n``."""
    x = as_matrix(x)
    return [ham_field(g, x) for g in flow_generators(kind)]


def kks_pairing(x, a, b):
    """Symplectic pairing of the orbit tangents ``[x, a]`` and ``[x, b]``.

    Computed as ``tr(a [x, b])``, which equals ``tr(x [a, b])`` by invariance.
    """
    return trace_form(a, commutator(x, b))
