"""Regularity and strong regularity, in gradient and centralizer form."""

from dataclasses import dataclass, field

import numpy as np

from .errors import GenericityError
from .invariants import all_gradients, generators, invariant_id
from .linalg import as_matrix, commutator, embed, rank_report
from .poisson import gz_distribution

LOW_CONFIDENCE_MARGIN = 10.0


def _unit(vectors):
    out = []
    for v in vectors:
        norm = np.linalg.norm(v)
        out.append(v / norm if norm > 0 else v)
    return out


def _rank(vectors, tau=None):
    if not vectors:
        return 0, 0.0, np.inf
    return rank_report(_unit(vectors), tau)


def level_gradients(kind, xi):
    """``grad f_{i,j}(x_i)`` for ``j = 1..r_i`` as ``i x i`` matrices."""
    i = xi.shape[0]
    sub = kind.at(i)
    return [all_gradients(sub, xi, [invariant_id(sub, i, j)])[0] for j in range(1, sub.rank(i) + 1)]


def is_regular(kind, xi, tau=None):
    """Whether the level gradients of `xi` are linearly independent."""
    xi = as_matrix(xi)
    grads = level_gradients(kind, xi)
    return _rank(grads, tau)[0] == len(grads)


def is_strongly_regular(kind, x, tau=None):
    """Whether all ``d + r_n`` gradients are linearly independent at `x`."""
    x = as_matrix(x)
    grads = all_gradients(kind, x)
    return _rank(grads, tau)[0] == len(grads)


def _algebra_basis(family, i):
    if family == "gl":
        basis = []
        for j in range(i):
            for k in range(i):
                e = np.zeros((i, i), dtype=complex)
                e[j, k] = 1.0
                basis.append(e)
        return basis
    basis = []
    for j in range(i):
        for k in range(j + 1, i):
            e = np.zeros((i, i), dtype=complex)
            e[j, k] = 1.0
            e[k, j] = -1.0
            basis.append(e)
    return basis


def _coords(family, m):
    if family == "gl":
        return m.ravel()
    return m[np.triu_indices(m.shape[0], 1)]


def centralizer_dimension(kind, xi, tau=None):
    """Dimension of the kernel of ``ad(x_i)`` on ``g_i``."""
    xi = as_matrix(xi)
    basis = _algebra_basis(kind.family, xi.shape[0])
    if not basis:
        return 0
    images = [_coords(kind.family, commutator(xi, b)) for b in basis]
    scale = max(1.0, np.linalg.norm(xi))
    if tau is None:
        tau = len(basis) * 1e-10 * scale
    rank = rank_report(images, tau)[0] if np.any(images) else 0
    return len(basis) - rank


def centralizer_basis(kind, xi, tau=None):
    """Basis ``{grad f_{i,j}(x_i)}`` of the centralizer of a regular `xi`."""
    xi = as_matrix(xi)
    if not is_regular(kind, xi, tau):
        raise GenericityError("centralizer basis needs a regular element")
    return level_gradients(kind, xi)


@dataclass
class SregReport:
    strongly_regular: bool
    via_centralizers: bool
    gradient_rank: int
    expected_rank: int
    distribution_rank: int
    d: int
    regular_levels: list = field(default_factory=list)
    disjoint_levels: list = field(default_factory=list)
    low_confidence: bool = False


def _centralizer_conditions(kind, x, tau=None):
    regular = []
    disjoint = []
    margins = []
    for i in range(1, kind.n + 1):
        xi = x[:i, :i]
        regular.append(centralizer_dimension(kind, xi) == kind.rank(i))
    for i in range(1, kind.n):
        ri, rj = kind.rank(i), kind.rank(i + 1)
        if not (regular[i - 1] and regular[i]) or ri == 0:
            disjoint.append(regular[i - 1] and regular[i])
            continue
        lower = [embed(g, i + 1) for g in level_gradients(kind, x[:i, :i])]
        upper = level_gradients(kind, x[: i + 1, : i + 1])
        rank, _, margin = _rank(lower + upper, tau)
        margins.append(margin)
        disjoint.append(rank == ri + rj)
    return regular, disjoint, margins


def sreg_via_centralizers(kind, x, tau=None):
    """Every cutoff regular and adjacent centralizers meet only in zero."""
    x = as_matrix(x)
    regular, disjoint, _ = _centralizer_conditions(kind, x, tau)
    return all(regular) and all(disjoint)


def sreg_report(kind, x, tau=None):
    x = as_matrix(x)
    grads = all_gradients(kind, x)
    rank, _, margin = _rank(grads, tau)
    regular, disjoint, margins = _centralizer_conditions(kind, x, tau)
    vx = gz_distribution(kind, x)
    dist_rank, _, dist_margin = _rank(vx, tau) if vx else (0, 0.0, np.inf)
    low = min([margin, dist_margin] + margins) < LOW_CONFIDENCE_MARGIN
    return SregReport(
        strongly_regular=rank == len(grads),
        via_centralizers=all(regular) and all(disjoint),
        gradient_rank=rank,
        expected_rank=len(generators(kind)),
        distribution_rank=dist_rank,
        d=kind.d,
        regular_levels=regular,
        disjoint_levels=disjoint,
        low_confidence=bool(low),
    )


def distribution_rank(kind, x, tau=None):
    vx = gz_distribution(kind, as_matrix(x))
    return _rank(vx, tau)[0] if vx else 0
