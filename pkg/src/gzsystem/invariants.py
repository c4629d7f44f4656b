"""The fixed generator family ``f_{i,j}`` and their trace-form gradients."""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DimensionError, SkewnessError
from .linalg import as_matrix, embed, is_skew, pfaffian, pfaffian_cofactors

GL = "gl"
SO = "so"


@dataclass(frozen=True)
class AlgebraKind:
    """``gl(n)`` or ``so(n)`` together with its level ranks."""

    family: str
    n: int

    def __post_init__(self):
        if self.family not in (GL, SO):
            raise ValueError(f"unknown algebra family {self.family!r}")
        if self.n < 1:
            raise DimensionError("n must be positive")

    @property
    def orthogonal(self):
        return self.family == SO

    def rank(self, i):
        return i if self.family == GL else i // 2

    @cached_property
    def ranks(self):
        return tuple(self.rank(i) for i in range(1, self.n + 1))

    @property
    def d(self):
        return sum(self.ranks[:-1])

    def at(self, n):
        return AlgebraKind(self.family, n)

    def __str__(self):
        return f"{self.family}({self.n})"


@dataclass(frozen=True)
class InvariantId:
    """Generator ``f_{level,index}``; ``exponent is None`` marks the Pfaffian."""

    level: int
    index: int
    exponent: int | None

    @property
    def is_pfaffian(self):
        return self.exponent is None

    @property
    def degree(self):
        return self.level // 2 if self.is_pfaffian else self.exponent

    @property
    def flavor(self):
        return "pfaffian" if self.is_pfaffian else f"trace-power({self.exponent})"


def invariant_id(kind, level, index):
    if not 1 <= level <= kind.n or not 1 <= index <= kind.rank(level):
        raise DimensionError(f"no generator f_{{{level},{index}}} in {kind}")
    if kind.family == GL:
        return InvariantId(level, index, index)
    if level % 2 == 0 and index == level // 2:
        return InvariantId(level, index, None)
    return InvariantId(level, index, 2 * index)


def generators(kind):
    """All generator ids in level-major order (length ``d + r_n``)."""
    return [
        invariant_id(kind, i, j)
        for i in range(1, kind.n + 1)
        for j in range(1, kind.rank(i) + 1)
    ]


def flow_generators(kind):
    """Generators below the top level; these carry the group ``A``."""
    return [g for g in generators(kind) if g.level < kind.n]


def _level_block(gid, x):
    x = as_matrix(x)
    if gid.level > x.shape[0]:
        raise DimensionError(f"level {gid.level} exceeds matrix size {x.shape[0]}")
    return x[: gid.level, : gid.level]


def eval_invariant(gid, x):
    """``f_{i,j}(x) = f_{i,j}(x_i)``."""
    xi = _level_block(gid, x)
    if gid.is_pfaffian:
        if not is_skew(xi):
            raise SkewnessError("Pfaffian generator needs a skew cutoff")
        return pfaffian(xi)
    return complex(np.trace(np.linalg.matrix_power(xi, gid.exponent)))


def grad_invariant(gid, x):
    """Trace-form gradient of ``f_{i,j}`` at `x`, embedded at the size of `x`.

    ``tr(grad f . z)`` equals the derivative of ``f`` along ``z``.  For
    the Pfaffian the gradient is ``-1/2`` times the sub-Pfaffian cofactor
    matrix, which equals ``Pf(x_i) x_i^{-1} / 2`` when the cutoff is invertible.
    """
    xi = _level_block(gid, x)
    n = np.asarray(x).shape[0]
    if gid.is_pfaffian:
        if not is_skew(xi):
            raise SkewnessError("Pfaffian generator needs a skew cutoff")
        g = -0.5 * pfaffian_cofactors(xi)
    else:
        e = gid.exponent
        g = e * np.linalg.matrix_power(xi, e - 1)
    return embed(g, n)


def all_gradients(kind, x, ids=None):
    if ids is None:
        ids = generators(kind)
    return [grad_invariant(g, x) for g in ids]


def moment_values(kind, x):
    return np.array([eval_invariant(g, x) for g in generators(kind)], dtype=complex)
