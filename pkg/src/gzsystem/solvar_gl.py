"""Generic ``gl`` fibers: solution matrices, the parametrization and its inverse."""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DimensionError, GenericityError, OffFiberError
from .invariants import GL
from .linalg import as_matrix, embed_group, lex_sort
from .moment import OMEGA_TOL, fiber_residual, require_omega

RESIDUAL_TOL = 1e-8
BLOCK_TOL = 1e-6


@dataclass(frozen=True)
class TorusPoint:
    """Element of ``(C^x)^d`` grouped by level: ``coords[i-1]`` has ``i`` entries."""

    coords: tuple

    def __post_init__(self):
        for i, level in enumerate(self.coords, start=1):
            if len(level) != i:
                raise DimensionError(f"torus level {i} needs {i} coordinates")
            if any(v == 0 for v in level):
                raise GenericityError("torus coordinates must be nonzero")

    @classmethod
    def from_lists(cls, levels):
        return cls(tuple(tuple(complex(v) for v in lev) for lev in levels))

    @classmethod
    def identity(cls, n):
        return cls.from_lists([[1.0] * i for i in range(1, n)])

    @classmethod
    def random(cls, n, rng, spread=0.5):
        """Coordinates ``exp(u)`` with ``|Re u|, |Im u| <= spread``."""
        levels = []
        for i in range(1, n):
            u = rng.uniform(-spread, spread, i) + 1j * rng.uniform(-spread, spread, i)
            levels.append(np.exp(u))
        return cls.from_lists(levels)

    @property
    def n(self):
        return len(self.coords) + 1

    def level(self, i):
        return np.array(self.coords[i - 1], dtype=complex)

    def flat(self):
        return np.concatenate([self.level(i) for i in range(1, self.n)]) if self.coords else np.zeros(0)

    def __mul__(self, other):
        if self.n != other.n:
            raise DimensionError("torus points of different sizes")
        return TorusPoint.from_lists(
            [self.level(i) * other.level(i) for i in range(1, self.n)]
        )

    def inverse(self):
        return TorusPoint.from_lists([1.0 / self.level(i) for i in range(1, self.n)])

    def distance(self, other):
        return float(np.max(np.abs(self.flat() - other.flat()), initial=0.0))


def zeta_values(mu, lam):
    """The constants ``zeta_j`` forcing ``det(t - M) = prod(t - lam_k)``.

    Evaluating both characteristic polynomials at ``t = mu_j`` leaves
    ``zeta_j = prod_k (mu_j - lam_k) / prod_{k != j} (mu_j - mu_k)``.
    """
    mu = np.asarray(mu, dtype=complex)
    lam = np.asarray(lam, dtype=complex)
    if len(lam) != len(mu) + 1:
        raise DimensionError("need one more target eigenvalue than cutoff eigenvalues")
    out = []
    for j, m in enumerate(mu):
        num = np.prod(m - lam)
        den = np.prod(np.delete(m - mu, j))
        if den == 0 or num == 0:
            raise GenericityError("cutoff and target spectra must be regular and disjoint")
        out.append(num / den)
    return np.array(out, dtype=complex)


@dataclass(frozen=True)
class GlSolutionPoint:
    """Matrix with ``diag(mu)`` on top, last row `z` and last column ``-zeta / z``."""

    mu: tuple
    lam: tuple
    z: tuple

    def __post_init__(self):
        if len(self.z) != len(self.mu):
            raise DimensionError("need one coordinate per cutoff eigenvalue")
        if any(v == 0 for v in self.z):
            raise GenericityError("solution coordinates must be nonzero")

    @property
    def level(self):
        return len(self.mu)

    @cached_property
    def zeta(self):
        return zeta_values(self.mu, self.lam)

    @property
    def w(self):
        return complex(np.sum(self.lam) - np.sum(self.mu))

    @property
    def column(self):
        return -self.zeta / np.asarray(self.z, dtype=complex)

    def matrix(self):
        i = self.level
        m = np.zeros((i + 1, i + 1), dtype=complex)
        m[np.arange(i), np.arange(i)] = self.mu
        m[:i, i] = self.column
        m[i, :i] = self.z
        m[i, i] = self.w
        return m


def build_gl_point(i, mu, lam, z):
    """Size ``i + 1`` solution matrix for cutoff spectrum `mu` and target `lam`."""
    if len(mu) != i:
        raise DimensionError(f"level {i} needs {i} cutoff eigenvalues")
    p = GlSolutionPoint(tuple(complex(v) for v in mu), tuple(complex(v) for v in lam), tuple(complex(v) for v in z))
    return p.matrix()


def gl_eigenvectors(p):
    """Columns ``v(lam_k)`` with ``v_j = y_j / (lam_k - mu_j)`` and last entry 1."""
    mu = np.asarray(p.mu, dtype=complex)
    y = p.column
    lam = lex_sort(p.lam)
    i = p.level
    v = np.ones((i + 1, i + 1), dtype=complex)
    for k, lk in enumerate(lam):
        diff = lk - mu
        if np.any(diff == 0):
            raise GenericityError("target eigenvalue coincides with a cutoff eigenvalue")
        v[:i, k] = y / diff
    return v


def gl_diagonalizer(p):
    """``gamma`` with ``gamma M gamma^{-1} = diag(lam)`` (lexicographic order)."""
    v = gl_eigenvectors(p)
    try:
        return np.linalg.inv(v)
    except np.linalg.LinAlgError as exc:
        raise GenericityError("eigenvector matrix is singular") from exc


def _check_target(c):
    if c.kind.family != GL:
        raise ValueError("expected a gl target")
    require_omega(c)


def _solution(c, i, z_level):
    return GlSolutionPoint(c.level(i).values, c.level(i + 1).values, tuple(complex(v) for v in z_level))


def gamma_gl(c, z):
    """The point of ``gl(n)_c`` with torus coordinates `z`."""
    _check_target(c)
    n = c.kind.n
    if z.n != n:
        raise DimensionError(f"torus point for n={z.n}, target for n={n}")
    if n == 1:
        return np.diag(np.array(c.level(1).values, dtype=complex))
    x = _solution(c, n - 1, z.level(n - 1)).matrix()
    for i in range(n - 2, 0, -1):
        p = _solution(c, i, z.level(i))
        v = gl_eigenvectors(p)
        g_inv = embed_group(v, n)
        g = embed_group(np.linalg.inv(v), n)
        x = g_inv @ x @ g
    return x


def gamma_gl_inverse(x, c, tol=RESIDUAL_TOL):
    """Torus coordinates of a point of ``gl(n)_c``, read off level by level."""
    _check_target(c)
    x = as_matrix(x)
    n = c.kind.n
    if x.shape[0] != n:
        raise DimensionError(f"matrix size {x.shape[0]} does not match n={n}")
    res = fiber_residual(x, c)
    if res > tol:
        raise OffFiberError(f"point is off the fiber (residual {res:.3e})", residual=res)
    y = x.copy()
    coords = []
    scale = max(1.0, np.linalg.norm(x))
    for i in range(1, n):
        z_level = y[i, :i].copy()
        if np.any(np.abs(z_level) <= OMEGA_TOL * scale):
            raise GenericityError(f"vanishing coordinate at level {i}")
        p = _solution(c, i, z_level)
        expected = p.matrix()
        dev = np.max(np.abs(y[: i + 1, : i + 1] - expected)) / max(1.0, np.max(np.abs(expected)))
        if dev > BLOCK_TOL:
            raise OffFiberError(f"level {i} block deviates from its solution matrix ({dev:.3e})", residual=dev)
        coords.append(z_level)
        if i < n - 1:
            v = gl_eigenvectors(p)
            y = embed_group(np.linalg.inv(v), n) @ y @ embed_group(v, n)
    return TorusPoint.from_lists(coords)


def torus_act_gl(zp, x, c, tol=RESIDUAL_TOL):
    """``z' . x = Gamma(z' z)`` where ``z`` are the coordinates of `x`."""
    return gamma_gl(c, zp * gamma_gl_inverse(x, c, tol))
