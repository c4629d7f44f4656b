"""Generic ``so`` fibers: types B and D solution varieties and the ``SO(2)^d`` action.

A rotation is stored as ``(c, s)`` with ``c^2 + s^2 = 1`` and acts on a
coordinate block as ``[[c, s], [-s, c]]``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, GenericityError, OffFiberError
from .invariants import SO
from .linalg import as_matrix, embed_group, pfaffian
from .moment import block_form, fiber_residual, level_target_of, require_omega

RESIDUAL_TOL = 1e-8
BLOCK_TOL = 1e-6
QUADRIC_TOL = 1e-10


def rotation(c, s):
    return np.array([[c, s], [-s, c]], dtype=complex)


@dataclass(frozen=True)
class SoTorusPoint:
    """Element of ``SO(2)^d``: ``coords[i]`` holds ``r_i`` pairs for levels ``2..n-1``."""

    n: int
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != max(self.n - 2, 0):
            raise DimensionError(f"expected {max(self.n - 2, 0)} torus levels")
        for i, level in enumerate(self.coords, start=2):
            if len(level) != i // 2:
                raise DimensionError(f"torus level {i} needs {i // 2} rotations")
            for c, s in level:
                if abs(c * c + s * s - 1) > QUADRIC_TOL * max(1.0, abs(c) ** 2 + abs(s) ** 2):
                    raise GenericityError("rotation coordinates must satisfy c^2 + s^2 = 1")

    @classmethod
    def from_lists(cls, n, levels):
        return cls(n, tuple(tuple((complex(c), complex(s)) for c, s in lev) for lev in levels))

    @classmethod
    def from_angles(cls, n, angles):
        """Rotations ``(cos t, sin t)``; `angles` lists one array per level ``2..n-1``."""
        return cls.from_lists(n, [[(np.cos(t), np.sin(t)) for t in lev] for lev in angles])

    @classmethod
    def identity(cls, n):
        return cls.from_angles(n, [[0.0] * (i // 2) for i in range(2, n)])

    @classmethod
    def random(cls, n, rng, imag_spread=0.5):
        angles = []
        for i in range(2, n):
            m = i // 2
            angles.append(rng.uniform(-np.pi, np.pi, m) + 1j * rng.uniform(-imag_spread, imag_spread, m))
        return cls.from_angles(n, angles)

    def level(self, i):
        return self.coords[i - 2]

    def group_element(self, i):
        """Block-diagonal rotation in ``SO(i)`` (trailing 1 when `i` is odd)."""
        g = np.eye(i, dtype=complex)
        for j, (c, s) in enumerate(self.level(i)):
            g[2 * j : 2 * j + 2, 2 * j : 2 * j + 2] = rotation(c, s)
        return g

    def flat(self):
        vals = [v for lev in self.coords for pair in lev for v in pair]
        return np.array(vals, dtype=complex)

    def __mul__(self, other):
        if self.n != other.n:
            raise DimensionError("torus points of different sizes")
        levels = []
        for a, b in zip(self.coords, other.coords):
            levels.append([(c1 * c2 - s1 * s2, c1 * s2 + s1 * c2) for (c1, s1), (c2, s2) in zip(a, b)])
        return SoTorusPoint.from_lists(self.n, levels)

    def inverse(self):
        return SoTorusPoint.from_lists(self.n, [[(c, -s) for c, s in lev] for lev in self.coords])

    def distance(self, other):
        return float(np.max(np.abs(self.flat() - other.flat()), initial=0.0))


@dataclass(frozen=True)
class SoSolutionData:
    """Constants of the level ``i -> i + 1`` solution variety.

    `a` are the signed block parameters of the cutoff ``h``; `d` the quadric
    constants ``z_{j1}^2 + z_{j2}^2 = d_j``; `z_last` the extra coordinate of
    an odd-to-even step (None otherwise).
    """

    level: int
    a: tuple
    b: tuple
    d: tuple
    z_last: complex | None

    @property
    def odd(self):
        return self.level % 2 == 1

    @property
    def base_column(self):
        return np.sqrt(np.array(self.d, dtype=complex))


def quadric_constants(a, b):
    """``d_j`` forcing the target characteristic polynomial.

    With ``len(b) == len(a)`` (even cutoff) this is the odd-target formula;
    with ``len(b) == len(a) + 1`` (odd cutoff) the extra ``-a_j^2`` factor
    enters the denominator.
    """
    a2 = np.asarray(a, dtype=complex) ** 2
    b2 = np.asarray(b, dtype=complex) ** 2
    if len(b2) not in (len(a2), len(a2) + 1):
        raise DimensionError("target rank must equal or exceed the cutoff rank by one")
    out = []
    for j, aj in enumerate(a2):
        num = np.prod(b2 - aj)
        den = np.prod(np.delete(a2, j) - aj)
        if len(b2) == len(a2) + 1:
            den = -aj * den
        if den == 0:
            raise GenericityError("cutoff block parameters must be nonzero and pairwise distinct up to sign")
        if num == 0:
            raise GenericityError("cutoff and target share an eigenvalue")
        out.append(num / den)
    return tuple(out)


def so_solution_data(level, lower, upper):
    """Solution constants for cutoff target `lower` and target `upper`.

    `lower` and `upper` are level targets in canonical form; for an
    odd-to-even step the sign of ``z_last`` is fixed by one Pfaffian
    evaluation of the built point so that ``Pf = upper.pfaffian_sign * prod(b)``.
    """
    a = tuple(lower.signed_params())
    b = tuple(upper.values)
    d = quadric_constants(a, b)
    if level % 2 == 0:
        return SoSolutionData(level, a, b, d, None)
    prod_a2 = np.prod(np.asarray(a, dtype=complex) ** 2)
    if prod_a2 == 0:
        raise GenericityError("cutoff block parameters must be nonzero")
    z = np.sqrt(np.prod(np.asarray(b, dtype=complex) ** 2) / prod_a2)
    data = SoSolutionData(level, a, b, d, complex(z))
    target_pf = upper.pfaffian_sign * np.prod(np.asarray(b, dtype=complex))
    pf = pfaffian(build_so_point(data, None))
    if abs(pf + target_pf) < abs(pf - target_pf):
        data = SoSolutionData(level, a, b, d, complex(-z))
    return data


def build_so_point(data, rotations=None):
    """Size ``level + 1`` skew matrix with cutoff ``h`` and rotated column.

    `rotations` is a sequence of ``(c, s)`` pairs (identity when None); block
    ``j`` of the column is ``sqrt(d_j) * (c_j, -s_j)``.
    """
    i = data.level
    m = np.zeros((i + 1, i + 1), dtype=complex)
    m[:i, :i] = block_form(data.a, odd=data.odd)
    if rotations is None:
        rotations = [(1.0, 0.0)] * len(data.a)
    if len(rotations) != len(data.a):
        raise DimensionError(f"level {i} needs {len(data.a)} rotations")
    col = np.zeros(i, dtype=complex)
    for j, ((c, s), r) in enumerate(zip(rotations, data.base_column)):
        col[2 * j] = r * c
        col[2 * j + 1] = -r * s
    if data.odd:
        col[i - 1] = data.z_last
    m[:i, i] = col
    m[i, :i] = -col
    return m


def dpoly_coefficients(a, pairs, z_last):
    """``det(t - X)`` of an odd-to-even solution matrix from its entries (ascending)."""
    a2 = np.asarray(a, dtype=complex) ** 2
    sums = [complex(z1 * z1 + z2 * z2) for z1, z2 in pairs]
    t2 = np.array([0, 0, 1], dtype=complex)
    base = np.array([1], dtype=complex)
    for v in a2:
        base = np.convolve(base, np.array([v, 0, 1], dtype=complex))
    out = np.convolve(t2, base) + np.pad(z_last * z_last * base, (0, 2))
    for j, sj in enumerate(sums):
        rest = np.array([1], dtype=complex)
        for k, v in enumerate(a2):
            if k != j:
                rest = np.convolve(rest, np.array([v, 0, 1], dtype=complex))
        out = out + np.pad(sj * np.convolve(t2, rest), (0, len(out) - len(rest) - 2))
    return out


def bpoly_coefficients(a, pairs):
    """``det(t - Y)`` of an even-to-odd solution matrix from its entries (ascending)."""
    a2 = np.asarray(a, dtype=complex) ** 2
    sums = [complex(z1 * z1 + z2 * z2) for z1, z2 in pairs]
    inner = np.array([1], dtype=complex)
    for v in a2:
        inner = np.convolve(inner, np.array([v, 0, 1], dtype=complex))
    for j, sj in enumerate(sums):
        rest = np.array([1], dtype=complex)
        for k, v in enumerate(a2):
            if k != j:
                rest = np.convolve(rest, np.array([v, 0, 1], dtype=complex))
        inner = inner + np.pad(sj * rest, (0, len(inner) - len(rest)))
    return np.convolve(np.array([0, 1], dtype=complex), inner)


def _null_vector(m):
    _, _, vh = np.linalg.svd(m)
    return vh[-1].conj()


def block_diagonalize(x, params=None):
    """Special orthogonal ``q`` with ``q x q^T`` in canonical block form.

    `params` are the signed block parameters of the wanted form; by default
    the canonical ones of `x`.  The eigenvectors ``v+-`` for ``+-i a`` give the
    real-form columns ``(v+ + v-)`` and ``-i (v+ - v-)`` once both are scaled by
    the same factor so that ``v+ . v- = 1/2``; the equal split keeps ``q`` small.
    """
    x = as_matrix(x)
    size = x.shape[0]
    if params is None:
        params = level_target_of(SO, x).signed_params()
    params = [complex(a) for a in params]
    if len(params) != size // 2:
        raise DimensionError(f"size {size} needs {size // 2} block parameters")
    eye = np.eye(size, dtype=complex)
    cols = np.zeros((size, size), dtype=complex)
    for j, a in enumerate(params):
        vp = _null_vector(x - 1j * a * eye)
        vm = _null_vector(x + 1j * a * eye)
        pair = vp @ vm
        if abs(pair) < QUADRIC_TOL:
            raise GenericityError("eigenvectors for +-ia pair degenerately")
        scale = np.sqrt(2 * pair)
        vp, vm = vp / scale, vm / scale
        cols[:, 2 * j] = vp + vm
        cols[:, 2 * j + 1] = -1j * (vp - vm)
    if size % 2:
        v0 = _null_vector(x)
        norm = v0 @ v0
        if abs(norm) < QUADRIC_TOL:
            raise GenericityError("kernel vector is isotropic")
        cols[:, -1] = v0 / np.sqrt(norm)
        if np.linalg.det(cols).real < 0:
            cols[:, -1] = -cols[:, -1]
    return cols.T


def _check_target(c):
    if c.kind.family != SO:
        raise ValueError("expected an so target")
    require_omega(c)


class SoFiberChart:
    """Solution data and base conjugators for every step of a target ``c``."""

    def __init__(self, c):
        _check_target(c)
        self.target = c
        self.n = c.kind.n
        self.data = {}
        self.conjugators = {}
        for i in range(2, self.n):
            data = so_solution_data(i, c.level(i), c.level(i + 1))
            self.data[i] = data
            self.conjugators[i] = block_diagonalize(
                build_so_point(data), c.level(i + 1).signed_params()
            )

    def point(self, i, rotations=None):
        return build_so_point(self.data[i], rotations)

    def g(self, i, rotations):
        """``g_{i,i+1}(z) = p z^{-1}`` in ``SO(i + 1)``."""
        z = _rotation_block(i, rotations)
        return self.conjugators[i] @ embed_group(z, i + 1).T

    def gamma(self, z):
        if z.n != self.n:
            raise DimensionError(f"torus point for n={z.n}, target for n={self.n}")
        n = self.n
        if n < 3:
            return self.target.canonical_cartan(n)
        x = self.point(n - 1, z.level(n - 1))
        for i in range(n - 2, 1, -1):
            g = embed_group(self.g(i, z.level(i)), n)
            x = g.T @ x @ g
        return x

    def inverse(self, x, tol=RESIDUAL_TOL):
        x = as_matrix(x)
        n = self.n
        if x.shape[0] != n:
            raise DimensionError(f"matrix size {x.shape[0]} does not match n={n}")
        res = fiber_residual(x, self.target)
        if res > tol:
            raise OffFiberError(f"point is off the fiber (residual {res:.3e})", residual=res)
        y = x.copy()
        levels = []
        for i in range(2, n):
            data = self.data[i]
            col = y[:i, i]
            rots = []
            for j, r in enumerate(data.base_column):
                rots.append((col[2 * j] / r, -col[2 * j + 1] / r))
            expected = self.point(i, rots)
            block = y[: i + 1, : i + 1]
            dev = np.max(np.abs(block - expected)) / max(1.0, np.max(np.abs(expected)))
            if dev > BLOCK_TOL:
                raise OffFiberError(
                    f"level {i} block deviates from its solution matrix ({dev:.3e})", residual=dev
                )
            levels.append(rots)
            if i < n - 1:
                g = embed_group(self.g(i, rots), n)
                y = g @ y @ g.T
        return SoTorusPoint.from_lists(n, _renormalize(levels))

    def easy_action(self, zp, x, tol=RESIDUAL_TOL):
        """Conjugation form of ``z' . x`` built from the ``g`` matrices of `x`."""
        z = self.inverse(x, tol)
        n = self.n
        gs = [embed_group(self.g(i, z.level(i)), n) for i in range(2, n - 1)]
        acc = embed_group(zp.group_element(n - 1), n)
        for i in range(n - 2, 1, -1):
            g = gs[i - 2]
            acc = embed_group(zp.group_element(i), n) @ g.T @ acc @ g
        return acc @ x @ acc.T


def _renormalize(levels):
    """Project ``(c, s)`` back onto ``c^2 + s^2 = 1`` to absorb rounding."""
    out = []
    for lev in levels:
        row = []
        for c, s in lev:
            k = np.sqrt(c * c + s * s)
            row.append((c / k, s / k))
        out.append(row)
    return out


def _rotation_block(i, rotations):
    g = np.eye(i, dtype=complex)
    for j, (c, s) in enumerate(rotations):
        g[2 * j : 2 * j + 2, 2 * j : 2 * j + 2] = rotation(c, s)
    return g


def base_conjugator(level, lower, upper):
    """``p`` with ``Ad(p)`` of the identity solution point in canonical form."""
    data = so_solution_data(level, lower, upper)
    return block_diagonalize(build_so_point(data), upper.signed_params())


def g_map(level, lower, upper, rotations):
    p = base_conjugator(level, lower, upper)
    return p @ embed_group(_rotation_block(level, rotations), level + 1).T


def gamma_so(c, z):
    """The point of ``so(n)_c`` with torus coordinates `z`."""
    return SoFiberChart(c).gamma(z)


def psi_inverse(x, c, tol=RESIDUAL_TOL):
    """Torus coordinates of a point of ``so(n)_c``."""
    return SoFiberChart(c).inverse(x, tol)


def torus_act_so(zp, x, c, tol=RESIDUAL_TOL):
    chart = SoFiberChart(c)
    return chart.gamma(zp * chart.inverse(x, tol))


def torus_act_so_conjugation(zp, x, c, tol=RESIDUAL_TOL):
    return SoFiberChart(c).easy_action(zp, x, tol)
