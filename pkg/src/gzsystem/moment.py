"""Moment map, fiber targets and the generic locus ``Omega``."""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, GenericityError, SkewnessError
from .invariants import GL, AlgebraKind, eval_invariant, invariant_id, moment_values
from .linalg import (
    as_matrix,
    char_poly,
    is_skew,
    lex_positive,
    lex_sort,
    pfaffian,
    poly_roots,
)

OMEGA_TOL = 1e-8

J = np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex)


def block_form(params, odd=False):
    """``a_1 J + ... + a_l J`` (plus a trailing zero when `odd`)."""
    l = len(params)
    size = 2 * l + (1 if odd else 0)
    h = np.zeros((size, size), dtype=complex)
    for j, a in enumerate(params):
        h[2 * j : 2 * j + 2, 2 * j : 2 * j + 2] = a * J
    return h


@dataclass(frozen=True)
class LevelTarget:
    """Canonical spectral data of one level.

    For ``gl`` `values` are the eigenvalues in descending lexicographic order.
    For ``so`` they are block parameters ``a_j`` (eigenvalues ``+-i a_j``), each
    the lexicographically larger of ``+-a_j`` and sorted descending; at even
    levels ``Pf = pfaffian_sign * prod(a_j)``.
    """

    values: tuple
    pfaffian_sign: int | None = None

    def signed_params(self):
        """Block parameters of the canonical representative (last one carries the sign)."""
        params = list(self.values)
        if params and self.pfaffian_sign == -1:
            params[-1] = -params[-1]
        return params


def _newton_elementary(power_sums):
    """Elementary symmetric ``e_1..e_m`` from power sums ``p_1..p_m``."""
    e = [1.0 + 0j]
    for k in range(1, len(power_sums) + 1):
        acc = 0j
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * e[k - i] * power_sums[i - 1]
        e.append(acc / k)
    return e


def _monic_from_elementary(e):
    """Ascending coefficients of ``prod(t - r)`` given ``e_0..e_m``."""
    m = len(e) - 1
    coeffs = np.zeros(m + 1, dtype=complex)
    for k in range(m + 1):
        coeffs[m - k] = (-1) ** k * e[k]
    return coeffs


def _params_from_squares(squares):
    """Block parameters from the roots ``s = -a^2``."""
    return [lex_positive(np.sqrt(-complex(s))) for s in squares]


def _normalize_so(level, params, sign=1):
    params = [complex(a) for a in params]
    flips = 0
    canon = []
    for a in params:
        b = lex_positive(a)
        if b != a:
            flips += 1
        canon.append(b)
    canon = tuple(lex_sort(canon))
    if level % 2 == 0:
        return LevelTarget(canon, int(sign) * (-1) ** flips)
    return LevelTarget(canon, None)


def _sign_from_pfaffian(pf, params):
    prod = complex(np.prod(params)) if params else 1.0
    if abs(prod) == 0:
        return 1
    ratio = pf / prod
    return 1 if ratio.real >= 0 else -1


def level_target_of(family, xi):
    """Canonical spectral data of a single square matrix."""
    xi = as_matrix(xi)
    i = xi.shape[0]
    coeffs = char_poly(xi)
    if family == GL:
        return LevelTarget(tuple(lex_sort(poly_roots(coeffs))))
    if not is_skew(xi):
        raise SkewnessError("so targets need a skew matrix")
    q = np.array(coeffs[i % 2 :: 2])
    lev = _normalize_so(i, _params_from_squares(poly_roots(q)))
    if i % 2 == 0:
        lev = LevelTarget(lev.values, _sign_from_pfaffian(pfaffian(xi), lev.values))
    return lev


@dataclass(frozen=True)
class FiberTarget:
    """Target ``c = (c_1, ..., c_n)`` stored level by level in spectral form."""

    kind: AlgebraKind
    levels: tuple

    def __post_init__(self):
        if len(self.levels) != self.kind.n:
            raise DimensionError(f"expected {self.kind.n} levels, got {len(self.levels)}")
        for i, lev in enumerate(self.levels, start=1):
            expected = i if self.kind.family == GL else i // 2
            if len(lev.values) != expected:
                raise DimensionError(f"level {i} needs {expected} values, got {len(lev.values)}")

    @classmethod
    def from_spectra(cls, kind, spectra, pfaffian_signs=None):
        """Build from eigenvalues (``gl``) or block parameters (``so``).

        For ``so`` the Pfaffian at an even level is ``sign * prod(given a_j)``;
        `pfaffian_signs` maps even levels to a sign and defaults to ``+1``.
        """
        if len(spectra) != kind.n:
            raise DimensionError(f"expected {kind.n} levels, got {len(spectra)}")
        if kind.family == GL:
            levels = tuple(LevelTarget(tuple(lex_sort(s))) for s in spectra)
        else:
            signs = pfaffian_signs or {}
            levels = tuple(
                _normalize_so(i, s, signs.get(i, 1)) for i, s in enumerate(spectra, start=1)
            )
        return cls(kind, levels)

    @classmethod
    def from_element(cls, kind, x):
        x = as_matrix(x)
        if x.shape[0] != kind.n:
            raise DimensionError(f"matrix size {x.shape[0]} does not match {kind}")
        levels = tuple(level_target_of(kind.family, x[:i, :i]) for i in range(1, kind.n + 1))
        return cls(kind, levels)

    @classmethod
    def from_invariant_values(cls, kind, values):
        """Inverse of :meth:`invariant_values` on regular semisimple data."""
        values = [complex(v) for v in values]
        expected = sum(kind.ranks)
        if len(values) != expected:
            raise DimensionError(f"expected {expected} invariant values, got {len(values)}")
        levels = []
        pos = 0
        for i in range(1, kind.n + 1):
            r = kind.rank(i)
            vals = values[pos : pos + r]
            pos += r
            if kind.family == GL:
                e = _newton_elementary(vals)
                roots = poly_roots(_monic_from_elementary(e))
                levels.append(LevelTarget(tuple(lex_sort(roots))))
                continue
            if r == 0:
                levels.append(LevelTarget((), 1 if i % 2 == 0 else None))
                continue
            if i % 2 == 0:
                pf = vals[-1]
                e = _newton_elementary([v / 2 for v in vals[:-1]])
                e.append((-1) ** r * pf * pf)
            else:
                e = _newton_elementary([v / 2 for v in vals])
            squares = poly_roots(_monic_from_elementary(e))
            lev = _normalize_so(i, _params_from_squares(squares))
            if i % 2 == 0:
                lev = LevelTarget(lev.values, _sign_from_pfaffian(pf, lev.values))
            levels.append(lev)
        return cls(kind, tuple(levels))

    def level(self, i):
        return self.levels[i - 1]

    def spectrum(self, i):
        """Eigenvalues of level `i` with multiplicity."""
        lev = self.level(i)
        if self.kind.family == GL:
            return list(lev.values)
        out = []
        for a in lev.values:
            out += [1j * a, -1j * a]
        if i % 2:
            out.append(0j)
        return out

    def canonical_cartan(self, i):
        """Representative of level `i` in the fundamental domain."""
        lev = self.level(i)
        if self.kind.family == GL:
            return np.diag(np.array(lev.values, dtype=complex))
        return block_form(lev.signed_params(), odd=bool(i % 2))

    def level_invariants(self, i):
        sub = self.kind.at(i)
        h = self.canonical_cartan(i)
        return [eval_invariant(invariant_id(sub, i, j), h) for j in range(1, sub.rank(i) + 1)]

    def invariant_values(self):
        """The target as a point of ``C^{d + r_n}`` in generator order."""
        out = []
        for i in range(1, self.kind.n + 1):
            out += self.level_invariants(i)
        return np.array(out, dtype=complex)


def moment_map(kind, x):
    """All generator values ``(f_{1,1}(x_1), ..., f_{n,r_n}(x))``."""
    x = as_matrix(x)
    if x.shape[0] != kind.n:
        raise DimensionError(f"matrix size {x.shape[0]} does not match {kind}")
    return moment_values(kind, x)


def coeff_moment(kind, x):
    """Non-leading coefficients of ``det(t - x_i)`` for every level (``gl`` only)."""
    if kind.family != GL:
        raise ValueError("coefficient moment map is defined for gl only")
    x = as_matrix(x)
    out = []
    for i in range(1, x.shape[0] + 1):
        out += list(char_poly(x[:i, :i])[:-1])
    return np.array(out, dtype=complex)


def _close(a, b, tol):
    return abs(a - b) <= tol


def in_omega(c, tol=OMEGA_TOL):
    """Regular semisimple levels with spectrally disjoint neighbours."""
    scale = max([1.0] + [abs(v) for lev in c.levels for v in lev.values])
    t = tol * scale
    if c.kind.family == GL:
        for lev in c.levels:
            vals = lev.values
            if any(_close(a, b, t) for k, a in enumerate(vals) for b in vals[k + 1 :]):
                return False
        for lo, hi in zip(c.levels, c.levels[1:]):
            if any(_close(a, b, t) for a in lo.values for b in hi.values):
                return False
        return True
    for lev in c.levels:
        vals = lev.values
        if any(_close(a, 0, t) for a in vals):
            return False
        for k, a in enumerate(vals):
            for b in vals[k + 1 :]:
                if _close(a, b, t) or _close(a, -b, t):
                    return False
    for lo, hi in zip(c.levels, c.levels[1:]):
        for a in lo.values:
            for b in hi.values:
                if _close(a, b, t) or _close(a, -b, t):
                    return False
    return True


def element_in_omega(kind, x, tol=OMEGA_TOL):
    try:
        c = FiberTarget.from_element(kind, x)
    except SkewnessError:
        return False
    return in_omega(c, tol)


def fiber_residual(x, c):
    """``max_k |Phi_k(x) - c_k| / max(1, |c_k|)`` over all generators."""
    target = c.invariant_values()
    values = moment_map(c.kind, x)
    return float(np.max(np.abs(values - target) / np.maximum(1.0, np.abs(target)), initial=0.0))


def require_omega(c, tol=OMEGA_TOL):
    if not in_omega(c, tol):
        raise GenericityError("target is not in the generic locus")
