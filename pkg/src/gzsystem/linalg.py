"""Dense complex matrix primitives.

Characteristic polynomials use the Faddeev-LeVerrier recursion, eigenvalues
are the Aberth-Ehrlich roots of that polynomial, the exponential is a
scaled-and-squared Taylor series and Pfaffians come from skew-symmetric
Parlett-Reid elimination.  Polynomials are stored as ascending coefficient
arrays ``c[0] + c[1] t + ... + c[n] t**n`` with ``c[n] == 1``.
"""

from functools import cmp_to_key
from itertools import combinations

import numpy as np

from .errors import ConvergenceError, DimensionError, SkewnessError

EPS = np.finfo(float).eps

LEX_TOL = 1e-9
ABERTH_TOL = 1e-12
ABERTH_MAXITER = 200
EXP_DEGREE = 18
EXP_NORM = 0.5


def as_matrix(x):
    """Return `x` as a square, finite, complex ndarray (copy-free when possible)."""
    a = np.asarray(x, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def skew_tolerance(x):
    return 1e-10 * max(1.0, np.linalg.norm(x))


def is_skew(x, tol=None):
    x = np.asarray(x)
    if tol is None:
        tol = skew_tolerance(x)
    return bool(np.max(np.abs(x + x.T), initial=0.0) <= tol)


def cutoff(x, i):
    """Top-left ``i x i`` block of `x`."""
    x = as_matrix(x)
    n = x.shape[0]
    if not 1 <= i <= n:
        raise DimensionError(f"level {i} outside 1..{n}")
    return x[:i, :i].copy()


def embed(y, n):
    """Zero-pad `y` into the top-left corner of an ``n x n`` matrix."""
    y = as_matrix(y)
    i = y.shape[0]
    if i > n:
        raise DimensionError(f"cannot embed a {i}x{i} matrix into size {n}")
    out = np.zeros((n, n), dtype=complex)
    out[:i, :i] = y
    return out


def embed_group(g, n):
    """Embed a group element as ``diag(g, Id_{n-i})``."""
    g = as_matrix(g)
    i = g.shape[0]
    if i > n:
        raise DimensionError(f"cannot embed a {i}x{i} matrix into size {n}")
    out = np.eye(n, dtype=complex)
    out[:i, :i] = g
    return out


def commutator(a, b):
    return a @ b - b @ a


def conjugate(g, x, g_inv=None):
    """``Ad(g) x = g x g^{-1}``."""
    if g_inv is None:
        g_inv = np.linalg.inv(g)
    return g @ x @ g_inv


# -- characteristic polynomial and roots ------------------------------------


def char_poly(x):
    """Monic ``det(t - x)`` via Faddeev-LeVerrier, ascending coefficients."""
    a = as_matrix(x)
    n = a.shape[0]
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[n] = 1.0
    m = np.zeros_like(a)
    eye = np.eye(n, dtype=complex)
    for k in range(1, n + 1):
        m = a @ m + coeffs[n - k + 1] * eye
        coeffs[n - k] = -np.trace(a @ m) / k
    return coeffs


def poly_from_roots(roots):
    """Ascending coefficients of ``prod(t - r)``."""
    coeffs = np.array([1.0 + 0j])
    for r in roots:
        shifted = np.zeros(len(coeffs) + 1, dtype=complex)
        shifted[1:] = coeffs
        shifted[:-1] -= r * coeffs
        coeffs = shifted
    return coeffs


def _horner(coeffs, z):
    """Value, derivative and a rounding-error bound of ``p`` at points `z`."""
    p = np.full_like(z, coeffs[-1])
    dp = np.zeros_like(z)
    bound = np.full(z.shape, abs(coeffs[-1]))
    az = np.abs(z)
    for c in coeffs[-2::-1]:
        dp = dp * z + p
        p = p * z + c
        bound = bound * az + abs(c)
    return p, dp, 4 * len(coeffs) * EPS * bound


def _initial_guesses(coeffs, rng=None):
    P = np.polynomial.polynomial
    n = len(coeffs) - 1
    centre = -coeffs[n - 1] / n
    # coefficients of p(centre + u); their Fujiwara-type bound sets the radius
    shifted = []
    deriv = coeffs
    fact = 1.0
    for k in range(n + 1):
        shifted.append(P.polyval(centre, deriv) / fact)
        deriv = P.polyder(deriv)
        fact *= k + 1
    radius = max(abs(shifted[n - k]) ** (1.0 / k) for k in range(1, n + 1))
    radius = max(radius, 1e-3 * max(1.0, abs(centre)))
    angles = 2 * np.pi * np.arange(n) / n + 0.4
    if rng is not None:
        angles = angles + rng.uniform(-0.5, 0.5, n)
        radius *= rng.uniform(0.5, 1.5)
    return centre + radius * np.exp(1j * angles)


def _merge_clusters(coeffs, roots):
    """Replace numerically multiple roots by the cluster mean.

    A cluster is merged only when its spread is consistent with the rounding
    perturbation expected for a root of that multiplicity.
    """
    n = len(roots)
    scale = max(1.0, np.max(np.abs(roots)))
    labels = list(range(n))

    def find(k):
        while labels[k] != k:
            labels[k] = labels[labels[k]]
            k = labels[k]
        return k

    for a, b in combinations(range(n), 2):
        if abs(roots[a] - roots[b]) <= 1e-3 * scale:
            labels[find(a)] = find(b)
    groups = {}
    for k in range(n):
        groups.setdefault(find(k), []).append(k)
    out = roots.copy()
    P = np.polynomial.polynomial
    for members in groups.values():
        m = len(members)
        if m == 1:
            continue
        c = np.mean(roots[members])
        deriv = P.polyder(coeffs, m)
        lead = abs(P.polyval(c, deriv)) / np.prod(np.arange(1, m + 1))
        noise = 4 * len(coeffs) * EPS * np.sum(np.abs(coeffs) * abs(c) ** np.arange(len(coeffs)))
        if lead == 0.0:
            continue
        expected = (noise / lead) ** (1.0 / m)
        spread = np.max(np.abs(roots[members] - c))
        if spread <= 10 * expected:
            # an m-fold root is a simple root of the (m-1)-th derivative
            lower = P.polyder(coeffs, m - 1)
            for _ in range(5):
                denom = P.polyval(c, deriv)
                if denom == 0:
                    break
                c = c - P.polyval(c, lower) / denom
            out[members] = c
    return out


def poly_roots(coeffs, tol=ABERTH_TOL, maxiter=ABERTH_MAXITER, restarts=3):
    """All roots of a monic polynomial by Aberth-Ehrlich iteration.

    Parameters
    ----------
    coeffs : array_like
        Ascending coefficients, last one equal to 1.
    tol : float
        Relative correction size at which a root counts as converged.

    Raises
    ------
    ConvergenceError
        If the iteration does not settle after `restarts` perturbed restarts.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    n = len(coeffs) - 1
    if n < 0 or coeffs[-1] != 1:
        raise ValueError("polynomial must be monic")
    if n == 0:
        return np.zeros(0, dtype=complex)
    if n == 1:
        return np.array([-coeffs[0]])
    rng = np.random.default_rng(12345)
    for attempt in range(restarts + 1):
        z = _initial_guesses(coeffs, rng if attempt else None)
        done = np.zeros(n, dtype=bool)
        for _ in range(maxiter):
            p, dp, bound = _horner(coeffs, z)
            at_root = np.abs(p) <= bound
            with np.errstate(divide="ignore", invalid="ignore"):
                ratio = np.where(at_root, 0.0, p / dp)
                diff = z[:, None] - z[None, :]
                np.fill_diagonal(diff, 1.0)
                inv = 1.0 / diff
                np.fill_diagonal(inv, 0.0)
                s = inv.sum(axis=1)
                step = np.where(at_root, 0.0, ratio / (1.0 - ratio * s))
            if not np.all(np.isfinite(step)):
                break
            z = z - step
            done = at_root | (np.abs(step) <= tol * np.maximum(1.0, np.abs(z)))
            if np.all(done):
                break
        if np.all(done) and np.all(np.isfinite(z)):
            return _merge_clusters(coeffs, z)
    raise ConvergenceError(f"Aberth iteration did not converge for degree {n}")


# -- lexicographic order on C ------------------------------------------------


def lex_compare(a, b, scale=1.0):
    """-1, 0, 1 comparing by real part then imaginary part, with tolerance."""
    tol = LEX_TOL * scale
    if abs(a.real - b.real) > tol:
        return 1 if a.real > b.real else -1
    if abs(a.imag - b.imag) > tol:
        return 1 if a.imag > b.imag else -1
    return 0


def lex_sort(values, descending=True):
    values = [complex(v) for v in values]
    scale = max([1.0] + [abs(v) for v in values])
    key = cmp_to_key(lambda a, b: lex_compare(a, b, scale))
    return sorted(values, key=key, reverse=descending)


def lex_positive(a, scale=None):
    """Representative of ``{a, -a}`` that is larger in the lexicographic order."""
    a = complex(a)
    if scale is None:
        scale = max(1.0, abs(a))
    return -a if lex_compare(-a, a, scale) > 0 else a


def eigenvalues(x):
    """Eigenvalues with multiplicity, sorted descending in the lexicographic order."""
    x = as_matrix(x)
    return np.array(lex_sort(poly_roots(char_poly(x))), dtype=complex)


# -- matrix exponential --------------------------------------------------------


def mat_exp(x):
    """``exp(x)`` by scaling and squaring with a degree-18 Taylor kernel."""
    a = as_matrix(x)
    n = a.shape[0]
    norm = np.linalg.norm(a, 1)
    squarings = 0
    if norm > EXP_NORM:
        squarings = int(np.ceil(np.log2(norm / EXP_NORM)))
    a = a / 2.0**squarings
    term = np.eye(n, dtype=complex)
    result = term.copy()
    for k in range(1, EXP_DEGREE + 1):
        term = term @ a / k
        result = result + term
    for _ in range(squarings):
        result = result @ result
    return result


# -- Pfaffians -------------------------------------------------------------------


def _check_skew_even(x):
    x = as_matrix(x)
    if x.shape[0] % 2:
        raise DimensionError("Pfaffian needs an even dimension")
    if not is_skew(x):
        raise SkewnessError("Pfaffian needs a skew-symmetric matrix")
    return x


def pfaffian(x):
    """Pfaffian by Parlett-Reid skew elimination with partial pivoting."""
    a = _check_skew_even(x).copy()
    n = a.shape[0]
    result = 1.0 + 0j
    for k in range(0, n - 1, 2):
        piv = k + 1 + int(np.argmax(np.abs(a[k + 1 :, k])))
        if piv != k + 1:
            a[[k + 1, piv], :] = a[[piv, k + 1], :]
            a[:, [k + 1, piv]] = a[:, [piv, k + 1]]
            result = -result
        if a[k, k + 1] == 0:
            return 0j
        result *= a[k, k + 1]
        if k + 2 < n:
            tau = a[k, k + 2 :] / a[k, k + 1]
            col = a[k + 2 :, k + 1].copy()
            a[k + 2 :, k + 2 :] += np.outer(tau, col) - np.outer(col, tau)
    return complex(result)


def pfaffian_expansion(x):
    """Pfaffian by recursive expansion along the first row (small sizes only)."""
    a = _check_skew_even(x)
    return _pf_expand(a)


def _pf_expand(a):
    n = a.shape[0]
    if n == 0:
        return 1.0 + 0j
    total = 0j
    for j in range(1, n):
        if a[0, j] == 0:
            continue
        keep = [k for k in range(n) if k not in (0, j)]
        sign = 1 if j % 2 == 1 else -1
        total += sign * a[0, j] * _pf_expand(a[np.ix_(keep, keep)])
    return total


def pfaffian_cofactors(x):
    """Matrix of partial derivatives ``dPf / dx_{jk}`` for ``j < k``, extended skew.

    Each entry is a signed sub-Pfaffian, so singular inputs are fine.
    """
    a = _check_skew_even(x)
    n = a.shape[0]
    out = np.zeros((n, n), dtype=complex)
    for j, k in combinations(range(n), 2):
        keep = [m for m in range(n) if m not in (j, k)]
        sub = a[np.ix_(keep, keep)]
        sign = 1 if (j + k + 1) % 2 == 0 else -1
        out[j, k] = sign * (pfaffian(sub) if keep else 1.0)
        out[k, j] = -out[j, k]
    return out


# -- numerical rank ------------------------------------------------------------------


def _eliminate(rows):
    """Complete-pivoting elimination; returns the sequence of pivot magnitudes."""
    a = rows.copy()
    pivots = []
    m, k = a.shape
    for step in range(min(m, k)):
        sub = np.abs(a[step:, step:])
        r, c = np.unravel_index(int(np.argmax(sub)), sub.shape)
        r += step
        c += step
        piv = a[r, c]
        pivots.append(abs(piv))
        if piv == 0:
            break
        a[[step, r], :] = a[[r, step], :]
        a[:, [step, c]] = a[:, [c, step]]
        factors = a[step + 1 :, step] / a[step, step]
        a[step + 1 :, step:] -= np.outer(factors, a[step, step:])
    return np.array(pivots)


def default_rank_tolerance(rows):
    rows = np.asarray(rows)
    big = max(rows.shape)
    norms = np.linalg.norm(rows, axis=1) if rows.size else np.zeros(1)
    return big * 1e-10 * float(np.max(norms, initial=0.0))


def rank_report(vectors, tau=None):
    """Rank plus the margin of the decision.

    Returns
    -------
    rank : int
    tau : float
        Threshold used.
    margin : float
        ``min(smallest kept pivot, tau**2 / largest dropped pivot) / tau``-style
        ratio; values below 10 flag a near-threshold verdict.
    """
    rows = _stack(vectors)
    if tau is None:
        tau = default_rank_tolerance(rows)
    pivots = _eliminate(rows)
    kept = pivots[pivots > tau]
    dropped = pivots[pivots <= tau]
    rank = len(kept)
    margin = np.inf
    if tau > 0:
        if len(kept):
            margin = min(margin, kept.min() / tau)
        if len(dropped) and dropped.max() > 0:
            margin = min(margin, tau / dropped.max())
    return rank, tau, margin


def numerical_rank(vectors, tau=None):
    """Rank of the matrices in `vectors`, each flattened to one row."""
    return rank_report(vectors, tau)[0]


def _stack(vectors):
    vectors = list(vectors)
    if not vectors:
        raise ValueError("numerical_rank needs at least one vector")
    rows = [np.asarray(v, dtype=complex).ravel() for v in vectors]
    if len({r.size for r in rows}) != 1:
        raise DimensionError("vectors have different dimensions")
    return np.vstack(rows)
