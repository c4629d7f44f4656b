"""Random elements, generic targets and torus points for tests and the verify driver."""

import numpy as np

from .fibers import gamma
from .invariants import GL
from .moment import FiberTarget, in_omega, level_target_of
from .solvar_gl import TorusPoint
from .solvar_so import SoTorusPoint

MIN_GAP = 0.05


def random_element(kind, rng, scale=None):
    """Complex Gaussian element of ``g_n``; entries have standard deviation `scale`."""
    n = kind.n
    if scale is None:
        scale = 1.0
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    if kind.family != GL:
        x = (x - x.T) / 2
    return scale * x / np.sqrt(2)


def random_flow_point(kind, rng):
    """Element with spectral radius near 0.5, so flows for ``|t| <= 2`` stay tame."""
    return random_element(kind, rng, 0.5 / np.sqrt(kind.n))


def _separation(c):
    """Smallest gap between eigenvalues inside a level or across adjacent levels."""
    spectra = [c.spectrum(i) for i in range(1, c.kind.n + 1)]
    gaps = [np.inf]
    for s in spectra:
        gaps += [abs(a - b) for k, a in enumerate(s) for b in s[k + 1 :]]
    for lo, hi in zip(spectra, spectra[1:]):
        gaps += [abs(a - b) for a in lo for b in hi]
    return min(gaps)


def random_target(kind, rng, perturb=0.2, min_gap=MIN_GAP):
    """A target in ``Omega`` whose fiber is numerically well conditioned.

    The spectral data of the cutoffs of a random Hermitian (``gl``) or real
    skew (``so``) matrix interlace; they are pushed into the complex domain by
    a Gaussian perturbation of relative size `perturb`, and ``so`` targets get
    random Pfaffian signs.
    """
    n = kind.n
    while True:
        a = rng.normal(size=(n, n))
        if kind.family == GL:
            x = a + a.T + 1j * (rng.normal(size=(n, n)) * np.tri(n, k=-1))
            x = (x + x.conj().T) / 2
        else:
            x = a - a.T
        spectra = []
        for i in range(1, n + 1):
            vals = np.array(level_target_of(kind.family, x[:i, :i]).values).real
            w = rng.normal(size=len(vals)) + 1j * rng.normal(size=len(vals))
            if kind.family == GL:
                spectra.append(vals + perturb * w / 2)
            else:
                spectra.append(vals * (1 + perturb * w / 2))
        signs = {i: int(rng.choice([-1, 1])) for i in range(2, n + 1, 2)}
        c = FiberTarget.from_spectra(kind, spectra, signs if kind.family != GL else None)
        if in_omega(c) and _separation(c) >= min_gap:
            return c


def random_torus(kind, rng, spread=0.25):
    if kind.family == GL:
        return TorusPoint.random(kind.n, rng, spread)
    return SoTorusPoint.random(kind.n, rng, spread)


def identity_torus(kind):
    if kind.family == GL:
        return TorusPoint.identity(kind.n)
    return SoTorusPoint.identity(kind.n)


def degenerate_element(kind, rng, style):
    """Elements that fail strong regularity for a known structural reason.

    ``"diagonal"``: diagonal (``gl``) or block-diagonal (``so``) matrices;
    ``"repeated"``: a cutoff with a repeated eigenvalue; ``"scalar-cutoff"``:
    a scalar cutoff of size 2 (``gl``) or a zero one of size 3 (``so``) inside a
    random element.
    """
    n = kind.n
    x = random_element(kind, rng)
    if style == "diagonal":
        if kind.family == GL:
            return np.diag(np.diag(x))
        y = np.zeros_like(x)
        for j in range(n // 2):
            y[2 * j : 2 * j + 2, 2 * j : 2 * j + 2] = x[2 * j : 2 * j + 2, 2 * j : 2 * j + 2]
        return y
    if style == "repeated":
        m = min(n, 3) if kind.family == GL else min(n, 4)
        if kind.family == GL:
            block = np.diag([1.0, 1.0, 2.0][:m]).astype(complex)
        else:
            a = rng.normal() + 1j * rng.normal()
            block = np.zeros((m, m), dtype=complex)
            block[0, 1], block[1, 0] = a, -a
            if m == 4:
                block[2, 3], block[3, 2] = a, -a
        x[:m, :m] = block
        return x
    if style == "scalar-cutoff":
        if kind.family == GL:
            x[:2, :2] = np.eye(2) * rng.normal()
        else:
            m = min(n, 3)
            x[:m, :m] = 0
        return x
    raise ValueError(f"unknown degenerate style {style!r}")


def mixed_samples(kind, rng, count):
    """Random, fiber-built and degenerate elements in a fixed rotation."""
    styles = ["random", "fiber", "diagonal", "repeated", "scalar-cutoff"]
    out = []
    for k in range(count):
        style = styles[k % len(styles)]
        if style == "random":
            out.append(random_element(kind, rng))
        elif style == "fiber":
            out.append(gamma(random_target(kind, rng), random_torus(kind, rng)))
        else:
            out.append(degenerate_element(kind, rng, style))
    return out
