"""Family-independent entry points to the generic fiber parametrizations."""

from .invariants import GL
from .solvar_gl import gamma_gl, gamma_gl_inverse, torus_act_gl
from .solvar_so import SoFiberChart


def gamma(c, z):
    if c.kind.family == GL:
        return gamma_gl(c, z)
    return SoFiberChart(c).gamma(z)


def gamma_inverse(x, c, tol=1e-8):
    if c.kind.family == GL:
        return gamma_gl_inverse(x, c, tol)
    return SoFiberChart(c).inverse(x, tol)


def torus_act(zp, x, c, tol=1e-8):
    if c.kind.family == GL:
        return torus_act_gl(zp, x, c, tol)
    chart = SoFiberChart(c)
    return chart.gamma(zp * chart.inverse(x, tol))
