"""Property checks shared by the ``verify`` command and the acceptance tests.

Every check is a pure function of its configuration and seed and returns
a :class:`CheckResult` holding the worst measured value and its tolerance.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from .fibers import gamma, gamma_inverse, torus_act
from .flows import flow_step
from .invariants import AlgebraKind, flow_generators, generators, grad_invariant
from .linalg import eigenvalues, pfaffian_expansion
from .moment import FiberTarget, fiber_residual, moment_map
from .nilfibre import check_nilradical_example, in_nilfibre
from .poisson import ham_field, kks_pairing, poisson_bracket
from .regularity import distribution_rank, is_strongly_regular, sreg_via_centralizers
from .sampling import (
    mixed_samples,
    random_element,
    random_flow_point,
    random_target,
    random_torus,
)
from .solvar_gl import TorusPoint
from .solvar_so import (
    SoTorusPoint,
    bpoly_coefficients,
    build_so_point,
    dpoly_coefficients,
    quadric_constants,
    so_solution_data,
)

DEFAULT_TOL = 1e-8

EXAMPLE_X = np.array([[0, 20, 28], [1, 1, -14], [0, 1, 2]], dtype=complex)


@dataclass
class CheckResult:
    name: str
    passed: bool
    measured: float
    tolerance: float
    detail: str = ""

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name}: measured {self.measured:.3e} (tolerance {self.tolerance:.1e})"
        return f"{text} {self.detail}".rstrip()


def _result(name, worst, tol, detail="", ok=None):
    worst = float(worst)
    passed = worst <= tol if ok is None else bool(ok)
    return CheckResult(name, passed, worst, tol, detail)


def _rel(a, b):
    return float(np.linalg.norm(a - b) / max(1.0, np.linalg.norm(b)))


def _kinds(families, sizes):
    return [AlgebraKind(f, n) for f in families for n in sizes]


# -- brackets and flows -------------------------------------------------------------


def commutativity(kinds, samples=50, seed=0, tol=DEFAULT_TOL):
    """``|{f, g}(x)| / max(1, |x|)^(deg f + deg g - 2)`` over all generator pairs."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for kind in kinds:
        ids = generators(kind)
        for _ in range(samples):
            x = random_element(kind, rng)
            norm = max(1.0, np.linalg.norm(x))
            for f, g in itertools.combinations(ids, 2):
                val = abs(poisson_bracket(f, g, x)) / norm ** (f.degree + g.degree - 2)
                worst = max(worst, val)
    return _result("commutativity", worst, tol, f"[{len(kinds)} algebras x {samples} samples]")


def flow_derivative(kinds, samples=5, seed=0, h=1e-5, tol=1e-6):
    """Central difference of each flow at ``t = 0`` against ``[x, grad f]``."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for kind in kinds:
        for _ in range(samples):
            x = random_flow_point(kind, rng)
            for gid in flow_generators(kind):
                fd = (flow_step(gid, h, x) - flow_step(gid, -h, x)) / (2 * h)
                field = ham_field(gid, x)
                worst = max(worst, np.linalg.norm(fd - field) / max(np.linalg.norm(field), 1e-300))
    return _result("flow derivative", worst, tol)


def flow_level_invariance(kinds, samples=5, seed=0, tol=1e-10):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for kind in kinds:
        for _ in range(samples):
            x = random_flow_point(kind, rng)
            for gid in flow_generators(kind):
                t = complex(*rng.uniform(-2, 2, 2))
                y = flow_step(gid, t, x)
                i = gid.level
                worst = max(worst, np.max(np.abs(y[:i, :i] - x[:i, :i])) / max(1.0, np.abs(x).max()))
    return _result("flow cutoff invariance", worst, tol)


def flow_moment_drift(kinds, samples=5, seed=0, tol=DEFAULT_TOL):
    """Relative change of every generator along flows with ``|t| <= 2``."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for kind in kinds:
        for _ in range(samples):
            x = random_flow_point(kind, rng)
            phi = moment_map(kind, x)
            for gid in flow_generators(kind):
                t = 2 * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
                drift = np.abs(moment_map(kind, flow_step(gid, t, x)) - phi) / np.maximum(1.0, np.abs(phi))
                worst = max(worst, drift.max())
    return _result("flow moment drift", worst, tol)


def flow_commutation(kinds, pairs=20, seed=0, tol=DEFAULT_TOL):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for kind in kinds:
        ids = flow_generators(kind)
        if len(ids) < 2:
            continue
        for _ in range(pairs):
            x = random_flow_point(kind, rng)
            a, b = rng.choice(len(ids), 2, replace=False)
            s, t = (complex(*rng.uniform(-1, 1, 2)) for _ in range(2))
            ab = flow_step(ids[a], s, flow_step(ids[b], t, x))
            ba = flow_step(ids[b], t, flow_step(ids[a], s, x))
            worst = max(worst, _rel(ab, ba))
    return _result("flow commutation", worst, tol)


def kks_isotropy(kinds, samples=10, seed=0, tol=DEFAULT_TOL):
    """Pairings ``tr(grad f [x, grad g])`` of spanning vectors of ``V_x``, scaled as the bracket."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for kind in kinds:
        ids = flow_generators(kind)
        for k in range(samples):
            x = random_element(kind, rng) if k % 2 else gamma(random_target(kind, rng), random_torus(kind, rng))
            if not is_strongly_regular(kind, x):
                continue
            norm = max(1.0, np.linalg.norm(x))
            grads = [grad_invariant(g, x) for g in ids]
            for (f, a), (g, b) in itertools.combinations(zip(ids, grads), 2):
                val = abs(kks_pairing(x, a, b)) / norm ** (f.degree + g.degree - 2)
                worst = max(worst, val)
    return _result("KKS isotropy", worst, tol)


# -- the worked example -----------------------------------------------------------------


def example_omega(tol=1e-9):
    kind = AlgebraKind("gl", 3)
    expected = {1: [0], 2: [5, -4], 3: [3, 2, -2]}
    worst = 0.0
    for i, vals in expected.items():
        got = eigenvalues(EXAMPLE_X[:i, :i])
        worst = max(worst, np.max(np.abs(got - np.array(vals))))
    sreg = is_strongly_regular(kind, EXAMPLE_X)
    return _result("example in Omega", worst, tol, f"strongly_regular={sreg}", ok=worst <= tol and sreg)


# -- solution varieties ---------------------------------------------------------------------


def _det_at(x, t):
    return np.linalg.det(t * np.eye(x.shape[0]) - x)


def solution_polynomials(instances=50, seed=0, tol=1e-9):
    """Closed-form characteristic polynomials of solution matrices against determinants."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for k in range(2 * instances):
        l = 1 + k % 3
        a = rng.normal(size=l) + 1j * rng.normal(size=l)
        pairs = [tuple(rng.normal(size=2) + 1j * rng.normal(size=2)) for _ in range(l)]
        odd = k % 2 == 0
        size = 2 * l + (2 if odd else 1)
        x = np.zeros((size, size), dtype=complex)
        for j, v in enumerate(a):
            x[2 * j, 2 * j + 1], x[2 * j + 1, 2 * j] = v, -v
        col = np.zeros(size - 1, dtype=complex)
        col[: 2 * l] = np.ravel(pairs)
        if odd:
            col[-1] = complex(*rng.normal(size=2))
            coeffs = dpoly_coefficients(a, pairs, col[-1])
        else:
            coeffs = bpoly_coefficients(a, pairs)
        x[:-1, -1], x[-1, :-1] = col, -col
        for t in rng.normal(size=3) + 1j * rng.normal(size=3):
            det = _det_at(x, t)
            val = np.polyval(coeffs[::-1], t)
            worst = max(worst, abs(val - det) / max(1.0, abs(det)))
    d_b = quadric_constants([1], [2])[0]
    d_d = quadric_constants([1], [2, 3])[0]
    consts = max(abs(d_b - 3), abs(d_d + 24))
    kind = AlgebraKind("so", 4)
    zs = []
    for sign in (1, -1):
        c = FiberTarget.from_spectra(kind, [[], [5], [1], [2, 3]], {4: sign})
        zs.append(so_solution_data(3, c.level(3), c.level(4)).z_last)
    consts = max(consts, abs(abs(zs[0]) - 6), abs(zs[0] + zs[1]))
    ok = worst <= tol and consts <= tol
    return _result(
        "solution polynomials", max(worst, consts), tol, f"d_B={d_b.real:g} d_D={d_d.real:g} z={zs[0].real:+g}/{zs[1].real:+g}", ok=ok
    )


def pfaffian_signs(tol=1e-9):
    kind = AlgebraKind("so", 4)
    worst = 0.0
    for sign in (1, -1):
        c = FiberTarget.from_spectra(kind, [[], [5], [1], [2, 3]], {4: sign})
        data = so_solution_data(3, c.level(3), c.level(4))
        worst = max(worst, abs(pfaffian_expansion(build_so_point(data)) - 6 * sign))
    return _result("Pfaffian sign control", worst, tol)


# -- fibers -------------------------------------------------------------------------------


def round_trips(kinds, samples=20, seed=0, tol=DEFAULT_TOL):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for kind in kinds:
        for _ in range(samples):
            c = random_target(kind, rng)
            z = random_torus(kind, rng)
            x = gamma(c, z)
            z2 = gamma_inverse(x, c, tol)
            x2 = gamma(c, z2)
            worst = max(worst, fiber_residual(x, c), z.distance(z2), _rel(x2, x))
    return _result("Gamma/Psi round trips", worst, tol)


def fiber_strong_regularity(kinds, samples=20, seed=0):
    rng = np.random.default_rng(seed)
    failures = 0
    total = 0
    for kind in kinds:
        for _ in range(samples):
            x = gamma(random_target(kind, rng), random_torus(kind, rng))
            total += 1
            ok = (
                is_strongly_regular(kind, x)
                and sreg_via_centralizers(kind, x)
                and distribution_rank(kind, x) == kind.d
            )
            failures += not ok
    return _result("fiber strong regularity", failures, 0, f"[{total} points]")


def _torus_grid(kind, step):
    if kind.family == "gl":
        for exps in itertools.product((-1, 0, 1), repeat=kind.d):
            it = iter(exps)
            yield any(exps), TorusPoint.from_lists(
                [[np.exp(step * next(it)) for _ in range(i)] for i in range(1, kind.n)]
            )
    else:
        for exps in itertools.product((-1, 0, 1), repeat=kind.d):
            it = iter(exps)
            angles = [[step * next(it) for _ in range(i // 2)] for i in range(2, kind.n)]
            yield any(exps), SoTorusPoint.from_angles(kind.n, angles)


def torus_freeness(kinds, seed=0, step=0.1, gap=1e-6):
    """Smallest displacement ``|z' . x - x|`` over non-identity grid points."""
    rng = np.random.default_rng(seed)
    closest = np.inf
    ident = 0.0
    for kind in kinds:
        c = random_target(kind, rng)
        x = gamma(c, random_torus(kind, rng))
        for moved, zp in _torus_grid(kind, step):
            dist = np.max(np.abs(torus_act(zp, x, c) - x))
            if moved:
                closest = min(closest, dist)
            else:
                ident = max(ident, dist)
    ok = closest > gap and ident <= DEFAULT_TOL
    return _result("torus freeness", closest, gap, f"identity moves {ident:.1e}", ok=ok)


def predicate_equivalence(kinds, samples=100, seed=0):
    rng = np.random.default_rng(seed)
    disagreements = 0
    total = 0
    for kind in kinds:
        for x in mixed_samples(kind, rng, samples):
            total += 1
            disagreements += is_strongly_regular(kind, x) != sreg_via_centralizers(kind, x)
    return _result("regularity criteria agree", disagreements, 0, f"[{total} samples]")


def nilfibre(seed=0, samples=20):
    rng = np.random.default_rng(seed)
    ok = check_nilradical_example()
    for n in range(2, 7):
        for _ in range(samples // 5 + 1):
            x = np.tril(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)), -1)
            ok = ok and in_nilfibre(x)
    return _result("nilfibre example", 0 if ok else 1, 0, ok=ok)


# -- suites ------------------------------------------------------------------------------------


def acceptance_suite(seed=0):
    """The full acceptance configuration, one result per criterion."""
    sizes = [3, 4, 5, 6]
    both = _kinds(["gl", "so"], sizes)
    fibers = _kinds(["gl", "so"], [3, 4, 5])
    flows = [
        flow_derivative(both, seed=seed),
        flow_level_invariance(both, seed=seed),
        flow_moment_drift(both, seed=seed),
    ]
    flow_ok = all(r.passed for r in flows)
    return [
        ("1 commutativity", commutativity(both, 50, seed)),
        ("2 flow correctness", CheckResult(
            "flow correctness", flow_ok, max(r.measured / r.tolerance for r in flows), 1.0,
            "; ".join(r.line() for r in flows),
        )),
        ("3 flow commutation", flow_commutation(both, 20, seed)),
        ("4 example", example_omega()),
        ("5 solution polynomials", solution_polynomials(50, seed)),
        ("6 Pfaffian signs", pfaffian_signs()),
        ("7 round trips", round_trips(fibers, 20, seed)),
        ("8 strong regularity on fibers", fiber_strong_regularity(fibers, 20, seed)),
        ("9 torus freeness", torus_freeness(_kinds(["gl"], [3, 4]) + _kinds(["so"], [4, 5]), seed)),
        ("10 predicate equivalence", predicate_equivalence(both, 100, seed)),
        ("11 nilfibre", nilfibre(seed)),
        ("12 KKS isotropy", kks_isotropy(both, 10, seed)),
    ]


def run_suite(family, n, seed=0, tol=DEFAULT_TOL):
    """Checks for one algebra, as run by the ``verify`` command."""
    kinds = [AlgebraKind(family, n)]
    out = [
        commutativity(kinds, 20, seed, tol),
        flow_derivative(kinds, seed=seed),
        flow_level_invariance(kinds, seed=seed),
        flow_moment_drift(kinds, seed=seed, tol=tol),
        flow_commutation(kinds, 20, seed, tol),
        kks_isotropy(kinds, 10, seed, tol),
        predicate_equivalence(kinds, 50, seed),
    ]
    if n >= 2:
        out += [round_trips(kinds, 10, seed, tol), fiber_strong_regularity(kinds, 10, seed)]
        if kinds[0].d <= 6:
            out.append(torus_freeness(kinds, seed))
    if family == "gl":
        out.append(example_omega())
        out.append(nilfibre(seed))
    else:
        out.append(solution_polynomials(20, seed))
        out.append(pfaffian_signs())
    return out

