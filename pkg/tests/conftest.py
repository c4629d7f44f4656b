import numpy as np
import pytest

from gzsystem.invariants import AlgebraKind
from gzsystem.verify import EXAMPLE_X


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def example_x():
    return EXAMPLE_X.copy()


def kinds(families=("gl", "so"), sizes=(3, 4, 5)):
    return [AlgebraKind(f, n) for f in families for n in sizes]


def rel_err(a, b):
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    return float(np.max(np.abs(a - b), initial=0.0) / max(1.0, np.max(np.abs(b), initial=0.0)))


def random_orthogonal(n, rng):
    """Real special orthogonal matrix from a QR factorization."""
    q, r = np.linalg.qr(rng.normal(size=(n, n)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q.astype(complex)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    results = getattr(module, "_RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for label in module.LABELS:
        if label in results:
            terminalreporter.write_line(f"[{label}] {results[label].line()}")
    terminalreporter.write_line(f"[runtime] acceptance suite {results['_elapsed']:.1f} s (limit 300 s)")
