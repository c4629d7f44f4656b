import numpy as np
import pytest

from gzsystem.fibers import gamma
from gzsystem.invariants import AlgebraKind, flow_generators, generators, grad_invariant, invariant_id
from gzsystem.linalg import commutator, embed, numerical_rank
from gzsystem.poisson import (
    LinearFunctional,
    gz_distribution,
    ham_field,
    kks_pairing,
    poisson_bracket,
)
from gzsystem.sampling import random_element, random_target, random_torus

from conftest import kinds


def _scale(x, f, g):
    return max(1.0, np.linalg.norm(x)) ** (f.degree + g.degree - 2)


def test_self_bracket_vanishes(rng):
    kind = AlgebraKind("gl", 4)
    x = random_element(kind, rng)
    for f in generators(kind):
        assert abs(poisson_bracket(f, f, x)) <= 1e-9 * _scale(x, f, f)


def test_example_pair_commutes(rng):
    kind = AlgebraKind("gl", 3)
    x = random_element(kind, rng)
    f, g = invariant_id(kind, 2, 1), invariant_id(kind, 3, 2)
    assert abs(poisson_bracket(f, g, x)) <= 1e-9 * _scale(x, f, g)


def test_coordinate_functionals(rng):
    x = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    a = LinearFunctional.entry(2, 0, 1)
    b = LinearFunctional.entry(2, 1, 0)
    assert a(x) == x[0, 1]
    # {x12, x21} = tr(x [E21, E12]) = x22 - x11
    assert poisson_bracket(a, b, x) == pytest.approx(x[1, 1] - x[0, 0], abs=1e-14)
    assert poisson_bracket(b, a, x) == pytest.approx(x[0, 0] - x[1, 1], abs=1e-14)


@pytest.mark.parametrize("kind", kinds(sizes=(3, 4, 5, 6)), ids=str)
def test_commutativity(kind, rng):
    ids = generators(kind)
    for _ in range(10):
        x = random_element(kind, rng)
        for f in ids:
            for g in ids:
                assert abs(poisson_bracket(f, g, x)) <= 1e-8 * _scale(x, f, g)


def test_bracket_antisymmetric_and_bilinear(rng):
    x = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    a = LinearFunctional(rng.normal(size=(3, 3)))
    b = LinearFunctional(rng.normal(size=(3, 3)))
    c = LinearFunctional(rng.normal(size=(3, 3)))
    ab = poisson_bracket(a, b, x)
    assert abs(ab + poisson_bracket(b, a, x)) <= 1e-12
    bc = LinearFunctional(b.gradient + 2 * c.gradient)
    assert abs(poisson_bracket(a, bc, x) - ab - 2 * poisson_bracket(a, c, x)) <= 1e-12


def test_top_level_field_vanishes(rng):
    kind = AlgebraKind("so", 5)
    x = random_element(kind, rng)
    for gid in generators(kind):
        if gid.level == kind.n:
            assert np.max(np.abs(ham_field(gid, x))) <= 1e-10 * max(1, np.linalg.norm(x)) ** gid.degree


def test_trace_field_is_projection_commutator(rng):
    kind = AlgebraKind("gl", 4)
    x = random_element(kind, rng)
    gid = invariant_id(kind, 2, 1)
    assert np.array_equal(ham_field(gid, x), commutator(x, embed(np.eye(2), 4)))
    y = x.copy()
    y[:2, 2:] = 0
    y[2:, :2] = 0
    assert np.max(np.abs(ham_field(gid, y))) == 0


def test_diagonal_fields_vanish():
    kind = AlgebraKind("gl", 3)
    x = np.diag([1.0, 2.0, 3.0])
    for gid in generators(kind):
        assert np.max(np.abs(ham_field(gid, x))) == 0
    assert numerical_rank(gz_distribution(kind, x)) == 0


def test_distribution_rank_example(example_x):
    vecs = gz_distribution(AlgebraKind("gl", 3), example_x)
    assert len(vecs) == 3
    assert numerical_rank(vecs) == 3


def test_distribution_rank_on_so4_fiber(rng):
    kind = AlgebraKind("so", 4)
    x = gamma(random_target(kind, rng), random_torus(kind, rng))
    assert numerical_rank(gz_distribution(kind, x)) == 2 == kind.d


@pytest.mark.parametrize("kind", kinds(sizes=(3, 4, 5, 6)), ids=str)
def test_distribution_dimension_bounded(kind, rng):
    x = random_element(kind, rng)
    vecs = gz_distribution(kind, x)
    assert len(vecs) == kind.d
    assert numerical_rank(vecs) <= kind.d


@pytest.mark.parametrize("kind", kinds(sizes=(3, 4, 5)), ids=str)
def test_distribution_is_isotropic(kind, rng):
    x = gamma(random_target(kind, rng), random_torus(kind, rng))
    grads = [grad_invariant(g, x) for g in flow_generators(kind)]
    scale = max(1.0, np.linalg.norm(x))
    for a in grads:
        for b in grads:
            assert abs(kks_pairing(x, a, b)) <= 1e-8 * scale ** 2
