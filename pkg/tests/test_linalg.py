import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from gzsystem.errors import DimensionError, SkewnessError
from gzsystem.linalg import (
    char_poly,
    cutoff,
    eigenvalues,
    embed,
    is_skew,
    lex_sort,
    mat_exp,
    numerical_rank,
    pfaffian,
    pfaffian_expansion,
    poly_from_roots,
    poly_roots,
)

from conftest import random_orthogonal, rel_err

J = np.array([[0, 1], [-1, 0]], dtype=complex)


def test_cutoff_example(example_x):
    assert np.array_equal(cutoff(example_x, 2), [[0, 20], [1, 1]])
    assert np.array_equal(cutoff(example_x, 3), example_x)
    assert cutoff(np.diag([1.0, 2.0, 3.0]), 1).tolist() == [[1]]


@pytest.mark.parametrize("i", [0, 4])
def test_cutoff_rejects_bad_level(example_x, i):
    with pytest.raises(DimensionError):
        cutoff(example_x, i)


def test_embed(rng):
    assert embed([[5]], 2).tolist() == [[5, 0], [0, 0]]
    y = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    assert np.array_equal(cutoff(embed(y, 4), 2), y)
    s = y - y.T
    assert is_skew(embed(s, 4))
    with pytest.raises(DimensionError):
        embed(np.eye(3), 2)


def test_char_poly_example(example_x):
    roots = sorted(poly_roots(char_poly(example_x)), key=lambda v: v.real)
    assert np.allclose(roots, [-2, 2, 3], atol=1e-9)


def test_char_poly_zero_matrix():
    assert np.array_equal(char_poly(np.zeros((4, 4))), [0, 0, 0, 0, 1])


def test_char_poly_matches_eigenvalue_product(rng):
    x = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    oracle = poly_from_roots(np.linalg.eigvals(x))
    assert rel_err(char_poly(x), oracle) <= 1e-8


def test_char_poly_conjugation_invariant(rng):
    x = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    g = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    y = g @ x @ np.linalg.inv(g)
    assert rel_err(char_poly(y), char_poly(x)) <= 1e-8


def test_eigenvalues_examples(example_x):
    assert np.allclose(eigenvalues(example_x), [3, 2, -2], atol=1e-9)
    assert np.allclose(eigenvalues(example_x[:2, :2]), [5, -4], atol=1e-9)
    assert np.allclose(eigenvalues(np.eye(3)), [1, 1, 1], atol=1e-7)


def test_eigenvalues_match_numpy(rng):
    for n in range(1, 7):
        x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        ours = eigenvalues(x)
        oracle = np.array(lex_sort(np.linalg.eigvals(x)))
        assert rel_err(ours, oracle) <= 1e-9


def test_lex_order_is_idempotent(rng):
    vals = list(rng.normal(size=6) + 1j * rng.normal(size=6)) + [1 + 2j, 1 - 1j]
    once = lex_sort(vals)
    assert lex_sort(once) == once
    assert lex_sort(list(reversed(vals))) == once
    assert lex_sort([1 - 1j, 1 + 2j, 2]) == [2, 1 + 2j, 1 - 1j]


def test_mat_exp_cases():
    assert np.array_equal(mat_exp(np.zeros((3, 3))), np.eye(3))
    d = mat_exp(np.diag([0.7, -2.5 + 1j]))
    assert rel_err(np.diag(d), np.exp([0.7, -2.5 + 1j])) <= 1e-12
    theta = 0.3
    rot = mat_exp(theta * J)
    assert np.allclose(rot, [[np.cos(theta), np.sin(theta)], [-np.sin(theta), np.cos(theta)]], atol=1e-14)


def test_mat_exp_inverse(rng):
    for _ in range(10):
        x = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
        x *= rng.uniform(0, 5) / np.linalg.norm(x, 2)
        assert np.max(np.abs(mat_exp(x) @ mat_exp(-x) - np.eye(5))) <= 1e-10


def test_pfaffian_cases():
    a = 2.5 - 1j
    assert pfaffian(a * J) == a
    x = np.zeros((4, 4), dtype=complex)
    x[:2, :2] = 3 * J
    x[2:, 2:] = -7 * J
    assert pfaffian(x) == pytest.approx(-21)
    assert pfaffian_expansion(x) == pytest.approx(-21)


def test_pfaffian_square_is_determinant(rng):
    a = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    x = a - a.T
    det = np.linalg.det(x)
    assert abs(pfaffian(x) ** 2 - det) <= 1e-9 * abs(det)


def test_pfaffian_agrees_with_expansion(rng):
    for n in (2, 4, 6, 8):
        a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        x = a - a.T
        oracle = pfaffian_expansion(x)
        assert abs(pfaffian(x) - oracle) <= 1e-10 * max(1, abs(oracle))


def test_pfaffian_orthogonal_invariance(rng):
    a = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    x = a - a.T
    g = random_orthogonal(6, rng)
    assert rel_err(pfaffian(g @ x @ g.T), pfaffian(x)) <= 1e-8


def test_pfaffian_errors():
    with pytest.raises(DimensionError):
        pfaffian(np.zeros((3, 3)))
    with pytest.raises(SkewnessError):
        pfaffian(np.eye(2))


def test_numerical_rank():
    e1, e2 = np.array([[1.0, 0.0]]), np.array([[0.0, 1.0]])
    assert numerical_rank([e1, e2, e1 + e2]) == 2
    assert numerical_rank([np.zeros((1, 2))]) == 0
    with pytest.raises(ValueError):
        numerical_rank([])


def test_numerical_rank_random(rng):
    for k in range(1, 6):
        vecs = [rng.normal(size=(3, 3)) for _ in range(k)]
        assert numerical_rank(vecs) == k


@settings(max_examples=40, deadline=None)
@given(
    st.lists(
        st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
        min_size=1,
        max_size=6,
    )
)
def test_roots_of_expanded_product(roots):
    roots = np.array(roots)
    spread = min(
        [abs(a - b) for k, a in enumerate(roots) for b in roots[k + 1 :]] + [np.inf]
    )
    assume(spread >= 0.1)
    found = poly_roots(poly_from_roots(roots))
    assert rel_err(lex_sort(found), lex_sort(roots)) <= 1e-7
