import random

import pytest
from hypothesis import given, settings, strategies as st

from terqf.forms import (NotPositiveDefinite, TernaryForm, box_scan, discriminant,
                         enumerate_representations, evaluate, gram_matrix, is_positive_definite,
                         representation_count, theta_array, theta_coefficients)


@pytest.mark.parametrize("form,delta", [
    ((1, 1, 1, 0, 0, 0), 4),
    ((1, 1, 1, 1, 1, 1), 2),
    ((7, 15, 23, 10, 2, 6), 8192),
    ((1, 3, 3, 2, 0, 0), 32),
    ((5, 13, 20, -12, 4, 2), 4096),
])
def test_discriminant(form, delta):
    assert discriminant(form) == delta
    assert round(float(__import__("numpy").linalg.det(gram_matrix(form)))) == 2 * delta


def test_positive_definiteness():
    assert is_positive_definite((1, 1, 1, 0, 0, 0))
    assert not is_positive_definite((1, 1, 1, 0, 0, 3))
    assert is_positive_definite((5, 13, 20, -12, 4, 2))
    with pytest.raises(NotPositiveDefinite):
        enumerate_representations((1, 1, 1, 0, 0, 3), 1)


def test_evaluate():
    assert evaluate((1, 3, 4, 3, 1, 0), 4, 1, 0) == 19
    assert evaluate((1, 2, 3, 0, 0, 0), 1, 1, 1) == 6
    assert evaluate((7, 15, 23, 10, 2, 6), 0, 0, 0) == 0


def test_parse_grammar():
    assert TernaryForm.parse("5,13,20,-12,4,2") == TernaryForm(5, 13, 20, -12, 4, 2)
    assert str(TernaryForm(3, 3, 3, -2, 2, 2)) == "3,3,3,-2,2,2"
    for bad in ("1,1,1", "1, 1,1,0,0,0", "1,1,1,0,0,x", ""):
        with pytest.raises(ValueError):
            TernaryForm.parse(bad)


def test_representations_of_19_by_13431():
    reps = enumerate_representations((1, 3, 4, 3, 1, 0), 19)
    assert len(reps) == 12
    assert (4, 1, 0) in reps and (-3, -2, 2) in reps
    assert list(reps.triples) == sorted(reps.triples)


def test_small_counts():
    assert list(enumerate_representations((1, 2, 3, 0, 0, 0), 0)) == [(0, 0, 0)]
    assert len(enumerate_representations((1, 1, 1, 0, 0, 0), 7)) == 0
    assert representation_count((1, 1, 1, 0, 0, 0), 1) == 6
    assert representation_count((1, 1, 1, 0, 0, 0), 2) == 12
    assert representation_count((5, 13, 20, -12, 4, 2), 16) == 2
    assert representation_count((1, 1, 1, 0, 0, 0), -3) == 0
    assert theta_coefficients((1, 1, 1, 0, 0, 0), 3).to_list() == [1, 6, 12, 8]


FORMS = [(1, 1, 1, 0, 0, 0), (1, 1, 1, 1, 1, 1), (3, 3, 3, -2, 2, 2), (1, 3, 3, 2, 0, 0),
         (5, 13, 20, -12, 4, 2), (7, 15, 23, 10, 2, 6), (1, 2, 3, 0, 0, 0), (1, 3, 3, 1, 0, 1)]


@pytest.mark.parametrize("form", FORMS)
def test_theta_sweep_matches_pointwise_counts(form):
    N = 150
    R = theta_array(form, N)
    for n in range(N + 1):
        reps = enumerate_representations(form, n)
        assert R[n] == len(reps)
        assert all(tuple(-t for t in v) in reps for v in reps)
        if n:
            assert len(reps) % 2 == 0


def test_theta_of_112_at_even_index():
    a = theta_array((1, 1, 2, 0, 0, 0), 1000)
    b = theta_array((1, 1, 1, 0, 0, 0), 500)
    assert all(a[2 * n] == b[n] for n in range(501))


def test_sum_of_three_squares_is_4_periodic():
    R = theta_array((1, 1, 1, 0, 0, 0), 8000)
    assert all(R[4 * n] == R[n] for n in range(2001))


def test_intertwined_diagonal_forms():
    R133 = theta_array((1, 3, 3, 0, 0, 0), 3000)
    R113 = theta_array((1, 1, 3, 0, 0, 0), 3000)
    for n in range(1001):
        assert R133[3 * n] == R113[n]
        assert R133[n] == R113[3 * n]


def _random_pd_form(rng):
    while True:
        a, b, c = (rng.randint(1, 6) for _ in range(3))
        d, e, f = (rng.randint(-4, 4) for _ in range(3))
        form = TernaryForm(a, b, c, d, e, f)
        if form.is_positive_definite():
            return form


def _box_bound(form, n):
    # smallest Gram eigenvalue, shaved down, bounds |v|^2 <= 2n / lambda_min
    import numpy as np
    lam = float(np.linalg.eigvalsh(np.array(form.gram(), dtype=float)).min()) * 0.999
    return int((2 * n / lam) ** 0.5) + 1


def test_box_scan_agrees_with_ellipsoid_enumeration():
    rng = random.Random(20240611)
    for _ in range(50):
        form = _random_pd_form(rng)
        n = rng.randint(0, 200)
        assert box_scan(form, n, _box_bound(form, n)) == list(enumerate_representations(form, n))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.integers(1, 5),
       st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(0, 60))
def test_enumeration_is_exactly_the_solution_set(a, b, c, d, e, f, n):
    form = TernaryForm(a, b, c, d, e, f)
    if not form.is_positive_definite():
        return
    reps = enumerate_representations(form, n)
    assert all(form(*v) == n for v in reps)
    assert list(reps) == box_scan(form, n, _box_bound(form, n))
