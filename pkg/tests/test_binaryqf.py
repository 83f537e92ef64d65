import random

import pytest
from hypothesis import given, strategies as st
from sympy import factorint, jacobi_symbol

from terqf.binaryqf import (BinaryForm, InvalidDiscriminant, catalog_entries, catalog_h_le,
                            class_group, class_number, class_number_via_conductor,
                            class_numbers_upto, compose, decompose_n, fundamental_decomposition,
                            is_fundamental, kronecker, load_catalog, principal_form,
                            reduce_form, reduced_forms, save_catalog)


def kronecker_oracle(a, n):
    # multiplicative definition straight from the factorization of n
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -1
    for p, e in factorint(n).items():
        if p == 2:
            if a % 2 == 0:
                k = 0
            else:
                k = 1 if a % 8 in (1, 7) else -1
        else:
            k = jacobi_symbol(a % p, p)
        result *= k ** e
    return result


@given(st.integers(-300, 300), st.integers(-300, 300))
def test_kronecker_matches_factorization(a, n):
    assert kronecker(a, n) == kronecker_oracle(a, n)


def test_reduced_forms():
    assert reduced_forms(-3) == [BinaryForm(1, 1, 1)]
    assert len(reduced_forms(-23)) == 3
    assert len(reduced_forms(-20)) == 2
    for D in (0, 5, -2, -5):
        with pytest.raises(InvalidDiscriminant):
            reduced_forms(D)


def test_class_numbers():
    assert class_number(-163) == 1
    assert class_number(-95) == 8
    assert class_group(-420).label == "Z2xZ2xZ2"
    assert class_group(-84).label == "Z2xZ2"
    assert class_group(-47).label == "Z5"
    assert class_group(-2308).label == "Z8"


def test_composition_identity_and_inverse():
    for D in (-23, -84, -420, -2308, -47):
        e = principal_form(D)
        for g in reduced_forms(D):
            assert compose(e, g) == reduce_form(g)
            assert compose(g, g.inverse()) == e


def test_order_three_group():
    reps = reduced_forms(-23)
    g = [r for r in reps if r != principal_form(-23)][0]
    assert compose(g, g) not in (g, principal_form(-23))


def _random_sl2(rng):
    # random word in the generators T^k = (1 k; 0 1) and S = (0 -1; 1 0)
    p, q, r, t = 1, 0, 0, 1
    for _ in range(rng.randint(1, 5)):
        k = rng.randint(-3, 3)
        p, q, r, t = p, p * k + q, r, r * k + t
        p, q, r, t = q, -p, t, -r
    assert p * t - q * r == 1
    return p, q, r, t


def test_composition_well_defined_on_classes():
    rng = random.Random(11)
    for D in (-23, -56, -84, -231, -420, -1155, -2308):
        reps = reduced_forms(D)
        for _ in range(15):
            g1, g2 = rng.choice(reps), rng.choice(reps)
            h1 = g1.transform(*_random_sl2(rng))
            h2 = g2.transform(*_random_sl2(rng))
            assert h1.discriminant == D and h2.discriminant == D
            assert compose(h1, h2) == compose(g1, g2)


def test_group_tables_are_abelian_groups():
    for e in catalog_entries(8):
        if -e.D > 1500:
            continue
        G = class_group(e.D)
        n = G.h
        ident = G.representatives.index(principal_form(e.D))
        prod = 1
        for d in G.structure:
            prod *= d
        assert prod == n
        for i in range(n):
            assert G.table[ident][i] == i
            assert n % G.order_of(i) == 0
            for j in range(n):
                assert G.table[i][j] == G.table[j][i]
                for k in range(0, n, max(1, n // 3)):
                    assert G.table[G.table[i][j]][k] == G.table[i][G.table[j][k]]


def test_fundamental_decomposition():
    fd = fundamental_decomposition(-12)
    assert (fd.d, fd.cond) == (-3, 2)
    assert (fundamental_decomposition(-75).d, fundamental_decomposition(-75).cond) == (-3, 5)
    assert fundamental_decomposition(-23).cond == 1
    assert fundamental_decomposition(-3).unit_factor == 6
    assert fundamental_decomposition(-4).unit_factor == 4
    assert fundamental_decomposition(-12).unit_factor == 2


def test_conductor_formula_examples():
    assert class_number_via_conductor(-3, 2) == 1
    assert class_number_via_conductor(-4, 4) == class_number(-64) == 2
    assert class_number_via_conductor(-3, 1) == 1


def test_conductor_formula_up_to_10000():
    sieve = class_numbers_upto(10000)
    for D, h in sieve.items():
        fd = fundamental_decomposition(D)
        assert class_number_via_conductor(fd.d, fd.cond) == h, D


def test_sieve_matches_reduced_form_count():
    sieve = class_numbers_upto(2000)
    for D in range(-2000, 0):
        if D % 4 in (0, 1):
            assert sieve[D] == class_number(D)


def test_decompose_n():
    for n, (a, m, d) in {48: (2, 3, 1), 45: (0, 5, 3), 1: (0, 1, 1)}.items():
        dec = decompose_n(n)
        assert (dec.a, dec.m, dec.d) == (a, m, d)
    for n in range(1, 2000):
        dec = decompose_n(n)
        assert 4 ** dec.a * dec.m * dec.d ** 2 == n and dec.d % 2 == 1


def test_small_catalog_bounds():
    assert catalog_h_le(1) == {"Z1": [3, 4, 7, 8, 11, 12, 16, 19, 27, 28, 43, 67, 163]}
    with pytest.raises(ValueError):
        catalog_h_le(9)


def test_catalog_round_trip(tmp_path):
    entries = catalog_entries(2)
    path = tmp_path / "cat.json"
    save_catalog(entries, path)
    assert load_catalog(path) == entries


def test_is_fundamental():
    assert [d for d in range(-30, 0) if is_fundamental(d)] == [-24, -23, -20, -19, -15, -11, -8, -7, -4, -3]
