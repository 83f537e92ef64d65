import random
from fractions import Fraction
from math import pi

import pytest
from sympy import factorint, primerange

from terqf.binaryqf import valuation
from terqf.closedforms import CLOSED_FORMS
from terqf.forms import TernaryForm, representation_count
from terqf.localdensity import (BRUTE_FORCE_LIMIT, SiegelInconsistency, SymbolicReal,
                                brute_force_count, good_prime_density, l_value, l_value_general,
                                l_value_partial_sum, local_density, local_density_brute,
                                local_density_exact, local_density_finite, p_correction,
                                siegel_assembly, siegel_count, solution_count)

IDONEAL = [(1, 1, 1, 0, 0, 0), (1, 1, 1, 1, 1, 1), (3, 3, 3, -2, 2, 2), (1, 3, 3, 2, 0, 0),
           (5, 13, 20, -12, 4, 2), (7, 15, 23, 10, 2, 6), (1, 3, 3, 0, 0, 0), (1, 1, 3, 0, 0, 0),
           (1, 2, 3, 0, 0, 0)]


@pytest.mark.parametrize("form", IDONEAL)
def test_stratified_counts_match_brute_force(form):
    for p in (2, 3, 5):
        k = 1
        while p ** (3 * k) <= BRUTE_FORCE_LIMIT:
            for n in range(0, 40):
                assert solution_count(form, p, n, k) == brute_force_count(form, p, n, k), (p, n, k)
            k += 1


def test_brute_force_refuses_large_rings():
    with pytest.raises(ValueError):
        brute_force_count((1, 1, 1, 0, 0, 0), 2, 1, 7)


def test_stratified_counting_handles_deep_lifts():
    # 2^20 residues per coordinate: far beyond any direct scan
    assert local_density_finite((7, 15, 23, 10, 2, 6), 2, 6, 20) == 0
    assert local_density_finite((1, 1, 1, 0, 0, 0), 2, 5, 20) == Fraction(3, 2)


@pytest.mark.parametrize("form", IDONEAL)
def test_iterated_density_equals_exact_limit(form):
    for p in (2, 3):
        for n in range(1, 120):
            assert local_density(form, p, n).value == local_density_exact(form, p, n)


def test_stabilization_depth_exceeds_valuation():
    for n in (1, 12, 64, 96):
        d = local_density((5, 13, 20, -12, 4, 2), 2, n)
        assert d.k_used > valuation(4 * n * 4096, 2)


def test_named_density_values():
    assert local_density((1, 1, 1, 0, 0, 0), 2, 5).value == Fraction(3, 2)
    assert local_density((1, 1, 1, 0, 0, 0), 2, 15).value == 0
    assert local_density((1, 2, 3, 0, 0, 0), 2, 11).value == 1
    assert local_density((5, 13, 20, -12, 4, 2), 2, 13).value == 4
    assert local_density((7, 15, 23, 10, 2, 6), 2, 30).value == 0
    assert local_density((1, 3, 3, 0, 0, 0), 3, 5).value == 0


@pytest.mark.parametrize("slug,form,p,closed,rng", CLOSED_FORMS, ids=[c[0] for c in CLOSED_FORMS])
def test_closed_forms_agree_with_lifting(slug, form, p, closed, rng):
    for n in list(rng)[:600]:
        expected = closed(n)
        if expected is not None:
            assert local_density(form, p, n).value == expected, n


def test_closed_form_3_adic_for_123_against_brute_force():
    # every residue class of v modulo 9 with b <= 2, against a direct scan where one is allowed
    form = (1, 2, 3, 0, 0, 0)
    closed = dict((c[0], c[3]) for c in CLOSED_FORMS)["123-p3"]
    for b in range(3):
        for v in range(1, 40):
            if v % 9 == 0:
                continue
            n = 9 ** b * v
            assert local_density(form, 3, n).value == closed(n)
            if b == 0:
                k = 4  # 3^12 points; stable since ord_3(n) <= 1
                assert local_density_brute(form, 3, n, k) == closed(n)


def test_good_prime_examples():
    assert good_prime_density(4, 5, 1) == Fraction(6, 5)
    assert good_prime_density(4, 3, 1) == Fraction(2, 3)
    assert local_density_finite((1, 1, 1, 0, 0, 0), 5, 1, 4) == Fraction(6, 5)
    with pytest.raises(ValueError):
        good_prime_density(4, 2, 1)


def test_good_prime_density_randomized_against_brute_force():
    rng = random.Random(3)
    done = 0
    while done < 50:
        form = rng.choice(IDONEAL)
        Delta = TernaryForm(*form).discriminant()
        p = rng.choice([3, 5, 7, 11, 13])
        if (2 * Delta) % p == 0:
            continue
        n = rng.randint(1, 200) * rng.choice([1, p])
        k = valuation(n, p) + 1
        if p ** (3 * k) > BRUTE_FORCE_LIMIT:
            continue
        assert good_prime_density(Delta, p, n) == local_density_brute(form, p, n, k)
        done += 1


@pytest.mark.parametrize("form", IDONEAL)
def test_good_prime_density_matches_lifting(form):
    Delta = TernaryForm(*form).discriminant()
    for p in primerange(3, 14):
        if (2 * Delta) % p == 0:
            continue
        for n in range(1, 201):
            assert good_prime_density(Delta, p, n) == local_density(form, p, n).value


def test_l_values():
    assert l_value(1) == SymbolicReal(Fraction(1, 4), 1)
    assert l_value(3) == SymbolicReal(Fraction(1, 2), 3)
    assert l_value(5) == SymbolicReal(Fraction(1), 5)
    with pytest.raises(ValueError):
        l_value(12)
    assert l_value_general(20) == l_value_general(5)
    for m in (1, 2, 3, 5, 6, 7, 11, 14, 15, 19, 23):
        assert l_value_general(m) == l_value(m)


def test_l_value_of_nine_against_partial_sum():
    value = l_value_general(9)
    assert value == SymbolicReal(Fraction(1, 3), 1)
    assert abs(float(value) - l_value_partial_sum(9, 10 ** 6)) < 1e-3


def test_l_value_class_number_bridge_for_nonsquarefree_arguments():
    from terqf.binaryqf import class_number
    for n in range(1, 400):
        w = 4 if n == 1 else 2  # units of discriminant -4n
        expected = SymbolicReal(Fraction(class_number(-4 * n), w), n)
        assert l_value_general(n) == expected, n


def test_p_correction():
    assert p_correction(30, 4) == 1
    assert p_correction(9, 4) == Fraction(5, 4)
    for n in range(1, 501):
        assert p_correction(n, 4 ** 2) == p_correction(n, 4) == p_correction(n, 1) == p_correction(n, 64)


@pytest.mark.parametrize("Delta", [4, 32, 36, 24])
def test_p_correction_collects_square_dividing_prime_densities(Delta):
    # each factor of P is d_p(n) / (1 - p^-2) for the odd primes with p^2 | n, p not dividing Delta
    for n in range(1, 501):
        expected = Fraction(1)
        for p, e in factorint(n).items():
            if e >= 2 and (2 * Delta) % p:
                expected *= good_prime_density(Delta, p, n) / (1 - Fraction(1, p * p))
        assert p_correction(n, Delta) == expected, n


def test_siegel_examples():
    assert siegel_count((1, 1, 1, 0, 0, 0), 5) == 24
    assert siegel_count((1, 1, 1, 0, 0, 0), 9) == 30
    assert siegel_count((1, 2, 3, 0, 0, 0), 1) == 2
    assert siegel_count((1, 3, 3, 0, 0, 0), 1) == 2
    assert siegel_count((1, 1, 1, 0, 0, 0), 0) == 1


@pytest.mark.parametrize("form", IDONEAL)
def test_siegel_equals_enumeration_small_n(form):
    for n in range(1, 121):
        assert siegel_count(form, n) == representation_count(form, n)


def test_non_idoneal_assembly_reports_breakdown():
    # (1,3,3,1,0,1) shares its genus with (1,1,11,1,1,1); the assembly gives the genus average
    found = None
    for n in range(1, 200):
        asm = siegel_assembly((1, 3, 3, 1, 0, 1), n)
        if asm.count.denominator != 1:
            found = n
            break
    if found is not None:
        with pytest.raises(SiegelInconsistency) as exc:
            siegel_count((1, 3, 3, 1, 0, 1), found)
        assert exc.value.breakdown["n"] == found
    mismatch = [n for n in range(1, 200)
                if siegel_assembly((1, 3, 3, 1, 0, 1), n).count != representation_count((1, 3, 3, 1, 0, 1), n)]
    assert mismatch


def test_product_formula_sanity():
    cases = [((1, 1, 1, 0, 0, 0), 5), ((1, 2, 3, 0, 0, 0), 7), ((5, 13, 20, -12, 4, 2), 21),
             ((1, 3, 3, 0, 0, 0), 10), ((7, 15, 23, 10, 2, 6), 39)]
    for form, n in cases:
        Delta = TernaryForm(*form).discriminant()
        prod = 1.0
        for p in primerange(3, 10 ** 4):
            if (2 * Delta) % p:
                prod *= float(good_prime_density(Delta, p, n))
        odd = 1.0
        for p in factorint(Delta):
            if p > 2:
                odd /= 1 - 1 / p ** 2
        rhs = 8 / pi ** 2 * float(l_value_general(Delta * n)) * float(p_correction(n, Delta)) * odd
        assert abs(prod / rhs - 1) < 0.01
