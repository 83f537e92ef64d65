import json
import random

import pytest

from terqf.forms import QuadPoly, TernaryForm, poly_theta, theta_coefficients
from terqf.identities import (FormTheta, PolyTheta, Side, ThetaRelation, builtin_catalog,
                              catalog_groups, chain_identities_133200, eta_coefficients,
                              eta_product, eta_product_direct, export_catalog, residue_classes,
                              substituted, verify_relation)


def test_eta_coefficients():
    assert eta_coefficients(7).to_list() == [1, -1, -1, 0, 0, 1, 0, 1]
    assert eta_coefficients(0).to_list() == [1]
    assert eta_coefficients(400) == eta_product_direct(400)


def test_eta_product():
    assert eta_product((), 0, 5).to_list() == [1, 0, 0, 0, 0, 0]
    s = eta_product(((4, 2), (16, 1)), 1, 40).scale(4)
    assert s[0] == 0 and s[1] == 4
    direct = (eta_product_direct(10).dilate(4) ** 2) * eta_product_direct(3).dilate(16)
    assert s.to_list()[1:41] == [4 * c for c in direct.truncate(39).to_list()]


def _by_name():
    return {r.name: r for r in builtin_catalog()}


def test_catalog_is_large_and_named_uniquely():
    rels = builtin_catalog()
    assert len(rels) >= 30
    assert len({r.name for r in rels}) == len(rels)
    assert sum(r.is_vanishing for r in rels) >= 5


@pytest.mark.parametrize("group", sorted(catalog_groups()))
def test_catalog_group_holds(group):
    for rel in catalog_groups()[group]:
        v = verify_relation(rel, 300)
        assert v.holds, (rel.name, v)


def test_named_relations():
    rels = _by_name()
    assert verify_relation(rels["x2+y2+2z2-even"], 500).holds
    assert verify_relation(rels["x2+y2+2z2-odd"], 500).holds
    assert verify_relation(rels["genus-difference-eta"], 200).holds


def test_perturbed_relation_fails_at_first_odd_index():
    good = _by_name()["x2+y2+2z2-odd"]
    bad = ThetaRelation("perturbed", "2R(1,1,2,0,0,0;2n+1) = R(1,1,1,0,0,0;4n+2)",
                        Side(2, good.lhs.source, 2, 1), good.rhs)
    v = verify_relation(bad, 100)
    assert not v.holds
    assert v.index == 0  # the progression value 2n+1 = 1
    assert (v.lhs_value, v.rhs_value) == (8, 12)


def test_vanishing_relation_reports_first_nonzero():
    src = FormTheta(TernaryForm(1, 1, 1, 0, 0, 0))
    rel = ThetaRelation("wrong-zero", "R(1,1,1,0,0,0;8n+3) = 0", Side(1, src), None, 8, (3,))
    v = verify_relation(rel, 50)
    assert not v.holds and v.index == 3 and v.lhs_value == 8


def test_parity_subsums_partition_the_theta():
    form = TernaryForm(1, 1, 1, 0, 0, 0)
    N = 300
    full = theta_coefficients(form, N)
    mixed = [lambda x, y, z: x == y != z, lambda x, y, z: x == z != y, lambda x, y, z: y == z != x]
    pieces = [FormTheta(form, residue_classes(2, p)).series(N) for p in mixed]
    equal = FormTheta(form, residue_classes(2, lambda x, y, z: x == y == z)).series(N)
    assert pieces[0] + pieces[1] + pieces[2] + equal == full
    # the three mixed subsums agree by symmetry of x^2+y^2+z^2
    assert pieces[0] == pieces[1] == pieces[2]


def test_substitution_builds_the_composite_polynomial():
    rng = random.Random(5)
    form = TernaryForm(1, 1, 1, 0, 0, 0)
    M = ((-1, 1, 1), (1, -1, 1), (1, 1, -1))  # x -> -x+y+z and its cyclic versions
    P = substituted(form, M, (1, 0, 0))
    for _ in range(200):
        v = [rng.randint(-9, 9) for _ in range(3)]
        w = [sum(M[i][j] * v[j] for j in range(3)) + (1, 0, 0)[i] for i in range(3)]
        assert P(*v) == form(*w)


def test_substituted_theta_equals_congruence_theta():
    # v -> Mv maps Z^3 bijectively onto {x = y = z (mod 2)}: x + y = 2 v3 and so on
    form = TernaryForm(1, 1, 1, 0, 0, 0)
    M = ((-1, 1, 1), (1, -1, 1), (1, 1, -1))
    lhs = poly_theta(substituted(form, M), 200)
    rhs = FormTheta(form, residue_classes(2, lambda x, y, z: x == y == z)).series(200)
    assert lhs == rhs


def test_chain_steps_match_expectations():
    for rel, expected in chain_identities_133200():
        assert verify_relation(rel, 300).holds is expected, rel.name


def test_poly_theta_with_linear_part_against_box_count():
    P = PolyTheta(QuadPoly((1, 2, 3, 0, 1, 0), (1, -2, 3), 4))
    N = 60
    counts = [0] * (N + 1)
    r = range(-12, 13)
    for x in r:
        for y in r:
            for z in r:
                v = P.poly(x, y, z)
                if v <= N:
                    counts[v] += 1
    assert P.series(N).to_list() == counts


def test_export_catalog(tmp_path):
    path = tmp_path / "rels.json"
    export_catalog(path, N=60)
    payload = json.loads(path.read_text())
    assert payload["format"] == "terqf-theta-relations"
    assert len(payload["relations"]) == len(builtin_catalog())
    assert all(r["verified_to"] == 60 for r in payload["relations"])
    assert all(r["statement"] for r in payload["relations"])
