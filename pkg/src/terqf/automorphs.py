"""Automorph groups of positive ternary forms and orbits of representations.

An automorph is an integer matrix M with M^T G M = G, acting on column
vectors by v -> M v.  Two representations of n are "essentially the same"
when some automorph carries one to the other.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

from .forms import RepresentationSet, TernaryForm, enumerate_representations, _require_pd

Matrix = tuple[tuple[int, int, int], tuple[int, int, int], tuple[int, int, int]]

IDENTITY: Matrix = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
NEGATION: Matrix = ((-1, 0, 0), (0, -1, 0), (0, 0, -1))


def matmul(A: Matrix, B: Matrix) -> Matrix:
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(3)) for j in range(3)) for i in range(3)
    )


def transpose(A: Matrix) -> Matrix:
    return tuple(tuple(A[j][i] for j in range(3)) for i in range(3))


def det(A: Matrix) -> int:
    return (A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1])
            - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0])
            + A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]))


def apply(aut: Matrix, v: Sequence[int]) -> tuple[int, int, int]:
    return tuple(aut[i][0] * v[0] + aut[i][1] * v[1] + aut[i][2] * v[2] for i in range(3))


def is_automorph(form, M: Matrix) -> bool:
    form = TernaryForm.coerce(form)
    G = form.gram()
    return abs(det(M)) == 1 and matmul(matmul(transpose(M), G), M) == G


@dataclass(frozen=True)
class AutomorphGroup:
    form: TernaryForm
    elements: tuple[Matrix, ...]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, M):
        return M in set(self.elements)


@lru_cache(maxsize=256)
def _automorphs(form: TernaryForm) -> tuple[Matrix, ...]:
    G = form.gram()
    cols = [enumerate_representations(form, form.a).triples,
            enumerate_representations(form, form.b).triples,
            enumerate_representations(form, form.c).triples]
    B = form.bilinear
    found = []
    for u, v in product(cols[0], cols[1]):
        if B(u, v) != G[0][1]:
            continue
        for w in cols[2]:
            if B(u, w) != G[0][2] or B(v, w) != G[1][2]:
                continue
            M = tuple((u[i], v[i], w[i]) for i in range(3))
            if abs(det(M)) == 1:
                found.append(M)
    found.sort()
    return tuple(found)


def automorph_group(form) -> AutomorphGroup:
    """Every automorph of a positive definite form.

    The columns of an automorph are representations of a, b and c whose
    pairwise bilinear values reproduce f, e and d; all such triples are
    checked, so the list is complete.
    """
    form = TernaryForm.coerce(form)
    _require_pd(form)
    return AutomorphGroup(form, _automorphs(form))


@dataclass(frozen=True)
class OrbitPartition:
    n: int
    orbits: tuple[tuple[tuple[int, int, int], ...], ...]

    def __len__(self):
        return len(self.orbits)

    @property
    def sizes(self) -> list[int]:
        return [len(o) for o in self.orbits]


def orbit_of(group: AutomorphGroup, v) -> tuple[tuple[int, int, int], ...]:
    return tuple(sorted({apply(M, v) for M in group.elements}))


def stabilizer(group: AutomorphGroup, v) -> list[Matrix]:
    v = tuple(v)
    return [M for M in group.elements if apply(M, v) == v]


def orbit_partition(form, n: int) -> OrbitPartition:
    """Split the representations of n into automorph orbits.

    Blocks are sorted internally and ordered by their least member.
    """
    form = TernaryForm.coerce(form)
    group = automorph_group(form)
    reps: RepresentationSet = enumerate_representations(form, n)
    seen = set()
    orbits = []
    for v in reps.triples:
        if v in seen:
            continue
        orb = orbit_of(group, v)
        seen.update(orb)
        orbits.append(orb)
    return OrbitPartition(n, tuple(orbits))


def essential_count(form, n: int) -> int:
    """Number of essentially distinct representations of n."""
    if n < 0:
        return 0
    return len(orbit_partition(form, n))


def is_essentially_unique(form, n: int) -> bool:
    return essential_count(form, n) == 1


def check_group_axioms(group: AutomorphGroup) -> None:
    """Exhaustive closure/identity/inverse check; raises AssertionError on failure."""
    elems = set(group.elements)
    assert IDENTITY in elems, "identity missing"
    assert NEGATION in elems, "negation missing"
    for A in group.elements:
        assert any(matmul(A, B) == IDENTITY for B in group.elements), f"no inverse for {A}"
        for B in group.elements:
            assert matmul(A, B) in elems, f"not closed: {A} * {B}"
        assert is_automorph(group.form, A)
