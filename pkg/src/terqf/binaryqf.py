"""Positive definite binary quadratic forms, class numbers and class groups.

Also hosts the small arithmetic helpers (Kronecker symbol, squarefree
parts, the 4^a * m * d^2 split of an integer) that the density code shares.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from pathlib import Path
from typing import Optional

import numpy as np
from sympy import factorint

# Largest |d| of a fundamental discriminant with h(d) <= 8, taken as given.
FUNDAMENTAL_BOUND = 6307
# 3 * 90^2: the largest |D| reachable from d = -3 at the maximal conductor
CATALOG_CEILING = 24300
# Conductor ceilings implied by h(d f^2) <= 8, for d = -3, d = -4 and |d| > 4.
CONDUCTOR_BOUNDS = {-3: 90, -4: 60}
CONDUCTOR_BOUND_OTHER = 30
CATALOG_VERSION = 1


class InvalidDiscriminant(ValueError):
    pass


# --- arithmetic helpers -----------------------------------------------------

def jacobi(a: int, n: int) -> int:
    if n <= 0 or n % 2 == 0:
        raise ValueError("Jacobi symbol needs an odd positive modulus")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for arbitrary integers a, n."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -1
    v = (n & -n).bit_length() - 1
    if v:
        if a % 2 == 0:
            return 0
        n >>= v
        if v % 2 and a % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    return result * jacobi(a, n)


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for e in factorint(abs(n)).values())


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """n = core * s^2 with core squarefree (n > 0)."""
    core, s = 1, 1
    for p, e in factorint(n).items():
        core *= p ** (e % 2)
        s *= p ** (e // 2)
    return core, s


@dataclass(frozen=True)
class ArithmeticDecomposition:
    n: int
    four_power_exponent: int
    squarefree_core: int
    odd_square_root: int

    @property
    def a(self):
        return self.four_power_exponent

    @property
    def m(self):
        return self.squarefree_core

    @property
    def d(self):
        return self.odd_square_root

    @property
    def v(self):
        """The part of n not divisible by 4, m * d^2."""
        return self.m * self.d * self.d


def decompose_n(n: int) -> ArithmeticDecomposition:
    """n = 4^a * m * d^2 with m squarefree and d odd."""
    if n < 1:
        raise ValueError("n must be positive")
    a, v = 0, n
    while v % 4 == 0:
        v //= 4
        a += 1
    m, d = 1, 1
    for p, e in factorint(v).items():
        m *= p ** (e % 2)
        d *= p ** (e // 2)
    assert d % 2 == 1
    return ArithmeticDecomposition(n, a, m, d)


# --- binary forms -------------------------------------------------------------

@dataclass(frozen=True)
class BinaryForm:
    A: int
    B: int
    C: int

    @property
    def discriminant(self) -> int:
        return self.B * self.B - 4 * self.A * self.C

    def __call__(self, x: int, y: int) -> int:
        return self.A * x * x + self.B * x * y + self.C * y * y

    def is_primitive(self) -> bool:
        return gcd(gcd(self.A, self.B), self.C) == 1

    def is_reduced(self) -> bool:
        A, B, C = self.A, self.B, self.C
        if not (abs(B) <= A <= C):
            return False
        if (abs(B) == A or A == C) and B < 0:
            return False
        return True

    def inverse(self) -> "BinaryForm":
        return reduce_form(BinaryForm(self.A, -self.B, self.C))

    def transform(self, p: int, q: int, r: int, s: int) -> "BinaryForm":
        """The form g(p X + q Y, r X + s Y); (p q; r s) should be in SL2(Z)."""
        A, B, C = self.A, self.B, self.C
        return BinaryForm(self(p, r),
                          2 * A * p * q + B * (p * s + q * r) + 2 * C * r * s,
                          self(q, s))

    def __str__(self):
        return f"({self.A},{self.B},{self.C})"


def _check_discriminant(D: int):
    if D >= 0 or D % 4 not in (0, 1):
        raise InvalidDiscriminant(f"{D} is not a negative discriminant")


def reduce_form(g: BinaryForm) -> BinaryForm:
    A, B, C = g.A, g.B, g.C
    if A <= 0 or B * B - 4 * A * C >= 0:
        raise ValueError(f"{g} is not positive definite")
    while True:
        # bring B into (-A, A]
        if not (-A < B <= A):
            k = (A - B) // (2 * A)
            C = A * k * k + B * k + C
            B = B + 2 * A * k
        if A > C:
            A, B, C = C, -B, A
            continue
        if A == C and B < 0:
            B = -B
        return BinaryForm(A, B, C)


@lru_cache(maxsize=None)
def _reduced_forms(D: int) -> tuple[BinaryForm, ...]:
    out = []
    a_max = isqrt(-D // 3)
    for A in range(1, a_max + 1):
        for B in range(-A + 1, A + 1):
            if (B - D) % 2:
                continue
            num = B * B - D
            if num % (4 * A):
                continue
            C = num // (4 * A)
            if C < A or (C == A and B < 0):
                continue
            if gcd(gcd(A, B), C) != 1:
                continue
            out.append(BinaryForm(A, B, C))
    return tuple(out)


def reduced_forms(D: int) -> list[BinaryForm]:
    """The reduced primitive forms of discriminant D, one per class."""
    _check_discriminant(D)
    return list(_reduced_forms(D))


def class_number(D: int) -> int:
    _check_discriminant(D)
    return len(_reduced_forms(D))


def principal_form(D: int) -> BinaryForm:
    _check_discriminant(D)
    return BinaryForm(1, D % 2, (D % 2 - D) // 4)


def _coprime_representative(g: BinaryForm, m: int) -> BinaryForm:
    """An equivalent form whose leading coefficient is coprime to m."""
    if gcd(g.A, m) == 1:
        return g
    bound = 1
    while True:
        for x in range(-bound, bound + 1):
            for y in range(0, bound + 1):
                if gcd(x, y) != 1 or (y == 0 and x != 1):
                    continue
                val = g(x, y)
                if gcd(val, m) == 1:
                    # complete (x, y) to a matrix of determinant 1
                    _, u, w = _xgcd(x, y)  # u x + w y = 1
                    # columns (x, y) and (-w, u): det = x u + y w = 1
                    return g.transform(x, -w, y, u)
        bound += 1


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _crt(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    g, p, _ = _xgcd(m1, m2)
    if (r2 - r1) % g:
        raise ValueError("incompatible congruences")
    lcm = m1 // g * m2
    t = (r2 - r1) // g * p % (m2 // g)
    return (r1 + m1 * t) % lcm, lcm


def compose(g1: BinaryForm, g2: BinaryForm) -> BinaryForm:
    """Dirichlet composition of two primitive forms of the same discriminant.

    g2 is first moved within its class so that its leading coefficient is
    coprime to that of g1 (which makes the pair united); the middle
    coefficient of the product then solves B = b1 mod 2a1, B = b2 mod 2a2.
    """
    D = g1.discriminant
    if g2.discriminant != D:
        raise InvalidDiscriminant(f"discriminants differ: {D} vs {g2.discriminant}")
    _check_discriminant(D)
    g2 = _coprime_representative(g2, g1.A)
    a1, b1, a2, b2 = g1.A, g1.B, g2.A, g2.B
    B, mod = _crt(b1 % (2 * a1), 2 * a1, b2 % (2 * a2), 2 * a2)
    A = a1 * a2
    assert (B * B - D) % (4 * A) == 0
    return reduce_form(BinaryForm(A, B, (B * B - D) // (4 * A)))


def form_power(g: BinaryForm, k: int) -> BinaryForm:
    result = principal_form(g.discriminant)
    for _ in range(k):
        result = compose(result, g)
    return result


# --- class groups ---------------------------------------------------------------

@dataclass(frozen=True)
class ClassGroup:
    D: int
    representatives: tuple[BinaryForm, ...]
    structure: tuple[int, ...]  # invariant factors d1 | d2 | ...
    table: tuple[tuple[int, ...], ...]  # table[i][j] = index of reps[i] * reps[j]

    @property
    def h(self) -> int:
        return len(self.representatives)

    @property
    def label(self) -> str:
        return structure_label(self.structure)

    def order_of(self, i: int) -> int:
        e = self.representatives.index(principal_form(self.D))
        k, x = 1, i
        while x != e:
            x = self.table[x][i]
            k += 1
        return k


def structure_label(structure) -> str:
    if not structure:
        return "Z1"
    return "x".join(f"Z{d}" for d in sorted(structure))


def _invariant_factors(h: int, table, identity: int) -> tuple[int, ...]:
    """Invariant factors of a finite abelian group from its multiplication table."""
    n = len(table)

    def power(x, k):
        r = identity
        for _ in range(k):
            r = table[r][x]
        return r

    elementary: list[int] = []
    for p, e in factorint(h).items():
        # count elements killed by p^j for j = 0..e
        killed = [sum(1 for x in range(n) if power(x, p ** j) == identity) for j in range(e + 1)]
        ranks = [valuation(k, p) for k in killed]
        # number of cyclic factors of order >= p^j is ranks[j] - ranks[j-1]
        ge = [ranks[j] - ranks[j - 1] for j in range(1, e + 1)] + [0]
        for j in range(1, e + 1):
            elementary.extend([p ** j] * (ge[j - 1] - ge[j]))
    # combine elementary divisors into invariant factors
    by_prime: dict[int, list[int]] = {}
    for q in elementary:
        p = next(iter(factorint(q)))
        by_prime.setdefault(p, []).append(q)
    for lst in by_prime.values():
        lst.sort(reverse=True)
    width = max((len(l) for l in by_prime.values()), default=0)
    factors = []
    for i in range(width):
        d = 1
        for lst in by_prime.values():
            if i < len(lst):
                d *= lst[i]
        factors.append(d)
    return tuple(sorted(factors))


@lru_cache(maxsize=None)
def class_group(D: int) -> ClassGroup:
    reps = tuple(reduced_forms(D))
    index = {g: i for i, g in enumerate(reps)}
    table = tuple(tuple(index[compose(g1, g2)] for g2 in reps) for g1 in reps)
    identity = index[principal_form(D)]
    structure = _invariant_factors(len(reps), table, identity)
    if structure == (1,):
        structure = ()
    return ClassGroup(D, reps, structure, table)


# --- conductors -----------------------------------------------------------------

def is_fundamental(d: int) -> bool:
    if d % 4 == 1:
        return is_squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def unit_count(D: int) -> int:
    return 6 if D == -3 else 4 if D == -4 else 2


@dataclass(frozen=True)
class FundamentalDecomposition:
    D: int
    d: int
    cond: int

    @property
    def unit_factor(self) -> int:
        return unit_count(self.D)


def fundamental_decomposition(D: int) -> FundamentalDecomposition:
    """D = d * f^2 with d fundamental."""
    _check_discriminant(D)
    core, s = squarefree_decomposition(-D)
    d = -core
    if d % 4 != 1:
        d *= 4
        if s % 2:
            raise InvalidDiscriminant(f"{D} is not a discriminant")
        s //= 2
    assert d * s * s == D and is_fundamental(d)
    return FundamentalDecomposition(D, d, s)


def class_number_via_conductor(d: int, cond: int) -> int:
    """h(d f^2) = h(d) f (w_D / w_d) prod_{p | f} (1 - (d/p)/p)."""
    if not is_fundamental(d) or d >= 0:
        raise InvalidDiscriminant(f"{d} is not a negative fundamental discriminant")
    D = d * cond * cond
    value = Fraction(class_number(d) * cond * unit_count(D), unit_count(d))
    for p in factorint(cond):
        value *= 1 - Fraction(kronecker(d, p), p)
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral class number {value} for D={D}")
    return int(value)


# --- bulk class numbers (sieve over reduced forms) ------------------------------

def class_numbers_upto(X: int) -> dict[int, int]:
    """h(D) for every discriminant -X <= D < 0, by counting reduced forms in bulk."""
    counts = np.zeros(X + 1, dtype=np.int64)
    a_max = isqrt(X // 3)
    for A in range(1, a_max + 1):
        for B in range(-A + 1, A + 1):
            c_lo = A
            c_hi = (X + B * B) // (4 * A)
            if c_hi < c_lo:
                continue
            C = np.arange(c_lo, c_hi + 1, dtype=np.int64)
            keep = np.gcd(np.gcd(A, abs(B)), C) == 1
            if B < 0:
                keep &= C != A
            absD = 4 * A * C - B * B
            np.add.at(counts, absD[keep], 1)
    return {-x: int(counts[x]) for x in range(3, X + 1) if x % 4 in (0, 3)}


# --- the h <= 8 catalog ---------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    D: int
    h: int
    structure: str


def catalog_entries(bound: int = 8) -> list[CatalogEntry]:
    """Every negative discriminant with h(D) <= bound (1 <= bound <= 8).

    Fundamental discriminants are scanned up to |d| = 6307; non-fundamental
    ones are reached through the conductor formula.
    """
    if not 1 <= bound <= 8:
        raise ValueError("catalog bound must lie in 1..8")
    entries = {}
    for absd in range(3, FUNDAMENTAL_BOUND + 1):
        d = -absd
        if not is_fundamental(d) or class_number(d) > bound:
            continue
        fmax = CONDUCTOR_BOUNDS.get(d, CONDUCTOR_BOUND_OTHER)
        for f in range(1, fmax + 1):
            h = class_number_via_conductor(d, f)
            if h <= bound:
                D = d * f * f
                entries[D] = CatalogEntry(D, h, class_group(D).label)
    return sorted(entries.values(), key=lambda e: -e.D)


def catalog_h_le(bound: int = 8) -> dict[str, list[int]]:
    """Group label -> sorted list of |D| for all D with h(D) <= bound."""
    out: dict[str, list[int]] = {}
    for e in catalog_entries(bound):
        out.setdefault(e.structure, []).append(-e.D)
    return {k: sorted(v) for k, v in sorted(out.items(), key=lambda kv: _label_key(kv[0]))}


def _label_key(label: str):
    parts = [int(p[1:]) for p in label.split("x")]
    prod = 1
    for p in parts:
        prod *= p
    return (prod, len(parts), parts)


def save_catalog(entries, path) -> None:
    payload = {
        "format": "terqf-class-number-catalog",
        "version": CATALOG_VERSION,
        "entries": [{"D": e.D, "h": e.h, "structure": e.structure} for e in entries],
    }
    Path(path).write_text(json.dumps(payload, indent=1) + "\n")


def load_catalog(path) -> list[CatalogEntry]:
    payload = json.loads(Path(path).read_text())
    if payload.get("version") != CATALOG_VERSION:
        raise ValueError(f"unsupported catalog version {payload.get('version')!r}")
    return [CatalogEntry(int(e["D"]), int(e["h"]), str(e["structure"])) for e in payload["entries"]]


_catalog_memo: dict = {}


def cached_catalog(path: Optional[str] = None) -> list[CatalogEntry]:
    """The full h <= 8 catalog, optionally backed by a JSON cache file."""
    key = str(path) if path else None
    if key in _catalog_memo:
        return _catalog_memo[key]
    if path and Path(path).exists():
        entries = load_catalog(path)
    else:
        entries = catalog_entries(8)
        if path:
            save_catalog(entries, path)
    _catalog_memo[key] = entries
    return entries


def catalog_counts(entries) -> Counter:
    return Counter(e.structure for e in entries)
