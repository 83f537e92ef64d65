"""Positive ternary quadratic forms and exact lattice-point enumeration.

A form ``(a,b,c,d,e,f)`` is the polynomial ax^2 + by^2 + cz^2 + dyz + exz + fxy.
All enumeration is done with integer arithmetic only: the admissible range
of each coordinate comes from completing the square in exact integers, so
no lattice point with value <= N can be missed.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Iterator, Optional, Sequence

import numpy as np

from .qseries import QSeries

_FORM_RE = re.compile(r"^[+-]?\d+(,[+-]?\d+){5}$")


class NotPositiveDefinite(ValueError):
    pass


@dataclass(frozen=True)
class TernaryForm:
    a: int
    b: int
    c: int
    d: int
    e: int
    f: int

    @classmethod
    def parse(cls, text: str) -> "TernaryForm":
        """Parse the ``a,b,c,d,e,f`` serialization (no spaces)."""
        if not _FORM_RE.match(text):
            raise ValueError(f"malformed form {text!r}; expected six comma-separated integers")
        return cls(*(int(t) for t in text.split(",")))

    @classmethod
    def coerce(cls, obj) -> "TernaryForm":
        if isinstance(obj, TernaryForm):
            return obj
        if isinstance(obj, str):
            return cls.parse(obj)
        return cls(*(int(t) for t in obj))

    def __str__(self):
        return ",".join(str(t) for t in self.coefficients)

    @property
    def coefficients(self) -> tuple[int, int, int, int, int, int]:
        return (self.a, self.b, self.c, self.d, self.e, self.f)

    def gram(self) -> tuple[tuple[int, int, int], ...]:
        a, b, c, d, e, f = self.coefficients
        return ((2 * a, f, e), (f, 2 * b, d), (e, d, 2 * c))

    def discriminant(self) -> int:
        a, b, c, d, e, f = self.coefficients
        return 4 * a * b * c + d * e * f - a * d * d - b * e * e - c * f * f

    def is_positive_definite(self) -> bool:
        a, b, c, d, e, f = self.coefficients
        return a > 0 and 4 * a * b - f * f > 0 and self.discriminant() > 0

    def __call__(self, x: int, y: int, z: int) -> int:
        a, b, c, d, e, f = self.coefficients
        return a * x * x + b * y * y + c * z * z + d * y * z + e * x * z + f * x * y

    def bilinear(self, u: Sequence[int], v: Sequence[int]) -> int:
        """u^T G v for the Gram matrix G; bilinear(v, v) == 2 f(v)."""
        G = self.gram()
        return sum(u[i] * G[i][j] * v[j] for i in range(3) for j in range(3))


def discriminant(form) -> int:
    return TernaryForm.coerce(form).discriminant()


def gram_matrix(form) -> np.ndarray:
    return np.array(TernaryForm.coerce(form).gram(), dtype=np.int64)


def is_positive_definite(form) -> bool:
    return TernaryForm.coerce(form).is_positive_definite()


def evaluate(form, x: int, y: int, z: int) -> int:
    return TernaryForm.coerce(form)(x, y, z)


@dataclass(frozen=True)
class RepresentationSet:
    n: int
    triples: tuple[tuple[int, int, int], ...]

    def __len__(self):
        return len(self.triples)

    def __iter__(self):
        return iter(self.triples)

    def __contains__(self, v):
        return tuple(v) in set(self.triples)


# --- exact integer ranges ---------------------------------------------------

def quadratic_int_range(A: int, B: int, C: int) -> Optional[tuple[int, int]]:
    """Integers t with A t^2 + B t + C <= 0, for integer A > 0.

    Returns the inclusive range or None if empty.  The endpoints are exact.
    """
    disc = B * B - 4 * A * C
    if disc < 0:
        return None
    s = isqrt(disc)
    lo = (-B - s - 1) // (2 * A)
    hi = -((B - s - 1) // (2 * A))  # ceil((-B + s + 1) / 2A)

    def p(t):
        return (A * t + B) * t + C

    while lo <= hi and p(lo) > 0:
        lo += 1
    while hi >= lo and p(hi) > 0:
        hi -= 1
    if lo > hi:
        return None
    return lo, hi


@dataclass(frozen=True)
class QuadPoly:
    """a x^2 + b y^2 + c z^2 + d yz + e xz + f xy + l1 x + l2 y + l3 z + k.

    The quadratic part must be positive definite.  Used both for plain forms
    (zero linear part) and for the shifted sums that show up in theta
    identities.
    """

    quad: tuple[int, int, int, int, int, int]
    linear: tuple[int, int, int] = (0, 0, 0)
    const: int = 0

    def __post_init__(self):
        if not TernaryForm(*self.quad).is_positive_definite():
            raise NotPositiveDefinite(f"quadratic part {self.quad} is not positive definite")

    def __call__(self, x, y, z):
        a, b, c, d, e, f = self.quad
        l1, l2, l3 = self.linear
        return (a * x * x + b * y * y + c * z * z + d * y * z + e * x * z + f * x * y
                + l1 * x + l2 * y + l3 * z + self.const)

    def rows(self, N: int) -> Iterator[tuple[int, int, int, int, int]]:
        """Yield (z, y, lo, hi, beta, rest) row data for every (y, z) that admits
        some x with value <= N.

        For fixed (y, z) the value is a x^2 + beta x + rest; the yielded x range
        [lo, hi] is exactly the set of x with value <= N.
        """
        a, b, c, d, e, f = self.quad
        l1, l2, l3 = self.linear
        k0 = self.const
        delta = TernaryForm(*self.quad).discriminant()
        Ay = 4 * a * b - f * f
        # B_y = b1 z + b0 ; C_y = c2 z^2 + c1 z + c0
        b1 = 4 * a * d - 2 * f * e
        b0 = 4 * a * l2 - 2 * f * l1
        c2 = 4 * a * c - e * e
        c1 = 4 * a * l3 - 2 * e * l1
        c0 = 4 * a * (k0 - N) - l1 * l1
        # z admissible iff B_y^2 - 4 Ay C_y >= 0
        Az = 16 * a * delta
        Bz = -(2 * b1 * b0 - 4 * Ay * c1)
        Cz = -(b0 * b0 - 4 * Ay * c0)
        zr = quadratic_int_range(Az, Bz, Cz)
        if zr is None:
            return
        for z in range(zr[0], zr[1] + 1):
            By = b1 * z + b0
            Cy = (c2 * z + c1) * z + c0
            yr = quadratic_int_range(Ay, By, Cy)
            if yr is None:
                continue
            for y in range(yr[0], yr[1] + 1):
                beta = f * y + e * z + l1
                rest = b * y * y + c * z * z + d * y * z + l2 * y + l3 * z + k0
                xr = quadratic_int_range(a, beta, rest - N)
                if xr is None:
                    continue
                yield z, y, xr[0], xr[1], beta, rest

    def solutions(self, n: int) -> list[tuple[int, int, int]]:
        a = self.quad[0]
        out = []
        for z, y, lo, hi, beta, rest in self.rows(n):
            disc = beta * beta - 4 * a * (rest - n)
            s = isqrt(disc)
            if s * s != disc:
                continue
            for num in {-beta - s, -beta + s}:
                if num % (2 * a) == 0:
                    out.append((num // (2 * a), y, z))
        out.sort()
        return out

    def value_counts(self, N: int, congruence: Optional["Congruence"] = None) -> np.ndarray:
        """Counts of lattice points by value, for values 0..N (one sweep)."""
        a = self.quad[0]
        counts = np.zeros(N + 1, dtype=np.int64)
        pending: list[np.ndarray] = []
        pending_size = 0
        for z, y, lo, hi, beta, rest in self.rows(N):
            x = np.arange(lo, hi + 1, dtype=np.int64)
            if congruence is not None:
                x = x[congruence.x_mask(x, y, z)]
                if x.size == 0:
                    continue
            vals = (a * x + beta) * x + rest
            pending.append(vals)
            pending_size += vals.size
            if pending_size > 1 << 21:
                counts += np.bincount(np.concatenate(pending), minlength=N + 1)[: N + 1]
                pending, pending_size = [], 0
        if pending:
            counts += np.bincount(np.concatenate(pending), minlength=N + 1)[: N + 1]
        return counts


@dataclass(frozen=True)
class Congruence:
    """Restriction of (x, y, z) to a set of residue classes modulo ``modulus``."""

    modulus: int
    residues: frozenset

    @classmethod
    def of(cls, modulus: int, residues) -> "Congruence":
        return cls(modulus, frozenset(tuple(r[i] % modulus for i in range(3)) for r in residues))

    def allows(self, x, y, z) -> bool:
        m = self.modulus
        return (x % m, y % m, z % m) in self.residues

    def x_mask(self, x: np.ndarray, y: int, z: int) -> np.ndarray:
        m = self.modulus
        ok = np.zeros(m, dtype=bool)
        ym, zm = y % m, z % m
        for r in range(m):
            ok[r] = (r, ym, zm) in self.residues
        return ok[x % m]


# --- public operations on forms --------------------------------------------

def _require_pd(form: TernaryForm):
    if not form.is_positive_definite():
        raise NotPositiveDefinite(f"form {form} is not positive definite")


@lru_cache(maxsize=4096)
def _solutions(form: TernaryForm, n: int) -> tuple[tuple[int, int, int], ...]:
    return tuple(QuadPoly(form.coefficients).solutions(n))


def enumerate_representations(form, n: int) -> RepresentationSet:
    """All integer (x, y, z) with form(x, y, z) == n, lexicographically sorted."""
    form = TernaryForm.coerce(form)
    _require_pd(form)
    if n < 0:
        return RepresentationSet(n, ())
    return RepresentationSet(n, _solutions(form, n))


def representation_count(form, n: int) -> int:
    form = TernaryForm.coerce(form)
    if n < 0:
        return 0
    return len(enumerate_representations(form, n))


_theta_cache: dict = {}


def _theta_array(form: TernaryForm, N: int) -> np.ndarray:
    cached = _theta_cache.get(form)
    if cached is not None and len(cached) > N:
        return cached[: N + 1]
    arr = QuadPoly(form.coefficients).value_counts(N)
    _theta_cache[form] = arr
    return arr


def theta_coefficients(form, N: int) -> QSeries:
    """Coefficients of the theta series up to q^N from one enumeration sweep."""
    form = TernaryForm.coerce(form)
    _require_pd(form)
    if N < 0:
        raise ValueError("N must be nonnegative")
    return QSeries(_theta_array(form, N).tolist())


def theta_array(form, N: int) -> np.ndarray:
    """Same as :func:`theta_coefficients` but as a numpy array (read-only view)."""
    form = TernaryForm.coerce(form)
    _require_pd(form)
    arr = _theta_array(form, N)
    arr.flags.writeable = False
    return arr


def poly_theta(poly: QuadPoly, N: int, congruence: Optional[Congruence] = None) -> QSeries:
    """sum over (x,y,z) [in the congruence classes] of q^poly(x,y,z), to q^N.

    The polynomial must take only nonnegative values.
    """
    counts = poly.value_counts(N, congruence)
    return QSeries(counts.tolist())


def box_scan(form, n: int, bound: int) -> list[tuple[int, int, int]]:
    """Reference enumeration: every point of the cube [-bound, bound]^3."""
    form = TernaryForm.coerce(form)
    r = np.arange(-bound, bound + 1, dtype=np.int64)
    x, y, z = np.meshgrid(r, r, r, indexing="ij")
    a, b, c, d, e, f = form.coefficients
    vals = a * x * x + b * y * y + c * z * z + d * y * z + e * x * z + f * x * y
    idx = np.argwhere(vals == n)
    pts = sorted((int(r[i]), int(r[j]), int(r[k])) for i, j, k in idx)
    return pts
