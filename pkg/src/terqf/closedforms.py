"""Closed-form local densities for the forms treated by the reproduction
targets.  These are written independently of the lifting code in
``localdensity`` so the two can be compared value by value."""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Optional


def split_power(n: int, q: int) -> tuple[int, int]:
    """Return (a, v) with n = q^a * v and q not dividing v."""
    if n < 1:
        raise ValueError("n must be positive")
    a = 0
    while n % q == 0:
        n //= q
        a += 1
    return a, n


def density_111_at_2(n: int) -> Optional[Fraction]:
    """d_2 of x^2+y^2+z^2 for 4 not dividing n (None otherwise)."""
    if n % 4 == 0:
        return None
    if n % 4 in (1, 2):
        return Fraction(3, 2)
    return Fraction(1) if n % 8 == 3 else Fraction(0)


# cells for a = 0, 1, 2 keyed by the residue class of v
_TABLE_4096 = {"1 mod 8": (0, 0, 4), "3 mod 8": (0, 0, 8), "5 mod 8": (4, 8, 4), "2 mod 4": (0, 0, 4)}


def _class_4096(v: int) -> str:
    return "2 mod 4" if v % 4 == 2 else f"{v % 8} mod 8"


def density_4096_at_2(n: int) -> Fraction:
    """d_2 of (5,13,20,-12,4,2) at n = 4^a v."""
    a, v = split_power(n, 4)
    if v % 8 == 7:
        return Fraction(0)
    if a >= 3:
        if v % 4 in (1, 2):
            return Fraction(3) / Fraction(2) ** (a - 4)
        return Fraction(1) / Fraction(2) ** (a - 5)
    return Fraction(_TABLE_4096[_class_4096(v)][a])


_TABLE_8192 = {"odd, not 7 mod 8": (0, 0, 4, 4), "7 mod 8": (4, 8, 4, 4),
               "2 mod 8": (0, 0, 4, 6), "6 mod 16": (0, 0, 8, 4)}


def _class_8192(v: int) -> str:
    if v % 2:
        return "7 mod 8" if v % 8 == 7 else "odd, not 7 mod 8"
    return "2 mod 8" if v % 8 == 2 else "6 mod 16"


def density_8192_at_2(n: int) -> Fraction:
    """d_2 of (7,15,23,10,2,6) at n = 4^a v."""
    a, v = split_power(n, 4)
    if v % 16 == 14:
        return Fraction(0)
    if a >= 4:
        if v % 2:
            return Fraction(3) / Fraction(2) ** (a - 5)
        if v % 8 == 2:
            return Fraction(3) / Fraction(2) ** (a - 4)
        return Fraction(1) / Fraction(2) ** (a - 5)
    return Fraction(_TABLE_8192[_class_8192(v)][a])


def density_133_at_3(n: int) -> Optional[Fraction]:
    """d_3 of x^2+3y^2+3z^2 for 9 not dividing n."""
    if n % 9 == 0:
        return None
    _, v = split_power(n, 4)
    if v % 3 == 1:
        return Fraction(2)
    return Fraction(0) if v % 3 == 2 else Fraction(4, 3)


def density_133_at_2(n: int) -> Fraction:
    a, v = split_power(n, 4)
    if v % 4 in (1, 2):
        return Fraction(2 ** (a + 2) - 3, 2 ** (a + 1))
    if v % 8 == 3:
        return Fraction(2 ** (a + 1) - 1, 2 ** a)
    return Fraction(2)


def density_123_at_3(n: int) -> Fraction:
    """d_3 of x^2+2y^2+3z^2 at n = 9^b v."""
    b, v = split_power(n, 9)
    t = 3 ** (b + 1)
    if v % 3:
        return Fraction(2 * (t - 2), t)
    if v % 9 == 3:
        return Fraction(2)
    return Fraction(2 * (t - 1), t)


def density_123_at_2(n: int) -> Optional[Fraction]:
    """d_2 of x^2+2y^2+3z^2 for odd n."""
    return Fraction(1) if n % 2 else None


# (slug, form, prime, closed form, default test range)
CLOSED_FORMS: list[tuple[str, tuple, int, Callable, range]] = [
    ("111-p2", (1, 1, 1, 0, 0, 0), 2, density_111_at_2, range(1, 400)),
    ("4096-p2", (5, 13, 20, -12, 4, 2), 2, density_4096_at_2, range(1, 4 ** 6)),
    ("8192-p2", (7, 15, 23, 10, 2, 6), 2, density_8192_at_2, range(1, 4 ** 6)),
    ("133-p3", (1, 3, 3, 0, 0, 0), 3, density_133_at_3, range(1, 3000)),
    ("133-p2", (1, 3, 3, 0, 0, 0), 2, density_133_at_2, range(1, 3000)),
    ("123-p3", (1, 2, 3, 0, 0, 0), 3, density_123_at_3, range(1, 9 ** 3 * 4)),
    ("123-p2-odd", (1, 2, 3, 0, 0, 0), 2, density_123_at_2, range(1, 2000)),
]
