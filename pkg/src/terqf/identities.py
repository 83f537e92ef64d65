"""Theta and eta q-series and a checker for linear identities between them.

A relation has the shape  c1 * S1[A n + B] == c2 * S2[C n + D]  for
n = 0 .. N, where S1, S2 are sources (form thetas, thetas restricted to
congruence classes, thetas of shifted polynomials, eta products, or integer
combinations of these).  A vanishing relation asserts S[M n + r] == 0 for
each listed residue r.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from typing import Optional, Union

from .forms import Congruence, QuadPoly, TernaryForm, poly_theta, theta_coefficients
from .qseries import QSeries, TruncationError

# --- eta products -------------------------------------------------------------


def eta_coefficients(N: int) -> QSeries:
    """Coefficients of prod_{n>=1} (1 - q^n) to q^N (pentagonal numbers)."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    c = [0] * (N + 1)
    k = 0
    while True:
        sign = -1 if k % 2 else 1
        hit = False
        for g in {k * (3 * k - 1) // 2, k * (3 * k + 1) // 2}:
            if g <= N:
                c[g] = sign
                hit = True
        if not hit:
            break
        k += 1
    return QSeries(c)


def eta_product_direct(N: int) -> QSeries:
    """Same series by multiplying out the factors one at a time."""
    c = [0] * (N + 1)
    c[0] = 1
    for m in range(1, N + 1):
        for i in range(N, m - 1, -1):
            c[i] -= c[i - m]
    return QSeries(c)


def eta_product(spec, shift: int, N: int) -> QSeries:
    """q^shift * prod E(q^t)^e over (t, e) in spec, truncated at q^N."""
    result = QSeries.one(N)
    for t, e in spec:
        if t < 1 or e < 0:
            raise ValueError("dilations must be positive and exponents nonnegative")
        base = eta_coefficients(N // t).dilate(t)
        base = QSeries(list(base.coeffs[: N + 1]) + [0] * max(0, N + 1 - len(base)))
        result = result * (base ** e)
    if shift:
        result = result.shift(shift).truncate(N)
    return result


# --- sources --------------------------------------------------------------------

def residue_classes(modulus: int, predicate) -> Congruence:
    """Congruence of all (x, y, z) mod `modulus` satisfying predicate(x, y, z)."""
    return Congruence.of(modulus, [r for r in product(range(modulus), repeat=3) if predicate(*r)])


@dataclass(frozen=True)
class FormTheta:
    form: TernaryForm
    congruence: Optional[Congruence] = None

    def series(self, N: int) -> QSeries:
        if self.congruence is None:
            return theta_coefficients(self.form, N)
        return poly_theta(QuadPoly(self.form.coefficients), N, self.congruence)

    def describe(self) -> str:
        s = f"theta({self.form})"
        return s if self.congruence is None else s + f"|{_cong_str(self.congruence)}"

    def to_dict(self):
        d = {"kind": "form", "form": str(self.form)}
        if self.congruence is not None:
            d["congruence"] = _cong_dict(self.congruence)
        return d


@dataclass(frozen=True)
class PolyTheta:
    poly: QuadPoly
    congruence: Optional[Congruence] = None

    def series(self, N: int) -> QSeries:
        return poly_theta(self.poly, N, self.congruence)

    def describe(self) -> str:
        p = self.poly
        s = f"poly(quad={p.quad}, linear={p.linear}, const={p.const})"
        return s if self.congruence is None else s + f"|{_cong_str(self.congruence)}"

    def to_dict(self):
        d = {"kind": "poly", "quad": list(self.poly.quad), "linear": list(self.poly.linear),
             "const": self.poly.const}
        if self.congruence is not None:
            d["congruence"] = _cong_dict(self.congruence)
        return d


@dataclass(frozen=True)
class EtaSource:
    factors: tuple  # ((t, e), ...)
    shift: int = 0

    def series(self, N: int) -> QSeries:
        return eta_product(self.factors, self.shift, N)

    def describe(self) -> str:
        body = "*".join(f"E(q^{t})^{e}" for t, e in self.factors) or "1"
        return f"q^{self.shift}*{body}"

    def to_dict(self):
        return {"kind": "eta", "factors": [list(f) for f in self.factors], "shift": self.shift}


@dataclass(frozen=True)
class Combo:
    terms: tuple  # ((coefficient, source), ...)

    def series(self, N: int) -> QSeries:
        total = QSeries.zero(N)
        for c, src in self.terms:
            total = total + _series(src, N).scale(c)
        return total

    def describe(self) -> str:
        return " + ".join(f"{c}*{s.describe()}" for c, s in self.terms)

    def to_dict(self):
        return {"kind": "combo", "terms": [{"coefficient": c, "source": s.to_dict()}
                                           for c, s in self.terms]}


Source = Union[FormTheta, PolyTheta, EtaSource, Combo]


def _cong_str(c: Congruence) -> str:
    return f"mod {c.modulus}: {sorted(c.residues)}"


def _cong_dict(c: Congruence):
    return {"modulus": c.modulus, "residues": [list(r) for r in sorted(c.residues)]}


_series_cache: dict = {}


def _series(src: Source, N: int) -> QSeries:
    cached = _series_cache.get(src)
    if cached is not None and cached.N >= N:
        return cached.truncate(N)
    s = src.series(N)
    _series_cache[src] = s
    return s


def substituted(form, matrix, shift=(0, 0, 0)) -> QuadPoly:
    """The polynomial v -> form(M v + s) as a QuadPoly."""
    form = TernaryForm.coerce(form)
    G = form.gram()
    M = matrix
    # Gram of the composite: M^T G M ; linear part: s^T G M ; constant f(s)
    H = [[sum(M[k][i] * G[k][l] * M[l][j] for k in range(3) for l in range(3)) for j in range(3)]
         for i in range(3)]
    lin = tuple(sum(shift[k] * G[k][l] * M[l][j] for k in range(3) for l in range(3)) for j in range(3))
    quad = (H[0][0] // 2, H[1][1] // 2, H[2][2] // 2, H[1][2], H[0][2], H[0][1])
    return QuadPoly(quad, lin, form(*shift))


# --- relations --------------------------------------------------------------------

@dataclass(frozen=True)
class Side:
    coefficient: int
    source: Source
    A: int = 1
    B: int = 0

    def needed(self, N: int) -> int:
        return self.A * N + self.B

    def values(self, N: int) -> list[int]:
        s = _series(self.source, self.needed(N))
        return [self.coefficient * c for c in s.extract(self.A, self.B)[: N + 1]]

    def describe(self) -> str:
        return f"{self.coefficient}*[{self.source.describe()}]({self.A}n+{self.B})"

    def to_dict(self):
        return {"coefficient": self.coefficient, "source": self.source.to_dict(),
                "progression": [self.A, self.B]}


@dataclass(frozen=True)
class ThetaRelation:
    name: str
    statement: str
    lhs: Side
    rhs: Optional[Side] = None  # None for a vanishing relation
    modulus: int = 0  # vanishing relations: coefficient at modulus*n + r is zero
    residues: tuple = ()

    @property
    def is_vanishing(self) -> bool:
        return self.rhs is None

    def to_dict(self, verified_to: Optional[int] = None):
        d = {"name": self.name, "statement": self.statement, "lhs": self.lhs.to_dict()}
        if self.is_vanishing:
            d["vanishes"] = {"modulus": self.modulus, "residues": list(self.residues)}
        else:
            d["rhs"] = self.rhs.to_dict()
        if verified_to is not None:
            d["verified_to"] = verified_to
        return d


@dataclass(frozen=True)
class Verdict:
    name: str
    holds: bool
    N: int
    index: Optional[int] = None
    lhs_value: Optional[int] = None
    rhs_value: Optional[int] = None

    def __bool__(self):
        return self.holds


def verify_relation(rel: ThetaRelation, N: int) -> Verdict:
    """Compare both sides for n = 0..N; report the first failing index."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    if rel.is_vanishing:
        top = rel.modulus * N + max(rel.residues)
        s = _series(rel.lhs.source, top)
        best = None
        for r in rel.residues:
            vals = s.extract(rel.modulus, r)[: N + 1]
            for n, v in enumerate(vals):
                if v:
                    k = rel.modulus * n + r
                    if best is None or k < best[0]:
                        best = (k, v)
                    break
        if best is None:
            return Verdict(rel.name, True, N)
        return Verdict(rel.name, False, N, best[0], rel.lhs.coefficient * best[1], 0)
    lv = rel.lhs.values(N)
    rv = rel.rhs.values(N)
    if len(lv) < N + 1 or len(rv) < N + 1:
        raise TruncationError("series shorter than requested range")
    for n in range(N + 1):
        if lv[n] != rv[n]:
            return Verdict(rel.name, False, N, n, lv[n], rv[n])
    return Verdict(rel.name, True, N)


# --- the catalog -------------------------------------------------------------------

def _F(*coeffs) -> FormTheta:
    return FormTheta(TernaryForm(*coeffs))


S111 = _F(1, 1, 1, 0, 0, 0)


def _eq(name, statement, c1, src1, A, B, c2, src2, C, D) -> ThetaRelation:
    return ThetaRelation(name, statement, Side(c1, src1, A, B), Side(c2, src2, C, D))


def _zero(name, statement, src, modulus, residues) -> ThetaRelation:
    return ThetaRelation(name, statement, Side(1, src), None, modulus, tuple(sorted(residues)))


def _complement(modulus, covered) -> list[int]:
    return [r for r in range(modulus) if r not in covered]


def _kaplansky():
    f112, f122, f124 = _F(1, 1, 2, 0, 0, 0), _F(1, 2, 2, 0, 0, 0), _F(1, 2, 4, 0, 0, 0)
    return [
        _eq("sum-of-three-squares-4n", "R(1,1,1,0,0,0;4n) = R(1,1,1,0,0,0;n)", 1, S111, 4, 0, 1, S111, 1, 0),
        _eq("x2+y2+2z2-even", "R(1,1,2,0,0,0;2n) = R(1,1,1,0,0,0;n)", 1, f112, 2, 0, 1, S111, 1, 0),
        _eq("x2+y2+2z2-odd", "3R(1,1,2,0,0,0;2n+1) = R(1,1,1,0,0,0;4n+2)", 3, f112, 2, 1, 1, S111, 4, 2),
        _eq("x2+2y2+2z2-4n", "R(1,2,2,0,0,0;4n) = R(1,1,1,0,0,0;n)", 1, f122, 4, 0, 1, S111, 1, 0),
        _eq("x2+2y2+2z2-4n+1", "3R(1,2,2,0,0,0;4n+1) = R(1,1,1,0,0,0;4n+1)", 3, f122, 4, 1, 1, S111, 4, 1),
        _eq("x2+2y2+2z2-4n+2", "3R(1,2,2,0,0,0;4n+2) = R(1,1,1,0,0,0;4n+2)", 3, f122, 4, 2, 1, S111, 4, 2),
        _eq("x2+2y2+2z2-4n+3", "R(1,2,2,0,0,0;4n+3) = R(1,1,1,0,0,0;4n+3)", 1, f122, 4, 3, 1, S111, 4, 3),
        _eq("x2+2y2+4z2-8n", "R(1,2,4,0,0,0;8n) = R(1,1,1,0,0,0;n)", 1, f124, 8, 0, 1, S111, 1, 0),
        _eq("x2+2y2+4z2-8n+2", "3R(1,2,4,0,0,0;8n+2) = R(1,1,1,0,0,0;4n+1)", 3, f124, 8, 2, 1, S111, 4, 1),
        _eq("x2+2y2+4z2-8n+4", "3R(1,2,4,0,0,0;8n+4) = R(1,1,1,0,0,0;4n+2)", 3, f124, 8, 4, 1, S111, 4, 2),
        _eq("x2+2y2+4z2-8n+6", "R(1,2,4,0,0,0;8n+6) = R(1,1,1,0,0,0;4n+3)", 1, f124, 8, 6, 1, S111, 4, 3),
        _eq("x2+2y2+4z2-odd", "6R(1,2,4,0,0,0;2n+1) = R(1,1,1,0,0,0;4n+2)", 6, f124, 2, 1, 1, S111, 4, 2),
    ]


def _all_ones():
    t = TernaryForm(1, 1, 1, 1, 1, 1)
    full = FormTheta(t)
    same = FormTheta(t, residue_classes(2, lambda x, y, z: x == y == z))
    xy_z = FormTheta(t, residue_classes(2, lambda x, y, z: x == y != z))
    xz_y = FormTheta(t, residue_classes(2, lambda x, y, z: x == z != y))
    yz_x = FormTheta(t, residue_classes(2, lambda x, y, z: y == z != x))
    sub = ((-1, 1, 1), (1, -1, 1), (1, 1, -1))
    doubled = _F(2, 2, 2, 0, 0, 0)
    shifted = PolyTheta(QuadPoly((2, 2, 2, 0, 0, 0), (0, 2, 2), 1))
    return [
        _eq("all-ones-mixed-parity-xz", "sum over x=y!=z (mod 2) equals sum over x=z!=y",
            1, xy_z, 1, 0, 1, xz_y, 1, 0),
        _eq("all-ones-mixed-parity-yz", "sum over x=y!=z (mod 2) equals sum over y=z!=x",
            1, xy_z, 1, 0, 1, yz_x, 1, 0),
        _eq("all-ones-parity-split", "theta(1,1,1,1,1,1) = [x=y=z] + 3[x=y!=z]",
            1, full, 1, 0, 1, Combo(((1, same), (3, xy_z))), 1, 0),
        _eq("all-ones-equal-parity-substitution", "[x=y=z] = sum q^f(-x+y+z, x-y+z, x+y-z)",
            1, same, 1, 0, 1, PolyTheta(substituted(t, sub)), 1, 0),
        _eq("all-ones-equal-parity", "[x=y=z] = theta(2,2,2,0,0,0)", 1, same, 1, 0, 1, doubled, 1, 0),
        _eq("all-ones-mixed-parity-substitution", "[x=y!=z] = sum q^f(-x+y+z, x-y+z, x+y-z+1)",
            1, xy_z, 1, 0, 1, PolyTheta(substituted(t, sub, (0, 0, 1))), 1, 0),
        _eq("all-ones-mixed-parity", "[x=y!=z] = q sum q^(2(x^2+y^2+z^2)+2(y+z))",
            1, xy_z, 1, 0, 1, shifted, 1, 0),
        _eq("all-ones-theta", "theta(1,1,1,1,1,1) = theta(2,2,2,0,0,0) + 3 q sum q^(2(x^2+y^2+z^2)+2(y+z))",
            1, full, 1, 0, 1, Combo(((1, doubled), (3, shifted))), 1, 0),
        _eq("all-ones-odd", "R(1,1,1,1,1,1;2n+1) = R(1,1,1,0,0,0;4n+2)", 1, full, 2, 1, 1, S111, 4, 2),
        _eq("all-ones-even", "R(1,1,1,1,1,1;2n) = R(1,1,1,0,0,0;n)", 1, full, 2, 0, 1, S111, 1, 0),
    ]


def _three_threes():
    g = TernaryForm(3, 3, 3, -2, 2, 2)
    full = FormTheta(g)
    even = FormTheta(g, residue_classes(2, lambda x, y, z: (x + y + z) % 2 == 0))
    odd = FormTheta(g, residue_classes(2, lambda x, y, z: (x + y + z) % 2 == 1))
    sub = ((0, 1, 1), (1, 0, -1), (1, -1, 0))
    fours = _F(4, 4, 4, 0, 0, 0)
    odd_squares = PolyTheta(QuadPoly((4, 4, 4, 0, 0, 0), (4, 4, 4), 3))
    return [
        _eq("333-even-substitution", "[x+y+z even] = sum q^g(y+z, x-z, x-y)",
            1, even, 1, 0, 1, PolyTheta(substituted(g, sub)), 1, 0),
        _eq("333-even", "[x+y+z even] = theta(4,4,4,0,0,0)", 1, even, 1, 0, 1, fours, 1, 0),
        _eq("333-odd-substitution", "[x+y+z odd] = sum q^g(y+z+1, x-z, x-y)",
            1, odd, 1, 0, 1, PolyTheta(substituted(g, sub, (1, 0, 0))), 1, 0),
        _eq("333-odd", "[x+y+z odd] = sum q^((2x+1)^2+(2y+1)^2+(2z+1)^2)", 1, odd, 1, 0, 1, odd_squares, 1, 0),
        _eq("333-theta", "theta(3,3,3,-2,2,2) = theta(4,4,4,0,0,0) + sum q^((2x+1)^2+(2y+1)^2+(2z+1)^2)",
            1, full, 1, 0, 1, Combo(((1, fours), (1, odd_squares))), 1, 0),
        _eq("333-4n", "R(3,3,3,-2,2,2;4n) = R(1,1,1,0,0,0;n)", 1, full, 4, 0, 1, S111, 1, 0),
        _eq("333-8n+3", "R(3,3,3,-2,2,2;8n+3) = R(1,1,1,0,0,0;8n+3)", 1, full, 8, 3, 1, S111, 8, 3),
        _zero("333-vanishing", "R(3,3,3,-2,2,2;n) = 0 for n != 0,3,4 (mod 8)", full, 8, [1, 2, 5, 6, 7]),
    ]


def _one_three_three_two():
    h = _F(1, 3, 3, 2, 0, 0)
    yz_same = FormTheta(TernaryForm(1, 1, 2, 0, 0, 0), residue_classes(2, lambda x, y, z: y == z))
    return [
        _eq("133200-parity-form", "theta(1,3,3,2,0,0) = sum over y=z (mod 2) of q^(x^2+y^2+2z^2)",
            1, h, 1, 0, 1, yz_same, 1, 0),
        _eq("133200-8n", "R(1,3,3,2,0,0;8n) = R(1,1,1,0,0,0;n)", 1, h, 8, 0, 1, S111, 1, 0),
        _eq("133200-8n+4", "R(1,3,3,2,0,0;8n+4) = R(1,1,1,0,0,0;4n+2)", 1, h, 8, 4, 1, S111, 4, 2),
        _zero("133200-4n+2", "R(1,3,3,2,0,0;4n+2) = 0", h, 4, [2]),
        _eq("133200-odd", "6R(1,3,3,2,0,0;2n+1) = R(1,1,1,0,0,0;4n+2)", 6, h, 2, 1, 1, S111, 4, 2),
    ]


def _disc_4096():
    f = _F(5, 13, 20, -12, 4, 2)
    covered = {0, 32, 16, 48} | {20, 52} | {r for r in range(64) if r % 8 == 5}
    return [
        _eq("4096-64n", "R(5,13,20,-12,4,2;64n) = R(1,1,1,0,0,0;n)", 1, f, 64, 0, 1, S111, 1, 0),
        _eq("4096-32(2n+1)", "3R(5,13,20,-12,4,2;32(2n+1)) = R(1,1,1,0,0,0;32(2n+1))",
            3, f, 64, 32, 1, S111, 64, 32),
        _eq("4096-16(4n+1)", "3R(5,13,20,-12,4,2;16(4n+1)) = R(1,1,1,0,0,0;16(4n+1))",
            3, f, 64, 16, 1, S111, 64, 16),
        _eq("4096-16(4n+3)", "R(5,13,20,-12,4,2;16(4n+3)) = R(1,1,1,0,0,0;16(4n+3))",
            1, f, 64, 48, 1, S111, 64, 48),
        _eq("4096-4(8n+5)", "3R(5,13,20,-12,4,2;4(8n+5)) = R(1,1,1,0,0,0;8n+5)", 3, f, 32, 20, 1, S111, 8, 5),
        _eq("4096-8n+5", "12R(5,13,20,-12,4,2;8n+5) = R(1,1,1,0,0,0;8n+5)", 12, f, 8, 5, 1, S111, 8, 5),
        _zero("4096-vanishing", "R(5,13,20,-12,4,2;k) = 0 for every k outside the progressions above",
              f, 64, _complement(64, covered)),
    ]


def _disc_8192():
    g = _F(7, 15, 23, 10, 2, 6)
    covered = ({0, 64, 32, 96} | {r for r in range(128) if r % 32 in (16, 28)}
               | {r for r in range(128) if r % 8 == 7})
    return [
        _eq("8192-128n", "R(7,15,23,10,2,6;128n) = R(1,1,1,0,0,0;n)", 1, g, 128, 0, 1, S111, 1, 0),
        _eq("8192-64(2n+1)", "3R(7,15,23,10,2,6;64(2n+1)) = R(1,1,1,0,0,0;4n+2)", 3, g, 128, 64, 1, S111, 4, 2),
        _eq("8192-32(4n+1)", "3R(7,15,23,10,2,6;32(4n+1)) = R(1,1,1,0,0,0;4n+1)", 3, g, 128, 32, 1, S111, 4, 1),
        _eq("8192-32(4n+3)", "R(7,15,23,10,2,6;32(4n+3)) = R(1,1,1,0,0,0;4n+3)", 1, g, 128, 96, 1, S111, 4, 3),
        _eq("8192-16(2n+1)", "6R(7,15,23,10,2,6;16(2n+1)) = R(1,1,1,0,0,0;4n+2)", 6, g, 32, 16, 1, S111, 4, 2),
        _eq("8192-4(8n+7)", "6R(7,15,23,10,2,6;4(8n+7)) = R(1,1,1,0,0,0;2(8n+7))",
            6, g, 32, 28, 1, S111, 16, 14),
        _eq("8192-8n+7", "24R(7,15,23,10,2,6;8n+7) = R(1,1,1,0,0,0;2(8n+7))", 24, g, 8, 7, 1, S111, 16, 14),
        _zero("8192-vanishing", "R(7,15,23,10,2,6;k) = 0 for every k outside the progressions above",
              g, 128, _complement(128, covered)),
    ]


def _disc_36():
    f, g = _F(1, 3, 3, 0, 0, 0), _F(1, 1, 3, 0, 0, 0)
    return [
        _eq("133-3n", "R(1,3,3,0,0,0;3n) = R(1,1,3,0,0,0;n)", 1, f, 3, 0, 1, g, 1, 0),
        _eq("113-3n", "R(1,3,3,0,0,0;n) = R(1,1,3,0,0,0;3n)", 1, f, 1, 0, 1, g, 3, 0),
        _eq("133-9n", "R(1,3,3,0,0,0;9n) = R(1,3,3,0,0,0;n)", 1, f, 9, 0, 1, f, 1, 0),
        _eq("113-9n", "R(1,1,3,0,0,0;9n) = R(1,1,3,0,0,0;n)", 1, g, 9, 0, 1, g, 1, 0),
    ]


def _non_idoneal():
    f = _F(1, 3, 3, 1, 0, 1)
    g = _F(1, 1, 11, 1, 1, 1)
    eta = EtaSource(((4, 2), (16, 1)), 1)
    diff = Combo(((1, g), (-1, f)))
    return [
        _eq("13301-32n", "R(1,3,3,1,0,1;32n) = R(1,1,1,0,0,0;n)", 1, f, 32, 0, 1, S111, 1, 0),
        _eq("13301-16(2n+1)", "R(1,3,3,1,0,1;16(2n+1)) = R(1,1,1,0,0,0;2(2n+1))", 1, f, 32, 16, 1, S111, 4, 2),
        _zero("13301-8(2n+1)", "R(1,3,3,1,0,1;8(2n+1)) = 0", f, 16, [8]),
        _eq("13301-4(2n+1)", "2R(1,3,3,1,0,1;4(2n+1)) = R(1,1,1,0,0,0;2(2n+1))", 2, f, 8, 4, 1, S111, 4, 2),
        _zero("13301-2(2n+1)", "R(1,3,3,1,0,1;2(2n+1)) = 0", f, 4, [2]),
        _eq("13301-4n+3", "4R(1,3,3,1,0,1;4n+3) = R(1,1,1,0,0,0;2(4n+3))", 4, f, 4, 3, 1, S111, 8, 6),
        _eq("genus-difference-eta", "theta(1,1,11,1,1,1) - theta(1,3,3,1,0,1) = 4q E(q^4)^2 E(q^16)",
            1, diff, 1, 0, 4, eta, 1, 0),
        _zero("genus-mates-agree", "R(1,3,3,1,0,1;n) = R(1,1,11,1,1,1;n) for n != 1 (mod 4)",
              diff, 4, [0, 2, 3]),
        _eq("genus-sum-4n+1", "3R(1,3,3,1,0,1;n) + R(1,1,11,1,1,1;n) = R(1,1,1,0,0,0;2n), n = 1 (mod 4)",
            1, Combo(((3, f), (1, g))), 4, 1, 1, S111, 8, 2),
    ]


_GROUPS = {
    "squares-reductions": _kaplansky,
    "all-ones": _all_ones,
    "three-threes": _three_threes,
    "disc-32": _one_three_three_two,
    "disc-4096": _disc_4096,
    "disc-8192": _disc_8192,
    "disc-36": _disc_36,
    "non-idoneal": _non_idoneal,
}


def catalog_groups() -> dict[str, list[ThetaRelation]]:
    """The shipped identities grouped by the forms they concern."""
    return {name: build() for name, build in _GROUPS.items()}


def builtin_catalog() -> list[ThetaRelation]:
    """Every identity shipped with the package, each checkable by verify_relation."""
    return [rel for rels in catalog_groups().values() for rel in rels]


def chain_identities_133200() -> list[tuple[ThetaRelation, bool]]:
    """The step-by-step rewriting of theta(1,3,3,2,0,0) into pieces of x^2+y^2+z^2,
    as (relation, expected_to_hold) pairs.

    Kept apart from the main catalog so that each step is checked on its own.
    Substituting y, z even in the second step gives x^2+4y^2+8z^2; the
    tempting misreading x^2+2y^2+8z^2 is listed too, flagged as expected to
    fail.  Fractional coefficients are cleared by doubling both sides.
    """
    par = residue_classes
    q112 = TernaryForm(1, 1, 2, 0, 0, 0)
    h = _F(1, 3, 3, 2, 0, 0)
    yz_same = FormTheta(q112, par(2, lambda x, y, z: y == z))
    yz_odd = FormTheta(q112, par(2, lambda x, y, z: y == z == 1))
    all_odd = FormTheta(q112, par(2, lambda x, y, z: x == y == z == 1))
    x_odd_124 = FormTheta(TernaryForm(1, 2, 4, 0, 0, 0), par(2, lambda x, y, z: x == 1))
    x_odd_4816 = FormTheta(TernaryForm(4, 8, 16, 0, 0, 0), par(2, lambda x, y, z: x == 1))
    t448, t888 = _F(4, 4, 8, 0, 0, 0), _F(8, 8, 8, 0, 0, 0)
    xy_odd_z_even_222 = FormTheta(TernaryForm(2, 2, 2, 0, 0, 0), par(2, lambda x, y, z: x == y == 1 and z == 0))
    line1 = Combo(((1, yz_same),))
    line2_printed = Combo(((1, _F(1, 2, 8, 0, 0, 0)), (1, yz_odd)))
    line2 = Combo(((1, _F(1, 4, 8, 0, 0, 0)), (1, yz_odd)))
    line3 = Combo(((1, x_odd_124), (1, t448), (1, all_odd)))
    line4x2 = Combo(((2, x_odd_124), (2, t888), (3, all_odd)))
    return [
        (_eq("133200-chain-1", "theta(h) = sum over y=z (mod 2) of q^(x^2+y^2+2z^2)",
             1, h, 1, 0, 1, line1, 1, 0), True),
        (_eq("133200-chain-2-misprint", "line 1 = theta(1,2,8,0,0,0) + sum over y,z odd",
             1, line1, 1, 0, 1, line2_printed, 1, 0), False),
        (_eq("133200-chain-2", "line 1 = theta(1,4,8,0,0,0) + sum over y,z odd",
             1, line1, 1, 0, 1, line2, 1, 0), True),
        (_eq("133200-chain-3", "line 2 = [x odd] theta(1,2,4) + theta(4,4,8) + sum over x,y,z odd",
             1, line2, 1, 0, 1, line3, 1, 0), True),
        (_eq("133200-chain-4", "2 * line 3 = 2[x odd] theta(1,2,4) + 2 theta(8,8,8) + 3 sum over x,y,z odd",
             2, line3, 1, 0, 1, line4x2, 1, 0), True),
        (_eq("133200-chain-ends", "2 theta(h) = 2[x odd] theta(1,2,4) + 2 theta(8,8,8) + 3 sum over x,y,z odd",
             2, h, 1, 0, 1, line4x2, 1, 0), True),
        (_eq("133200-aux-1", "4 [x odd] sum q^(4(x^2+2y^2+4z^2)) = sum over x,y,z odd of q^(x^2+y^2+2z^2)",
             4, x_odd_4816, 1, 0, 1, all_odd, 1, 0), True),
        (_eq("133200-aux-2",
             "sum over x,y,z odd of q^(x^2+y^2+2z^2) = 2 sum over x,y odd, z even of q^(2(x^2+y^2+z^2))",
             1, all_odd, 1, 0, 2, xy_odd_z_even_222, 1, 0), True),
    ]


def verify_catalog(N: int = 500, relations=None) -> list[Verdict]:
    return [verify_relation(r, N) for r in (relations if relations is not None else builtin_catalog())]


def export_catalog(path=None, N: int = 500) -> str:
    """JSON export of the catalog with per-relation verification depth."""
    rels = builtin_catalog()
    verdicts = verify_catalog(N, rels)
    payload = {"format": "terqf-theta-relations", "version": 1,
               "relations": [r.to_dict(N if v.holds else None) for r, v in zip(rels, verdicts)]}
    text = json.dumps(payload, indent=1)
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    return text
