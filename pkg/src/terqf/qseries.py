"""Truncated integer power series in q.

A :class:`QSeries` holds the exact coefficients c_0 .. c_N and nothing past
``N``.  Every operation returns a series whose truncation is the largest
index at which the result is still exact, so truncation errors surface as
:class:`TruncationError` instead of wrong coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class TruncationError(ValueError):
    """Raised when a coefficient beyond a series' validity bound is requested."""


@dataclass(frozen=True)
class QSeries:
    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int]):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in coeffs))
        if not self.coeffs:
            raise ValueError("a QSeries needs at least the constant coefficient")

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def one(cls, N: int) -> "QSeries":
        return cls([1] + [0] * N)

    @classmethod
    def zero(cls, N: int) -> "QSeries":
        return cls([0] * (N + 1))

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return self.coeffs[i]
        if i < 0:
            raise IndexError(i)
        if i > self.N:
            raise TruncationError(f"coefficient {i} requested, series exact only to q^{self.N}")
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def truncate(self, N: int) -> "QSeries":
        if N > self.N:
            raise TruncationError(f"cannot extend a series exact to q^{self.N} to q^{N}")
        return QSeries(self.coeffs[: N + 1])

    def __add__(self, other: "QSeries") -> "QSeries":
        N = min(self.N, other.N)
        return QSeries(a + b for a, b in zip(self.coeffs[: N + 1], other.coeffs[: N + 1]))

    def __neg__(self) -> "QSeries":
        return QSeries(-c for c in self.coeffs)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + (-other)

    def scale(self, k: int) -> "QSeries":
        return QSeries(k * c for c in self.coeffs)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        N = min(self.N, other.N)
        a = self.coeffs[: N + 1]
        b = other.coeffs[: N + 1]
        out = [0] * (N + 1)
        nz = [(j, bj) for j, bj in enumerate(b) if bj]
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in nz:
                if i + j > N:
                    break
                out[i + j] += ai * bj
        return QSeries(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "QSeries":
        if e < 0:
            raise ValueError("negative powers are not supported")
        result = QSeries.one(self.N)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def dilate(self, t: int) -> "QSeries":
        """Substitute q -> q^t."""
        if t < 1:
            raise ValueError("dilation factor must be positive")
        out = [0] * (t * self.N + 1)
        for i, c in enumerate(self.coeffs):
            out[t * i] = c
        return QSeries(out)

    def shift(self, s: int) -> "QSeries":
        """Multiply by q^s (s >= 0)."""
        if s < 0:
            raise ValueError("only nonnegative shifts keep the series exact from q^0")
        return QSeries([0] * s + list(self.coeffs))

    def extract(self, A: int, B: int) -> "QSeries":
        """The series sum_n c_{A n + B} q^n."""
        if A < 1 or B < 0:
            raise ValueError("progression needs A >= 1 and B >= 0")
        if B > self.N:
            raise TruncationError(f"progression start {B} beyond truncation {self.N}")
        return QSeries(self.coeffs[B :: A])

    def to_list(self) -> list[int]:
        return list(self.coeffs)


def from_sequence(seq: Sequence[int]) -> QSeries:
    return QSeries(seq)
