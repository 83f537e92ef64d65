"""p-adic local densities and the exact representation count of idoneal forms.

Counting solutions of f(v) = n mod p^k is done by stratifying primitive v
by the p-adic valuation t of the gradient G v.  A point with gradient
valuation t and f(v) = n mod p^(2t+1) lifts to exactly p^(2k-t-2) solutions
mod p^k (for k >= 2t+1), so only the strata with small t ever need explicit
vectors.  Imprimitive v = p u reduce to n / p^2.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import pi, sqrt

from sympy import factorint

from .binaryqf import class_number, decompose_n, kronecker, squarefree_decomposition, valuation
from .forms import TernaryForm, _require_pd

BRUTE_FORCE_LIMIT = 10 ** 6
DEFAULT_MAX_DEPTH = 64


class DensityDepthExceeded(RuntimeError):
    pass


class SiegelInconsistency(ArithmeticError):
    """The assembled count is not an integer (non-idoneal input or a bug)."""

    def __init__(self, message, breakdown):
        super().__init__(message)
        self.breakdown = breakdown


def _is_prime(p: int) -> bool:
    return p >= 2 and factorint(p) == {p: 1}


def _check_prime(p: int):
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")


# --- stratified solution counts ---------------------------------------------

class _Strata:
    """Gradient-valuation strata of primitive vectors for one (form, p)."""

    def __init__(self, form: TernaryForm, p: int):
        self.form = form
        self.p = p
        self.G = form.gram()
        # kernels[t]: primitive v mod p^t with G v = 0 mod p^t  (kernels[0] = [()] placeholder)
        self.kernels: list[list[tuple[int, int, int]]] = [[(0, 0, 0)]]
        # exact[t]: Counter of f(w) mod p^(2t+1) over w mod p^(t+1) lifting kernels[t]
        #           with gradient valuation exactly t
        self.exact: list[Counter] = []
        self.top_cache: dict = {}

    def _gv(self, v, mod):
        G = self.G
        return tuple(sum(G[i][j] * v[j] for j in range(3)) % mod for i in range(3))

    def _lifts(self, t):
        """Primitive lifts mod p^(t+1) of kernels[t]."""
        p, pt = self.p, self.p ** t
        for v in self.kernels[t]:
            for u in product(range(p), repeat=3):
                w = (v[0] + pt * u[0], v[1] + pt * u[1], v[2] + pt * u[2])
                if t == 0 and w == (0, 0, 0):
                    continue
                yield w

    def extend(self, t):
        """Make kernels[0..t+1] and exact[0..t] available."""
        p = self.p
        while len(self.exact) <= t:
            s = len(self.exact)
            mod_next = p ** (s + 1)
            modf = p ** (2 * s + 1)
            nxt = []
            cnt: Counter = Counter()
            for w in self._lifts(s):
                if self._gv(w, mod_next) == (0, 0, 0):
                    nxt.append(w)
                else:
                    cnt[self.form(*w) % modf] += 1
            self.kernels.append(nxt)
            self.exact.append(cnt)

    def max_stratum(self) -> int:
        """Largest t with a nonempty stratum (kernels eventually die out)."""
        t = 0
        while True:
            self.extend(t)
            if not self.kernels[t + 1]:
                return t
            t += 1
            if t > 200:
                raise RuntimeError("gradient strata do not terminate; form degenerate at p?")

    def A(self, t, n) -> int:
        self.extend(t)
        return self.exact[t][n % self.p ** (2 * t + 1)]

    def top(self, n, k) -> int:
        """#{primitive v mod p^c : G v = 0 mod p^t0, f(v) = n mod p^k}, c = ceil(k/2)."""
        t0, c = k // 2, (k + 1) // 2
        key = (t0, c, k)
        cnt = self.top_cache.get(key)
        if cnt is None:
            self.extend(t0)
            vecs = self.kernels[t0] if c == t0 else list(self._lifts(t0))
            mod = self.p ** k
            cnt = Counter(self.form(*v) % mod for v in vecs)
            self.top_cache[key] = cnt
        return cnt[n % self.p ** k]


@lru_cache(maxsize=None)
def _strata(form: TernaryForm, p: int) -> _Strata:
    return _Strata(form, p)


def solution_count(form, p: int, n: int, k: int) -> int:
    """#{v mod p^k : f(v) = n mod p^k} by stratified lifting."""
    form = TernaryForm.coerce(form)
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return 1
    S = _strata(form, p)
    t0 = k // 2
    total = 0
    for t in range(t0):
        total += p ** (2 * k - t - 2) * S.A(t, n)
    total += p ** (3 * (k - (k + 1) // 2)) * S.top(n, k)
    # imprimitive vectors v = p u
    if k <= 2:
        if n % p ** k == 0:
            total += p ** (3 * (k - 1))
    elif n % (p * p) == 0:
        total += p ** 3 * solution_count(form, p, n // (p * p), k - 2)
    return total


def brute_force_count(form, p: int, n: int, k: int) -> int:
    """Direct scan of (Z/p^k)^3; only for p^(3k) <= 10^6."""
    form = TernaryForm.coerce(form)
    q = p ** k
    if q ** 3 > BRUTE_FORCE_LIMIT:
        raise ValueError(f"direct scan of (Z/{q})^3 refused; use the stratified count")
    import numpy as np

    r = np.arange(q, dtype=np.int64)
    x, y, z = np.meshgrid(r, r, r, indexing="ij")
    a, b, c, d, e, f = form.coefficients
    vals = (a * x * x + b * y * y + c * z * z + d * y * z + e * x * z + f * x * y) % q
    return int(np.count_nonzero(vals == n % q))


def local_density_finite(form, p: int, n: int, k: int) -> Fraction:
    """p^(-2k) * #{v mod p^k : f(v) = n mod p^k}."""
    _check_prime(p)
    if k < 1:
        raise ValueError("k must be positive")
    return Fraction(solution_count(form, p, n, k), p ** (2 * k))


def local_density_brute(form, p: int, n: int, k: int) -> Fraction:
    return Fraction(brute_force_count(form, p, n, k), p ** (2 * k))


def local_density_exact(form, p: int, n: int) -> Fraction:
    """The k -> infinity limit in closed form from the strata.

    d(n) = sum_t p^(-t-2) A_t(n) + p^(-1) d(n / p^2)  (last term only if p^2 | n).
    """
    form = TernaryForm.coerce(form)
    _check_prime(p)
    if n < 1:
        raise ValueError("n must be positive")
    S = _strata(form, p)
    tmax = S.max_stratum()
    value = sum((Fraction(S.A(t, n), p ** (t + 2)) for t in range(tmax + 1)), Fraction(0))
    if n % (p * p) == 0:
        value += Fraction(1, p) * local_density_exact(form, p, n // (p * p))
    return value


@dataclass(frozen=True)
class LocalDensityValue:
    value: Fraction
    p: int
    k_used: int

    def __float__(self):
        return float(self.value)


def local_density(form, p: int, n: int, max_depth: int = DEFAULT_MAX_DEPTH) -> LocalDensityValue:
    """Finite densities for growing k until two consecutive ones agree and
    k exceeds ord_p(4 n Delta)."""
    form = TernaryForm.coerce(form)
    _check_prime(p)
    if n < 1:
        raise ValueError("n must be positive")
    floor_k = valuation(4 * n * form.discriminant(), p)
    prev = None
    for k in range(1, max_depth + 1):
        cur = local_density_finite(form, p, n, k)
        if prev is not None and cur == prev and k > floor_k:
            return LocalDensityValue(cur, p, k)
        prev = cur
    raise DensityDepthExceeded(f"density of {form} at p={p}, n={n} not stable by k={max_depth}")


def good_prime_density(Delta: int, p: int, n: int) -> Fraction:
    """Closed form of the density at a prime p not dividing 2 Delta."""
    _check_prime(p)
    if (2 * Delta) % p == 0:
        raise ValueError(f"p={p} divides 2*Delta={2 * Delta}")
    if n < 1:
        raise ValueError("n must be positive")
    e = valuation(n, p)
    m = n // p ** e
    k = e // 2
    if e % 2 == 0:
        return 1 + Fraction(1, p) + Fraction(kronecker(-m * Delta, p) - 1, p ** (k + 1))
    return (1 + Fraction(1, p)) * (1 - Fraction(1, p ** (k + 1)))


# --- L-values ---------------------------------------------------------------

@dataclass(frozen=True)
class SymbolicReal:
    """The real number r * pi / sqrt(m), kept with m squarefree."""

    r: Fraction
    m: int

    def __init__(self, r, m: int):
        if m < 1:
            raise ValueError("m must be positive")
        core, s = squarefree_decomposition(m)
        object.__setattr__(self, "r", Fraction(r) / s)
        object.__setattr__(self, "m", core)

    def scale(self, c) -> "SymbolicReal":
        return SymbolicReal(self.r * Fraction(c), self.m)

    def __float__(self):
        return float(self.r) * pi / sqrt(self.m)

    def __str__(self):
        return f"({self.r})*pi/sqrt({self.m})"


def l_value(m: int) -> SymbolicReal:
    """L(1, chi) for chi = (-4m / .) and m squarefree, via class numbers."""
    from .binaryqf import is_squarefree

    if m < 1 or not is_squarefree(m):
        raise ValueError(f"{m} is not a positive squarefree integer")
    if m == 1:
        return SymbolicReal(Fraction(1, 4), 1)
    if m == 3:
        return SymbolicReal(Fraction(1, 2), 3)
    if m % 8 == 3:
        return SymbolicReal(Fraction(3 * class_number(-m), 2), m)
    if m % 8 == 7:
        return SymbolicReal(Fraction(class_number(-m), 2), m)
    return SymbolicReal(Fraction(class_number(-4 * m), 2), m)


def l_value_general(n: int) -> SymbolicReal:
    """L(1, (-4n / .)) for any n >= 1: reduce to the squarefree core and
    remove the Euler factors at primes dividing the odd square part."""
    dec = decompose_n(n)
    base = l_value(dec.m)
    corr = Fraction(1)
    for p in factorint(dec.d):
        corr *= 1 - Fraction(kronecker(-dec.m, p), p)
    return base.scale(corr)


def l_value_partial_sum(n: int, terms: int) -> float:
    """Partial sum of sum_m (-4n/m)/m, an independent numerical check."""
    import numpy as np

    D = -4 * n
    chi = np.array([kronecker(D, m) for m in range(1, 4 * n + 1)], dtype=float)
    idx = np.arange(1, terms + 1)
    vals = chi[(idx - 1) % (4 * n)] / idx
    return float(vals.sum())


def p_correction(n: int, Delta: int) -> Fraction:
    """Finite product over primes p not dividing 2 Delta with p^2 | n.

    Follows the formula as written: with p^(2b) the largest even power of p
    dividing n, the factor is 1 + 1/p + ... + 1/p^(b-1) + 1/(p^b (1 - s/p))
    where s is the Kronecker symbol of -Delta n / p^(2b) at p.
    """
    if n < 1:
        raise ValueError("n must be positive")
    value = Fraction(1)
    for p, e in factorint(n).items():
        if e < 2 or (2 * Delta) % p == 0:
            continue
        b = e // 2
        s = kronecker(-Delta * (n // p ** (2 * b)), p)
        term = sum((Fraction(1, p ** i) for i in range(b)), Fraction(0))
        term += 1 / (Fraction(p ** b) * (1 - Fraction(s, p)))
        value *= term
    return value


# --- Siegel assembly ---------------------------------------------------------

@dataclass
class SiegelAssembly:
    form: TernaryForm
    n: int
    prefactor: Fraction  # 32 * r * sqrt(n / (Delta m)), with L = r pi / sqrt(m)
    l_value: SymbolicReal
    p_factor: Fraction
    bad_primes: list = field(default_factory=list)  # LocalDensityValue per p | 2 Delta
    odd_delta_factor: Fraction = Fraction(1)
    count: Fraction = Fraction(0)

    def to_dict(self) -> dict:
        return {
            "form": str(self.form),
            "n": self.n,
            "discriminant": self.form.discriminant(),
            "l_value": {"r": str(self.l_value.r), "m": self.l_value.m},
            "archimedean_and_l_factor": str(self.prefactor),
            "p_correction": str(self.p_factor),
            "bad_prime_densities": [
                {"p": d.p, "value": str(d.value), "k_used": d.k_used} for d in self.bad_primes
            ],
            "odd_discriminant_factor": str(self.odd_delta_factor),
            "count": str(self.count),
        }


def siegel_assembly(form, n: int) -> SiegelAssembly:
    form = TernaryForm.coerce(form)
    _require_pd(form)
    if n < 1:
        raise ValueError("n must be positive")
    Delta = form.discriminant()
    L = l_value_general(Delta * n)
    # 32 sqrt(n) / (pi sqrt(Delta)) * r pi / sqrt(m) = 32 r sqrt(n / (Delta m))
    dec = decompose_n(Delta * n)
    root = Fraction(n, 2 ** dec.a * dec.m * dec.d)
    assert root * root == Fraction(n, Delta * L.m) and L.m == dec.m
    prefactor = 32 * L.r * root
    P = p_correction(n, Delta)
    bad = [local_density(form, p, n) for p in sorted(factorint(2 * Delta))]
    odd = Fraction(1)
    for p in factorint(Delta):
        if p > 2:
            odd /= 1 - Fraction(1, p * p)
    count = prefactor * P * odd
    for d in bad:
        count *= d.value
    return SiegelAssembly(form, n, prefactor, L, P, bad, odd, count)


def siegel_count(form, n: int) -> int:
    """Representation count of an idoneal form from local data alone."""
    if n == 0:
        return 1
    asm = siegel_assembly(form, n)
    if asm.count.denominator != 1:
        raise SiegelInconsistency(
            f"Siegel count {asm.count} for {asm.form}, n={n} is not an integer", asm.to_dict())
    return int(asm.count)


def lower_bound_count(form, n: int, config) -> Fraction:
    """Class-number lower bound for R_f(n) from a per-form case table.

    Raises ZeroDensityClass when n falls in a class whose count is exactly 0.
    """
    form = TernaryForm.coerce(form)
    if config.form != form:
        raise ValueError(f"config is for {config.form}, not {form}")
    return config.lower_bound(n)
