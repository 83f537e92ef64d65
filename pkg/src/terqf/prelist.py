"""Prelists and essentially-unique representation lists.

The prelist of a form is the set of n with 0 < R(n) <= |Aut|.  A per-form
case table (shipped as JSON) gives a lower bound  coefficient * h(D)  for
R(n) in each residue class; since the coefficient is bounded below, only
discriminants with h(D) <= 8 can produce candidates, and those are exactly
the entries of the class-number catalog.  Candidates are then filtered by
exact representation counts.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Optional

from .automorphs import automorph_group, is_essentially_unique, essential_count
from .binaryqf import CatalogEntry, cached_catalog, class_number
from .forms import TernaryForm, theta_array


class ConfigError(ValueError):
    pass


class ZeroDensityClass(ValueError):
    """n lies in a residue class where the form represents nothing."""


class OutOfDomain(ValueError):
    pass


@dataclass(frozen=True)
class Case:
    e_lo: int
    e_hi: Optional[int]
    v_mod: int = 1
    v_res: tuple = (0,)
    v_eq: Optional[int] = None
    v_gt: Optional[int] = None
    zero: bool = False
    alpha: Fraction = Fraction(0)
    beta: Fraction = Fraction(1)
    gamma: Fraction = Fraction(0)
    disc_mult: Optional[Fraction] = None
    disc_basis: str = "v"

    @classmethod
    def from_dict(cls, d) -> "Case":
        lo, hi = d["e"]
        kw = dict(e_lo=lo, e_hi=hi, zero=bool(d.get("zero", False)))
        if "v_mod" in d:
            kw["v_mod"] = int(d["v_mod"])
            kw["v_res"] = tuple(int(r) for r in d["v_res"])
        for key in ("v_eq", "v_gt"):
            if key in d:
                kw[key] = int(d[key])
        if not kw["zero"]:
            coeff = d["coeff"]
            if isinstance(coeff, str):
                kw["gamma"] = Fraction(coeff)
            else:
                kw["alpha"], kw["beta"], kw["gamma"] = (Fraction(c) for c in coeff)
            if d.get("disc"):
                kw["disc_mult"] = Fraction(d["disc"]["mult"])
                kw["disc_basis"] = d["disc"]["basis"]
        return cls(**kw)

    def matches(self, e: int, v: int) -> bool:
        if e < self.e_lo or (self.e_hi is not None and e > self.e_hi):
            return False
        if self.v_eq is not None and v != self.v_eq:
            return False
        if self.v_gt is not None and v <= self.v_gt:
            return False
        return v % self.v_mod in self.v_res

    def coefficient(self, e: int) -> Fraction:
        return self.alpha * self.beta ** e + self.gamma

    @property
    def constant_coefficient(self) -> bool:
        return self.alpha == 0 or self.beta == 1

    @property
    def nondecreasing(self) -> bool:
        return self.constant_coefficient or (self.alpha > 0 and self.beta > 1) or (
            self.alpha < 0 and 0 < self.beta < 1)

    def discriminant(self, n: int, v: int) -> Optional[int]:
        if self.disc_mult is None:
            return None
        base = n if self.disc_basis == "n" else v
        D = -self.disc_mult * base
        if D.denominator != 1 or int(D) % 4 not in (0, 1):
            raise ConfigError(f"case template gives invalid discriminant {D} for n={n}")
        return int(D)


@dataclass
class PrelistConfig:
    form: TernaryForm
    aut_order: int
    split_base: int
    cases: list
    family_factor: Optional[int] = None
    domain: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, d) -> "PrelistConfig":
        return cls(TernaryForm.parse(d["form"]), int(d["aut_order"]), int(d["split_base"]),
                   [Case.from_dict(c) for c in d["cases"]],
                   d.get("family_factor"), d.get("domain", {}))

    def in_domain(self, n: int) -> bool:
        if n < 1:
            return False
        dom = self.domain
        if "mod" in dom and n % dom["mod"] not in dom["res"]:
            return False
        if "not_divisible_by" in dom and n % dom["not_divisible_by"] == 0:
            return False
        return True

    def reduce(self, n: int) -> int:
        """Divide out the family factor (R(F n) = R(n))."""
        if self.family_factor:
            while n % self.family_factor == 0:
                n //= self.family_factor
        return n

    def split(self, n: int) -> tuple[int, int]:
        e = 0
        while n % self.split_base == 0:
            n //= self.split_base
            e += 1
        return e, n

    def cases_for(self, n: int) -> list:
        e, v = self.split(n)
        return [c for c in self.cases if c.matches(e, v)]

    def case_for(self, n: int) -> Case:
        hits = self.cases_for(n)
        if len(hits) != 1:
            raise ConfigError(f"{len(hits)} cases match n={n} for {self.form}")
        return hits[0]

    def lower_bound(self, n: int) -> Fraction:
        n0 = self.reduce(n)
        if not self.in_domain(n0):
            raise OutOfDomain(f"n={n} outside the domain of the case table for {self.form}")
        case = self.case_for(n0)
        if case.zero:
            raise ZeroDensityClass(f"R({self.form};{n}) = 0 by its residue class")
        e, v = self.split(n0)
        D = case.discriminant(n0, v)
        h = 1 if D is None else class_number(D)
        return case.coefficient(e) * h


_configs: Optional[dict] = None


def load_configs(path=None) -> dict:
    global _configs
    if path is None and _configs is not None:
        return _configs
    if path is None:
        text = resources.files("terqf.data").joinpath("prelist_configs.json").read_text()
    else:
        text = open(path).read()
    payload = json.loads(text)
    out = {}
    for d in payload["configs"]:
        cfg = PrelistConfig.from_dict(d)
        out[cfg.form] = cfg
    if path is None:
        _configs = out
    return out


def get_config(form) -> PrelistConfig:
    form = TernaryForm.coerce(form)
    cfgs = load_configs()
    if form not in cfgs:
        raise ConfigError(f"no prelist configuration shipped for {form}")
    return cfgs[form]


# --- candidate generation --------------------------------------------------------

@dataclass
class PrelistResult:
    form: TernaryForm
    prelist: list
    spurious: list
    candidates: list
    counts: dict  # n -> exact R(n) for every candidate

    def to_dict(self):
        return {"form": str(self.form), "prelist": self.prelist, "spurious": self.spurious,
                "candidate_count": len(self.candidates),
                "counts": {str(n): self.counts[n] for n in self.candidates}}


def _e_values(case: Case, bound: Fraction):
    """Exponents e in the case range with coefficient(e) <= bound."""
    if case.e_hi is not None:
        for e in range(case.e_lo, case.e_hi + 1):
            if case.coefficient(e) <= bound:
                yield e
        return
    if not case.nondecreasing:
        raise ConfigError("open-ended case with a decreasing coefficient cannot be scanned")
    e = case.e_lo
    while case.coefficient(e) <= bound:
        if case.constant_coefficient:
            raise ConfigError("open-ended constant case admits infinitely many candidates")
        yield e
        e += 1


def _min_coefficient(case: Case) -> Fraction:
    if case.e_hi is not None:
        return min(case.coefficient(e) for e in range(case.e_lo, case.e_hi + 1))
    # open-ended cases are nondecreasing, so the first exponent is the minimum
    return case.coefficient(case.e_lo)


def prelist_candidates(cfg: PrelistConfig, catalog: list[CatalogEntry]) -> list[int]:
    aut = cfg.aut_order
    base = cfg.split_base
    cands = set()
    for case in cfg.cases:
        if case.zero:
            continue
        cmin = _min_coefficient(case)
        if cmin <= 0:
            raise ConfigError("nonzero case with nonpositive coefficient")
        if case.disc_mult is not None and Fraction(aut) / cmin > 8:
            raise ConfigError("case needs class numbers beyond the h <= 8 catalog")
        if case.disc_mult is None:
            if case.v_eq is None:
                raise ConfigError("constant case must pin v")
            for e in _e_values(case, Fraction(aut)):
                n = base ** e * case.v_eq
                if cfg.in_domain(n) and case.matches(e, case.v_eq):
                    cands.add(n)
            continue
        for entry in catalog:
            x = Fraction(-entry.D) / case.disc_mult
            if x.denominator != 1:
                continue
            x = int(x)
            if case.disc_basis == "n":
                n = x
                if not cfg.in_domain(n):
                    continue
                e, v = cfg.split(n)
                if case.matches(e, v) and case.coefficient(e) * entry.h <= aut:
                    cands.add(n)
                continue
            v = x
            if v % base == 0:
                continue
            for e in _e_values(case, Fraction(aut, entry.h)):
                n = base ** e * v
                if cfg.in_domain(n) and case.matches(e, v):
                    cands.add(n)
    return sorted(cands)


def cmd_prelist(form, catalog_path=None) -> PrelistResult:
    cfg = get_config(form)
    catalog = cached_catalog(catalog_path)
    cands = prelist_candidates(cfg, catalog)
    top = max(cands) if cands else 0
    R = theta_array(cfg.form, top)
    counts = {n: int(R[n]) for n in cands}
    pre = [n for n in cands if 0 < counts[n] <= cfg.aut_order]
    spurious = [n for n in cands if counts[n] > cfg.aut_order]
    return PrelistResult(cfg.form, pre, spurious, cands, counts)


# --- unique lists ------------------------------------------------------------------

def unique_scan(form, N: int, domain=None) -> list[int]:
    """Every n <= N with an essentially unique representation (exhaustive)."""
    form = TernaryForm.coerce(form)
    aut = len(automorph_group(form))
    R = theta_array(form, N)
    out = []
    for n in range(1, N + 1):
        if 0 < R[n] <= aut and (domain is None or domain(n)) and is_essentially_unique(form, n):
            out.append(n)
    return out


def family_base(values, factor: int) -> list[int]:
    s = set(values)
    return sorted(n for n in s if n % factor or n // factor not in s)


def family_expand(base, factor: int, N: int) -> list[int]:
    out = set()
    for v in base:
        while v <= N:
            out.add(v)
            v *= factor
    return sorted(out)


@dataclass
class FamilyCertificate:
    factor: int
    N: int
    base: list
    expansion_matches: bool  # family expansion of base == exhaustive scan up to N
    scaling_checked: int  # number of n with R(F n) = R(n) and equal orbit counts checked
    scaling_holds: bool

    @property
    def label(self) -> str:
        return "identity-backed" if self.expansion_matches and self.scaling_holds else "failed"

    def to_dict(self):
        return {"factor": self.factor, "scan_bound": self.N, "base": self.base,
                "expansion_matches_scan": self.expansion_matches,
                "scaling_pairs_checked": self.scaling_checked,
                "scaling_identity_holds": self.scaling_holds, "status": self.label}


def certify_family(form, scanned: list[int], factor: int, N: int) -> FamilyCertificate:
    """Check that the unique set up to N is generated by its base values
    under n -> F n, and that R(F n) = R(n) for every represented n with
    F n <= N (the scaling identity the family rests on)."""
    form = TernaryForm.coerce(form)
    base = family_base(scanned, factor)
    expansion = family_expand(base, factor, N)
    R = theta_array(form, N)
    checked, ok = 0, True
    for n in range(1, N // factor + 1):
        if R[n] == 0:
            continue
        checked += 1
        if R[factor * n] != R[n]:
            ok = False
    members = set(scanned)
    for n in scanned:
        if n % factor == 0 and n // factor in members:
            if essential_count(form, n) != essential_count(form, n // factor):
                ok = False
    return FamilyCertificate(factor, N, base, expansion == sorted(scanned), checked, ok)


@dataclass
class UniqueResult:
    form: TernaryForm
    method: str
    values: list
    family: Optional[FamilyCertificate] = None

    def to_dict(self):
        d = {"form": str(self.form), "method": self.method, "values": self.values}
        if self.family is not None:
            d["family"] = self.family.to_dict()
        return d


def cmd_unique(form, N: int = 5000, family_factor: Optional[int] = None, domain=None,
               catalog_path=None) -> UniqueResult:
    """Essentially unique values: from the prelist when a case table ships for
    the form, otherwise by exhaustive scan to N.  With a family factor F the
    values reported are the base values v of the family F^k v."""
    form = TernaryForm.coerce(form)
    cfgs = load_configs()
    if form in cfgs:
        cfg = cfgs[form]
        pre = cmd_prelist(form, catalog_path)
        values = [n for n in pre.prelist if is_essentially_unique(form, n)]
        fam = None
        factor = family_factor or cfg.family_factor
        if factor:
            scanned = unique_scan(form, N, domain)
            fam = certify_family(form, scanned, factor, N)
        return UniqueResult(form, "prelist", values, fam)
    scanned = unique_scan(form, N, domain)
    if family_factor:
        fam = certify_family(form, scanned, family_factor, N)
        return UniqueResult(form, "scan", fam.base, fam)
    return UniqueResult(form, "scan", scanned, None)
