"""Reproduction targets: recompute each table, identity group, prelist and
unique list, and diff the result against the embedded expected data."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Callable

from .automorphs import automorph_group, orbit_partition
from .binaryqf import cached_catalog, catalog_h_le, class_numbers_upto, CATALOG_CEILING
from .closedforms import CLOSED_FORMS
from .forms import TernaryForm, theta_array
from .identities import catalog_groups, chain_identities_133200, verify_relation
from .localdensity import local_density, siegel_count
from .prelist import cmd_prelist, cmd_unique, family_base, load_configs, unique_scan

IDONEAL_FORMS = [
    "1,1,1,0,0,0", "1,1,1,1,1,1", "3,3,3,-2,2,2", "1,3,3,2,0,0", "5,13,20,-12,4,2",
    "7,15,23,10,2,6", "1,3,3,0,0,0", "1,1,3,0,0,0", "1,2,3,0,0,0",
]

DEFAULT_SCAN = 5000
DEFAULT_SIEGEL_N = 500
DEFAULT_IDENTITY_N = 500


class UnknownTarget(KeyError):
    pass


_data = None


def expected_data() -> dict:
    global _data
    if _data is None:
        _data = json.loads(resources.files("terqf.data").joinpath("paper_data.json").read_text())
    return _data


@dataclass
class ReproductionReport:
    target: str
    expected: object
    computed: object
    verdict: str  # "pass" or "fail"
    runtime: float
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def diff(self) -> dict:
        if not isinstance(self.expected, dict) or not isinstance(self.computed, dict):
            return {} if self.passed else {"expected": self.expected, "computed": self.computed}
        keys = sorted(set(self.expected) | set(self.computed))
        return {k: {"expected": self.expected.get(k), "computed": self.computed.get(k)}
                for k in keys if self.expected.get(k) != self.computed.get(k)}

    def to_dict(self, runtime=True) -> dict:
        d = {"target": self.target, "verdict": self.verdict, "expected": self.expected,
             "computed": self.computed, "notes": self.notes}
        if not self.passed:
            d["diff"] = self.diff()
        if runtime:
            d["runtime_s"] = round(self.runtime, 3)
        return d


def _band_label(band: dict) -> str:
    lo = f"{band['gt']}<" if "gt" in band else ""
    if "eq" in band:
        return f"R={band['eq']}"
    hi = f"<={band['le']}" if "le" in band else f"<{band['lt']}"
    return f"{lo}R{hi}"


def _in_band(band: dict, r: int) -> bool:
    if "eq" in band:
        return r == band["eq"]
    if "gt" in band and r <= band["gt"]:
        return False
    if "le" in band and r > band["le"]:
        return False
    if "lt" in band and r >= band["lt"]:
        return False
    return True


# --- targets -----------------------------------------------------------------------

def _table1(opts):
    bands = expected_data()["table_count_bands_111"]["bands"]
    form = TernaryForm(1, 1, 1, 0, 0, 0)
    pre = cmd_prelist(form, opts.get("catalog"))
    expected = {_band_label(b["band"]): b["n"] for b in bands}
    computed = {_band_label(b["band"]): [n for n in pre.prelist if _in_band(b["band"], pre.counts[n])]
                for b in bands}
    # independent route: exhaustive scan for 4 not dividing n
    N = opts.get("N", DEFAULT_SCAN)
    R = theta_array(form, N)
    scanned = [n for n in range(1, N + 1) if n % 4 and 0 < R[n] <= 48]
    expected["scan agrees with prelist"] = True
    computed["scan agrees with prelist"] = scanned == [n for n in pre.prelist if n <= N]
    return expected, computed, [f"{len(bands)} count bands", f"scan bound {N}"]


def _density_table(key, opts):
    table = expected_data()[key]
    form = TernaryForm.parse(table["form"])
    samples = opts.get("samples", 6)
    expected, computed = {}, {}
    for row in table["rows"]:
        vs = [v for v in range(1, 4000) if v % 4 and v % row["v_mod"] in row["v_res"]][:samples]
        for a, cell in zip(table["columns_a"], row["values"]):
            label = f"v={'/'.join(map(str, row['v_res']))} mod {row['v_mod']}, a={a}"
            values = sorted({str(local_density(form, 2, 4 ** a * v).value) for v in vs})
            expected[label] = [str(Fraction(cell))]
            computed[label] = values
    return expected, computed, [f"{samples} sample v per row"]


def _appendix(opts):
    data = expected_data()["class_number_catalog"]
    groups = catalog_h_le(8)
    expected = {"total": data["total"], "groups": data["groups"], "sieve finds no omission": True}
    catalog = {-e.D for e in cached_catalog(opts.get("catalog"))}
    sieve = class_numbers_upto(CATALOG_CEILING)
    missed = sorted(-D for D, h in sieve.items() if h <= 8 and -D not in catalog)
    computed = {"total": sum(len(v) for v in groups.values()), "groups": groups,
                "sieve finds no omission": not missed}
    notes = [f"exhaustive h(D) for |D| <= {CATALOG_CEILING}"] + ([f"missed {missed}"] if missed else [])
    return expected, computed, notes


def _densities(slugs, opts):
    expected, computed = {}, {}
    for slug, form, p, closed, rng in CLOSED_FORMS:
        if slug not in slugs:
            continue
        bad = []
        for n in rng:
            e = closed(n)
            if e is not None and local_density(form, p, n).value != e:
                bad.append(n)
        expected[slug] = []
        computed[slug] = bad
    return expected, computed, ["values are lists of n where the closed form disagrees"]


def _identities(groups, opts):
    N = opts.get("N", DEFAULT_IDENTITY_N)
    cat = catalog_groups()
    expected, computed = {}, {}
    for g in groups:
        for rel in cat[g]:
            v = verify_relation(rel, N)
            expected[rel.name] = True
            computed[rel.name] = v.holds
    notes = [f"verified to N={N}"]
    if "disc-32" in groups:
        for rel, want in chain_identities_133200():
            v = verify_relation(rel, N)
            expected[rel.name] = want
            computed[rel.name] = v.holds
        notes.append("intermediate chain steps carry their expected verdicts; a printed step "
                     "that fails is flagged False rather than reinterpreted")
    return expected, computed, notes


def _automorphs(opts):
    data = expected_data()
    expected = {"orders": data["automorph_orders"],
                "aut(1,3,4,3,1,0)": sorted(data["automorphs_13431"]),
                "orbits(1,3,4,3,1,0;19)": data["orbits_13431_19"]}
    f = TernaryForm(1, 3, 4, 3, 1, 0)
    computed = {"orders": {k: len(automorph_group(k)) for k in data["automorph_orders"]},
                "aut(1,3,4,3,1,0)": sorted([list(map(list, M)) for M in automorph_group(f)]),
                "orbits(1,3,4,3,1,0;19)": sorted(sorted(list(v) for v in o)
                                                 for o in orbit_partition(f, 19).orbits)}
    expected["orbits(1,3,4,3,1,0;19)"] = sorted(sorted(o) for o in expected["orbits(1,3,4,3,1,0;19)"])
    return expected, computed, []


def _siegel(opts):
    N = opts.get("N", DEFAULT_SIEGEL_N)
    expected, computed = {}, {}
    for f in IDONEAL_FORMS:
        R = theta_array(f, N)
        expected[f] = []
        computed[f] = [n for n in range(1, N + 1) if siegel_count(f, n) != R[n]]
    return expected, computed, [f"lists of n <= {N} where the Siegel count differs from enumeration"]


def _prelist(form, opts):
    form = TernaryForm.coerce(form)
    exp = expected_data()["prelist"][str(form)]
    res = cmd_prelist(form, opts.get("catalog"))
    expected = {"prelist": exp["values"]}
    computed = {"prelist": res.prelist}
    notes = [f"{len(res.candidates)} candidates from the bound cascade",
             f"spurious (bound met, count above |Aut|): {res.spurious}"]
    if "spurious" in exp:
        # the listed spurious values must all be flagged; further flagged values are reported
        expected["listed spurious values flagged"] = exp["spurious"]
        computed["listed spurious values flagged"] = [n for n in exp["spurious"] if n in res.spurious]
        extra = [n for n in res.spurious if n not in exp["spurious"]]
        if extra:
            notes.append(f"additional spurious values beyond the listed ones: {extra}")
    return expected, computed, notes


def _unique(form, opts):
    form = TernaryForm.coerce(form)
    exp = expected_data()["unique"][str(form)]
    N = opts.get("N", DEFAULT_SCAN)
    domain = (lambda n: n % 2 == 1) if exp.get("domain") == "odd" else None
    factor = exp.get("family_factor")
    res = cmd_unique(form, N, factor, domain, opts.get("catalog"))
    notes = [f"method: {res.method}"]
    if factor:
        expected = {"base": exp["base"], "family": "identity-backed"}
        computed = {"base": res.family.base, "family": res.family.label}
        if res.method == "prelist":
            expected["prelist-derived values"] = exp["base"]
            computed["prelist-derived values"] = res.values
        notes.append(f"family {factor}^k * v certified to N={N}: "
                     f"{res.family.scaling_checked} scaling pairs checked")
    else:
        expected = {"values": exp["values"]}
        computed = {"values": res.values}
        if res.method == "scan":
            notes.append(f"exhaustive scan to N={N}")
    return expected, computed, notes


def _unique_even_123(opts):
    N = opts.get("N", DEFAULT_SCAN)
    found = unique_scan("1,2,3,0,0,0", N, lambda n: n % 2 == 0)
    powers = [2 ** j for j in range(1, N.bit_length() + 1, 2) if 2 ** j <= N]
    return {"even unique values": powers}, {"even unique values": found}, [f"scan to N={N}"]


def _candidates_all_ones(opts):
    data = expected_data()["candidates"]
    N = opts.get("N", DEFAULT_SCAN)
    R = theta_array("1,1,1,1,1,1", N)
    even = [n for n in range(2, N + 1, 2) if 0 < R[n] <= 48]
    odd = [n for n in range(1, N + 1, 2) if 0 < R[n] <= 48]
    expected = {"even (family base)": data["all-ones-even"]["values"], "odd": data["all-ones-odd"]["values"]}
    computed = {"even (family base)": family_base(even, 4), "odd": odd}
    return expected, computed, [f"scan to N={N}"]


def _kaplansky(opts):
    expected, computed, notes = {}, {}, []
    for f in ("1,3,3,0,0,0", "1,1,3,0,0,0", "1,2,3,0,0,0"):
        e, c, n = _unique(f, opts)
        expected.update({f"{f} {k}": v for k, v in e.items()})
        computed.update({f"{f} {k}": v for k, v in c.items()})
        notes += [f"{f}: {x}" for x in n]
    e, c, n = _unique_even_123(opts)
    expected.update(e)
    computed.update(c)
    return expected, computed, notes


def _outlook(opts):
    N = opts.get("N", DEFAULT_SCAN)
    expected, computed, notes = _identities(["non-idoneal"], opts)
    expected["|Aut(1,3,3,1,0,1)|"] = 4
    computed["|Aut(1,3,3,1,0,1)|"] = len(automorph_group("1,3,3,1,0,1"))
    expected["|Aut(1,1,11,1,1,1)|"] = 12
    computed["|Aut(1,1,11,1,1,1)|"] = len(automorph_group("1,1,11,1,1,1"))
    f = theta_array("1,3,3,1,0,1", N)
    s = theta_array("1,1,1,0,0,0", 2 * N)
    # for n = 1 mod 4 the count is at most R(1,1,1,0,0,0;2n)/3, so uniqueness needs R(..;2n) <= 12
    expected["bound R <= R(1,1,1,0,0,0;2n)/3 on n = 1 mod 4"] = True
    computed["bound R <= R(1,1,1,0,0,0;2n)/3 on n = 1 mod 4"] = all(
        3 * f[n] <= s[2 * n] for n in range(1, N + 1, 4))
    expected["n = 1 mod 4 with R(1,1,1,0,0,0;2n) <= 12"] = [1]
    computed["n = 1 mod 4 with R(1,1,1,0,0,0;2n) <= 12"] = [
        n for n in range(1, N + 1, 4) if s[2 * n] <= 12]
    expected["unique values"] = [1]
    computed["unique values"] = unique_scan("1,3,3,1,0,1", N)
    notes.append(f"scan bound {N}")
    return expected, computed, notes


def _registry() -> dict[str, Callable]:
    reg: dict[str, Callable] = {
        "table1": _table1,
        "table2": lambda o: _density_table("density_table_4096", o),
        "table3": lambda o: _density_table("density_table_8192", o),
        "appendix": _appendix,
        "densities": lambda o: _densities({c[0] for c in CLOSED_FORMS}, o),
        "identities": lambda o: _identities(list(catalog_groups()), o),
        "automorphs": _automorphs,
        "siegel": _siegel,
        "kaplansky": _kaplansky,
        "outlook": _outlook,
        "unique-even-1,2,3,0,0,0": _unique_even_123,
        "candidates-1,1,1,1,1,1": _candidates_all_ones,
    }
    for c in CLOSED_FORMS:
        reg[f"densities-{c[0]}"] = (lambda slug: lambda o: _densities({slug}, o))(c[0])
    for g in catalog_groups():
        reg[f"identities-{g}"] = (lambda g: lambda o: _identities([g], o))(g)
    for f in load_configs():
        reg[f"prelist-{f}"] = (lambda f: lambda o: _prelist(f, o))(f)
    for f in expected_data()["unique"]:
        reg[f"unique-{f}"] = (lambda f: lambda o: _unique(f, o))(f)
    return reg


def list_targets() -> list[str]:
    return sorted(_registry()) + sorted(expected_data()["aliases"])


def resolve(target: str) -> str:
    aliases = expected_data()["aliases"]
    return aliases.get(target, target)


def cmd_reproduce(target: str, **opts) -> ReproductionReport:
    reg = _registry()
    name = resolve(target)
    if name not in reg:
        raise UnknownTarget(target)
    t0 = time.perf_counter()
    expected, computed, notes = reg[name](opts)
    elapsed = time.perf_counter() - t0
    verdict = "pass" if expected == computed else "fail"
    if name != target:
        notes = [f"alias of {name}"] + notes
    return ReproductionReport(target, expected, computed, verdict, elapsed, notes)
