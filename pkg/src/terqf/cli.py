"""``terqf`` command line.

Exit codes: 0 success or reproduction pass, 1 reproduction mismatch, 2 usage
error, 3 violated precondition, 4 internal inconsistency.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .automorphs import automorph_group, orbit_partition
from .binaryqf import (InvalidDiscriminant, cached_catalog, class_group, class_number,
                       fundamental_decomposition)
from .forms import NotPositiveDefinite, TernaryForm, enumerate_representations, theta_coefficients
from .localdensity import (DensityDepthExceeded, SiegelInconsistency, local_density,
                           local_density_finite, siegel_assembly, siegel_count)
from .prelist import ConfigError, OutOfDomain, ZeroDensityClass, cmd_prelist, cmd_unique
from .reproduce import UnknownTarget, cmd_reproduce, list_targets

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_PRECONDITION, EXIT_INTERNAL = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class Output:
    """A JSON payload plus an optional tabular view for CSV."""

    def __init__(self, payload: dict, rows=None, exit_code: int = EXIT_OK):
        self.payload = payload
        self.rows = rows
        self.exit_code = exit_code

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.payload, indent=2) + "\n"
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if self.rows:
            header = list(self.rows[0])
            w.writerow(header)
            for r in self.rows:
                w.writerow([_cell(r[h]) for h in header])
        else:
            w.writerow(["key", "value"])
            for k, v in self.payload.items():
                w.writerow([k, _cell(v)])
        return buf.getvalue()


def _cell(v) -> str:
    if isinstance(v, (list, tuple, dict)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def _form(args) -> TernaryForm:
    if not args.form:
        raise UsageError("--form is required")
    try:
        return TernaryForm.parse(args.form)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _need(args, name):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name} is required")
    return value


def cmd_repr(args):
    f, n = _form(args), _need(args, "n")
    if n < 0:
        raise ValueError("n must be nonnegative")
    reps = enumerate_representations(f, n)
    triples = [list(t) for t in reps.triples]
    return Output({"form": str(f), "n": n, "count": len(triples), "triples": triples},
                  [{"x": t[0], "y": t[1], "z": t[2]} for t in triples])


def cmd_orbits(args):
    f, n = _form(args), _need(args, "n")
    part = orbit_partition(f, n)
    orbits = [[list(v) for v in o] for o in part.orbits]
    rows = [{"orbit": i, "x": v[0], "y": v[1], "z": v[2]} for i, o in enumerate(orbits) for v in o]
    return Output({"form": str(f), "n": n, "essential_count": len(orbits),
                   "sizes": part.sizes, "orbits": orbits}, rows)


def cmd_aut(args):
    f = _form(args)
    group = automorph_group(f)
    mats = [[list(r) for r in M] for M in group]
    return Output({"form": str(f), "order": len(mats), "automorphs": mats},
                  [{"index": i, "matrix": m} for i, m in enumerate(mats)])


def cmd_theta(args):
    f, N = _form(args), _need(args, "N")
    if N < 0:
        raise ValueError("N must be nonnegative")
    coeffs = theta_coefficients(f, N).to_list()
    return Output({"form": str(f), "N": N, "coefficients": coeffs},
                  [{"n": i, "count": c} for i, c in enumerate(coeffs)])


def cmd_density(args):
    f, p, n = _form(args), _need(args, "p"), _need(args, "n")
    if args.k is not None:
        value = local_density_finite(f, p, n, args.k)
        return Output({"form": str(f), "p": p, "n": n, "k": args.k, "value": str(value)})
    d = local_density(f, p, n)
    return Output({"form": str(f), "p": p, "n": n, "value": str(d.value), "k_used": d.k_used})


def _disc(args) -> int:
    D = _need(args, "D")
    return D if D < 0 else -D


def cmd_classnum(args):
    D = _disc(args)
    dec = fundamental_decomposition(D)
    return Output({"D": D, "h": class_number(D), "fundamental": dec.d, "conductor": dec.cond,
                   "unit_factor": dec.unit_factor})


def cmd_classgroup(args):
    D = _disc(args)
    G = class_group(D)
    reps = [[g.A, g.B, g.C] for g in G.representatives]
    orders = [G.order_of(i) for i in range(G.h)]
    return Output({"D": D, "h": G.h, "structure": G.label, "representatives": reps, "orders": orders},
                  [{"A": r[0], "B": r[1], "C": r[2], "order": o} for r, o in zip(reps, orders)])


def cmd_siegel(args):
    f, n = _form(args), _need(args, "n")
    if args.explain:
        asm = siegel_assembly(f, n)
        payload = asm.to_dict()
        payload["integral"] = asm.count.denominator == 1
        code = EXIT_OK if payload["integral"] else EXIT_INTERNAL
        return Output(payload, exit_code=code)
    return Output({"form": str(f), "n": n, "count": siegel_count(f, n)})


def cmd_prelist_cli(args):
    f = _form(args)
    res = cmd_prelist(f, args.catalog)
    rows = [{"n": n, "count": res.counts[n], "status": "prelist" if n in res.prelist else "spurious"}
            for n in res.candidates]
    return Output(res.to_dict(), rows)


def cmd_unique_cli(args):
    f = _form(args)
    N = args.N if args.N is not None else 5000
    res = cmd_unique(f, N, catalog_path=args.catalog)
    return Output(res.to_dict(), [{"n": n} for n in res.values])


def cmd_reproduce_cli(args):
    if args.list:
        names = list_targets()
        return Output({"targets": names}, [{"target": t} for t in names])
    if not args.target:
        raise UsageError("a target is required (see --list)")
    opts = {}
    if args.N is not None:
        opts["N"] = args.N
    if args.catalog:
        opts["catalog"] = args.catalog
    try:
        rep = cmd_reproduce(args.target, **opts)
    except UnknownTarget:
        raise UsageError(f"unknown target {args.target!r} (see --list)") from None
    payload = rep.to_dict(runtime=args.timing)
    code = EXIT_OK if rep.passed else EXIT_MISMATCH
    row = {"target": rep.target, "verdict": rep.verdict}
    return Output(payload, [row], exit_code=code)


COMMANDS = {
    "repr": (cmd_repr, "list every representation of n"),
    "orbits": (cmd_orbits, "split the representations of n into automorph orbits"),
    "aut": (cmd_aut, "automorph group of a form"),
    "theta": (cmd_theta, "theta series coefficients up to N"),
    "density": (cmd_density, "p-adic local density"),
    "classnum": (cmd_classnum, "class number of a negative discriminant"),
    "classgroup": (cmd_classgroup, "class group structure of a negative discriminant"),
    "siegel": (cmd_siegel, "representation count of an idoneal form from local data"),
    "prelist": (cmd_prelist_cli, "n with 0 < R(n) <= |Aut|, from the class-number catalog"),
    "unique": (cmd_unique_cli, "essentially uniquely represented integers"),
    "reproduce": (cmd_reproduce_cli, "recompute a table or result and compare with expected data"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--catalog", metavar="PATH", help="JSON cache for the class-number catalog")
    parser = _Parser(prog="terqf", description="positive ternary quadratic forms toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_text, parents=[common])
        if name not in ("classnum", "classgroup", "reproduce"):
            sp.add_argument("--form", help="coefficients a,b,c,d,e,f")
        if name in ("repr", "orbits", "density", "siegel"):
            sp.add_argument("--n", type=int)
        if name == "density":
            sp.add_argument("--p", type=int)
            sp.add_argument("--k", type=int, help="fixed lift depth instead of stabilization")
        if name in ("theta", "unique", "reproduce"):
            sp.add_argument("--N", type=int)
        if name in ("classnum", "classgroup"):
            sp.add_argument("--D", type=int, help="discriminant (sign optional)")
        if name == "siegel":
            sp.add_argument("--explain", action="store_true", help="print the factor breakdown")
        if name == "reproduce":
            sp.add_argument("target", nargs="?")
            sp.add_argument("--list", action="store_true")
            sp.add_argument("--timing", action="store_true", help="include runtime in the report")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.catalog:
            cached_catalog(args.catalog)
        out = COMMANDS[args.command][0](args)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"terqf: usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except SiegelInconsistency as exc:
        print(f"terqf: inconsistency: {exc}", file=stderr)
        print(json.dumps(exc.breakdown, indent=2), file=stderr)
        return EXIT_INTERNAL
    except DensityDepthExceeded as exc:
        print(f"terqf: inconsistency: {exc}", file=stderr)
        return EXIT_INTERNAL
    except (NotPositiveDefinite, InvalidDiscriminant, ConfigError, OutOfDomain,
            ZeroDensityClass, ValueError) as exc:
        print(f"terqf: precondition failed: {exc}", file=stderr)
        return EXIT_PRECONDITION
    stdout.write(out.render(args.format))
    return out.exit_code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
