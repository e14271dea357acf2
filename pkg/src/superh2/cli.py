"""Command-line interface.

    superh2 catalog
    superh2 hom2 --builtin F2 --m 3 --n 1
    superh2 cocycle-check --spec myalg.json --case 2,2
    superh2 reproduce --out report.json

Exit status: 0 when everything passes, 1 when a mathematical check fails,
2 on usage, input or resource errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from . import __version__
from .cocycle import CASES, CocycleViolationError, build_extension, verify_presentation, verify_Tsharp_identities
from .homology import DEFAULT_BUDGET, ResourceError, h2_graded
from .kalgebra import AlgebraSpecError, IdealIdentityError, InvalidAlgebraError, builtin, builtin_catalog, ideal_Im, load_algebra_spec
from .lie import verify_superaxioms
from .matrices import UnsupportedRankError, build_sl
from .reproduce import all_pass, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load(args):
    if args.builtin and args.spec:
        raise UsageError("give either --builtin or --spec, not both")
    if args.builtin:
        try:
            return builtin(args.builtin)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    if args.spec:
        return load_algebra_spec(args.spec)
    raise UsageError("an algebra is required: --builtin NAME or --spec PATH")


def _case(text: str) -> tuple:
    try:
        case = tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad case {text!r}; use 3,1 or 2,2") from None
    if case not in CASES:
        raise argparse.ArgumentTypeError(f"unsupported case {text!r}; use 3,1 or 2,2")
    return case


def _emit(doc: dict, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")


def cmd_catalog(args) -> int:
    print(f"{'name':14s} {'field':5s} {'dim':>3s} {'dim R2':>6s} {'dim R0':>6s}")
    for name, A in builtin_catalog():
        r2, r0 = ideal_Im(A, 2).quotient_dim, ideal_Im(A, 0).quotient_dim
        print(f"{name:14s} {A.field.name:5s} {A.dim:3d} {r2:6d} {r0:6d}")
    return EXIT_OK


def cmd_hom2(args) -> int:
    A = _load(args)
    sl = build_sl(args.m, args.n, A)
    if sl.dim > args.budget:
        raise ResourceError(sl.dim, args.budget, f"sl({args.m},{args.n},{A.name or 'R'})")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        dims = h2_graded(sl.lie)
    print(dims)
    _emit({"algebra": A.name, "m": args.m, "n": args.n, "dim": sl.dim, "even": dims.even, "odd": dims.odd}, args.out)
    return EXIT_OK


def cmd_cocycle_check(args) -> int:
    A = _load(args)
    case = args.case
    ext = build_extension(case, A, check=False)
    if ext.total.dim > args.budget:
        raise ResourceError(ext.total.dim, args.budget, "extension")
    doc = {"algebra": A.name, "case": list(case), "kernel_dim": ext.kernel.total_dim, "results": {}}
    ok = True

    axioms = verify_superaxioms(ext.total)
    ok &= axioms.ok
    line = "pass" if axioms.ok else f"FAIL at {', '.join(ext.total.labels[k] for k in axioms.first()[1])}"
    print(f"cocycle (super-axioms of the extension): {line}")
    doc["results"]["cocycle"] = axioms.summary()

    for title, rep in (("presentation", verify_presentation(case, ext)), ("T#", verify_Tsharp_identities(case, ext))):
        ok &= rep.ok
        for fam, counts in rep.summary().items():
            verdict = "pass" if counts["failures"] == 0 else f"FAIL ({counts['failures']} failures)"
            print(f"{title}: {fam}: {verdict} [{counts['checks']} checks]")
        doc["results"][title] = rep.summary()
    _emit(doc, args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_reproduce(args) -> int:
    def progress(msg):
        print(f"running {msg}", file=sys.stderr)

    report = run_suite(args.algebras, budget=args.budget, progress=progress if args.verbose else None)
    text = json.dumps(report, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print("\n".join(report["table"]))
    else:
        print("\n".join(report["table"]), file=sys.stderr)
        sys.stdout.write(text)
    return EXIT_OK if all_pass(report) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="superh2", description="Graded H2 of sl(m,n,R) and its explicit central extensions.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def algebra_opts(sp):
        sp.add_argument("--builtin", metavar="NAME", help="catalog algebra (see `superh2 catalog`)")
        sp.add_argument("--spec", metavar="PATH", help="algebra spec JSON file")
        sp.add_argument("--out", metavar="PATH", help="write a JSON result here")
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max algebra dimension (default %(default)s)")

    sp = sub.add_parser("catalog", help="list the built-in algebras")
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("hom2", help="graded H2 of sl(m,n,R)")
    algebra_opts(sp)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_hom2)

    sp = sub.add_parser("cocycle-check", help="build the central extension and verify its relations")
    algebra_opts(sp)
    sp.add_argument("--case", type=_case, required=True, help="3,1 or 2,2")
    sp.set_defaults(func=cmd_cocycle_check)

    sp = sub.add_parser("reproduce", help="run every check over the catalog and write a report")
    sp.add_argument("--out", metavar="PATH", help="JSON report path (default: standard output)")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--algebras", nargs="+", metavar="NAME", help="restrict to these catalog entries")
    sp.add_argument("-v", "--verbose", action="store_true")
    sp.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, AlgebraSpecError, InvalidAlgebraError, UnsupportedRankError, ResourceError, OSError) as exc:
        print(f"superh2: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KeyError as exc:
        print(f"superh2: error: {exc.args[0]}", file=sys.stderr)
        return EXIT_USAGE
    except (CocycleViolationError, IdealIdentityError) as exc:
        print(f"superh2: check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
