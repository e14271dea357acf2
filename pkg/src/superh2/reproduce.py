"""Full reproduction run over the algebra catalog.

The report is a plain JSON-able dict with a fixed key order.  Every verdict
is a function of the numbers recorded in the report itself (see
:func:`evaluate`), and wall-clock timings live only under ``"timings"``.
"""

from __future__ import annotations

import time
import warnings

from . import __version__
from .cocycle import (
    CASES,
    build_extension,
    build_kernel_module,
    build_quad_tables,
    extension_table,
    verify_presentation,
    verify_Tsharp_identities,
)
from .homology import DEFAULT_BUDGET, InconsistentAlgebraError, chain2, h2_graded
from .kalgebra import CATALOG_NAMES, KAlgebra, builtin, ideal_Im
from .lie import is_perfect, verify_superaxioms
from .matrices import build_gl, build_sl, verify_t_identities

AXIOM_SHAPES = ((2, 1), (3, 1), (2, 2))
WIDE_SHAPES = ((3, 2), (4, 1))
STABLE_RANGE_ALGEBRAS = ("F2", "F2[x]/(x^2)", "F3", "Q")
SMALL_CHAIN_DIM = 12
CORRUPTIONS = (((1, 4, 2, 3),), ((1, 4, 2, 3), (2, 3, 1, 4)))

CRITERIA = {
    "1": "super-axioms of gl and sl",
    "2": "T_ij / t bracket identities on sl",
    "3": "cocycle property and corruption detection",
    "4": "extension presentation and T# identities",
    "5": "graded H2 dimension identities",
    "6": "extension kills the cocycle classes",
    "7": "chain-level consistency",
}

# spot values as (algebra, m, n, even - h, odd)
SPOT_VALUES = (
    ("F2", 3, 1, 0, 6),
    ("Q", 3, 1, 0, 0),
    ("F2[x]/(x^2)", 3, 1, 0, 12),
    ("Q", 2, 2, 2, 0),
    ("F2", 2, 2, 6, 0),
    ("Weyl(F2)", 2, 2, 0, 0),
)


def _small(A: KAlgebra, name: str) -> bool:
    return A.dim <= 2 or name == "Weyl(F2)"


def _identity_entry(rep) -> dict:
    return {"families": rep.summary(), "info": dict(sorted(rep.info.items()))}


def _dims(g) -> list:
    d = h2_graded(g)
    return [d.even, d.odd]


def _skip(dim: int, budget: int) -> str:
    return f"dim {dim} exceeds budget {budget}"


def run_suite(names=None, budget: int = DEFAULT_BUDGET, progress=None) -> dict:
    names = list(names) if names else list(CATALOG_NAMES)
    algebras = [(n, builtin(n)) for n in names]
    names = [n for n, _ in algebras]
    timings: dict = {"per_algebra": {}}
    t_start = time.perf_counter()
    say = progress or (lambda msg: None)

    report = {
        "tool": {"name": "superh2", "version": __version__},
        "budget": budget,
        "algebras": [],
        "axioms": [],
        "t_identities": [],
        "cocycles": [],
        "corruption": [],
        "presentations": [],
        "homology": [],
        "extensions": [],
        "chain": [],
        "spot_values": [],
    }

    def chain_record(label, g):
        entry = {"algebra": label, "dim": g.dim}
        try:
            dims = _dims(g)
            entry["d2_annihilates_b2"] = True
        except InconsistentAlgebraError:
            dims = None
            entry["d2_annihilates_b2"] = False
        report["chain"].append(entry)
        return dims

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for name, A in algebras:
            t0 = time.perf_counter()
            say(f"{name}")
            R2, R0 = ideal_Im(A, 2).quotient_dim, ideal_Im(A, 0).quotient_dim
            report["algebras"].append({"name": name, "field": A.field.name, "dim": A.dim, "dim_R2": R2, "dim_R0": R0})

            shapes = AXIOM_SHAPES + (WIDE_SHAPES if A.dim <= 2 else ())
            sls = {}
            for m, n in shapes:
                for kind, build in (("gl", build_gl), ("sl", build_sl)):
                    g = build(m, n, A)
                    entry = {"algebra": name, "kind": kind, "m": m, "n": n, "dim": g.dim}
                    if g.dim > budget:
                        entry["skipped"] = _skip(g.dim, budget)
                    else:
                        entry["violations"] = verify_superaxioms(g.lie).summary()
                        entry["perfect"] = is_perfect(g.lie)
                    report["axioms"].append(entry)
                    if kind == "sl":
                        sls[m, n] = g

            if _small(A, name):
                for m, n in AXIOM_SHAPES:
                    rep = verify_t_identities(sls[m, n])
                    report["t_identities"].append({"algebra": name, "m": m, "n": n, **_identity_entry(rep)})

            shapes = AXIOM_SHAPES + (WIDE_SHAPES if name in STABLE_RANGE_ALGEBRAS else ())
            h2 = {}
            for m, n in shapes:
                g = sls.get((m, n)) or build_sl(m, n, A)
                entry = {"algebra": name, "m": m, "n": n, "dim": g.dim}
                if g.dim > budget:
                    entry["skipped"] = _skip(g.dim, budget)
                else:
                    dims = chain_record(f"sl({m},{n},{name})", g.lie)
                    if dims is not None:
                        entry["even"], entry["odd"] = dims
                        h2[m, n] = dims
                    else:
                        entry["skipped"] = "inconsistent bracket"
                report["homology"].append(entry)

            for case in CASES:
                ext = build_extension(case, A, check=False)
                w = ext.kernel.total_dim
                entry = {"algebra": name, "case": list(case), "kernel_dim": w, "dim": ext.total.dim}
                if ext.total.dim > budget:
                    entry["skipped"] = _skip(ext.total.dim, budget)
                else:
                    entry["violations"] = verify_superaxioms(ext.total).summary()
                    entry["perfect"] = is_perfect(ext.total)
                report["cocycles"].append(entry)

                if _small(A, name) and ext.total.dim <= budget:
                    pres = verify_presentation(case, ext)
                    tsh = verify_Tsharp_identities(case, ext)
                    report["presentations"].append(
                        {"algebra": name, "case": list(case), "presentation": _identity_entry(pres), "tsharp": _identity_entry(tsh)}
                    )

                if w:
                    e = {"algebra": name, "case": list(case), "kernel_dim": w, "kernel_parity": CASES[case]["parity"], "dim": ext.total.dim}
                    if ext.total.dim > budget or case not in h2:
                        e["skipped"] = _skip(ext.total.dim, budget) if ext.total.dim > budget else "sl homology skipped"
                    else:
                        e["sl"] = h2[case]
                        dims = chain_record(f"extension({case[0]},{case[1]},{name})", ext.total)
                        if dims is not None:
                            e["extension"] = dims
                    report["extensions"].append(e)

            if A.dim == 1:
                for kind, build in (("gl", build_gl), ("sl", build_sl)):
                    g = build(2, 1, A).lie
                    if g.dim <= SMALL_CHAIN_DIM:
                        c_sorted, c_all = chain2(g), chain2(g, all_triples=True)
                        report["chain"].append(
                            {
                                "algebra": f"{kind}(2,1,{name})",
                                "dim": g.dim,
                                "d2_annihilates_b2": True,
                                "b2_rank_sorted_triples": c_sorted.b2_rank(g.field),
                                "b2_rank_all_triples": c_all.b2_rank(g.field),
                            }
                        )

            timings["per_algebra"][name] = round(time.perf_counter() - t0, 3)

        t0 = time.perf_counter()
        # sign flips are invisible in characteristic 2, so corrupt over Q and F3
        for A in (builtin("Q"), builtin("F3")):
            sl = build_sl(2, 2, A)
            module = build_kernel_module((2, 2), A)
            for flips in CORRUPTIONS:
                tables = build_quad_tables().with_sign_flipped(flips)
                total = extension_table((2, 2), sl, module, tables)
                report["corruption"].append(
                    {"algebra": A.name, "case": [2, 2], "flipped": [list(q) for q in flips], "violations": verify_superaxioms(total).summary()}
                )
        timings["corruption"] = round(time.perf_counter() - t0, 3)

    for alg, m, n, de, odd in SPOT_VALUES:
        if alg in names:
            report["spot_values"].append({"algebra": alg, "m": m, "n": n, "even_minus_h": de, "odd": odd})

    report["verdicts"] = evaluate(report)
    report["table"] = render_table(report)
    timings["total"] = round(time.perf_counter() - t_start, 3)
    report["timings"] = timings
    return report


# ---------------------------------------------------------------------------
# verdicts, recomputed from the report's numbers only
# ---------------------------------------------------------------------------


def _clean(v: dict) -> bool:
    return not any(v.values())


def _families_ok(entry: dict) -> bool:
    fam = entry["families"]
    return bool(fam) and all(f["failures"] == 0 and f["checks"] > 0 for f in fam.values())


def _h2_index(report: dict) -> dict:
    return {(e["algebra"], e["m"], e["n"]): (e["even"], e["odd"]) for e in report["homology"] if "skipped" not in e}


def expected_h2(report: dict) -> dict:
    """(algebra, m, n) -> expected (even, odd) from h = H2(sl(2,1)) and dim R2, dim R0."""
    h2 = _h2_index(report)
    out = {}
    for a in report["algebras"]:
        name = a["name"]
        if (name, 2, 1) not in h2:
            continue
        h = h2[name, 2, 1][0]
        out[name, 2, 1] = (h, 0)
        out[name, 3, 1] = (h, 6 * a["dim_R2"])
        out[name, 2, 2] = (h + 4 * a["dim_R2"] + 2 * a["dim_R0"], 0)
        out[name, 3, 2] = (h, 0)
        out[name, 4, 1] = (h, 0)
    return out


def evaluate(report: dict) -> dict:
    v = {}
    ax = [e for e in report["axioms"] if "skipped" not in e]
    v["1"] = all(_clean(e["violations"]) for e in ax)

    v["2"] = all(_families_ok(e) for e in report["t_identities"])

    coc = [e for e in report["cocycles"] if "skipped" not in e]
    detected = [not _clean(e["violations"]) for e in report["corruption"]]
    v["3"] = all(_clean(e["violations"]) for e in coc) and bool(detected) and all(detected)

    v["4"] = all(_families_ok(e["presentation"]) and _families_ok(e["tsharp"]) for e in report["presentations"])

    h2, want = _h2_index(report), expected_h2(report)
    ok5 = all(h2[k] == want[k] for k in h2 if k in want)
    for s in report["spot_values"]:
        key = (s["algebra"], s["m"], s["n"])
        if key in h2 and (s["algebra"], 2, 1) in h2:
            h = h2[s["algebra"], 2, 1][0]
            ok5 = ok5 and h2[key] == (h + s["even_minus_h"], s["odd"])
    v["5"] = ok5

    ok6 = True
    for e in report["extensions"]:
        if "skipped" in e or "extension" not in e:
            ok6 = ok6 and "skipped" in e
            continue
        shift = [0, 0]
        shift[e["kernel_parity"]] = e["kernel_dim"]
        ok6 = ok6 and e["extension"] == [e["sl"][0] - shift[0], e["sl"][1] - shift[1]]
    v["6"] = ok6

    ok7 = all(e["d2_annihilates_b2"] for e in report["chain"])
    ok7 = ok7 and all(
        e["b2_rank_sorted_triples"] == e["b2_rank_all_triples"] for e in report["chain"] if "b2_rank_all_triples" in e
    )
    v["7"] = ok7
    return {k: ("pass" if ok else "fail") for k, ok in v.items()}


def recheck_report(report: dict) -> bool:
    """True iff the stored verdicts agree with a recomputation from the numbers."""
    return evaluate(report) == report["verdicts"]


def all_pass(report: dict) -> bool:
    return all(x == "pass" for x in report["verdicts"].values())


def strip_timings(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != "timings"}


# ---------------------------------------------------------------------------
# human table
# ---------------------------------------------------------------------------


def _fmt(p) -> str:
    return f"even {p[0]}, odd {p[1]}" if p is not None else "skipped"


def render_table(report: dict) -> list[str]:
    h2, want = _h2_index(report), expected_h2(report)
    lines = []
    for a in report["algebras"]:
        name = a["name"]
        h = h2.get((name, 2, 1))
        head = f"{name}  [{a['field']}, dim {a['dim']}, dim R2 = {a['dim_R2']}, dim R0 = {a['dim_R0']}"
        lines.append(head + (f", h = {h[0]}]" if h else ", h skipped]"))
        rows = (
            ("m+n>=5", "even h, odd 0", ((3, 2), (4, 1))),
            ("(3,1)", "even h, odd 6*dim R2", ((3, 1),)),
            ("(2,2)", "even h + 4*dim R2 + 2*dim R0, odd 0", ((2, 2),)),
        )
        for label, formula, shapes in rows:
            got = [(s, h2.get((name, *s))) for s in shapes]
            if label == "m+n>=5" and all(g is None for _, g in got):
                continue
            exp = want.get((name, *shapes[0]))
            ok = all(g is not None and g == want.get((name, *s)) for s, g in got)
            obs = "; ".join(f"({s[0]},{s[1]}) {_fmt(g)}" for s, g in got)
            lines.append(f"  {label:7s} {formula} = {_fmt(exp)}  ->  {obs}  {'ok' if ok else 'MISMATCH'}")
    for k, verdict in report["verdicts"].items():
        lines.append(f"criterion {k} ({CRITERIA[k]}): {verdict}")
    return lines
