"""Command line front end: bounds, spectra, decompositions and the oracle suites.

Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from importlib import resources

from . import budget, chars, hecke, weyl
from .budget import BudgetExceeded
from .weyl import WeylDescriptor

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(ValueError):
    pass


# -- request parsing ----------------------------------------------------------------


def _parse_nodes(desc: WeylDescriptor, text: str) -> frozenset:
    text = text.strip().strip("{}")
    if not text:
        return frozenset()
    return weyl.type_subset(desc, [x for x in text.split(",") if x.strip()])


def _request(args, self_opposite: bool = True) -> tuple[WeylDescriptor, hecke.StructureConstants | None, frozenset, frozenset]:
    """Descriptor, structure constants, type and cotype from the common flags."""
    try:
        desc = WeylDescriptor(args.family, args.rank)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    sc = None
    if getattr(args, "q", None) is not None:
        if desc.family == "B" and args.e is None:
            raise UsageError("type B needs --e (one of 0, 1/2, 1, 3/2, 2)")
        if desc.family != "B" and args.e is not None:
            raise UsageError(f"--e only applies to type B, not {desc.family}")
        e = hecke.E_TOKENS[args.e] if args.e is not None else None
        try:
            sc = hecke.StructureConstants.for_family(desc.family, args.q, e)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if args.type is not None and args.cotype is not None:
        raise UsageError("give --type or --cotype, not both")
    try:
        if args.cotype is not None:
            J = _parse_nodes(desc, args.cotype)
            T = weyl.complement(desc, J)
        else:
            T = weyl.all_nodes(desc) if args.type is None else _parse_nodes(desc, args.type)
            J = weyl.complement(desc, T)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    image = weyl.w0_action_on_types(desc, T)
    if self_opposite and image != T:
        raise hecke.NotSelfOpposite(desc, T, image, "type")
    return desc, sc, T, J


def _header(desc, sc, T, J) -> dict:
    return {
        "family": desc.family,
        "rank": desc.rank,
        "q": None if sc is None else sc.q,
        "e": hecke.format_e(sc.e) if sc is not None and desc.family == "B" else None,
        "type": [str(x) for x in weyl.sorted_nodes(desc, T)],
        "cotype": [str(x) for x in weyl.sorted_nodes(desc, J)],
    }


def _title(doc: dict) -> str:
    parts = [f"{doc['family']}{doc['rank']}"]
    if doc.get("q") is not None:
        parts.append(f"q={doc['q']}")
    if doc.get("e") is not None:
        parts.append(f"e={doc['e']}")
    parts.append("type {" + ",".join(doc["type"]) + "}")
    parts.append("cotype {" + ",".join(doc["cotype"]) + "}")
    return "  ".join(parts)


# -- schema ------------------------------------------------------------------------------


def load_schema() -> dict:
    return json.loads(resources.files("oppflag").joinpath("schema.json").read_text(encoding="utf-8"))


def validate(doc: dict) -> None:
    import jsonschema

    jsonschema.validate(doc, load_schema())


def _emit(doc: dict, fmt: str, text: str, tsv: str) -> None:
    if fmt == "json":
        validate(doc)
        print(json.dumps(doc, indent=2, ensure_ascii=False))
    elif fmt == "tsv":
        print(tsv, end="" if tsv.endswith("\n") else "\n")
    else:
        print(text, end="" if text.endswith("\n") else "\n")


# -- subcommands ---------------------------------------------------------------------------


def bound_document(desc, sc, T, J) -> dict:
    report = hecke.ekr_bound(desc, sc, J)
    return {"kind": "bound", **report.to_json()}


def run_bound(args) -> int:
    desc, sc, T, J = _request(args)
    if sc is None:
        raise UsageError("bound needs --q")
    doc = bound_document(desc, sc, T, J)
    lines = [
        _title(doc),
        f"v            {doc['v']}",
        f"valency      {doc['valency']['value']}  (q^({doc['valency']['exp']}))",
        f"lambda_min   {doc['lambda_min']['value']}  ({doc['lambda_min']['sign']}q^({doc['lambda_min']['exp']}))",
        f"bound        {doc['bound']}",
        f"bound floor  {doc['bound_floor']}",
        f"closed form  {doc['closed_form']}",
    ]
    for c in doc["sharp_constructions"]:
        lines.append(f"construction {c['name']}: {c['size']}")
    for w in doc["warnings"]:
        lines.append(f"warning      {w}")
    tsv_rows = [
        ("v", doc["v"]),
        ("valency", doc["valency"]["value"]),
        ("lambda_min", doc["lambda_min"]["value"]),
        ("bound", doc["bound"]),
        ("bound_floor", doc["bound_floor"]),
        ("closed_form", doc["closed_form"]),
    ] + [(f"construction:{c['name']}", c["size"]) for c in doc["sharp_constructions"]]
    tsv = "key\tvalue\n" + "".join(f"{k}\t{v}\n" for k, v in tsv_rows)
    _emit(doc, args.format, "\n".join(lines), tsv)
    return EXIT_OK


def spectrum_document(desc, sc, T, J) -> dict:
    entries = hecke.eigenvalues_partial(desc, sc, J)
    e = sc.e_value
    rows = []
    for x in entries:
        ev = x.eigenvalue.to_json(desc.family, sc.q, e)
        rows.append({"label": str(x.label), "multiplicity": x.multiplicity, **ev})
    return {"kind": "spectrum", **_header(desc, sc, T, J), "rows": rows}


def run_spectrum(args) -> int:
    desc, sc, T, J = _request(args)
    if sc is None:
        raise UsageError("spectrum needs --q")
    doc = spectrum_document(desc, sc, T, J)
    width = max([len(r["label"]) for r in doc["rows"]] + [5])
    lines = [_title(doc), f"{'label':<{width}}  mult  sign  exp       value"]
    for r in doc["rows"]:
        lines.append(f"{r['label']:<{width}}  {r['multiplicity']:>4}  {r['sign']:>4}  {r['exp']:<8}  {r['value']}")
    tsv = "label\tmultiplicity\tsign\texp\tvalue\n" + "".join(
        f"{r['label']}\t{r['multiplicity']}\t{r['sign']}\t{r['exp']}\t{r['value']}\n" for r in doc["rows"]
    )
    _emit(doc, args.format, "\n".join(lines), tsv)
    return EXIT_OK


def run_decompose(args) -> int:
    desc, sc, T, J = _request(args, self_opposite=False)
    dec = chars.induce_trivial(desc, J)
    rows = [{"label": str(lab), "multiplicity": m, "dimension": chars.dimension(lab)} for lab, m in dec]
    doc = {"kind": "decompose", **_header(desc, sc, T, J), "index": dec.degree(), "rows": rows}
    lines = [_title(doc), f"[W : W_J] = {doc['index']}"]
    lines += [f"{r['multiplicity']} x {r['label']}  (degree {r['dimension']})" for r in rows]
    tsv = "label\tmultiplicity\tdimension\n" + "".join(
        f"{r['label']}\t{r['multiplicity']}\t{r['dimension']}\n" for r in rows
    )
    _emit(doc, args.format, "\n".join(lines), tsv)
    return EXIT_OK


# -- verification suites -------------------------------------------------------------------

SUITES = ("hecke-a2", "pg22", "pg32", "sp62", "o8plus", "counts", "all")
COUNT_GEOMETRIES = ("PG(3,2)", "PG(3,3)", "PG(4,2)", "Sp(6,2)", "O(7,2)", "O+(8,2)", "O-(8,2)")
SUITE_INSTANCES = {
    "pg22": [("PG(2,2)", "1,2")],
    "pg32": [("PG(3,2)", "2"), ("PG(3,2)", "1,2,3")],
    "sp62": [("Sp(6,2)", "1"), ("Sp(6,2)", "3")],
    "o8plus": [("O+(8,2)", "4'"), ("O+(8,2)", "1")],
}
SUITE_BLOWUPS = {"pg32": [("PG(3,2)", "2")], "sp62": [("Sp(6,2)", "3")]}
SUITE_COUNTS = {"pg32": ("PG(3,2)",), "sp62": ("Sp(6,2)",), "o8plus": ("O+(8,2)",), "counts": COUNT_GEOMETRIES}


def count_check(name: str):
    from .geometry import CheckReport, geometry, spec_from_name

    g = geometry(spec_from_name(name))
    found = [len(g.subspaces(k)) for k in range(1, g.max_dim() + 1)]
    expected = [g.expected_count(k) for k in range(1, g.max_dim() + 1)]
    return CheckReport(f"subspace counts {name}", found == expected, {"enumerated": found, "formula": expected})


def instance_report(name: str, type_text: str) -> tuple[dict, list]:
    """Full oracle run on one (geometry, type): instance document and its checks."""
    from .geometry import (
        CheckReport,
        build_opposition_graph,
        construction_kinds,
        max_coclique,
        predicted_for,
        spec_from_name,
        verify_construction,
        verify_spectrum,
    )

    spec = spec_from_name(name)
    desc = spec.descriptor
    sc = spec.structure_constants
    T = _parse_nodes(desc, type_text)
    J = weyl.complement(desc, T)
    doc = {"kind": "instance", "geometry": spec.name, **bound_document(desc, sc, T, J)}
    doc["kind"] = "instance"
    label = f"{spec.name} type {weyl.format_types(desc, T)}"
    graph = build_opposition_graph(spec, T)
    checks = []
    checks.append(
        CheckReport(
            f"vertex count {label}", graph.order == doc["v"], {"vertices": graph.order, "formula": doc["v"]}
        )
    )
    spec_report = verify_spectrum(graph, predicted_for(spec, T), spec.q, spec.e or 0)
    checks.append(CheckReport(f"spectrum {label}", spec_report.passed, spec_report.to_json(), spec_report.notes if not spec_report.passed else []))
    doc["spectrum_verified"] = spec_report.passed
    doc["realized_eigenvalues"] = [str(x) for x in spec_report.realized]
    doc["max_coclique"] = None
    doc["max_coclique_proven"] = None
    if graph.order <= budget.budget("coclique"):
        res = max_coclique(graph, upper_hint=doc["bound_floor"])
        doc["max_coclique"] = res.size
        doc["max_coclique_proven"] = res.proven
        checks.append(
            CheckReport(
                f"max coclique {label}",
                res.size <= doc["bound_floor"] and graph.is_coclique(res.witness),
                {"size": res.size, "bound_floor": doc["bound_floor"], "proven_optimal": res.proven},
            )
        )
    for kind in construction_kinds(spec, T):
        checks.append(verify_construction(spec, T, kind, graph))
    return doc, checks


def run_suite(suite: str) -> dict:
    from .geometry import GeometrySpec, verify_equitable_blowup, verify_hecke_relations
    from .geometry import spec_from_name

    names = [s for s in SUITES if s != "all"] if suite == "all" else [suite]
    checks, instances = [], []
    seen_counts = set()
    for s in names:
        if s == "hecke-a2":
            for q in (2, 3):
                checks.append(verify_hecke_relations(GeometrySpec.projective(2, q)))
        for name in SUITE_COUNTS.get(s, ()):
            if name not in seen_counts:
                seen_counts.add(name)
                checks.append(count_check(name))
        for name, type_text in SUITE_INSTANCES.get(s, ()):
            doc, inst_checks = instance_report(name, type_text)
            instances.append(doc)
            checks.extend(inst_checks)
        for name, type_text in SUITE_BLOWUPS.get(s, ()):
            spec = spec_from_name(name)
            checks.append(verify_equitable_blowup(spec, _parse_nodes(spec.descriptor, type_text)))
    return {
        "kind": "verify",
        "suite": suite,
        "passed": all(c.passed for c in checks),
        "checks": [_jsonable(c.to_json()) for c in checks],
        "instances": [_jsonable(d) for d in instances],
    }


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, str)) or x is None:
        return x
    if isinstance(x, int):
        return int(x)
    if isinstance(x, Fraction):
        return str(x)
    try:
        return int(x)
    except (TypeError, ValueError):
        return str(x)


def run_verify(args) -> int:
    doc = run_suite(args.suite)
    lines = []
    for c in doc["checks"]:
        lines.append(f"{'PASS' if c['passed'] else 'FAIL'}  {c['check']}")
        for f in c.get("failures", []):
            lines.append(f"      {f}")
    for inst in doc["instances"]:
        lines.append(
            f"      {inst['geometry']} type {{{','.join(inst['type'])}}}: v={inst['v']} bound={inst['bound']}"
            f" max_coclique={inst['max_coclique']}"
        )
    npass = sum(c["passed"] for c in doc["checks"])
    lines.append(f"suite {doc['suite']}: {npass}/{len(doc['checks'])} checks passed")
    tsv = "check\tresult\n" + "".join(f"{c['check']}\t{'PASS' if c['passed'] else 'FAIL'}\n" for c in doc["checks"])
    _emit(doc, args.format, "\n".join(lines), tsv)
    return EXIT_OK if doc["passed"] else EXIT_FAIL


def run_selftest(args) -> int:
    """Fast internal consistency checks, one line each."""
    from .geometry import GeometrySpec, verify_hecke_relations

    results = []
    for family, ranks in (("A", range(1, 4)), ("B", range(2, 4)), ("D", range(3, 5))):
        for n in ranks:
            desc = WeylDescriptor(family, n)
            ok = all(
                chars.induce_trivial(desc, J) == chars.induce_trivial_oracle(desc, J)
                for J in _subsets(weyl.node_labels(desc))
            )
            results.append((f"decomposition rules match the inner-product oracle on {desc}", ok))
    ok = True
    for n in range(2, 5):
        desc = WeylDescriptor("B", n)
        for e in hecke.E_TOKENS.values():
            for k in range(1, n + 1):
                J = weyl.complement(desc, {k})
                algo = hecke.value_multiset(
                    [x.eigenvalue for x in hecke.eigenvalues_partial(desc, hecke.StructureConstants(4, e), J)], e
                )
                closed = hecke.value_multiset(hecke.polar_single_type_spectrum(n, e, k, 4), e)
                ok &= algo == closed
    results.append(("single-type polar spectra agree with the closed form for n <= 4", ok))
    results.append(("Hecke relations on PG(2,2)", verify_hecke_relations(GeometrySpec.projective(2, 2)).passed))
    results.append(("subspace counts PG(3,2)", count_check("PG(3,2)").passed))
    for name, ok in results:
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
    return EXIT_OK if all(ok for _, ok in results) else EXIT_FAIL


def _subsets(items):
    for mask in range(1 << len(items)):
        yield frozenset(x for i, x in enumerate(items) if mask >> i & 1)


# -- entry point ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="oppflag", description=__doc__.splitlines()[0])
    parser.add_argument("--budget", help="budget overrides, e.g. vertices=8000,coclique=500")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_q: bool):
        p.add_argument("--family", required=True, choices=["A", "B", "D"])
        p.add_argument("--rank", required=True, type=int)
        if need_q:
            p.add_argument("--q", required=True, type=int)
            p.add_argument("--e", choices=list(hecke.E_TOKENS))
        p.add_argument("--type", help="comma separated node labels, e.g. 1,4' (default: all nodes)")
        p.add_argument("--cotype", help="comma separated node labels of the cotype")
        p.add_argument("--format", choices=["text", "json", "tsv"], default="text")

    p = sub.add_parser("bound", help="Delsarte-Hoffman bound for EKR-sets of flags")
    common(p, True)
    p.set_defaults(func=run_bound)
    p = sub.add_parser("spectrum", help="eigenvalues of opposition on flags of a type")
    common(p, True)
    p.set_defaults(func=run_spectrum)
    p = sub.add_parser("decompose", help="constituents of the permutation character on flags")
    common(p, False)
    p.set_defaults(func=run_decompose)
    p = sub.add_parser("verify", help="brute-force oracle suites")
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--format", choices=["text", "json", "tsv"], default="text")
    p.set_defaults(func=run_verify)
    p = sub.add_parser("selftest", help="fast internal consistency checks")
    p.set_defaults(func=run_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.budget:
        try:
            budget._parse(args.budget)
        except ValueError as exc:
            print(f"oppflag: error: {exc}", file=sys.stderr)
            return EXIT_USAGE
    saved = os.environ.get("OPPG_BUDGET")
    if args.budget:
        current = saved or ""
        os.environ["OPPG_BUDGET"] = ",".join(x for x in (current, args.budget) if x and "=" in x) or args.budget
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"oppflag: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except hecke.NotSelfOpposite as exc:
        print(f"oppflag: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except hecke.ConsistencyError as exc:
        print(f"oppflag: consistency failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, ValueError) as exc:
        print(f"oppflag: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if saved is None:
            os.environ.pop("OPPG_BUDGET", None)
        else:
            os.environ["OPPG_BUDGET"] = saved


if __name__ == "__main__":
    sys.exit(main())
