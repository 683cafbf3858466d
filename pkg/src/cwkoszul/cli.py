"""Command-line interface: validation, posets, cohomology tables, Koszulity.

Inputs are complex/graph JSON files or `catalog:<name>` pseudo-paths.  Every
command accepts --json for a machine-readable report; human output is aligned
plain text.  Exit codes: 0 success, 2 input or validation error, 3 hypothesis
failure; `koszul --exit-status` maps the verdict itself onto 0/1.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from . import __version__
from .bigraded import (
    cellular_cohomology,
    hx_table,
    koszul_obstructions,
    relative_cohomology,
)
from .catalog import catalog, catalog_names
from .cw import ComplexError, RegularCWComplex, complex_from_dict
from .dualalg import (
    annihilator_check,
    comparison_iso_check,
    graded_dims,
    koszul_decide,
    whole_graph_criterion,
)
from .layered import BOTTOM, GraphError, LayeredGraph, graph_from_dict
from .linalg import ZZ, field_from_spec


class InputError(Exception):
    """Bad file, schema violation, or failed validation: exit code 2."""


class HypothesisFailure(Exception):
    """A structural hypothesis of the requested computation fails: exit code 3."""


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _canonical_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def load_complex(spec: str) -> tuple[RegularCWComplex, dict]:
    if spec.startswith("catalog:"):
        name = spec[len("catalog:"):]
        try:
            x = catalog(name)
        except ComplexError as exc:
            raise InputError(str(exc)) from None
        digest = _sha256(_canonical_json(x.to_dict()).encode())
        return x, {"source": spec, "sha256": digest}
    try:
        with open(spec, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {spec!r}: {exc}") from None
    try:
        data = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InputError(f"{spec!r} is not valid UTF-8 JSON: {exc}") from None
    try:
        x = complex_from_dict(data)
    except ComplexError as exc:
        raise InputError(f"{spec!r}: {exc}") from None
    report = x.validate()
    if report:
        raise InputError(f"{spec!r} fails validation: " + "; ".join(report))
    return x, {"source": spec, "sha256": _sha256(raw)}


def load_graph(spec: str) -> tuple[LayeredGraph, dict]:
    try:
        with open(spec, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {spec!r}: {exc}") from None
    try:
        data = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InputError(f"{spec!r} is not valid UTF-8 JSON: {exc}") from None
    try:
        g = graph_from_dict(data)
    except GraphError as exc:
        raise InputError(f"{spec!r}: {exc}") from None
    return g, {"source": spec, "sha256": _sha256(raw)}


def _poset_of(x: RegularCWComplex, which: str) -> LayeredGraph:
    if which == "bar":
        return x.face_poset_bar()
    try:
        return x.face_poset_hat()
    except ComplexError as exc:
        raise HypothesisFailure(str(exc)) from None


def _fmt_scalar(v) -> str:
    return str(v)


def _fmt_group(entry) -> str:
    free, torsion = entry
    parts = []
    if free == 1:
        parts.append("Z")
    elif free > 1:
        parts.append(f"Z^{free}")
    parts.extend(f"Z/{t}" for t in torsion)
    return "+".join(parts) if parts else "0"


def _witness_json(witness) -> dict | None:
    if witness is None:
        return None
    return {
        "vertex": witness.vertex,
        "n": witness.n,
        "k": witness.k,
        "cocycle": [
            {"word": ">".join(word), "coeff": _fmt_scalar(c)} for word, c in witness.cocycle
        ],
    }


def _report(command: str, provenance: dict, params: dict, result: dict) -> dict:
    return {
        "tool": {"name": "cwkoszul", "version": __version__},
        "command": command,
        "input": provenance,
        "params": params,
        "result": result,
    }


def _table_lines(title: str, dim: int, cell) -> list[str]:
    lines = [title]
    width = max(6, max(len(cell(n, k)) for n in range(dim + 1) for k in range(n + 1)) + 2)
    header = "  n\\k" + "".join(f"{k:>{width}}" for k in range(dim + 1))
    lines.append(header)
    for n in range(dim + 1):
        row = f"{n:>5}" + "".join(f"{cell(n, k):>{width}}" for k in range(n + 1))
        lines.append(row)
    return lines


# ---------------------------------------------------------------------------
# command implementations: each returns (report dict, human lines, exit code)


def _cmd_validate(args):
    spec = args.input
    if spec.startswith("catalog:"):
        x, prov = load_complex(spec)
        report = []
    else:
        try:
            with open(spec, "rb") as fh:
                raw = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {spec!r}: {exc}") from None
        try:
            data = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise InputError(f"{spec!r} is not valid UTF-8 JSON: {exc}") from None
        try:
            x = complex_from_dict(data)
        except ComplexError as exc:
            raise InputError(f"{spec!r}: {exc}") from None
        report = x.validate()
        prov = {"source": spec, "sha256": _sha256(raw)}
    result = {"name": x.name, "counts": list(x.counts()), "violations": report}
    lines = [f"complex {x.name!r}: cells by dimension {x.counts()}"]
    if report:
        lines.append("violations:")
        lines.extend(f"  - {v}" for v in report)
    else:
        lines.append("no violations found")
    return _report("validate", prov, {}, result), lines, (2 if report else 0)


def _cmd_poset(args):
    x, prov = load_complex(args.input)
    g = _poset_of(x, "hat" if args.hat else "bar")
    data = g.to_dict()
    lines = [f"poset of {x.name!r} ({'hat' if args.hat else 'bar'}), implicit minimum omitted"]
    for r in range(1, g.max_rank + 1):
        lines.append(f"rank {r}: " + " ".join(g.at_rank(r)))
    lines.append("covers:")
    for u, l in sorted(p for p in g.covers if p[1] != BOTTOM):
        lines.append(f"  {u} > {l}")
    return data, lines, 0


def _cmd_cohomology(args):
    x, prov = load_complex(args.input)
    field = field_from_spec(args.field)
    dims = cellular_cohomology(x, field)
    result = {"name": x.name, "field": field.key, "dims": dims}
    lines = [f"cellular cohomology of {x.name!r} over {field.key}"]
    lines += [f"  H^{n} dim {d}" for n, d in enumerate(dims)]
    return _report("cohomology", prov, {"field": field.key}, result), lines, 0


def _cmd_relative(args):
    x, prov = load_complex(args.input)
    field = field_from_spec(args.field)
    if args.cell not in x:
        raise InputError(f"unknown cell {args.cell!r}")
    dims = relative_cohomology(x, args.cell, field)
    result = {"name": x.name, "cell": args.cell, "field": field.key, "dims": dims}
    lines = [f"cohomology of {x.name!r} relative to the complement star of {args.cell!r} over {field.key}"]
    lines += [f"  H^{n} dim {d}" for n, d in enumerate(dims)]
    return _report("relative", prov, {"cell": args.cell, "field": field.key}, result), lines, 0


def _cmd_hx(args):
    x, prov = load_complex(args.input)
    if args.integral:
        if args.field is not None:
            raise InputError("choose either --field or --integral, not both")
        ring = ZZ
    else:
        ring = field_from_spec(args.field or "q")
    table = hx_table(x, ring)
    if args.integral:
        entries = {
            f"{n},{k}": {"free": e[0], "torsion": list(e[1])}
            for (n, k), e in table.entries.items()
        }
        cell = lambda n, k: _fmt_group(table.entry(n, k))
        title = f"bigraded pair cohomology of {x.name!r} over Z (rows n, cols k)"
    else:
        entries = {f"{n},{k}": e for (n, k), e in table.entries.items()}
        cell = lambda n, k: str(table.entry(n, k))
        title = f"bigraded pair cohomology dims of {x.name!r} over {ring.key} (rows n, cols k)"
    result = {"name": x.name, "coefficients": table.coeff, "entries": entries}
    lines = _table_lines(title, table.dim, cell)
    return _report("hx", prov, {"coefficients": ring.key}, result), lines, 0


def _cmd_rdims(args):
    x, prov = load_complex(args.input)
    field = field_from_spec(args.field)
    g = _poset_of(x, args.poset)
    dims = graded_dims(g, field)
    result = {"name": x.name, "poset": args.poset, "field": field.key, "dims": dims}
    lines = [f"graded dimensions of the dual algebra of the {args.poset} poset of {x.name!r} over {field.key}"]
    lines += [f"  degree {m}: {d}" for m, d in enumerate(dims, start=1)]
    return _report("rdims", prov, {"poset": args.poset, "field": field.key}, result), lines, 0


def _run_koszul(g: LayeredGraph, field, check_remark: bool):
    try:
        verdict = koszul_decide(g, field)
    except GraphError as exc:
        raise HypothesisFailure(str(exc)) from None
    extra = {}
    if check_remark:
        whole = whole_graph_criterion(g, field)
        extra = {"whole_graph_criterion": whole, "agrees": whole == verdict.koszul}
    return verdict, extra


def _verdict_lines(verdict, extra) -> list[str]:
    lines = [f"verdict: {'KOSZUL' if verdict.koszul else 'NOT KOSZUL'} over {verdict.field_key}"]
    if verdict.witness:
        w = verdict.witness
        lines.append(f"witness: vertex {w.vertex}, bidegree (n,k) = ({w.n},{w.k})")
        terms = "  ".join(f"{_fmt_scalar(c)} * {'>'.join(word)}" for word, c in w.cocycle)
        lines.append(f"  cocycle: {terms}")
    ok = sum(1 for _, _, good in verdict.checked if good)
    lines.append(f"checked vertices: {len(verdict.checked)} ({ok} passed)")
    if extra:
        lines.append(
            f"whole-graph criterion: {extra['whole_graph_criterion']} "
            f"(agrees: {extra['agrees']})"
        )
    return lines


def _verdict_result(verdict, extra) -> dict:
    return {
        "graph": verdict.graph_name,
        "field": verdict.field_key,
        "koszul": verdict.koszul,
        "witness": _witness_json(verdict.witness),
        "checked": [
            {"vertex": v, "rank": r, "ok": ok} for v, r, ok in verdict.checked
        ],
        **extra,
    }


def _cmd_koszul(args):
    x, prov = load_complex(args.input)
    field = field_from_spec(args.field)
    g = _poset_of(x, args.poset)
    verdict, extra = _run_koszul(g, field, args.check_remark39)
    result = _verdict_result(verdict, extra)
    lines = [f"dual algebra of the {args.poset} poset of {x.name!r}"]
    lines += _verdict_lines(verdict, extra)
    if args.poset == "hat":
        # the topological route must agree with the vertexwise decision
        report = koszul_obstructions(x, field)
        if report.empty != verdict.koszul:
            raise AssertionError(
                "internal error: topological and algebraic Koszulity routes disagree"
            )
        result["obstructions"] = {
            "bigraded": [list(t) for t in report.bigraded],
            "cohomology": [list(t) for t in report.cohomology],
            "relative": [list(t) for t in report.relative],
        }
        if report.bigraded:
            lines.append(
                "obstructions (n,k,dim): "
                + ", ".join(f"({n},{k},{d})" for n, k, d in report.bigraded)
            )
            lines.append(
                "relative witnesses (cell,n,dim): "
                + ", ".join(f"({c},{n},{d})" for c, n, d in report.relative)
            )
    code = 0
    if args.exit_status:
        code = 0 if verdict.koszul else 1
    params = {"poset": args.poset, "field": field.key}
    return _report("koszul", prov, params, result), lines, code


def _cmd_koszul_graph(args):
    g, prov = load_graph(args.input)
    field = field_from_spec(args.field)
    verdict, extra = _run_koszul(g, field, args.check_remark39)
    result = _verdict_result(verdict, extra)
    lines = [f"dual algebra of graph {g.name!r}"]
    lines += _verdict_lines(verdict, extra)
    code = 0
    if args.exit_status:
        code = 0 if verdict.koszul else 1
    return _report("koszul-graph", prov, {"field": field.key}, result), lines, code


def _cmd_ann_check(args):
    x, prov = load_complex(args.input)
    field = field_from_spec(args.field)
    g = _poset_of(x, args.poset)
    if args.vertex not in g or args.vertex == BOTTOM:
        raise InputError(f"unknown vertex {args.vertex!r}")
    if not 0 <= args.n <= g.rank(args.vertex):
        raise InputError(
            f"depth {args.n} outside 0..{g.rank(args.vertex)} for vertex {args.vertex!r}"
        )
    holds = annihilator_check(g, field, args.vertex, args.n)
    result = {
        "graph": g.name,
        "vertex": args.vertex,
        "n": args.n,
        "field": field.key,
        "holds": holds,
    }
    lines = [
        f"annihilator identity at vertex {args.vertex!r}, depth {args.n}, "
        f"over {field.key}: {'holds' if holds else 'FAILS'}"
    ]
    params = {"poset": args.poset, "vertex": args.vertex, "n": args.n, "field": field.key}
    return _report("ann-check", prov, params, result), lines, 0


def _cmd_phi_check(args):
    x, prov = load_complex(args.input)
    field = field_from_spec(args.field)
    ok, details = comparison_iso_check(x, field)
    result = {
        "name": x.name,
        "field": field.key,
        "bijective": ok,
        "bidegrees": [
            {"n": n, "k": k, "pair_dim": a, "word_dim": b, "ok": good}
            for n, k, a, b, good in details
        ],
    }
    lines = [f"signed path map on {x.name!r} over {field.key}: "
             f"{'bijective in every bidegree' if ok else 'NOT bijective'}"]
    for n, k, a, b, good in details:
        lines.append(f"  (n,k)=({n},{k}): pair dim {a}, word dim {b}, {'ok' if good else 'MISMATCH'}")
    return _report("phi-check", prov, {"field": field.key}, result), lines, 0


def _cmd_catalog(args):
    if args.action == "list":
        names = catalog_names()
        return {"catalog": names}, names, 0
    if not args.name:
        raise InputError("catalog emit requires a name")
    try:
        x = catalog(args.name)
    except ComplexError as exc:
        raise InputError(str(exc)) from None
    data = x.to_dict()
    return data, _canonical_json(data).rstrip("\n").split("\n"), 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cwkoszul",
        description="Koszulity of layered-graph dual algebras from regular CW complexes",
    )
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="cmd", required=True)

    def add(name, fn, **kwargs):
        sp = sub.add_parser(name, **kwargs)
        # accepted in either position; SUPPRESS keeps the top-level value
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
        sp.set_defaults(fn=fn)
        return sp

    sp = add("validate", _cmd_validate, help="validate a complex file")
    sp.add_argument("input")

    sp = add("poset", _cmd_poset, help="emit the face poset as a graph file")
    sp.add_argument("input")
    sp.add_argument("--hat", action="store_true", help="extend with a maximum")

    sp = add("cohomology", _cmd_cohomology, help="cellular cohomology dimensions")
    sp.add_argument("input")
    sp.add_argument("--field", default="q")

    sp = add("relative", _cmd_relative, help="cohomology relative to a complement star")
    sp.add_argument("input")
    sp.add_argument("--cell", required=True)
    sp.add_argument("--field", default="q")

    sp = add("hx", _cmd_hx, help="bigraded pair cohomology table")
    sp.add_argument("input")
    sp.add_argument("--field", default=None)
    sp.add_argument("--integral", action="store_true", help="compute over Z")

    sp = add("koszul", _cmd_koszul, help="decide Koszulity of a face-poset dual algebra")
    sp.add_argument("input")
    sp.add_argument("--poset", choices=["bar", "hat"], default="bar")
    sp.add_argument("--field", default="q")
    sp.add_argument("--exit-status", action="store_true",
                    help="exit 0 when Koszul, 1 when not")
    sp.add_argument("--check-remark39", action="store_true",
                    help="also report the whole-graph vanishing criterion")

    sp = add("koszul-graph", _cmd_koszul_graph, help="decide Koszulity from a graph file")
    sp.add_argument("input")
    sp.add_argument("--field", default="q")
    sp.add_argument("--exit-status", action="store_true")
    sp.add_argument("--check-remark39", action="store_true")

    sp = add("rdims", _cmd_rdims, help="graded dimensions of the dual algebra")
    sp.add_argument("input")
    sp.add_argument("--poset", choices=["bar", "hat"], default="bar")
    sp.add_argument("--field", default="q")

    sp = add("ann-check", _cmd_ann_check, help="annihilator identity at one vertex and depth")
    sp.add_argument("input")
    sp.add_argument("--poset", choices=["bar", "hat"], default="bar")
    sp.add_argument("--vertex", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--field", default="q")

    sp = add("phi-check", _cmd_phi_check, help="bijectivity of the signed path map")
    sp.add_argument("input")
    sp.add_argument("--field", default="q")

    sp = add("catalog", _cmd_catalog, help="list or emit built-in complexes")
    sp.add_argument("action", choices=["list", "emit"])
    sp.add_argument("name", nargs="?")

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, lines, code = args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HypothesisFailure as exc:
        print(f"hypothesis failure: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        sys.stdout.write(_canonical_json(report))
    else:
        for line in lines:
            print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
