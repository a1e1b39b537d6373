"""Command line interface.

Subcommands: check, table, betti, gr, brion, report.  Output is a pure
function of the inputs (byte-identical across runs); rationals render as
"p/q" strings.  Exit codes: 0 all checks pass, 1 a validation or
verification check failed (a document is still emitted), 2 malformed
input (bad document, unknown builtin, unparsable flags).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from .brion import piecewise_to_doc, make_g, verify_brion
from .fixedpoints import (NotGeneric, NotSmooth, f_table, is_generic,
                          sample_generic, table_to_doc)
from .graded import (FiltrationError, filtration_ranks, gr_basis_to_doc,
                     gr_structure, graded_report, graded_to_doc, relations_to_doc,
                     verify_relations)
from .polytope import (BadParams, DocumentError, InvalidPolytope, Polytope,
                       UnknownName, builtin_from_uri, is_smooth, normal_fan,
                       polytope_from_doc, polytope_to_doc, validate)

COMMANDS = ("check", "table", "betti", "gr", "brion", "report")


@dataclass
class RunConfig:
    command: str
    polytope: str
    gamma: str | None = None
    format: str = "text"
    out: str = "-"


class CliError(Exception):
    """Bad input: maps to exit code 2."""


def _fmt_vec(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def _fmt_monomial(exp) -> str:
    parts = [f"f{i}" + (f"^{e}" if e > 1 else "")
             for i, e in enumerate(exp) if e]
    return "*".join(parts) if parts else "1"


def load_polytope(spec: str) -> Polytope:
    """A "builtin:..." URI or a path to a JSON polytope document."""
    if spec.startswith("builtin:"):
        try:
            return builtin_from_uri(spec)
        except (UnknownName, BadParams) as exc:
            raise CliError(str(exc))
    try:
        with open(spec) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read polytope file {spec!r}: {exc}")
    except json.JSONDecodeError as exc:
        raise CliError(f"malformed JSON in {spec!r}: {exc}")
    try:
        return polytope_from_doc(doc)
    except DocumentError as exc:
        raise CliError(f"bad polytope document {spec!r}: {exc}")


def resolve_gamma(spec: str, p: Polytope) -> tuple[tuple[int, ...], int | None]:
    """Parse "i,j,..." or "seed:n"; returns (gamma, seed or None)."""
    if spec.startswith("seed:"):
        try:
            seed = int(spec[len("seed:"):])
        except ValueError:
            raise CliError(f"bad gamma seed {spec!r}")
        if seed < 0:
            raise CliError(f"gamma seed must be >= 0, got {seed}")
        return sample_generic(p, seed), seed
    try:
        gamma = tuple(int(x) for x in spec.split(","))
    except ValueError:
        raise CliError(f"bad gamma {spec!r}: expected comma-separated integers "
                       f"or seed:n")
    if len(gamma) != p.dim:
        raise CliError(f"gamma {spec!r} has {len(gamma)} coordinates, "
                       f"expected {p.dim}")
    return gamma, None


# ---------------------------------------------------------------------------
# check

def _check_doc(p: Polytope, gamma_spec: str | None) -> dict:
    rep = validate(p)
    doc: dict = {
        "polytope": polytope_to_doc(p),
        "validation": {
            "ok": rep.ok,
            "problems": [{"kind": pr.kind, "message": pr.message}
                         for pr in rep.problems],
        },
        "smoothness": None,
        "genericity": None,
        "gamma": None,
    }
    ok = rep.ok
    if rep.ok:
        sm = is_smooth(normal_fan(p))
        doc["smoothness"] = {
            "ok": sm.ok,
            "witness_vertex": sm.witness_vertex,
            "determinant": None if sm.determinant is None else str(sm.determinant),
        }
        ok = ok and sm.ok
        if gamma_spec is not None:
            gamma, seed = resolve_gamma(gamma_spec, p)
            doc["gamma"] = list(gamma)
            if seed is not None:
                doc["gamma_seed"] = seed
            gen = is_generic(p, gamma)
            doc["genericity"] = {"ok": gen.ok, "witness_edge": None}
            if gen.witness is not None:
                doc["genericity"]["witness_edge"] = {
                    "endpoints": list(gen.witness.endpoints),
                    "direction": list(gen.witness.direction),
                }
            ok = ok and gen.ok
    doc["ok"] = ok
    return doc


def _check_text(doc: dict) -> str:
    lines = []
    np = doc["polytope"]
    lines.append(f"polytope: dim {np['dim']}, {len(np['vertices'])} vertices, "
                 f"{len(np['facets'])} facets")
    v = doc["validation"]
    lines.append("validation: " + ("PASS" if v["ok"] else "FAIL"))
    for pr in v["problems"]:
        lines.append(f"  - [{pr['kind']}] {pr['message']}")
    sm = doc["smoothness"]
    if sm is None:
        lines.append("smoothness: SKIPPED")
    elif sm["ok"]:
        lines.append("smoothness: PASS")
    else:
        lines.append(f"smoothness: FAIL at vertex {sm['witness_vertex']} "
                     f"(determinant {sm['determinant']}, expected +-1)")
    gen = doc["genericity"]
    if gen is None:
        lines.append("genericity: SKIPPED")
    else:
        gtxt = _fmt_vec(doc["gamma"])
        if gen["ok"]:
            lines.append(f"genericity: PASS gamma={gtxt}")
        else:
            w = gen["witness_edge"]
            lines.append(f"genericity: FAIL gamma={gtxt} pairs to zero with edge "
                         f"{_fmt_vec(w['endpoints'])} of direction "
                         f"{_fmt_vec(w['direction'])}")
    lines.append("result: " + ("PASS" if doc["ok"] else "FAIL"))
    return "\n".join(lines) + "\n"


def _check_csv(doc: dict) -> list[list]:
    rows = [["section", "status", "detail"]]
    v = doc["validation"]
    detail = "; ".join(pr["message"] for pr in v["problems"])
    rows.append(["validation", "PASS" if v["ok"] else "FAIL", detail])
    sm = doc["smoothness"]
    if sm is None:
        rows.append(["smoothness", "SKIPPED", ""])
    else:
        detail = "" if sm["ok"] else (f"vertex {sm['witness_vertex']} determinant "
                                      f"{sm['determinant']}")
        rows.append(["smoothness", "PASS" if sm["ok"] else "FAIL", detail])
    gen = doc["genericity"]
    if gen is None:
        rows.append(["genericity", "SKIPPED", ""])
    else:
        detail = ""
        if not gen["ok"]:
            w = gen["witness_edge"]
            detail = (f"edge {_fmt_vec(w['endpoints'])} direction "
                      f"{_fmt_vec(w['direction'])}")
        rows.append(["genericity", "PASS" if gen["ok"] else "FAIL", detail])
    rows.append(["result", "PASS" if doc["ok"] else "FAIL", ""])
    return rows


# ---------------------------------------------------------------------------
# table

def _table_text(doc: dict) -> str:
    lines = [f"gamma: {_fmt_vec(doc['gamma'])}"]
    if "gamma_seed" in doc:
        lines.append(f"gamma_seed: {doc['gamma_seed']}")
    heads = ["ray\\vertex"] + [_fmt_vec(v) for v in doc["vertices"]]
    body = [[_fmt_vec(r)] + list(frow) for r, frow in zip(doc["rays"], doc["f"])]
    widths = [max(len(row[c]) for row in [heads] + body) for c in range(len(heads))]
    lines.append("f table (rows = rays, columns = vertices):")
    for row in [heads] + body:
        lines.append("  " + "  ".join(cell.rjust(w) for cell, w in zip(row, widths)))
    lines.append("f_delta: " + " ".join(doc["f_delta"]))
    lines.append("zeta (one point per vertex):")
    for v, pt in zip(doc["vertices"], doc["zeta"]):
        lines.append(f"  {_fmt_vec(v)} -> {_fmt_vec(pt)}")
    lines.append("morse: " + " ".join(str(m) for m in doc["morse"]))
    return "\n".join(lines) + "\n"


def _table_csv(doc: dict) -> list[list]:
    rows = [["ray\\vertex"] + [_fmt_vec(v) for v in doc["vertices"]]]
    for ray, frow in zip(doc["rays"], doc["f"]):
        rows.append([_fmt_vec(ray)] + list(frow))
    return rows


# ---------------------------------------------------------------------------
# betti / gr / brion

def _betti_text(doc: dict) -> str:
    lines = [f"gamma: {_fmt_vec(doc['gamma'])}"]
    if "gamma_seed" in doc:
        lines.append(f"gamma_seed: {doc['gamma_seed']}")
    for key in ("gr_dims", "betti_morse", "h_vector", "sr_hilbert"):
        lines.append(f"{key}: " + " ".join(str(x) for x in doc[key]))
    lines.append("four-way agreement (trailing zeros trimmed): "
                 + ("PASS" if doc["four_way_agreement"] else "FAIL"))
    return "\n".join(lines) + "\n"


def _betti_csv(doc: dict) -> list[list]:
    rows = [["source"] + [f"b{2 * i}" for i in range(len(doc["h_vector"]))]]
    for key in ("gr_dims", "betti_morse", "h_vector", "sr_hilbert"):
        vals = list(doc[key]) + [""] * (len(rows[0]) - 1 - len(doc[key]))
        rows.append([key] + vals[:len(rows[0]) - 1])
    rows.append(["agreement", "PASS" if doc["four_way_agreement"] else "FAIL"])
    return rows


def _gr_text(doc: dict) -> str:
    lines = [f"gamma: {_fmt_vec(doc['gamma'])}"]
    lines.append("ranks: " + " ".join(str(x) for x in doc["ranks"]))
    lines.append("gr_dims: " + " ".join(str(x) for x in doc["gr_dims"]))
    lines.append(f"top_degree: {doc['top_degree']}")
    lines.append("basis:")
    for deg, monos in enumerate(doc["basis"]):
        names = ", ".join(_fmt_monomial(e) for e in monos) or "-"
        lines.append(f"  degree {deg}: {names}")
    lines.append("products (coords in the product-degree basis):")
    for pr in doc["products"]:
        coords = _fmt_vec(pr["coords"]) if pr["coords"] else "()"
        lines.append(f"  {_fmt_monomial(pr['lhs'])} * {_fmt_monomial(pr['rhs'])} "
                     f"-> degree {pr['degree']}, coords {coords}")
    rel = doc["relations"]
    lines.append("relations: " + ("PASS" if rel["ok"] else "FAIL"))
    return "\n".join(lines) + "\n"


def _gr_csv(doc: dict) -> list[list]:
    rows = [["degree", "basis"]]
    for deg, monos in enumerate(doc["basis"]):
        rows.append([str(deg), " ".join(_fmt_monomial(e) for e in monos)])
    rows.append(["lhs", "rhs", "degree", "coords"])
    for pr in doc["products"]:
        rows.append([_fmt_monomial(pr["lhs"]), _fmt_monomial(pr["rhs"]),
                     str(pr["degree"]), " ".join(pr["coords"])])
    return rows


def _brion_text(doc: dict) -> str:
    lines = [f"gamma: {_fmt_vec(doc['gamma'])}"]
    flag = lambda b: "PASS" if b else "FAIL"
    lines.append(f"generator continuity: {flag(doc['continuity_ok'])}")
    lines.append(f"phi(g) matches ray functions: {flag(not doc['phi_mismatched_rays'])}")
    if doc["phi_mismatched_rays"]:
        lines.append(f"  mismatched rays: {doc['phi_mismatched_rays']}")
    lines.append(f"global linear forms constant: {flag(not doc['linear_form_failures'])}")
    lines.append(f"multiplicativity: {flag(not doc['mult_failures'])} "
                 f"({doc['mult_pairs_checked']} pairs)")
    lines.append("surjectivity ranks: "
                 + " ".join(str(x) for x in doc["surjectivity_ranks"])
                 + " (expected " + " ".join(str(x) for x in doc["expected_ranks"])
                 + "): " + flag(doc["surjectivity_ranks"] == doc["expected_ranks"]))
    lines.append("result: " + flag(doc["ok"]))
    return "\n".join(lines) + "\n"


def _brion_csv(doc: dict) -> list[list]:
    return [
        ["check", "status"],
        ["continuity", "PASS" if doc["continuity_ok"] else "FAIL"],
        ["phi_matches_rays", "PASS" if not doc["phi_mismatched_rays"] else "FAIL"],
        ["linear_forms", "PASS" if not doc["linear_form_failures"] else "FAIL"],
        ["multiplicativity", "PASS" if not doc["mult_failures"] else "FAIL"],
        ["surjectivity",
         "PASS" if doc["surjectivity_ranks"] == doc["expected_ranks"] else "FAIL"],
        ["result", "PASS" if doc["ok"] else "FAIL"],
    ]


def _brion_doc(fan, p, gamma) -> dict:
    rep = verify_brion(fan, p, gamma)
    return {
        "continuity_ok": rep.continuity_ok,
        "phi_mismatched_rays": rep.phi_mismatched_rays,
        "linear_form_failures": [
            {"covector": j, "values": [str(x) for x in vals]}
            for j, vals in rep.linear_form_failures
        ],
        "mult_pairs_checked": rep.mult_pairs_checked,
        "mult_failures": [{"lhs": list(a), "rhs": list(b)}
                          for a, b in rep.mult_failures],
        "surjectivity_ranks": rep.surjectivity_ranks,
        "expected_ranks": rep.expected_ranks,
        "generators": None,  # filled by the caller when requested
        "ok": rep.ok,
    }


# ---------------------------------------------------------------------------
# driver

def _emit(cfg: RunConfig, doc: dict, text: str, csv_rows: list[list] | None):
    if cfg.format == "json":
        payload = json.dumps(doc, indent=2) + "\n"
    elif cfg.format == "csv":
        comments = [f"# command: {cfg.command}", f"# polytope: {cfg.polytope}"]
        if doc.get("gamma") is not None:
            comments.append(f"# gamma: {_fmt_vec(doc['gamma'])}")
        if "gamma_seed" in doc:
            comments.append(f"# gamma_seed: {doc['gamma_seed']}")
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerows(csv_rows or [])
        payload = "\n".join(comments) + "\n" + buf.getvalue()
    else:
        payload = text
    if cfg.out == "-":
        sys.stdout.write(payload)
    else:
        with open(cfg.out, "w") as fh:
            fh.write(payload)


def _error_doc(command: str, kind: str, message: str) -> dict:
    return {"command": command, "error": {"kind": kind, "message": message},
            "ok": False}


def run(cfg: RunConfig) -> int:
    """Execute one command; returns the process exit code."""
    if cfg.command not in COMMANDS:
        raise CliError(f"unknown command {cfg.command!r}")
    if cfg.format not in ("text", "csv", "json"):
        raise CliError(f"unknown format {cfg.format!r}")
    p = load_polytope(cfg.polytope)

    if cfg.command == "check":
        doc = _check_doc(p, cfg.gamma)
        _emit(cfg, doc, _check_text(doc), _check_csv(doc))
        return 0 if doc["ok"] else 1

    if cfg.gamma is None:
        raise CliError(f"command {cfg.command!r} needs --gamma")

    try:
        gamma, seed = resolve_gamma(cfg.gamma, p)
        table = f_table(p, gamma)
    except InvalidPolytope as exc:
        doc = _error_doc(cfg.command, "invalid_polytope", str(exc))
        _emit(cfg, doc, f"error [invalid_polytope]: {exc}\n",
              [["error", "invalid_polytope", str(exc)]])
        return 1
    except (NotSmooth, NotGeneric) as exc:
        kind = "not_smooth" if isinstance(exc, NotSmooth) else "not_generic"
        doc = _error_doc(cfg.command, kind, str(exc))
        _emit(cfg, doc, f"error [{kind}]: {exc}\n", [["error", kind, str(exc)]])
        return 1

    if cfg.command == "table":
        doc = table_to_doc(table, gamma_seed=seed)
        _emit(cfg, doc, _table_text(doc), _table_csv(doc))
        return 0

    if cfg.command == "betti":
        rep = graded_report(table)
        doc = {"gamma": list(gamma)}
        if seed is not None:
            doc["gamma_seed"] = seed
        doc.update(graded_to_doc(rep))
        doc["ok"] = doc["four_way_agreement"]
        _emit(cfg, doc, _betti_text(doc), _betti_csv(doc))
        return 0 if doc["ok"] else 1

    if cfg.command == "gr":
        filt = filtration_ranks(table)
        basis = gr_structure(table)
        relations = verify_relations(table)
        doc = {"gamma": list(gamma)}
        if seed is not None:
            doc["gamma_seed"] = seed
        doc.update({"ranks": filt.ranks, "gr_dims": filt.gr_dims,
                    "top_degree": filt.top_degree})
        doc.update(gr_basis_to_doc(basis))
        doc["relations"] = relations_to_doc(relations)
        doc["ok"] = relations.ok
        _emit(cfg, doc, _gr_text(doc), _gr_csv(doc))
        return 0 if doc["ok"] else 1

    if cfg.command == "brion":
        fan = table.fan
        doc2 = {"gamma": list(gamma)}
        if seed is not None:
            doc2["gamma_seed"] = seed
        doc2.update(_brion_doc(fan, p, gamma))
        doc2["generators"] = [piecewise_to_doc(make_g(fan, r))
                              for r in range(len(fan.rays))]
        _emit(cfg, doc2, _brion_text(doc2), _brion_csv(doc2))
        return 0 if doc2["ok"] else 1

    # report: everything in one document
    check_doc = _check_doc(p, cfg.gamma)
    grep = graded_report(table)
    betti_doc = graded_to_doc(grep)
    betti_doc["four_way_agreement"] = grep.four_way_agreement()
    filt = filtration_ranks(table)
    basis = gr_structure(table)
    relations = verify_relations(table)
    gr_doc = {"ranks": filt.ranks, "gr_dims": filt.gr_dims,
              "top_degree": filt.top_degree}
    gr_doc.update(gr_basis_to_doc(basis))
    brion_doc = _brion_doc(table.fan, p, gamma)
    doc = {
        "polytope": polytope_to_doc(p),
        "gamma": list(gamma),
    }
    if seed is not None:
        doc["gamma_seed"] = seed
    doc.update({
        "check": {k: check_doc[k] for k in
                  ("validation", "smoothness", "genericity", "ok")},
        "table": table_to_doc(table, gamma_seed=seed),
        "betti": betti_doc,
        "gr": gr_doc,
        "relations": relations_to_doc(relations),
        "brion": brion_doc,
    })
    doc["ok"] = all([check_doc["ok"], betti_doc["four_way_agreement"],
                     relations.ok, brion_doc["ok"]])
    text_parts = [
        "== check ==\n" + _check_text(check_doc),
        "== table ==\n" + _table_text(doc["table"]),
        "== betti ==\n" + _betti_text({**betti_doc, "gamma": list(gamma)}),
        "== brion ==\n" + _brion_text({**brion_doc, "gamma": list(gamma)}),
        "result: " + ("PASS" if doc["ok"] else "FAIL") + "\n",
    ]
    csv_rows = [["section", "status"],
                ["check", "PASS" if check_doc["ok"] else "FAIL"],
                ["betti", "PASS" if betti_doc["four_way_agreement"] else "FAIL"],
                ["relations", "PASS" if relations.ok else "FAIL"],
                ["brion", "PASS" if brion_doc["ok"] else "FAIL"],
                ["result", "PASS" if doc["ok"] else "FAIL"]]
    _emit(cfg, doc, "\n".join(text_parts), csv_rows)
    return 0 if doc["ok"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torograd",
        description="Exact fixed-point models of toric variety cohomology "
                    "from simple smooth lattice polytopes.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, blurb in [
        ("check", "validate the polytope, smoothness, and genericity"),
        ("table", "ray-by-vertex fixed point table"),
        ("betti", "four-way Betti number comparison"),
        ("gr", "graded basis, products, and ring relations"),
        ("brion", "piecewise polynomial model verification"),
        ("report", "everything in one JSON document"),
    ]:
        sp = sub.add_parser(name, help=blurb)
        sp.add_argument("--polytope", required=True,
                        help="path to a JSON document or builtin:<name>[:params]")
        sp.add_argument("--gamma", default=None,
                        help="comma-separated integers, or seed:n for a "
                             "deterministic generic direction")
        sp.add_argument("--format", default="text", choices=("text", "csv", "json"))
        sp.add_argument("--out", default="-", help="output path, - for stdout")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags, 0 on --help; keep its choice
        return int(exc.code or 0)
    cfg = RunConfig(command=args.command, polytope=args.polytope,
                    gamma=args.gamma, format=args.format, out=args.out)
    try:
        return run(cfg)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FiltrationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
