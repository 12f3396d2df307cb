"""Command line front end: ``recond <command> [n q] [flags]``.

Exit codes: 0 on success, 1 when a verification fails, 2 on a usage or domain error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import moduli, reconalg
from .contfrac import DomainError, compute_series, duality_failures
from .groupdata import (
    GroupData,
    UnsupportedCase,
    build_group_data,
    character_of,
    dual_graph,
    series_failures,
    valid_pairs,
)
from .invgen import Basis, invariant_generators, verify_generation
from .specials import (
    assign_vertices,
    build_aux_quiver,
    check_table_invariance,
    special_generators,
    verify_cycle_realization,
    verify_two_generation,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SUITES = ("series", "invariants", "specials", "relations", "charts")
PAIR_COMMANDS = ("info", "invariants", "specials", "quiver", "relations", "labels", "charts", "verify")


# ---------------------------------------------------------------- formatting helpers


def _series(s) -> dict:
    return {str(k): v for k, v in s.as_dict().items()}


def _symbol_str(exps: tuple, basis: Basis) -> str:
    xy, g2, g3 = exps
    parts = []
    for name, k in (("(xy)", xy), (f"{basis.value}2", g2), (f"{basis.value}3", g3)):
        if k:
            parts.append(name if k == 1 else f"{name}^{k}")
    return " ".join(parts) or "1"


def _poly_label(poly) -> str:
    return poly.to_str()


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


# ---------------------------------------------------------------- display commands


def cmd_info(gd: GroupData, args) -> int:
    graph = dual_graph(gd)
    dual_series = compute_series(gd.a_cf)
    data = {
        "n": gd.n,
        "q": gd.q,
        "order": gd.order,
        "nu": gd.nu,
        "expansion": list(gd.alpha),
        "dual_expansion": list(gd.a),
        "i": _series(gd.i), "j": _series(gd.j), "l": _series(gd.l), "b": _series(gd.b),
        "dual_i": _series(dual_series.i),
        "c": _series(gd.c), "d": _series(gd.d), "t": _series(gd.t), "r": _series(gd.r),
        "Delta": _series(gd.delta), "Gamma": _series(gd.gamma),
        "dual_graph": {
            "self_intersection": {str(v): graph.self_intersection[v] for v in graph.vertices},
            "edges": [[str(u), str(v)] for u, v in graph.edges],
        },
        "fundamental_cycle": {str(v): graph.fundamental_cycle[v] for v in graph.vertices},
    }
    if args.format == "json":
        _emit(json.dumps(data, indent=2))
        return EXIT_OK
    lines = [
        f"D_{{{gd.n},{gd.q}}}: order {gd.order}, nu = {gd.nu}",
        f"{gd.n}/{gd.q} = {list(gd.alpha)}",
        f"{gd.n}/{gd.m} = {list(gd.a)}  (a_2 .. a_{gd.e - 1})",
    ]
    for key in ("i", "j", "l", "b", "c", "d", "t", "r", "Delta", "Gamma"):
        lines.append(f"{key:>6}: " + ", ".join(f"{k}:{v}" for k, v in data[key].items()))
    chain = " - ".join(f"{v}({graph.self_intersection[v]})" for v in range(1, gd.N + 1))
    lines.append(f"dual graph: +(-2) and -(-2) attached to 1; chain {chain}")
    lines.append("fundamental cycle: " + ", ".join(f"{k}:{v}" for k, v in data["fundamental_cycle"].items()))
    _emit("\n".join(lines))
    return EXIT_OK


def cmd_invariants(gd: GroupData, args) -> int:
    basis = Basis.parse(args.basis or "w")
    gens = invariant_generators(gd, basis)
    if args.format == "json":
        out = [{"tag": str(it.tag), "exponents": list(it.exponents), "degree": it.degree,
                "poly": it.poly.serialize()} for it in gens.items]
        _emit(json.dumps(out, indent=2))
        return EXIT_OK
    lines = [f"D_{{{gd.n},{gd.q}}} invariant generators, {basis.value}-basis ({len(gens)}):"]
    for it in gens.items:
        lines.append(f"  {str(it.tag):>8}  degree {it.degree:>5}  {_symbol_str(it.exponents, basis)}")
    _emit("\n".join(lines))
    return EXIT_OK


def cmd_specials(gd: GroupData, args) -> int:
    basis = Basis.parse(args.basis or "w")
    table = special_generators(gd, basis)
    vertices = assign_vertices(gd) if gd.nu == 0 else {}
    rows = []
    for e in table.entries:
        if e.exponents:
            gens = [_symbol_str(x, basis) for x in e.exponents]
        else:
            gens = [_poly_label(p) for p in e.generators]
        rows.append({"module": e.name, "vertex": str(vertices.get(e.name, "")),
                     "character": str(character_of(gd, e.module)), "generators": gens})
    if args.format == "json":
        _emit(json.dumps(rows, indent=2))
        return EXIT_OK
    lines = [f"D_{{{gd.n},{gd.q}}} rank one specials, {basis.value}-basis:"]
    for r in rows:
        where = f" at vertex {r['vertex']}" if r["vertex"] else ""
        lines.append(f"  {r['module']}{where}  [{r['character']}]  generated by {r['generators'][0]} and {r['generators'][1]}")
    _emit("\n".join(lines))
    return EXIT_OK


def cmd_quiver(gd: GroupData, args) -> int:
    Q = reconalg.build_quiver(gd)
    if args.format == "dot":
        _emit(reconalg.to_dot(Q))
    elif args.format == "json":
        _emit(json.dumps({"vertices": list(Q.vertices),
                          "arrows": [{"id": a.id, "tail": a.tail, "head": a.head, "kind": a.kind} for a in Q.arrows]},
                         indent=2))
    else:
        lines = [f"D_{{{gd.n},{gd.q}}} quiver: {len(Q.vertices)} vertices, {len(Q.arrows)} arrows"]
        lines += [f"  {a.id}: {a.tail} -> {a.head}" for a in Q.arrows]
        _emit("\n".join(lines))
    return EXIT_OK


def cmd_relations(gd: GroupData, args) -> int:
    rels = reconalg.relations(gd, args.presentation)
    if args.format == "json":
        _emit(reconalg.relations_json(rels))
    elif args.format == "dot":
        raise DomainError("relations have no DOT form; use text or json")
    else:
        lines = [f"D_{{{gd.n},{gd.q}}} {args.presentation} presentation, {len(rels)} relations:"]
        lines += [f"  [{r.name}] {r}" for r in rels]
        _emit("\n".join(lines))
    return EXIT_OK


def cmd_labels(gd: GroupData, args) -> int:
    lq = reconalg.label_arrows(gd, args.presentation)
    basis = lq.presentation.basis
    symbols = moduli.label_symbols(gd) if basis is Basis.W else {}

    def text(aid):
        if aid in symbols:
            return str(symbols[aid])
        if aid in lq.exponents:
            return _symbol_str(lq.exponents[aid], basis)
        return _poly_label(lq.labels[aid])

    if args.format == "dot":
        _emit(reconalg.to_dot(lq.quiver, {aid: text(aid) for aid in lq.labels}))
    elif args.format == "json":
        out = [{"id": a.id, "tail": a.tail, "head": a.head, "label": text(a.id),
                "poly": lq.labels[a.id].serialize()} for a in lq.quiver.arrows]
        _emit(json.dumps(out, indent=2))
    else:
        lines = [f"D_{{{gd.n},{gd.q}}} arrow labels ({args.presentation} presentation):"]
        lines += [f"  {a.id}: {text(a.id)}" for a in lq.quiver.arrows]
        _emit("\n".join(lines))
    return EXIT_OK


def cmd_charts(gd: GroupData, args) -> int:
    chart_list = moduli.charts(gd)
    if args.format == "json":
        _emit(moduli.charts_json(gd, chart_list))
        return EXIT_OK
    if args.format == "dot":
        raise DomainError("charts have no DOT form; use text or json")
    glues = moduli.glue_maps(gd)
    lines = [f"D_{{{gd.n},{gd.q}}}: {len(chart_list)} charts ({moduli.STABILITY_NOTE})"]
    for ch in chart_list:
        lines.append(f"{ch.id}: {ch.shape_str()} = 0")
        lines.append(f"  coordinates {', '.join(ch.coordinate_arrows)}")
        lines.append(f"  ratios {', '.join(str(r) for r in ch.ratios)}")
        if ch.exponents:
            lines.append("  exponents " + ", ".join(f"{k}={v}" for k, v in ch.exponents.as_dict().items()))
        for g in glues:
            if g.source == ch.id:
                lines.append(f"  glue to {g.target}: {g.transform_str()}")
    _emit("\n".join(lines))
    return EXIT_OK


# ---------------------------------------------------------------- verification suites


@dataclass
class CheckResult:
    name: str
    status: str  # "pass", "FAIL" or "skip"
    details: list = field(default_factory=list)


def _suite_series(gd: GroupData, args) -> list:
    bad = series_failures(gd) + duality_failures(gd.n, gd.q)
    return [CheckResult("series", "FAIL" if bad else "pass", bad)]


def _suite_invariants(gd: GroupData, args) -> list:
    bases = [Basis.parse(args.basis)] if args.basis else [Basis.W, Basis.V]
    out = []
    for basis in bases:
        rep = verify_generation(gd, basis, args.max_degree)
        out.append(CheckResult(f"generation {basis.value}", "pass" if rep.passed else "FAIL", [rep.summary()]))
    return out


def _suite_specials(gd: GroupData, args) -> list:
    bases = [Basis.parse(args.basis)] if args.basis else [Basis.W, Basis.V]
    out = []
    for basis in bases:
        table = special_generators(gd, basis)
        bad = check_table_invariance(gd, table)
        out.append(CheckResult(f"special characters {basis.value}", "FAIL" if bad else "pass",
                               [f"{name} generator {slot}" for name, slot in bad]))
        if gd.nu == 0:
            reps = [verify_two_generation(gd, e.module, args.max_degree, basis) for e in table.entries]
            failed = [r.summary() for r in reps if not r.passed]
            out.append(CheckResult(f"two-generation {basis.value}", "FAIL" if failed else "pass", failed))
        else:
            out.append(CheckResult(f"two-generation {basis.value}", "skip", ["nu > 0"]))
        try:
            build_aux_quiver(gd, basis)
        except UnsupportedCase:
            out.append(CheckResult(f"cycles {basis.value}", "skip", ["nu = N - 1"]))
            continue
        rep = verify_cycle_realization(gd, basis)
        out.append(CheckResult(f"cycles {basis.value}", "pass" if rep.passed else "FAIL", [rep.summary()]))
    return out


def _suite_relations(gd: GroupData, args) -> list:
    if gd.nu:
        return [CheckResult("relations", "skip", ["nu > 0"])]
    out = []
    for pres in ("moduli", "symmetric"):
        rels = reconalg.relations(gd, pres)
        rep = reconalg.verify_relations(gd, pres, rels)
        details = [rep.summary()]
        details += [f"relation [{rels[k].name}] {rels[k]}" for k in rep.failed_relations]
        details += [f"count {pair}: {got} relations, expected {want}" for pair, got, want in rep.count_mismatches]
        details += [f"label of {aid} has the wrong character" for aid in rep.bad_labels]
        out.append(CheckResult(f"relations {pres}", "pass" if rep.passed else "FAIL", details))
    return out


def _suite_charts(gd: GroupData, args) -> list:
    if gd.nu:
        return [CheckResult("charts", "skip", ["nu > 0"])]
    try:
        chart_list = moduli.charts(gd)
    except moduli.EliminationError as exc:
        return [CheckResult("charts", "FAIL", [str(exc)])]
    failed = []
    if len(chart_list) != gd.N + 3:
        failed.append(f"{len(chart_list)} charts, expected {gd.N + 3}")
    for ch in chart_list:
        rep = moduli.verify_chart(gd, ch)
        if not rep.passed:
            failed.append(f"{ch.id}: on ratios {rep.on_ratios}, table shape {rep.matches_table}, "
                          f"gauge ratios {rep.gauge_agrees}, smooth {rep.smooth}")
    for g in moduli.verify_glues(gd, chart_list):
        if not g.passed:
            failed.append(f"glue {g.source} -> {g.target}: round trip {g.round_trip}, "
                          f"pullback {g.pullback}, ratios {g.ratios}")
    return [CheckResult("charts", "FAIL" if failed else "pass", failed)]


SUITE_RUNNERS = {
    "series": _suite_series,
    "invariants": _suite_invariants,
    "specials": _suite_specials,
    "relations": _suite_relations,
    "charts": _suite_charts,
}


def run_suites(gd: GroupData, args) -> list:
    names = SUITES if args.suite == "all" else (args.suite,)
    results = []
    for name in names:
        results.extend(SUITE_RUNNERS[name](gd, args))
    return results


def _report_lines(gd: GroupData, results: list) -> list:
    lines = []
    for r in results:
        lines.append(f"{r.status:<4} D_{{{gd.n},{gd.q}}} {r.name}")
        if r.status != "pass":
            lines += [f"       {d}" for d in r.details]
    return lines


def cmd_verify(gd: GroupData, args) -> int:
    results = run_suites(gd, args)
    _emit("\n".join(_report_lines(gd, results)))
    return EXIT_FAIL if any(r.status == "FAIL" for r in results) else EXIT_OK


def thread_count() -> int:
    raw = os.environ.get("RECOND_THREADS")
    if raw is None:
        return max(1, min(8, os.cpu_count() or 1))
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"RECOND_THREADS must be a positive integer, got {raw!r}")
    if value < 1:
        raise DomainError(f"RECOND_THREADS must be a positive integer, got {raw!r}")
    return value


def cmd_sweep(args) -> int:
    if args.n_max is None:
        raise DomainError("sweep needs --n-max")
    pairs = list(valid_pairs(args.n_max))

    def one(pair):
        gd = build_group_data(*pair)
        return gd, run_suites(gd, args)

    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        outcomes = list(pool.map(one, pairs))
    lines, failures, checks, skipped = [], 0, 0, 0
    for gd, results in outcomes:
        for r in results:
            checks += 1
            skipped += r.status == "skip"
            if r.status == "FAIL":
                failures += 1
                lines += _report_lines(gd, [r])
    lines.append(f"sweep n <= {args.n_max}, suite {args.suite}: {len(pairs)} groups, {checks} checks, "
                 f"{skipped} skipped, {failures} failed")
    _emit("\n".join(lines))
    return EXIT_FAIL if failures else EXIT_OK


COMMANDS = {
    "info": cmd_info,
    "invariants": cmd_invariants,
    "specials": cmd_specials,
    "quiver": cmd_quiver,
    "relations": cmd_relations,
    "labels": cmd_labels,
    "charts": cmd_charts,
    "verify": cmd_verify,
}


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="recond", description="Reconstruction algebras and resolutions for D_{n,q}.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in PAIR_COMMANDS + ("sweep",):
        p = sub.add_parser(name)
        if name != "sweep":
            p.add_argument("n", type=int)
            p.add_argument("q", type=int)
        p.add_argument("--presentation", choices=("moduli", "symmetric"), default="moduli")
        p.add_argument("--basis", choices=("w", "v"), default=None)
        p.add_argument("--format", choices=("text", "json", "dot"), default="text")
        p.add_argument("--max-degree", type=int, default=None)
        p.add_argument("--n-max", type=int, default=None)
        p.add_argument("--suite", choices=("all",) + SUITES, default="all")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.format == "dot" and args.command not in ("quiver", "labels"):
        parser.print_usage(sys.stderr)
        sys.stderr.write("recond: --format dot is only available for quiver and labels\n")
        return EXIT_USAGE
    if args.max_degree is not None and args.max_degree < 0:
        sys.stderr.write("recond: --max-degree must be nonnegative\n")
        return EXIT_USAGE
    try:
        if args.command == "sweep":
            return cmd_sweep(args)
        gd = build_group_data(args.n, args.q)
        return COMMANDS[args.command](gd, args)
    except DomainError as exc:
        sys.stderr.write(f"recond: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
