"""Command-line driver.

Commands
  monoid validate|predicates|gens|bp   table-level queries
  build cayley|augment|encode|blowup|sip|pipeline
                                       constructions, graph JSON in/out,
                                       pipeline report on stdout
  endo                                 enumerate endomorphisms of a graph file
  verify gadget|encoding|blowup|sip|pipeline|bp-monoid|minor
                                       acceptance-style checks, one
                                       PASS/FAIL line each
  witness minor                        emit a certified minor model JSON
  export dot                           graph JSON to DOT
  bench                                compare the compiled and the fallback
                                       search backends

Everything is deterministic; no command takes a seed.  The environment
variable ENDOFORGE_NODE_BUDGET overrides the enumeration budget and
ENDOFORGE_NO_NUMBA=1 selects the uncompiled search path.  Exit codes:
0 ok, 1 verification or precondition failure, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import algebra, blowup, cayley, checks, encoding, endo, retracts, sip
from .errors import EndoforgeError, MalformedInput
from .graphs import (
    ArcColoredDigraph,
    degree_stats,
    digraph_to_json,
    graph_to_json,
    load_any_graph,
    to_dot,
)


def _write_json(path, obj):
    if path:
        with open(path, "w") as fh:
            json.dump(obj, fh, indent=1, sort_keys=True)
            fh.write("\n")


def _emit(obj):
    json.dump(obj, sys.stdout, indent=1, sort_keys=True)
    sys.stdout.write("\n")


def _graph_payload(g):
    if isinstance(g, ArcColoredDigraph):
        return digraph_to_json(g)
    return graph_to_json(g)


def _stage_record(name, g, seconds):
    rec = {"stage": name, "vertices": g.n, "seconds": round(seconds, 6)}
    if isinstance(g, ArcColoredDigraph):
        stats = degree_stats(g)
        rec.update(arcs=g.num_arcs, colors=g.num_colors,
                   max_degree=stats.max_deg, max_per_color=stats.max_per_color,
                   min_out=stats.min_out, min_in=stats.min_in)
    else:
        rec.update(edges=g.num_edges, max_degree=g.max_degree())
    return rec


def _parse_gens(m, spec_str):
    if spec_str:
        try:
            return tuple(int(x) for x in spec_str.split(","))
        except ValueError as e:
            raise MalformedInput(f"bad generator list {spec_str!r}") from e
    return algebra.minimal_generating_set(m)


def _parse_poset(spec_str):
    if spec_str.startswith("bn:"):
        return algebra.boolean_lattice_poset(int(spec_str[3:]))
    return algebra.load_poset(spec_str)


def _parse_k(s):
    return None if s in (None, "auto") else int(s)


# monoid subcommands

def cmd_monoid(args):
    if args.action == "bp":
        mono, maps = algebra.babai_pultr_monoid(args.p)
        _write_json(args.out, algebra.monoid_to_json(mono))
        _emit({"size": mono.size, "identity": mono.identity,
               "transformation_degree": 3 * args.p,
               "written": bool(args.out)})
        return 0
    if not args.input:
        raise MalformedInput(f"monoid {args.action} needs --in")
    m = algebra.load_monoid(args.input)
    if args.action == "validate":
        _emit({"valid": True, "size": m.size, "identity": m.identity})
    elif args.action == "predicates":
        _emit(algebra.monoid_predicates(m))
    elif args.action == "gens":
        _emit({"minimal_generating_set": list(algebra.minimal_generating_set(m))})
    return 0


# build subcommands

def cmd_build(args):
    stages = []

    def run_stage(name, fn):
        t0 = time.perf_counter()
        g = fn()
        stages.append(_stage_record(name, g, time.perf_counter() - t0))
        return g

    kind = args.kind
    if kind in ("cayley", "augment", "encode", "pipeline"):
        m = algebra.load_monoid(args.input)
    else:
        g_in = load_any_graph(args.input)
        if not isinstance(g_in, ArcColoredDigraph):
            raise MalformedInput(f"{kind} expects an arc-colored digraph input")

    if kind == "cayley":
        out = run_stage("cayley", lambda: cayley.cayley_colored(m, _parse_gens(m, args.gens)))
    elif kind == "augment":
        out = run_stage("augment", lambda: cayley.augment_cayley(m, _parse_gens(m, args.gens)))
    elif kind == "encode":
        lat = algebra.lattice_from_meet_monoid(m)
        out = run_stage("encode", lambda: encoding.build_encoding(lat))
    elif kind == "blowup":
        out = run_stage("blowup", lambda: blowup.blow_up(g_in))
    elif kind == "sip":
        out = run_stage("sip", lambda: sip.sip_product(g_in, _parse_k(args.k)))
    elif kind == "pipeline":
        preds = algebra.monoid_predicates(m)
        if preds["commutative"] and preds["idempotent"]:
            lat = algebra.lattice_from_meet_monoid(m)
            d = run_stage("encode", lambda: encoding.build_encoding(lat))
        else:
            d = run_stage("cayley", lambda: cayley.cayley_colored(
                m, _parse_gens(m, args.gens)))
        dp = run_stage("blowup", lambda: blowup.blow_up(d))
        out = run_stage("sip", lambda: sip.sip_product(dp, _parse_k(args.k)))
        if args.verify:
            for (name, g) in ((stages[0]["stage"], d), ("blowup", dp), ("sip", out)):
                rec = next(s for s in stages if s["stage"] == name)
                try:
                    tm = endo.enumerate_endomorphisms(g, budget=args.budget,
                                                      jobs=args.jobs)
                    rec["end_size"] = tm.size
                    rec["end_is_input_monoid"] = algebra.monoid_isomorphic(
                        endo.endo_monoid_table(tm), m) is not None
                except EndoforgeError as e:
                    rec["end_size_skipped"] = str(e)

    _write_json(args.out, _graph_payload(out))
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(to_dot(out))
    _emit({"stages": stages, "output": args.out})
    return 0


# endomorphism enumeration

def cmd_endo(args):
    g = load_any_graph(args.input)
    tm = endo.enumerate_endomorphisms(g, budget=args.budget, jobs=args.jobs)
    payload = {"count": tm.size, "nodes_explored": getattr(tm, "nodes_explored", None)}
    if args.maps:
        payload["maps"] = [list(tm.map_tuple(i)) for i in range(tm.size)]
    if args.table:
        payload["monoid"] = algebra.monoid_to_json(endo.endo_monoid_table(tm))
    _emit(payload)
    return 0


# verification

def _finish(results):
    for r in results:
        print(r.line())
    return 0 if all(r.passed for r in results) else 1


def cmd_verify(args):
    t = args.target
    if t == "gadget":
        if args.k in (None, "auto"):
            raise MalformedInput("verify gadget needs an explicit --k")
        return _finish(checks.check_gadget(int(args.k), budget=args.budget))
    if t == "bp-monoid":
        return _finish(checks.check_bp_monoid(args.p))
    if t == "encoding":
        lat = algebra.lattice_from_meet_monoid(algebra.load_monoid(args.lattice))
        return _finish(checks.check_encoding(lat, budget=args.budget, jobs=args.jobs))
    if t == "blowup":
        d = load_any_graph(args.input)
        return _finish(checks.check_blowup(d, budget=args.budget))
    if t == "sip":
        d = load_any_graph(args.input)
        return _finish(checks.check_sip(d, _parse_k(args.k), budget=args.budget,
                                        jobs=args.jobs))
    if t == "pipeline":
        m = algebra.load_monoid(args.input)
        preds = algebra.monoid_predicates(m)
        if preds["commutative"] and preds["idempotent"]:
            lat = algebra.lattice_from_meet_monoid(m)
            return _finish(checks.check_lattice_pipeline(
                lat, budget=args.budget, jobs=args.jobs))
        kc = next(k for k in range(1, m.size + 1) if algebra.is_k_cancellative(m, k))
        return _finish(checks.check_group_pipeline(
            m, budget=args.budget, jobs=args.jobs, cancel_k=kc))
    if t == "minor":
        if args.model:
            model = retracts.minor_model_from_json(json.load(open(args.model)))
            host = load_any_graph(args.host)
            fails = retracts.verify_minor_model(host, model)
            results = [checks.CheckResult("minor model re-verified", not fails,
                                          "; ".join(fails))]
            return _finish(results)
        poset = _parse_poset(args.poset)
        return _finish(checks.check_minor(poset, budget=args.budget, jobs=args.jobs,
                                          require_thick=not args.no_thick_check))
    raise MalformedInput(f"unknown verify target {t}")


def cmd_witness(args):
    poset = _parse_poset(args.poset)
    lat = algebra.ideal_lattice(poset)
    host = encoding.build_encoding(lat)
    tm = endo.enumerate_endomorphisms(host, budget=args.budget, jobs=args.jobs)
    model, family = retracts.minor_witness(host, tm,
                                           require_thick=not args.no_thick_check)
    _write_json(args.out, retracts.minor_model_to_json(model))
    if args.host_out:
        _write_json(args.host_out, digraph_to_json(host))
    _emit({
        "branch_sets": len(model.branch_sets),
        "target_edges": model.target.num_edges,
        "host_vertices": host.n,
        "written": args.out,
    })
    return 0


def cmd_export(args):
    g = load_any_graph(args.input)
    dot = to_dot(g)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(dot)
    else:
        sys.stdout.write(dot)
    return 0


def cmd_bench(args):
    from .bench import run_benchmark

    run_benchmark(size=args.size)
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="endoforge", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    def add_budget(sp):
        sp.add_argument("--budget", type=int, default=None,
                        help="node budget for enumeration")
        sp.add_argument("--jobs", type=int, default=1,
                        help="worker threads for enumeration")

    pm = sub.add_parser("monoid", help="monoid table queries")
    pm.add_argument("action", choices=["validate", "predicates", "gens", "bp"])
    pm.add_argument("--in", dest="input", help="monoid JSON file")
    pm.add_argument("--p", type=int, default=2, help="prime for the bp construction")
    pm.add_argument("--out", help="output monoid JSON (bp)")
    pm.set_defaults(func=cmd_monoid)

    pb = sub.add_parser("build", help="graph constructions")
    pb.add_argument("kind", choices=["cayley", "augment", "encode", "blowup",
                                     "sip", "pipeline"])
    pb.add_argument("--in", dest="input", required=True)
    pb.add_argument("--out", default=None)
    pb.add_argument("--dot", default=None)
    pb.add_argument("--gens", default=None, help="comma-separated generator indices")
    pb.add_argument("--k", default="auto", help="gadget parameter or 'auto'")
    pb.add_argument("--verify", action="store_true",
                    help="enumerate End per pipeline stage when feasible")
    add_budget(pb)
    pb.set_defaults(func=cmd_build)

    pe = sub.add_parser("endo", help="enumerate endomorphisms")
    pe.add_argument("--in", dest="input", required=True)
    pe.add_argument("--count", action="store_true", default=True)
    pe.add_argument("--maps", action="store_true")
    pe.add_argument("--table", action="store_true")
    add_budget(pe)
    pe.set_defaults(func=cmd_endo)

    pv = sub.add_parser("verify", help="acceptance-style verification")
    pv.add_argument("target", choices=["gadget", "encoding", "blowup", "sip",
                                       "pipeline", "bp-monoid", "minor"])
    pv.add_argument("--in", dest="input", help="graph or monoid JSON")
    pv.add_argument("--lattice", help="meet-monoid JSON (encoding)")
    pv.add_argument("--k", default="auto")
    pv.add_argument("--p", type=int, default=2)
    pv.add_argument("--poset", help="poset JSON path or bn:N")
    pv.add_argument("--model", help="minor model JSON to re-verify")
    pv.add_argument("--host", help="host graph JSON for model re-verification")
    pv.add_argument("--no-thick-check", action="store_true",
                    help="run minor extraction without the thickness hypothesis")
    add_budget(pv)
    pv.set_defaults(func=cmd_verify)

    pw = sub.add_parser("witness", help="emit certificates")
    pw.add_argument("what", choices=["minor"])
    pw.add_argument("--poset", required=True, help="poset JSON path or bn:N")
    pw.add_argument("--out", default=None)
    pw.add_argument("--host-out", dest="host_out", default=None)
    pw.add_argument("--no-thick-check", action="store_true")
    add_budget(pw)
    pw.set_defaults(func=cmd_witness)

    px = sub.add_parser("export", help="export graph JSON")
    px.add_argument("what", choices=["dot"])
    px.add_argument("--in", dest="input", required=True)
    px.add_argument("--out", default=None)
    px.set_defaults(func=cmd_export)

    pben = sub.add_parser("bench", help="compare search backends")
    pben.add_argument("--size", choices=["small", "medium"], default="small")
    pben.set_defaults(func=cmd_bench)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MalformedInput as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as e:
        print(f"error: bad JSON input: {e}", file=sys.stderr)
        return 2
    except EndoforgeError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
