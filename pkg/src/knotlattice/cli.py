"""Command-line front end.

Subcommands: check, lattice, knotlattice, tau, line, surgery, invariants,
iterate.  Every emitted number is exact: rationals print as p/q, never as
decimals.  Exit codes: 0 ok, 1 computation error, 2 input error.
"""

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .complexes import ComplexError
from .grading import KnotSpinCSystem, SpinCSystem
from .homology import alexander_range, d_invariant, top_alexander_rank
from .plumbing import (GraphError, determinant, is_negative_definite,
                       minimal_cycle, parse_graph, seifert_framing)
from .reduction import (CalibrationError, CertificateError, ar_line,
                        calibrated_tau, certify_box, simplify_line)


def _rat(x):
    return str(Fraction(x))


def _read_graph(path):
    return parse_graph(Path(path).read_text())


def cmd_check(args):
    graph = _read_graph(args.graph)
    core = graph.core()
    lines = [f"{len(graph.vertices)} vertices"
             + (f" (distinguished: {graph.unweighted})" if graph.unweighted else ""),
             "forest: yes"]
    negdef = is_negative_definite(core)
    lines.append(f"negative definite (core): {'yes' if negdef else 'no'}")
    if negdef:
        det = determinant(core)
        lines.append(f"det(core) = {det}")
        comps = core.components()
        if len(comps) == 1 and core.vertices:
            z = minimal_cycle(core)
            lines.append("Z_min = (" + ", ".join(map(str, z)) + ")")
        system = SpinCSystem(core)
        lines.append(f"Spin^c structures: {len(system)}")
    print("\n".join(lines))
    return 0


def _box_complex(graph, radius, knot):
    from .complexes import build_knot_complex, build_lattice_complex

    out = {}
    if knot:
        system = KnotSpinCSystem(graph)
    else:
        system = SpinCSystem(graph)
    for t in system.orbits:
        cert = certify_box(graph if knot else graph.core(), t,
                           radius=radius, system=system)
        if knot:
            out[t.orbit_id] = build_knot_complex(graph, t, cert.box, system)
        else:
            out[t.orbit_id] = build_lattice_complex(graph.core(), t, cert.box,
                                                    system)
    return out


def cmd_lattice(args):
    graph = _read_graph(args.graph)
    complexes = _box_complex(graph, args.radius, knot=False)
    payload = {}
    for tid, cx in sorted(complexes.items()):
        cx.validate()
        payload[str(tid)] = {
            "cells": len(cx.cells),
            "d_invariant": _rat(d_invariant(cx)),
        }
        if args.dump:
            payload[str(tid)]["complex"] = cx.to_json_dict()
    _emit(payload, args)
    return 0


def cmd_knotlattice(args):
    graph = _read_graph(args.graph)
    if graph.unweighted is None:
        raise GraphError("knotlattice needs a graph with a distinguished vertex")
    complexes = _box_complex(graph, args.radius, knot=True)
    payload = {}
    for tid, cx in sorted(complexes.items()):
        cx.validate()
        mn, mx = alexander_range(cx)
        top, rank = top_alexander_rank(cx)
        payload[str(tid)] = {
            "cells": len(cx.cells),
            "alexander_min": _rat(mn),
            "alexander_max": _rat(mx),
            "genus": _rat(top),
            "top_rank": rank,
        }
        if args.dump:
            payload[str(tid)]["complex"] = cx.to_json_dict()
    _emit(payload, args)
    return 0


def cmd_tau(args):
    tau = calibrated_tau(args.p)
    line = ar_line(args.p, tau=tau)
    n_max = args.n if args.n is not None else line.hi
    rows = []
    for n in range(0, n_max + 1):
        h1 = line.base - 2 * tau(n)
        h2 = line.base - 2 * tau(n - tau.alpha)
        rows.append((n, tau(n), h1, h2))
    if args.format == "json":
        print(json.dumps([{"n": n, "tau": t, "h1": _rat(a), "h2": _rat(b)}
                          for n, t, a, b in rows], indent=2))
    else:
        print("n\ttau\th1\th2")
        for n, t, a, b in rows:
            print(f"{n}\t{t}\t{_rat(a)}\t{_rat(b)}")
    return 0


def cmd_line(args):
    line = ar_line(args.p)
    payload = line.to_json_dict()
    if args.extrema:
        simp = simplify_line(line)
        payload["joint_extrema"] = [
            {"n": n, "h1": _rat(a), "h2": _rat(b)} for n, a, b in simp.extrema]
        payload["dichotomy_ok"] = simp.dichotomy_ok
    print(json.dumps(payload, indent=2))
    return 0


def cmd_surgery(args):
    from .family import family_from_graph
    from .surgery import surgered_family, verify_surgery

    graph = _read_graph(args.graph)
    if args.verify:
        report = verify_surgery(graph, args.framing, radius=args.radius,
                                slack=args.slack)
        print(report.summary())
        return 0 if report.passed else 1
    fam = family_from_graph(graph, radius=args.radius, involutions=False)
    out = surgered_family(fam, framing=args.framing, slack=args.slack,
                          involutions=False)
    from .pipeline import family_report

    payload = family_report(out)
    payload["seifert_framing"] = _rat(seifert_framing(graph, args.framing))
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        for idx, lab in enumerate(out.spinc):
            dump = out.complexes[lab].to_json_dict()
            dump["flip_map"] = out.gamma[lab].to_json_dict()
            (outdir / f"class_{idx}.json").write_text(json.dumps(dump))
        payload["dumps"] = str(outdir)
    _emit(payload, args)
    return 0


def cmd_invariants(args):
    if args.p:
        line = ar_line(args.p)
        cx = line.to_complex()
        mn, mx = alexander_range(cx)
        top, rank = top_alexander_rank(cx)
        payload = {
            "alexander_min": _rat(mn), "alexander_max": _rat(mx),
            "genus": _rat(top), "top_rank": rank,
        }
    else:
        graph = _read_graph(args.graph)
        if graph.unweighted is not None and args.framing is None:
            return cmd_knotlattice(args)
        complexes = _box_complex(graph.fill(args.framing) if args.framing is not None
                                 else graph, args.radius, knot=False)
        payload = {str(tid): {"d_invariant": _rat(d_invariant(cx))}
                   for tid, cx in sorted(complexes.items())}
    _emit(payload, args)
    return 0


def cmd_iterate(args):
    from .pipeline import load_script, run_pipeline

    steps = load_script(args.script)
    _, reports = run_pipeline(steps, base_dir=Path(args.script).parent)
    if args.format == "json":
        print(json.dumps(reports, indent=2))
    else:
        for rep in reports:
            print(f"# {rep['step']} ({rep['name']}): {rep['spinc_count']} Spin^c, "
                  f"sigma0^2 = {rep['sigma0_sq']}")
            print("spinc\tA_min\tA_max\tgenus\ttop_rank\td")
            for row in rep["rows"]:
                print(f"{row['spinc']}\t{row['alexander_min']}\t"
                      f"{row['alexander_max']}\t{row['top_alexander']}\t"
                      f"{row['top_rank']}\t{row['d_invariant']}")
    return 0


def _emit(payload, args):
    if getattr(args, "format", "json") == "json":
        print(json.dumps(payload, indent=2))
    else:
        _print_tsv(payload)


def _print_tsv(payload, prefix=""):
    for k, v in payload.items():
        if isinstance(v, dict):
            _print_tsv(v, prefix=f"{prefix}{k}.")
        else:
            print(f"{prefix}{k}\t{v}")


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="knotlattice",
        description="lattice and knot lattice homology of plumbing forests")
    sub = parser.add_subparsers(dest="cmd", required=True)

    def add(name, fn, **flags):
        p = sub.add_parser(name)
        p.set_defaults(fn=fn)
        return p

    p = add("check", cmd_check)
    p.add_argument("graph")

    for name, fn in (("lattice", cmd_lattice), ("knotlattice", cmd_knotlattice)):
        p = add(name, fn)
        p.add_argument("graph")
        p.add_argument("--radius", type=int, default=4)
        p.add_argument("--dump", action="store_true")
        p.add_argument("--format", choices=("json", "tsv"), default="json")

    p = add("tau", cmd_tau)
    p.add_argument("p", type=int, nargs="+")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--format", choices=("json", "tsv"), default="tsv")

    p = add("line", cmd_line)
    p.add_argument("p", type=int, nargs="+")
    p.add_argument("--extrema", action="store_true")

    p = add("surgery", cmd_surgery)
    p.add_argument("--graph", required=True)
    p.add_argument("--framing", type=int, required=True)
    p.add_argument("--seifert", default=None)
    p.add_argument("--radius", type=int, default=4)
    p.add_argument("--slack", type=int, default=0)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("json", "tsv"), default="json")

    p = add("invariants", cmd_invariants)
    p.add_argument("--graph", default=None)
    p.add_argument("--framing", type=int, default=None)
    p.add_argument("--p", type=int, nargs="+", default=None)
    p.add_argument("--radius", type=int, default=4)
    p.add_argument("--dump", action="store_true")
    p.add_argument("--format", choices=("json", "tsv"), default="json")

    p = add("iterate", cmd_iterate)
    p.add_argument("script")
    p.add_argument("--format", choices=("json", "tsv"), default="tsv")

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (CalibrationError, CertificateError, ComplexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (GraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
