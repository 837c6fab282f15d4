"""Declarative surgery pipelines: build, surger, tensor, restrict, report.

A script is a list of steps, each producing a named artifact.  Graph framings
are converted to Seifert framings automatically through the accumulated
framing data (sigma0^2 of a surgery output is 1/Sigma^2; connected sums add).
Scripts are TOML or JSON files with a [[steps]] array.
"""

import json
from fractions import Fraction
from pathlib import Path

from .family import (family_from_graph, family_from_line, family_from_points,
                     tensor_families)
from .homology import alexander_range, d_invariant, top_alexander_rank
from .plumbing import GraphError, parse_graph
from .reduction import ar_line, brieskorn_core_graph
from .surgery import surgered_family


def load_script(path):
    text = Path(path).read_text()
    if str(path).endswith(".json"):
        data = json.loads(text)
    else:
        try:
            import tomllib
        except ImportError:
            import tomli as tomllib
        data = tomllib.loads(text)
    steps = data.get("steps")
    if not isinstance(steps, list) or not steps:
        raise GraphError("pipeline script needs a nonempty [[steps]] array")
    return steps


def family_report(fam):
    """Per-Spin^c invariants of a knot complex family."""
    from .complexes import p1 as project1

    rows = []
    for lab in fam.spinc:
        cx = fam.complexes[lab]
        mn, mx = alexander_range(cx)
        top, rank = top_alexander_rank(cx)
        proj = project1(cx)
        try:
            d = d_invariant(proj)
        except Exception:
            d = None
        rows.append({
            "spinc": repr(lab),
            "alexander_min": str(mn),
            "alexander_max": str(mx),
            "top_alexander": None if top is None else str(top),
            "top_rank": rank,
            "d_invariant": None if d is None else str(d),
            "cells": len(cx.cells),
        })
    return {
        "name": fam.name,
        "spinc_count": len(fam.spinc),
        "sigma0_sq": str(fam.sigma0_sq),
        "strict_involutions": fam.strict_involutions,
        "rows": rows,
    }


def run_pipeline(steps, base_dir="."):
    """Execute a pipeline; returns (artifacts, reports)."""
    artifacts = {}
    reports = []
    for idx, step in enumerate(steps):
        op = step.get("op")
        name = step.get("name", f"step{idx}")
        if op == "graph":
            graph = _load_graph(step, base_dir)
            artifacts[name] = family_from_graph(
                graph, radius=int(step.get("radius", 4)),
                involutions=bool(step.get("involutions", False)))
        elif op == "points":
            if "p" in step:
                graph, _ = brieskorn_core_graph([int(x) for x in step["p"]])
            else:
                graph = _load_graph(step, base_dir)
            artifacts[name] = family_from_points(graph)
        elif op == "line":
            line = ar_line([int(x) for x in step["p"]])
            artifacts[name] = family_from_line(line)
        elif op == "surgery":
            fam = artifacts[step["input"]]
            kwargs = {"slack": int(step.get("slack", 0)),
                      "involutions": bool(step.get("involutions", True))}
            if "seifert" in step:
                kwargs["sigma_sq"] = Fraction(str(step["seifert"]))
            else:
                kwargs["framing"] = int(step["framing"])
            artifacts[name] = surgered_family(fam, **kwargs)
        elif op == "tensor":
            a, b = (artifacts[x] for x in step["inputs"])
            artifacts[name] = tensor_families(a, b)
        elif op == "restrict":
            fam = artifacts[step["input"]]
            keep = [lab for lab in fam.spinc if repr(lab) in set(step["labels"])]
            artifacts[name] = fam.restrict(keep)
        elif op == "report":
            fam = artifacts[step["input"]]
            rep = family_report(fam)
            rep["step"] = name
            rep["input"] = step["input"]
            reports.append(rep)
            artifacts[name] = fam
        else:
            raise GraphError(f"unknown pipeline op {op!r}")
    return artifacts, reports


def _load_graph(step, base_dir):
    if "text" in step:
        return parse_graph(step["text"])
    return parse_graph((Path(base_dir) / step["file"]).read_text())
