"""Plumbing forests: parsing, validation, and exact lattice-theoretic analysis.

A plumbing graph is a forest of integer-weighted vertices, optionally with one
distinguished unweighted vertex v0 marking a knot.  The weighted part G
carries the intersection form (weights on the diagonal, adjacency off it);
all invariants downstream are computed from that form with exact arithmetic.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import json

from .linalg import bareiss_det, invert_exact, mat_vec, solve_exact


class GraphError(ValueError):
    """Invalid plumbing input (syntax, cycles, weights, connectivity)."""


@dataclass(frozen=True)
class PlumbingGraph:
    vertices: tuple            # vertex ids in file order (canonical everywhere)
    weights: dict              # id -> int, distinguished vertex absent
    edges: frozenset           # frozenset({a, b}) pairs
    unweighted: object = None  # id of v0, or None

    def __post_init__(self):
        self._validate()

    def _validate(self):
        seen = set()
        for v in self.vertices:
            if v in seen:
                raise GraphError(f"duplicate vertex {v!r}")
            seen.add(v)
        for e in self.edges:
            a, b = tuple(e)
            if a not in seen or b not in seen:
                raise GraphError(f"edge {a!r}-{b!r} references unknown vertex")
        for v in self.vertices:
            if v == self.unweighted:
                continue
            if v not in self.weights:
                raise GraphError(f"vertex {v!r} has no weight and is not the distinguished vertex")
        if self.unweighted is not None and self.unweighted in self.weights:
            raise GraphError("distinguished vertex must not carry a weight")
        if self._has_cycle():
            raise GraphError("cycle detected: plumbing graphs must be forests")

    def _has_cycle(self):
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            a, b = tuple(e)
            ra, rb = find(a), find(b)
            if ra == rb:
                return True
            parent[ra] = rb
        return False

    # ---- weighted core -------------------------------------------------

    @property
    def weighted_vertices(self):
        return tuple(v for v in self.vertices if v != self.unweighted)

    def core(self):
        """The weighted forest G (self minus the distinguished vertex)."""
        if self.unweighted is None:
            return self
        keep = set(self.weighted_vertices)
        return PlumbingGraph(
            vertices=self.weighted_vertices,
            weights=dict(self.weights),
            edges=frozenset(e for e in self.edges if set(e) <= keep),
        )

    def neighbors(self, v):
        return tuple(w for e in self.edges if v in e for w in e if w != v)

    def intersection_matrix(self):
        """Rows/columns indexed by weighted_vertices in order."""
        vs = self.weighted_vertices
        idx = {v: i for i, v in enumerate(vs)}
        n = len(vs)
        m = [[0] * n for _ in range(n)]
        for i, v in enumerate(vs):
            m[i][i] = self.weights[v]
        for e in self.edges:
            a, b = tuple(e)
            if a in idx and b in idx:
                m[idx[a]][idx[b]] = 1
                m[idx[b]][idx[a]] = 1
        return m

    def incidence_of_unweighted(self):
        """Pairing row (v0, v) for v in weighted_vertices; requires v0."""
        if self.unweighted is None:
            raise GraphError("graph has no distinguished vertex")
        nb = set(self.neighbors(self.unweighted))
        return [1 if v in nb else 0 for v in self.weighted_vertices]

    def fill(self, n):
        """Assign weight n to the distinguished vertex, making it ordinary."""
        if self.unweighted is None:
            raise GraphError("graph has no distinguished vertex to fill")
        w = dict(self.weights)
        w[self.unweighted] = int(n)
        return PlumbingGraph(vertices=self.vertices, weights=w, edges=self.edges)

    def attach_unweighted(self, new_id, anchor):
        """Add a fresh distinguished vertex adjacent only to `anchor`."""
        if self.unweighted is not None:
            raise GraphError("graph already has a distinguished vertex")
        if new_id in self.vertices:
            raise GraphError(f"vertex id {new_id!r} already in use")
        return PlumbingGraph(
            vertices=self.vertices + (new_id,),
            weights=dict(self.weights),
            edges=self.edges | {frozenset((new_id, anchor))},
            unweighted=new_id,
        )

    def components(self):
        """Connected components of the weighted core, as vertex tuples."""
        core = self.core()
        seen = set()
        comps = []
        for v in core.vertices:
            if v in seen:
                continue
            stack, comp = [v], []
            seen.add(v)
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in core.neighbors(x):
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            comps.append(tuple(sorted(comp, key=core.vertices.index)))
        return comps


# ---- parsing -----------------------------------------------------------


def parse_graph(text):
    """Parse the line-oriented graph format or the JSON form.

    Lines: `vertex <id> <weight>`, `vertex <id> unweighted`, `edge <a> <b>`,
    `#` comments.  A JSON object {"vertices": [...], "edges": [...]} is also
    accepted; both parse to identical PlumbingGraph values.
    """
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return _parse_json_graph(text)

    vertices = []
    weights = {}
    edges = set()
    unweighted = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertex":
            if len(parts) != 3:
                raise GraphError(f"line {lineno}: expected `vertex <id> <weight|unweighted>`")
            vid = parts[1]
            if vid in vertices:
                raise GraphError(f"line {lineno}: duplicate vertex {vid!r}")
            vertices.append(vid)
            if parts[2] == "unweighted":
                if unweighted is not None:
                    raise GraphError(f"line {lineno}: more than one unweighted vertex")
                unweighted = vid
            else:
                try:
                    weights[vid] = int(parts[2])
                except ValueError:
                    raise GraphError(f"line {lineno}: bad weight {parts[2]!r}") from None
        elif parts[0] == "edge":
            if len(parts) != 3:
                raise GraphError(f"line {lineno}: expected `edge <id> <id>`")
            a, b = parts[1], parts[2]
            if a == b:
                raise GraphError(f"line {lineno}: self-loop on {a!r}")
            edges.add(frozenset((a, b)))
        else:
            raise GraphError(f"line {lineno}: unknown statement {parts[0]!r}")
    return PlumbingGraph(vertices=tuple(vertices), weights=weights,
                         edges=frozenset(edges), unweighted=unweighted)


def _parse_json_graph(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"bad JSON graph: {exc}") from None
    vertices = []
    weights = {}
    unweighted = None
    for entry in obj.get("vertices", []):
        vid = str(entry["id"])
        if vid in vertices:
            raise GraphError(f"duplicate vertex {vid!r}")
        vertices.append(vid)
        if entry.get("weight") is None:
            if unweighted is not None:
                raise GraphError("more than one unweighted vertex")
            unweighted = vid
        else:
            weights[vid] = int(entry["weight"])
    edges = set()
    for a, b in obj.get("edges", []):
        a, b = str(a), str(b)
        if a == b:
            raise GraphError(f"self-loop on {a!r}")
        edges.add(frozenset((a, b)))
    return PlumbingGraph(vertices=tuple(vertices), weights=weights,
                         edges=frozenset(edges), unweighted=unweighted)


# ---- negative definiteness and determinants ----------------------------


def is_negative_definite(graph):
    """Exact test: leading principal minors alternate in sign, starting negative."""
    m = graph.intersection_matrix()
    n = len(m)
    for k in range(1, n + 1):
        minor = bareiss_det([row[:k] for row in m[:k]])
        if minor == 0 or (minor > 0) != (k % 2 == 0):
            return False
    return True


def determinant(graph):
    return bareiss_det(graph.intersection_matrix())


@dataclass(frozen=True)
class IntersectionForm:
    matrix: tuple
    det: int
    inverse: tuple = field(repr=False)

    @classmethod
    def of(cls, graph):
        m = graph.intersection_matrix()
        det = bareiss_det(m)
        if det == 0:
            raise GraphError("degenerate intersection form")
        inv = invert_exact(m)
        return cls(matrix=tuple(map(tuple, m)),
                   det=det,
                   inverse=tuple(tuple(row) for row in inv))


# ---- minimal cycle ------------------------------------------------------


def minimal_cycle(graph):
    """Artin's minimal cycle Z_min by the generalized Laufer algorithm.

    Requires the weighted core to be connected and negative definite.
    Returns coefficients indexed by graph.weighted_vertices.
    """
    core = graph.core()
    if len(core.components()) != 1:
        raise GraphError("minimal_cycle requires a connected weighted graph")
    if not is_negative_definite(graph):
        raise GraphError("minimal_cycle requires a negative definite graph")
    m = core.intersection_matrix()
    n = len(m)
    z = [0] * n
    z[0] = 1
    cap = abs(bareiss_det(m)) * n * n + n + 1
    for _ in range(cap):
        pair = mat_vec(m, z)
        bad = next((i for i in range(n) if pair[i] > 0), None)
        if bad is None:
            return z
        z[bad] += 1
    raise GraphError("Laufer iteration exceeded its cap; input is not negative definite")


def minimal_cycles_per_component(graph):
    """Z_min of each connected component, as a dict over weighted_vertices."""
    core = graph.core()
    out = {}
    for comp in core.components():
        sub = PlumbingGraph(
            vertices=comp,
            weights={v: core.weights[v] for v in comp},
            edges=frozenset(e for e in core.edges if set(e) <= set(comp)),
        )
        z = minimal_cycle(sub)
        for v, c in zip(comp, z):
            out[v] = c
    return out


# ---- framing conversions ------------------------------------------------


def sigma0(graph):
    """Rational class dual to v0: solves (intersection form) . s = incidence(v0)."""
    core_m = graph.core().intersection_matrix()
    if not core_m:
        return []
    inc = graph.incidence_of_unweighted()
    return solve_exact(core_m, inc)


def sigma0_squared(graph):
    """Self-pairing of the dual class; 0 for an isolated distinguished vertex."""
    s = sigma0(graph)
    inc = graph.incidence_of_unweighted() if s else []
    return sum((Fraction(a) * b for a, b in zip(inc, s)), Fraction(0))


def seifert_framing(graph, n):
    """Seifert framing of the surgery filling v0 with weight n.

    Returns n - sigma0^2; errors if the filled graph is not negative definite.
    """
    if graph.unweighted is None:
        raise GraphError("seifert_framing needs a distinguished vertex")
    if not is_negative_definite(graph):
        raise GraphError("weighted core must be negative definite")
    filled = graph.fill(n)
    if not is_negative_definite(filled):
        raise GraphError(f"filling with {n} is not negative definite")
    return Fraction(n) - sigma0_squared(graph)


def cocore_self_pairing(graph, n):
    """Self-pairing of the surgery-dual class in the filled graph (= 1/Sigma^2)."""
    filled = graph.fill(n)
    if not is_negative_definite(filled):
        raise GraphError(f"filling with {n} is not negative definite")
    form = IntersectionForm.of(filled)
    i = filled.weighted_vertices.index(graph.unweighted)
    return form.inverse[i][i]
