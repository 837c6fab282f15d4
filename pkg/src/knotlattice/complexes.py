"""Finite filtered cube complexes over GF(2) and the functor calculus on them.

Cells are opaque hashable keys; a complex stores per-cell dimension and one or
two exact rational heights, plus the GF(2) boundary as a frozenset of faces
(faces with odd incidence).  All operations return new complexes; nothing is
mutated after construction.
"""

import os
from dataclasses import dataclass, field
from fractions import Fraction

from .convex import LatticeQuadratic
from .grading import grf_value


class ComplexError(ValueError):
    pass


def max_cells():
    return int(os.environ.get("LATTICE_MAX_CELLS", 10_000_000))


@dataclass
class FilteredCubeComplex:
    cells: dict                 # key -> (dim, h1, h2 | None)
    boundary: dict              # key -> frozenset of keys
    spinc: object = None
    coset1: Fraction = None     # h1 values mod 2
    coset2: Fraction = None     # h2 values mod 2 (None if singly filtered)
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.cells) > max_cells():
            raise ComplexError(
                f"complex with {len(self.cells)} cells exceeds LATTICE_MAX_CELLS")

    @property
    def doubly_filtered(self):
        return self.coset2 is not None

    def dim(self, c):
        return self.cells[c][0]

    def h1(self, c):
        return self.cells[c][1]

    def h2(self, c):
        return self.cells[c][2]

    def alexander(self, c):
        d = self.cells[c]
        if d[2] is None:
            raise ComplexError("alexander grading needs a doubly filtered complex")
        return (d[1] - d[2]) / 2

    def sorted_cells(self):
        return sorted(self.cells, key=_cell_sort_key)

    # ---- structural checks (cheap enough to run in tests everywhere) ----

    def check_boundary_squared(self):
        for c, faces in self.boundary.items():
            acc = set()
            for f in faces:
                acc ^= self.boundary.get(f, frozenset())
            if acc:
                raise ComplexError(f"boundary^2 != 0 at cell {c!r}")

    def check_monotone(self):
        for c, faces in self.boundary.items():
            _, h1, h2 = self.cells[c]
            for f in faces:
                _, g1, g2 = self.cells[f]
                if g1 < h1 or (h2 is not None and g2 < h2):
                    raise ComplexError(f"filtration not monotone on face {f!r} of {c!r}")

    def check_cosets(self):
        for c, (_, h1, h2) in self.cells.items():
            if self.coset1 is not None and (h1 - self.coset1) % 2 != 0:
                raise ComplexError(f"h1 of {c!r} leaves its coset")
            if self.coset2 is not None and h2 is not None and (h2 - self.coset2) % 2 != 0:
                raise ComplexError(f"h2 of {c!r} leaves its coset")

    def validate(self):
        self.check_boundary_squared()
        self.check_monotone()
        self.check_cosets()
        return self

    def to_json_dict(self):
        order = self.sorted_cells()
        index = {c: i for i, c in enumerate(order)}
        cells = []
        for c in order:
            entry = {
                "key": repr(c),
                "dim": self.cells[c][0],
                "h1": _fmt(self.cells[c][1]),
                "h2": _fmt(self.cells[c][2]),
                "boundary": sorted(index[f] for f in self.boundary[c]),
            }
            if isinstance(c, tuple) and len(c) == 3 and c[0] == "q":
                entry["base"] = list(c[1])
                entry["directions"] = sum(1 << v for v in c[2])
            cells.append(entry)
        return {
            "spinc": repr(self.spinc),
            "coset1": _fmt(self.coset1),
            "coset2": _fmt(self.coset2),
            "cells": cells,
        }


def _fmt(x):
    return None if x is None else str(Fraction(x))


def _cell_sort_key(c):
    return repr(c)


# ---- lattice and knot lattice complexes ---------------------------------


def _cube_cells(lo, hi):
    """All cubes [x, E] with corners inside the integer box [lo, hi]."""
    n = len(lo)
    xs = [[]]
    for v in range(n):
        xs = [p + [x] for p in xs for x in range(lo[v], hi[v] + 1)]
    for x in xs:
        free = [v for v in range(n) if x[v] + 1 <= hi[v]]
        for mask in range(1 << len(free)):
            e = frozenset(free[i] for i in range(len(free)) if mask >> i & 1)
            yield tuple(x), e


def _heights_from_vertex_fn(lo, hi, vertex_h):
    """Extend a vertex-level height to all cubes by corner minima (via faces)."""
    n = len(lo)
    h = {}
    by_dim = {}
    for x, e in _cube_cells(lo, hi):
        by_dim.setdefault(len(e), []).append((x, e))
    for x, e in by_dim.get(0, []):
        h[(x, e)] = vertex_h(x)
    for d in range(1, n + 1):
        for x, e in by_dim.get(d, []):
            v = min(e)
            rest = e - {v}
            xv = tuple(xi + 1 if i == v else xi for i, xi in enumerate(x))
            h[(x, e)] = min(h[(x, rest)], h[(xv, rest)])
    return h


def _cube_boundary(x, e):
    faces = set()
    for v in e:
        rest = e - {v}
        faces.add(("q", x, rest))
        xv = tuple(xi + 1 if i == v else xi for i, xi in enumerate(x))
        faces.add(("q", xv, rest))
    return frozenset(faces)


def build_lattice_complex(graph, t, box, system=None):
    """Lattice complex of a negative-definite graph over one Spin^c orbit.

    `box` is a pair (lo, hi) of integer vectors in the lattice coordinates
    anchored at k_t (cube [x, E] has vertices k_t + 2 PD(x + subsets of E)).
    """
    from .grading import SpinCSystem

    system = system or SpinCSystem(graph)
    lo, hi = box
    if any(l > 0 for l in lo) or any(h < 0 for h in hi):
        raise ComplexError("box must contain k_t (the origin)")
    quad = LatticeQuadratic(system.matrix)
    base = system.grf(t)
    k = t.rep

    def vertex_h(x):
        return base - quad.two_chi(k, x)  # grf(k_t + 2 PD x) = grf(k_t) - 2 chi(x)

    h = _heights_from_vertex_fn(lo, hi, vertex_h)
    cells = {}
    boundary = {}
    for (x, e), h1 in h.items():
        key = ("q", x, e)
        cells[key] = (len(e), h1, None)
        boundary[key] = _cube_boundary(x, e)
    return FilteredCubeComplex(cells=cells, boundary=boundary, spinc=t,
                               coset1=base % 2,
                               meta={"box": box, "graph": graph})


def build_knot_complex(graph_v0, t, box, system=None):
    """Doubly filtered knot lattice complex; h2 is h1 pulled back along v0."""
    from .grading import KnotSpinCSystem

    system = system or KnotSpinCSystem(graph_v0)
    lo, hi = box
    if any(l > 0 for l in lo) or any(h < 0 for h in hi):
        raise ComplexError("box must contain k_t (the origin)")
    quad = LatticeQuadratic(system.matrix)
    core = graph_v0.core()
    k = t.rep
    kv = system.translate_char_by_v0(k)
    base1 = system.grf(t)
    base2 = grf_value(core, kv, system.inverse)

    h1 = _heights_from_vertex_fn(lo, hi, lambda x: base1 - quad.two_chi(k, x))
    h2 = _heights_from_vertex_fn(lo, hi, lambda x: base2 - quad.two_chi(kv, x))
    cells = {}
    boundary = {}
    for (x, e), v1 in h1.items():
        key = ("q", x, e)
        cells[key] = (len(e), v1, h2[(x, e)])
        boundary[key] = _cube_boundary(x, e)
    return FilteredCubeComplex(cells=cells, boundary=boundary, spinc=t,
                               coset1=base1 % 2, coset2=base2 % 2,
                               meta={"box": box, "graph": graph_v0})


# ---- the filtered-object calculus ---------------------------------------


def a_star(cx, i):
    """Specialize a doubly filtered complex at Alexander index i: min(h1, h2+2i)."""
    if not cx.doubly_filtered:
        raise ComplexError("a_star needs a doubly filtered complex")
    i = Fraction(i)
    if ((cx.coset1 - cx.coset2) / 2 - i) % 1 != 0:
        raise ComplexError(f"index {i} is not in the Alexander coset")
    cells = {c: (d, min(h1, h2 + 2 * i), None) for c, (d, h1, h2) in cx.cells.items()}
    # i in the coset forces h2 + 2i into the h1 coset, so coset1 survives
    return FilteredCubeComplex(cells=cells, boundary=dict(cx.boundary), spinc=cx.spinc,
                               coset1=cx.coset1, meta=dict(cx.meta))


def p1(cx):
    """Forget the second filtration."""
    cells = {c: (d, h1, None) for c, (d, h1, _) in cx.cells.items()}
    return FilteredCubeComplex(cells=cells, boundary=dict(cx.boundary), spinc=cx.spinc,
                               coset1=cx.coset1, meta=dict(cx.meta))


def p2(cx):
    """Forget the first filtration (the remaining height becomes h1)."""
    if not cx.doubly_filtered:
        raise ComplexError("p2 needs a doubly filtered complex")
    cells = {c: (d, h2, None) for c, (d, _, h2) in cx.cells.items()}
    return FilteredCubeComplex(cells=cells, boundary=dict(cx.boundary), spinc=cx.spinc,
                               coset1=cx.coset2, meta=dict(cx.meta))


def shift(cx, q):
    """Raise the (single) height by q."""
    q = Fraction(q)
    cells = {c: (d, h1 + q, None if h2 is None else h2 + q)
             for c, (d, h1, h2) in cx.cells.items()}
    return FilteredCubeComplex(
        cells=cells, boundary=dict(cx.boundary), spinc=cx.spinc,
        coset1=None if cx.coset1 is None else (cx.coset1 + q) % 2,
        coset2=None if cx.coset2 is None else (cx.coset2 + q) % 2,
        meta=dict(cx.meta))


def shift2(cx, q1, q2):
    """Raise the two heights by (q1, q2)."""
    if not cx.doubly_filtered:
        raise ComplexError("shift2 needs a doubly filtered complex")
    q1, q2 = Fraction(q1), Fraction(q2)
    cells = {c: (d, h1 + q1, h2 + q2) for c, (d, h1, h2) in cx.cells.items()}
    return FilteredCubeComplex(cells=cells, boundary=dict(cx.boundary), spinc=cx.spinc,
                               coset1=(cx.coset1 + q1) % 2, coset2=(cx.coset2 + q2) % 2,
                               meta=dict(cx.meta))


def sigma_swap(cx):
    """Swap the two height functions."""
    if not cx.doubly_filtered:
        raise ComplexError("sigma_swap needs a doubly filtered complex")
    cells = {c: (d, h2, h1) for c, (d, h1, h2) in cx.cells.items()}
    return FilteredCubeComplex(cells=cells, boundary=dict(cx.boundary), spinc=cx.spinc,
                               coset1=cx.coset2, coset2=cx.coset1, meta=dict(cx.meta))


def tensor(cx, cy):
    """Product complex: cells multiply, heights add, GF(2) Leibniz boundary."""
    both_double = cx.doubly_filtered and cy.doubly_filtered
    if cx.doubly_filtered != cy.doubly_filtered:
        raise ComplexError("tensor factors must have matching filtration arity")
    cells = {}
    boundary = {}
    for a, (da, a1, a2) in cx.cells.items():
        for b, (db, b1, b2) in cy.cells.items():
            key = ("x", a, b)
            cells[key] = (da + db, a1 + b1, (a2 + b2) if both_double else None)
            faces = set()
            for fa in cx.boundary[a]:
                faces.add(("x", fa, b))
            for fb in cy.boundary[b]:
                faces.add(("x", a, fb))
            boundary[key] = frozenset(faces)
    return FilteredCubeComplex(
        cells=cells, boundary=boundary, spinc=(cx.spinc, cy.spinc),
        coset1=(cx.coset1 + cy.coset1) % 2,
        coset2=((cx.coset2 + cy.coset2) % 2) if both_double else None,
        meta={"tensor": True})


def point_complex(h1=0, h2=None, spinc=None):
    """The one-point complex (tensor unit at height 0)."""
    h1 = Fraction(h1)
    h2 = None if h2 is None else Fraction(h2)
    return FilteredCubeComplex(
        cells={("pt",): (0, h1, h2)}, boundary={("pt",): frozenset()},
        spinc=spinc, coset1=h1 % 2, coset2=None if h2 is None else h2 % 2)


# ---- cell maps -----------------------------------------------------------


@dataclass
class CellMap:
    """A GF(2) cellular map between filtered complexes.

    mapping[c] is the image cell or None (degenerate image, zero on chains).
    kind: 'filtered'  - both heights non-decreasing,
          'h1'        - first height non-decreasing (second unconstrained),
          'flip'      - target h1 >= source h2 (a map out of p2 into p1),
          'skew'      - target (h1,h2) >= source (h2,h1).
    strict: True when no degenerate clamping occurred (honest cell bijections
    keep strict involutive identities; clamped maps only satisfy them up to
    homotopy).
    """

    src: FilteredCubeComplex
    dst: FilteredCubeComplex
    mapping: dict
    kind: str = "filtered"
    strict: bool = True

    def image_chain(self, cells):
        """GF(2) image of a set of cells."""
        out = set()
        for c in cells:
            m = self.mapping[c]
            if m is not None:
                out ^= {m}
        return frozenset(out)

    def verify(self):
        errs = []
        for c, m in self.mapping.items():
            dc = self.src.cells[c]
            if m is not None:
                dm = self.dst.cells[m]
                if dm[0] != dc[0]:
                    errs.append(f"dimension mismatch at {c!r}")
                    continue
                if not self._height_ok(dc, dm):
                    errs.append(f"filtration violated at {c!r}")
            lhs = self.image_chain(self.src.boundary[c])
            if m is None:
                rhs = frozenset()
            else:
                rhs = self.dst.boundary[m]
            if lhs != rhs:
                errs.append(f"boundary does not commute at {c!r}")
        return errs

    def _height_ok(self, dc, dm):
        _, h1, h2 = dc
        _, g1, g2 = dm
        if self.kind == "filtered":
            return g1 >= h1 and (h2 is None or g2 is None or g2 >= h2)
        if self.kind == "h1":
            return g1 >= h1
        if self.kind == "flip":
            return g1 >= h2
        if self.kind == "skew":
            return g1 >= h2 and (g2 is None or g2 >= h1)
        raise ComplexError(f"unknown cell map kind {self.kind!r}")

    def compose(self, other):
        """self after other (other first)."""
        mapping = {}
        for c, m in other.mapping.items():
            mapping[c] = None if m is None else self.mapping[m]
        return CellMap(src=other.src, dst=self.dst, mapping=mapping,
                       kind="filtered", strict=self.strict and other.strict)

    def to_json_dict(self):
        """Cell-index pairs (source index, target index or null)."""
        src_order = {c: i for i, c in enumerate(self.src.sorted_cells())}
        dst_order = {c: i for i, c in enumerate(self.dst.sorted_cells())}
        pairs = sorted((src_order[c],
                        None if m is None else dst_order[m])
                       for c, m in self.mapping.items())
        return {"kind": self.kind, "strict": self.strict, "pairs": pairs}
