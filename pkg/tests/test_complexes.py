import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotlattice.complexes import (CellMap, ComplexError, a_star,
                                   build_knot_complex, build_lattice_complex,
                                   p1, p2, point_complex, shift, shift2,
                                   sigma_swap, tensor)
from knotlattice.grading import KnotSpinCSystem, SpinCSystem


def test_single_vertex_point(single_vertex):
    g = single_vertex(-1)
    system = SpinCSystem(g)
    cx = build_lattice_complex(g, system.orbits[0], ((0,), (0,)), system)
    assert len(cx.cells) == 1
    ((_, h1, h2),) = cx.cells.values()
    assert (h1, h2) == (0, None)
    cx.validate()


def test_single_vertex_box_heights(single_vertex):
    # K in {-5,-3,-1,1,3}: five vertices, four edges, max height 0 at K=-1
    g = single_vertex(-1)
    system = SpinCSystem(g)
    cx = build_lattice_complex(g, system.orbits[0], ((-2,), (2,)), system)
    verts = {k: v for k, v in cx.cells.items() if v[0] == 0}
    edges = {k: v for k, v in cx.cells.items() if v[0] == 1}
    assert len(verts) == 5 and len(edges) == 4
    assert max(h for _, h, _ in verts.values()) == 0
    by_x = {k[1][0]: h for k, (_, h, _) in verts.items()}
    # h((-1) + 2x * (-1)) = ((-1-2x)^2 + 1)/4... check against the hand oracle
    for x, h in by_x.items():
        kval = -1 - 2 * x
        assert h == Fraction(-kval * kval + 1, 4)
    cx.validate()


def test_knot_complex_heights_match_line(trefoil_graph, trefoil_line):
    system = KnotSpinCSystem(trefoil_graph)
    t = system.orbits[0]
    cx = build_knot_complex(trefoil_graph, t, ((0, 0, 0), (2, 1, 1)), system)
    cx.validate()
    from knotlattice.homology import alexander_range, assoc_graded_homology

    assert alexander_range(cx) == (-1, 1)
    assert assoc_graded_homology(cx) == assoc_graded_homology(trefoil_line.to_complex())


def test_alexander_translate_shift(trefoil_graph):
    # translating a vertex by v0 shifts the Alexander grading by -sigma0^2
    # (the second difference of the height along the v0 direction)
    from knotlattice.plumbing import sigma0_squared

    system = KnotSpinCSystem(trefoil_graph)
    t = system.orbits[0]
    cx = build_knot_complex(trefoil_graph, t, ((0, 0, 0), (2, 1, 1)), system)
    from knotlattice.grading import grf_value

    core = trefoil_graph.core()
    step = -sigma0_squared(trefoil_graph)
    assert step == 6
    for key, (dim, h1, h2) in cx.cells.items():
        if dim:
            continue
        k = tuple(a + 2 * sum(system.matrix[j][l] * key[1][l]
                              for l in range(3))
                  for j, a in enumerate(t.rep))
        kv = system.translate_char_by_v0(k)
        a_here = (h1 - h2) / 2
        a_there = (grf_value(core, kv) -
                   grf_value(core, system.translate_char_by_v0(kv))) / 2
        assert a_there == a_here + step


def _random_line_complex(rng, n, doubly=True, spinc="z"):
    h1 = {i: Fraction(2 * rng.randint(-4, 4)) for i in range(n)}
    h2 = {i: Fraction(2 * rng.randint(-4, 4)) for i in range(n)}
    cells = {}
    boundary = {}
    for i in range(n):
        cells[("v", i)] = (0, h1[i], h2[i] if doubly else None)
        boundary[("v", i)] = frozenset()
    for i in range(n - 1):
        cells[("e", i)] = (1, min(h1[i], h1[i + 1]),
                           min(h2[i], h2[i + 1]) if doubly else None)
        boundary[("e", i)] = frozenset({("v", i), ("v", i + 1)})
    from knotlattice.complexes import FilteredCubeComplex

    return FilteredCubeComplex(cells=cells, boundary=boundary, spinc=spinc,
                               coset1=Fraction(0),
                               coset2=Fraction(0) if doubly else None)


def test_a_star_is_cellwise_min():
    rng = random.Random(5)
    cx = _random_line_complex(rng, 6)
    for i in (-2, 0, 3):
        sx = a_star(cx, i)
        for c in cx.cells:
            _, h1, h2 = cx.cells[c]
            assert sx.cells[c][1] == min(h1, h2 + 2 * i)
        sx.validate()


def test_a_star_extremes_match_projections():
    rng = random.Random(6)
    cx = _random_line_complex(rng, 5)
    from knotlattice.homology import alexander_range

    lo, hi = alexander_range(cx)
    top = a_star(cx, hi)
    for c in cx.cells:
        assert top.cells[c][1] == cx.cells[c][1]          # eta_1 iso
    bot = a_star(cx, lo)
    for c in cx.cells:
        assert bot.cells[c][1] == cx.cells[c][2] + 2 * lo  # eta_2 iso


def test_a_star_coset_error():
    rng = random.Random(7)
    cx = _random_line_complex(rng, 4)
    with pytest.raises(ComplexError, match="coset"):
        a_star(cx, Fraction(1, 3))


def test_projections_and_shifts(trefoil_line):
    cx = trefoil_line.to_complex()
    px = p1(cx)
    assert all(px.cells[c][1] == cx.cells[c][1] for c in cx.cells)
    qx = p2(cx)
    assert all(qx.cells[c][1] == cx.cells[c][2] for c in cx.cells)
    assert shift(cx, 0).cells == cx.cells
    s = shift(shift(cx, Fraction(1, 2)), Fraction(3, 2))
    assert s.cells == shift(cx, 2).cells
    d = shift2(cx, 1, -1)
    assert all(d.cells[c][1] == cx.cells[c][1] + 1 for c in cx.cells)
    assert all(d.cells[c][2] == cx.cells[c][2] - 1 for c in cx.cells)
    w = sigma_swap(cx)
    assert all(w.cells[c] == (cx.cells[c][0], cx.cells[c][2], cx.cells[c][1])
               for c in cx.cells)
    assert sigma_swap(w).cells == cx.cells


def test_tensor_unit_and_heights(trefoil_line):
    cx = trefoil_line.to_complex()
    unit = point_complex(0, 0)
    prod = tensor(cx, unit)
    assert len(prod.cells) == len(cx.cells)
    for key, data in prod.cells.items():
        assert data == cx.cells[key[1]]
    prod.validate()


def test_tensor_alexander_additive(trefoil_line):
    cx = trefoil_line.to_complex()
    prod = tensor(cx, cx)
    for (_, c1, c2), (_, h1, h2) in prod.cells.items():
        a = (h1 - h2) / 2
        a1 = (cx.cells[c1][1] - cx.cells[c1][2]) / 2
        a2 = (cx.cells[c2][1] - cx.cells[c2][2]) / 2
        assert a == a1 + a2
    prod.validate()


@given(st.integers(2, 4), st.integers(2, 4), st.integers(0, 10 ** 6))
@settings(max_examples=20, deadline=None)
def test_tensor_assoc_and_projection_laws(n1, n2, seed):
    rng = random.Random(seed)
    x = _random_line_complex(rng, n1, spinc="x")
    y = _random_line_complex(rng, n2, spinc="y")
    xy = tensor(x, y)
    xy.validate()
    # p1 tensor = tensor p1
    left = p1(xy)
    right = tensor(p1(x), p1(y))
    assert {c: v[:2] for c, v in left.cells.items()} == \
        {c: v[:2] for c, v in right.cells.items()}
    # sigma distributes
    sw = sigma_swap(xy)
    sw2 = tensor(sigma_swap(x), sigma_swap(y))
    assert sw.cells == sw2.cells
    # associativity on cells/heights
    z = _random_line_complex(rng, 2, spinc="z")
    a = tensor(tensor(x, y), z)
    b = tensor(x, tensor(y, z))
    ha = sorted((v[1], v[2]) for v in a.cells.values())
    hb = sorted((v[1], v[2]) for v in b.cells.values())
    assert ha == hb and len(a.cells) == len(b.cells)


def test_family_involution_identities(trefoil_graph_family):
    fam = trefoil_graph_family
    lab = fam.spinc[0]
    I, J, G = fam.invol_I[lab], fam.invol_J[lab], fam.gamma[lab]
    # I is height-preserving in h1 wherever it is honest
    cx = fam.complexes[lab]
    for c, img in I.mapping.items():
        if I.strict and img is not None:
            assert cx.cells[c][1] == cx.cells[img][1]
    # Gamma strictly reindexes: h1(Gamma c) = h2(c) on honest cells
    errs = G.verify()
    assert not errs
    # J = I after Gamma where both compositions are defined and honest
    for c in cx.cells:
        g = G.mapping[c]
        if g is None:
            continue
        lhs = I.mapping[g]
        rhs = J.mapping[c]
        if I.strict and J.strict:
            assert lhs == rhs


def test_point_family_involutions(lens_sum_23_points):
    fam = lens_sum_23_points
    for lab in fam.spinc:
        I = fam.invol_I[lab]
        J = fam.invol_J[lab]
        I2 = fam.invol_I[fam.conj[lab]].compose(I)
        assert all(I2.mapping[c] == c for c in I2.mapping)
        JJ = fam.invol_J[fam.conj[fam.plus_k[lab]]].compose(J)
        assert all(JJ.mapping[c] == c for c in JJ.mapping)
        # J then Gamma equals I
        GJ = fam.gamma[fam.conj[fam.plus_k[lab]]].compose(J)
        assert all(GJ.mapping[c] == I.mapping[c] for c in GJ.mapping)


def test_cellmap_detects_bad_boundary(trefoil_line):
    cx = trefoil_line.to_complex()
    mapping = {c: c for c in cx.cells}
    first_edge = next(c for c in cx.cells if cx.cells[c][0] == 1)
    mapping[first_edge] = None
    bad = CellMap(src=cx, dst=cx, mapping=mapping, kind="filtered")
    assert bad.verify()


def test_max_cells_guard(monkeypatch, single_vertex):
    monkeypatch.setenv("LATTICE_MAX_CELLS", "3")
    g = single_vertex(-1)
    system = SpinCSystem(g)
    with pytest.raises(ComplexError, match="LATTICE_MAX_CELLS"):
        build_lattice_complex(g, system.orbits[0], ((-2,), (2,)), system)


def test_dump_includes_base_and_mask(trefoil_graph):
    system = KnotSpinCSystem(trefoil_graph)
    cx = build_knot_complex(trefoil_graph, system.orbits[0],
                            ((0, 0, 0), (1, 1, 0)), system)
    dump = cx.to_json_dict()
    cubes = [c for c in dump["cells"] if "base" in c]
    assert cubes and all(len(c["base"]) == 3 for c in cubes)
    edges = [c for c in cubes if c["dim"] == 1]
    assert edges and all(c["directions"] in (1, 2, 4) for c in edges)
