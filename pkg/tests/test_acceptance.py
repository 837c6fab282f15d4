"""Acceptance criteria, one test per criterion, exact rational assertions.

Each test prints a PASS line with its runtime so the suite doubles as the
acceptance report: run `pytest tests/test_acceptance.py -v -s`.
"""

import random
import time
from fractions import Fraction

import pytest

from knotlattice.complexes import p1
from knotlattice.family import (family_from_graph, family_from_line,
                                family_from_points, tensor_families)
from knotlattice.grading import grading_shift
from knotlattice.homology import (alexander_range, assoc_graded_homology,
                                  d_invariant, top_alexander_rank,
                                  total_homology)
from knotlattice.plumbing import parse_graph
from knotlattice.reduction import (ar_line, brieskorn_core_graph,
                                   brieskorn_fiber_graph, calibrated_tau,
                                   simplify_line, tau_lattice_oracle)
from knotlattice.surgery import surgered_family, verify_surgery
from tests.conftest import TREFOIL_TEXT

F = Fraction

SIGMA237_EXTREMA = [
    (0, 0, -44), (1, -2, -44), (6, 0, -32), (7, -2, -32), (12, -2, -22),
    (13, -4, -22), (14, -4, -20), (15, -6, -20), (18, -6, -14), (19, -8, -14),
    (20, -8, -12), (22, -12, -12), (24, -12, -8), (25, -14, -8), (26, -14, -6),
    (29, -20, -6), (30, -20, -4), (31, -22, -4), (32, -22, -2), (37, -32, -2),
    (38, -32, 0), (43, -44, -2), (44, -44, 0),
]

ITERATED_TABLE = {
    (0, 0): (F(-7, 12), F(17, 12)),
    (1, 0): (F(-13, 12), F(11, 12)),
    (0, 1): (F(-1, 4), F(3, 4)),
    (1, 1): (F(-3, 4), F(1, 4)),
    (0, 2): (F(-11, 12), F(13, 12)),
    (1, 2): (F(-17, 12), F(7, 12)),
}


def _report(num, elapsed, budget, detail):
    print(f"ACCEPTANCE {num}: PASS ({elapsed:.2f}s < {budget}s) {detail}")
    assert elapsed < budget


def test_criterion_1_trefoil_line_model():
    start = time.time()
    line = ar_line([2, 3])
    assert (line.lo, line.hi) == (0, 2)
    assert [(line.h1(n), line.h2(n)) for n in line.support()] == \
        [(0, -2), (-2, -2), (-2, 0)]
    assert (line.alpha, line.gamma) == (6, -5)
    for n in range(-6, 9):
        assert line.gamma_map(n) == n - 6
        assert line.j_map(n) == 2 - n
    _report(1, time.time() - start, 1,
            "trefoil line: support [0,2], heights ((0,-2),(-2,-2),(-2,0)), "
            "alpha=6 gamma=-5, Gamma(n)=n-6, J(n)=2-n")


def test_criterion_2_sigma237_fiber():
    start = time.time()
    line = ar_line([2, 3, 7])
    assert (line.alpha, line.gamma) == (42, 1)
    assert (line.lo, line.hi) == (0, 44)
    simp = simplify_line(line)
    assert simp.dichotomy_ok
    got = [(n, int(a), int(b)) for n, a, b in simp.extrema]
    assert got == SIGMA237_EXTREMA
    assert (44, -44, 0) in got and (38, -32, 0) in got
    top, rank = top_alexander_rank(line.to_complex())
    assert (top, rank) == (22, 1)
    _report(2, time.time() - start, 5,
            "Sigma(2,3,7) fiber: 23-row joint-extrema table, genus 22, "
            "rank 1 at the top")


@pytest.mark.xfail(
    strict=True,
    reason="a circulated version of this table lists row 22 as (-12, -2); "
    "the skew involution J(n) = 44 - n fixes n = 22 and swaps the two "
    "heights, forcing h1(22) = h2(22), and both tau engines give "
    "(-12, -12), so the unequal variant cannot be correct")
def test_criterion_2_row_22_unequal_heights_rejected():
    line = ar_line([2, 3, 7])
    assert (line.h1(22), line.h2(22)) == (-12, -2)


def test_criterion_3_tau_cross_validation():
    start = time.time()
    for p in ([2, 3], [2, 3, 5], [2, 3, 7]):
        tau = calibrated_tau(p)
        alpha = tau.alpha
        oracle = tau_lattice_oracle(brieskorn_fiber_graph(p), 2 * alpha)
        assert oracle == [tau(n) for n in range(2 * alpha + 1)]
        for n in range(2 * alpha + 1):
            assert tau.delta(n + alpha) == tau.delta(n) + 1
    _report(3, time.time() - start, 30,
            "closed-form tau == lattice oracle on (2,3), (2,3,5), (2,3,7) "
            "over [0, 2 alpha]; step relation holds")


@pytest.mark.parametrize("n", [-7, -8, -9])
def test_criterion_4_surgery_verification(n):
    start = time.time()
    graph = parse_graph(TREFOIL_TEXT)
    report = verify_surgery(graph, n)
    assert report.passed, report.summary()
    assert report.heights_ok and report.partition_ok and report.boundaries_ok
    assert report.d_equal and report.ranks_equal
    _report(4, time.time() - start, 60,
            f"verify_surgery(trefoil, {n}): F/F' heights, partition, "
            "d-invariants and ranks all agree")


def test_criterion_5_iterated_example():
    start = time.time()
    X = family_from_line(ar_line([2, 3]))
    A = surgered_family(X, framing=-8)
    assert A.meta["sigma_sq"] == -2
    B = surgered_family(X, framing=-9)
    assert B.meta["sigma_sq"] == -3
    Z = tensor_families(A, B)
    assert len(Z.spinc) == 6
    got = {(int(lab[0][2]), int(lab[1][2])): alexander_range(Z.complexes[lab])
           for lab in Z.spinc}
    assert got == ITERATED_TABLE
    # graph framing -1 on the connect sum converts to -1 + 1/2 + 1/3 = -1/6
    assert Z.sigma0_sq == F(-5, 6)
    final = surgered_family(Z, framing=-1)
    assert final.meta["sigma_sq"] == F(-1, 6)
    assert len(final.spinc) == 1
    cx = final.complexes[final.spinc[0]]
    cx.validate()
    top, rank = top_alexander_rank(cx)
    assert top == 6 and rank >= 1
    _report(5, time.time() - start, 300,
            "iterated pipeline: 6 Spin^c classes with the exact Alexander "
            "min/max table; final complex has top Alexander grading 6")


def test_criterion_6_grading_micro_checks():
    start = time.time()
    assert grading_shift(0, -2) == F(-1, 4)
    assert grading_shift(-3, -3) == F(-1, 2)
    rng = random.Random(20260810)
    for _ in range(1000):
        i = F(rng.randint(-60, 60), rng.randint(1, 12))
        s = F(-rng.randint(1, 40), rng.randint(1, 12))
        assert grading_shift(i, s) + 2 * i == grading_shift(i + s, s)
        assert grading_shift(i, s) - grading_shift(-i, s) == -2 * i
    _report(6, time.time() - start, 1,
            "grading shift values -1/4 and -1/2; +2i shift and -2i "
            "antisymmetry on 1000 random rationals")


def test_criterion_7_property_suite():
    start = time.time()
    checked = []

    def check_complex(cx, name):
        cx.validate()  # boundary^2 = 0, monotone filtration, coset constancy
        checked.append(name)

    # built complexes across the codebase
    trefoil = parse_graph(TREFOIL_TEXT)
    graph_fam = family_from_graph(trefoil, involutions=True)
    for lab in graph_fam.spinc:
        check_complex(graph_fam.complexes[lab], f"graph[{lab}]")
    line_fam = family_from_line(ar_line([2, 3]))
    pts = family_from_points(brieskorn_core_graph([2, 3])[0])
    fiber_pts = family_from_points(brieskorn_core_graph([2, 3, 7])[0])
    fiber = surgered_family(fiber_pts, framing=-1)
    for fam in (line_fam, pts, fiber):
        fam.validate()
        for lab in fam.spinc:
            check_complex(fam.complexes[lab], f"{fam.name}[{lab!r}]")

    # strict involutive identities on the transported maps
    lab = fiber.spinc[0]
    J = fiber.invol_J[lab]
    I = fiber.invol_I[lab]
    G = fiber.gamma[lab]
    for cell in fiber.complexes[lab].cells:
        j = J.mapping[cell]
        assert j is not None and J.mapping[j] == cell       # J sigma(J) = id
        assert (None if j is None else G.mapping[j]) == I.mapping[cell]
    i_sq_fixed = sum(1 for c in fiber.complexes[lab].cells
                     if I.mapping[c] is not None
                     and I.mapping[I.mapping[c]] == c)
    assert i_sq_fixed >= 5  # I^2 = id wherever I avoids the folded rim

    # total homology rank one per certified Spin^c component
    for fam in (graph_fam, line_fam, pts):
        for lab in fam.spinc:
            assert total_homology(fam.complexes[lab]) == {0: 1}
    for out_framing in (-8, -9):
        out = surgered_family(line_fam, framing=out_framing)
        for lab in out.spinc:
            assert total_homology(out.complexes[lab]) == {0: 1}

    # line simplification is homology-invariant
    fl = ar_line([2, 3, 7])
    simp = simplify_line(fl)
    assert assoc_graded_homology(fl.to_complex()) == \
        assoc_graded_homology(simp.line.to_complex())

    # window enlargement stability
    for framing in (-8, -9):
        base = surgered_family(line_fam, framing=framing, slack=0)
        wide = surgered_family(line_fam, framing=framing, slack=1)
        for lab in base.spinc:
            assert d_invariant(p1(base.complexes[lab])) == \
                d_invariant(p1(wide.complexes[lab]))
            assert assoc_graded_homology(p1(base.complexes[lab])) == \
                assoc_graded_homology(p1(wide.complexes[lab]))

    _report(7, time.time() - start, 120,
            f"property suite over {len(checked)} built complexes: d^2=0, "
            "monotonicity, cosets, involutive identities, rank-one totals, "
            "simplification invariance, window stability")
