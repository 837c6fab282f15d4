"""Certified truncation, subcontractibility, and the almost-rational line engine.

Box certificates witness that heights decrease monotonically outside a finite
region, so the finite complex is a faithful (deformation-retract) model.  The
almost-rational machinery computes the filtered-line models of Brieskorn
regular fibers two independent ways: a closed form for the tau function and a
lattice chi-minimization oracle; the closed form is always calibrated against
the oracle before use.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .complexes import FilteredCubeComplex
from .convex import LatticeQuadratic
from .grading import KnotSpinCSystem, SpinCSystem, canonical_char, grf_value
from .plumbing import (GraphError, PlumbingGraph, is_negative_definite,
                       minimal_cycles_per_component)


class CertificateError(GraphError):
    pass


class CalibrationError(GraphError):
    pass


# ---- box certificates ----------------------------------------------------


@dataclass(frozen=True)
class BoxCertificate:
    box: tuple              # (lo, hi) integer vectors in k_t-anchored coordinates
    down_sequence: tuple    # vertex indices, one full minimal-cycle loop
    up_sequence: tuple
    down_pad: int
    up_pad: int


def _loop_order(matrix, zmin, caps):
    """Order the multiset of Z_min vertices so every prefix keeps (x, v) <= cap.

    Depth-first search with memoized dead states; returns None when no
    ordering exists.
    """
    n = len(zmin)
    total = tuple(zmin)
    dead = set()

    def pairing(x, v):
        return sum(matrix[v][j] * x[j] for j in range(n))

    def rec(x, order):
        if x == total:
            return order
        if x in dead:
            return None
        for v in range(n):
            if x[v] < total[v] and pairing(x, v) <= caps[v]:
                nxt = tuple(xi + (1 if i == v else 0) for i, xi in enumerate(x))
                got = rec(nxt, order + [v])
                if got is not None:
                    return got
        dead.add(x)
        return None

    return rec(tuple([0] * n), [])


def certify_box(graph, t, radius=4, system=None):
    """Certify a finite box [k_t - 2PD(w Z), k_t + 2PD(u Z)] for Spin^c t.

    Verifies one full minimal-cycle loop of monotone-height inequalities at
    each end (enough: later loops only improve).  For graphs with a
    distinguished vertex the upward loop also respects h_V.  Raises
    CertificateError when no pad up to `radius` works.
    """
    knot = graph.unweighted is not None
    core = graph.core() if knot else graph
    if not is_negative_definite(core):
        raise CertificateError("certificates require a negative definite graph")
    if system is None:
        system = KnotSpinCSystem(graph) if knot else SpinCSystem(graph)
    matrix = system.matrix
    n = len(matrix)
    zmin_map = minimal_cycles_per_component(core)
    zmin = [zmin_map[v] for v in core.weighted_vertices]
    zpair = [sum(matrix[v][j] * zmin[j] for j in range(n)) for v in range(n)]
    inc = graph.incidence_of_unweighted() if knot else [0] * n
    kt = t.rep
    w2 = [core.weights[v] for v in core.weighted_vertices]

    down_seq = down_pad = None
    for w in range(radius + 1):
        caps = [Fraction(kt[v] - w2[v], 2) - w * zpair[v] for v in range(n)]
        seq = _loop_order(matrix, zmin, caps)
        if seq is not None:
            down_seq, down_pad = seq, w
            break
    if down_seq is None:
        raise CertificateError(f"no downward certificate within radius {radius}")

    up_seq = up_pad = None
    for u in range(radius + 1):
        caps = [Fraction(-(kt[v] + w2[v]), 2) - u * zpair[v] - inc[v] for v in range(n)]
        seq = _loop_order(matrix, zmin, caps)
        if seq is not None:
            up_seq, up_pad = seq, u
            break
    if up_seq is None:
        raise CertificateError(f"no upward certificate within radius {radius}")

    lo = tuple(-down_pad * z for z in zmin)
    hi = tuple(up_pad * z for z in zmin)
    return BoxCertificate(box=(lo, hi), down_sequence=tuple(down_seq),
                          up_sequence=tuple(up_seq), down_pad=down_pad, up_pad=up_pad)


def is_subcontractible_knot(graph_v0):
    """True iff every Spin^c admits the zero-pad certificate (both heights).

    This is the monotone-sequence test for knots with negative L-space
    surgeries: the whole knot complex contracts to one doubly filtered point.
    """
    try:
        system = KnotSpinCSystem(graph_v0)
    except GraphError:
        return False
    for t in system.orbits:
        try:
            cert = certify_box(graph_v0, t, radius=0, system=system)
        except CertificateError:
            return False
        if cert.down_pad != 0 or cert.up_pad != 0:
            return False
    return True


# ---- Brieskorn data -------------------------------------------------------


def alpha_gamma(p):
    """alpha = prod p_i, gamma = alpha (m - 2 - sum 1/p_i), both exact ints."""
    p = list(p)
    if any(x < 2 for x in p):
        raise GraphError("multiplicities must be >= 2")
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if math.gcd(p[i], p[j]) != 1:
                raise GraphError(f"multiplicities {p[i]}, {p[j]} are not coprime")
    alpha = math.prod(p)
    gamma = alpha * (len(p) - 2) - sum(alpha // x for x in p)
    return alpha, gamma


def seifert_normal_form(p):
    """(e0, q) with e0*alpha + sum q_i * alpha/p_i = -1 and 1 <= q_i <= p_i - 1."""
    alpha, _ = alpha_gamma(p)
    q = []
    for pi in p:
        a = (alpha // pi) % pi
        qi = (-pow(a, -1, pi)) % pi
        q.append(qi if qi else pi)
    rem = -1 - sum(qi * (alpha // pi) for qi, pi in zip(q, p))
    if rem % alpha != 0:
        raise GraphError("Seifert normal form solve failed")
    return rem // alpha, q


def _neg_continued_fraction(p, q):
    """p/q = b1 - 1/(b2 - 1/(...)), all b_i >= 2."""
    out = []
    while q:
        b = -((-p) // q)
        out.append(b)
        p, q = q, b * q - p
    return out


def brieskorn_core_graph(p):
    """The lens-sum presentation: continued-fraction arms, unweighted center.

    Filling the center with e0 yields the standard star plumbing of the
    Brieskorn sphere with multiplicities p.
    """
    e0, q = seifert_normal_form(p)
    vertices = []
    weights = {}
    edges = set()
    for idx, (pi, qi) in enumerate(zip(p, q)):
        prev = "c"
        for j, b in enumerate(_neg_continued_fraction(pi, qi)):
            vid = f"a{idx}_{j}"
            vertices.append(vid)
            weights[vid] = -b
            edges.add(frozenset((prev, vid)))
            prev = vid
    vertices.append("c")
    graph = PlumbingGraph(vertices=tuple(vertices), weights=weights,
                          edges=frozenset(edges), unweighted="c")
    return graph, e0


def brieskorn_fiber_graph(p):
    """Regular-fiber presentation: the full star with u0 at the center."""
    core, e0 = brieskorn_core_graph(p)
    return core.fill(e0).attach_unweighted("u0", "c")


# ---- tau: closed form and lattice oracle ----------------------------------


class TauFunction:
    """tau for Sigma(p1..pm): tau(0)=0 and
    tau(n+1)-tau(n) = 1 - e0*n - sum ceil(n q_i / p_i), memoized on Z."""

    def __init__(self, p):
        self.p = tuple(p)
        self.alpha, self.gamma = alpha_gamma(p)
        self.e0, self.q = seifert_normal_form(p)
        self._tau = {0: 0}

    def delta(self, n):
        return 1 - self.e0 * n - sum(-((-n * qi) // pi) for qi, pi in zip(self.q, self.p))

    def __call__(self, n):
        tau = self._tau
        if n not in tau:
            if n > 0:
                m = max(k for k in tau if k <= n)
                for j in range(m, n):
                    tau[j + 1] = tau[j] + self.delta(j)
            else:
                m = min(k for k in tau if k >= n)
                for j in range(m - 1, n - 1, -1):
                    tau[j] = tau[j + 1] - self.delta(j)
        return tau[n]


def tau_lattice_oracle(graph_v0, n_max, n_min=0):
    """tau(n) as the exact minimum of chi_{k_t} over the slice x_center = n.

    `graph_v0` is the star presentation of the fiber: weighted star plus an
    unweighted vertex attached to the central vertex.  Independent of the
    closed form: pure convex minimization over the lattice.
    """
    if graph_v0.unweighted is None:
        raise GraphError("oracle needs the fiber presentation (unweighted vertex)")
    anchors = graph_v0.neighbors(graph_v0.unweighted)
    if len(anchors) != 1:
        raise GraphError("fiber presentation must attach to a single vertex")
    core = graph_v0.core()
    center = core.weighted_vertices.index(anchors[0])
    system = SpinCSystem(core)
    if len(system) != 1:
        raise GraphError("oracle expects an integral homology sphere star")
    kt = system.orbits[0].rep
    quad = LatticeQuadratic(system.matrix)
    out = []
    for n in range(n_min, n_max + 1):
        two_chi, _ = quad.minimize(kt, fixed={center: n})
        if two_chi % 2 != 0:
            raise GraphError("chi was not an integer; non-characteristic input?")
        out.append(two_chi // 2)
    return out


def calibrated_tau(p, check_range=None):
    """Closed-form tau calibrated against the lattice oracle (mandatory)."""
    tau = TauFunction(p)
    if check_range is None:
        check_range = tau.alpha + 2
    fiber = brieskorn_fiber_graph(p)
    oracle = tau_lattice_oracle(fiber, check_range)
    for n in range(check_range + 1):
        if tau(n) != oracle[n]:
            raise CalibrationError(
                f"tau closed form disagrees with lattice oracle at n={n}: "
                f"{tau(n)} vs {oracle[n]} (p={p})")
    return tau


# ---- the filtered line ----------------------------------------------------


@dataclass
class FilteredLine:
    """Reduced line model: vertex heights on [lo, hi], edges take endpoint minima.

    Index maps act affinely: I(n) = i_center - n, J(n) = j_center - n,
    Gamma(n) = n + gamma_step.  On a finite support I and Gamma generally land
    outside and are applied through the support retraction.
    """

    lo: int
    hi: int
    h1map: dict
    h2map: dict
    i_center: int = None
    j_center: int = None
    gamma_step: int = None
    alpha: int = None
    gamma: int = None
    base: Fraction = Fraction(0)
    meta: dict = field(default_factory=dict)

    def support(self):
        return range(self.lo, self.hi + 1)

    def h1(self, n):
        return self.h1map[n]

    def h2(self, n):
        return self.h2map[n]

    def i_map(self, n):
        return self.i_center - n

    def j_map(self, n):
        return self.j_center - n

    def gamma_map(self, n):
        return n + self.gamma_step

    def to_complex(self, spinc="line"):
        cells = {}
        boundary = {}
        for n in self.support():
            cells[("q", (n,), frozenset())] = (0, self.h1map[n], self.h2map[n])
            boundary[("q", (n,), frozenset())] = frozenset()
        for n in range(self.lo, self.hi):
            key = ("q", (n,), frozenset({0}))
            cells[key] = (1, min(self.h1map[n], self.h1map[n + 1]),
                          min(self.h2map[n], self.h2map[n + 1]))
            boundary[key] = frozenset({("q", (n,), frozenset()),
                                       ("q", (n + 1,), frozenset())})
        return FilteredCubeComplex(
            cells=cells, boundary=boundary, spinc=spinc,
            coset1=self.h1map[self.lo] % 2, coset2=self.h2map[self.lo] % 2,
            meta={"line": True, "lo": self.lo, "hi": self.hi})

    def to_json_dict(self):
        return {
            "support": [self.lo, self.hi],
            "h1": [str(self.h1map[n]) for n in self.support()],
            "h2": [str(self.h2map[n]) for n in self.support()],
            "alpha": self.alpha,
            "gamma": self.gamma,
            "maps": {
                "I": f"n -> {self.i_center} - n",
                "J": f"n -> {self.j_center} - n",
                "Gamma": f"n -> n - {-self.gamma_step}",
            },
            "meta": {k: str(v) for k, v in self.meta.items()},
        }


def ar_line(p, tau=None):
    """Filtered line of the regular fiber of Sigma(p1..pm).

    h1(n) = h_U(k_t) - 2 tau(n) on [0, 1 + gamma + alpha], h2(n) = h1(n - alpha),
    I(n) = 1 + gamma - n, J(n) = 1 + gamma + alpha - n, Gamma(n) = n - alpha.
    """
    tau = tau or calibrated_tau(p)
    alpha, gamma = tau.alpha, tau.gamma
    fiber = brieskorn_fiber_graph(p)
    core = fiber.core()
    base = grf_value(core, canonical_char(core))
    lo, hi = 0, 1 + gamma + alpha
    if hi < lo:
        raise GraphError("empty support: 1 + gamma + alpha < 0")
    h1 = {n: base - 2 * tau(n) for n in range(lo, hi + 1)}
    h2 = {n: base - 2 * tau(n - alpha) for n in range(lo, hi + 1)}
    return FilteredLine(
        lo=lo, hi=hi, h1map=h1, h2map=h2,
        i_center=1 + gamma, j_center=1 + gamma + alpha, gamma_step=-alpha,
        alpha=alpha, gamma=gamma, base=base,
        meta={"p": tuple(p), "support_caveat": (1 + gamma) <= 0})


# ---- line simplification ---------------------------------------------------


@dataclass
class SimplifiedLine:
    extrema: list          # [(n, h1, h2)] joint local extrema, in order
    line: FilteredLine     # reduced line on a relabeled support
    dichotomy_ok: bool


def line_step_dichotomy(line):
    """Check the step coupling that makes extrema-only reduction safe.

    Every step moves the two heights in sync: h2 step = h1 step + 2, with h1
    stepping by an even amount in [-4, 2].  (The two heights never move in
    strictly opposite directions.)
    """
    for n in range(line.lo, line.hi):
        d1 = line.h1map[n + 1] - line.h1map[n]
        d2 = line.h2map[n + 1] - line.h2map[n]
        if d1 not in (-4, -2, 0, 2) or d2 != d1 + 2:
            return False
    return True


def joint_extrema(line):
    """Vertices that are (weak) local extrema of both heights at once."""
    out = []
    for n in line.support():
        left = n - 1 if n > line.lo else None
        right = n + 1 if n < line.hi else None

        def cmp(h):
            vals = []
            if left is not None:
                vals.append(h[n] - h[left])
            if right is not None:
                vals.append(h[n] - h[right])
            return vals

        c1, c2 = cmp(line.h1map), cmp(line.h2map)
        is_max = all(v >= 0 for v in c1) and all(v >= 0 for v in c2)
        is_min = all(v <= 0 for v in c1) and all(v <= 0 for v in c2)
        if is_max or is_min:
            out.append((n, line.h1map[n], line.h2map[n]))
    return out


def simplify_line(line):
    """Keep only joint local extrema; the reduced line is homology-equivalent.

    When the step dichotomy fails the input is returned unchanged with the
    flag down.
    """
    if not line_step_dichotomy(line):
        return SimplifiedLine(extrema=[(n, line.h1map[n], line.h2map[n])
                                       for n in line.support()],
                              line=line, dichotomy_ok=False)
    ext = joint_extrema(line)
    h1 = {i: e[1] for i, e in enumerate(ext)}
    h2 = {i: e[2] for i, e in enumerate(ext)}
    reduced = FilteredLine(lo=0, hi=len(ext) - 1, h1map=h1, h2map=h2,
                           i_center=None, j_center=None, gamma_step=None,
                           alpha=line.alpha, gamma=line.gamma, base=line.base,
                           meta={"reduced_from": (line.lo, line.hi)})
    return SimplifiedLine(extrema=ext, line=reduced, dichotomy_ok=True)
