"""Characteristic vectors, Spin^c orbits, and exact grading arithmetic.

Char vectors are tuples of ints aligned with graph.weighted_vertices.  A
Spin^c structure on the boundary 3-manifold is an orbit of characteristic
vectors under translation by twice the intersection lattice.  The orbit's
distinguished representative k_t is its height maximizer (equivalently the
chi-minimizer), computed exactly; every height and shift below is rational.
"""

from dataclasses import dataclass
from fractions import Fraction

from .convex import LatticeQuadratic
from .linalg import bareiss_det, invert_exact, mat_vec, smith_normal_form
from .plumbing import GraphError, PlumbingGraph, is_negative_definite, sigma0


def canonical_char(graph):
    """K_con, with value -v^2 - 2 on every weighted vertex."""
    return tuple(-graph.weights[v] - 2 for v in graph.weighted_vertices)


def is_characteristic(graph, k):
    return all((kv - graph.weights[v]) % 2 == 0
               for kv, v in zip(k, graph.weighted_vertices))


def char_square(graph, k, inverse=None):
    """K^2 = K^T M^{-1} K, exact rational."""
    if not k:
        return Fraction(0)
    if inverse is None:
        inverse = invert_exact(graph.intersection_matrix())
    w = mat_vec(inverse, k)
    return sum((Fraction(a) * b for a, b in zip(k, w)), Fraction(0))


def grf_value(graph, k, inverse=None):
    """Height (K^2 + |V|) / 4 of a characteristic vector."""
    return (char_square(graph, k, inverse) + len(k)) / 4


@dataclass(frozen=True)
class SpinC:
    orbit_id: int
    rep: tuple  # k_t


class SpinCSystem:
    """All Spin^c orbits of Y_G plus the orbit-level actions the artifact needs.

    Orbits are keyed by Smith-form residues of the even sublattice, so the
    count is |det| with no brute-force box; k_t per orbit comes from exact
    chi-minimization over the lattice.
    """

    def __init__(self, graph):
        if graph.unweighted is not None:
            graph = graph.core()
        if not is_negative_definite(graph):
            raise GraphError("Spin^c enumeration requires a negative definite graph")
        self.graph = graph
        self.matrix = graph.intersection_matrix()
        self.inverse = invert_exact(self.matrix) if self.matrix else []
        self.quad = LatticeQuadratic(self.matrix)
        self._weights = [graph.weights[v] for v in graph.weighted_vertices]
        self._enumerate()

    # residue key identifying the orbit of a characteristic vector
    def _orbit_key(self, k):
        w = self._weights
        y = []
        for kv, wv in zip(k, w):
            if (kv - wv) % 2 != 0:
                raise GraphError(f"vector {tuple(k)} is not characteristic")
            y.append((kv - wv) // 2)
        uy = mat_vec(self._u, y)
        return tuple(int(v) % d for v, d in zip(uy, self._d))

    def _enumerate(self):
        n = len(self.matrix)
        if n == 0:
            self._d, self._u = [], []
            self.orbits = [SpinC(0, ())]
            self._by_key = {(): self.orbits[0]}
            return
        d, u, _ = smith_normal_form(self.matrix)
        self._d, self._u = [abs(x) for x in d], u
        uinv = [[int(x) for x in row] for row in invert_exact(u)]
        det = abs(bareiss_det(self.matrix))

        reps = {}
        def rec(i, residue):
            if i == n:
                y = mat_vec(uinv, residue)
                k = tuple(w + 2 * int(yv) for w, yv in zip(self._weights, y))
                reps[self._orbit_key(k)] = k
                return
            for r in range(self._d[i]):
                rec(i + 1, residue + [r])
        rec(0, [])
        if len(reps) != det:
            raise GraphError(f"orbit enumeration found {len(reps)} classes, expected {det}")

        kts = {}
        for key, k in reps.items():
            kts[key] = self._descend(k)
        ordered = sorted(kts.items(), key=lambda item: item[1])
        self.orbits = [SpinC(i, kt) for i, (_, kt) in enumerate(ordered)]
        self._by_key = {key: self.orbits[i] for i, (key, _) in enumerate(ordered)}

    def _descend(self, k):
        """k_t of k's orbit: the chi-minimizing translate with k(v) <= -2 - v^2.

        The minimizer can be tied (K and -K share a square); the greedy
        violation fix below walks the tie set to the unique representative on
        the canonical side.  Each fix strictly decreases sum(k(v) c_v) for a
        positive vector c with M c < 0, so it terminates.
        """
        _, x = self.quad.minimize(k)
        shift = mat_vec(self.matrix, x)
        k = [kv + 2 * s for kv, s in zip(k, shift)]
        bound = [-2 - w for w in self._weights]
        n = len(k)
        guard = 0
        moved = True
        while moved:
            moved = False
            for i in range(n):
                if k[i] > bound[i]:
                    for j in range(n):
                        k[j] += 2 * self.matrix[i][j]
                    moved = True
            guard += 1
            if guard > 10_000:
                raise GraphError("k_t descent failed to converge")
        return tuple(k)

    def __len__(self):
        return len(self.orbits)

    def orbit_of(self, k):
        return self._by_key[self._orbit_key(tuple(k))]

    def conjugate(self, t):
        """Orbit of -k_t."""
        return self.orbit_of(tuple(-x for x in t.rep))

    def translate(self, t, pairing_row):
        """Orbit of k_t + 2 * pairing_row (action of a relative homology class)."""
        return self.orbit_of(tuple(k + 2 * p for k, p in zip(t.rep, pairing_row)))

    def grf(self, t):
        return grf_value(self.graph, t.rep, self.inverse)

    def grf_coset(self, t):
        return self.grf(t) % 2


def descend_to_kt(graph, k):
    """Distinguished representative of k's orbit (standalone convenience)."""
    system = SpinCSystem(graph)
    return system._descend(list(k))


class KnotSpinCSystem(SpinCSystem):
    """Spin^c bookkeeping for a graph with a distinguished vertex v0.

    Adds the [K]-translation (action of the knot class), the h_V-side
    translate, and Alexander cosets.
    """

    def __init__(self, graph_v0):
        if graph_v0.unweighted is None:
            raise GraphError("knot Spin^c system needs a distinguished vertex")
        self.graph_v0 = graph_v0
        super().__init__(graph_v0.core())
        self.incidence = graph_v0.incidence_of_unweighted()

    def plus_k(self, t):
        """Orbit of t + [K]: translate k_t by twice the pairing row of v0."""
        return self.translate(t, self.incidence)

    def translate_char_by_v0(self, k):
        """The char vector K + 2 PD(v0) (no descent); used for h_V heights."""
        return tuple(x + 2 * p for x, p in zip(k, self.incidence))

    def alexander_coset(self, t):
        """Representative mod 1 of the coset A(Y, K, t) of allowed indices."""
        return ((self.grf(t) - self.grf(self.plus_k(t))) / 2) % 1


# ---- grading shifts and index maps --------------------------------------


def grading_shift(i, sigma_sq):
    """Degree shift ((2i - S)^2 + S) / (4S) attached to index i, S = Sigma^2 < 0."""
    i = Fraction(i)
    s = Fraction(sigma_sq)
    if s == 0:
        raise ValueError("grading shift undefined for Sigma^2 = 0")
    return ((2 * i - s) ** 2 + s) / (4 * s)


def a_hat(filled_graph, knot_vertex, L):
    """Affine Alexander index of a char vector on the filled graph.

    A_hat(L) = (L(Sigma) + Sigma^2)/2 with Sigma = v0 - Sigma_0 evaluated
    rationally; L is indexed by the filled graph's weighted vertices.
    """
    vs = filled_graph.weighted_vertices
    if knot_vertex not in vs:
        raise GraphError(f"{knot_vertex!r} is not a vertex of the filled graph")
    i0 = vs.index(knot_vertex)
    pruned = _without_vertex(filled_graph, knot_vertex)
    s0 = sigma0(pruned)
    rest = [L[j] for j, v in enumerate(vs) if v != knot_vertex]
    l_sigma0 = sum((Fraction(a) * b for a, b in zip(rest, s0)), Fraction(0))
    inc = pruned.incidence_of_unweighted() if s0 else []
    s0_sq = sum((Fraction(a) * b for a, b in zip(inc, s0)), Fraction(0))
    sigma_sq = Fraction(filled_graph.weights[knot_vertex]) - s0_sq
    return (Fraction(L[i0]) - l_sigma0 + sigma_sq) / 2


def _without_vertex(graph, v):
    """Re-mark v as the distinguished vertex (weight dropped, edges kept)."""
    keep = tuple(x for x in graph.vertices if x != v)
    return PlumbingGraph(
        vertices=keep + (v,),
        weights={x: w for x, w in graph.weights.items() if x != v},
        edges=graph.edges,
        unweighted=v,
    )


# ---- Spin^c structures on the surgered manifold --------------------------


@dataclass(frozen=True)
class SurgerySpinC:
    base: SpinC
    i: Fraction
    sigma_sq: Fraction


def conjugate_index(s, system):
    """Conjugation on (t, i): maps to (conj t, Sigma^2 - i)."""
    return SurgerySpinC(base=system.conjugate(s.base),
                        i=s.sigma_sq - s.i,
                        sigma_sq=s.sigma_sq)


def translated_conjugate_index(s, system):
    """Core-translated conjugation: (t, i) -> (conj(t + [K]), -i)."""
    return SurgerySpinC(base=system.conjugate(system.plus_k(s.base)),
                        i=-s.i,
                        sigma_sq=s.sigma_sq)


def spinc_orbits(graph):
    """All Spin^c orbits of the (core of the) graph, with k_t representatives."""
    return SpinCSystem(graph).orbits
