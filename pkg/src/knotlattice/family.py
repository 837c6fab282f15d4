"""Knot complex families: one doubly filtered complex per Spin^c structure,
with the flip map and (when available) the involutive cell maps.

This is the common currency of the surgery pipeline: graph presentations,
subcontractible point models, reduced filtered lines, tensor products, and
surgery outputs all produce the same structure, so surgeries compose.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .complexes import CellMap, ComplexError, build_knot_complex
from .grading import KnotSpinCSystem, grf_value
from .homology import alexander_range
from .linalg import solve_exact
from .plumbing import GraphError
from .reduction import certify_box, is_subcontractible_knot


@dataclass
class KnotComplexFamily:
    spinc: tuple                  # hashable labels, sorted
    complexes: dict               # label -> FilteredCubeComplex (doubly filtered)
    gamma: dict                   # label -> CellMap into complexes[plus_k[label]]
    plus_k: dict                  # label -> label  (action of the knot class)
    conj: dict                    # label -> label  (Spin^c conjugation)
    grf_coset: dict               # label -> Fraction mod 2
    alex_coset: dict              # label -> Fraction mod 1
    sigma0_sq: Fraction           # self-pairing of the dual class (framing data)
    invol_I: dict = None          # label -> CellMap into complexes[conj[label]]
    invol_J: dict = None          # label -> CellMap into complexes[conj[plus_k[label]]]
    strict_involutions: bool = False
    name: str = "family"
    meta: dict = field(default_factory=dict)

    def alexander_ranges(self):
        return {t: alexander_range(self.complexes[t]) for t in self.spinc}

    def global_alexander_bounds(self):
        rs = self.alexander_ranges().values()
        return min(a for a, _ in rs), max(b for _, b in rs)

    def validate(self):
        for t in self.spinc:
            self.complexes[t].validate()
            errs = self.gamma[t].verify()
            if errs:
                raise ComplexError(f"flip map invalid on {t!r}: {errs[:3]}")
        for maps in (self.invol_I, self.invol_J):
            if maps:
                for t, cm in maps.items():
                    errs = cm.verify()
                    if errs:
                        raise ComplexError(f"involution invalid on {t!r}: {errs[:3]}")
        return self

    def restrict(self, labels):
        """Sub-family on a subset of Spin^c labels (reporting aid)."""
        labels = tuple(sorted(labels, key=repr))
        return KnotComplexFamily(
            spinc=labels,
            complexes={t: self.complexes[t] for t in labels},
            gamma={t: self.gamma[t] for t in labels if self.plus_k[t] in labels},
            plus_k={t: self.plus_k[t] for t in labels},
            conj={t: self.conj[t] for t in labels},
            grf_coset={t: self.grf_coset[t] for t in labels},
            alex_coset={t: self.alex_coset[t] for t in labels},
            sigma0_sq=self.sigma0_sq,
            strict_involutions=False,
            name=f"{self.name}|restricted",
        )


# ---- graph-presented families --------------------------------------------


def _clamp_cube(x, e, lo, hi):
    """Project a cube onto a box; returns the clamped cell or None (degenerate)."""
    base = []
    for v, xv in enumerate(x):
        if v in e:
            l, h = max(xv, lo[v]), min(xv + 1, hi[v])
            if l >= h:
                return None
            base.append(l)
        else:
            base.append(min(max(xv, lo[v]), hi[v]))
    return ("q", tuple(base), e)


def _integer_vector(frac_vec, context):
    out = []
    for v in frac_vec:
        f = Fraction(v)
        if f.denominator != 1:
            raise GraphError(f"non-integral translation in {context}")
        out.append(int(f))
    return out


def _affine_cell_map(src_cx, dst_cx, delta, reflect, kind):
    """Cell map [x, E] -> [delta - x - 1_E, E] (reflect) or [x + delta, E],
    clamped into the target box."""
    lo, hi = dst_cx.meta["box"]
    mapping = {}
    clamped = False
    for key in src_cx.cells:
        _, x, e = key
        if reflect:
            target = tuple(d - xv - (1 if v in e else 0)
                           for v, (d, xv) in enumerate(zip(delta, x)))
        else:
            target = tuple(xv + d for xv, d in zip(x, delta))
        img = _clamp_cube(target, e, lo, hi)
        if img != ("q", target, e):
            clamped = True
        mapping[key] = img
    return CellMap(src=src_cx, dst=dst_cx, mapping=mapping, kind=kind,
                   strict=not clamped)


def family_from_graph(graph_v0, radius=4, involutions=True, system=None):
    """Knot complex family of a plumbing presentation on certified boxes.

    The flip map (and the involutions, when requested) are the honest cell
    formulas composed with the box retraction; each map is verified to be a
    filtered chain map at build time.
    """
    system = system or KnotSpinCSystem(graph_v0)
    matrix = system.matrix
    inc = system.incidence
    labels = tuple(t.orbit_id for t in system.orbits)
    orbit = {t.orbit_id: t for t in system.orbits}

    complexes = {}
    for lab in labels:
        cert = certify_box(graph_v0, orbit[lab], radius=radius, system=system)
        cx = build_knot_complex(graph_v0, orbit[lab], cert.box, system)
        cx.meta["certificate"] = cert
        complexes[lab] = cx

    plus_k = {lab: system.plus_k(orbit[lab]).orbit_id for lab in labels}
    conj = {lab: system.conjugate(orbit[lab]).orbit_id for lab in labels}

    def offset(k_from, k_to, extra):
        """x-solve of k_from + extra == k_to + 2 M x."""
        if not matrix:
            return []
        rhs = [Fraction(a + b - c, 2) for a, b, c in zip(k_from, extra, k_to)]
        return _integer_vector(solve_exact(matrix, rhs), "orbit translation")

    gamma = {}
    for lab in labels:
        t, t2 = orbit[lab], orbit[plus_k[lab]]
        delta = offset(t.rep, t2.rep, [2 * p for p in inc])
        gamma[lab] = _affine_cell_map(complexes[lab], complexes[plus_k[lab]],
                                      delta, reflect=False, kind="flip")
        errs = gamma[lab].verify()
        if errs:
            raise ComplexError(
                f"flip map failed verification on Spin^c {lab} "
                f"(enlarge the box radius): {errs[:3]}")

    invol_i = invol_j = None
    strict = False
    if involutions:
        invol_i, invol_j = {}, {}
        for lab in labels:
            t = orbit[lab]
            tbar = orbit[conj[lab]]
            delta_i = offset([-k for k in t.rep], tbar.rep, [0] * len(inc))
            invol_i[lab] = _affine_cell_map(complexes[lab], complexes[conj[lab]],
                                            delta_i, reflect=True, kind="h1")
            tj = orbit[conj[plus_k[lab]]]
            delta_j = offset([-k - 2 * p for k, p in zip(t.rep, inc)], tj.rep,
                             [0] * len(inc))
            invol_j[lab] = _affine_cell_map(complexes[lab],
                                            complexes[conj[plus_k[lab]]],
                                            delta_j, reflect=True, kind="skew")
            for cm, which in ((invol_i[lab], "I"), (invol_j[lab], "J")):
                errs = cm.verify()
                if errs:
                    raise ComplexError(
                        f"involution {which} failed verification on Spin^c {lab}: "
                        f"{errs[:3]}")
        strict = all(invol_i[lab].strict for lab in labels) and \
            all(invol_j[lab].strict for lab in labels)

    from .plumbing import sigma0_squared

    return KnotComplexFamily(
        spinc=labels,
        complexes=complexes,
        gamma=gamma,
        plus_k=plus_k,
        conj=conj,
        grf_coset={lab: system.grf_coset(orbit[lab]) for lab in labels},
        alex_coset={lab: system.alexander_coset(orbit[lab]) for lab in labels},
        sigma0_sq=sigma0_squared(graph_v0),
        invol_I=invol_i,
        invol_J=invol_j,
        strict_involutions=strict,
        name="graph",
        meta={"graph": graph_v0, "system": system},
    )


def family_from_points(graph_v0, system=None):
    """One doubly filtered point per Spin^c (subcontractible presentations).

    All structure maps are bijections of singletons, hence strictly
    involutive.  Raises when the subcontractibility certificate fails.
    """
    if not is_subcontractible_knot(graph_v0):
        raise GraphError("graph is not a subcontractible knot presentation")
    system = system or KnotSpinCSystem(graph_v0)
    labels = tuple(t.orbit_id for t in system.orbits)
    orbit = {t.orbit_id: t for t in system.orbits}
    core = graph_v0.core()
    n = len(core.weighted_vertices)
    zero = (tuple([0] * n), tuple([0] * n))

    complexes = {}
    for lab in labels:
        cx = build_knot_complex(graph_v0, orbit[lab], zero, system)
        complexes[lab] = cx
    plus_k = {lab: system.plus_k(orbit[lab]).orbit_id for lab in labels}
    conj = {lab: system.conjugate(orbit[lab]).orbit_id for lab in labels}

    # consistency: the point's h2 must be the target orbit's top height
    for lab in labels:
        t = orbit[lab]
        h2 = grf_value(core, system.translate_char_by_v0(t.rep), system.inverse)
        if h2 != system.grf(orbit[plus_k[lab]]):
            raise GraphError("point model heights inconsistent; "
                             "presentation is not subcontractible")

    def singleton_map(src_lab, dst_lab, kind):
        src, dst = complexes[src_lab], complexes[dst_lab]
        key_src = next(iter(src.cells))
        key_dst = next(iter(dst.cells))
        return CellMap(src=src, dst=dst, mapping={key_src: key_dst}, kind=kind,
                       strict=True)

    from .plumbing import sigma0_squared

    fam = KnotComplexFamily(
        spinc=labels,
        complexes=complexes,
        gamma={lab: singleton_map(lab, plus_k[lab], "flip") for lab in labels},
        plus_k=plus_k,
        conj=conj,
        grf_coset={lab: system.grf_coset(orbit[lab]) for lab in labels},
        alex_coset={lab: system.alexander_coset(orbit[lab]) for lab in labels},
        sigma0_sq=sigma0_squared(graph_v0),
        invol_I={lab: singleton_map(lab, conj[lab], "h1") for lab in labels},
        invol_J={lab: singleton_map(lab, conj[plus_k[lab]], "skew")
                 for lab in labels},
        strict_involutions=True,
        name="points",
        meta={"graph": graph_v0, "system": system},
    )
    return fam.validate()


def family_from_line(line, sigma0_sq=None, label=0):
    """A filtered line as a one-Spin^c knot family (ambient homology sphere).

    J is the honest reflection of the support; I and Gamma land outside the
    segment and act through the support retraction (clamping), exactly as in
    the worked reduced models.
    """
    cx = line.to_complex(spinc=label)
    lo, hi = line.lo, line.hi

    def line_map(fn, kind):
        mapping = {}
        clamped = False
        for key in cx.cells:
            _, (n,), e = key
            if e:
                a, b = sorted((fn(n), fn(n + 1)))
                ca, cb = max(a, lo), min(b, hi)
                if (ca, cb) != (a, b):
                    clamped = True
                mapping[key] = ("q", (ca,), frozenset({0})) if ca < cb else None
            else:
                c = min(max(fn(n), lo), hi)
                if c != fn(n):
                    clamped = True
                mapping[key] = ("q", (c,), frozenset())
        return CellMap(src=cx, dst=cx, mapping=mapping, kind=kind,
                       strict=not clamped)

    gamma = line_map(line.gamma_map, "flip")
    invol_i = line_map(line.i_map, "h1")
    invol_j = line_map(line.j_map, "skew")
    for cm, which in ((gamma, "Gamma"), (invol_i, "I"), (invol_j, "J")):
        errs = cm.verify()
        if errs:
            raise ComplexError(f"line map {which} failed verification: {errs[:3]}")

    if sigma0_sq is None:
        if line.alpha is None:
            raise GraphError("line has no alpha; pass sigma0_sq explicitly")
        sigma0_sq = Fraction(-line.alpha)

    return KnotComplexFamily(
        spinc=(label,),
        complexes={label: cx},
        gamma={label: gamma},
        plus_k={label: label},
        conj={label: label},
        grf_coset={label: cx.coset1},
        alex_coset={label: ((cx.coset1 - cx.coset2) / 2) % 1},
        sigma0_sq=Fraction(sigma0_sq),
        invol_I={label: invol_i},
        invol_J={label: invol_j},
        strict_involutions=gamma.strict and invol_i.strict and invol_j.strict,
        name="line",
        meta={"line": line},
    )


# ---- connected sums --------------------------------------------------------


def tensor_families(f1, f2):
    """Connected sum: Spin^c labels pair up and everything tensors."""
    from .complexes import tensor

    labels = tuple(sorted(((a, b) for a in f1.spinc for b in f2.spinc), key=repr))
    complexes = {(a, b): tensor(f1.complexes[a], f2.complexes[b])
                 for a, b in labels}
    plus_k = {(a, b): (f1.plus_k[a], f2.plus_k[b]) for a, b in labels}
    conj = {(a, b): (f1.conj[a], f2.conj[b]) for a, b in labels}

    def tensor_map(m1, m2, src, dst, kind):
        mapping = {}
        for key in src.cells:
            _, c1, c2 = key
            i1, i2 = m1.mapping[c1], m2.mapping[c2]
            mapping[key] = None if (i1 is None or i2 is None) else ("x", i1, i2)
        return CellMap(src=src, dst=dst, mapping=mapping, kind=kind,
                       strict=m1.strict and m2.strict)

    gamma = {}
    for a, b in labels:
        src = complexes[(a, b)]
        dst = complexes[plus_k[(a, b)]]
        gamma[(a, b)] = tensor_map(f1.gamma[a], f2.gamma[b], src, dst, "flip")

    invol_i = invol_j = None
    if f1.invol_I and f2.invol_I:
        invol_i = {}
        invol_j = {}
        for a, b in labels:
            src = complexes[(a, b)]
            invol_i[(a, b)] = tensor_map(f1.invol_I[a], f2.invol_I[b], src,
                                         complexes[conj[(a, b)]], "h1")
            invol_j[(a, b)] = tensor_map(f1.invol_J[a], f2.invol_J[b], src,
                                         complexes[conj[plus_k[(a, b)]]], "skew")

    return KnotComplexFamily(
        spinc=labels,
        complexes=complexes,
        gamma=gamma,
        plus_k=plus_k,
        conj=conj,
        grf_coset={(a, b): (f1.grf_coset[a] + f2.grf_coset[b]) % 2
                   for a, b in labels},
        alex_coset={(a, b): (f1.alex_coset[a] + f2.alex_coset[b]) % 1
                    for a, b in labels},
        sigma0_sq=f1.sigma0_sq + f2.sigma0_sq,
        invol_I=invol_i,
        invol_J=invol_j,
        strict_involutions=f1.strict_involutions and f2.strict_involutions,
        name=f"({f1.name})#({f2.name})",
    )


# named accessors for the three structural cell maps of a family


def flip_Gamma(family):
    """The flip maps Gamma: p2(X^t) -> p1(X^{t+[K]}), one per Spin^c."""
    return family.gamma


def involution_I(family):
    """The 3-manifold involutions I: X^t -> X^{conj t} (h1-preserving)."""
    if family.invol_I is None:
        raise GraphError("family was built without involutions")
    return family.invol_I


def involution_J(family):
    """The knot involutions J: X^t -> X^{conj(t+[K])} (skew-filtered)."""
    if family.invol_J is None:
        raise GraphError("family was built without involutions")
    return family.invol_J
