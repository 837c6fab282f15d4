"""Exact minimization of the lattice Euler quadratic over integer points.

chi_k(x) = -(k(x) + (x,x))/2 is strictly convex when the intersection form is
negative definite.  We minimize it exactly over Z^V (optionally with some
coordinates pinned) by solving the continuous problem, bounding the integer
minimizer inside a certified ellipsoid box, and running dynamic programming
over the underlying forest.  Everything is integer/Fraction arithmetic.
"""

from fractions import Fraction

from .linalg import invert_exact, solve_exact


def sqrt_ceil(value):
    """Smallest nonnegative integer r with r*r >= value (value a Fraction >= 0)."""
    if value <= 0:
        return 0
    import math

    r = math.isqrt(int(value)) if value == int(value) else math.isqrt(int(value)) + 1
    while r * r < value:
        r += 1
    while r >= 1 and (r - 1) * (r - 1) >= value:
        r -= 1
    return r


class LatticeQuadratic:
    """chi-minimization engine for one negative definite intersection matrix."""

    def __init__(self, matrix):
        self.m = [list(row) for row in matrix]
        self.n = len(self.m)
        self.adj = [[j for j in range(self.n) if j != i and self.m[i][j] != 0]
                    for i in range(self.n)]

    def two_chi(self, k, x):
        """2*chi_k(x) = -(k.x + x.M.x); integer for integer inputs."""
        kx = sum(ki * xi for ki, xi in zip(k, x))
        xmx = sum(x[i] * self.m[i][j] * x[j] for i in range(self.n) for j in range(self.n))
        return -(kx + xmx)

    def minimize(self, k, fixed=None):
        """Exact integer minimizer of chi_k with coordinates in `fixed` pinned.

        Returns (min_two_chi, x) with deterministic tie-breaking.
        """
        fixed = dict(fixed or {})
        n = self.n
        if n == 0:
            return 0, ()
        free = [i for i in range(n) if i not in fixed]

        # Continuous minimizer on the affine slice.
        if free:
            mff = [[self.m[i][j] for j in free] for i in free]
            rhs = [-Fraction(k[i], 2) - sum(self.m[i][j] * fixed[j] for j in fixed)
                   for i in free]
            xf = solve_exact(mff, rhs)
            qinv = invert_exact([[-self.m[i][j] for j in free] for i in free])
        else:
            xf, qinv = [], []
        xstar = [Fraction(0)] * n
        for i, v in zip(free, xf):
            xstar[i] = v
        for i, v in fixed.items():
            xstar[i] = Fraction(v)

        ref = [fixed[i] if i in fixed else _round_half_down(xstar[i]) for i in range(n)]
        two_chi_star = self._two_chi_rational(k, xstar)
        gap = Fraction(self.two_chi(k, ref)) - two_chi_star  # = (x-x*)Q(x-x*) at ref

        lo = [0] * n
        hi = [0] * n
        for pos, i in enumerate(free):
            r = sqrt_ceil(gap * qinv[pos][pos])
            lo[i] = _ceil(xstar[i] - r)
            hi[i] = _floor(xstar[i] + r)
            if lo[i] > hi[i]:
                lo[i] = hi[i] = ref[i]
        for i in fixed:
            lo[i] = hi[i] = fixed[i]

        return self._forest_dp(k, lo, hi)

    def _two_chi_rational(self, k, x):
        kx = sum(Fraction(ki) * xi for ki, xi in zip(k, x))
        xmx = sum(x[i] * self.m[i][j] * x[j] for i in range(self.n) for j in range(self.n))
        return -(kx + xmx)

    def _forest_dp(self, k, lo, hi):
        n = self.n
        w = [self.m[i][i] for i in range(n)]
        visited = [False] * n
        total = 0
        choice = [0] * n

        def node_term(v, x):
            return -(k[v] * x + w[v] * x * x)

        for root in range(n):
            if visited[root]:
                continue
            # iterative post-order over the component
            order = []
            parent = {root: None}
            stack = [root]
            visited[root] = True
            while stack:
                v = stack.pop()
                order.append(v)
                for u in self.adj[v]:
                    if not visited[u]:
                        visited[u] = True
                        parent[u] = v
                        stack.append(u)
            children = {v: [] for v in order}
            for v in order:
                if parent[v] is not None:
                    children[parent[v]].append(v)
            for v in children:
                children[v].sort()

            # tables[v]: dict parent_value -> (best_score, best_x_v)
            tables = {}
            for v in reversed(order):
                p = parent[v]
                pvals = range(lo[p], hi[p] + 1) if p is not None else (None,)
                tbl = {}
                for pv in pvals:
                    best = None
                    bx = None
                    for xv in range(lo[v], hi[v] + 1):
                        s = node_term(v, xv)
                        if pv is not None:
                            s += -2 * self.m[v][p] * xv * pv
                        for c in children[v]:
                            s += tables[c][xv][0]
                        if best is None or s < best or (s == best and xv < bx):
                            best, bx = s, xv
                    tbl[pv] = (best, bx)
                tables[v] = tbl

            total += tables[root][None][0]
            # reconstruct
            stack = [(root, None)]
            while stack:
                v, pv = stack.pop()
                choice[v] = tables[v][pv][1]
                for c in children[v]:
                    stack.append((c, choice[v]))
        return total, tuple(choice)


def _round_half_down(f):
    fl = f.numerator // f.denominator
    frac = f - fl
    return fl + (1 if frac > Fraction(1, 2) else 0)


def _ceil(f):
    return -((-f.numerator) // f.denominator)


def _floor(f):
    return f.numerator // f.denominator
