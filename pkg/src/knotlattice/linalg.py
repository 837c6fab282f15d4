"""Exact integer/rational linear algebra for small dense matrices.

Everything here works on plain lists of ints or Fractions.  Sizes are tiny
(plumbing graphs have a handful of vertices), so clarity beats asymptotics;
exactness is non-negotiable because all gradings downstream are rational.
"""

from fractions import Fraction


def bareiss_det(m):
    """Determinant of an integer matrix by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def solve_exact(m, rhs):
    """Solve m x = rhs exactly over Q.  m integer/rational square, rhs a vector.

    Raises ValueError if m is singular.
    """
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def invert_exact(m):
    """Exact rational inverse of an integer/rational square matrix."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def mat_vec(m, v):
    return [sum(mij * vj for mij, vj in zip(row, v)) for row in m]


def smith_normal_form(m):
    """Smith normal form of an integer matrix.

    Returns (d, u, v) with u*m*v = d, d diagonal with d[i] | d[i+1],
    u and v unimodular.  Used to enumerate Z^n / M Z^n.
    """
    a = [list(map(int, row)) for row in m]
    n = len(a)
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, c):
        for row in a:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    for t in range(n):
        while True:
            pivots = [(abs(a[i][j]), i, j) for i in range(t, n) for j in range(t, n)
                      if a[i][j] != 0]
            if not pivots:
                break
            _, pi, pj = min(pivots)
            swap_rows(t, pi)
            swap_cols(t, pj)
            done = True
            for i in range(t + 1, n):
                if a[i][t] % a[t][t] != 0:
                    done = False
                add_row(t, i, -(a[i][t] // a[t][t]))
            for j in range(t + 1, n):
                if a[t][j] % a[t][t] != 0:
                    done = False
                add_col(t, j, -(a[t][j] // a[t][t]))
            if done and all(a[i][t] == 0 for i in range(t + 1, n)) \
                    and all(a[t][j] == 0 for j in range(t + 1, n)):
                # pivot must divide the remaining block for true SNF
                bad = None
                for i in range(t + 1, n):
                    for j in range(t + 1, n):
                        if a[i][j] % a[t][t] != 0:
                            bad = (i, j)
                            break
                    if bad:
                        break
                if bad is None:
                    break
                add_row(bad[0], t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    d = [a[i][i] for i in range(n)]
    return d, u, v
