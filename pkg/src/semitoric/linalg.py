"""Exact linear algebra over the rationals.

Sparse rows are dicts {column index: Fraction}.  The echelon structure keeps
rows with distinct pivot columns; reducing a vector against it yields the
canonical coset representative supported on non-pivot columns.  An exact
phase-1 simplex provides LP feasibility for cone membership and support
function searches.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ValidationError


class SparseEchelon:
    """Incremental row-echelon form of a sparse rational row space.

    Columns >= ncols are bookkeeping tags: they are carried through row
    operations but never chosen as pivots (used to track combinations).
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict[int, Fraction]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row) -> dict[int, Fraction]:
        """Canonical residual of a row modulo the current row space."""
        r = {c: Fraction(v) for c, v in row.items() if v}
        while True:
            c = min((k for k in r if k < self.ncols and k in self.pivots), default=None)
            if c is None:
                return r
            coef = r.pop(c)
            for k, v in self.pivots[c].items():
                if k == c:
                    continue
                nv = r.get(k, Fraction(0)) - coef * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)

    def insert(self, row):
        """Adjoin a row; returns its pivot column, or None if dependent."""
        r = self.reduce(row)
        c = min((k for k in r if k < self.ncols), default=None)
        if c is None:
            return None, r
        lead = r[c]
        self.pivots[c] = {k: v / lead for k, v in r.items()}
        return c, r

    def contains(self, row) -> bool:
        r = self.reduce(row)
        return not any(k < self.ncols for k in r)

    def rref_rows(self):
        """Fully inter-reduced rows, sorted by pivot column."""
        cols = sorted(self.pivots)
        out = {}
        for c in reversed(cols):
            row = dict(self.pivots[c])
            for k in [k for k in row if k != c and k in out]:
                coef = row.pop(k)
                for kk, vv in out[k].items():
                    if kk == k:
                        continue
                    nv = row.get(kk, Fraction(0)) - coef * vv
                    if nv:
                        row[kk] = nv
                    else:
                        row.pop(kk, None)
            out[c] = row
        return [out[c] for c in cols]


def solve_linear(rows, rhs):
    """All rational solutions of rows * x = rhs.

    Returns (particular, kernel_basis) or None when inconsistent.
    """
    m = len(rows)
    n = len(rows[0]) if m else (len(rhs) if rhs else 0)
    a = [[Fraction(x) for x in rows[i]] + [Fraction(rhs[i])] for i in range(m)]
    piv_of_col: dict[int, int] = {}
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        a[r] = [x / a[r][c] for x in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        piv_of_col[c] = r
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if a[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for c, i in piv_of_col.items():
        x[c] = a[i][n]
    free = [c for c in range(n) if c not in piv_of_col]
    kernel = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for c, i in piv_of_col.items():
            v[c] = -a[i][f]
        kernel.append(tuple(v))
    return tuple(x), kernel


def solve_unique(rows, rhs):
    """The unique rational solution of rows * x = rhs, or None."""
    sol = solve_linear(rows, rhs)
    if sol is None:
        return None
    x, kernel = sol
    if kernel:
        return None
    return x


def lp_feasible(num_vars, eqs=(), ineqs=(), nonneg=False):
    """Exact LP feasibility: find x with a·x = b for (a, b) in eqs and
    a·x >= b for (a, b) in ineqs.  With nonneg=True, additionally x >= 0.

    Returns a tuple of Fractions or None.  Phase-1 simplex with Bland's rule.
    """
    if nonneg:
        nv = num_vars
        def expand(a):
            return [Fraction(c) for c in a]
        def recover(z):
            return tuple(z[:num_vars])
    else:
        nv = 2 * num_vars
        def expand(a):
            return [Fraction(c) for c in a] + [-Fraction(c) for c in a]
        def recover(z):
            return tuple(z[i] - z[num_vars + i] for i in range(num_vars))

    rows = []
    rhs = []
    nslack = len(ineqs)
    for k, (a, b) in enumerate(ineqs):
        row = expand(a) + [Fraction(0)] * nslack
        row[nv + k] = Fraction(-1)
        rows.append(row)
        rhs.append(Fraction(b))
    for a, b in eqs:
        rows.append(expand(a) + [Fraction(0)] * nslack)
        rhs.append(Fraction(b))

    ncols = nv + nslack
    m = len(rows)
    if m == 0:
        return tuple(Fraction(0) for _ in range(num_vars))
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-x for x in rows[i]]
            rhs[i] = -rhs[i]

    # Tableau with one artificial variable per row; minimize their sum.
    ncols_t = ncols + m
    tab = [rows[i] + [Fraction(int(j == i)) for j in range(m)] + [rhs[i]] for i in range(m)]
    basis = [ncols + i for i in range(m)]
    cost = [Fraction(0)] * ncols_t + [Fraction(0)]
    for j in range(ncols, ncols_t):
        cost[j] = Fraction(1)
    # reduced costs: cost row minus sum of basic rows (each basic column has cost 1)
    z = [Fraction(0)] * (ncols_t + 1)
    for j in range(ncols_t + 1):
        z[j] = cost[j] - sum(tab[i][j] for i in range(m))

    while True:
        enter = next((j for j in range(ncols_t) if z[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][ncols_t] / tab[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise ValidationError("phase-1 LP unbounded; inconsistent model")
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter]:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        if z[enter]:
            f = z[enter]
            z = [x - f * y for x, y in zip(z, tab[leave])]
        basis[leave] = enter

    if -z[ncols_t] != 0:
        return None
    sol = [Fraction(0)] * ncols
    for i, b in enumerate(basis):
        if b < ncols:
            sol[b] = tab[i][ncols_t]
    return recover(sol)


def rational_matrix_rank(rows) -> int:
    ech = SparseEchelon(len(rows[0]) if rows else 0)
    for r in rows:
        ech.insert({j: v for j, v in enumerate(r) if v})
    return ech.rank
