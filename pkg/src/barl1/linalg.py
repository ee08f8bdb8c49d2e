"""Small exact linear algebra kernel: ranks, RREF, square solves.

Matrices are lists of row lists.  Integer matrices go through
fraction-free (Bareiss) elimination, everything else through plain
Fraction elimination.  Sizes here are modest (boundary matrices of
small groups, decomposition blocks), so dense is fine.
"""

from __future__ import annotations

from fractions import Fraction


def rank_int(rows, ncols=None) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return 0
    if ncols is None:
        ncols = len(rows[0])
    m = len(rows)
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = None
        for i in range(rank, m):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        for i in range(rank + 1, m):
            ri = rows[i]
            f = ri[col]
            for j in range(col, ncols):
                # exact by the Bareiss divisibility property
                ri[j] = (pr[col] * ri[j] - f * pr[j]) // prev
        prev = pr[col]
        rank += 1
        if rank == m:
            break
    return rank


def rref(rows):
    """Reduced row echelon form over Fraction; returns (rows, pivot columns)."""
    rows = [[Fraction(x) for x in r] for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = Fraction(1) / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank_fraction(rows) -> int:
    return len(rref(rows)[1])


def solve_square(a, b):
    """Solve a x = b for square a; None when singular."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a)]
    for col in range(n):
        piv = None
        for i in range(col, n):
            if aug[i][col] != 0:
                piv = i
                break
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [u - f * v for u, v in zip(aug[i], aug[col])]
    return [aug[i][n] for i in range(n)]


def invert(a):
    """Inverse of a square Fraction matrix; None when singular."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(a)]
    for col in range(n):
        piv = None
        for i in range(col, n):
            if aug[i][col] != 0:
                piv = i
                break
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [u - f * v for u, v in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


def rank_factorization(rows):
    """Write the matrix as sum of outer products, W = sum col_i * row_i.

    Returns a list of (column vector, row vector) pairs of length
    rank(W).  The column vectors are actual columns of W (so they stay
    inside any subspace containing the columns), the row vectors are
    the nonzero rows of rref(W) (inside the row space).
    """
    red, pivots = rref(rows)
    out = []
    for i, col in enumerate(pivots):
        colvec = [Fraction(r[col]) for r in rows]
        rowvec = red[i]
        out.append((colvec, rowvec))
    return out
