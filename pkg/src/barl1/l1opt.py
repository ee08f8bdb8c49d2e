"""Exact rational linear programming and l1-minimal fillings.

The solver is a dense two-phase simplex over Fraction with Bland's
rule (smallest eligible variable index enters; ratio ties leave by
smallest basis index), so runs terminate and are deterministic.
Problem sizes here are small: supports of fillings over the groups the
workbench targets.

A filling of a boundary z of degree q is a chain c of degree q+1 with
dc = z; fill_min minimizes the l1 norm by splitting c = u - w with
u, w >= 0 and minimizing sum(u) + sum(w).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from . import linalg
from .barcomplex import (Chain, DEFAULT_SIZE_CAP, SizeCapError, boundary,
                         chain_from_vector, index_tuple, l1_norm,
                         tuple_boundary)
from .groups import FreeGroup
from .barcomplex import push_chain


class Infeasible(Exception):
    """The linear system has no nonnegative solution."""


class Unbounded(Exception):
    """The objective is unbounded below on the feasible set."""


class SupportExhausted(Exception):
    """Support growth hit its cap without reaching feasibility."""


@dataclass(frozen=True)
class LpProblem:
    """min objective . x  subject to  rows . x = rhs, x >= 0."""

    rows: tuple
    rhs: tuple
    objective: tuple

    def __post_init__(self):
        n = len(self.objective)
        if len(self.rows) != len(self.rhs):
            raise ValueError("row count %d does not match rhs length %d"
                             % (len(self.rows), len(self.rhs)))
        for r in self.rows:
            if len(r) != n:
                raise ValueError("row length %d does not match objective length %d"
                                 % (len(r), n))


@dataclass
class LpResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: list | None = None
    objective: Fraction | None = None
    dual: list | None = None


def _pivot(rows, rhs, cost, basis, r, c):
    pv = rows[r][c]
    inv = Fraction(1) / pv
    rows[r] = [v * inv for v in rows[r]]
    rhs[r] *= inv
    prow = rows[r]
    prhs = rhs[r]
    for i in range(len(rows)):
        if i == r:
            continue
        f = rows[i][c]
        if f != 0:
            rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
            rhs[i] -= f * prhs
    f = cost[c]
    if f != 0:
        for j in range(len(cost)):
            cost[j] -= f * prow[j]
    basis[r] = c


def _optimize(rows, rhs, cost, basis, ncols):
    while True:
        enter = None
        for j in range(ncols):
            if cost[j] < 0:
                enter = j
                break
        if enter is None:
            return "optimal"
        leave = None
        best = None
        for i in range(len(rows)):
            a = rows[i][enter]
            if a > 0:
                ratio = rhs[i] / a
                if best is None or ratio < best or \
                        (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            return "unbounded"
        _pivot(rows, rhs, cost, basis, leave, enter)


def lp_solve(prob: LpProblem) -> LpResult:
    m = len(prob.rows)
    n = len(prob.objective)
    c = [Fraction(v) for v in prob.objective]
    if m == 0:
        if any(v < 0 for v in c):
            return LpResult("unbounded")
        return LpResult("optimal", [Fraction(0)] * n, Fraction(0), [])
    rows = [[Fraction(v) for v in r] for r in prob.rows]
    rhs = [Fraction(v) for v in prob.rhs]
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
    orig_rows = [r[:] for r in rows]
    orig_rhs = rhs[:]

    # phase 1: artificial basis, minimize its total
    width = n + m
    for i in range(m):
        rows[i] = rows[i] + [Fraction(int(j == i)) for j in range(m)]
    basis = [n + i for i in range(m)]
    cost = [Fraction(0)] * width
    for j in range(n):
        cost[j] = -sum(rows[i][j] for i in range(m))
    _optimize(rows, rhs, cost, basis, width)
    if sum(rhs[i] for i in range(m) if basis[i] >= n) > 0:
        return LpResult("infeasible")

    # drive leftover artificial basics out, drop redundant rows
    rowmap = list(range(m))
    i = 0
    while i < len(rows):
        if basis[i] >= n:
            piv = None
            for j in range(n):
                if rows[i][j] != 0:
                    piv = j
                    break
            if piv is None:
                del rows[i], rhs[i], basis[i], rowmap[i]
                continue
            _pivot(rows, rhs, cost, basis, i, piv)
        i += 1

    # phase 2 on the original columns
    rows = [r[:n] for r in rows]
    cost = c[:]
    for i, bi in enumerate(basis):
        f = cost[bi]
        if f != 0:
            for j in range(n):
                cost[j] -= f * rows[i][j]
    status = _optimize(rows, rhs, cost, basis, n)
    if status == "unbounded":
        return LpResult("unbounded")
    x = [Fraction(0)] * n
    for i, bi in enumerate(basis):
        x[bi] = rhs[i]
    objective = sum((c[j] * x[j] for j in range(n)), Fraction(0))

    # dual vector from the final basis, padded with 0 on dropped rows
    dual = [Fraction(0)] * m
    if basis:
        bt = [[orig_rows[rowmap[i]][basis[k]] for i in range(len(basis))]
              for k in range(len(basis))]
        cb = [c[bi] for bi in basis]
        y = linalg.solve_square(bt, cb)
        if y is not None:
            for i, yi in zip(rowmap, y):
                dual[i] = yi
    return LpResult("optimal", x, objective, dual)


@dataclass
class FillCertificate:
    """Self-contained witness that c fills z: dc = z with the stated ratio."""

    z: Chain
    c: Chain
    ratio: Fraction
    support: dict = field(default_factory=dict)
    method: str = "simplex-bland"

    def verify(self) -> list[str]:
        """Re-check with chain arithmetic only; returns failed check names."""
        failures = []
        if self.c.degree != self.z.degree + 1:
            failures.append("degree mismatch between primitive and boundary")
            return failures
        if boundary(self.c) != self.z:
            failures.append("boundary mismatch: d(c) != z")
        nz = l1_norm(self.z)
        if nz == 0:
            if not self.c.is_zero():
                failures.append("zero boundary with nonzero primitive")
            if self.ratio != 0:
                failures.append("ratio of the zero filling must be 0")
        elif self.ratio != l1_norm(self.c) / nz:
            failures.append("ratio mismatch: |c|/|z| differs from stated ratio")
        return failures


def full_support(G, degree, cap=DEFAULT_SIZE_CAP):
    n = G.order()
    if n is None:
        raise SizeCapError("full support needs a finite group")
    if n ** degree > cap:
        raise SizeCapError("support size %d exceeds cap %d" % (n ** degree, cap))
    return [index_tuple(G, i, degree) for i in range(n ** degree)]


def ball_support(G: FreeGroup, degree, radius, cap=DEFAULT_SIZE_CAP):
    ball = G.ball(radius)
    if len(ball) ** degree > cap:
        raise SizeCapError("ball support size %d exceeds cap %d"
                           % (len(ball) ** degree, cap))
    return [tuple(t) for t in itertools.product(ball, repeat=degree)]


def _solve_fill(z: Chain, support, minimize=True):
    """Shared core of fill_min / is_boundary over an explicit support."""
    G = z.group
    q = z.degree
    row_index = {}
    rows_of_col = []
    for tup in support:
        if len(tup) != q + 1:
            raise ValueError("support tuple %r has wrong degree" % (tup,))
        col = {}
        for face, sign in tuple_boundary(G, tup):
            if face not in row_index:
                row_index[face] = len(row_index)
            r = row_index[face]
            col[r] = col.get(r, 0) + sign
        rows_of_col.append(col)
    for tup, _ in z.terms():
        if tup not in row_index:
            row_index[tup] = len(row_index)
    m = len(row_index)
    S = len(support)
    a = [[Fraction(0)] * (2 * S) for _ in range(m)]
    for j, col in enumerate(rows_of_col):
        for r, v in col.items():
            a[r][j] = Fraction(v)
            a[r][S + j] = Fraction(-v)
    b = [Fraction(0)] * m
    for tup, r in z.coeffs.items():
        b[row_index[tup]] = r
    obj = [Fraction(1)] * (2 * S) if minimize else [Fraction(0)] * (2 * S)
    res = lp_solve(LpProblem(tuple(map(tuple, a)), tuple(b), tuple(obj)))
    if res.status == "infeasible":
        return None
    if res.status != "optimal":
        raise Unbounded("filling program cannot be unbounded; solver bug")
    coeffs = {}
    for j, tup in enumerate(support):
        v = res.x[j] - res.x[S + j]
        if v != 0:
            coeffs[tup] = coeffs.get(tup, Fraction(0)) + v
    c = Chain(G, q + 1, coeffs)
    return c


def fill_min(z: Chain, support=None, cap=DEFAULT_SIZE_CAP,
             start_radius=3, max_radius=12) -> FillCertificate:
    """l1-minimal c with dc = z, by exact LP over the given support.

    Finite groups default to the full tuple support; free groups grow a
    word-ball support, doubling the radius on infeasibility up to
    max_radius.  Raises Infeasible / SupportExhausted when z is not a
    boundary over the admissible support.
    """
    q = z.degree
    if q < 1:
        raise ValueError("fillings are defined for boundaries of degree >= 1")
    G = z.group
    if z.is_zero():
        return FillCertificate(z, Chain.zero(G, q + 1), Fraction(0),
                               {"kind": "empty"})
    if support is not None:
        c = _solve_fill(z, list(support))
        if c is None:
            raise Infeasible("z is not a boundary over the given support")
        descr = {"kind": "explicit", "size": len(list(support))}
    elif G.is_finite():
        support = full_support(G, q + 1, cap=cap)
        c = _solve_fill(z, support)
        if c is None:
            raise Infeasible("z is not a boundary")
        descr = {"kind": "full", "size": len(support)}
    elif isinstance(G, FreeGroup):
        radius = start_radius
        while True:
            support = ball_support(G, q + 1, radius, cap=cap)
            c = _solve_fill(z, support)
            if c is not None:
                descr = {"kind": "ball", "radius": radius, "size": len(support)}
                break
            if 2 * radius > max_radius:
                raise SupportExhausted(
                    "no filling over word balls up to radius %d" % radius)
            radius *= 2
    else:
        raise SizeCapError(
            "no default support policy for %s; pass one explicitly" % G.backend)
    if boundary(c) != z:
        raise AssertionError("solver returned a non-filling; this is a bug")
    ratio = l1_norm(c) / l1_norm(z)
    return FillCertificate(z, c, ratio, descr)


def is_boundary(z: Chain, support=None, cap=DEFAULT_SIZE_CAP,
                start_radius=3, max_radius=12) -> bool:
    """LP feasibility verdict for the support actually used."""
    if z.degree == 0:
        return z.is_zero()
    if z.is_zero():
        return True
    G = z.group
    if support is not None:
        return _solve_fill(z, list(support), minimize=False) is not None
    if G.is_finite():
        return _solve_fill(z, full_support(G, z.degree + 1, cap=cap),
                           minimize=False) is not None
    if isinstance(G, FreeGroup):
        radius = start_radius
        while True:
            sup = ball_support(G, z.degree + 1, radius, cap=cap)
            if _solve_fill(z, sup, minimize=False) is not None:
                return True
            if 2 * radius > max_radius:
                return False
            radius *= 2
    raise SizeCapError(
        "no default support policy for %s; pass one explicitly" % G.backend)


def section_on(zs, h, **fill_kw):
    """Minimal fillings of push_chain(h, z) for each boundary z.

    Returns (certificates, kappa) where kappa is the batch maximum
    ratio, the empirical norm of a section of h on these boundaries.
    """
    certs = []
    kappa = Fraction(0)
    for z in zs:
        w = push_chain(h, z)
        cert = fill_min(w, **fill_kw)
        certs.append(cert)
        if cert.ratio > kappa:
            kappa = cert.ratio
    return certs, kappa


@dataclass
class UbcConstant:
    """kappa(G, q): worst l1-minimal filling ratio over degree-q boundaries."""

    degree: int
    kappa: Fraction | None
    lower: Fraction
    upper: Fraction | None
    method: str
    certificates: list = field(default_factory=list)
    strategy: str = ""


def _vertex_candidates(N, vcols, budget):
    """Basic feasible points of {u - w = V y, sum u + sum w = 1, all >= 0},
    projected to x = u - w and deduplicated up to sign."""
    d = len(vcols)
    nv = 2 * N + 2 * d
    nrows = N + 1
    if comb(nv, nrows) > budget:
        return None
    cols = []
    for j in range(N):
        cols.append([Fraction(int(i == j)) for i in range(N)] + [Fraction(1)])
    for j in range(N):
        cols.append([Fraction(-int(i == j)) for i in range(N)] + [Fraction(1)])
    for k in range(d):
        cols.append([-v for v in vcols[k]] + [Fraction(0)])
    for k in range(d):
        cols.append(list(vcols[k]) + [Fraction(0)])
    rhs = [Fraction(0)] * N + [Fraction(1)]
    seen = set()
    for idxs in itertools.combinations(range(nv), nrows):
        bmat = [[cols[j][i] for j in idxs] for i in range(nrows)]
        sol = linalg.solve_square(bmat, rhs)
        if sol is None or any(v < 0 for v in sol):
            continue
        x = [Fraction(0)] * N
        for val, j in zip(sol, idxs):
            if j < N:
                x[j] += val
            elif j < 2 * N:
                x[j - N] -= val
        if all(v == 0 for v in x):
            continue
        for v in x:
            if v != 0:
                if v < 0:
                    x = [-u for u in x]
                break
        seen.add(tuple(x))
    return sorted(seen)


def ubc_kappa_exact(G, q, cap=DEFAULT_SIZE_CAP, enum_cap=24,
                    enum_budget=200_000, samples=100, rng=None) -> UbcConstant:
    """kappa(G, q) = max of fill_min over the vertices of the polytope
    {z in im d_{q+1} : |z|_1 <= 1}, enumerated exactly when the lifted
    dimension 2N + 2d fits under enum_cap; otherwise returns a
    certified (sampled lower, section-bound upper) pair."""
    from .barcomplex import boundary_matrix

    if not G.is_finite():
        raise SizeCapError("exact kappa needs a finite group")
    dmat = boundary_matrix(G, q + 1, cap=cap)
    N = dmat.nrows
    dense = dmat.dense_rows()
    _, pivots = linalg.rref(dense)
    d = len(pivots)
    if d == 0:
        # no nonzero boundaries: the polytope is empty and kappa = 0
        return UbcConstant(q, Fraction(0), Fraction(0), Fraction(0),
                           "vertex-enumeration", [], strategy="trivial")
    vcols = [[Fraction(dense[i][j]) for i in range(N)] for j in pivots]

    if d == N:
        # the boundary subspace is everything: the polytope is the full
        # l1 ball, its vertices the signed basis tuples
        certs = []
        kappa = Fraction(0)
        for i in range(N):
            z = chain_from_vector(G, q, [Fraction(int(j == i)) for j in range(N)])
            cert = fill_min(z, cap=cap)
            certs.append(cert)
            kappa = max(kappa, cert.ratio)
        return UbcConstant(q, kappa, kappa, kappa, "vertex-enumeration", certs, strategy="basis")

    verts = None
    if 2 * N + 2 * d <= enum_cap:
        verts = _vertex_candidates(N, vcols, enum_budget)
    if verts is not None:
        certs = []
        kappa = Fraction(0)
        for x in verts:
            z = chain_from_vector(G, q, list(x))
            cert = fill_min(z, cap=cap)
            certs.append(cert)
            kappa = max(kappa, cert.ratio)
        return UbcConstant(q, kappa, kappa, kappa, "vertex-enumeration", certs, strategy="lifted-bfs")

    # fallback: sampled lower bound plus a certified basis-section upper
    # bound max_j minfill(v_j) * |V_I^{-1}|_{1->1}
    if rng is None:
        import random
        rng = random.Random(0)
    lower = Fraction(0)
    certs = []
    for _ in range(samples):
        cand = Chain(G, q + 1,
                     {index_tuple(G, rng.randrange(G.order() ** (q + 1)), q + 1):
                      Fraction(rng.randrange(-3, 4)) for _ in range(4)})
        z = boundary(cand)
        if z.is_zero():
            continue
        cert = fill_min(z, cap=cap)
        certs.append(cert)
        lower = max(lower, cert.ratio)
    basis_fills = []
    for k in range(d):
        z = chain_from_vector(G, q, vcols[k])
        basis_fills.append(l1_norm(fill_min(z, cap=cap).c))
    vrows = [[vcols[k][i] for k in range(d)] for i in range(N)]
    _, prow = linalg.rref([list(r) for r in zip(*vrows)])
    vi = [vrows[i] for i in prow]
    vinv = linalg.invert(vi)
    colnorm = max(sum(abs(vinv[i][j]) for i in range(d)) for j in range(d))
    upper = max(basis_fills) * colnorm
    if lower > upper:
        raise AssertionError("sampled lower bound exceeds certified upper bound")
    return UbcConstant(q, None, lower, upper, "sampled", certs, strategy="basis-section")
