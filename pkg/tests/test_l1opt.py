import random
from fractions import Fraction

import pytest

from barl1 import linalg
from barl1.barcomplex import (Chain, SizeCapError, boundary, boundary_matrix,
                              chain_to_vector, l1_norm)
from barl1.groups import (FreeGroup, cyclic_group, identity_hom,
                          trivial_hom)
from barl1.l1opt import (Infeasible, LpProblem, SupportExhausted, fill_min,
                         full_support, is_boundary, lp_solve, section_on,
                         ubc_kappa_exact)
from helpers import brute_lp_min, random_chain

G1 = cyclic_group(1)
G2 = cyclic_group(2)
G3 = cyclic_group(3)


def test_lp_basic_optimal():
    res = lp_solve(LpProblem(((1, -1),), (1,), (1, 1)))
    assert res.status == "optimal"
    assert res.objective == 1
    assert res.x == [Fraction(1), Fraction(0)]


def test_lp_infeasible():
    res = lp_solve(LpProblem(((1, 1),), (-1,), (1, 1)))
    assert res.status == "infeasible"


def test_lp_unbounded():
    res = lp_solve(LpProblem(((1, -1),), (0,), (-1, 0)))
    assert res.status == "unbounded"


def test_lp_no_rows():
    assert lp_solve(LpProblem((), (), (1, 2))).objective == 0
    assert lp_solve(LpProblem((), (), (-1,))).status == "unbounded"


def test_lp_shape_validation():
    with pytest.raises(ValueError):
        LpProblem(((1, 2),), (1, 2), (1, 1))
    with pytest.raises(ValueError):
        LpProblem(((1,),), (1,), (1, 1))


def test_lp_against_basis_enumeration():
    # positive objectives keep everything bounded, so the optimum (when
    # feasible) sits on a basic solution the brute force will visit
    rng = random.Random(5)
    optima = 0
    for _ in range(50):
        m, n = 4, 8
        rows = tuple(tuple(Fraction(rng.randrange(-3, 4)) for _ in range(n))
                     for _ in range(m))
        rhs = tuple(Fraction(rng.randrange(-4, 5)) for _ in range(m))
        obj = tuple(Fraction(rng.randrange(1, 5)) for _ in range(n))
        res = lp_solve(LpProblem(rows, rhs, obj))
        ref = brute_lp_min(rows, rhs, obj)
        if ref is None:
            assert res.status == "infeasible"
        else:
            assert res.status == "optimal"
            assert res.objective == ref
            optima += 1
    assert optima >= 10


def test_lp_dual_certificates_midsize():
    """On 20x40 instances the returned dual must certify the optimum:
    A^T y <= c exactly and y.b equal to the objective."""
    rng = random.Random(7)
    for _ in range(10):
        m, n = 20, 40
        rows = [[Fraction(rng.randrange(-2, 3)) for _ in range(n)]
                for _ in range(m)]
        x0 = [Fraction(rng.randrange(0, 3)) for _ in range(n)]
        rhs = [sum(rows[i][j] * x0[j] for j in range(n)) for i in range(m)]
        obj = [Fraction(rng.randrange(1, 6)) for _ in range(n)]
        res = lp_solve(LpProblem(tuple(map(tuple, rows)), tuple(rhs),
                                 tuple(obj)))
        assert res.status == "optimal"
        # normalize to the solver's frame: rows with negative rhs flipped
        for i in range(m):
            if rhs[i] < 0:
                rows[i] = [-v for v in rows[i]]
                rhs[i] = -rhs[i]
        y = res.dual
        assert sum(y[i] * rhs[i] for i in range(m)) == res.objective
        for j in range(n):
            assert sum(y[i] * rows[i][j] for i in range(m)) <= obj[j]
        assert sum(obj[j] * res.x[j] for j in range(n)) == res.objective


def test_lp_deterministic():
    rng = random.Random(11)
    rows = tuple(tuple(rng.randrange(-2, 3) for _ in range(12))
                 for _ in range(6))
    rhs = tuple(rng.randrange(0, 3) for _ in range(6))
    obj = tuple(rng.randrange(1, 4) for _ in range(12))
    first = lp_solve(LpProblem(rows, rhs, obj))
    second = lp_solve(LpProblem(rows, rhs, obj))
    assert first.x == second.x and first.objective == second.objective


def test_fill_min_z2_hand_example():
    # d(t,t) = 2(t) - (e); the unique minimal primitive is (t,t) itself
    z = Chain(G2, 1, {(1,): Fraction(2), (0,): Fraction(-1)})
    cert = fill_min(z)
    assert cert.c == Chain.single(G2, (1, 1))
    assert l1_norm(cert.c) == 1
    assert cert.ratio == Fraction(1, 3)
    assert cert.verify() == []


def test_fill_min_z2_single_generator():
    cert = fill_min(Chain.single(G2, (1,)))
    assert l1_norm(cert.c) == 1
    assert cert.ratio == 1
    assert boundary(cert.c) == Chain.single(G2, (1,))


def test_fill_min_never_beats_given_primitive():
    rng = random.Random(13)
    for _ in range(30):
        c0 = random_chain(G3, 2, rng)
        z = boundary(c0)
        if z.is_zero():
            continue
        cert = fill_min(z)
        assert boundary(cert.c) == z
        assert l1_norm(cert.c) <= l1_norm(c0)


def test_fill_min_stable_under_cycle_perturbations():
    rng = random.Random(17)
    for _ in range(40):
        z = boundary(random_chain(G2, 2, rng))
        if z.is_zero():
            continue
        cert = fill_min(z)
        w = boundary(random_chain(G2, 3, rng))
        assert l1_norm(cert.c + w) >= l1_norm(cert.c)


def test_fill_min_degree_zero_rejected():
    with pytest.raises(ValueError):
        fill_min(Chain.single(G2, ()))


def test_fill_min_zero_chain():
    cert = fill_min(Chain.zero(G3, 2))
    assert cert.c.is_zero() and cert.ratio == 0
    assert cert.verify() == []


def test_fill_min_explicit_support():
    z = Chain(G2, 1, {(1,): Fraction(2), (0,): Fraction(-1)})
    cert = fill_min(z, support=list(full_support(G2, 2)))
    assert l1_norm(cert.c) == 1
    with pytest.raises(Infeasible):
        fill_min(z, support=[(0, 0)])


def test_is_boundary_basics():
    rng = random.Random(19)
    z = boundary(random_chain(G3, 2, rng))
    assert is_boundary(z)
    assert not is_boundary(Chain.single(G2, ()))
    assert is_boundary(Chain.zero(G2, 0))


def test_is_boundary_matches_rank_oracle():
    rng = random.Random(23)
    dmat = boundary_matrix(G3, 3)
    cols = dmat.dense_rows()
    n = dmat.nrows
    base = [[cols[i][j] for j in range(dmat.ncols)] for i in range(n)]
    rank_v = linalg.rank_fraction([row[:] for row in base])
    hits = {True: 0, False: 0}
    for k in range(20):
        z = (boundary(random_chain(G3, 3, rng)) if k % 2
             else random_chain(G3, 2, rng))
        vec = chain_to_vector(z, n)
        aug = [base[i] + [vec[i]] for i in range(n)]
        expected = linalg.rank_fraction(aug) == rank_v
        assert is_boundary(z) == expected
        hits[expected] += 1
    assert hits[True] and hits[False]


def test_fill_min_free_group_ball():
    F = FreeGroup(1)
    c0 = Chain.single(F, ((1,), (1,)))
    z = boundary(c0)
    cert = fill_min(z)
    assert boundary(cert.c) == z
    assert l1_norm(cert.c) <= l1_norm(c0)
    assert cert.support.get("kind") == "ball"


def test_fill_min_free_group_non_boundary():
    F = FreeGroup(1)
    with pytest.raises(SupportExhausted):
        fill_min(Chain.single(F, ((1,),)), max_radius=6)


def test_kappa_z2_degree_one():
    res = ubc_kappa_exact(G2, 1)
    assert res.kappa == 1 and res.lower == 1 and res.upper == 1
    assert res.method == "vertex-enumeration" and res.strategy == "basis"
    assert all(cert.verify() == [] for cert in res.certificates)


def test_kappa_small_groups():
    assert ubc_kappa_exact(G1, 1).kappa == 1
    triv2 = ubc_kappa_exact(G1, 2)
    assert triv2.kappa == 0 and triv2.strategy == "trivial"
    assert ubc_kappa_exact(G3, 1).kappa == 1


def test_kappa_z2_degree_two_lifted():
    res = ubc_kappa_exact(G2, 2)
    assert res.kappa == Fraction(1, 2)
    assert res.method == "vertex-enumeration" and res.strategy == "lifted-bfs"
    assert len(res.certificates) == 3
    assert all(cert.verify() == [] for cert in res.certificates)


def test_kappa_sampled_brackets_exact():
    res = ubc_kappa_exact(G2, 2, enum_cap=0, samples=30,
                          rng=random.Random(3))
    assert res.method == "sampled" and res.strategy == "basis-section"
    assert res.kappa is None
    assert res.lower <= Fraction(1, 2) <= res.upper


def test_kappa_needs_finite_group():
    with pytest.raises(SizeCapError):
        ubc_kappa_exact(FreeGroup(1), 1)


def test_section_on_identity():
    rng = random.Random(29)
    zs = []
    while len(zs) < 5:
        z = boundary(random_chain(G2, 2, rng))
        if not z.is_zero():
            zs.append(z)
    certs, kappa = section_on(zs, identity_hom(G2))
    assert len(certs) == 5
    assert all(cert.verify() == [] for cert in certs)
    assert kappa <= 1  # kappa(Z/2, 1) = 1 caps every identity-push ratio
    assert kappa == max(fill_min(z).ratio for z in zs)


def test_section_on_trivial_target_and_zero():
    rng = random.Random(31)
    zs = [Chain.zero(G2, 1), boundary(random_chain(G2, 2, rng))]
    certs, kappa = section_on(zs, trivial_hom(G2, G1))
    assert certs[0].ratio == 0
    assert kappa >= 0
