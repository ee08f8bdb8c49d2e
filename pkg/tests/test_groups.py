import random

import pytest

from barl1.groups import (DirectProduct, FiniteTableGroup, FreeGroup,
                          FreeProduct, GroupAxiomError, Homomorphism,
                          HomomorphismError, PermutationGroup,
                          SemidirectProduct, build_group, build_hom,
                          cayley_table_from, check_axioms, compose_homs,
                          conjugation, cyclic_group, diagonal_hom,
                          free_product_inclusion, group_to_spec,
                          identity_hom, inclusion_hom, is_abelian, pair_hom,
                          projection_hom, symmetric_group_perm, trivial_hom,
                          verify_hom)


def test_cyclic_group_table():
    G = cyclic_group(4)
    assert G.order() == 4
    assert G.identity() == 0
    assert G.mul(3, 2) == 1
    assert G.inv(3) == 1
    assert check_axioms(G)["mode"] == "exhaustive"


def test_bad_table_repeated_row():
    # row 1 repeats row 0, so left multiplication by g1 is not a bijection
    with pytest.raises(GroupAxiomError) as exc:
        FiniteTableGroup([[0, 1], [0, 1]])
    assert "bijection" in str(exc.value) or "identity" in str(exc.value)


def test_table_without_identity():
    with pytest.raises(GroupAxiomError) as exc:
        FiniteTableGroup([[1, 0], [1, 0]])
    assert "identity" in str(exc.value)


def test_nonassociative_latin_square():
    # smallest nonassociative loop with two-sided identity has order 5
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(GroupAxiomError) as exc:
        FiniteTableGroup(table)
    assert "associativity" in str(exc.value)


def test_permutation_group_s3():
    G = symmetric_group_perm(3)
    assert G.order() == 6
    a = (1, 0, 2)
    b = (0, 2, 1)
    # composition convention: (p*q)(i) = p(q(i))
    assert G.mul(a, b) == (1, 2, 0)
    assert G.mul(b, a) == (2, 0, 1)
    assert G.inv((1, 2, 0)) == (2, 0, 1)
    assert not is_abelian(G)


def test_permutation_contains_vs_membership():
    G = PermutationGroup(4, [(1, 0, 2, 3)])
    assert G.order() == 2
    assert G.contains((0, 1, 3, 2))  # right shape, not in the subgroup
    assert not G.contains_strict((0, 1, 3, 2))
    assert G.contains_strict((1, 0, 2, 3))


def test_cross_backend_isomorphism_s3():
    """The permutation backend of S_3 and its Cayley table backend are
    isomorphic through the index map, checked exhaustively."""
    P = symmetric_group_perm(3)
    T = cayley_table_from(P)
    h = build_hom(P, T, fn=lambda p: P.element_index(p), check=True)
    assert verify_hom(h)["mode"] == "exhaustive"
    # bijectivity on 6 elements
    assert sorted(h(p) for p in P.elements()) == list(range(6))


def test_free_group_reduction():
    F = FreeGroup(2)
    x = (1,)
    y = (2,)
    w = F.mul(F.mul(x, y), F.inv(y))
    assert w == x
    assert F.mul(F.inv(x), x) == ()
    assert F.mul((1, 2), (-2, -1)) == ()
    assert not F.is_finite() and F.order() is None


def test_free_group_ball_sizes():
    # 2k(2k-1)^(r-1) new reduced words at radius r for rank k
    F = FreeGroup(2)
    assert len(F.ball(0)) == 1
    assert len(F.ball(1)) == 5
    assert len(F.ball(2)) == 17
    assert len(F.ball(3)) == 53


def test_direct_product():
    G = DirectProduct((cyclic_group(2), cyclic_group(3)))
    assert G.order() == 6
    assert G.mul((1, 2), (1, 2)) == (0, 1)
    assert G.inv((1, 1)) == (1, 2)
    assert is_abelian(G)
    assert len(G.elements()) == 6


def test_free_product_normal_form():
    G = FreeProduct((cyclic_group(2), cyclic_group(2)))
    a = ((0, 1),)
    b = ((1, 1),)
    ab = G.mul(a, b)
    assert ab == ((0, 1), (1, 1))
    # cascading cancellation: a b b a = e since each factor has order 2
    assert G.mul(G.mul(ab, b), a) == ()
    assert not G.is_finite()


def test_semidirect_s3_model():
    # Z/3 x| Z/2 with inversion action is S_3
    base = cyclic_group(3)
    action = PermutationGroup(3, [(0, 2, 1)])
    G = SemidirectProduct(base, action)
    assert G.order() == 6
    assert not is_abelian(G)
    s = (0, (0, 2, 1))
    r = (1, action.identity())
    assert G.mul(s, s) == G.identity()
    # s r s^-1 = r^-1
    assert G.mul(G.mul(s, r), G.inv(s)) == (2, action.identity())


def test_semidirect_rejects_non_automorphism():
    base = cyclic_group(3)
    # the transposition 0<->1 moves the identity, not an automorphism
    action = PermutationGroup(3, [(1, 0, 2)])
    with pytest.raises(GroupAxiomError):
        SemidirectProduct(base, action)


def test_structural_equality_across_copies():
    a = cyclic_group(3)
    b = cyclic_group(3)
    assert a == b and hash(a) == hash(b)
    assert DirectProduct((a, a)) == DirectProduct((b, b))
    assert a != cyclic_group(4)
    assert FreeGroup(2) == FreeGroup(2) != FreeGroup(3)


def test_conjugation_abelian_is_identity():
    G = cyclic_group(5)
    g = conjugation(G, 3)
    assert all(g(x) == x for x in G.elements())


def test_conjugation_s3_permutes_transpositions():
    G = symmetric_group_perm(3)
    transpositions = [p for p in G.elements()
                      if sorted(p) == [0, 1, 2] and p != (0, 1, 2)
                      and G.mul(p, p) == G.identity()]
    assert len(transpositions) == 3
    k = (1, 2, 0)
    gam = conjugation(G, k)
    imgs = sorted(gam(t) for t in transpositions)
    assert imgs == sorted(transpositions)


def test_conjugation_composes():
    G = symmetric_group_perm(3)
    rng = random.Random(2)
    for _ in range(20):
        k, d = G.sample(rng), G.sample(rng)
        lhs = compose_homs(conjugation(G, k), conjugation(G, d))
        rhs = conjugation(G, G.mul(k, d))
        assert all(lhs(x) == rhs(x) for x in G.elements())


def test_verify_hom_rejects_non_hom():
    G = cyclic_group(4)
    bad = Homomorphism(G, G, lambda g: (g * g) % 4, name="square")
    with pytest.raises(HomomorphismError) as exc:
        verify_hom(bad)
    assert "witness" in str(exc.value) or "(" in str(exc.value)


def test_build_hom_modes():
    G2, G4 = cyclic_group(2), cyclic_group(4)
    h = build_hom(G2, G4, table={0: 0, 1: 2})
    assert h(1) == 2
    f = build_hom(FreeGroup(2), G4, images=[1, 3])
    assert f((1, 1)) == 2 and f((2, -1)) == 2
    with pytest.raises(HomomorphismError):
        build_hom(G2, G4, table={0: 0, 1: 1})  # 1+1 must land on 0


def test_hom_combinators():
    G = cyclic_group(3)
    P = DirectProduct((G, G))
    d = diagonal_hom(G, P)
    p0 = projection_hom(P, 0)
    assert compose_homs(p0, d)(2) == 2
    inc = inclusion_hom(P, 1)
    assert inc(2) == (0, 2)
    pr = pair_hom(identity_hom(G), identity_hom(G))
    assert pr((1, 2)) == (1, 2)
    t = trivial_hom(G, cyclic_group(2))
    assert t(2) == 0


def test_free_product_inclusion_hom():
    P = FreeProduct((cyclic_group(2), cyclic_group(3)))
    i0 = free_product_inclusion(P, 0)
    i1 = free_product_inclusion(P, 1)
    w = P.mul(i0(1), i1(2))
    assert w == ((0, 1), (1, 2))
    assert i0(0) == ()


def test_build_group_round_trip_all_backends():
    specs = [
        {"type": "finite", "elements": ["e", "t"], "table": [[0, 1], [1, 0]]},
        {"type": "perm", "degree": 3, "generators": [[1, 2, 0], [1, 0, 2]]},
        {"type": "free", "rank": 2},
        {"type": "product", "op": "direct",
         "factors": [{"type": "free", "rank": 1},
                     {"type": "finite", "elements": ["0", "1"],
                      "table": [[0, 1], [1, 0]]}]},
        {"type": "product", "op": "free",
         "factors": [{"type": "finite", "elements": ["0", "1"],
                      "table": [[0, 1], [1, 0]]},
                     {"type": "free", "rank": 1}]},
    ]
    for spec in specs:
        G = build_group(spec)
        again = build_group(group_to_spec(G))
        assert G == again


def test_build_group_semidirect_round_trip():
    base = cyclic_group(3)
    action = PermutationGroup(3, [(0, 2, 1)])
    G = SemidirectProduct(base, action)
    spec = group_to_spec(G)
    assert spec["type"] == "semidirect"
    assert build_group(spec) == G


def test_build_group_bad_records():
    with pytest.raises(GroupAxiomError):
        build_group({"no": "type"})
    with pytest.raises(GroupAxiomError):
        build_group({"type": "product", "op": "tensor", "factors": []})
    with pytest.raises(GroupAxiomError):
        build_group({"type": "nope"})


def test_is_abelian_witness():
    G = symmetric_group_perm(3)
    flag, pair = is_abelian(G, witness=True)
    assert not flag
    a, b = pair
    assert G.mul(a, b) != G.mul(b, a)


def test_sample_stays_in_group():
    rng = random.Random(7)
    for G in (cyclic_group(6), symmetric_group_perm(3), FreeGroup(2),
              DirectProduct((cyclic_group(2), cyclic_group(2)))):
        for _ in range(50):
            assert G.contains(G.sample(rng))


def test_check_member_raises():
    G = cyclic_group(2)
    with pytest.raises(GroupAxiomError):
        G.check_member(5)
