import itertools
from fractions import Fraction

import pytest

from qqplane.abgroup import AbGroup
from qqplane.cocycle import Rank1, Rank2, Rank3
from qqplane.cyclo import CycNum, embed_root, mult_order, q_factorial
from qqplane.hopfquiver import Arrow, Path, PathVec, counit, enumerate_paths, thin_splits
from qqplane.majid import (
    ArrowType,
    InfiniteOrderError,
    MajidStructure,
    NotSkewCommutative,
    Rank1Params,
    Rank2Params,
    check_bimodule_axioms,
    check_majid_axiom,
    closed_form_power,
    coproduct_vec,
    left_action,
    left_power,
    nilpotency_order,
    right_action,
    shuffle,
    skew_commutation_factor,
    subalgebra_dimension,
    validate_params,
)

F = Fraction


def z(k, e, N=4):
    return embed_root(k, e, N)


T1_PHI = Rank2(2, 2, 1, 0, 0)
T1 = Rank2Params(z(4, 1), z(1, 0), z(1, 0), z(2, 1))


@pytest.fixture(scope="module")
def t1():
    return MajidStructure.from_params(T1_PHI, T1)


def shuffle_oracle(S, p: Path, q: Path) -> PathVec:
    """Literal thin-split formula through the public action functions."""
    G = S.group
    n = p.length + q.length
    out = PathVec(S.order)
    sq = {d: pieces for d, pieces in thin_splits(G, q, n)}
    for d, pp in thin_splits(G, p, n):
        dbar = tuple(1 - x for x in d)
        qq = sq[dbar]
        coeff = CycNum.one(S.order)
        arrows = []
        for a, b in zip(pp, qq):
            if isinstance(a, Arrow):
                c, arr = right_action(S, a, b.start)
            else:
                c, arr = left_action(S, a.start, b)
            coeff = coeff * c
            arrows.append(arr)
        out = out + PathVec.of(S.order, Path(G.mul(p.start, q.start), tuple(arrows)), coeff)
    return out


# --------------------------------------------------------------------------


def test_validate_params_examples():
    assert validate_params(T1_PHI, T1)
    bad = Rank2Params(z(4, 1), z(4, 1), z(1, 0), z(2, 1))
    r = validate_params(T1_PHI, bad)
    assert not r and r.counterexample == "lam2^n = 1"
    phi0 = Rank2(2, 2, 0, 0, 0)
    assert validate_params(phi0, Rank2Params(z(1, 0), z(1, 0), z(1, 0), z(1, 0)))
    assert not validate_params(Rank1(3, 1), T1)
    r1 = Rank1Params(1, 2, embed_root(9, 1, 9), embed_root(9, 2, 9))
    assert validate_params(Rank1(3, 1), r1)
    assert not validate_params(Rank1(3, 1), Rank1Params(2, 2, embed_root(9, 2, 9), embed_root(9, 2, 9)))


def test_action_examples(t1):
    c, a = left_action(t1, (0, 0), Arrow((1, 1), (0, 1)))
    assert c == 1 and a == Arrow((1, 1), (0, 1))
    c, a = left_action(t1, (1, 0), Arrow((1, 0), (1, 0)))
    assert c == -1 and a == Arrow((0, 0), (1, 0))
    c, a = right_action(t1, Arrow((0, 0), (1, 0)), (1, 0))
    assert c == CycNum.one(4) / (z(2, 1) * T1.lam1) and a == Arrow((1, 0), (1, 0))
    with pytest.raises(ValueError):
        left_action(t1, (1, 0), Arrow((0, 0), (1, 1)))


def test_actions_match_the_printed_rank2_formulas(t1):
    # g^i h^j . X_(s,t) = zeta_m^{a[(s+1)/m] i} X_(i+s, j+t)
    m, a = 2, 1
    for i, j, s, t in itertools.product(range(2), repeat=4):
        c, _ = left_action(t1, (i, j), Arrow((s, t), (1, 0)))
        assert c == z(m, a * ((s + 1) // m) * i)
        # X_(i,j) . g^s h^t = (zeta_m^a lam1)^{-s} lam2^{-t} X_(i+s, j+t)
        c, _ = right_action(t1, Arrow((i, j), (1, 0)), (s, t))
        assert c == (z(m, a) * T1.lam1) ** (-s) * T1.lam2 ** (-t)


def test_bimodule_axioms_and_mutation(t1):
    assert check_bimodule_axioms(t1)
    bad = t1.mutated("right", (1, 0), Arrow((1, 1), (0, 1)), 2)
    r = check_bimodule_axioms(bad)
    assert not r and r.counterexample is not None
    bad = t1.mutated("left", (1, 1), Arrow((0, 0), (1, 0)), 1)
    assert not check_bimodule_axioms(bad)


def test_rank1_structures_pass_and_parallel_arrows_are_separate():
    phi = Rank1(4, 1)
    N = 16
    P = Rank1Params(1, 1, embed_root(16, 1, N), embed_root(16, 5, N))
    S = MajidStructure.from_params(phi, P)
    assert check_bimodule_axioms(S)
    assert len(S.arrows) == 8
    assert {a.copy for a in S.arrows} == {0, 1}


def test_printed_eta1_condition_fails_when_n_does_not_divide_bm():
    # Z_2 x Z_4 with b = 1: eta1^2 = zeta_4 is accepted by the power test
    phi = Rank2(2, 4, 0, 1, 0)
    N = 16
    one = CycNum.one(N)
    printed = Rank2Params(one, one, embed_root(8, 1, N), embed_root(4, 1, N))
    assert validate_params(phi, printed)
    assert not check_bimodule_axioms(MajidStructure.from_params(phi, printed))
    # eta1^m = zeta_n^{-b(m-1)} is the condition the axioms actually impose
    fixed = Rank2Params(one, one, embed_root(8, 7, N), embed_root(4, 1, N))
    assert fixed.eta1 ** 2 == embed_root(4, -1, N)
    assert check_bimodule_axioms(MajidStructure.from_params(phi, fixed))


def test_rank3_with_a7_admits_no_bimodule():
    phi = Rank3(2, (0, 0, 0, 0, 0, 0, 1))
    for cls in [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]:
        for sigma in itertools.product([F(0), F(1, 2), F(1, 4), F(3, 4)], repeat=3):
            S = MajidStructure(phi.group(), phi, [ArrowType("X", cls, sigma)])
            assert not check_bimodule_axioms(S)
    ok = Rank3(2, (0, 1, 1, 1, 0, 1, 0))
    S = MajidStructure(ok.group(), ok, [ArrowType("X", (1, 0, 0), (F(1, 2), 0, 0))])
    assert check_bimodule_axioms(S)


# --------------------------------------------------------------------------


def test_shuffle_examples(t1):
    X = t1.gen("X")
    one = t1.vert((0, 0))
    assert shuffle(t1, one, X) == X == shuffle(t1, X, one)
    assert shuffle(t1, t1.vert((1, 0)), t1.vert((1, 1))) == t1.vert((0, 1))
    xx = shuffle(t1, X, X)
    path = Path((0, 0), (Arrow((0, 0), (1, 0)), Arrow((1, 0), (1, 0))))
    assert xx == PathVec.of(4, path, 1 + z(4, 1))


@pytest.mark.parametrize(
    "S",
    [
        MajidStructure.from_params(T1_PHI, T1),
        MajidStructure.from_params(Rank2(2, 2, 1, 1, 1), Rank2Params(z(4, 1), z(2, 1), z(4, 1), z(4, 3))),
        MajidStructure.from_params(Rank1(3, 2), Rank1Params(1, 2, embed_root(9, 2, 9), embed_root(9, 7, 9))),
        MajidStructure(Rank3(2, (0, 1, 0, 1, 1, 0, 0)).group(), Rank3(2, (0, 1, 0, 1, 1, 0, 0)),
                       [ArrowType("X", (1, 0, 0), (F(1, 2), 0, F(1, 2)))]),
    ],
    ids=["T1", "rank2-abc", "rank1", "rank3"],
)
def test_shuffle_matches_thin_split_oracle(S):
    paths = [p for l in range(3) for p in enumerate_paths(S.quiver, l)]
    sample = paths[:: max(1, len(paths) // 24)]
    for p, q in itertools.product(sample, repeat=2):
        got = shuffle(S, PathVec.of(S.order, p), PathVec.of(S.order, q))
        assert got == shuffle_oracle(S, p, q)


def test_graded_unit_and_counit(t1):
    one = t1.vert((0, 0))
    for p in [p for l in range(3) for p in enumerate_paths(t1.quiver, l)][::5]:
        v = PathVec.of(4, p)
        assert shuffle(t1, one, v) == v == shuffle(t1, v, one)


def _tensor_shuffle(S, da, db):
    out = {}
    for (a1, a2), ca in da.items():
        for (b1, b2), cb in db.items():
            left = shuffle(S, PathVec.of(S.order, a1), PathVec.of(S.order, b1))
            right = shuffle(S, PathVec.of(S.order, a2), PathVec.of(S.order, b2))
            for p, cp in left:
                for q, cq in right:
                    key = (p, q)
                    val = out.get(key, CycNum.zero(S.order)) + ca * cb * cp * cq
                    if val.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = val
    return out


def test_bialgebra_compatibility(t1):
    paths = [p for l in range(3) for p in enumerate_paths(t1.quiver, l)][::3]
    for p, q in itertools.product(paths, repeat=2):
        a, b = PathVec.of(4, p), PathVec.of(4, q)
        lhs = coproduct_vec(t1, shuffle(t1, a, b))
        rhs = _tensor_shuffle(t1, coproduct_vec(t1, a), coproduct_vec(t1, b))
        assert lhs == rhs
        eps = sum((c for r, c in shuffle(t1, a, b) if counit(r)), CycNum.zero(4))
        assert eps == counit(p) * counit(q)


# --------------------------------------------------------------------------


def test_powers_and_closed_forms(t1):
    X, Y = t1.gen("X"), t1.gen("Y")
    assert left_power(t1, X, 0) == t1.vert((0, 0))
    assert left_power(t1, X, 1) == X
    assert left_power(t1, X, 4).is_zero()
    assert not left_power(t1, X, 3).is_zero()
    for l in range(1, 7):
        assert left_power(t1, X, l) == closed_form_power(t1, "X", l)
        assert left_power(t1, Y, l) == closed_form_power(t1, "Y", l)
    # Y: scalar 2!_{zeta_n^-c eta2^-1}
    hbar = CycNum.one(4) / T1.eta2
    assert q_factorial(2, hbar).is_zero() and closed_form_power(t1, "Y", 2).is_zero()
    (p, c), = list(closed_form_power(t1, "X", 3))
    assert c == q_factorial(3, CycNum.one(4) / (z(2, 1) * T1.lam1)) and p.length == 3
    with pytest.raises(ValueError):
        closed_form_power(t1, "X", 0)


def test_nilpotency_orders(t1):
    assert nilpotency_order(t1, "X") == 4 == mult_order(z(2, 1) * T1.lam1)
    assert nilpotency_order(t1, "Y") == 2
    S = MajidStructure.from_params(Rank2(2, 2, 0, 0, 0), Rank2Params(z(2, 1), z(1, 0), z(1, 0), z(2, 1)))
    assert nilpotency_order(S, "X") == 2
    S = MajidStructure.from_params(Rank2(2, 2, 0, 0, 0), Rank2Params(z(1, 0), z(1, 0), z(1, 0), z(2, 1)))
    with pytest.raises(InfiniteOrderError):
        nilpotency_order(S, "X")
    assert not left_power(S, S.gen("X"), 6).is_zero()


def test_skew_commutation(t1):
    assert skew_commutation_factor(t1) == 1
    S = MajidStructure.from_params(T1_PHI, Rank2Params(z(4, 1), z(2, 1), z(2, 1), z(2, 1)))
    assert skew_commutation_factor(S) == -1
    S = MajidStructure.from_params(T1_PHI, Rank2Params(z(4, 1), z(1, 0), z(2, 1), z(2, 1)))
    with pytest.raises(NotSkewCommutative) as err:
        skew_commutation_factor(S)
    assert not err.value.degenerate


def test_majid_axiom(t1):
    X, Y = t1.gen("X"), t1.gen("Y")
    verts = [t1.vert(v) for v in t1.group.enumerate()]
    for a, b, c in itertools.product(verts, repeat=3):
        assert check_majid_axiom(t1, a, b, c)
    gens = [X, Y, t1.vert((1, 0)), t1.vert((0, 1))]
    for a, b, c in itertools.product(gens, repeat=3):
        assert check_majid_axiom(t1, a, b, c)
    xx = shuffle(t1, X, X)
    assert check_majid_axiom(t1, xx, Y, X)
    bad = t1.mutated("right", (1, 0), Arrow((1, 0), (1, 0)), 1)
    assert not all(check_majid_axiom(bad, a, b, c) for a, b, c in itertools.product([X, Y], repeat=3))
    with pytest.raises(OverflowError):
        check_majid_axiom(t1, left_power(t1, X, 3), X, X)


def test_subalgebra_dimension_examples(t1):
    S = MajidStructure(AbGroup((2,)), Rank1(2, 1), [ArrowType("X", (1,), (F(1, 4),))])
    assert subalgebra_dimension(S, [S.vert((0,)), S.vert((1,))]) == 2
    assert subalgebra_dimension(S, [S.vert((1,)), S.gen("X")]) == 8
    gens = [t1.vert((1, 0)), t1.vert((0, 1)), t1.gen("X"), t1.gen("Y")]
    total, levels = subalgebra_dimension(t1, gens, return_levels=True)
    assert total == 32 and levels[0] == 4
    with pytest.raises(OverflowError):
        subalgebra_dimension(t1, gens, max_levels=2)
    assert subalgebra_dimension(t1, gens, max_levels=6) == 32
    # scaling one action destroys nilpotency, so the levels never run out
    bad = t1.mutated("right", (1, 0), Arrow((1, 0), (1, 0)), 1)
    with pytest.raises(OverflowError):
        subalgebra_dimension(bad, gens, max_levels=6)


def test_p4_family_one_instance_has_dimension_16():
    phi = Rank2(2, 2, 0, 1, 0)
    S = MajidStructure(phi.group(), phi, [ArrowType("X", (1, 0), (F(1, 2), 0)),
                                          ArrowType("Y", (1, 0), (F(1, 2), F(1, 2)), copy=1)])
    gens = [S.vert((1, 0)), S.vert((0, 1)), S.gen("X"), S.gen("Y")]
    assert check_bimodule_axioms(S)
    assert subalgebra_dimension(S, gens) == 16


def test_structure_validation():
    phi = Rank2(2, 2, 0, 0, 0)
    with pytest.raises(ValueError):
        MajidStructure(phi.group(), phi, [ArrowType("X", (1, 0), (0,))])
    with pytest.raises(ValueError):
        MajidStructure(phi.group(), phi, [ArrowType("X", (1, 0), (0, 0)), ArrowType("X", (0, 1), (0, 0))])
    with pytest.raises(ValueError):
        MajidStructure(AbGroup((4,)), phi, [])
    with pytest.raises(ValueError):
        MajidStructure(phi.group(), phi, [ArrowType("X", (1, 0), (F(1, 3), 0))], ambient=4)
    with pytest.raises(OverflowError):
        MajidStructure(phi.group(), phi, [], cap=3)
