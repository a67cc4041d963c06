from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qqplane.abgroup import AbGroup
from qqplane.cyclo import CycNum
from qqplane.hopfquiver import (
    Arrow,
    HopfQuiver,
    Path,
    PathVec,
    Ramification,
    arrow_path,
    coproduct,
    counit,
    enumerate_paths,
    format_path,
    parse_path,
    path_end,
    thin_splits,
    vertex,
)

Z2Z2 = AbGroup((2, 2))
Q_gh = HopfQuiver(Z2Z2, Ramification.of((1, 0), (0, 1)))
Q_2g = HopfQuiver(AbGroup((2,)), Ramification({(1,): 2}))
Q_z3 = HopfQuiver(AbGroup((3,)), Ramification.of((1,), (2,)))


def test_counts():
    assert len(Q_gh.vertices) == 4 and len(Q_gh.arrows) == 8
    assert len(enumerate_paths(Q_gh, 2)) == 16
    assert len(Q_2g.arrows) == 4
    assert len(enumerate_paths(Q_2g, 3)) == 2 * 2**3
    assert all(Q_gh.is_path(p) for p in enumerate_paths(Q_gh, 3))


def test_arrow_targets_and_validation():
    a = Arrow((1, 0), (1, 0))
    assert Q_gh.target(a) == (0, 0)
    assert Q_gh.has_arrow(a)
    assert not Q_gh.has_arrow(Arrow((1, 0), (1, 1)))
    assert not Q_gh.is_path(Path((0, 0), (Arrow((1, 0), (1, 0)),)))
    with pytest.raises(ValueError):
        HopfQuiver(Z2Z2, Ramification.of((2, 0)))
    with pytest.raises(ValueError):
        Ramification({(1,): -1})
    with pytest.raises(OverflowError):
        HopfQuiver(AbGroup((50, 50)), Ramification.of((1, 0)), arrow_cap=100)
    with pytest.raises(OverflowError):
        enumerate_paths(Q_gh, 20)


def paths_upto(q, n):
    return [p for l in range(n + 1) for p in enumerate_paths(q, l)]


@pytest.mark.parametrize("q", [Q_gh, Q_2g, Q_z3])
def test_coassociativity_and_counit(q):
    G = q.group
    for p in paths_upto(q, 3):
        terms = coproduct(G, p)
        assert len(terms) == p.length + 1
        for left, right in terms:
            # left leg follows the right leg
            assert left.start == path_end(G, right)
            assert Path(right.start, right.arrows + left.arrows) == p
        # (eps (x) id) Delta = id = (id (x) eps) Delta
        assert [r for l, r in terms if counit(l)] == [p]
        assert [l for l, r in terms if counit(r)] == [p]
        # (Delta (x) id) Delta == (id (x) Delta) Delta as multisets of triples
        a = sorted((x, y, r) for l, r in terms for x, y in coproduct(G, l))
        b = sorted((l, x, y) for l, r in terms for x, y in coproduct(G, r))
        assert a == b


def test_vertex_coproduct_is_grouplike():
    assert coproduct(Z2Z2, vertex((1, 1))) == [(vertex((1, 1)), vertex((1, 1)))]
    x = arrow_path(Arrow((0, 0), (1, 0)))
    assert coproduct(Z2Z2, x) == [(vertex((1, 0)), x), (x, vertex((0, 0)))]


@pytest.mark.parametrize("q", [Q_gh, Q_2g])
def test_thin_splits(q):
    G = q.group
    for p in paths_upto(q, 3):
        for n in range(p.length, p.length + 3):
            splits = thin_splits(G, p, n)
            assert len(splits) == comb(n, p.length)
            assert len({d for d, _ in splits}) == len(splits)
            for d, pieces in splits:
                assert sum(d) == p.length and len(pieces) == n
                arrows = tuple(x for x in pieces if isinstance(x, Arrow))
                assert arrows == p.arrows
                # each vertex piece sits where the walk currently is
                v = p.start
                for x in pieces:
                    if isinstance(x, Arrow):
                        assert x.source == v
                        v = G.mul(x.class_elt, v)
                    else:
                        assert x == vertex(v)
    with pytest.raises(ValueError):
        thin_splits(G, enumerate_paths(q, 2)[0], 1)


def test_path_literal_roundtrip():
    names = {"X": ((1, 0), 0), "Y": ((0, 1), 0)}
    labels = {v: k for k, v in names.items()}
    for p in paths_upto(Q_gh, 2):
        text = format_path(p, labels, Z2Z2)
        assert parse_path(text, Z2Z2, names) == p
    assert format_path(vertex((1, 0))) == "(1,0)"
    with pytest.raises(ValueError):
        parse_path("(0,0) -X-> (0,0)", Z2Z2, names)
    with pytest.raises(ValueError):
        parse_path("(0,0) -Z-> (1,0)", Z2Z2, names)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(-3, 3)), max_size=6))
def test_pathvec_linear_algebra(entries):
    paths = enumerate_paths(Q_gh, 1)
    v = PathVec(4)
    for i, c in entries:
        v = v + PathVec.of(4, paths[i], c)
    assert (v - v).is_zero()
    assert v.scale(0).is_zero()
    assert v.scale(2) == v + v
    assert all(not c.is_zero() for _, c in v)
    for p, c in v:
        assert v.coeff(p) == c
    with pytest.raises(ValueError):
        v + PathVec.of(8, paths[0])
    assert v.coeff(paths[0]) == sum((CycNum.const(4, c) for i, c in entries if i == 0), CycNum.zero(4))
