from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from closurehom.constructions import (
    apexes,
    coequalizer,
    cone_d,
    coproduct,
    cycle_space,
    discrete_space,
    interval_space,
    partition_with,
    point_space,
    product,
    projections,
    pushout,
    quotient,
    subspace,
    subspace_inclusion,
    suspension_d,
    wedge,
)
from closurehom.core import CMap, FinSpace, find_homeomorphism
from closurehom.errors import DiscontinuousMapError, InvalidPointError, InvalidSizeError, InvalidSpaceError
from closurehom.homology import homology

from conftest import spaces


def all_subsets(n):
    return [frozenset(s) for r in range(n + 1) for s in itertools.combinations(range(n), r)]


def test_family_sizes_and_guards():
    assert cycle_space(7, 2).n == 7
    assert interval_space(4).n == 5
    with pytest.raises(InvalidSizeError):
        cycle_space(0, 1)
    with pytest.raises(InvalidSizeError):
        cone_d(cycle_space(4, 1), 0)
    with pytest.raises(InvalidSizeError):
        suspension_d(cycle_space(4, 1), 1)


def test_product_closure_by_neighbourhood_enumeration():
    J2, J1 = interval_space(2), interval_space(1)
    P = product(J2, J1)
    p = 1 * J1.n + 0
    # oracle: q lies in c(p) iff every box U x V with q's coordinates in the
    # interiors of U and V meets p
    oracle = set()
    for a, b in itertools.product(range(J2.n), range(J1.n)):
        boxes = [(U, V) for U in all_subsets(J2.n) if a in J2.interior(U)
                 for V in all_subsets(J1.n) if b in J1.interior(V)]
        if all(1 in U and 0 in V for U, V in boxes):
            oracle.add(a * J1.n + b)
    assert P.closure({p}) == oracle
    assert len(oracle) == 6


def test_coproduct_labels_and_shift():
    S = coproduct(interval_space(1), cycle_space(3, 1))
    assert S.n == 5
    assert S.labels[0] == "0:0" and S.labels[2] == "1:0"
    assert S.closure({2}) == {2, 3, 4}
    assert len(S.path_components()) == 2


def test_quotient_rejects_bad_blocks():
    X = cycle_space(5, 1)
    with pytest.raises(InvalidSpaceError):
        quotient(X, [[0, 1], [1, 2], [3, 4]])
    with pytest.raises(InvalidSpaceError):
        quotient(X, [[0, 1], [2, 3]])


def test_quotient_collapsing_doubletons_gives_z7():
    big = cycle_space(11, 3)
    Q, q = quotient(big, partition_with(big, [[0, 1], [3, 4], [5, 6], [8, 9]]))
    assert Q.n == 7
    assert q.is_continuous()
    assert find_homeomorphism(Q, cycle_space(7, 2)) is not None


def test_pushout_of_two_arcs_is_a_square():
    S0 = discrete_space(2)
    J = interval_space(2)
    f = CMap(S0, J, (0, 2))
    P, s1, s2 = pushout(f, f)
    assert P.n == 4
    assert find_homeomorphism(P, cycle_space(4, 1)) is not None
    assert s1.is_continuous() and s2.is_continuous()


def test_pushout_rejects_discontinuous_legs():
    J = interval_space(2)
    bad = CMap(J, J, (0, 2, 1))
    with pytest.raises(DiscontinuousMapError):
        pushout(bad, CMap.identity(J))


def test_wedge_size_and_basepoint_guard():
    X = cycle_space(7, 2)
    assert wedge(X, 0, X, 0).n == 13
    with pytest.raises(InvalidPointError):
        wedge(X, 9, X, 0)


def test_cone_of_square_is_acyclic():
    C = cone_d(cycle_space(4, 1))
    h = homology(C, 3, reduced=True)
    assert all(h[k].is_trivial() for k in range(4))


def test_suspension_of_square_is_octahedron():
    S = suspension_d(cycle_space(4, 1), 2)
    assert S.n == 6
    # octahedron: every vertex misses exactly one other
    assert all(len(S.closures[x]) == 5 for x in range(6))
    h = homology(S, 3)
    assert h[2].rank == 1 and h[1].is_trivial()
    bottom, top = apexes(cycle_space(4, 1), 2)
    assert top not in S.closures[bottom]


def test_suspension_of_two_points_is_a_circle():
    S = suspension_d(discrete_space(2), 2)
    assert S.n == 4
    assert homology(S, 2)[1].rank == 1


def test_coequalizer_of_endpoints_closes_the_arc():
    J = interval_space(4)
    pt = point_space()
    Q, q = coequalizer(CMap(pt, J, (0,)), CMap(pt, J, (4,)))
    assert Q.n == 4
    assert q.is_continuous()


@settings(max_examples=60, deadline=None)
@given(X=spaces(max_n=4), Y=spaces(max_n=3))
def test_product_projections_continuous_and_coarsest(X, Y):
    P, p1, p2 = projections(X, Y)
    assert p1.is_continuous() and p2.is_continuous()
    # continuity is point-wise, so enumerate every candidate closure of each point
    for p in range(P.n):
        for extra in all_subsets(P.n):
            cand = extra | {p}
            if p1.apply(cand) <= X.closures[p1(p)] and p2.apply(cand) <= Y.closures[p2(p)]:
                assert cand <= P.closures[p]


@settings(max_examples=80, deadline=None)
@given(X=spaces(max_n=7), data=st.data())
def test_quotient_setwise_closure(X, data):
    labels = data.draw(st.lists(st.integers(0, 2), min_size=X.n, max_size=X.n))
    blocks = [[x for x in range(X.n) if labels[x] == c] for c in range(3)]
    blocks = [b for b in blocks if b]
    Q, q = quotient(X, blocks)
    assert q.is_continuous()
    for A in all_subsets(Q.n):
        assert Q.closure(A) == q.apply(X.closure(q.preimage(A)))


@settings(max_examples=60, deadline=None)
@given(Z=spaces(max_n=3), X=spaces(max_n=4), Y=spaces(max_n=4), data=st.data())
def test_pushout_square_commutes(Z, X, Y, data):
    f = CMap(Z, X, tuple(data.draw(st.lists(st.integers(0, X.n - 1), min_size=Z.n, max_size=Z.n))))
    g = CMap(Z, Y, tuple(data.draw(st.lists(st.integers(0, Y.n - 1), min_size=Z.n, max_size=Z.n))))
    if not (f.is_continuous() and g.is_continuous()):
        with pytest.raises(DiscontinuousMapError):
            pushout(f, g)
        return
    P, s1, s2 = pushout(f, g)
    assert f.then(s1) == g.then(s2)
    assert s1.is_continuous() and s2.is_continuous()


@settings(max_examples=40, deadline=None)
@given(X=spaces(max_n=5), Y=spaces(max_n=5), data=st.data())
def test_wedge_matches_pushout_over_a_point(X, Y, data):
    x0 = data.draw(st.integers(0, X.n - 1))
    y0 = data.draw(st.integers(0, Y.n - 1))
    W = wedge(X, x0, Y, y0)
    pt = point_space()
    P, _, _ = pushout(CMap(pt, X, (x0,)), CMap(pt, Y, (y0,)))
    assert W.n == X.n + Y.n - 1
    assert W == P


@settings(max_examples=60, deadline=None)
@given(X=spaces(max_n=7), data=st.data())
def test_subspace_inclusion_is_continuous(X, data):
    A = data.draw(st.sets(st.integers(0, X.n - 1), min_size=1))
    inc = subspace_inclusion(X, A)
    assert inc.dom.n == len(A)
    assert inc.is_continuous()
    assert inc.dom == subspace(X, A)
