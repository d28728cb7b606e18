from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from closurehom.constructions import cycle_space, interval_space, partition_with, quotient, subspace, wedge
from closurehom.core import FinSpace
from closurehom.errors import UnsupportedDirectedError
from closurehom.homology import (
    GroupSummary,
    HomologySummary,
    IntMatrix,
    boundary_matrix,
    compare_homology,
    flag_complex,
    homology,
    invariant_factors,
    matrix_rank,
    pi1_abelianized,
    relative_homology,
    smith_normal_form,
)
from closurehom.homology.groups import GroupPresentation

from conftest import random_space, spaces
from oracles import cliques, det, determinantal_factors, rank_q

matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)))


def rp2_flag() -> FinSpace:
    """Barycentric subdivision of the 6-vertex projective plane, as a symmetric space."""
    tris = [(1, 2, 4), (1, 2, 6), (1, 3, 5), (1, 3, 6), (1, 4, 5), (2, 3, 4), (2, 3, 5), (2, 5, 6), (3, 4, 6), (4, 5, 6)]
    faces = sorted({frozenset(f) for t in tris for r in (1, 2, 3) for f in itertools.combinations(t, r)},
                   key=lambda f: (len(f), sorted(f)))
    pairs = [(i, j) for i, a in enumerate(faces) for j, b in enumerate(faces) if a < b or b < a]
    return FinSpace.from_relation(len(faces), pairs)


def test_clique_counts_of_z6c2_match_brute_force():
    X = cycle_space(6, 2)
    K = flag_complex(X, 4)
    adj = [set(X.closures[x]) - {x} for x in range(X.n)]
    oracle = [cliques(adj, k + 1) for k in range(4)]
    assert oracle == [6, 12, 8, 0]
    assert [K.count(k) for k in range(4)] == oracle


def test_directed_space_is_rejected():
    with pytest.raises(UnsupportedDirectedError):
        flag_complex(FinSpace((frozenset({0, 1}), frozenset({1}))))


def test_snf_of_small_matrix():
    M = IntMatrix.from_dense([[2, 4], [6, 8]])
    assert determinantal_factors([[2, 4], [6, 8]]) == (2, 4)
    S = smith_normal_form(M, transforms=True)
    assert S.invariant_factors == (2, 4)
    assert S.U @ M @ S.V == S.D
    assert invariant_factors(M) == (2, 4)


@settings(max_examples=300, deadline=None)
@given(rows=matrices)
def test_snf_against_determinantal_divisors(rows):
    M = IntMatrix.from_dense(rows)
    S = smith_normal_form(M, transforms=True)
    oracle = determinantal_factors(rows)
    assert S.invariant_factors == oracle
    assert invariant_factors(M) == oracle
    assert S.rank == matrix_rank(M) == rank_q(rows)
    assert S.U @ M @ S.V == S.D
    assert abs(det(S.U.to_dense())) == 1 and abs(det(S.V.to_dense())) == 1
    D = S.D.to_dense()
    off = [D[i][j] for i in range(len(D)) for j in range(len(D[0])) if i != j]
    assert not any(off)
    if len(rows) == len(rows[0]):
        prod = 1
        for d in S.invariant_factors:
            prod *= d
        assert abs(det(rows)) == (prod if S.rank == len(rows) else 0)


def test_large_entries_do_not_overflow():
    big = 2**70
    M = IntMatrix.from_dense([[big, 0], [0, big * 3]])
    assert invariant_factors(M) == (big, 3 * big)


def test_projective_plane_has_two_torsion():
    h = homology(rp2_flag(), 3)
    assert h[0] == GroupSummary(1)
    assert h[1] == GroupSummary(0, (2,))
    assert h[2].is_trivial()


def test_known_circulant_values():
    assert homology(cycle_space(7, 2), 3)[1] == GroupSummary(1)
    assert homology(cycle_space(3, 1), 3).betti(0) == 1
    assert all(homology(cycle_space(3, 1), 3)[k].is_trivial() for k in (1, 2, 3))
    assert homology(cycle_space(6, 2), 3)[2] == GroupSummary(1)
    assert homology(cycle_space(9, 3), 3)[2] == GroupSummary(2)
    assert homology(cycle_space(8, 3), 4)[3] == GroupSummary(1)


def test_reduced_lowers_degree_zero():
    X = cycle_space(5, 1)
    assert homology(X, 2, reduced=True)[0].is_trivial()
    assert homology(X, 2)[0] == GroupSummary(1)


def test_budget_exhaustion_reports_uncomputed_degrees():
    h = homology(cycle_space(12, 4), 4, budget=100)
    assert not h.is_complete()
    assert None in h.degrees.values()
    assert h[0] is not None


def test_json_round_trip():
    h = homology(cycle_space(6, 2), 3)
    assert HomologySummary.from_json(h.to_json()) == h


def test_relative_homology_of_arc_pair_matches_quotient():
    X = cycle_space(8, 1)
    A = range(1, 5)
    rel = relative_homology(X, A, 2)
    Q, _ = quotient(X, partition_with(X, [A]))
    red = homology(Q, 2, reduced=True)
    assert all(rel[k] == red[k] for k in range(3))
    assert relative_homology(X, [], 2).degrees == homology(X, 2).degrees


def test_wedge_of_two_circles_has_rank_two():
    X = cycle_space(7, 2)
    assert homology(wedge(X, 0, X, 0), 2)[1] == GroupSummary(2)


def test_group_presentation_abelianization():
    # <a, b | 2a, 2a + 4b>  ->  Z/2 + Z/4
    assert GroupPresentation(2, ((2, 0), (2, 4))).abelianization() == GroupSummary(0, (2, 4))
    assert GroupPresentation(1, ()).abelianization() == GroupSummary(1)


def test_group_summary_validation_and_text():
    with pytest.raises(ValueError):
        GroupSummary(0, (4, 2))
    assert str(GroupSummary(2, (2,))) == "Z^2 + Z/2"
    assert str(GroupSummary(0)) == "0"


@settings(max_examples=150, deadline=None)
@given(X=spaces(max_n=9, symmetric=True))
def test_boundary_squares_to_zero(X):
    K = flag_complex(X, 5)
    for k in range(2, K.built_dim + 1):
        assert (boundary_matrix(K, k - 1) @ boundary_matrix(K, k)).is_zero()


@settings(max_examples=150, deadline=None)
@given(X=spaces(max_n=9, symmetric=True))
def test_euler_characteristic_and_betti_oracle(X):
    K = flag_complex(X, X.n)
    h = homology(X, X.n - 1)
    assert K.euler_characteristic() == sum((-1) ** k * h.betti(k) for k in range(X.n))
    # rational Betti numbers from an independent rank computation
    ranks = [0] + [rank_q(boundary_matrix(K, k).to_dense()) if K.count(k) and K.count(k - 1) else 0
                   for k in range(1, K.built_dim + 2)] + [0]
    for k in range(K.built_dim + 1):
        assert h.betti(k) == K.count(k) - ranks[k] - ranks[k + 1]
    assert h.betti(0) == len(X.path_components())


@settings(max_examples=80, deadline=None)
@given(X=spaces(max_n=8, symmetric=True), perm=st.permutations(range(8)))
def test_homology_invariant_under_relabelling(X, perm):
    p = [v for v in perm if v < X.n]
    Y = FinSpace(tuple(frozenset(p[y] for y in X.closures[p.index(x)]) for x in range(X.n)))
    assert compare_homology(X, Y, 3)


@settings(max_examples=100, deadline=None)
@given(X=spaces(min_n=2, max_n=9, symmetric=True))
def test_pi1_abelianized_equals_h1_per_component(X):
    K = flag_complex(X, 2)
    comps = X.path_components()
    pis = pi1_abelianized(K)
    assert len(pis) == len(comps)
    for comp, g in zip(comps, pis):
        assert homology(subspace(X, comp), 1)[1] == g


def test_pi1_of_rp2_is_two_torsion():
    assert pi1_abelianized(flag_complex(rp2_flag(), 2)) == [GroupSummary(0, (2,))]


def test_random_symmetric_spaces_are_deterministic():
    rng = random.Random(7)
    X = random_space(rng, 10, 0.5, symmetric=True)
    assert homology(X, 3) == homology(X, 3)
