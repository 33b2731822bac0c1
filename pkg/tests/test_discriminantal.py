from collections import Counter
from fractions import Fraction
from itertools import combinations
from math import comb

import pytest

from discarr.arrangement import GenericArrangement, random_generic, restrict
from discarr.discriminantal import (
    DEPENDENT,
    GOOD,
    OTHER,
    SIMPLE,
    build_all,
    build_form,
    codim2_census,
    codim_intersection,
    construct_dependent,
    dependent_triples,
    project,
)
from discarr.linalg import QMatrix, int_rank
from discarr.rng import SplitMix64

from _oracles import rank_by_minors

DEP63_TRIPLE = ((1, 2, 3, 4), (1, 2, 5, 6), (3, 4, 5, 6))


def dep63():
    return construct_dependent(2, 0, seed=11)


def test_build_form_two_points_on_a_line():
    # k=1: concurrency of translated points i, j means equal positions
    arr = GenericArrangement(3, 1, QMatrix.from_rows([[2], [3], [5]]))
    form = build_form(arr, (1, 2))
    # coefficients proportional to (alpha_2, -alpha_1) at positions 1, 2
    assert form.coeffs == (3, -2, 0)


def test_build_form_support_and_normalization():
    arr = dep63()
    for subset in combinations(range(1, 7), 4):
        form = build_form(arr, subset)
        assert all((c != 0) == (j + 1 in subset) for j, c in enumerate(form.coeffs))
        nonzero = [c for c in form.coeffs if c]
        assert nonzero[0] > 0  # first nonzero entry positive
        from math import gcd

        assert gcd(*[abs(c) for c in nonzero]) == 1  # primitive


def test_build_form_vanishes_on_forced_concurrency():
    rng = SplitMix64(17)
    arr = random_generic(6, 3, seed=23, bound=10)
    for _ in range(5):
        subset = (1, 3, 4, 6)
        point = [Fraction(rng.randint(-9, 9)) for _ in range(arr.k)]
        translates = [Fraction(rng.randint(-9, 9)) for _ in range(arr.n)]
        for j in subset:  # force the subset's hyperplanes through the point
            translates[j - 1] = sum(
                arr.normals.entries[j - 1][i] * point[i] for i in range(arr.k)
            )
        form = build_form(arr, subset)
        assert sum(c * t for c, t in zip(form.coeffs, translates)) == 0


def test_concurrency_determinant_vanishes_on_common_point():
    # the (k+1) x (k+1) determinant with translate column from a common point
    arr = dep63()
    point = [Fraction(1), Fraction(-2), Fraction(3)]
    subset = (1, 2, 3, 4)
    col = [
        [sum(arr.normals.entries[j - 1][i] * point[i] for i in range(arr.k))]
        for j in subset
    ]
    aug = arr.normal_rows(subset).hstack(QMatrix.from_rows(col))
    assert aug.det() == 0


def test_build_form_rejects_bad_subset():
    arr = random_generic(5, 2, seed=2, bound=10)
    with pytest.raises(ValueError):
        build_form(arr, (1, 2))
    with pytest.raises(ValueError):
        build_form(arr, (1, 2, 9))


def test_build_all_counts_and_rank():
    a42 = random_generic(4, 2, seed=3, bound=10)
    assert len(build_all(a42)) == 4
    a63 = random_generic(6, 3, seed=3, bound=10)
    forms = build_all(a63)
    assert len(forms) == comb(6, 4) == 15
    assert int_rank([f.coeffs for f in forms]) == 6 - 3
    # pairwise non-proportional: distinct supports already force this
    for f, g in combinations(forms, 2):
        assert int_rank([f.coeffs, g.coeffs]) == 2


def test_dep63_triple_rank_matches_minor_oracle():
    arr = dep63()
    rows = [build_form(arr, s).coeffs for s in DEP63_TRIPLE]
    assert rank_by_minors(rows) == 2
    assert int_rank(rows) == 2


def test_codim_full_subset_is_two():
    arr = random_generic(7, 3, seed=5, bound=12)
    subset5 = (1, 2, 4, 5, 7)
    parts = list(combinations(subset5, 4))
    assert codim_intersection(arr, parts) == 2


def test_codim_dep63_and_perturbed():
    arr = dep63()
    assert codim_intersection(arr, DEP63_TRIPLE) == 2
    rng = SplitMix64(301)
    while True:
        rows = [list(r) for r in arr.normals.entries]
        rows[2] = [rng.randint(-12, 12) for _ in range(3)]
        from discarr.arrangement import is_trace_generic

        cand = GenericArrangement(6, 3, QMatrix.from_rows(rows))
        if is_trace_generic(cand) and not dependent_triples(cand):
            break
    assert codim_intersection(cand, DEP63_TRIPLE) == 3


def test_census_generic_63():
    arr = random_generic(6, 3, seed=31, bound=12)
    if dependent_triples(arr):
        pytest.skip("sampled a dependent trace; seeds elsewhere cover this")
    census = codim2_census(arr)
    mults = Counter(r.multiplicity for r in census)
    assert mults[5] == comb(6, 5) == 6
    assert set(mults) == {5, 2}
    assert all(r.kind in (GOOD, SIMPLE) for r in census)


def test_census_pair_completeness():
    arr = dep63()
    census = codim2_census(arr)
    n_forms = comb(6, 4)
    assert sum(comb(r.multiplicity, 2) for r in census) == comb(n_forms, 2)
    # every record's forms really span a rank-2 flat
    for record in census[:10]:
        assert int_rank([build_form(arr, m).coeffs for m in record.members]) == 2


def test_census_dep63_dependent_record():
    census = codim2_census(dep63())
    dependent = [r for r in census if r.kind == DEPENDENT]
    assert len(dependent) == 1
    assert dependent[0].members == DEP63_TRIPLE
    assert dependent[0].multiplicity == 3


def test_census_no_multiplicity_four_for_k_at_least_4():
    for n, k, seed in ((7, 4, 41), (8, 4, 43)):
        arr = random_generic(n, k, seed=seed, bound=12)
        census = codim2_census(arr)
        assert all(r.multiplicity != 4 for r in census)
        assert not any(r.kind == OTHER for r in census)


def test_dependent_triples_dep63_and_lifted():
    triples = dependent_triples(dep63())
    assert len(triples) == 1
    assert triples[0].members == DEP63_TRIPLE
    assert (triples[0].common_count, triples[0].overlap_size) == (0, 2)

    lifted = construct_dependent(2, 2, seed=5)
    [triple] = dependent_triples(lifted)
    assert triple.members == (
        (1, 2, 3, 4, 7, 8),
        (1, 2, 5, 6, 7, 8),
        (3, 4, 5, 6, 7, 8),
    )
    assert (triple.common_count, triple.overlap_size) == (2, 2)
    assert codim_intersection(lifted, triple.members) == 2


def test_dependent_triples_empty_on_rejected_random():
    for seed in (51, 52, 53):
        arr = random_generic(6, 3, seed=seed, bound=12)
        triples = dependent_triples(arr)
        census_dep = [r for r in codim2_census(arr) if r.kind == DEPENDENT]
        # equivalence: geometric test agrees with the census on every sample
        assert {t.members for t in triples} == {r.members for r in census_dep}


def test_dependency_equivalence_with_codim():
    # for every combinatorially admissible triple: span test <=> codim 2
    arr = dep63()
    found = {t.members for t in dependent_triples(arr)}
    for groups in combinations(combinations(range(1, 7), 2), 3):
        flat = [x for g in groups for x in g]
        if len(set(flat)) != 6:
            continue
        g1, g2, g3 = groups
        members = tuple(
            sorted(
                (
                    tuple(sorted(g1 + g2)),
                    tuple(sorted(g2 + g3)),
                    tuple(sorted(g1 + g3)),
                )
            )
        )
        expected = 2 if members in found else 3
        assert codim_intersection(arr, members) == expected


def test_triple_not_in_union_rule():
    # if some subset escapes the union of the other two, codim is 3
    arr = random_generic(7, 3, seed=61, bound=12)
    triple = ((1, 2, 3, 4), (3, 4, 5, 6), (1, 2, 5, 7))  # 7 escapes the union
    assert codim_intersection(arr, triple) == 3


def test_construct_dependent_3_0():
    arr = construct_dependent(3, 0, seed=3)
    assert (arr.n, arr.k) == (9, 5)
    census = codim2_census(arr)
    dependent = [r for r in census if r.kind == DEPENDENT]
    assert len(dependent) == 1
    [triple] = dependent_triples(arr)
    assert (triple.common_count, triple.overlap_size) == (0, 3)


def test_construct_dependent_restriction_recovers_planar_dependency():
    lifted = construct_dependent(2, 2, seed=5)
    small = restrict(lifted, (7, 8))
    assert (small.n, small.k) == (6, 3)
    [triple] = dependent_triples(small)
    assert (triple.common_count, triple.overlap_size) == (0, 2)


def test_construct_dependent_rejects_bad_parameters():
    with pytest.raises(ValueError):
        construct_dependent(1, 0, seed=1)
    with pytest.raises(ValueError):
        construct_dependent(2, -1, seed=1)


def test_project():
    ks = [(1, 2, 3, 4), (3, 4, 5, 6), (1, 2, 5, 6)]
    assert project(ks, range(1, 7), k=3) == sorted(tuple(s) for s in ks)
    assert project(ks, (1, 2, 3), k=3) == []
    assert project(ks, (1, 2, 3, 4, 5), k=3) == [(1, 2, 3, 4)]


def test_project_codim_never_increases():
    arr = random_generic(7, 3, seed=71, bound=12)
    ks = [(1, 2, 3, 4), (2, 3, 4, 5), (1, 2, 3, 6)]
    kept = (1, 2, 3, 4, 5)
    images = project(ks, kept, k=3)
    assert images == [(1, 2, 3, 4), (2, 3, 4, 5)]
    sub = restrict_to_subindices(arr, kept)
    assert codim_intersection(sub, images) <= codim_intersection(arr, ks)


def restrict_to_subindices(arr, kept):
    rows = [arr.normals.entries[j - 1] for j in kept]
    return GenericArrangement(len(kept), arr.k, QMatrix.from_rows(rows))


def test_census_k1_matches_braid_arrangement_structure():
    # k=1: concurrency sets are pairs-of-points; triangles {ij, ik, jk} give
    # the C(n,3) full-set strata, partner-disjoint pairs stay simple
    arr = random_generic(4, 1, seed=2, bound=9)
    census = codim2_census(arr)
    kinds = Counter((r.kind, r.multiplicity) for r in census)
    assert kinds == {(GOOD, 3): comb(4, 3), (SIMPLE, 2): 3}


def test_dependency_equivalence_scan_with_common_hyperplane():
    # every admissible candidate triple at t=1: span test <=> codim 2
    from discarr.discriminantal import _dependency_test, _unordered_group_triples

    arr = construct_dependent(2, 1, seed=77)
    dependent_found = 0
    for common in combinations(range(1, 8), 1):
        pool = tuple(j for j in range(1, 8) if j not in common)
        for groups in _unordered_group_triples(pool, 2):
            g1, g2, g3 = groups
            members = tuple(
                sorted(
                    (
                        tuple(sorted(common + g1 + g2)),
                        tuple(sorted(common + g2 + g3)),
                        tuple(sorted(common + g1 + g3)),
                    )
                )
            )
            geometric = _dependency_test(arr, common, groups)
            assert geometric == (codim_intersection(arr, members) == 2), members
            dependent_found += geometric
    assert dependent_found == 1


def test_classifier_reserves_other_for_falsifiers():
    from discarr.discriminantal import _classify

    # a full (k+2)-set pattern is GOOD
    good = tuple(combinations((1, 2, 3, 4), 3))
    assert _classify(good, k=2) == GOOD
    # multiplicity k+2 without the full-set structure would falsify part 1
    assert _classify(((1, 2, 3), (1, 2, 4), (1, 2, 5), (3, 4, 5)), k=2) == OTHER
    # multiplicity 4 at k >= 4 would falsify part 3
    fake4 = ((1, 2, 3, 4, 5), (1, 2, 3, 4, 6), (1, 2, 3, 4, 7), (1, 2, 3, 5, 6))
    assert _classify(fake4, k=4) == OTHER
    assert _classify(((1, 2, 3), (1, 4, 5), (2, 4, 6)), k=2) == DEPENDENT
    assert _classify(((1, 2, 3), (4, 5, 6)), k=2) == SIMPLE
