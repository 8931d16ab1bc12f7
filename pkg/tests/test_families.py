"""SetFamily mechanics: restrictions, closures, centers and trees."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordkit.bits import bits, full_mask, mask_of
from ordkit.families import (
    SetFamily,
    filter_density,
    intersection_closure,
    kleitman_check,
    union_closure,
    width_of_masks,
)

small_family = st.builds(
    SetFamily,
    st.just(5),
    st.lists(st.integers(min_value=0, max_value=31), max_size=10),
)


def family_of(n, *sets):
    return SetFamily.from_sets(n, sets)


def test_members_are_sorted_and_deduplicated():
    f = SetFamily(3, [5, 1, 5, 0])
    assert f.members == (0, 1, 5)
    assert len(f) == 3
    assert 5 in f and 2 not in f


def test_from_sets_and_as_sets_round_trip():
    f = family_of(4, [0, 2], [1], [])
    assert f.as_sets() == [frozenset(), frozenset({1}), frozenset({0, 2})]


def test_member_out_of_range_rejected():
    with pytest.raises(ValueError):
        SetFamily(2, [4])


def test_restriction_operators():
    f = family_of(4, [0], [0, 1], [1, 2], [2, 3], [0, 1, 2, 3])
    x = mask_of([0, 1])
    assert f.contained_in(x).members == f.restrict(x, "sub").members
    assert set(f.contained_in(x).as_sets()) == {frozenset({0}), frozenset({0, 1})}
    assert set(f.containing(x).as_sets()) == {
        frozenset({0, 1}),
        frozenset({0, 1, 2, 3}),
    }
    traced = f.traced_on(x)
    assert set(traced.as_sets()) == {
        frozenset({0}),
        frozenset({0, 1}),
        frozenset({1}),
        frozenset(),
    }
    assert f.minus(x) == f.traced_on(full_mask(4) & ~x)


@given(small_family, st.integers(min_value=0, max_value=31))
def test_traced_and_minus_partition_each_member(f, x):
    for u in f.members:
        assert (u & x) in f.traced_on(x)
        assert (u & ~x) in f.minus(x)


def test_join_meet_are_pairwise_ops():
    f = family_of(3, [0], [1])
    g = family_of(3, [2], [0, 1])
    assert set(f.join(g).as_sets()) == {
        frozenset({0, 2}),
        frozenset({0, 1}),
        frozenset({1, 2}),
    }
    assert set(f.meet(g).as_sets()) == {frozenset(), frozenset({0}), frozenset({1})}


def test_closures_idempotent_and_minimal():
    f = family_of(4, [0], [1], [2])
    uc = union_closure(f)
    assert len(uc) == 7
    assert uc.is_union_closed()
    assert union_closure(uc) == uc
    ic = intersection_closure(f)
    assert ic.is_intersection_closed()
    assert set(ic.members) >= set(f.members)


@given(small_family)
def test_union_closure_generators_regenerate(f):
    uc = union_closure(f)
    gens = uc.generators()
    assert union_closure(gens) == uc
    # dropping any generator loses it: nothing else unions up to it
    for u in gens.members:
        rest = SetFamily(f.n, [v for v in uc.members if v != u])
        assert u not in union_closure(rest)


def test_width_of_masks_chain_vs_antichain():
    assert width_of_masks([1, 3, 7])[0] == 1
    w, witness = width_of_masks([1, 2, 4])
    assert w == 3
    assert sorted(witness) == [1, 2, 4]


def test_width_degree_counts_only_members_containing_x():
    f = family_of(3, [0], [0, 1], [0, 2], [1, 2])
    assert f.width_degree(0) == 2
    assert f.width_degree(1) == 2


def test_is_locally_k_wide_witness_is_an_antichain_with_common_point():
    f = family_of(3, [0, 1], [0, 2], [0])
    ok, _ = f.is_locally_k_wide(2)
    assert ok
    ok, witness = f.is_locally_k_wide(1)
    assert not ok
    common = witness[0]
    for u in witness:
        common &= u
    assert common
    for i, u in enumerate(witness):
        for v in witness[i + 1 :]:
            assert u & v not in (u, v)


def test_centers_of_a_chain_are_whole_members():
    f = family_of(3, [0], [0, 1], [0, 1, 2])
    assert f.is_centered()
    assert f.centers() == [1, 3, 7]


def test_center_removes_overlapping_elements():
    f = family_of(3, [0, 1], [1, 2])
    assert f.center(mask_of([0, 1])) == mask_of([0])
    assert f.center(mask_of([1, 2])) == mask_of([2])
    assert f.is_centered()


def test_uncentered_member_found():
    f = family_of(4, [0, 1], [1, 2], [0, 3], [3, 2])
    # {0,1} meets an incomparable member on each side
    assert not f.is_centered()
    bad = f.uncentered_member()
    assert f.center(bad) == 0


def test_forest_and_tree():
    tree = family_of(
        5, [0], [1], [2], [3], [4], [0, 1], [2, 3], [0, 1, 2, 3, 4]
    )
    assert tree.is_forest()
    assert tree.is_tree()
    size, n, excess = tree.tree_size_identity()
    assert (size, n) == (8, 5)
    assert size == 2 * n - 1 - excess


def test_tree_size_identity_rejects_non_trees():
    f = family_of(2, [0, 1])
    assert not f.is_tree()
    with pytest.raises(ValueError):
        f.tree_size_identity()


def test_pseudotree_requires_domain_and_singletons():
    f = family_of(3, [0], [1], [2], [0, 1, 2])
    assert f.is_pseudotree()
    assert f.is_pseudotree(1)
    assert not family_of(3, [0], [1], [0, 1, 2]).is_pseudotree()
    g = family_of(2, [0], [1]).adjoin_domain_and_singletons()
    assert g.is_pseudotree()


def test_inclusion_poset_matches_subset_order():
    f = family_of(3, [], [0], [0, 1], [2])
    p = f.inclusion_poset()
    for i, u in enumerate(f.members):
        for j, v in enumerate(f.members):
            assert p.leq(i, j) == (u & v == u)


def test_filter_density_on_a_powerset_filter():
    filt = family_of(3, [0], [0, 1], [0, 2], [0, 1, 2])
    assert filt.is_powerset_filter()
    assert filter_density(filt) == Fraction(4, 8)


def test_kleitman_inequality_on_crossing_filters():
    up0 = family_of(3, [0], [0, 1], [0, 2], [0, 1, 2])
    up1 = family_of(3, [1], [0, 1], [1, 2], [0, 1, 2])
    assert kleitman_check(up0, up1)


@settings(max_examples=80, deadline=None)
@given(
    st.sets(st.integers(min_value=0, max_value=15), max_size=5),
    st.sets(st.integers(min_value=0, max_value=15), max_size=5),
)
def test_kleitman_inequality_generated_filters(gens_f, gens_g):
    def up_closure(gens):
        out = {m for m in range(16) if any(m & g == g for g in gens)}
        return SetFamily(4, out)

    f, g = up_closure(gens_f), up_closure(gens_g)
    if len(f) == 0 or len(g) == 0:
        return
    assert f.is_powerset_filter() and g.is_powerset_filter()
    assert kleitman_check(f, g)


@given(small_family)
def test_generators_cache_consistent(f):
    assert f.generators() == f.generators()
    assert set(f.generators().members) <= set(f.members)
