"""The antichain order of a poset and the Sperner closure of a family."""

from itertools import combinations
from math import comb

import pytest

from ordkit.antichains import (
    antichain_join,
    antichain_leq,
    antichain_meet,
    class_index,
    incomparable_sequence_check,
    is_maximal_r_antichain,
    max_sperner_antichain,
    maximal_star_antichains,
    sc_layers,
    sperner_closure,
    star_union,
)
from ordkit.bits import bits, mask_of
from ordkit.catalog import all_posets, random_family
from ordkit.extremal import gen
from ordkit.families import SetFamily, width_of_masks
from ordkit.poset import Poset, antichain, chain, layered


def in_class(p, a, i):
    idx = class_index(p, a)
    return idx is None or idx <= i


def test_meet_and_join_small_cases():
    p = antichain(2)
    x, y = 0b01, 0b10
    assert antichain_meet(p, x, y) == 0b11
    assert antichain_join(p, x, y) == 0  # filters are disjoint
    assert antichain_meet(p, x, x) == x


def test_meet_rejects_non_antichain():
    p = chain(3)
    with pytest.raises(ValueError):
        antichain_meet(p, 0b011, 0b001)


def test_filter_order_has_empty_antichain_on_top():
    for p in all_posets(4):
        masks = p.all_antichains()
        for a in masks:
            assert antichain_leq(p, a, 0)


def test_lattice_laws_on_all_small_posets():
    for p in all_posets(4):
        masks = p.all_antichains()
        for a in masks:
            for b in masks:
                m = antichain_meet(p, a, b)
                j = antichain_join(p, a, b)
                assert m == antichain_meet(p, b, a)
                assert j == antichain_join(p, b, a)
                assert antichain_leq(p, m, a) and antichain_leq(p, m, b)
                assert antichain_leq(p, a, j) and antichain_leq(p, b, j)
                # absorption
                assert antichain_meet(p, a, antichain_join(p, a, b)) == a
                assert antichain_join(p, a, antichain_meet(p, a, b)) == a


def test_meet_join_against_order_oracle():
    # meet is the greatest lower bound, join the least upper bound
    for p in all_posets(4):
        masks = p.all_antichains()
        for a in masks:
            for b in masks:
                m = antichain_meet(p, a, b)
                for c in masks:
                    if antichain_leq(p, c, a) and antichain_leq(p, c, b):
                        assert antichain_leq(p, c, m)
                j = antichain_join(p, a, b)
                for c in masks:
                    if antichain_leq(p, a, c) and antichain_leq(p, b, c):
                        assert antichain_leq(p, j, c)


def test_layered_example_layers():
    p = layered(3)
    bottom, middle, top = 0b000111, 0b011000, 0b100000
    assert antichain_meet(p, bottom, middle) == bottom
    assert antichain_leq(p, bottom, middle)
    assert antichain_leq(p, middle, top)
    for r, only in ((3, bottom), (2, middle), (1, top)):
        found = [
            a
            for a in p.all_antichains()
            if a.bit_count() == r and is_maximal_r_antichain(p, a)
        ]
        assert found == [only]


def test_chain_has_one_starred_singleton():
    p = chain(4)
    assert star_union(p) == 0b1000
    assert class_index(p, 0b1000) is None
    assert class_index(p, 0b0001) == 0
    assert not is_maximal_r_antichain(p, 0b0001)


def test_two_antichain_under_a_wider_one_is_not_maximal():
    p = Poset.from_covers(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
    assert class_index(p, 0b00011) == 1
    assert not is_maximal_r_antichain(p, 0b00011)
    assert is_maximal_r_antichain(p, 0b11100)


def test_star_union_bound_with_equality_on_layers():
    for p in all_posets(5):
        w = p.width()[0]
        assert star_union(p).bit_count() <= w * (w + 1) // 2
    assert star_union(layered(3)).bit_count() == 6


def test_maximal_r_antichain_count_bound():
    for p in all_posets(5):
        w = p.width()[0]
        stars = maximal_star_antichains(p)
        for r in range(1, w + 1):
            count = sum(1 for a in stars if a.bit_count() == r)
            assert count <= comb(w, r)


def test_meet_closure_of_classes():
    # nonnegative indices add; negative indices take the maximum
    for p in all_posets(5):
        masks = p.all_antichains()
        for a in masks:
            for b in masks:
                m = antichain_meet(p, a, b)
                for i in range(0, 3):
                    for j in range(0, 3):
                        if in_class(p, a, i) and in_class(p, b, j):
                            assert in_class(p, m, i + j)
                for i in range(-3, 0):
                    for j in range(-3, 0):
                        if in_class(p, a, i) and in_class(p, b, j):
                            assert in_class(p, m, max(i, j))


def test_incomparable_star_meet_grows():
    for p in all_posets(5):
        stars = [a for a in maximal_star_antichains(p) if a]
        for a in stars:
            for b in stars:
                if a == b:
                    continue
                if antichain_leq(p, a, b) or antichain_leq(p, b, a):
                    continue
                m = antichain_meet(p, a, b)
                assert m.bit_count() > max(a.bit_count(), b.bit_count())
                assert is_maximal_r_antichain(p, m)


def test_top_maximum_antichain_is_least_star():
    # the join of all maximum antichains belongs to C_{-1} and sits below
    # every other member
    for p in all_posets(5):
        w = p.width()[0]
        if w == 0:
            continue
        widest = [a for a in p.all_antichains() if a.bit_count() == w]
        top = widest[0]
        for a in widest[1:]:
            top = antichain_join(p, top, a)
        assert top.bit_count() == w
        assert is_maximal_r_antichain(p, top)
        for a in maximal_star_antichains(p):
            assert antichain_leq(p, top, a)


def test_sperner_closure_of_empty_set():
    f = SetFamily.from_sets(2, [[0], [1], [0, 1]])
    assert sperner_closure(f, 0) == 0


def test_sperner_closure_chain_case():
    # a chain of members closes everything up to its top set
    f = SetFamily.from_sets(3, [[0], [0, 1], [0, 1, 2]])
    assert sperner_closure(f, mask_of([1])) == mask_of([0, 1, 2])
    assert sperner_closure(f, mask_of([0])) == mask_of([0, 1, 2])


def test_sperner_closure_outside_every_member():
    f = SetFamily.from_sets(3, [[0], [1], [2, 0], [2, 1]])
    # no member contains {0, 1}; the convention sends it to the whole domain
    assert sperner_closure(f, mask_of([0, 1])) == f.domain


def test_sperner_closure_properties(rng):
    for _ in range(25):
        f = random_family(rng, 5, max_members=9)
        if len(f) == 0:
            continue
        dom = f.domain
        sub = dom
        while True:
            c = sperner_closure(f, sub)
            assert c & sub == sub  # extensive
            assert sperner_closure(f, c) == c  # idempotent
            # monotone against supersets inside the domain
            for extra in bits(dom & ~sub):
                bigger = sub | (1 << extra)
                cb = sperner_closure(f, bigger)
                assert cb & c == c
            if sub == 0:
                break
            sub = (sub - 1) & dom


def test_closure_image_matches_star_intersections(rng):
    for _ in range(20):
        f = random_family(rng, 5, max_members=8)
        if len(f) == 0:
            continue
        dom = f.domain
        image = set()
        sub = dom
        while True:
            image.add(sperner_closure(f, sub))
            if sub == 0:
                break
            sub = (sub - 1) & dom
        p = f.inclusion_poset()
        expect = set()
        for a in maximal_star_antichains(p):
            if a == 0:
                expect.add(dom)
            else:
                inter = dom
                for i in bits(a):
                    inter &= f.members[i]
                expect.add(inter)
        assert image == expect


def test_sc_layers_are_antichains():
    f = gen("3.6.7", n=5, k=2)
    for r, layer in sc_layers(f).items():
        if r == 0:
            continue
        for u in layer.members:
            for v in layer.members:
                if u != v:
                    assert u & v not in (u, v)


def test_mixed_layer_intersections():
    # closed sets intersect to closed sets in a layer no lower than
    # either argument, strictly higher when the two are incomparable
    f = gen("3.6.7", n=5, k=2)
    layers = sc_layers(f)
    flat = [(r, m) for r, layer in layers.items() for m in layer.members]
    for i, a in flat:
        for j, b in flat:
            c = a & b
            assert sperner_closure(f, c) == c
            k = width_of_masks(list(f.containing(c).members))[0]
            assert k >= max(i, j)
            if a & b not in (a, b):
                assert k > max(i, j)


def test_sc_layer_width_transfer():
    f = gen("3.6.7", n=5, k=2)
    assert f.is_locally_k_wide(2)[0]
    layers = sc_layers(f)
    for r, layer in layers.items():
        if r == 0:
            continue
        assert layer.is_locally_k_wide(comb(2, r))[0]


def test_max_sperner_antichain_is_highest():
    f = SetFamily.from_sets(3, [[0], [1], [0, 1], [0, 2]])
    got = max_sperner_antichain(f)
    assert got == (mask_of([0, 1]), mask_of([0, 2]))
    g = SetFamily.from_sets(2, [[0], [1], [0, 1]])
    assert max_sperner_antichain(g) == (mask_of([0]), mask_of([1]))


def test_incomparable_sequence_of_all_r_subsets():
    p = antichain(4)
    for r in (1, 2, 3):
        seq = [mask_of(picks) for picks in combinations(range(4), r)]
        assert incomparable_sequence_check(p, seq)
        assert len(seq) == comb(4, r)


def test_incomparable_sequence_trivial_cases():
    p = layered(3)
    assert incomparable_sequence_check(p, [])
    assert incomparable_sequence_check(p, [0b000111])
    # comparable layers do not qualify
    assert not incomparable_sequence_check(p, [0b000111, 0b011000])
