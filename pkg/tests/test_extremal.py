"""Stock families, closed-form bounds and the exhaustive searches."""

import math

import pytest

from ordkit.bits import full_mask
from ordkit.extremal import (
    S,
    SearchBudgetExceeded,
    arc_endpoints,
    arc_mask,
    bound,
    gen,
    is_arc,
    left_overlap_reduction,
    ln_upper,
    max_search,
    proper_arcs,
    segment_masks,
)
from ordkit.poset import Poset

# S(k, n) by row, checked against the recursion and the search below.
S_TABLE = {
    1: [2, 4, 6, 8, 10, 12, 14, 16],
    2: [2, 4, 7, 11, 15, 19, 23, 27],
    3: [2, 4, 7, 11, 16, 22, 28, 34],
}


def test_s_table_frozen():
    for k, row in S_TABLE.items():
        for n, want in enumerate(row, start=1):
            assert S(k, n) == want


def test_s_matches_segment_formula_for_wide_grounds():
    for k in range(1, 5):
        for n in range(2 * k, 10):
            assert S(k, n) == 2 * k * n - 2 * k * k + k + 1


def test_gen_sizes_match_closed_forms():
    for n in range(1, 9):
        assert len(gen("3.3.2", n=n)) == n * (n + 1) // 2
    for n in range(2, 9):
        assert len(gen("3.3.4", n=n)) == 3 * n - 3
    for n in range(2, 9):
        for k in range(1, n):
            assert len(gen("3.4.2", n=n, k=k)) == (k + 1) * n - k * (k + 1) // 2
    for n in range(1, 9):
        for k in range(1, n + 1):
            assert len(gen("3.6.2", n=n, k=k)) == 2 * k * n - k * k - k + 2
    for n in range(1, 9):
        for k in range(1, 9):
            assert len(gen("3.6.7", n=n, k=k)) == S(k, n)


def test_gen_sizes_without_closed_forms_frozen():
    assert [len(gen("3.8.2", n=n, k=2)) for n in (4, 6, 8)] == [11, 19, 27]
    for n in (4, 6, 8):
        assert len(gen("3.8.2", n=n, k=2)) == 4 * n - 5
    assert [len(gen("3.8.4", n=n)) for n in (6, 12, 18, 24)] == [27, 82, 138, 194]


def test_gen_families_pass_their_predicates():
    assert gen("3.3.2", n=6).is_centered()
    assert gen("3.3.4", n=6).is_centered()
    assert gen("3.4.2", n=6, k=2).is_pseudotree(2)
    assert gen("3.6.2", n=6, k=2).is_locally_k_wide(2)[0]
    assert gen("3.6.7", n=6, k=2).is_locally_k_wide(2)[0]
    assert gen("3.8.2", n=6, k=2).is_locally_k_wide(2)[0]
    assert gen("3.8.4", n=12).is_locally_k_wide(4)[0]


def test_gen_poset_tag():
    p = gen("3.7.9", n=4)
    assert isinstance(p, Poset)
    assert p.width()[0] == 4


def test_gen_parameter_validation():
    with pytest.raises(ValueError):
        gen("9.9.9", n=3)
    with pytest.raises(ValueError):
        gen("3.4.2", n=3)  # k missing
    with pytest.raises(ValueError):
        gen("3.3.2", n=3, k=1)  # k not taken


def test_arc_helpers():
    assert arc_mask(5, 1, 3) == 0b01110
    assert arc_mask(5, 3, 1) == 0b11011  # wraps through 4 and 0
    assert arc_endpoints(5, 0b01110) == (1, 3)
    assert is_arc(5, 0b01110)
    assert is_arc(5, 0b11011)
    assert not is_arc(5, 0b01010)
    assert len(proper_arcs(4)) == 4 * 3
    assert len(segment_masks(4)) == 4 * 5 // 2


def test_bound_values():
    assert bound("centered", n=8).bound == 36
    assert bound("pseudotree", k=2, n=6).bound == 3 * 6 - 3
    assert bound("segments", k=2, n=6).bound == 19
    assert bound("arcs", k=2, n=6).bound == 2 * 2 * 6 - 2 + 1
    assert bound("uniform-r", k=2, n=6, r=3).bound == 4  # kn/r
    assert bound("general", k=2, n=6).bound == 4 ** 1 * 6


def test_bound_reports_attained_within_bound():
    for cls, kwargs in (
        ("centered", {"n": 7}),
        ("pseudotree", {"k": 2, "n": 7}),
        ("segments", {"k": 2, "n": 7}),
        ("arcs", {"k": 2, "n": 7}),
        ("general", {"k": 2, "n": 7}),
    ):
        rep = bound(cls, **kwargs)
        if rep.attained is not None:
            assert rep.attained <= rep.bound


def test_general_log_envelope_dominates_log():
    for n in range(3, 40):
        assert float(ln_upper(n - 1)) >= math.log(n - 1)
    rep = bound("general-log", k=2, n=12)
    assert not rep.exact
    assert float(rep.bound) >= 2 + 12 + 2 * 12 * math.log(11)


def test_general_bound_never_violated_by_stock_families():
    for n in range(3, 9):
        for k in range(2, n):
            cap = bound("general", k=k, n=n).bound
            assert len(gen("3.6.2", n=n, k=k)) <= cap
            assert len(gen("3.6.7", n=n, k=k)) <= cap
            assert len(gen("3.8.2", n=n, k=k)) <= cap


def test_left_overlap_reduction_on_stock_arcs():
    for n in (4, 5, 6):
        fam = gen("3.6.2", n=n, k=2)
        red = left_overlap_reduction(fam, k=2)
        assert red.is_surjective()
        for u in fam.members:
            ub = red.ubar[u]
            assert ub & ~u == 0
            v = red.lmap[u]
            if v:
                # the overlap source is an incomparable member over u's left end
                assert v & u not in (u, v)
                ul, _ = arc_endpoints(n, u)
                assert (v >> ul) & 1
        # parts keep every mask accounted for
        assert len(red.fr) + len(red.fbar) >= len(fam) - len(
            set(red.ubar.values()) & {0}
        )


def test_left_overlap_parts_are_narrower():
    fam = gen("3.6.2", n=6, k=2)
    red = left_overlap_reduction(fam, k=2)
    # removing left overlaps drops the local width by one
    assert red.fr.is_locally_k_wide(1)[0]


def test_max_search_centered_three_points():
    size, fam = max_search("centered", None, 3)
    assert size == 6
    assert fam.is_centered()


def test_max_search_wide_three_points():
    size, fam = max_search("all", 2, 3)
    assert size == 8
    assert fam.is_locally_k_wide(2)[0]


def test_max_search_arcs_match_formula():
    assert max_search("arcs", 1, 3)[0] == 6
    for n in (2, 3, 4):
        assert max_search("arcs", 2, n)[0] == 2 * 2 * n - 4 - 2 + 2


def test_max_search_segments_match_s():
    for n in range(1, 6):
        assert max_search("segments", 1, n)[0] == S(1, n)
    for n in range(1, 5):
        assert max_search("segments", 2, n)[0] == S(2, n)


def test_max_search_pseudotree():
    size, fam = max_search("pseudotree", 2, 4)
    assert size == (2 + 1) * 4 - 3
    assert fam.is_pseudotree(2)
    assert fam.domain == full_mask(4)


def test_max_search_budget_refusal():
    with pytest.raises(SearchBudgetExceeded):
        max_search("all", 2, 4, budget=10)
    with pytest.raises(SearchBudgetExceeded):
        max_search("all", 2, 7)  # pool past the supported size


def test_max_search_validates_class():
    with pytest.raises(ValueError):
        max_search("nonsense", 2, 3)
    with pytest.raises(ValueError):
        max_search("all", None, 3)
