"""Exact sizes, densities, the zeta polynomial, and weighted bounds."""

from fractions import Fraction

import pytest

from ordkit.density import (
    M_bound,
    M_circ_bound,
    MultiLattice,
    chain_counts,
    delta,
    density_property,
    density_threshold,
    filter_subposet,
    g_formula,
    h_small,
    multilattice_bound_check,
    p_density,
    p_size,
    zeta,
)
from ordkit.extremal import SearchBudgetExceeded
from ordkit.lattices import boolean, m_flat, m_hat, pentagon_edge_lattice
from ordkit.poset import (
    Poset,
    all_order_maps,
    antichain,
    boolean_poset,
    chain,
    layered,
    order_maps,
)


def test_p_size_small_cases():
    L = boolean(1)
    diamond = boolean_poset(2)
    # maps into the 2-chain pick a filter
    assert p_size(L, diamond) == len(diamond.filters())
    assert p_size(boolean(2), chain(1)) == 4
    assert p_size(m_hat(3), chain(2)) == 12


def test_filter_subposet():
    L = m_hat(3)
    sub = filter_subposet(L, 1)
    assert sub.n == 2
    assert filter_subposet(L, L.bottom).n == len(L)


def test_boolean_density_is_one_over_p():
    for n in (1, 2, 3):
        for P in (chain(1), chain(2), antichain(2), boolean_poset(2)):
            p = len(P.filters())
            L = boolean(n)
            for a in L.atoms():
                assert p_density(L, P, a) == Fraction(1, p)


def test_density_rejects_reducible_elements():
    with pytest.raises(ValueError):
        p_density(boolean(2), chain(1), 3)


def test_density_property_witnesses():
    assert density_property(boolean(0), chain(1)) == (False, None)
    ok, a = density_property(pentagon_edge_lattice(), chain(1))
    assert ok
    assert pentagon_edge_lattice().labels[a] == 0b00011
    ok, a = density_property(m_hat(3), chain(2))
    assert ok and a == 1
    # any atom of a wide M-hat is already sparse enough
    assert density_property(m_hat(5), chain(1)) == (True, 1)


def test_chain_counts():
    assert chain_counts(chain(2)) == (2, 1)
    assert chain_counts(boolean_poset(2)) == (4, 5, 2)
    assert chain_counts(layered(3)) == (6, 11, 6)
    assert chain_counts(antichain(2))[0] == 2


def test_zeta_matches_direct_enumeration():
    posets = (
        chain(2),
        antichain(2),
        boolean_poset(2),
        layered(3),
        Poset.from_covers(4, [(0, 1), (0, 2), (1, 3)]),
    )
    for P in posets:
        for m in range(6):
            direct = sum(1 for _ in all_order_maps(chain(m + 1), P))
            assert zeta(P, m) == direct


def test_zeta_closed_forms():
    for m in range(8):
        assert zeta(chain(2), m) == m + 2
        assert zeta(antichain(2), m) == 2
    assert zeta(chain(3), 4) == 21
    assert zeta(layered(3), 3) == 57
    with pytest.raises(ValueError):
        zeta(chain(2), -1)


def test_density_threshold_direct_check():
    for L in (m_hat(2), m_hat(3), pentagon_edge_lattice(), boolean(2)):
        n_max = 7
        m = density_threshold(L, n_max)
        assert m is not None
        for n in range(m, n_max + 1):
            P = chain(n + 1)
            assert any(
                p_density(L, P, a) <= Fraction(1, n + 2)
                for a in L.join_irreducibles()
            )
        if m > 0:
            P = chain(m)
            assert all(
                p_density(L, P, a) > Fraction(1, m + 1)
                for a in L.join_irreducibles()
            )


def test_density_threshold_failure_is_none():
    # the trivial lattice has no irreducibles to witness anything
    assert density_threshold(boolean(0), 4) is None


def test_delta_counts_top_hitting_maps():
    for k in range(4):
        for P in (chain(1), chain(2), antichain(2)):
            full = boolean_poset(k)
            top = full.n - 1
            direct = sum(
                1 for f in all_order_maps(P, full) if top in f
            )
            assert delta(k, P) == direct


def test_delta_on_chains_is_a_power():
    for k in range(5):
        assert delta(k, chain(1)) == 1
        assert delta(k, chain(2)) == 2 ** k
        assert delta(k, chain(3)) == 3 ** k


def test_m_bound_values():
    assert M_bound(0, 2) == 1
    assert M_bound(1, 2) == 2
    assert M_bound(2, 2) == 4
    assert M_bound(4, 2) == 8
    assert M_bound(1, 3) == 1
    assert M_bound(2, 3) == 3
    with pytest.raises(ValueError):
        M_bound(1, 1)
    with pytest.raises(ValueError):
        M_bound(-1, 2)


def test_m_bound_attained_by_boolean_weights():
    # B_k with unit weights meets the bound exactly over the point
    for k in (1, 2, 3):
        L = boolean(k)
        P = chain(1)
        alpha = {f: 1 for f in order_maps(P, L.order)}
        ML = MultiLattice(L, P, alpha)
        n = 2 ** (k - 1)
        ok, (total, bound) = multilattice_bound_check(ML, n)
        assert ok
        assert total == bound == 2 ** k


def test_m_circ_on_topless_semilattice():
    L = m_flat(3)
    P = chain(1)
    alpha = {f: 1 for f in order_maps(P, L.order)}
    ML = MultiLattice(L, P, alpha)
    ok, (total, bound) = multilattice_bound_check(ML, 3)
    assert ok
    assert total == 4
    assert total <= bound
    bad, info = multilattice_bound_check(ML, 2)
    assert not bad
    assert info[0] == "hypothesis"
    assert info[2] == 3


def test_m_circ_bound_needs_deltas():
    with pytest.raises(ValueError):
        M_circ_bound(10, 2, [1, 1])


def test_top_weight_must_be_one():
    L = boolean(1)
    P = chain(1)
    alpha = {(0,): 1, (1,): 2}
    ML = MultiLattice(L, P, alpha)
    with pytest.raises(ValueError):
        multilattice_bound_check(ML, 3)


def test_multilattice_validates_weights():
    L = boolean(1)
    P = chain(1)
    with pytest.raises(ValueError):
        MultiLattice(L, P, {(0,): 1})
    with pytest.raises(ValueError):
        MultiLattice(L, P, {(0,): 1, (1,): 0})


def test_off_filter_weight():
    L = boolean(2)
    P = chain(1)
    alpha = {f: 1 + f[0] for f in order_maps(P, L.order)}
    ML = MultiLattice(L, P, alpha)
    assert ML.total() == 1 + 2 + 3 + 4
    assert ML.off_filter_weight(1) == 1 + 3
    assert ML.off_filter_weight(2) == 1 + 2


def test_g_formula():
    assert g_formula(1, 2) == 2
    assert g_formula(2, 2) == 3
    assert g_formula(3, 2) == 4
    assert g_formula(1, 3) == 3
    assert g_formula(4, 3) == 7
    with pytest.raises(ValueError):
        g_formula(0, 2)


def test_h_small_point_cases():
    assert h_small("h", chain(1), 1) == 1
    assert h_small("h", chain(1), 2) == 4
    assert h_small("hbar", chain(1), 0) == 1
    assert h_small("hbar", chain(1), 1) == 2
    with pytest.raises(ValueError):
        h_small("other", chain(1), 1)


def test_h_small_budget():
    with pytest.raises(SearchBudgetExceeded):
        h_small("h", chain(1), 1, budget=3)
