"""Sizes and densities of semilattices of order-preserving maps.

The size of L over a poset P is the number of order maps P -> L; the
density of an element is the fraction of maps landing in its filter.
This module computes those exactly (ints and Fractions throughout),
evaluates sizes through the chain census polynomial, and carries the
extremal bounds for weighted lattices and for small semilattices.
"""

from __future__ import annotations

import math
from collections.abc import Mapping, Sequence
from fractions import Fraction

from .catalog import intersection_closed_families
from .extremal import SearchBudgetExceeded
from .lattices import MeetSemilattice, from_family
from .poset import Poset, boolean_poset, chain, count_order_maps


def p_size(L: MeetSemilattice, P: Poset) -> int:
    """The number of order-preserving maps P -> L."""
    return count_order_maps(P, L.order)


def filter_subposet(L: MeetSemilattice, a: int) -> Poset:
    """The principal filter of a as an induced poset."""
    return L.order.subposet(L.order.up_mask(a))[0]


def p_density(L: MeetSemilattice, P: Poset, a: int) -> Fraction:
    """The fraction of maps P -> L valued above a; exact."""
    if a != L.bottom and a not in L.join_irreducibles():
        raise ValueError(f"element {a} is not join-irreducible")
    total = p_size(L, P)
    hits = count_order_maps(P, filter_subposet(L, a))
    return Fraction(hits, total)


def density_property(
    L: MeetSemilattice, P: Poset
) -> tuple[bool, int | None]:
    """Whether some proper join-irreducible has density at most 1/p.

    p counts the filters of P.  The trivial lattice has no proper
    join-irreducibles and therefore never has the property.
    """
    p = len(P.filters())
    goal = Fraction(1, p)
    for a in L.join_irreducibles():
        if p_density(L, P, a) <= goal:
            return True, a
    return False, None


# -- chain census and the zeta polynomial ------------------------------


def chain_counts(P: Poset) -> tuple[int, ...]:
    """c_i = the number of chains of P with i + 1 elements."""
    return P.chain_census()


def zeta(P: Poset, m: int) -> int:
    """The number of order maps from an (m+1)-chain into P.

    Evaluated through the chain census: the count is the sum of
    c_i * C(m, i), polynomial in m.
    """
    if m < 0:
        raise ValueError("negative chain length")
    return sum(c * math.comb(m, i) for i, c in enumerate(chain_counts(P)))


def density_threshold(L: MeetSemilattice, n_max: int) -> int | None:
    """The least m from which the 1/(n+2) density test always holds.

    For each n up to n_max the test asks for a proper join-irreducible
    a with (n + 2) * |filter sizes over the (n+1)-chain| bounded by the
    total.  Returns the smallest m such that the test holds for every n
    in m..n_max, or None when it fails at n_max itself.
    """
    if n_max < 0:
        raise ValueError("negative horizon")
    js = L.join_irreducibles()
    subs = [filter_subposet(L, a) for a in js]
    ok = []
    for n in range(n_max + 1):
        total = zeta(L.order, n)
        ok.append(any((n + 2) * zeta(s, n) <= total for s in subs))
    if not ok[-1]:
        return None
    m = n_max
    while m > 0 and ok[m - 1]:
        m -= 1
    return m


# -- extremal bounds ---------------------------------------------------


def delta(k: int, P: Poset) -> int:
    """Maps P -> B_k that touch the top of B_k."""
    if k < 0:
        raise ValueError("negative rank")
    full = boolean_poset(k)
    trimmed = full.subposet((1 << full.n) - 1 - (1 << (full.n - 1)))[0]
    return count_order_maps(P, full) - count_order_maps(P, trimmed)


def M_bound(n: int, p: int) -> int:
    """The weighted size bound for lattices at filter count p."""
    if p < 2:
        raise ValueError("filter counts start at 2")
    if n < 0:
        raise ValueError("negative excess")
    if n < p - 1:
        return 1
    best = None
    k = 1
    while p ** (k - 1) * (p - 1) <= n:
        value = k * n - p ** (k - 1) * (k * (p - 1) - p)
        best = value if best is None else max(best, value)
        k += 1
    assert best is not None
    return best


def M_circ_bound(n: int, p: int, deltas: Sequence[int]) -> int:
    """The topless variant of the weighted bound.

    deltas[k] is the excess of B_k over its top-trimmed copy for the
    underlying poset; entries must reach far enough to certify that no
    larger k is feasible, otherwise a ValueError asks for more.
    """
    if p < 2:
        raise ValueError("filter counts start at 2")
    if n < 0:
        raise ValueError("negative excess")
    best = 0
    k = 2
    while p ** (k - 1) * (p - 1) - (p - 1) ** k <= n:
        if k >= len(deltas):
            raise ValueError(f"delta table stops before rank {k}")
        dk, dprev = deltas[k], deltas[k - 1]
        if p ** (k - 1) * (p - 1) - dk + dprev <= n:
            value = (
                k * n
                - p ** (k - 1) * (k * (p - 1) - p)
                + (k - 1) * dk
                - k * dprev
            )
            best = max(best, value)
        k += 1
    return best


def g_formula(n: int, p: int) -> int:
    """Least weighted size forcing n maps below every irreducible."""
    if n < 1:
        raise ValueError("the formula starts at n = 1")
    if p < 2:
        raise ValueError("filter counts start at 2")
    steps = -(-(n - 1) // (p - 1))
    return (steps + 1) * (p - 1) + 1


def h_small(
    kind: str, P: Poset, n: int, budget: int = 2_000_000
) -> int | None:
    """Extremal P-sizes over all semilattices with at most 4 irreducibles.

    Semilattices are enumerated as intersection-closed families on
    grounds up to 4, one per isomorphism class.  kind "h" minimises the
    P-size subject to every principal filter (the whole semilattice
    included) holding at least n maps; kind "hbar" maximises it subject
    to every filter missing at most n maps.  Returns None ("h") or 0
    ("hbar") when nothing qualifies.
    """
    if kind not in ("h", "hbar", "h̄", "h̅"):
        raise ValueError(f"unknown kind {kind!r}")
    low = kind == "h"
    best: int | None = None
    work = 0
    for ground in range(5):
        dom = (1 << ground) - 1
        for fam in intersection_closed_families(ground, up_to_iso=True):
            if fam.domain != dom:
                continue
            L = from_family(fam, "meet")
            total = p_size(L, P)
            work += total
            if work > budget:
                raise SearchBudgetExceeded(
                    f"map enumeration passed the budget of {budget}"
                )
            checked = [L.bottom] + L.join_irreducibles()
            if low:
                fine = all(
                    count_order_maps(P, filter_subposet(L, a)) >= n
                    for a in checked
                )
            else:
                fine = all(
                    total - count_order_maps(P, filter_subposet(L, a)) <= n
                    for a in checked
                )
            if not fine:
                continue
            if best is None:
                best = total
            else:
                best = min(best, total) if low else max(best, total)
    if best is None and not low:
        return 0
    return best


# -- weighted lattices -------------------------------------------------


class MultiLattice:
    """A semilattice of maps with a positive integer weight on each map.

    alpha is keyed by the map tuples of L over P; every map must carry
    a weight of at least 1.
    """

    __slots__ = ("L", "P", "alpha")

    def __init__(
        self, L: MeetSemilattice, P: Poset, alpha: Mapping[tuple, int]
    ):
        from .poset import order_maps

        maps = order_maps(P, L.order)
        if set(alpha) != set(maps):
            raise ValueError("weights must cover the maps exactly")
        if any(w < 1 for w in alpha.values()):
            raise ValueError("weights must be at least 1")
        self.L = L
        self.P = P
        self.alpha = dict(alpha)

    def total(self) -> int:
        return sum(self.alpha.values())

    def off_filter_weight(self, a: int) -> int:
        """The weight of the maps not valued above a everywhere."""
        L = self.L
        return sum(
            w
            for f, w in self.alpha.items()
            if not all(L.leq(a, v) for v in f)
        )


def multilattice_bound_check(ML: MultiLattice, n: int):
    """Verify the weighted size bound for a multilattice.

    Checks the hypothesis (each join-irreducible misses weight at most
    n; the top map has weight 1 when there is a top) and then the
    conclusion against the lattice bound, or the topless variant when L
    has no greatest member.  Returns (False, ("hypothesis", a, excess))
    when some irreducible breaks the hypothesis; (True, (total, bound))
    when everything holds.
    """
    L, P = ML.L, ML.P
    p = len(P.filters())
    if L.is_lattice:
        top_map = tuple([L.top] * P.n)
        if ML.alpha[top_map] != 1:
            raise ValueError("the top map must carry weight 1")
    for a in L.join_irreducibles():
        excess = ML.off_filter_weight(a)
        if excess > n:
            return False, ("hypothesis", a, excess)
    if L.is_lattice:
        bound = M_bound(n, p)
    else:
        deltas = [delta(0, P)]
        k = 2
        while p ** (k - 1) * (p - 1) - (p - 1) ** k <= n:
            k += 1
        for i in range(1, k + 1):
            deltas.append(delta(i, P))
        bound = M_circ_bound(n, p, deltas)
    total = ML.total()
    assert total <= bound, f"weighted size {total} beats the bound {bound}"
    return True, (total, bound)
