"""Antichain orders, maximal r-antichains, and Sperner closure.

Antichains of a poset are compared here in the filter order: A <= B iff
the filter generated by A contains the filter generated by B.  Under that
order the meet of two antichains is the set of minimal elements of their
union; the join is the minimal-element set of the intersection of their
filters.  The empty antichain is the top.

An antichain A is a maximal r-antichain when |A| = r and no other
r-element antichain sits strictly above it; class_index measures how far
an antichain is from that condition, so the maximal *-antichains are the
ones of index <= -1 (the empty antichain qualifies vacuously).
"""

from __future__ import annotations

from math import comb

from .bits import bits, mask_of
from .families import SetFamily, width_of_masks
from .poset import Poset

__all__ = [
    "antichain_meet",
    "antichain_join",
    "class_index",
    "is_maximal_r_antichain",
    "maximal_star_antichains",
    "star_union",
    "max_sperner_antichain",
    "sperner_closure",
    "sc_layers",
    "incomparable_sequence_check",
]


def antichain_meet(p: Poset, a: int, b: int) -> int:
    """Minimal elements of the union; the meet in the filter order."""
    _check_antichain(p, a)
    _check_antichain(p, b)
    return p.minimal_of(a | b)


def antichain_join(p: Poset, a: int, b: int) -> int:
    """Minimal elements of the intersection of the two filters."""
    _check_antichain(p, a)
    _check_antichain(p, b)
    return p.minimal_of(p.up_closure(a) & p.up_closure(b))


def antichain_leq(p: Poset, a: int, b: int) -> bool:
    """A <= B in the filter order."""
    ua = p.up_closure(a)
    ub = p.up_closure(b)
    return ua & ub == ub


def _check_antichain(p: Poset, a: int):
    if not p.is_antichain(a):
        raise ValueError("not an antichain")


def class_index(p: Poset, a: int) -> int | None:
    """Smallest i such that every antichain of [A] not inside A has at
    most |A| + i elements.  None when no such antichain exists at all, in
    which case A qualifies for every i."""
    _check_antichain(p, a)
    filt = p.up_closure(a)
    sub, elems = p.subposet(filt)
    back = {i: x for i, x in enumerate(elems)}
    best = None
    for b in sub.all_antichains():
        full = mask_of(back[i] for i in bits(b))
        if full & ~a == 0:
            continue
        size = b.bit_count()
        if best is None or size > best:
            best = size
    if best is None:
        return None
    return best - a.bit_count()


def is_maximal_r_antichain(p: Poset, a: int) -> bool:
    idx = class_index(p, a)
    return idx is None or idx <= -1


def maximal_star_antichains(p: Poset) -> tuple[int, ...]:
    """All maximal *-antichains, the empty one included."""
    return tuple(m for m in p.all_antichains() if is_maximal_r_antichain(p, m))


def star_union(p: Poset) -> int:
    out = 0
    for m in maximal_star_antichains(p):
        out |= m
    return out


# -- Sperner closure on set families -----------------------------------


def _antichains_of_size(masks: list[int], want: int):
    """All antichains (by index list) of exactly ``want`` members."""
    m = len(masks)

    def compatible(chosen: list[int], j: int) -> bool:
        mj = masks[j]
        for i in chosen:
            mi = masks[i]
            inter = mi & mj
            if inter == mi or inter == mj:
                return False
        return True

    out = []

    def rec(start: int, chosen: list[int]):
        if len(chosen) == want:
            out.append(list(chosen))
            return
        if len(chosen) + (m - start) < want:
            return
        for j in range(start, m):
            if compatible(chosen, j):
                chosen.append(j)
                rec(j + 1, chosen)
                chosen.pop()

    rec(0, [])
    return out


def _minimal_masks(masks) -> list[int]:
    ms = sorted(set(masks))
    out = []
    for m in ms:
        if not any(o != m and o & m == o for o in ms):
            out.append(m)
    return out


def max_sperner_antichain(family: SetFamily) -> tuple[int, ...]:
    """The one maximum antichain that sits highest in the filter order.

    Computed as the join of all maximum antichains, which the closure
    of Sperner antichains under joins makes legitimate.
    """
    masks = list(family.members)
    w, _ = width_of_masks(masks)
    if w == 0:
        return ()
    filt = None
    for idxs in _antichains_of_size(masks, w):
        chosen = [masks[i] for i in idxs]
        up = {m for m in masks if any(a & m == a for a in chosen)}
        filt = up if filt is None else filt & up
    cur = _minimal_masks(filt) if filt else None
    if cur is None or len(cur) != w:
        raise AssertionError("no maximum antichain of the right size")
    return tuple(sorted(cur))


def sperner_closure(family: SetFamily, a: int) -> int:
    """Intersection of the maximal Sperner antichain of the members
    that contain ``a``."""
    if a & ~family.domain:
        raise ValueError("the set leaves the domain of the family")
    sub = family.containing(a)
    if len(sub) == 0:
        return family.domain
    anti = max_sperner_antichain(sub)
    out = anti[0]
    for m in anti[1:]:
        out &= m
    return out


def sc_layers(family: SetFamily) -> dict[int, SetFamily]:
    """Map r -> the closures of sets whose superset subfamily has width r."""
    dom = family.domain
    layers: dict[int, set] = {}
    sub = dom
    while True:
        part = family.containing(sub)
        w, _ = width_of_masks(list(part.members))
        layers.setdefault(w, set()).add(sperner_closure(family, sub))
        if sub == 0:
            break
        sub = (sub - 1) & dom
    return {r: SetFamily(family.n, ms) for r, ms in sorted(layers.items())}


def incomparable_sequence_check(p: Poset, antichains) -> bool:
    """Validate the hypothesis of the pairwise-incomparable sequence bound.

    Returns True when all antichains share one size, are pairwise
    incomparable in the filter order, and each later one is a maximal
    antichain of the subposet spanned by it and any earlier one.  When the
    hypothesis holds, the sequence length is checked against C(w, r) and a
    violation raises AssertionError.
    """
    seq = list(antichains)
    if not seq:
        return True
    for a in seq:
        _check_antichain(p, a)
    r = seq[0].bit_count()
    if any(a.bit_count() != r for a in seq) or r == 0:
        return False
    for i in range(len(seq)):
        for j in range(len(seq)):
            if i < j:
                ua = p.up_closure(seq[i])
                ub = p.up_closure(seq[j])
                if ua & ub == ub or ua & ub == ua:
                    return False
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            union = seq[i] | seq[j]
            sub, elems = p.subposet(union)
            pos = {x: t for t, x in enumerate(elems)}
            aj = mask_of(pos[x] for x in bits(seq[j]))
            if not is_maximal_r_antichain(sub, aj):
                return False
    w, _ = p.width()
    if len(seq) > comb(w, r):
        raise AssertionError("incomparable sequence beats the binomial bound")
    return True
