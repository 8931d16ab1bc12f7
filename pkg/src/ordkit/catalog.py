"""Catalogs of small structures, enumerated exhaustively up to isomorphism.

Everything here exists to back exhaustive checks at desk scale: all posets
on up to 7 points, all meet-semilattices and lattices on up to 8 points,
and all union- or intersection-closed families on a ground set of up to 4
points.  Enumeration is by natural labelings (every new element goes on
top), with isomorph rejection through canonical forms, so each class shows
up exactly once.

Also provides seeded random posets, families and power-set filters for the
randomized suites.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

from .bits import bits, full_mask
from .families import SetFamily
from .poset import Poset

__all__ = [
    "all_posets",
    "poset_count",
    "meet_semilattices",
    "lattices",
    "intersection_closed_families",
    "union_closed_families",
    "family_canonical_key",
    "powerset_filter_from",
    "random_poset",
    "random_family",
    "random_powerset_filter",
]


def _poset_from_downs(downs: tuple[int, ...]) -> Poset:
    n = len(downs)
    ups = [1 << i for i in range(n)]
    for j, d in enumerate(downs):
        for i in bits(d):
            ups[i] |= 1 << j
    return Poset(n, ups)


def _downclosed_subsets(downs: tuple[int, ...], require_zero: bool) -> list[int]:
    i = len(downs)
    out = []
    for d in range(1 << i):
        if require_zero and not d & 1:
            continue
        if all(downs[j] & ~d == 0 for j in bits(d)):
            out.append(d)
    return out


@lru_cache(maxsize=None)
def all_posets(n: int) -> tuple[Poset, ...]:
    """One representative per isomorphism class of posets on n points."""
    if n < 0 or n > 7:
        raise ValueError("poset catalog supports 0 <= n <= 7")
    seen: dict = {}

    def rec(downs: tuple[int, ...]):
        if len(downs) == n:
            p = _poset_from_downs(downs)
            seen.setdefault(p.canonical_key(), p)
            return
        for d in _downclosed_subsets(downs, require_zero=False):
            rec(downs + (d,))

    rec(())
    return tuple(seen.values())


def poset_count(n: int) -> int:
    return len(all_posets(n))


@lru_cache(maxsize=None)
def meet_semilattices(m: int) -> tuple[Poset, ...]:
    """All m-point posets in which every pair has a greatest lower bound.

    Element 0 is always the bottom.  Enumerated level by level with
    isomorph rejection at every level, which keeps the frontier small.
    """
    if m < 1 or m > 8:
        raise ValueError("semilattice catalog supports 1 <= m <= 8")
    frontier: dict = {}
    p0 = _poset_from_downs((0,))
    frontier[p0.canonical_key()] = (0,)
    for size in range(1, m):
        nxt: dict = {}
        for downs in frontier.values():
            for d in _downclosed_subsets(downs, require_zero=True):
                ok = True
                for j in range(size):
                    if (d >> j) & 1:
                        continue
                    meet_set = d & (downs[j] | (1 << j))
                    top = meet_set.bit_length() - 1
                    if meet_set & ~(downs[top] | (1 << top)):
                        ok = False
                        break
                if ok:
                    grown = downs + (d,)
                    p = _poset_from_downs(grown)
                    nxt.setdefault(p.canonical_key(), grown)
        frontier = nxt
    return tuple(_poset_from_downs(downs) for downs in frontier.values())


@lru_cache(maxsize=None)
def lattices(m: int) -> tuple[Poset, ...]:
    """Meet-semilattices on m points that also have a greatest element."""
    out = []
    for p in meet_semilattices(m):
        if p.maximal_mask().bit_count() == 1:
            out.append(p)
    return tuple(out)


# -- closed families on tiny ground sets -------------------------------


@lru_cache(maxsize=None)
def _perm_tables(n: int) -> tuple[tuple[int, ...], ...]:
    tables = []
    for perm in permutations(range(n)):
        table = []
        for mask in range(1 << n):
            pm = 0
            for x in bits(mask):
                pm |= 1 << perm[x]
            table.append(pm)
        tables.append(tuple(table))
    return tuple(tables)


def family_canonical_key(n: int, members) -> tuple[int, ...]:
    """Least relabeling of a family under permutations of its ground set."""
    ms = tuple(sorted(members))
    best = None
    for table in _perm_tables(n):
        cand = tuple(sorted(table[m] for m in ms))
        if best is None or cand < best:
            best = cand
    return best


def _closed_families(n: int, op, up_to_iso: bool) -> tuple[SetFamily, ...]:
    count = 1 << n
    reps: dict = {}
    out = []
    for fm in range(1, 1 << count):
        ms = [i for i in range(count) if (fm >> i) & 1]
        ok = True
        for ai, a in enumerate(ms):
            for b in ms[: ai + 1]:
                if not (fm >> op(a, b)) & 1:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        if up_to_iso:
            key = family_canonical_key(n, ms)
            if key in reps:
                continue
            reps[key] = True
        out.append(SetFamily(n, ms))
    return tuple(out)


@lru_cache(maxsize=None)
def intersection_closed_families(n: int, up_to_iso: bool = True) -> tuple[SetFamily, ...]:
    """Every non-empty intersection-closed family on ground set 0..n-1."""
    if n < 0 or n > 4:
        raise ValueError("closed-family catalog supports 0 <= n <= 4")
    return _closed_families(n, lambda a, b: a & b, up_to_iso)


@lru_cache(maxsize=None)
def union_closed_families(n: int, up_to_iso: bool = True) -> tuple[SetFamily, ...]:
    """Every non-empty union-closed family on ground set 0..n-1."""
    if n < 0 or n > 4:
        raise ValueError("closed-family catalog supports 0 <= n <= 4")
    return _closed_families(n, lambda a, b: a | b, up_to_iso)


# -- power-set filters and random structures ---------------------------


def powerset_filter_from(n: int, gens) -> SetFamily:
    """The filter of the power set of 0..n-1 generated by ``gens``."""
    members = set()
    top = full_mask(n)
    for g in gens:
        rest = top & ~g
        sub = rest
        while True:
            members.add(g | sub)
            if sub == 0:
                break
            sub = (sub - 1) & rest
    return SetFamily(n, members)


def random_poset(rng, n: int, density: float = 0.3) -> Poset:
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                pairs.append((i, j))
    return Poset.from_leq_pairs(n, pairs)


def random_family(rng, n: int, max_members: int = 12,
                  allow_empty_set: bool = True) -> SetFamily:
    count = rng.randint(1, max_members)
    lo = 0 if allow_empty_set else 1
    members = set()
    for _ in range(count):
        members.add(rng.randint(lo, full_mask(n)))
    return SetFamily(n, members)


def random_powerset_filter(rng, n: int, max_gens: int = 3) -> SetFamily:
    gens = [rng.randint(0, full_mask(n)) for _ in range(rng.randint(1, max_gens))]
    return powerset_filter_from(n, gens)
