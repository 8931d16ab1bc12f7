"""Families of finite sets under inclusion.

A family is a duplicate-free collection of subsets of the ground set 0..n-1,
held as a sorted tuple of bitmasks.  On top of that sit the structural
notions this package keeps reusing: width-degrees, centers, locally-k-wide
tests, forests and trees, union/intersection closures and generators, the
four restriction operators, and exact filter densities in the power set.

The width of a (sub)family always means the width of its inclusion order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .bipartite import max_matching
from .bits import bits, full_mask, mask_of
from .poset import Poset

__all__ = [
    "SetFamily",
    "width_of_masks",
    "union_closure",
    "intersection_closure",
    "filter_density",
    "kleitman_check",
]


def width_of_masks(masks: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Width of the inclusion order on ``masks`` plus one maximum antichain.

    Same matching construction as Poset.width, inlined on raw masks so the
    subfamily hot paths skip building poset objects.
    """
    m = len(masks)
    if m == 0:
        return 0, ()
    adj = [
        [j for j in range(m) if i != j and masks[i] & masks[j] == masks[i]]
        for i in range(m)
    ]
    size, match_l, match_r = max_matching(adj, m)
    w = m - size
    reach_l = {u for u in range(m) if match_l[u] == -1}
    reach_r: set[int] = set()
    frontier = list(reach_l)
    while frontier:
        u = frontier.pop()
        for v in adj[u]:
            if v not in reach_r:
                reach_r.add(v)
                t = match_r[v]
                if t != -1 and t not in reach_l:
                    reach_l.add(t)
                    frontier.append(t)
    witness = tuple(masks[i] for i in range(m) if i in reach_l and i not in reach_r)
    return w, witness


class SetFamily:
    __slots__ = ("n", "members", "_cache")

    def __init__(self, n: int, members: Iterable[int]):
        if n < 0:
            raise ValueError("negative ground size")
        top = full_mask(n)
        mem = sorted(set(members))
        for u in mem:
            if u & ~top:
                raise ValueError(f"member {u:b} leaves the ground set 0..{n - 1}")
        self.n = n
        self.members = tuple(mem)
        self._cache: dict = {}

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> "SetFamily":
        return cls(n, (mask_of(s) for s in sets))

    # -- plumbing -----------------------------------------------------

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, mask: int) -> bool:
        return mask in self._member_set()

    def _member_set(self) -> frozenset:
        got = self._cache.get("set")
        if got is None:
            got = frozenset(self.members)
            self._cache["set"] = got
        return got

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SetFamily)
            and self.n == other.n
            and self.members == other.members
        )

    def __hash__(self) -> int:
        return hash((self.n, self.members))

    def __repr__(self) -> str:
        shown = [sorted(bits(u)) for u in self.members]
        return f"SetFamily(n={self.n}, members={shown!r})"

    def as_sets(self) -> list[frozenset]:
        return [frozenset(bits(u)) for u in self.members]

    def with_members(self, extra: Iterable[int]) -> "SetFamily":
        return SetFamily(self.n, self.members + tuple(extra))

    # -- basic structure ----------------------------------------------

    @property
    def domain(self) -> int:
        """Mask of the union of all members."""
        got = self._cache.get("domain")
        if got is None:
            got = 0
            for u in self.members:
                got |= u
            self._cache["domain"] = got
        return got

    def uniform(self, r: int) -> tuple[int, ...]:
        """The members of cardinality exactly r."""
        return tuple(u for u in self.members if u.bit_count() == r)

    def contained_in(self, x: int) -> "SetFamily":
        return SetFamily(self.n, (u for u in self.members if u & ~x == 0))

    def containing(self, x: int) -> "SetFamily":
        return SetFamily(self.n, (u for u in self.members if u & x == x))

    def traced_on(self, x: int) -> "SetFamily":
        return SetFamily(self.n, (u & x for u in self.members))

    def minus(self, x: int) -> "SetFamily":
        return SetFamily(self.n, (u & ~x for u in self.members))

    def restrict(self, x: int, mode: str) -> "SetFamily":
        """The four restriction operators, keyed 'sub' | 'sup' | 'cap' | 'diff'."""
        ops = {
            "sub": self.contained_in,
            "sup": self.containing,
            "cap": self.traced_on,
            "diff": self.minus,
        }
        if mode not in ops:
            raise ValueError(f"unknown restriction mode {mode!r}")
        return ops[mode](x)

    def join(self, other: "SetFamily") -> "SetFamily":
        """Pairwise unions of members (the join F v G)."""
        n = max(self.n, other.n)
        return SetFamily(n, (u | v for u in self.members for v in other.members))

    def meet(self, other: "SetFamily") -> "SetFamily":
        n = max(self.n, other.n)
        return SetFamily(n, (u & v for u in self.members for v in other.members))

    def inclusion_poset(self) -> Poset:
        """Members ordered by inclusion; element i is self.members[i]."""
        got = self._cache.get("poset")
        if got is None:
            ms = self.members
            up = [
                mask_of(j for j, v in enumerate(ms) if u & v == u)
                for u in ms
            ]
            got = Poset(len(ms), up)
            self._cache["poset"] = got
        return got

    # -- width and local width ----------------------------------------

    def width(self) -> int:
        return width_of_masks(self.members)[0]

    def width_degree(self, x: int) -> int:
        if not 0 <= x < self.n:
            raise ValueError(f"element {x} out of range")
        bit = 1 << x
        return width_of_masks([u for u in self.members if u & bit])[0]

    def is_locally_k_wide(self, k: int):
        """True iff every width-degree is <= k.

        On failure also returns a witness: a (k+1)-antichain of members with
        a common element (any antichain of that size found, trimmed).
        """
        if k < 0:
            raise ValueError("k must be >= 0")
        for x in bits(self.domain):
            bit = 1 << x
            sub = [u for u in self.members if u & bit]
            w, witness = width_of_masks(sub)
            if w > k:
                return False, witness[: k + 1]
        return True, None

    # -- centers ------------------------------------------------------

    def center(self, a: int) -> int:
        """Elements of ``a`` that no member incomparable to ``a`` touches."""
        bad = 0
        for u in self.members:
            if u & a != a and u & a != u:  # neither a <= u nor u <= a
                bad |= u
        return a & ~bad

    def centers(self) -> list[int]:
        return [self.center(u) for u in self.members]

    def is_centered(self) -> bool:
        return all(self.center(u) for u in self.members)

    def uncentered_member(self):
        """A member with empty center, or None."""
        for u in self.members:
            if not self.center(u):
                return u
        return None

    # -- forests, trees, pseudotrees ----------------------------------

    def is_forest(self) -> bool:
        """Non-empty members, pairwise comparable or disjoint."""
        ms = self.members
        if any(u == 0 for u in ms):
            return False
        for i, u in enumerate(ms):
            for v in ms[i + 1 :]:
                inter = u & v
                if inter and inter != u and inter != v:
                    return False
        return True

    def is_tree(self) -> bool:
        if not self.members or not self.is_forest():
            return False
        dom = self.domain
        if dom not in self:
            return False
        return all((1 << x) in self for x in bits(dom))

    def tree_size_identity(self) -> tuple[int, int, int]:
        """(|F|, n, sum of r_i) for a tree; |F| = 2n - 1 - sum r_i holds.

        r_i counts the children beyond the second of each member with at
        least two elements (a member covering 2 + r sets in the inclusion
        order contributes r).
        """
        if not self.is_tree():
            raise ValueError("tree size identity needs a tree")
        poset = self.inclusion_poset()
        cover_counts = {j: 0 for j in range(len(self.members))}
        for i, j in poset.covers():
            cover_counts[j] += 1
        excess = 0
        for j, u in enumerate(self.members):
            if u.bit_count() >= 2:
                c = cover_counts[j]
                if c < 2:
                    raise AssertionError("tree member with fewer than 2 covers")
                excess += c - 2
        size = len(self.members)
        n = self.domain.bit_count()
        if size != 2 * n - 1 - excess:
            raise AssertionError("tree size identity violated")
        return size, n, excess

    def is_pseudotree(self, k: int | None = None) -> bool:
        """Centered family containing its domain and all singletons; with k,
        additionally locally k-wide."""
        dom = self.domain
        if dom == 0 or dom not in self:
            return False
        if any((1 << x) not in self for x in bits(dom)):
            return False
        if not self.is_centered():
            return False
        if k is not None and not self.is_locally_k_wide(k)[0]:
            return False
        return True

    def adjoin_domain_and_singletons(self) -> "SetFamily":
        dom = self.domain
        extra = [dom] + [1 << x for x in bits(dom)]
        return self.with_members(extra)

    # -- closures and generators --------------------------------------

    def is_union_closed(self) -> bool:
        ms = self._member_set()
        return all(u | v in ms for u in ms for v in ms)

    def is_intersection_closed(self) -> bool:
        ms = self._member_set()
        return all(u & v in ms for u in ms for v in ms)

    def generators(self) -> "SetFamily":
        """Members that are not unions of other members.

        The empty set counts as a generator when present: the only subfamily
        with empty union is {0} itself.
        """
        got = self._cache.get("gens")
        if got is not None:
            return got
        out = []
        for u in self.members:
            if u == 0:
                out.append(u)
                continue
            below = 0
            for v in self.members:
                if v != u and v & u == v:
                    below |= v
            if below != u:
                out.append(u)
        got = SetFamily(self.n, out)
        self._cache["gens"] = got
        return got

    # -- power-set filters (Kleitman) ---------------------------------

    def is_powerset_filter(self) -> bool:
        """Upward closed inside the power set of the ground set."""
        ms = self._member_set()
        for u in self.members:
            for x in range(self.n):
                if not (u >> x) & 1 and (u | (1 << x)) not in ms:
                    return False
        return True


def union_closure(family: SetFamily) -> SetFamily:
    """Unions of all non-empty subfamilies; the least union-closed superset."""
    ms = set(family.members)
    frontier = list(ms)
    while frontier:
        u = frontier.pop()
        for v in list(ms):
            w = u | v
            if w not in ms:
                ms.add(w)
                frontier.append(w)
    return SetFamily(family.n, ms)


def intersection_closure(family: SetFamily) -> SetFamily:
    ms = set(family.members)
    frontier = list(ms)
    while frontier:
        u = frontier.pop()
        for v in list(ms):
            w = u & v
            if w not in ms:
                ms.add(w)
                frontier.append(w)
    return SetFamily(family.n, ms)


def filter_density(family: SetFamily) -> Fraction:
    """|F| / 2^n for a filter F of the power set of the ground set."""
    if not family.is_powerset_filter():
        raise ValueError("not a filter of the power set")
    return Fraction(len(family), 1 << family.n)


def kleitman_check(f: SetFamily, g: SetFamily) -> bool:
    """Correlation of power-set filters: density(F n G) >= density(F) * density(G)."""
    if f.n != g.n:
        raise ValueError("filters live in different power sets")
    for fam in (f, g):
        if not fam.is_powerset_filter():
            raise ValueError("not a filter of the power set")
    common = len(f._member_set() & g._member_set())
    return Fraction(common, 1 << f.n) >= filter_density(f) * filter_density(g)
