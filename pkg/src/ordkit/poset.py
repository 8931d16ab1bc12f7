"""Finite partially ordered sets with exact structural queries.

Elements are 0..n-1.  The relation is stored as one bitmask per element
(bit j of ``up[i]`` set iff i <= j), so comparability tests and closures are
plain integer arithmetic.  Posets are immutable and hashable; every query is
deterministic, with ties always broken by ascending element index.

Width and chain decompositions go through maximum bipartite matching on the
strict-order graph: a maximum antichain has size n - |matching|, and the
matched edges glue elements into the minimum family of covering chains.
``brute_width`` walks all antichains instead and exists so tests can play
the two implementations against each other.
"""

from __future__ import annotations

import itertools
from collections import deque
from typing import Iterable, Iterator, Sequence

from .bipartite import max_matching
from .bits import bits, full_mask, mask_of

__all__ = [
    "Poset",
    "chain",
    "antichain",
    "layered",
    "antichain_under_top",
    "boolean_poset",
    "product",
    "disjoint_union",
    "order_maps",
    "count_order_maps",
    "all_order_maps",
]


class Poset:
    __slots__ = ("n", "_up", "_down", "_cache")

    def __init__(self, n: int, up_masks: Sequence[int]):
        if n < 0:
            raise ValueError("negative size")
        if len(up_masks) != n:
            raise ValueError("need one up-set mask per element")
        up = tuple(up_masks)
        top = full_mask(n)
        down = [0] * n
        for i in range(n):
            m = up[i]
            if m & ~top:
                raise ValueError(f"up-set of {i} leaves the ground set")
            if not (m >> i) & 1:
                raise ValueError(f"not reflexive at {i}")
            for j in bits(m):
                down[j] |= 1 << i
        for i in range(n):
            if up[i] & down[i] != 1 << i:
                raise ValueError(f"antisymmetry fails at {i}")
            for j in bits(up[i]):
                if up[j] & ~up[i]:
                    raise ValueError(f"transitivity fails at ({i}, {j})")
        self.n = n
        self._up = up
        self._down = tuple(down)
        self._cache: dict = {}

    # -- construction -------------------------------------------------

    @classmethod
    def from_covers(cls, n: int, covers: Iterable[tuple[int, int]]) -> "Poset":
        """Build from Hasse-style pairs (i, j) meaning i < j; cycles are rejected."""
        succ = [0] * n
        for i, j in covers:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"cover ({i}, {j}) out of range")
            if i == j:
                raise ValueError(f"self-cover at {i}")
            succ[i] |= 1 << j
        up = [(1 << i) | succ[i] for i in range(n)]
        # reflexive-transitive closure; if anything ever reaches back down to
        # itself the input had a cycle
        changed = True
        while changed:
            changed = False
            for i in range(n):
                m = up[i]
                acc = m
                for j in bits(m):
                    acc |= up[j]
                if acc != m:
                    up[i] = acc
                    changed = True
        for i in range(n):
            for j in bits(up[i] & ~(1 << i)):
                if (up[j] >> i) & 1:
                    raise ValueError("cover relation contains a cycle")
        return cls(n, up)

    @classmethod
    def from_leq_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Poset":
        """Order generated by arbitrary comparabilities i <= j.

        The pairs are closed transitively; a pair cycle would collapse
        distinct elements and is rejected instead.
        """
        up = [1 << i for i in range(n)]
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"pair ({i}, {j}) out of range")
            up[i] |= 1 << j
        for k in range(n):
            bit = 1 << k
            for i in range(n):
                if up[i] & bit:
                    up[i] |= up[k]
        for i in range(n):
            for j in bits(up[i] & ~(1 << i)):
                if up[j] & (1 << i):
                    raise ValueError(f"pairs force a cycle through {i} and {j}")
        return cls(n, up)

    # -- elementary queries -------------------------------------------

    def leq(self, i: int, j: int) -> bool:
        return bool((self._up[i] >> j) & 1)

    def lt(self, i: int, j: int) -> bool:
        return i != j and self.leq(i, j)

    def comparable(self, i: int, j: int) -> bool:
        return self.leq(i, j) or self.leq(j, i)

    def up_mask(self, i: int) -> int:
        return self._up[i]

    def down_mask(self, i: int) -> int:
        return self._down[i]

    def up_closure(self, mask: int) -> int:
        m = 0
        for i in bits(mask):
            m |= self._up[i]
        return m

    def down_closure(self, mask: int) -> int:
        m = 0
        for i in bits(mask):
            m |= self._down[i]
        return m

    def minimal_mask(self) -> int:
        return mask_of(i for i in range(self.n) if self._down[i] == 1 << i)

    def maximal_mask(self) -> int:
        return mask_of(i for i in range(self.n) if self._up[i] == 1 << i)

    def minimal_of(self, mask: int) -> int:
        """Minimal elements of the subset ``mask``."""
        return mask_of(i for i in bits(mask) if not (self._down[i] & mask & ~(1 << i)))

    def maximal_of(self, mask: int) -> int:
        return mask_of(i for i in bits(mask) if not (self._up[i] & mask & ~(1 << i)))

    def covers(self) -> list[tuple[int, int]]:
        """Hasse pairs (i, j) with j covering i, sorted."""
        got = self._cache.get("covers")
        if got is None:
            got = [
                (i, j)
                for i in range(self.n)
                for j in bits(self._up[i] & ~(1 << i))
                if self._up[i] & self._down[j] == (1 << i) | (1 << j)
            ]
            got.sort()
            self._cache["covers"] = got
        return got

    def hasse_preds(self, j: int) -> list[int]:
        preds = self._cache.get("hasse_preds")
        if preds is None:
            preds = [[] for _ in range(self.n)]
            for i, k in self.covers():
                preds[k].append(i)
            self._cache["hasse_preds"] = preds
        return preds[j]

    # -- chains, antichains, width ------------------------------------

    def is_antichain(self, mask: int) -> bool:
        for i in bits(mask):
            if (self._up[i] | self._down[i]) & mask & ~(1 << i):
                return False
        return True

    def is_chain(self, mask: int) -> bool:
        for i in bits(mask):
            if mask & ~(self._up[i] | self._down[i]):
                return False
        return True

    def all_antichains(self) -> list[int]:
        """Every antichain of the poset as a mask, sorted ascending (includes 0)."""
        got = self._cache.get("antichains")
        if got is None:
            out = [0]
            # grow by largest allowed element to visit each antichain once
            stack = [(0, 0)]  # (antichain mask, next candidate index)
            while stack:
                cur, start = stack.pop()
                for i in range(start, self.n):
                    if (self._up[i] | self._down[i]) & cur & ~(1 << i):
                        continue
                    ext = cur | (1 << i)
                    out.append(ext)
                    stack.append((ext, i + 1))
            out.sort()
            self._cache["antichains"] = out
            got = out
        return got

    def height(self) -> int:
        """Length (edge count) of a longest chain."""
        census = self.chain_census()
        return len(census) - 1

    def chain_census(self) -> tuple[int, ...]:
        """c_i = number of chains with i+1 elements, i = 0..height."""
        got = self._cache.get("census")
        if got is None:
            order = self.linear_extension()
            # ending[j][s] = chains of s+1 elements whose top is j
            ending = [[1] for _ in range(self.n)]
            for j in order:
                for i in bits(self._down[j] & ~(1 << j)):
                    for s, cnt in enumerate(ending[i]):
                        while len(ending[j]) <= s + 1:
                            ending[j].append(0)
                        ending[j][s + 1] += cnt
            h = max((len(e) for e in ending), default=1)
            census = [0] * h
            for e in ending:
                for s, cnt in enumerate(e):
                    census[s] += cnt
            got = tuple(census)
            self._cache["census"] = got
        return got

    def _strict_matching(self):
        got = self._cache.get("strict_matching")
        if got is None:
            adj = [sorted(bits(self._up[i] & ~(1 << i))) for i in range(self.n)]
            got = adj, max_matching(adj, self.n)
            self._cache["strict_matching"] = got
        return got

    def width(self) -> tuple[int, tuple[int, ...]]:
        """Maximum antichain size together with one maximum antichain.

        Koenig's cover of the strict-order matching marks the elements whose
        left copy is reachable and right copy is not; those form the witness.
        """
        got = self._cache.get("width")
        if got is None:
            adj, (size, match_l, match_r) = self._strict_matching()
            w = self.n - size
            reach_l = {u for u in range(self.n) if match_l[u] == -1}
            reach_r: set[int] = set()
            queue = deque(reach_l)
            while queue:
                u = queue.popleft()
                for v in adj[u]:
                    if v in reach_r:
                        continue
                    reach_r.add(v)
                    t = match_r[v]
                    if t != -1 and t not in reach_l:
                        reach_l.add(t)
                        queue.append(t)
            witness = tuple(i for i in range(self.n) if i in reach_l and i not in reach_r)
            if len(witness) != w or not self.is_antichain(mask_of(witness)):
                raise AssertionError("matching width witness is broken")
            got = (w, witness)
            self._cache["width"] = got
        return got

    def brute_width(self) -> int:
        """Width by plain antichain enumeration; test oracle for width()."""
        return max(m.bit_count() for m in self.all_antichains()) if self.n else 0

    def chain_decomposition(self) -> list[tuple[int, ...]]:
        """Partition into width-many chains (Dilworth), each ascending."""
        _, (size, match_l, match_r) = self._strict_matching()
        chains = []
        for i in range(self.n):
            if match_r[i] != -1:
                continue
            run = [i]
            while match_l[run[-1]] != -1:
                run.append(match_l[run[-1]])
            chains.append(tuple(run))
        return sorted(chains)

    def linear_extension(self) -> tuple[int, ...]:
        taken = 0
        out = []
        for _ in range(self.n):
            i = next(
                i
                for i in range(self.n)
                if not (taken >> i) & 1 and not (self._down[i] & ~taken & ~(1 << i))
            )
            out.append(i)
            taken |= 1 << i
        return tuple(out)

    # -- filters and ideals -------------------------------------------

    def is_filter(self, mask: int) -> bool:
        for i in bits(mask):
            if self._up[i] & ~mask:
                return False
        return True

    def is_ideal(self, mask: int) -> bool:
        for i in bits(mask):
            if self._down[i] & ~mask:
                return False
        return True

    def filters(self) -> list[int]:
        """All up-closed subsets as masks, ascending (0 and the full set included)."""
        got = self._cache.get("filters")
        if got is None:
            if self.n <= 16:
                got = [m for m in range(1 << self.n) if self.is_filter(m)]
            else:
                got = sorted(self._filters_dfs())
            self._cache["filters"] = got
        return got

    def _filters_dfs(self) -> set[int]:
        seen = {0}
        frontier = [0]
        while frontier:
            cur = frontier.pop()
            for i in range(self.n):
                if (cur >> i) & 1 or (self._up[i] & ~cur & ~(1 << i)):
                    continue
                ext = cur | (1 << i)
                if ext not in seen:
                    seen.add(ext)
                    frontier.append(ext)
        return seen

    def ideals(self) -> list[int]:
        top = full_mask(self.n)
        return sorted(top & ~f for f in self.filters())

    # -- transforms ---------------------------------------------------

    def dual(self) -> "Poset":
        return Poset(self.n, self._down)

    def subposet(self, mask: int) -> tuple["Poset", list[int]]:
        """Induced poset on the elements of ``mask``; returns it with the
        ascending list mapping new indices to old ones."""
        elems = list(bits(mask))
        pos = {e: i for i, e in enumerate(elems)}
        up = [mask_of(pos[j] for j in bits(self._up[e] & mask)) for e in elems]
        return Poset(len(elems), up), elems

    # -- isomorphism --------------------------------------------------

    def canonical_key(self) -> tuple:
        """Canonical form under relabelling; equal keys iff isomorphic.

        Colours are refined from degree data first, after which only
        colour-preserving permutations are tried.
        """
        got = self._cache.get("canon")
        if got is not None:
            return got
        n = self.n
        colour = [
            (self._down[i].bit_count(), self._up[i].bit_count()) for i in range(n)
        ]
        for _ in range(n):
            nxt = [
                (
                    colour[i],
                    tuple(sorted(colour[j] for j in bits(self._down[i] & ~(1 << i)))),
                    tuple(sorted(colour[j] for j in bits(self._up[i] & ~(1 << i)))),
                )
                for i in range(n)
            ]
            if len(set(nxt)) == len(set(colour)):
                colour = nxt
                break
            colour = nxt
        classes: dict = {}
        for i in range(n):
            classes.setdefault(colour[i], []).append(i)
        ordered = [classes[c] for c in sorted(classes)]
        best = None
        for parts in itertools.product(*(itertools.permutations(c) for c in ordered)):
            perm = [e for part in parts for e in part]  # new index -> old element
            pos = [0] * n
            for new, old in enumerate(perm):
                pos[old] = new
            rows = tuple(
                mask_of(pos[j] for j in bits(self._up[perm[a]])) for a in range(n)
            )
            if best is None or rows < best:
                best = rows
        got = (n, best)
        self._cache["canon"] = got
        return got

    def isomorphic(self, other: "Poset") -> bool:
        return self.canonical_key() == other.canonical_key()

    # -- plumbing -----------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Poset) and self.n == other.n and self._up == other._up

    def __hash__(self) -> int:
        return hash((self.n, self._up))

    def __repr__(self) -> str:
        return f"Poset({self.n}, covers={self.covers()!r})"


# -- stock posets ------------------------------------------------------


def chain(n: int) -> Poset:
    """The n-element chain 0 < 1 < ... < n-1."""
    return Poset(n, [full_mask(n) & ~full_mask(i) for i in range(n)])


def antichain(n: int) -> Poset:
    return Poset(n, [1 << i for i in range(n)])


def layered(w: int) -> Poset:
    """w stacked antichains of sizes w, w-1, ..., 1, every lower element below
    every higher one.  Size w(w+1)/2, width w, height w-1."""
    sizes = list(range(w, 0, -1))
    starts = [sum(sizes[:i]) for i in range(w + 1)]
    n = starts[-1]
    up = []
    for layer, size in enumerate(sizes):
        above = full_mask(n) & ~full_mask(starts[layer + 1])
        for off in range(size):
            i = starts[layer] + off
            up.append((1 << i) | above)
    return Poset(n, up)


def antichain_under_top(k: int) -> Poset:
    """k pairwise incomparable elements 0..k-1, all below a single top k."""
    top = 1 << k
    return Poset(k + 1, [(1 << i) | top for i in range(k)] + [top])


def boolean_poset(k: int) -> Poset:
    """Subsets of a k-set ordered by inclusion; element index = subset mask."""
    n = 1 << k
    up = []
    for s in range(n):
        m = 0
        for t in range(n):
            if s & t == s:
                m |= 1 << t
        up.append(m)
    return Poset(n, up)


def product(p: Poset, q: Poset) -> Poset:
    """Componentwise order on pairs; (i, j) lives at index i*|Q| + j."""
    up = []
    for i in range(p.n):
        for j in range(q.n):
            m = 0
            for a in bits(p.up_mask(i)):
                for b in bits(q.up_mask(j)):
                    m |= 1 << (a * q.n + b)
            up.append(m)
    return Poset(p.n * q.n, up)


def disjoint_union(p: Poset, q: Poset) -> Poset:
    up = [p.up_mask(i) for i in range(p.n)]
    up += [q.up_mask(j) << p.n for j in range(q.n)]
    return Poset(p.n + q.n, up)


# -- order-preserving maps ---------------------------------------------


def all_order_maps(p: Poset, q: Poset) -> Iterator[tuple[int, ...]]:
    """Yield every order-preserving map P -> Q as a tuple indexed by element.

    Backtracks along a fixed linear extension of P; targets are tried in
    ascending index, so the stream order is reproducible.
    """
    if p.n == 0:
        yield ()
        return
    if q.n == 0:
        return
    order = p.linear_extension()
    img = [0] * p.n
    qfull = full_mask(q.n)

    def rec(pos: int) -> Iterator[tuple[int, ...]]:
        if pos == p.n:
            yield tuple(img)
            return
        x = order[pos]
        allowed = qfull
        for y in p.hasse_preds(x):
            allowed &= q.up_mask(img[y])
            if not allowed:
                return
        for v in bits(allowed):
            img[x] = v
            yield from rec(pos + 1)

    yield from rec(0)


def order_maps(p: Poset, q: Poset) -> list[tuple[int, ...]]:
    return list(all_order_maps(p, q))


def count_order_maps(p: Poset, q: Poset) -> int:
    return sum(1 for _ in all_order_maps(p, q))
