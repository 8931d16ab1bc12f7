"""Extremal families: constructors, closed-form bounds, exhaustive search.

Ground sets are 0..n-1.  Segments are intervals of that line; arcs live on
the n-cycle, where an arc is a run of consecutive residues that is not the
whole cycle.  The full cycle and the empty set appear as members only where
a construction puts them there.

The example families are addressed by short tags ("3.4.2", "3.6.7", ...)
through gen(); the same tags name the fixtures and the CLI arguments.
bound() returns the closed-form size bounds by class, S() the segment
maximum by recursion, left_overlap_reduction() the arc decomposition that
drives the arc bound, and max_search() certifies small cases exhaustively.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .bits import bits, full_mask
from .families import SetFamily, width_of_masks
from .poset import Poset, layered

__all__ = [
    "GEN_TAGS",
    "BOUND_CLASSES",
    "SearchBudgetExceeded",
    "BoundReport",
    "ReductionResult",
    "arc_mask",
    "proper_arcs",
    "arc_endpoints",
    "is_arc",
    "segment_masks",
    "S",
    "ln_upper",
    "bound",
    "gen",
    "left_overlap_reduction",
    "max_search",
]

GEN_TAGS = ("3.3.2", "3.3.4", "3.4.2", "3.6.2", "3.6.7", "3.8.2", "3.8.4", "3.7.9")
BOUND_CLASSES = (
    "uniform-r",
    "general",
    "general-log",
    "centered",
    "pseudotree",
    "segments",
    "arcs",
)


class SearchBudgetExceeded(RuntimeError):
    """max_search refused: the requested search exceeds its node budget."""


# -- arcs and segments ------------------------------------------------


def arc_mask(n: int, left: int, right: int) -> int:
    """Mask of the arc running clockwise from left to right on the n-cycle.

    The full cycle does not count as an arc, so right may not be the
    residue just before left.
    """
    if n <= 0:
        raise ValueError("cycle must have at least one element")
    left %= n
    right %= n
    if (right + 1) % n == left:
        raise ValueError("full cycle is not an arc")
    if left <= right:
        return ((1 << (right + 1)) - 1) & ~((1 << left) - 1)
    return (full_mask(n) & ~((1 << left) - 1)) | ((1 << (right + 1)) - 1)


def proper_arcs(n: int) -> list[int]:
    """All non-empty arc masks of the n-cycle, sorted."""
    out = set()
    for left in range(n):
        for size in range(1, n):
            out.add(arc_mask(n, left, (left + size - 1) % n))
    return sorted(out)


def arc_endpoints(n: int, mask: int) -> tuple[int, int] | None:
    """(left, right) endpoints of an arc mask; None for empty or full."""
    if mask == 0 or mask == full_mask(n):
        return None
    ends = [
        x for x in bits(mask) if not (mask >> ((x - 1) % n)) & 1
    ]
    if len(ends) != 1:
        raise ValueError("mask is not an arc")
    left = ends[0]
    size = mask.bit_count()
    return left, (left + size - 1) % n


def is_arc(n: int, mask: int) -> bool:
    if mask == 0 or mask == full_mask(n):
        return False
    try:
        left, right = arc_endpoints(n, mask)
    except ValueError:
        return False
    return arc_mask(n, left, right) == mask


def segment_masks(n: int) -> list[int]:
    """All non-empty segment masks of the line 0..n-1, sorted."""
    out = []
    for i in range(n):
        for j in range(i, n):
            out.append(((1 << (j + 1)) - 1) & ~((1 << i) - 1))
    return sorted(set(out))


def _segment(i: int, j: int) -> int:
    return ((1 << (j + 1)) - 1) & ~((1 << i) - 1)


# -- closed forms -----------------------------------------------------


@lru_cache(maxsize=None)
def S(k: int, n: int) -> int:
    """Maximum size of a locally k-wide family of segments on n points."""
    if k < 0 or n < 0:
        raise ValueError("k and n must be non-negative")
    if k == 0 or n == 0:
        return 1
    if n == 1:
        return 2
    return 2 * n - 1 + S(k - 1, n - 2)


def ln_upper(x: int, terms: int = 32) -> Fraction:
    """A rational upper bound on ln(x) for integer x >= 1.

    Partial sum of 2*atanh((x-1)/(x+1)) plus a geometric tail bound, so the
    result is always >= ln(x); with the default number of terms the slack
    is far below 1e-12 for x <= 10**6.
    """
    if x < 1:
        raise ValueError("ln_upper needs x >= 1")
    if x == 1:
        return Fraction(0)
    z = Fraction(x - 1, x + 1)
    z2 = z * z
    total = Fraction(0)
    power = z
    for j in range(terms):
        total += power / (2 * j + 1)
        power *= z2
    tail = power / ((2 * terms + 1) * (1 - z2))
    return 2 * (total + tail)


class BoundReport:
    """A closed-form size bound with its parameters and attained size."""

    __slots__ = ("cls", "k", "n", "r", "bound", "attained", "exact")

    def __init__(self, cls, k, n, r, bound_value, attained, exact=True):
        self.cls = cls
        self.k = k
        self.n = n
        self.r = r
        self.bound = bound_value
        self.attained = attained
        self.exact = exact  # False when the bound carries a rational envelope

    def __repr__(self):
        return (
            f"BoundReport(cls={self.cls!r}, k={self.k}, n={self.n}, r={self.r}, "
            f"bound={self.bound!r}, attained={self.attained!r})"
        )

    def as_dict(self) -> dict:
        out = {"class": self.cls, "bound": self.bound}
        if self.k is not None:
            out["k"] = self.k
        if self.n is not None:
            out["n"] = self.n
        if self.r is not None:
            out["r"] = self.r
        if self.attained is not None:
            out["attained"] = self.attained
        if not self.exact:
            out["envelope"] = "rational-upper"
        return out


def bound(cls: str, k: int | None = None, n: int | None = None, r: int | None = None) -> BoundReport:
    """Closed-form size bound for the given class of families.

    uniform-r   members of size r in a locally k-wide family: kn/r
    general     locally k-wide family on n points: (2k)^(k-1) * n
    general-log locally k-wide family on n points: 2 + n + kn*ln(n-1),
                reported with a rational upper bound on the logarithm
    centered    centered family on n points: n(n+1)/2
    pseudotree  k-pseudotree on n points (n > k): (k+1)n - (k+1)k/2
    segments    locally k-wide segments (n >= 2k): 2kn - 2k^2 + k + 1
    arcs        locally k-wide arcs: 2kn - k + 1
    """
    if cls not in BOUND_CLASSES:
        raise ValueError(f"unknown bound class {cls!r}")
    if cls == "uniform-r":
        if k is None or n is None or r is None:
            raise ValueError("uniform-r needs k, n and r")
        if r < 2 or k < 1 or n < 0:
            raise ValueError("uniform-r needs r >= 2, k >= 1, n >= 0")
        value = Fraction(n * k, r)
        if value.denominator == 1:
            value = int(value)
        return BoundReport(cls, k, n, r, value, None)
    if cls == "general":
        if k is None or n is None or k < 2 or n < 1:
            raise ValueError("general needs k >= 2 and n >= 1")
        attained = len(gen("3.8.2", n=n, k=k))
        return BoundReport(cls, k, n, None, (2 * k) ** (k - 1) * n, attained)
    if cls == "general-log":
        if k is None or n is None or k < 1 or n < 2:
            raise ValueError("general-log needs k >= 1 and n >= 2")
        value = 2 + n + k * n * ln_upper(n - 1)
        return BoundReport(cls, k, n, None, value, None, exact=False)
    if cls == "centered":
        if n is None or n < 1:
            raise ValueError("centered needs n >= 1")
        value = (n + 1) * n // 2
        return BoundReport(cls, None, n, None, value, len(gen("3.3.2", n=n)))
    if cls == "pseudotree":
        if k is None or n is None or not n > k or k < 1:
            raise ValueError("pseudotree needs k >= 1 and n > k")
        value = (k + 1) * n - (k + 1) * k // 2
        return BoundReport(cls, k, n, None, value, len(gen("3.4.2", n=n, k=k)))
    if cls == "segments":
        if k is None or n is None or k < 1 or n < 2 * k:
            raise ValueError("segments closed form needs k >= 1 and n >= 2k")
        value = 2 * k * n - 2 * k * k + k + 1
        return BoundReport(cls, k, n, None, value, S(k, n))
    # arcs
    if k is None or n is None or k < 1 or n < 1:
        raise ValueError("arcs needs k >= 1 and n >= 1")
    attained = len(gen("3.6.2", n=n, k=min(k, n)))
    return BoundReport(cls, k, n, None, 2 * k * n - k + 1, attained)


# -- constructors ------------------------------------------------------


def _gen_332(n: int) -> SetFamily:
    # prefixes of length i-1 with one extra element at or past position i
    members = []
    for i in range(1, n + 1):
        prefix = (1 << (i - 1)) - 1
        for j in range(i - 1, n):
            members.append(prefix | (1 << j))
    return SetFamily(n, members)


def _gen_334(n: int) -> SetFamily:
    members = []
    top = full_mask(n)
    for i in range(n):
        members.append(1 << i)
        members.append((1 << (i + 1)) - 1)
        members.append(top & ~((1 << i) - 1))
    return SetFamily(n, members)


def _gen_342(k: int, n: int) -> SetFamily:
    if not 0 < k < n:
        raise ValueError("needs 0 < k < n")
    members = [1 << x for x in range(n)]
    for i in range(1, n):
        prefix = (1 << i) - 1
        for j in range(i + 1, min(i + k, n) + 1):
            members.append(prefix | (1 << (j - 1)))
    return SetFamily(n, members)


def _gen_362(k: int, n: int) -> SetFamily:
    if not 0 <= k <= n or n < 1:
        raise ValueError("needs 0 <= k <= n")
    members = [0, full_mask(n)]
    for a in proper_arcs(n):
        left, _right = arc_endpoints(n, a)
        if a.bit_count() <= k or left <= k - 1:
            members.append(a)
    return SetFamily(n, members)


def _gen_367(k: int, n: int) -> SetFamily:
    if k < 0 or n < 0:
        raise ValueError("needs k, n >= 0")
    members = [0]
    for i in range(n):
        for j in range(i, n):
            if j - i + 1 <= k or i <= k - 1:
                members.append(_segment(i, j))
    return SetFamily(n, members)


def _trace(points: Iterable[int], n: int) -> int:
    mask = 0
    for p in points:
        if 1 <= p <= n:
            mask |= 1 << (p - 1)
    return mask


def _gen_382(k: int, n: int) -> SetFamily:
    """The unbounded layered construction restricted to the first n points."""
    if k < 2 or n < 1:
        raise ValueError("needs k >= 2 and n >= 1")
    members = {0, full_mask(n)}
    for j in range(1, k + 1):
        for i in range(2 - j, n + 1):
            members.add(_trace(range(i, i + j), n))
        for l in range(j, n + 1):
            members.add(_trace(range(j, l + 1), n))
    for j in range(3, k + 1):
        half = j - 1
        period = 2 * half
        for x in range(-period - j, n + period + j):
            if x % period == 1 % period:
                for i in range(x, x + half - 1):
                    members.add(_trace(list(range(x, i + 1)) + [x + half], n))
            if x % period == 0:
                for i in range(x - half + 2, x + 1):
                    members.add(_trace([x - half] + list(range(i, x + 1)), n))
    return SetFamily(n, members)


def _gen_384(n: int) -> SetFamily:
    """Short segments, four anchored chains, skip pairs, staggered triples."""
    if n < 1:
        raise ValueError("needs n >= 1")
    members = {0}
    for size in range(1, 5):
        for i in range(2 - size, n + 1):
            members.add(_trace(range(i, i + size), n))
    for i in range(1, 5):
        for l in range(i, n + 1):
            members.add(_trace(range(i, l + 1), n))
    for i in range(-1, n + 1):
        members.add(_trace([i, i + 2], n))
    lo = -(n // 6) - 2
    hi = n // 6 + 2
    for i in range(lo, hi + 1):
        members.add(_trace([6 * i, 6 * i + 1, 6 * i + 3], n))
        members.add(_trace([6 * i + 2, 6 * i + 4, 6 * i + 5], n))
    return SetFamily(n, members)


def gen(tag: str, n: int | None = None, k: int | None = None):
    """Build the example family (or poset) named by ``tag``.

    Tags and parameters:
      3.3.2 (n)     centered family of size n(n+1)/2
      3.3.4 (n)     centered segment family of size 3n-3
      3.4.2 (k, n)  k-pseudotree of size (k+1)n - k(k+1)/2
      3.6.2 (k, n)  locally k-wide arcs, size 2kn - k^2 - k + 2
      3.6.7 (k, n)  locally k-wide segments of size S(k, n)
      3.8.2 (k, n)  locally k-wide sets, ~3kn members as n grows
      3.8.4 (n)     locally 4-wide sets, ~28n/3 members as n grows
      3.7.9 (n)     the layered poset of width n (returns a Poset)
    """
    if tag not in GEN_TAGS:
        raise ValueError(f"unknown tag {tag!r}; known: {', '.join(GEN_TAGS)}")
    if n is None:
        raise ValueError("n is required")
    needs_k = tag in ("3.4.2", "3.6.2", "3.6.7", "3.8.2")
    if needs_k and k is None:
        raise ValueError(f"tag {tag} needs k")
    if not needs_k and k is not None:
        raise ValueError(f"tag {tag} takes no k")
    if tag == "3.3.2":
        return _gen_332(n)
    if tag == "3.3.4":
        return _gen_334(n)
    if tag == "3.4.2":
        return _gen_342(k, n)
    if tag == "3.6.2":
        return _gen_362(k, n)
    if tag == "3.6.7":
        return _gen_367(k, n)
    if tag == "3.8.2":
        return _gen_382(k, n)
    if tag == "3.8.4":
        return _gen_384(n)
    return layered(n)


# -- the left overlap reduction ---------------------------------------


class ReductionResult:
    """Outcome of the left overlap reduction of an arc family.

    fr holds the members with their left overlap removed, fbar the left
    overlaps themselves.  sigma_r and sigma_bar map each of those parts
    back to the smallest original member producing it; together they cover
    the whole family when the reduction behaves as intended.
    """

    __slots__ = ("family", "fr", "fbar", "sigma_r", "sigma_bar", "lmap", "ubar")

    def __init__(self, family, fr, fbar, sigma_r, sigma_bar, lmap, ubar):
        self.family = family
        self.fr = fr
        self.fbar = fbar
        self.sigma_r = sigma_r
        self.sigma_bar = sigma_bar
        self.lmap = lmap
        self.ubar = ubar

    def image(self) -> tuple[int, ...]:
        out = set(self.sigma_r.values()) | set(self.sigma_bar.values())
        return tuple(sorted(out))

    def is_surjective(self) -> bool:
        return self.image() == self.family.members


def left_overlap_reduction(family: SetFamily, k: int | None = None) -> ReductionResult:
    """Split an arc family into a narrow part and its left overlaps.

    Every member must be empty, the full cycle, or an arc.  For each arc U
    the reduction finds an incomparable member covering U's left end with
    the longest reach into U; the covered stretch is U's left overlap.
    Among equally long reaches the member with the smallest left endpoint,
    then the smallest right endpoint, is recorded.
    """
    n = family.n
    full = full_mask(n)
    ends = {}
    for u in family.members:
        if u != 0 and u != full:
            ends[u] = arc_endpoints(n, u)

    lmap = {}
    ubar = {}
    for u in family.members:
        if u == 0 or u == full:
            lmap[u] = 0
            ubar[u] = 0
            continue
        ul, _ur = ends[u]
        best = None  # (overlap size, v_left, v_right, v mask)
        for v in family.members:
            if v == 0 or v == full or v == u:
                continue
            if v & u == v or v & u == u:
                continue  # comparable
            if not (v >> ul) & 1:
                continue  # does not cover U's left end
            vl, vr = ends[v]
            size = (vr - ul) % n + 1
            key = (-size, vl, vr)
            if best is None or key < best[0]:
                best = (key, v, vr)
        if best is None:
            lmap[u] = 0
            ubar[u] = 0
        else:
            _key, v, vr = best
            overlap = arc_mask(n, ul, vr)
            if overlap & ~u:
                raise AssertionError("left overlap escapes the member")
            lmap[u] = v
            ubar[u] = overlap

    rest = {}
    bars = {}
    for u in family.members:
        rest.setdefault(u & ~ubar[u], []).append(u)
        if ubar[u]:
            bars.setdefault(ubar[u], []).append(u)

    def minimal(preimage: list[int]) -> int:
        chain = sorted(preimage, key=int.bit_count)
        for a, b in zip(chain, chain[1:]):
            if a & b != a:
                raise AssertionError("preimage of the reduction is not a chain")
        return chain[0]

    sigma_r = {a: minimal(us) for a, us in rest.items()}
    sigma_bar = {a: minimal(us) for a, us in bars.items()}
    fr = SetFamily(n, rest.keys())
    fbar = SetFamily(n, ubar.values())
    return ReductionResult(family, fr, fbar, sigma_r, sigma_bar, lmap, ubar)


# -- exhaustive search -------------------------------------------------

SEARCH_CLASSES = ("all", "centered", "pseudotree", "arcs", "segments")


def _candidate_pool(cls: str, n: int) -> list[int]:
    if cls == "arcs":
        return [0] + proper_arcs(n) + [full_mask(n)]
    if cls == "segments":
        return [0] + segment_masks(n)
    if cls == "all":
        return list(range(1 << n))
    # centered and pseudotree families never contain the empty set
    return list(range(1, 1 << n))


def _bad_tuples(pool: list[int], k: int, budget: int) -> list[list[tuple[int, ...]]]:
    """For each pool index c, the (k+1)-antichains with common point whose
    largest index is c, given as tuples of the other indices."""
    m = len(pool)
    if k < 1:
        raise ValueError("k must be >= 1")
    est = 1
    for i in range(k + 1):
        est = est * (m - i) // (i + 1)
    if est > budget:
        raise SearchBudgetExceeded(
            f"{est} candidate antichains exceed the budget of {budget}"
        )
    out: list[list[tuple[int, ...]]] = [[] for _ in range(m)]
    for idxs in combinations(range(m), k + 1):
        common = pool[idxs[0]]
        for i in idxs[1:]:
            common &= pool[i]
        if not common:
            continue
        ok = True
        for a, b in combinations(idxs, 2):
            u, v = pool[a], pool[b]
            if u & v == u or u & v == v:
                ok = False
                break
        if ok:
            out[idxs[-1]].append(idxs[:-1])
    return out


class _Search:
    def __init__(self, budget: int):
        self.budget = budget
        self.nodes = 0
        self.best_size = -1
        self.best: tuple[int, ...] = ()

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded(
                f"search exceeded its node budget of {self.budget}"
            )

    def offer(self, masks: list[int]):
        size = len(masks)
        tup = tuple(sorted(masks))
        if size > self.best_size or (size == self.best_size and tup < self.best):
            self.best_size = size
            self.best = tup


def _search_wide(pool: list[int], k: int, n: int, state: _Search,
                 forced_idx: list[int] | None = None,
                 centered_too: bool = False):
    bad = _bad_tuples(pool, k, state.budget)
    m = len(pool)
    forced = set(forced_idx or ())

    def centers_after_add(cur: list[int], centers: list[int], w: int):
        new_centers = []
        cw = w
        for u, c in zip(cur, centers):
            if u & w != w and u & w != u:
                c &= ~w
                if not c:
                    return None
                cw &= ~u
            new_centers.append(c)
        if not cw:
            return None
        new_centers.append(cw)
        return new_centers

    def rec(c: int, chosen_idx: int, cur: list[int], centers: list[int] | None):
        state.tick()
        if c == m:
            state.offer(cur)
            return
        remaining = m - c
        if len(cur) + remaining < state.best_size:
            return
        # try including pool[c]
        ok = True
        for others in bad[c]:
            if all((chosen_idx >> i) & 1 for i in others):
                ok = False
                break
        new_centers = None
        if ok and centered_too:
            new_centers = centers_after_add(cur, centers, pool[c])
            ok = new_centers is not None
        if ok:
            cur.append(pool[c])
            rec(c + 1, chosen_idx | (1 << c), cur,
                new_centers if centered_too else None)
            cur.pop()
        if c not in forced:
            rec(c + 1, chosen_idx, cur, centers)

    # preload forced members in pool order
    cur: list[int] = []
    centers: list[int] = []
    chosen = 0
    for i in sorted(forced):
        w = pool[i]
        if centered_too:
            got = centers_after_add(cur, centers, w)
            if got is None:
                raise AssertionError("forced members are not centered")
            centers = got
        cur.append(w)
        chosen |= 1 << i
    if forced:
        # walk the pool but skip decisions already made
        def rec_forced(c, chosen_idx, cur, centers):
            state.tick()
            if c == m:
                state.offer(cur)
                return
            if c in forced:
                rec_forced(c + 1, chosen_idx, cur, centers)
                return
            if len(cur) + (m - c) < state.best_size:
                return
            ok = True
            for others in bad[c]:
                if all((chosen_idx >> i) & 1 for i in others):
                    ok = False
                    break
            new_centers = None
            if ok and centered_too:
                new_centers = centers_after_add(cur, centers, pool[c])
                ok = new_centers is not None
            if ok:
                cur.append(pool[c])
                rec_forced(c + 1, chosen_idx | (1 << c), cur,
                           new_centers if centered_too else centers)
                cur.pop()
            rec_forced(c + 1, chosen_idx, cur, centers)

        rec_forced(0, chosen, cur, centers if centered_too else None)
    else:
        rec(0, 0, [], [] if centered_too else None)


def _search_centered(pool: list[int], state: _Search):
    m = len(pool)

    def rec(c: int, cur: list[int], centers: list[int]):
        state.tick()
        if c == m:
            state.offer(cur)
            return
        if len(cur) + (m - c) < state.best_size:
            return
        w = pool[c]
        new_centers = []
        cw = w
        ok = True
        for u, cen in zip(cur, centers):
            if u & w != w and u & w != u:
                cen = cen & ~w
                if not cen:
                    ok = False
                    break
                cw &= ~u
            new_centers.append(cen)
        if ok and cw:
            cur.append(w)
            new_centers.append(cw)
            rec(c + 1, cur, new_centers)
            cur.pop()
        rec(c + 1, cur, centers)

    rec(0, [], [])


def max_search(cls: str, k: int | None, n: int,
               budget: int = 5_000_000) -> tuple[int, SetFamily]:
    """Exhaustive maximum family size in a class, with a smallest witness.

    Classes: all (locally k-wide families of any sets), centered,
    pseudotree (k-pseudotrees), arcs and segments (locally k-wide).
    Raises SearchBudgetExceeded instead of starting a search that cannot
    finish within the node budget.
    """
    if cls not in SEARCH_CLASSES:
        raise ValueError(f"unknown search class {cls!r}")
    if n < 1:
        raise ValueError("n must be >= 1")
    if cls != "centered" and (k is None or k < 1):
        raise ValueError("this class needs k >= 1")
    pool = _candidate_pool(cls, n)
    if len(pool) > 64:
        raise SearchBudgetExceeded(
            f"candidate pool of {len(pool)} members is past the supported size"
        )
    state = _Search(budget)
    if cls == "centered":
        _search_centered(pool, state)
    elif cls == "pseudotree":
        forced = [1 << x for x in range(n)] + [full_mask(n)]
        forced_idx = [pool.index(w) for w in forced]
        _search_wide(pool, k, n, state, forced_idx=forced_idx, centered_too=True)
    else:
        _search_wide(pool, k, n, state)
    return state.best_size, SetFamily(n, state.best)
