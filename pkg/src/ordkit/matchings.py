"""Matchings between type classes of order-preserving maps.

Maps from a poset P into a semilattice L split into classes by where
they sit above a fixed element a: the class of f is the filter
{x | f(x) >= a}.  This module decides the matching properties between
those classes (full, top and weak, in both directions), constructs
explicit matchings for lower semimodular coatoms and for geometric and
dual geometric lattices, and transfers matchings along sums,
ideals, products, subdirect products and lattice neighborhoods.

Every constructor re-validates its output before returning it; nothing
is trusted on the strength of the construction alone.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping

from .bipartite import hall_violator, max_matching
from .bits import bits, full_mask, mask_of
from .extremal import SearchBudgetExceeded
from .families import SetFamily
from .lattices import (
    MeetSemilattice,
    bowtie,
    is_meet_concave,
    extend_independent,
    independent_atoms_for,
    is_independent_atoms,
    lattice_neighborhood,
    project,
)
from .poset import Poset, all_order_maps, chain, disjoint_union

KINDS = (
    "full-down",
    "top-down",
    "weak-down",
    "full-up",
    "top-up",
    "weak-up",
)


def _maps_into(L: MeetSemilattice, P: Poset, universe: int | None) -> tuple:
    """All order maps P -> L, optionally restricted to an element mask."""
    key = ("maps", P, universe)
    got = L._cache.get(key)
    if got is None:
        if universe is None:
            got = tuple(all_order_maps(P, L.order))
        else:
            got = tuple(
                f
                for f in all_order_maps(P, L.order)
                if all(universe >> v & 1 for v in f)
            )
        L._cache[key] = got
    return got


def _class_of(L: MeetSemilattice, f: tuple, a: int) -> int:
    return mask_of(x for x, v in enumerate(f) if L.leq(a, v))


def _type_classes(
    L: MeetSemilattice, P: Poset, a: int, universe: int | None = None
) -> dict[int, tuple]:
    """Class mask -> tuple of maps; every filter of P gets an entry."""
    key = ("types", P, a, universe)
    got = L._cache.get(key)
    if got is None:
        classes: dict[int, list] = {fm: [] for fm in P.filters()}
        for f in _maps_into(L, P, universe):
            classes[_class_of(L, f, a)].append(f)
        got = {fm: tuple(fs) for fm, fs in classes.items()}
        L._cache[key] = got
    return got


def _admissible(L: MeetSemilattice, a: int, upward: bool) -> None:
    if upward:
        if a not in L.join_irreducibles():
            raise ValueError(
                "upward matching properties need a proper join-irreducible"
            )
    else:
        if a != L.bottom and a not in L.join_irreducibles():
            raise ValueError(f"element {a} is not join-irreducible")


def type_partition(L: MeetSemilattice, P: Poset, a: int) -> dict[int, tuple]:
    """Partition the order maps P -> L by their filter class over a."""
    _admissible(L, a, upward=False)
    return dict(_type_classes(L, P, a))


class Matching:
    """A verified injection between two type classes.

    pairs maps every member of the source class to a distinct member of
    the target class, moving pointwise down (direction "down") or up
    ("up").  When a_invertible is set, each source map can be recovered
    from its image by joining a back on over the source filter.
    """

    __slots__ = (
        "direction",
        "a",
        "source_filter",
        "target_filter",
        "pairs",
        "a_invertible",
        "universe",
    )

    def __init__(
        self,
        direction: str,
        a: int,
        source_filter: int,
        target_filter: int,
        pairs: Mapping[tuple, tuple],
        a_invertible: bool = False,
        universe: int | None = None,
    ):
        if direction not in ("down", "up"):
            raise ValueError(f"unknown direction {direction!r}")
        self.direction = direction
        self.a = a
        self.source_filter = source_filter
        self.target_filter = target_filter
        self.pairs = dict(pairs)
        self.a_invertible = a_invertible
        self.universe = universe

    def __len__(self) -> int:
        return len(self.pairs)

    def __repr__(self) -> str:
        return (
            f"<Matching {self.direction} a={self.a} "
            f"{self.source_filter:#x}->{self.target_filter:#x} "
            f"size {len(self.pairs)}>"
        )

    def validate(self, L: MeetSemilattice, P: Poset) -> "Matching":
        """Check totality, injectivity, direction and membership.

        Raises AssertionError on any violation; returns self so calls
        can be chained onto construction.
        """
        classes = _type_classes(L, P, self.a, self.universe)
        source = classes.get(self.source_filter)
        target = classes.get(self.target_filter)
        assert source is not None and target is not None, "not filters of P"
        assert set(self.pairs) == set(source), "matching is not total"
        values = list(self.pairs.values())
        assert len(set(values)) == len(values), "matching is not injective"
        tset = set(target)
        down = self.direction == "down"
        for f, g in self.pairs.items():
            assert g in tset, "image leaves the target class"
            for x in range(P.n):
                if down:
                    assert L.leq(g[x], f[x]), "matching fails to decrease"
                else:
                    assert L.leq(f[x], g[x]), "matching fails to increase"
            if self.a_invertible:
                for x in range(P.n):
                    if self.source_filter >> x & 1:
                        back = L.join(g[x], self.a)
                        assert back == f[x], "a-recovery fails on the filter"
                    else:
                        assert g[x] == f[x], "a-recovery moved an off-filter value"
        return self


class CheckOutcome:
    """Result of a matching-property check.

    ok is the verdict; a is the witnessing element when ok (or the one
    that was requested).  matchings maps (source, target) filter pairs
    to verified Matchings for the exact kinds; counts carries the class
    sizes for the weak kinds; failures lists one certificate per failed
    candidate as (a, source, target, note).
    """

    __slots__ = ("ok", "kind", "a", "matchings", "counts", "failures")

    def __init__(self, ok, kind, a, matchings=None, counts=None, failures=()):
        self.ok = ok
        self.kind = kind
        self.a = a
        self.matchings = matchings or {}
        self.counts = counts or {}
        self.failures = list(failures)

    def __bool__(self) -> bool:
        return self.ok

    def __repr__(self) -> str:
        return f"<CheckOutcome {self.kind} ok={self.ok} a={self.a}>"


def _filter_pairs(P: Poset, kind: str) -> list[tuple[int, int]]:
    """The (source, target) filter pairs a kind has to cover."""
    filters = P.filters()
    whole = full_mask(P.n)
    shape, _, direction = kind.partition("-")
    out = []
    if direction == "down":
        if shape == "full":
            for fm in filters:
                for gm in filters:
                    if gm & ~fm == 0 and gm != fm:
                        out.append((fm, gm))
        else:
            out = [(whole, gm) for gm in filters if gm != whole]
    else:
        if shape == "full":
            for fm in filters:
                for gm in filters:
                    if fm & ~gm == 0 and gm != fm:
                        out.append((fm, gm))
        else:
            out = [(0, gm) for gm in filters if gm != 0]
    return out


def _decide_for(
    L: MeetSemilattice, P: Poset, a: int, kind: str
) -> tuple[bool, dict, dict, tuple]:
    """Check one candidate element; returns (ok, matchings, counts, failure)."""
    classes = _type_classes(L, P, a)
    shape = kind.split("-")[0]
    down = kind.endswith("down")
    matchings: dict = {}
    counts = {fm: len(fs) for fm, fs in classes.items()}
    for fm, gm in _filter_pairs(P, kind):
        source = classes[fm]
        target = classes[gm]
        if shape == "weak":
            if len(source) > len(target):
                return False, {}, counts, (a, fm, gm, "source class is larger")
            continue
        index = {g: j for j, g in enumerate(target)}
        adj = []
        for f in source:
            row = []
            for j, g in enumerate(target):
                if down:
                    good = all(L.leq(g[x], f[x]) for x in range(P.n))
                else:
                    good = all(L.leq(f[x], g[x]) for x in range(P.n))
                if good:
                    row.append(j)
            adj.append(row)
        size, match_l, _ = max_matching(adj, len(target))
        if size < len(source):
            bad = hall_violator(adj, len(target))
            note = f"Hall violator of {len(bad)} maps"
            return False, {}, counts, (a, fm, gm, note)
        pairs = {f: target[match_l[i]] for i, f in enumerate(source)}
        inv = all(
            (
                L.join(g[x], a) == f[x]
                if fm >> x & 1
                else g[x] == f[x]
            )
            for f, g in pairs.items()
            for x in range(P.n)
        ) if down else False
        m = Matching(
            "down" if down else "up", a, fm, gm, pairs, a_invertible=inv
        ).validate(L, P)
        matchings[(fm, gm)] = m
    return True, matchings, counts, None


def check_matching_property(
    L: MeetSemilattice,
    P: Poset,
    a: int | None = None,
    kind: str = "full-down",
    budget: int = 200_000,
) -> CheckOutcome:
    """Decide a matching property of (L, a) over P.

    With a None the check ranges over the proper join-irreducibles and
    succeeds if any of them works.  kind is one of full/top/weak
    crossed with down/up.  A state space larger than budget raises
    SearchBudgetExceeded rather than silently running long.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if len(L) ** P.n > budget:
        raise SearchBudgetExceeded(
            f"|L|^|P| = {len(L) ** P.n} exceeds the budget of {budget}"
        )
    upward = kind.endswith("up")
    if a is not None:
        _admissible(L, a, upward)
        candidates = [a]
    else:
        candidates = L.join_irreducibles()
    failures = []
    for cand in candidates:
        ok, matchings, counts, failure = _decide_for(L, P, cand, kind)
        if ok:
            return CheckOutcome(True, kind, cand, matchings, counts)
        failures.append(failure)
    return CheckOutcome(False, kind, a, failures=failures)


def compose(
    sigma: Matching, rho: Matching, L: MeetSemilattice, P: Poset
) -> Matching:
    """rho after sigma; a-invertibility survives when both have it."""
    if sigma.direction != rho.direction:
        raise ValueError("directions disagree")
    if sigma.a != rho.a:
        raise ValueError("matchings fix different elements")
    if sigma.target_filter != rho.source_filter:
        raise ValueError("inner filters disagree")
    pairs = {f: rho.pairs[g] for f, g in sigma.pairs.items()}
    return Matching(
        sigma.direction,
        sigma.a,
        sigma.source_filter,
        rho.target_filter,
        pairs,
        a_invertible=sigma.a_invertible and rho.a_invertible,
        universe=sigma.universe,
    ).validate(L, P)


# -- explicit constructors --------------------------------------------


def matching_lsm(
    L: MeetSemilattice, c: int, a: int, P: Poset, F: int
) -> Matching:
    """Push maps below a lower semimodular coatom off a filter.

    c must be a coatom that is lower semimodular as a member, and a a
    proper join-irreducible not under c.  The result matches the class
    of the full filter onto the class of F by meeting values outside F
    with c; it is a-invertible.
    """
    if not L.is_lattice:
        raise ValueError("coatoms need a lattice")
    if c not in L.coatoms():
        raise ValueError(f"element {c} is not a coatom")
    if not L.member_is_lower_semimodular(c):
        raise ValueError(f"coatom {c} is not lower semimodular")
    if a not in L.join_irreducibles():
        raise ValueError(f"element {a} is not a proper join-irreducible")
    if L.leq(a, c):
        raise ValueError("the join-irreducible must escape the coatom")
    if not P.is_filter(F):
        raise ValueError("target class must be a filter")
    whole = full_mask(P.n)
    source = _type_classes(L, P, a)[whole]
    pairs = {}
    for f in source:
        pairs[f] = tuple(
            f[x] if F >> x & 1 else L.meet(f[x], c) for x in range(P.n)
        )
    return Matching("down", a, whole, F, pairs, a_invertible=True).validate(
        L, P
    )


def _chain_suffix(n: int, k: int) -> int:
    """The filter {k..n} of the n-chain, 1-based, as a 0-based mask."""
    return mask_of(range(k - 1, n)) if k <= n else 0


def matching_geometric(
    L: MeetSemilattice, a: int, n: int
) -> list[Matching]:
    """The chain of matchings for an atom of a geometric lattice.

    Returns sigma_1 .. sigma_n where sigma_k matches the class of the
    suffix filter {k..n} of the n-chain onto the class of {k+1..n} by
    rebuilding the value at position k from an independent set of atoms
    with a removed.  Each step is a-invertible, so compositions witness
    the full downward property over chains.
    """
    if not L.is_geometric():
        raise ValueError("needs a geometric lattice (atomic, upper semimodular)")
    if a not in L.atoms():
        raise ValueError(f"element {a} is not an atom")
    P = chain(n)
    classes = _type_classes(L, P, a)
    out = []
    for k in range(1, n + 1):
        src = _chain_suffix(n, k)
        dst = _chain_suffix(n, k + 1)
        pairs = {}
        for f in classes[src]:
            prev = f[k - 2] if k >= 2 else L.bottom
            base = independent_atoms_for(L, prev)
            grown = extend_independent(L, base + [a], f[k - 1])
            assert is_independent_atoms(L, grown), "independence lost"
            rest = list(grown)
            rest.remove(a)
            val = L.join_iter(rest)
            assert val is not None
            assert L.join(val, a) == f[k - 1], "atom does not restore the value"
            assert not L.leq(a, val), "removed atom still below the join"
            pairs[f] = f[: k - 1] + (val,) + f[k:]
        out.append(
            Matching("down", a, src, dst, pairs, a_invertible=True).validate(
                L, P
            )
        )
    return out


def matching_dual_geometric(
    L: MeetSemilattice, a: int, n: int
) -> list[Matching]:
    """The coatom-meet variant of the chain matchings.

    For a dual geometric lattice (coatomic, lower semimodular) and a
    proper join-irreducible a, position k is met with the smallest
    coatom over the previous value that avoids the filter of a.
    """
    if not L.is_dual_geometric():
        raise ValueError(
            "needs a dual geometric lattice (coatomic, lower semimodular)"
        )
    if a not in L.join_irreducibles():
        raise ValueError(f"element {a} is not a proper join-irreducible")
    coatoms = L.coatoms()

    def gamma(u: int) -> int:
        for c in coatoms:
            if L.leq(u, c) and not L.leq(a, c):
                return c
        raise AssertionError("coatomicity failed to supply a coatom")

    P = chain(n)
    classes = _type_classes(L, P, a)
    out = []
    for k in range(1, n + 1):
        src = _chain_suffix(n, k)
        dst = _chain_suffix(n, k + 1)
        pairs = {}
        for f in classes[src]:
            prev = f[k - 2] if k >= 2 else L.bottom
            val = L.meet(f[k - 1], gamma(prev))
            pairs[f] = f[: k - 1] + (val,) + f[k:]
        out.append(
            Matching("down", a, src, dst, pairs, a_invertible=True).validate(
                L, P
            )
        )
    return out


# -- transfer ----------------------------------------------------------


def matching_sum(
    sigma: Matching,
    rho: Matching,
    L: MeetSemilattice,
    P: Poset,
    Q: Poset,
) -> tuple[Matching, Poset]:
    """Combine matchings over P and over Q into one over their sum."""
    if sigma.direction != rho.direction:
        raise ValueError("directions disagree")
    if sigma.a != rho.a:
        raise ValueError("matchings fix different elements")
    PQ = disjoint_union(P, Q)
    pairs = {}
    for f1, g1 in sigma.pairs.items():
        for f2, g2 in rho.pairs.items():
            pairs[f1 + f2] = g1 + g2
    return (
        Matching(
            sigma.direction,
            sigma.a,
            sigma.source_filter | rho.source_filter << P.n,
            sigma.target_filter | rho.target_filter << P.n,
            pairs,
            a_invertible=sigma.a_invertible and rho.a_invertible,
        ).validate(L, PQ),
        PQ,
    )


def restrict_to_ideal(
    sigma: Matching, L: MeetSemilattice, P: Poset, ideal: int
) -> Matching:
    """Restrict a decreasing matching to maps into an ideal of L."""
    if sigma.direction != "down":
        raise ValueError("only decreasing matchings restrict to ideals")
    if not L.order.is_ideal(ideal):
        raise ValueError("the mask is not an ideal of L")
    if not ideal >> sigma.a & 1:
        raise ValueError("the fixed element must lie inside the ideal")
    pairs = {
        f: g
        for f, g in sigma.pairs.items()
        if all(ideal >> v & 1 for v in f)
    }
    return Matching(
        "down",
        sigma.a,
        sigma.source_filter,
        sigma.target_filter,
        pairs,
        a_invertible=sigma.a_invertible,
        universe=ideal,
    ).validate(L, P)


def lift_product(
    sigma: Matching, L: MeetSemilattice, M: MeetSemilattice, P: Poset
) -> tuple[Matching, MeetSemilattice]:
    """Lift a matching for (L, a) to (L x M, (a, bottom))."""
    LM = L.product(M)
    m = len(M)
    a2 = sigma.a * m + M.bottom
    classes = _type_classes(LM, P, a2)
    pairs = {}
    for h in classes[sigma.source_filter]:
        h1 = tuple(v // m for v in h)
        h2 = tuple(v % m for v in h)
        g1 = sigma.pairs[h1]
        pairs[h] = tuple(g1[x] * m + h2[x] for x in range(P.n))
    return (
        Matching(
            sigma.direction,
            a2,
            sigma.source_filter,
            sigma.target_filter,
            pairs,
            a_invertible=sigma.a_invertible,
        ).validate(LM, P),
        LM,
    )


def lift_subdirect(
    sigma: Matching,
    L1: MeetSemilattice,
    L2: MeetSemilattice,
    f: Mapping[int, Iterable[int]],
    P: Poset,
) -> tuple[Matching, MeetSemilattice]:
    """Lift a matching through a fiber map onto the subdirect product.

    f must be meet-concave, order-reversing and cover L2; the lifted
    matching fixes the pair (a, least fiber member over a), which is
    checked to be join-irreducible in the product.
    """
    if not is_meet_concave(L1, L2, f):
        raise ValueError("the fiber map is not meet-concave")
    fibers = {u: frozenset(f[u]) for u in range(len(L1))}
    for u in range(len(L1)):
        for v in range(len(L1)):
            if L1.leq(u, v) and not fibers[v] <= fibers[u]:
                raise ValueError("the fiber map is not order-reversing")
    covered = frozenset().union(*fibers.values())
    if covered != frozenset(range(len(L2))):
        raise ValueError("fibers miss part of the second factor")
    if sigma.a not in L1.join_irreducibles():
        raise ValueError("lifting needs a proper join-irreducible")
    BL = bowtie(L1, L2, f)
    least = L2.meet_iter(fibers[sigma.a])
    index = {uv: i for i, uv in enumerate(BL.labels)}
    a2 = index[(sigma.a, least)]
    assert a2 in BL.join_irreducibles(), "lifted element is not irreducible"
    classes = _type_classes(BL, P, a2)
    pairs = {}
    for g in classes[sigma.source_filter]:
        g1 = tuple(BL.labels[v][0] for v in g)
        g2 = tuple(BL.labels[v][1] for v in g)
        s1 = sigma.pairs[g1]
        pairs[g] = tuple(index[(s1[x], g2[x])] for x in range(P.n))
    return (
        Matching(
            sigma.direction,
            a2,
            sigma.source_filter,
            sigma.target_filter,
            pairs,
            a_invertible=sigma.a_invertible,
        ).validate(BL, P),
        BL,
    )


def _union_labels(L: MeetSemilattice) -> tuple[int, ...]:
    """The member masks of L when it is presented union-closed."""
    if L.labels is None or not all(isinstance(x, int) for x in L.labels):
        raise ValueError("needs a lattice labelled by member masks")
    if L.labels[L.bottom] != 0:
        raise ValueError("the bottom label must be the empty set")
    for u in range(len(L)):
        for v in range(len(L)):
            w = L.join(u, v)
            if w is not None and L.labels[w] != L.labels[u] | L.labels[v]:
                raise ValueError("labels do not turn joins into unions")
    return tuple(L.labels)


def restrict_to_neighborhood(
    sigma: Matching, L: MeetSemilattice, P: Poset
) -> tuple[Matching, list[int]]:
    """Restrict an a-invertible matching to the second neighborhood.

    L must be presented as a union-closed family (mask labels).  The
    restriction lands in the ideal of members inside the union of the
    first neighborhood of a; the list of its elements is returned with
    the restricted matching.
    """
    if not sigma.a_invertible:
        raise ValueError("only a-invertible matchings restrict this way")
    labels = _union_labels(L)
    ground = max(x.bit_length() for x in labels)
    fam = SetFamily(ground, labels)
    hood = lattice_neighborhood(fam, labels[sigma.a], 1)
    dom = hood.domain
    elems = [u for u in range(len(L)) if not labels[u] & ~dom]
    ideal = mask_of(elems)
    assert L.order.is_ideal(ideal)
    pairs = {
        f: g
        for f, g in sigma.pairs.items()
        if all(ideal >> v & 1 for v in f)
    }
    return (
        Matching(
            sigma.direction,
            sigma.a,
            sigma.source_filter,
            sigma.target_filter,
            pairs,
            a_invertible=True,
            universe=ideal,
        ).validate(L, P),
        elems,
    )


def lift_from_neighborhood(
    sigma_prime: Matching,
    L: MeetSemilattice,
    lprime: Iterable[int],
    P: Poset,
) -> Matching:
    """Extend a neighborhood matching to the whole lattice.

    lprime lists the elements of a join-subsemilattice containing the
    first neighborhood of a; sigma_prime must be an a-invertible
    matching whose maps take values in lprime.  Values are rebuilt by
    joining the part generated away from a back onto the lifted image.
    """
    if not sigma_prime.a_invertible:
        raise ValueError("lifting needs an a-invertible matching")
    labels = _union_labels(L)
    a = sigma_prime.a
    lset = set(lprime)
    if a not in lset:
        raise ValueError("the fixed element must lie in the subsemilattice")
    for u in lset:
        for v in lset:
            w = L.join(u, v)
            if w is not None and w not in lset:
                raise ValueError("the given elements are not join-closed")
    if L.bottom not in lset:
        raise ValueError("the subsemilattice must contain the bottom")
    ground = max(x.bit_length() for x in labels)
    fam = SetFamily(ground, labels)
    hood = lattice_neighborhood(fam, labels[a], 1)
    have = {labels[u] for u in lset}
    if not set(hood.members) <= have:
        raise ValueError("the subsemilattice misses part of the neighborhood")
    away = [
        b for b in L.join_irreducibles() if not labels[b] & labels[a]
    ]
    lsorted = sorted(lset)
    classes = _type_classes(L, P, a)
    pairs = {}
    for f in classes[sigma_prime.source_filter]:
        proj = tuple(project(L, lsorted, v) for v in f)
        img = sigma_prime.pairs[proj]
        out = []
        for x in range(P.n):
            keep = project(L, away, f[x])
            val = L.join(keep, img[x])
            assert val is not None
            out.append(val)
        pairs[f] = tuple(out)
    return Matching(
        "down",
        a,
        sigma_prime.source_filter,
        sigma_prime.target_filter,
        pairs,
        a_invertible=True,
    ).validate(L, P)
