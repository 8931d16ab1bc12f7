"""Finite meet-semilattices and lattices.

A meet-semilattice is wrapped around a Poset in which every pair of
elements has a greatest lower bound.  Joins are computed where they
exist (in a finite meet-semilattice a set has a least upper bound as
soon as it has any upper bound) and are None elsewhere.  On top of the
core structure this module provides the canonical intersection- and
union-closed set representations, irredundant representations,
independent sets of atoms in geometric lattices, subdirect products,
and lattice neighborhoods of union-closed families.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping

from .bits import bits, full_mask, mask_of
from .families import SetFamily, union_closure
from .poset import Poset, boolean_poset
from .poset import product as poset_product


class MeetSemilattice:
    """A finite poset with all pairwise meets.

    Elements are integers 0..len(L)-1 in the underlying order.  The
    optional ``labels`` tuple carries one opaque label per element
    (constructors that build a semilattice out of a family of sets
    store the member masks there).
    """

    __slots__ = ("order", "labels", "_meet", "_join", "_bottom", "_cache")

    def __init__(self, order: Poset, labels: tuple | None = None):
        m = order.n
        if m == 0:
            raise ValueError("a semilattice needs at least one element")
        if labels is not None and len(labels) != m:
            raise ValueError("labels must match the element count")
        meet = [[0] * m for _ in range(m)]
        join: list[list[int | None]] = [[None] * m for _ in range(m)]
        for u in range(m):
            for v in range(u, m):
                low = order.down_mask(u) & order.down_mask(v)
                if not low:
                    raise ValueError(
                        f"elements {u} and {v} have no common lower bound"
                    )
                g = order.maximal_of(low)
                if g.bit_count() != 1:
                    raise ValueError(f"elements {u} and {v} have no meet")
                meet[u][v] = meet[v][u] = g.bit_length() - 1
                high = order.up_mask(u) & order.up_mask(v)
                if high:
                    s = order.minimal_of(high)
                    assert s.bit_count() == 1, "upper bounds without a least one"
                    join[u][v] = join[v][u] = s.bit_length() - 1
        bottom_mask = order.minimal_mask()
        assert bottom_mask.bit_count() == 1, "meets exist but no least element"
        self.order = order
        self.labels = labels
        self._meet = meet
        self._join = join
        self._bottom = bottom_mask.bit_length() - 1
        self._cache: dict = {}

    # -- plumbing -----------------------------------------------------

    def __len__(self) -> int:
        return self.order.n

    def __repr__(self) -> str:
        kind = "Lattice" if self.is_lattice else "MeetSemilattice"
        return f"<{kind} with {self.order.n} elements>"

    def leq(self, u: int, v: int) -> bool:
        return self.order.leq(u, v)

    def lt(self, u: int, v: int) -> bool:
        return self.order.lt(u, v)

    def meet(self, u: int, v: int) -> int:
        return self._meet[u][v]

    def join(self, u: int, v: int) -> int | None:
        """Least upper bound, or None when u and v have no upper bound."""
        return self._join[u][v]

    def meet_iter(self, items: Iterable[int]) -> int:
        it = iter(items)
        try:
            acc = next(it)
        except StopIteration:
            raise ValueError("meet over an empty collection") from None
        for u in it:
            acc = self._meet[acc][u]
        return acc

    def join_iter(self, items: Iterable[int]) -> int | None:
        """Fold of joins; the empty join is the bottom element."""
        acc = self._bottom
        for u in items:
            nxt = self._join[acc][u]
            if nxt is None:
                return None
            acc = nxt
        return acc

    @property
    def bottom(self) -> int:
        return self._bottom

    @property
    def top(self) -> int | None:
        got = self._cache.get("top")
        if got is None:
            g = self.order.maximal_mask()
            got = (g.bit_length() - 1) if g.bit_count() == 1 else -1
            self._cache["top"] = got
        return None if got == -1 else got

    @property
    def is_lattice(self) -> bool:
        return self.top is not None

    # -- irreducibles and covers --------------------------------------

    def _cover_lists(self) -> tuple[list[list[int]], list[list[int]]]:
        got = self._cache.get("coverlists")
        if got is None:
            lower: list[list[int]] = [[] for _ in range(self.order.n)]
            upper: list[list[int]] = [[] for _ in range(self.order.n)]
            for i, j in self.order.covers():
                lower[j].append(i)
                upper[i].append(j)
            got = (lower, upper)
            self._cache["coverlists"] = got
        return got

    def lower_covers(self, u: int) -> list[int]:
        return list(self._cover_lists()[0][u])

    def upper_covers(self, u: int) -> list[int]:
        return list(self._cover_lists()[1][u])

    def join_irreducibles(self) -> list[int]:
        """The proper join-irreducibles: elements with one lower cover."""
        lower = self._cover_lists()[0]
        return [u for u in range(self.order.n) if len(lower[u]) == 1]

    def meet_irreducibles(self) -> list[int]:
        """Elements with exactly one upper cover."""
        upper = self._cover_lists()[1]
        return [u for u in range(self.order.n) if len(upper[u]) == 1]

    def atoms(self) -> list[int]:
        return self.upper_covers(self._bottom)

    def coatoms(self) -> list[int]:
        t = self.top
        if t is None:
            raise ValueError("coatoms need a greatest element")
        return self.lower_covers(t)

    def is_atomic(self) -> bool:
        """Every join-irreducible is an atom."""
        at = set(self.atoms())
        return all(u in at for u in self.join_irreducibles())

    def is_coatomic(self) -> bool:
        co = set(self.coatoms())
        return all(u in co for u in self.meet_irreducibles())

    # -- semimodularity -----------------------------------------------

    def covers_rel(self, u: int, v: int) -> bool:
        """True when v covers u."""
        return u in self._cover_lists()[0][v]

    def member_is_lower_semimodular(self, u: int) -> bool:
        """Whenever v covers u, each v∧w either covers or equals u∧w."""
        for v in self.upper_covers(u):
            for w in range(self.order.n):
                vw = self._meet[v][w]
                uw = self._meet[u][w]
                if vw != uw and not self.covers_rel(uw, vw):
                    return False
        return True

    def is_lower_semimodular(self) -> bool:
        return all(
            self.member_is_lower_semimodular(u) for u in range(self.order.n)
        )

    def is_upper_semimodular(self) -> bool:
        """If u and v both cover u∧v, then u∨v covers u and v."""
        for u in range(self.order.n):
            for v in range(u + 1, self.order.n):
                w = self._meet[u][v]
                if self.covers_rel(w, u) and self.covers_rel(w, v):
                    j = self._join[u][v]
                    if j is None:
                        return False
                    if not (self.covers_rel(u, j) and self.covers_rel(v, j)):
                        return False
        return True

    def is_geometric(self) -> bool:
        return self.is_lattice and self.is_atomic() and self.is_upper_semimodular()

    def is_dual_geometric(self) -> bool:
        return (
            self.is_lattice
            and self.is_coatomic()
            and self.is_lower_semimodular()
        )

    # -- derived structures -------------------------------------------

    def dual(self) -> "MeetSemilattice":
        """The order dual; valid only when joins are total."""
        if not self.is_lattice:
            raise ValueError("only a lattice has a semilattice dual")
        return MeetSemilattice(self.order.dual(), self.labels)

    def sub(self, mask: int) -> tuple["MeetSemilattice", list[int]]:
        """The semilattice induced on a subset; meets are recomputed."""
        p, elems = self.order.subposet(mask)
        lab = None
        if self.labels is not None:
            lab = tuple(self.labels[e] for e in elems)
        return MeetSemilattice(p, lab), elems

    def completion(self) -> "MeetSemilattice":
        """Adjoin a greatest element unless one is already present."""
        if self.is_lattice:
            return self
        m = self.order.n
        ups = [self.order.up_mask(i) | (1 << m) for i in range(m)]
        ups.append(1 << m)
        return MeetSemilattice(Poset(m + 1, ups))

    def product(self, other: "MeetSemilattice") -> "MeetSemilattice":
        prod = poset_product(self.order, other.order)
        labels = tuple(
            (u, v) for u in range(self.order.n) for v in range(other.order.n)
        )
        return MeetSemilattice(prod, labels)


# -- constructors ------------------------------------------------------


def boolean(n: int) -> MeetSemilattice:
    """The Boolean lattice with n atoms; element index = subset mask."""
    if n < 0:
        raise ValueError("negative atom count")
    p = boolean_poset(n)
    return MeetSemilattice(p, tuple(range(p.n)))


def m_flat(n: int) -> MeetSemilattice:
    """M_n: a bottom with n atoms on top of it and nothing else."""
    if n < 0:
        raise ValueError("negative atom count")
    return MeetSemilattice(
        Poset.from_covers(n + 1, [(0, i) for i in range(1, n + 1)])
    )


def m_hat(n: int) -> MeetSemilattice:
    """M_n with a greatest element adjoined; always n + 2 elements."""
    if n < 0:
        raise ValueError("negative atom count")
    covers = [(0, i) for i in range(1, n + 1)]
    covers += [(i, n + 1) for i in range(1, n + 1)]
    if n == 0:
        covers = [(0, 1)]
    return MeetSemilattice(Poset.from_covers(n + 2, covers))


def from_family(family: SetFamily, op: str = "auto") -> MeetSemilattice:
    """The semilattice of a closed family, ordered by inclusion.

    op selects which closure is claimed: "meet" demands intersection-
    closure, "join" demands union-closure, "auto" accepts either.  The
    element labels are the member masks.
    """
    if op not in ("auto", "meet", "join"):
        raise ValueError(f"unknown closure claim {op!r}")
    if len(family) == 0:
        raise ValueError("an empty family carries no semilattice")
    inter = family.is_intersection_closed()
    uni = family.is_union_closed()
    if op == "meet" and not inter:
        raise ValueError("family is not intersection-closed")
    if op == "join" and not uni:
        raise ValueError("family is not union-closed")
    if op == "auto" and not (inter or uni):
        raise ValueError("family is closed under neither union nor intersection")
    try:
        return MeetSemilattice(family.inclusion_poset(), family.members)
    except ValueError as err:
        raise ValueError(
            "family is union-closed but not a lattice; adjoin the empty set"
        ) from err


def pentagon_edge_lattice() -> MeetSemilattice:
    """Union closure of the five pentagon edges and the empty set."""
    edges = [mask_of([i, (i + 1) % 5]) for i in range(5)]
    fam = union_closure(SetFamily(5, edges + [0]))
    return from_family(fam, "join")


# -- canonical representations ----------------------------------------


def j_below(L: MeetSemilattice, u: int) -> list[int]:
    """The proper join-irreducibles at or below u."""
    return [a for a in L.join_irreducibles() if L.leq(a, u)]


def canonical_intersection_rep(L: MeetSemilattice) -> SetFamily:
    """Members coded by their sets of proper join-irreducibles.

    Element u maps to {a in J(L) | a <= u} over the domain J(L); the
    point i of the ground set stands for the i'th join-irreducible in
    ascending element order.
    """
    js = L.join_irreducibles()
    pos = {a: i for i, a in enumerate(js)}
    members = []
    for u in range(len(L)):
        members.append(mask_of(pos[a] for a in js if L.leq(a, u)))
    fam = SetFamily(len(js), members)
    assert len(fam) == len(L), "join-irreducible coding collapsed members"
    return fam


def canonical_union_rep(L: MeetSemilattice) -> SetFamily:
    """Element u coded as the meet-irreducibles NOT above u.

    Joins of L turn into unions.  Needs a lattice: the coding runs over
    meet-irreducibles, which only carry the structure when joins are
    total.
    """
    if not L.is_lattice:
        raise ValueError("canonical union representation needs a lattice")
    ms = L.meet_irreducibles()
    pos = {m: i for i, m in enumerate(ms)}
    members = []
    for u in range(len(L)):
        members.append(mask_of(pos[m] for m in ms if not L.leq(u, m)))
    fam = SetFamily(len(ms), members)
    assert len(fam) == len(L), "meet-irreducible coding collapsed members"
    return fam


def irredundant_rep(family: SetFamily) -> tuple[dict[int, int], SetFamily]:
    """Strip an intersection-closed family down to an irredundant copy.

    Picks one witness point p(A) from each join-irreducible member A
    (the smallest element of A minus A's unique lower cover) and traces
    the family on the image of p.  Returns (p, traced family); p is
    keyed by member mask.
    """
    if not family.is_intersection_closed():
        raise ValueError("irredundant representations need intersection-closure")
    L = from_family(family, "meet")
    p: dict[int, int] = {}
    for a in L.join_irreducibles():
        below = L.lower_covers(a)
        assert len(below) == 1
        fresh = family.members[a] & ~family.members[below[0]]
        assert fresh, "cover relation with no fresh element"
        p[family.members[a]] = next(iter(bits(fresh)))
    image = mask_of(p.values())
    if len(set(p.values())) != len(p):
        raise AssertionError("witness points collided")
    traced = family.traced_on(image)
    if len(traced) != len(family):
        raise AssertionError("tracing on the witness image collapsed members")
    return p, traced


# -- independent sets of atoms ----------------------------------------


def is_independent_atoms(L: MeetSemilattice, atom_set: Iterable[int]) -> bool:
    """No atom of the set is below the join of the others."""
    atoms = list(atom_set)
    at = set(L.atoms())
    if len(set(atoms)) != len(atoms) or not set(atoms) <= at:
        return False
    whole = L.join_iter(atoms)
    if whole is None:
        return False
    for i in range(len(atoms)):
        rest = L.join_iter(atoms[:i] + atoms[i + 1 :])
        if rest is None or rest == whole:
            return False
    return True


def independent_atoms_for(L: MeetSemilattice, u: int) -> list[int]:
    """A greedy independent set of atoms joining to u.

    Scans atoms below u in element order and keeps those that raise the
    running join.  In a geometric lattice the result joins to u; the
    final check raises if it does not.
    """
    chosen: list[int] = []
    acc = L.bottom
    for a in L.atoms():
        if L.leq(a, u) and not L.leq(a, acc):
            chosen.append(a)
            nxt = L.join(acc, a)
            assert nxt is not None
            acc = nxt
    if acc != u:
        raise ValueError(f"atoms below element {u} do not join back to it")
    return chosen


def extend_independent(
    L: MeetSemilattice, base: Iterable[int], u: int
) -> list[int]:
    """Grow an independent atom set below u to one joining to u."""
    out = list(base)
    acc = L.join_iter(out)
    if acc is None or not L.leq(acc, u):
        raise ValueError("base set does not sit below the target")
    for a in L.atoms():
        if L.leq(a, u) and not L.leq(a, acc):
            out.append(a)
            nxt = L.join(acc, a)
            assert nxt is not None
            acc = nxt
    if acc != u:
        raise ValueError(f"independent extension stalled below element {u}")
    return out


# -- subdirect products -----------------------------------------------


def is_meet_concave(
    L1: MeetSemilattice, L2: MeetSemilattice, f: Mapping[int, Iterable[int]]
) -> bool:
    """f maps L1 into subsemilattices of L2 with f(u)∧f(v) ⊆ f(u∧v)."""
    sets = {u: frozenset(f[u]) for u in range(len(L1))}
    for u, s in sets.items():
        if not s:
            return False
        for a in s:
            for b in s:
                if L2.meet(a, b) not in s:
                    return False
    for u in range(len(L1)):
        for v in range(len(L1)):
            target = sets[L1.meet(u, v)]
            for a in sets[u]:
                for b in sets[v]:
                    if L2.meet(a, b) not in target:
                        return False
    return True


def bowtie(
    L1: MeetSemilattice, L2: MeetSemilattice, f: Mapping[int, Iterable[int]]
) -> MeetSemilattice:
    """The subsemilattice {(u, v) | v in f(u)} of the product.

    The labels of the result are the (u, v) pairs.  Raises when f is
    not meet-concave.
    """
    if not is_meet_concave(L1, L2, f):
        raise ValueError("the fiber map is not meet-concave")
    pairs = sorted((u, v) for u in range(len(L1)) for v in set(f[u]))
    index = {uv: i for i, uv in enumerate(pairs)}
    ups = []
    for u, v in pairs:
        ups.append(
            mask_of(
                index[(x, y)]
                for (x, y) in pairs
                if L1.leq(u, x) and L2.leq(v, y)
            )
        )
    return MeetSemilattice(Poset(len(pairs), ups), tuple(pairs))


def iota_maps(
    L1: MeetSemilattice,
    L2: MeetSemilattice,
    pairs: Iterable[tuple[int, int]],
) -> tuple[dict, dict, dict, dict]:
    """Fibers of a subdirect product and their least members.

    pairs lists the members of a subsemilattice of L1 x L2.  Returns
    (iota1, iota2, iota1_min, iota2_min); raises when some fiber is
    empty (the product is not subdirect) or not meet-closed.
    """
    ps = sorted(set(pairs))
    i1: dict[int, list[int]] = {u: [] for u in range(len(L1))}
    i2: dict[int, list[int]] = {v: [] for v in range(len(L2))}
    for u, v in ps:
        i1[u].append(v)
        i2[v].append(u)
    if any(not vs for vs in i1.values()) or any(not us for us in i2.values()):
        raise ValueError("a projection misses elements: not subdirect")
    i1_min: dict[int, int] = {}
    i2_min: dict[int, int] = {}
    for u, vs in i1.items():
        least = L2.meet_iter(vs)
        if least not in vs:
            raise ValueError(f"fiber over {u} in the first factor is not meet-closed")
        i1_min[u] = least
    for v, us in i2.items():
        least = L1.meet_iter(us)
        if least not in us:
            raise ValueError(f"fiber over {v} in the second factor is not meet-closed")
        i2_min[v] = least
    return i1, i2, i1_min, i2_min


def lub_generate(L: MeetSemilattice, gens: Iterable[int]) -> list[int]:
    """Closure of a subset under existing least upper bounds.

    Contains the bottom (the empty join) and every existing join of a
    subset of gens.
    """
    have = {L.bottom} | set(gens)
    frontier = list(have)
    while frontier:
        fresh = []
        for u in frontier:
            for v in list(have):
                w = L.join(u, v)
                if w is not None and w not in have:
                    have.add(w)
                    fresh.append(w)
        frontier = fresh
    return sorted(have)


def project(L: MeetSemilattice, gens: Iterable[int], u: int) -> int:
    """The join of the generators below u (bottom when there are none)."""
    acc = L.join_iter(a for a in gens if L.leq(a, u))
    assert acc is not None, "bounded joins must exist"
    return acc


def internal_decompose(
    L: MeetSemilattice, a1: Iterable[int], a2: Iterable[int]
) -> tuple[dict[int, tuple[int, int]], list[int], list[int]]:
    """Split L over two generating subsets covering its join-irreducibles.

    Returns (sigma, L1, L2) where L1 and L2 are the lub-closures of the
    two subsets and sigma(u) = (projection on L1, projection on L2).
    The map is checked to be an injective meet-homomorphism.
    """
    s1, s2 = set(a1), set(a2)
    missing = [j for j in L.join_irreducibles() if j not in s1 | s2]
    if missing:
        raise ValueError(
            f"join-irreducibles {missing} are outside both generating sets"
        )
    l1 = lub_generate(L, s1)
    l2 = lub_generate(L, s2)
    sigma = {
        u: (project(L, l1, u), project(L, l2, u)) for u in range(len(L))
    }
    if len(set(sigma.values())) != len(sigma):
        raise AssertionError("subdirect embedding is not injective")
    for u in range(len(L)):
        for v in range(len(L)):
            w = L.meet(u, v)
            want = (
                L.meet(sigma[u][0], sigma[v][0]),
                L.meet(sigma[u][1], sigma[v][1]),
            )
            if sigma[w] != want:
                raise AssertionError("projections are not meet-homomorphisms")
    return sigma, l1, l2


# -- lattice neighborhoods --------------------------------------------


def lattice_neighborhood(family: SetFamily, u: int, i: int) -> SetFamily:
    """The i'th lattice neighborhood of the point set u.

    The family must be union-closed and contain the empty set.  Index 0
    is the ideal of members inside u; odd indices are generated by the
    non-empty generators meeting the current point set; even indices
    are the ideals those generate.
    """
    if i < 0:
        raise ValueError("negative neighborhood index")
    if 0 not in family:
        raise ValueError("the family must contain the empty set")
    if not family.is_union_closed():
        raise ValueError("lattice neighborhoods need a union-closed family")
    if u & ~full_mask(family.n):
        raise ValueError("point set leaves the ground set")
    if i == 0:
        return SetFamily(family.n, [v for v in family.members if not v & ~u])
    gens = [g for g in family.generators().members if g]

    def hood(points: int) -> SetFamily:
        picked = [0] + [g for g in gens if g & points]
        return union_closure(SetFamily(family.n, picked))

    cur = hood(u)
    k = 1
    while k < i:
        if k % 2 == 1:
            dom = cur.domain
            cur = SetFamily(
                family.n, [v for v in family.members if not v & ~dom]
            )
        else:
            cur = hood(cur.domain)
        k += 1
    return cur
