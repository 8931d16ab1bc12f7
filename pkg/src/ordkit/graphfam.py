"""Escape sets and density bounds for union-closed families.

The families here are union-closed and contain the empty set.  The
question in the background: how often does a generator U appear as a
subset of a member, and can adjoining more sets away from U dilute it?
Escape sets make that quantitative.  For a member candidate X disjoint
from U, E(X) collects the traces Y of U that can be recovered from the
closure of X | Y alone; the average of |E(X)| over any conservative
extension bounds the reciprocal density of U from below.  When the
generators form a graph, degree comparisons alone can push that average
to two, which pins the density of U at one half or less no matter how
the family is extended.

All densities are exact fractions; sets travel as bitmasks.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterator

from .bits import bits, full_mask, mask_of, submasks
from .extremal import SearchBudgetExceeded
from .families import SetFamily, union_closure
from .lattices import lattice_neighborhood

__all__ = [
    "ESCAPE_DEMO_NAMES",
    "EdgeGraph",
    "Extension",
    "UcscReport",
    "complete_graph",
    "cycle_graph",
    "escape_demo_family",
    "escape_density",
    "escape_filter",
    "escape_filter_meet",
    "escape_set",
    "is_extension_of",
    "is_two_distributive",
    "isolated",
    "min_degree_density_check",
    "min_mu_over_extensions",
    "mu",
    "neighborhood_split",
    "neighborhoods",
    "nu_lower_bound",
    "path_graph",
    "petersen_graph",
    "pi_closure",
    "point_neighborhood",
    "proper_generators",
    "rho",
    "star_graph",
    "two_distributive_witness",
    "ucsc_brute",
]


def require_closed_base(family: SetFamily) -> None:
    if 0 not in family:
        raise ValueError("the family must contain the empty set")
    if not family.is_union_closed():
        raise ValueError("the family must be union-closed")


def proper_generators(family: SetFamily) -> tuple[int, ...]:
    """The non-empty generators of the family, as masks."""
    return tuple(g for g in family.generators().members if g)


def rho(family: SetFamily, x: int) -> Fraction:
    """The fraction of members containing the point set x."""
    if len(family) == 0:
        raise ValueError("empty family has no densities")
    return Fraction(len(family.containing(x)), len(family))


# -- closures ---------------------------------------------------------


def pi_closure(family: SetFamily, x: int) -> int:
    """The union of all members inside x.

    For a union-closed family with the empty set the result is itself a
    member, and x belongs to the family exactly when the closure gives x
    back.  Points of x outside the family's ground are never covered.
    """
    if x < 0:
        raise ValueError("negative point mask")
    out = 0
    for u in family.members:
        if not u & ~x:
            out |= u
    return out


def isolated(family: SetFamily, x: int) -> int:
    """The part of x that no member inside x reaches."""
    return x & ~pi_closure(family, x)


# -- neighborhoods ----------------------------------------------------


def point_neighborhood(family: SetFamily, x: int) -> int:
    """x together with every non-empty generator meeting it."""
    out = x
    for g in proper_generators(family):
        if g & x:
            out |= g
    return out


def neighborhoods(family: SetFamily, x: int) -> tuple[int, int]:
    """The first and second point neighborhoods of x.

    When x is a member, the first neighborhood is also the union of the
    first lattice neighborhood of x and the second is the union of the
    third; see lattice_neighborhood.
    """
    n1 = point_neighborhood(family, x)
    return n1, point_neighborhood(family, n1)


def neighborhood_split(family: SetFamily, u: int) -> tuple[int, int, int]:
    """Split the neighbors of a two-point generator u by attachment.

    Returns masks (na, nb, nab): the points of the first neighborhood
    outside u that form a generator edge with only the lower point of u,
    with only the upper point, or with both.  Points attached through
    larger generators fall in no part, so the split is a partition only
    when every generator meeting u is an edge.
    """
    if u.bit_count() != 2:
        raise ValueError("u must have exactly two points")
    a, b = sorted(bits(u))
    jset = set(proper_generators(family))
    na = nb = nab = 0
    outside = point_neighborhood(family, u) & ~u
    for x in bits(outside):
        has_a = ((1 << x) | (1 << a)) in jset
        has_b = ((1 << x) | (1 << b)) in jset
        if has_a and has_b:
            nab |= 1 << x
        elif has_a:
            na |= 1 << x
        elif has_b:
            nb |= 1 << x
    return na, nb, nab


# -- extensions -------------------------------------------------------


class Extension:
    """A conservative extension of a base pair (family, u).

    The added part is union-closed, non-empty, and its points avoid u;
    the result joins every base member with every added member.  The
    one-member family {empty} leaves the base unchanged, and extending
    an extension is again an extension of the original pair.
    """

    __slots__ = ("base", "u", "added", "result")

    def __init__(self, base: SetFamily, u: int, added: SetFamily):
        require_closed_base(base)
        if u < 0 or u & ~full_mask(base.n):
            raise ValueError("u leaves the base ground set")
        if len(added) == 0:
            raise ValueError("the added family must be non-empty")
        if not added.is_union_closed():
            raise ValueError("the added family must be union-closed")
        if added.domain & u:
            raise ValueError("the added family touches u")
        self.base = base
        self.u = u
        self.added = added
        self.result = base.join(added)

    @classmethod
    def trivial(cls, base: SetFamily, u: int) -> "Extension":
        return cls(base, u, SetFamily(base.n, [0]))

    def __repr__(self) -> str:
        return (
            f"Extension(u={sorted(bits(self.u))}, |base|={len(self.base)}, "
            f"|added|={len(self.added)}, |result|={len(self.result)})"
        )


def is_extension_of(candidate: SetFamily, base: SetFamily, u: int) -> bool:
    """Whether candidate arises from base by joining sets that avoid u.

    The canonical witness is the subfamily of candidate members disjoint
    from u: candidate is an extension exactly when joining that
    subfamily onto the base reproduces candidate and the base members
    all survived.
    """
    if 0 not in candidate or not candidate.is_union_closed():
        return False
    if any(m not in candidate for m in base.members):
        return False
    avoiding = SetFamily(candidate.n, [m for m in candidate.members if not m & u])
    return base.join(avoiding) == candidate


# -- escape sets ------------------------------------------------------


def escape_set(family: SetFamily, u: int, x: int) -> tuple[int, ...]:
    """The subsets y of u recoverable from the closure next to x.

    A subset y of u qualifies when the members inside x | y trace
    exactly y on u, and they still cover everything the closure of
    x | u reaches outside u.  Requires x disjoint from u.
    """
    if x & u:
        raise ValueError("x must be disjoint from u")
    need = pi_closure(family, x | u) & ~u
    out = []
    for y in submasks(u):
        p = pi_closure(family, x | y)
        if p & u == y and p & need == need:
            out.append(y)
    return tuple(sorted(out))


def mu(family: SetFamily, extension, u: int) -> Fraction:
    """The average escape-set size over the u-free trace of an extension.

    The extension may be an Extension over (family, u) or the extended
    family itself.  The value never exceeds the reciprocal density of u
    in the extended family, and it only depends on the part of the base
    within the third lattice neighborhood of u; both facts are asserted.
    """
    require_closed_base(family)
    if u <= 0:
        raise ValueError("u must be a non-empty point set")
    if u not in family:
        raise ValueError("u must be a member of the base family")
    if isinstance(extension, Extension):
        if extension.base != family or extension.u != u:
            raise ValueError("extension was built over a different base pair")
        bigger = extension.result
    else:
        bigger = extension
        if not is_extension_of(bigger, family, u):
            raise ValueError("not an extension of the base family off u")

    rest = bigger.minus(u)
    sizes = {x: len(escape_set(family, u, x)) for x in rest.members}
    value = Fraction(sum(sizes.values()), len(rest))

    local = lattice_neighborhood(family, u, 3)
    for x in rest.members:
        assert len(escape_set(local, u, x)) == sizes[x], (
            "escape sets disagree with the local subfamily"
        )
    assert value * len(bigger.containing(u)) <= len(bigger), (
        "mu exceeded the reciprocal density of u"
    )
    return value


def min_mu_over_extensions(
    family: SetFamily,
    u: int,
    budget: int = 1_000_000,
    qualifying_only: bool = False,
):
    """Minimize mu over all conservative extensions of (family, u).

    The minimum over every extension, in any ambient domain, is attained
    by joining a filter of the power set of the second neighborhood
    minus u onto the family, so the search enumerates exactly those
    filters through their antichains of minimal members.  Returns the
    minimum together with a witness filter as a family; ties go to the
    lexicographically least witness.

    With qualifying_only the candidates are restricted to filters whose
    minimal members each admit a single escape set, the only shape a
    witness below two can take; (None, None) comes back when that class
    is empty.  The budget counts subset scans and a search past it
    raises SearchBudgetExceeded.
    """
    require_closed_base(family)
    if u not in set(proper_generators(family)):
        raise ValueError("u must be a non-empty generator")
    _, n2 = neighborhoods(family, u)
    space = n2 & ~u
    subsets = sorted(submasks(space))
    esize = {x: len(escape_set(family, u, x)) for x in subsets}
    if qualifying_only:
        candidates = [x for x in subsets if esize[x] == 1]
    else:
        candidates = list(subsets)

    best: tuple[Fraction, tuple[int, ...]] | None = None
    chosen: list[int] = []
    work = 0

    def walk(start: int) -> Iterator[tuple[int, ...]]:
        for i in range(start, len(candidates)):
            c = candidates[i]
            if any(p & c in (p, c) for p in chosen):
                continue
            chosen.append(c)
            yield tuple(chosen)
            yield from walk(i + 1)
            chosen.pop()

    for antichain in walk(0):
        work += len(subsets)
        if work > budget:
            raise SearchBudgetExceeded(
                f"filter search over {len(subsets)} subsets exceeded {budget} steps"
            )
        members = [
            x for x in subsets if any(m & x == m for m in antichain)
        ]
        value = Fraction(sum(esize[x] for x in members), len(members))
        key = (value, tuple(members))
        if best is None or key < best:
            best = key
    if best is None:
        return None, None
    return best[0], SetFamily(family.n, best[1])


# -- the nu product bound ---------------------------------------------


def _edge_reach(family: SetFamily, u: int, y: int, x: int):
    """Partner data for the escape filter of (y, x).

    Returns (hit, gamma): hit means every subset qualifies (a loop at x,
    or an edge from x into y); gamma is the mask of partners of x
    outside u, the points a qualifying subset must meet otherwise.
    """
    if y & ~u:
        raise ValueError("y must be a subset of u")
    n1 = point_neighborhood(family, u)
    if not (1 << x) & n1 & ~u:
        raise ValueError("x must lie in the first neighborhood outside u")
    jset = set(proper_generators(family))
    if (1 << x) in jset:
        return True, 0
    gamma = 0
    for g in jset:
        if g.bit_count() == 2 and (1 << x) & g:
            z = g & ~(1 << x)
            if z & y:
                return True, 0
            if not z & u:
                gamma |= z
    return False, gamma


def escape_filter(family: SetFamily, u: int, y: int, x: int) -> tuple[int, ...]:
    """The filter of subsets of the second neighborhood qualifying x.

    A subset X of the second neighborhood minus u is in when some
    generator edge from the point x ends in X | y, or loops at x.  The
    result is upward closed in that power set.
    """
    hit, gamma = _edge_reach(family, u, y, x)
    space = neighborhoods(family, u)[1] & ~u
    if hit:
        return tuple(sorted(submasks(space)))
    return tuple(sorted(s for s in submasks(space) if s & gamma))


def escape_density(family: SetFamily, u: int, y: int, x: int) -> Fraction:
    """Exact density of escape_filter(family, u, y, x) in its power set.

    Equals one when x loops or an edge from x lands in y, and otherwise
    1 - (1/2)^(number of partners of x outside u).
    """
    hit, gamma = _edge_reach(family, u, y, x)
    if hit:
        return Fraction(1)
    k = gamma.bit_count()
    return Fraction((1 << k) - 1, 1 << k)


def escape_filter_meet(family: SetFamily, u: int, y: int) -> tuple[int, ...]:
    """Subsets qualifying every point of the first neighborhood at once."""
    space = neighborhoods(family, u)[1] & ~u
    common = set(submasks(space))
    for x in bits(point_neighborhood(family, u) & ~u):
        common &= set(escape_filter(family, u, y, x))
    return tuple(sorted(common))


def nu_lower_bound(family: SetFamily, u: int) -> Fraction:
    """A product lower bound on mu for every qualifying extension.

    One plus, for each proper subset y of u, the product over the first
    neighborhood outside u of the escape filter densities.  Qualifying
    means the extension's trace filter has all its minimal members with
    a single escape set; every filter witnessing a value below two can
    be reshaped into that class, so the bound controls the minimum.
    Requires the generators to form a graph and u to be a generator
    with two points.
    """
    require_closed_base(family)
    gens = proper_generators(family)
    if any(g.bit_count() > 2 for g in gens):
        raise ValueError("the generators must form a graph")
    if u.bit_count() != 2 or u not in set(gens):
        raise ValueError("u must be a generator with two points")
    outside = point_neighborhood(family, u) & ~u
    total = Fraction(1)
    for y in sorted(submasks(u)):
        if y == u:
            continue
        prod = Fraction(1)
        for x in bits(outside):
            prod *= escape_density(family, u, y, x)
            if prod == 0:
                break
        total += prod
    return total


# -- the degree criterion ---------------------------------------------


def min_degree_density_check(family: SetFamily, u: int) -> bool:
    """Certify that u has density at most one half in every extension.

    Hypotheses checked: u is a generator with two points, every
    generator meeting u has at most two points, and in the simple graph
    of all two-point generators every edge meeting u has degree at
    least the degree of u.  Degrees count distinct incident edges, the
    edge itself excluded.  A violated hypothesis raises ValueError
    naming the offending generator; on success the density of u in the
    family itself is re-checked directly.
    """
    require_closed_base(family)
    gens = proper_generators(family)
    if u.bit_count() != 2 or u not in set(gens):
        raise ValueError("u must be a generator with two points")
    meeting = [g for g in gens if g & u]
    for g in meeting:
        if g.bit_count() > 2:
            raise ValueError(
                f"generator {sorted(bits(g))} meets u but is not an edge"
            )
    simple = [g for g in gens if g.bit_count() == 2]
    du = sum(1 for w in simple if w != u and w & u)
    for g in meeting:
        if g.bit_count() != 2 or g == u:
            continue
        dg = sum(1 for w in simple if w != g and w & g)
        if dg < du:
            raise ValueError(
                f"edge {sorted(bits(g))} has degree {dg}, below {du} at u"
            )
    assert 2 * len(family.containing(u)) <= len(family), (
        "degree hypothesis held but u is dense in the family"
    )
    return True


# -- union-closed instances -------------------------------------------


class UcscReport:
    """Extreme element frequencies of a union-closed family."""

    __slots__ = ("size", "min_density", "min_witness", "max_density", "max_witness")

    def __init__(self, size, min_density, min_witness, max_density, max_witness):
        self.size = size
        self.min_density = min_density
        self.min_witness = min_witness
        self.max_density = max_density
        self.max_witness = max_witness

    @property
    def holds(self) -> bool:
        """Some point lies in at least half the members."""
        return self.max_density >= Fraction(1, 2)

    def __repr__(self) -> str:
        return (
            f"UcscReport(size={self.size}, max={self.max_density} at "
            f"{self.max_witness}, min={self.min_density} at {self.min_witness})"
        )


def ucsc_brute(family: SetFamily) -> UcscReport:
    """Exact element frequencies for a union-closed family.

    Scans every point of the union of members; witnesses are the least
    points attaining each extreme.  Requires a union-closed family with
    at least two members.
    """
    if not family.is_union_closed():
        raise ValueError("the family must be union-closed")
    if len(family) < 2:
        raise ValueError("a one-member family has nothing to report")
    size = len(family)
    best = worst = None
    for x in bits(family.domain):
        dens = Fraction(len(family.containing(1 << x)), size)
        if best is None or dens > best[0]:
            best = (dens, x)
        if worst is None or dens < worst[0]:
            worst = (dens, x)
    return UcscReport(size, worst[0], worst[1], best[0], best[1])


# -- the 2-distributive identity --------------------------------------


def two_distributive_witness(family: SetFamily):
    """Search for a violation of the 2-distributive law, None if clean.

    Meets are taken inside the family: the meet of two members is the
    union of the members inside their intersection.  The law says the
    meet of v with a three-fold union is the union of the meets of v
    with the pairwise unions.  Every family generated by sets of at
    most two points satisfies it.
    """
    require_closed_base(family)
    meets: dict[int, int] = {}

    def meet_with(a: int, b: int) -> int:
        cap = a & b
        got = meets.get(cap)
        if got is None:
            got = pi_closure(family, cap)
            meets[cap] = got
        return got

    ms = family.members
    for u1, u2, u3 in combinations(ms, 3):
        triple = u1 | u2 | u3
        for v in ms:
            lhs = meet_with(triple, v)
            rhs = (
                meet_with(u1 | u2, v)
                | meet_with(u1 | u3, v)
                | meet_with(u2 | u3, v)
            )
            if lhs != rhs:
                return u1, u2, u3, v
    return None


def is_two_distributive(family: SetFamily) -> bool:
    return two_distributive_witness(family) is None


# -- graphs -----------------------------------------------------------


class EdgeGraph:
    """A set of loops and edges on ground points 0..n-1.

    Members are masks with one or two bits.  The graph is simple when
    every member is a genuine edge.
    """

    __slots__ = ("n", "edges")

    def __init__(self, n: int, edges):
        seen = sorted(set(edges))
        for e in seen:
            if e <= 0 or e & ~full_mask(n):
                raise ValueError(f"edge mask {e:b} leaves the ground set")
            if e.bit_count() > 2:
                raise ValueError(f"member {sorted(bits(e))} has more than two points")
        self.n = n
        self.edges = tuple(seen)

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "EdgeGraph":
        return cls(n, (mask_of(p) for p in pairs))

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    def __repr__(self) -> str:
        shown = [sorted(bits(e)) for e in self.edges]
        return f"EdgeGraph(n={self.n}, edges={shown!r})"

    def is_simple(self) -> bool:
        return all(e.bit_count() == 2 for e in self.edges)

    def vertex_degree(self, x: int) -> int:
        """How many members contain the point x."""
        return sum(1 for e in self.edges if (1 << x) & e)

    def edge_degree(self, e: int) -> int:
        """How many other members share a point with e."""
        return sum(1 for w in self.edges if w != e and w & e)

    def family(self) -> SetFamily:
        """The union closure of the edges together with the empty set."""
        return union_closure(SetFamily(self.n, (0,) + self.edges))


def cycle_graph(n: int) -> EdgeGraph:
    if n < 3:
        raise ValueError("a cycle needs at least three points")
    return EdgeGraph.from_pairs(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> EdgeGraph:
    if n < 2:
        raise ValueError("a path needs at least two points")
    return EdgeGraph.from_pairs(n, ((i, i + 1) for i in range(n - 1)))


def complete_graph(n: int) -> EdgeGraph:
    if n < 2:
        raise ValueError("a complete graph needs at least two points")
    return EdgeGraph.from_pairs(n, combinations(range(n), 2))


def star_graph(leaves: int) -> EdgeGraph:
    """The star with center 0 and the given number of leaves."""
    if leaves < 1:
        raise ValueError("a star needs at least one leaf")
    return EdgeGraph.from_pairs(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def petersen_graph() -> EdgeGraph:
    """Outer cycle 0..4, spokes to 5..9, inner five-point star."""
    pairs = [(i, (i + 1) % 5) for i in range(5)]
    pairs += [(i, i + 5) for i in range(5)]
    pairs += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return EdgeGraph.from_pairs(10, pairs)


def escape_demo_family() -> tuple[SetFamily, int]:
    """A seven-point family whose escape sets hit every membership case.

    Ground points 0..6.  The distinguished generator is {0, 1}; the
    other generating edges run from 2, 3, 4 to 0, from 4, 5 to 1, and
    from 5 to 6.  Returns the union closure and the mask of {0, 1}.
    """
    pairs = [(0, 1), (2, 0), (3, 0), (4, 0), (4, 1), (5, 1), (5, 6)]
    fam = EdgeGraph.from_pairs(7, pairs).family()
    return fam, 0b11


# Point names the demo family is usually discussed with: the distinguished
# edge is {a, b} and the outside points are x1..x5 in the order above.
ESCAPE_DEMO_NAMES = ("a", "b", "x1", "x2", "x3", "x4", "x5")
