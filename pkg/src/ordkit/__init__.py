"""Extremal set families, antichain lattices, matchings and densities.

The package splits into three layers.  The base layer carries posets
and families of finite sets as bitmasks (`poset`, `families`, `bits`),
with text formats in `textio` and small catalogs of test universes in
`catalog`.  On top of that, `extremal` builds the stock families behind
the width bounds and searches their maxima, `antichains` handles the
antichain lattice of a poset, and `lattices` turns families into meet
semilattices and decomposes them.  The third layer asks quantitative
questions: `matchings` decides matching properties of a lattice over a
poset, `density` measures filter densities and chain censuses, and
`graphfam` bounds how much a union-closed family can dilute one of its
generators.  `cli` fronts all of it from the command line.
"""

from .bits import bits, full_mask, mask_of
from .extremal import (
    GEN_TAGS,
    S,
    SearchBudgetExceeded,
    bound,
    gen,
    left_overlap_reduction,
    max_search,
)
from .families import (
    SetFamily,
    filter_density,
    intersection_closure,
    kleitman_check,
    union_closure,
)
from .graphfam import (
    escape_set,
    min_degree_density_check,
    min_mu_over_extensions,
    mu,
    nu_lower_bound,
    ucsc_brute,
)
from .lattices import MeetSemilattice, from_family
from .poset import Poset
from .textio import parse_family, parse_poset, serialize_family, serialize_poset

__version__ = "0.1.0"

__all__ = [
    "GEN_TAGS",
    "MeetSemilattice",
    "Poset",
    "S",
    "SearchBudgetExceeded",
    "SetFamily",
    "bits",
    "bound",
    "escape_set",
    "filter_density",
    "from_family",
    "full_mask",
    "gen",
    "intersection_closure",
    "kleitman_check",
    "left_overlap_reduction",
    "mask_of",
    "max_search",
    "min_degree_density_check",
    "min_mu_over_extensions",
    "mu",
    "nu_lower_bound",
    "parse_family",
    "parse_poset",
    "serialize_family",
    "serialize_poset",
    "ucsc_brute",
    "union_closure",
]
