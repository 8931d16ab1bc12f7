"""Command-line front end for the package.

One dispatcher, ten verbs.  Families and posets travel as the text
formats in textio; computed values come back as sorted ``key=value``
lines with fractions kept exact.  Exit status 0 means the computation
ran and every asserted property held, 1 means a checked property failed
(the report names the offending tag and a witness), 2 means the input
or the usage was bad.

Inputs are file paths, or ``@`` builtins for the stock examples so that
quick experiments need no fixture files: ``@cycle:5``, ``@path:4``,
``@complete:4``, ``@star:3``, ``@petersen``, ``@demo``, ``@powerset:3``,
``@mhat:4``, ``@mflat:3``.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import catalog, density, extremal, graphfam, lattices, matchings
from .bits import full_mask, mask_of
from .extremal import SearchBudgetExceeded
from .families import SetFamily
from .poset import Poset, layered
from .textio import (
    ParseError,
    mask_text,
    parse_family,
    parse_poset,
    render_report,
    serialize_family,
    serialize_poset,
)


class UsageError(ValueError):
    """Bad flags or inputs; reported on stderr with exit status 2."""


# -- input loading -----------------------------------------------------


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="ascii") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _builtin_family(name: str) -> SetFamily:
    head, _, arg = name.partition(":")
    if head in ("cycle", "path", "complete", "star", "powerset"):
        if not arg.isdigit():
            raise UsageError(f"@{head} needs a numeric size, e.g. @{head}:5")
        m = int(arg)
        if head == "cycle":
            return graphfam.cycle_graph(m).family()
        if head == "path":
            return graphfam.path_graph(m).family()
        if head == "complete":
            return graphfam.complete_graph(m).family()
        if head == "star":
            return graphfam.star_graph(m).family()
        return SetFamily(m, range(1 << m))
    if arg:
        raise UsageError(f"@{head} takes no argument")
    if head == "petersen":
        return graphfam.petersen_graph().family()
    if head == "demo":
        return graphfam.escape_demo_family()[0]
    raise UsageError(f"unknown builtin @{name}")


def _load_family(spec: str | None) -> SetFamily:
    if spec is None:
        raise UsageError("an input family is required (-i)")
    if spec.startswith("@"):
        return _builtin_family(spec[1:])
    return parse_family(_read_text(spec))


def _load_lattice(spec: str | None) -> lattices.MeetSemilattice:
    if spec is None:
        raise UsageError("an input lattice is required (-i)")
    if spec.startswith("@"):
        head, _, arg = spec[1:].partition(":")
        if head in ("mhat", "mflat", "boolean"):
            if not arg.isdigit():
                raise UsageError(f"@{head} needs a numeric size")
            m = int(arg)
            if head == "mhat":
                return lattices.m_hat(m)
            if head == "mflat":
                return lattices.m_flat(m)
            return lattices.boolean(m)
        if head == "pentagon" and not arg:
            return lattices.pentagon_edge_lattice()
        fam = _builtin_family(spec[1:])
    else:
        fam = parse_family(_read_text(spec))
    return lattices.from_family(fam)


def _load_poset(args) -> Poset:
    if getattr(args, "chain", None) is not None:
        m = args.chain
        if m < 1:
            raise UsageError("--chain needs at least one element")
        return Poset.from_covers(m, [(i, i + 1) for i in range(m - 1)])
    spec = getattr(args, "poset", None)
    if spec is None:
        raise UsageError("a poset is required (--poset FILE or --chain M)")
    if spec.startswith("@"):
        head, _, arg = spec[1:].partition(":")
        if head == "layered" and arg.isdigit():
            return layered(int(arg))
        raise UsageError(f"unknown poset builtin @{spec[1:]}")
    return parse_poset(_read_text(spec))


def _parse_elems(text: str, n: int, names=None) -> int:
    """A comma-separated element list as a mask; '-' is the empty set."""
    if text in ("-", ""):
        return 0
    index = {nm: i for i, nm in enumerate(names)} if names else None
    out = 0
    for part in text.split(","):
        part = part.strip()
        if index is not None and part in index:
            x = index[part]
        elif part.isdigit():
            x = int(part)
        else:
            raise UsageError(f"bad element {part!r} in {text!r}")
        if not 0 <= x < n:
            raise UsageError(f"element {x} out of range for {n} points")
        out |= 1 << x
    return out


def _lattice_elem(L: lattices.MeetSemilattice, text: str) -> int:
    """An element of L named either by index '#i' or by its member list."""
    if text.startswith("#"):
        if not text[1:].isdigit():
            raise UsageError(f"bad element index {text!r}")
        u = int(text[1:])
        if not 0 <= u < len(L):
            raise UsageError(f"element index {u} out of range")
        return u
    if L.labels is None:
        raise UsageError("this lattice has no set labels; use #index")
    width = max((int(m).bit_length() for m in L.labels), default=0)
    mask = _parse_elems(text, max(width, 1))
    try:
        return L.labels.index(mask)
    except ValueError:
        raise UsageError(f"no element with member set {text!r}") from None


def _elem_text(L: lattices.MeetSemilattice, u: int) -> str:
    if L.labels is not None and isinstance(L.labels[u], int):
        return mask_text(L.labels[u])
    return f"#{u}"


def _emit(payload: str | None, pairs, out_path: str | None) -> None:
    if payload is not None:
        if out_path:
            with open(out_path, "w", encoding="ascii") as fh:
                fh.write(payload)
        else:
            sys.stdout.write(payload)
    sys.stdout.write(render_report(pairs))


# -- gen ---------------------------------------------------------------

_CLOSED_FORMS = {
    "3.3.2": lambda k, n: n * (n + 1) // 2,
    "3.3.4": lambda k, n: 3 * n - 3,
    "3.4.2": lambda k, n: (k + 1) * n - k * (k + 1) // 2,
    "3.6.2": lambda k, n: 2 * k * n - k * k - k + 2,
    "3.6.7": lambda k, n: extremal.S(k, n),
}


def _gen_shape_ok(tag: str, obj, k: int | None, n: int) -> None:
    if isinstance(obj, Poset):
        if obj.width()[0] != n:
            raise AssertionError("generated poset has the wrong width")
        return
    if tag in ("3.3.2", "3.3.4"):
        ok = obj.is_centered()
    elif tag == "3.4.2":
        ok = obj.is_pseudotree(k)
    elif tag == "3.8.4":
        ok = obj.is_locally_k_wide(4)[0]
    else:
        ok = obj.is_locally_k_wide(k)[0]
    if not ok:
        raise AssertionError(f"generated family fails the {tag} predicate")


def _cmd_gen(args) -> int:
    obj = extremal.gen(args.tag, n=args.n, k=args.k)
    _gen_shape_ok(args.tag, obj, args.k, args.n)
    if isinstance(obj, Poset):
        payload = serialize_poset(obj)
        pairs = [("size", obj.n)]
    else:
        payload = serialize_family(obj)
        pairs = [("size", len(obj))]
        form = _CLOSED_FORMS.get(args.tag)
        if form is not None:
            pairs.append(("bound", form(args.k, args.n)))
    _emit(payload, pairs, args.output)
    return 0


# -- check -------------------------------------------------------------

_TAG_PREDS = {
    "3.3.2": "centered",
    "3.3.4": "centered",
    "3.4.2": "pseudotree",
    "3.6.2": "wide",
    "3.6.7": "wide",
    "3.8.2": "wide",
    "3.8.4": "wide4",
}

_PRED_NAMES = (
    "centered",
    "wide",
    "pseudotree",
    "union-closed",
    "intersection-closed",
    "filter",
    "two-distributive",
)


def _missing_pair(fam: SetFamily, op) -> str:
    ms = set(fam.members)
    for u in fam.members:
        for v in fam.members:
            if op(u, v) not in ms:
                return f"{mask_text(u)},{mask_text(v)}"
    raise AssertionError("closure holds after all")


def _cmd_check(args) -> int:
    pred = _TAG_PREDS.get(args.pred, args.pred)
    if pred not in _PRED_NAMES and pred != "wide4":
        raise UsageError(
            f"unknown predicate {args.pred!r}; known: "
            + ", ".join(_PRED_NAMES + tuple(sorted(_TAG_PREDS)))
        )
    fam = _load_family(args.input)
    k = args.k
    if pred == "wide4":
        pred, k = "wide", 4
    pairs = [("pred", args.pred)]
    witness = None
    if pred == "centered":
        ok = fam.is_centered()
        if not ok:
            witness = mask_text(fam.uncentered_member())
    elif pred == "wide":
        if k is None:
            raise UsageError("checking local width needs --k")
        ok, bad = fam.is_locally_k_wide(k)
        if not ok:
            witness = ",".join(mask_text(u) for u in bad)
    elif pred == "pseudotree":
        ok = fam.is_pseudotree(k)
    elif pred == "union-closed":
        ok = fam.is_union_closed()
        if not ok:
            witness = _missing_pair(fam, int.__or__)
    elif pred == "intersection-closed":
        ok = fam.is_intersection_closed()
        if not ok:
            witness = _missing_pair(fam, int.__and__)
    elif pred == "filter":
        ok = fam.is_powerset_filter()
    else:
        bad = graphfam.two_distributive_witness(fam)
        ok = bad is None
        if not ok:
            witness = ",".join(mask_text(u) for u in bad)
    pairs.append(("holds", ok))
    if witness is not None:
        pairs.append(("witness", witness))
    _emit(None, pairs, None)
    return 0 if ok else 1


# -- bound and maxsearch -----------------------------------------------


def _cmd_bound(args) -> int:
    rep = extremal.bound(args.cls, k=args.k, n=args.n, r=args.r)
    pairs = [(key, val) for key, val in rep.as_dict().items() if val is not None]
    _emit(None, pairs, None)
    return 0


_SEARCH_BOUND_CLASS = {
    "all": "general",
    "centered": "centered",
    "pseudotree": "pseudotree",
    "arcs": "arcs",
    "segments": "segments",
}


def _cmd_maxsearch(args) -> int:
    size, fam = extremal.max_search(args.cls, args.k, args.n, budget=args.budget)
    pairs = [("size", size)]
    bound_cls = _SEARCH_BOUND_CLASS[args.cls]
    try:
        if bound_cls == "centered":
            rep = extremal.bound(bound_cls, n=args.n)
        else:
            rep = extremal.bound(bound_cls, k=args.k, n=args.n)
        pairs.append(("bound", rep.bound))
    except ValueError:
        pass  # parameters outside the closed form's range
    _emit(serialize_family(fam), pairs, args.output)
    return 0


# -- density and matching ----------------------------------------------


def _cmd_density(args) -> int:
    L = _load_lattice(args.input)
    P = _load_poset(args)
    pairs = [
        ("p", len(P.filters())),
        ("size", density.p_size(L, P)),
    ]
    if args.a is not None:
        a = _lattice_elem(L, args.a)
        pairs.append(("a", _elem_text(L, a)))
        pairs.append(("density", density.p_density(L, P, a)))
        _emit(None, pairs, None)
        return 0
    holds, a = density.density_property(L, P)
    pairs.append(("holds", holds))
    if holds:
        pairs.append(("a", _elem_text(L, a)))
    _emit(None, pairs, None)
    return 0 if holds else 1


def _cmd_matching(args) -> int:
    L = _load_lattice(args.input)
    P = _load_poset(args)
    a = None if args.a is None else _lattice_elem(L, args.a)
    out = matchings.check_matching_property(
        L, P, a=a, kind=args.kind, budget=args.budget
    )
    pairs = [("kind", args.kind), ("holds", out.ok)]
    if out.ok:
        if out.a is not None:
            pairs.append(("a", _elem_text(L, out.a)))
        _emit(None, pairs, None)
        return 0
    bad_a, source, target, note = out.failures[0]
    pairs.append(("witness_a", _elem_text(L, bad_a)))
    pairs.append(("witness_source", mask_text(source)))
    pairs.append(("witness_target", mask_text(target)))
    pairs.append(("witness_note", note))
    _emit(None, pairs, None)
    return 1


# -- mu ----------------------------------------------------------------


def _cmd_mu(args) -> int:
    names = None
    if args.example is not None:
        if args.example != "4.11.8":
            raise UsageError("the only stock example is 4.11.8")
        if args.input is not None:
            raise UsageError("--example replaces -i")
        fam, u = graphfam.escape_demo_family()
        names = graphfam.ESCAPE_DEMO_NAMES
        if args.U is not None:
            u = _parse_elems(args.U, fam.n, names)
    else:
        fam = _load_family(args.input)
        if args.U is None:
            raise UsageError("mu needs --U")
        u = _parse_elems(args.U, fam.n)

    if args.X is not None:
        x = _parse_elems(args.X, fam.n, names)
        members = graphfam.escape_set(fam, u, x)
        text = ",".join(mask_text(m, names) for m in members)
        _emit(None, [("E", text)], None)
        return 0
    if args.min:
        val, wit = graphfam.min_mu_over_extensions(
            fam, u, budget=args.budget, qualifying_only=args.qualifying
        )
        if val is None:
            _emit(None, [("min_mu", "none"), ("qualifying", True)], None)
            return 0
        pairs = [
            ("min_mu", val),
            ("witness", ",".join(mask_text(m, names) for m in wit.members)),
        ]
        if args.qualifying:
            pairs.append(("qualifying", True))
        _emit(None, pairs, None)
        return 0
    if args.nu:
        val = graphfam.nu_lower_bound(fam, u)
        _emit(None, [("nu", val)], None)
        return 0
    if args.degree_check:
        try:
            graphfam.min_degree_density_check(fam, u)
        except ValueError as exc:
            _emit(None, [("failed", "4.11.28"), ("witness", str(exc))], None)
            return 1
        _emit(None, [("holds", True), ("density_max", Fraction(1, 2))], None)
        return 0
    value = graphfam.mu(fam, fam, u)
    _emit(None, [("mu", value), ("rho", graphfam.rho(fam, u))], None)
    return 0


# -- zeta --------------------------------------------------------------


def _cmd_zeta(args) -> int:
    P = _load_poset(args)
    if args.m < 0:
        raise UsageError("--m must be >= 0")
    pairs = [
        ("m", args.m),
        ("zeta", density.zeta(P, args.m)),
        ("chains", ",".join(str(c) for c in density.chain_counts(P))),
    ]
    _emit(None, pairs, None)
    return 0


# -- ucsc --------------------------------------------------------------


def _cmd_ucsc(args) -> int:
    if args.max_domain is not None:
        if args.input is not None:
            raise UsageError("--max-domain replaces -i")
        if args.max_domain < 1:
            raise UsageError("--max-domain must be >= 1")
        instances = 0
        violations = 0
        first_bad = None
        for n in range(1, args.max_domain + 1):
            for fam in catalog.union_closed_families(n, up_to_iso=True):
                if fam.domain != full_mask(n) or len(fam) < 2:
                    continue
                instances += 1
                rep = graphfam.ucsc_brute(fam)
                if not rep.holds:
                    violations += 1
                    if first_bad is None:
                        first_bad = fam
        pairs = [("instances", instances), ("violations", violations)]
        if violations:
            pairs.append(("failed", "4.3.7"))
            pairs.append(
                ("witness", ",".join(mask_text(m) for m in first_bad.members))
            )
        _emit(None, pairs, None)
        return 1 if violations else 0
    fam = _load_family(args.input)
    rep = graphfam.ucsc_brute(fam)
    pairs = [
        ("size", rep.size),
        ("min_density", rep.min_density),
        ("min_witness", rep.min_witness),
        ("max_density", rep.max_density),
        ("max_witness", rep.max_witness),
        ("holds", rep.holds),
    ]
    if not rep.holds:
        pairs.append(("failed", "4.3.7"))
    _emit(None, pairs, None)
    return 0 if rep.holds else 1


# -- report ------------------------------------------------------------


def _cmd_report(args) -> int:
    if args.table == "sizes":
        if args.n is None or args.k is None:
            raise UsageError("report sizes needs --k and --n")
        pairs = []
        for tag, form in sorted(_CLOSED_FORMS.items()):
            needs_k = tag in ("3.4.2", "3.6.2", "3.6.7")
            try:
                fam = extremal.gen(
                    tag, n=args.n, k=args.k if needs_k else None
                )
            except ValueError:
                continue  # parameters outside this tag's range
            size = len(fam)
            expect = form(args.k, args.n)
            if size != expect:
                raise AssertionError(f"{tag} size {size} misses {expect}")
            pairs.append((tag, size))
        _emit(None, pairs, None)
        return 0
    if args.table == "s":
        if args.n is None or args.k is None:
            raise UsageError("report s needs --k and --n")
        pairs = []
        for k in range(1, args.k + 1):
            for n in range(1, args.n + 1):
                pairs.append((f"S[{k},{n}]", extremal.S(k, n)))
        _emit(None, pairs, None)
        return 0
    if args.table == "census":
        m = args.n if args.n is not None else 7
        if m < 1 or m > 8:
            raise UsageError("census covers sizes 1..8")
        pairs = []
        for i in range(0, min(m, 6) + 1):
            pairs.append((f"posets[{i}]", catalog.poset_count(i)))
        for i in range(1, m + 1):
            pairs.append((f"lattices[{i}]", len(catalog.lattices(i))))
        _emit(None, pairs, None)
        return 0
    raise UsageError(f"unknown table {args.table!r}; known: census, s, sizes")


# -- dispatcher --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ordkit",
        description="Extremal set families, matchings and densities.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("gen", help="build a stock family or poset by tag")
    p.add_argument("tag", choices=extremal.GEN_TAGS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("-o", "--output", help="write the family here, report to stdout")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("check", help="test a structural predicate")
    p.add_argument("pred", help="predicate name or gen tag")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--k", type=int)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("bound", help="closed-form size bound for a class")
    p.add_argument("cls", choices=extremal.BOUND_CLASSES)
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("maxsearch", help="exhaustive maximum family size")
    p.add_argument("cls", choices=extremal.SEARCH_CLASSES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--budget", type=int, default=5_000_000)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_maxsearch)

    p = sub.add_parser("density", help="filter densities of a lattice over P")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--poset")
    p.add_argument("--chain", type=int, help="use the chain with M elements")
    p.add_argument("--a", help="one element, as a member list or #index")
    p.set_defaults(func=_cmd_density)

    p = sub.add_parser("matching", help="matching properties of (L, a) over P")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--poset")
    p.add_argument("--chain", type=int)
    p.add_argument("--kind", default="full-down", choices=matchings.KINDS)
    p.add_argument("--a")
    p.add_argument("--budget", type=int, default=200_000)
    p.set_defaults(func=_cmd_matching)

    p = sub.add_parser("mu", help="escape sets and density ratios")
    p.add_argument("-i", "--input")
    p.add_argument("--example", help="stock instance, e.g. 4.11.8")
    p.add_argument("--U", help="the distinguished generator")
    p.add_argument("--X", help="escape set of this candidate member")
    p.add_argument("--min", action="store_true", help="minimum mu over extensions")
    p.add_argument("--qualifying", action="store_true")
    p.add_argument("--nu", action="store_true", help="product lower bound")
    p.add_argument(
        "--degree-check", action="store_true", dest="degree_check",
        help="minimum-degree criterion for density at most one half",
    )
    p.add_argument("--budget", type=int, default=1_000_000)
    p.set_defaults(func=_cmd_mu)

    p = sub.add_parser("zeta", help="order maps from a chain into P")
    p.add_argument("-i", "--poset", required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=_cmd_zeta, chain=None)

    p = sub.add_parser("ucsc", help="element densities of union-closed families")
    p.add_argument("-i", "--input")
    p.add_argument("--max-domain", type=int, dest="max_domain")
    p.set_defaults(func=_cmd_ucsc)

    p = sub.add_parser("report", help="reproduction tables")
    p.add_argument("table", help="census, s or sizes")
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SearchBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
