"""Plain-text formats for posets and families, and report rendering.

Posets travel as a header line ``poset <n>`` followed by ``cover <i> <j>``
lines, one per Hasse pair, meaning j covers i.  Families use a header
``family <n>`` followed by ``set <e1> <e2> ...`` lines with strictly
ascending 0-based elements; a bare ``set`` is the empty set.  Blank
lines are ignored.  Serialization is canonical: lines come out sorted,
so serialize(parse(text)) is a fixed point up to line order and always
re-parses to an equal value.

Reports are line-oriented ``key=value`` with keys sorted; fractions
render as ``num/den`` even when whole, so a density is recognizable at
a glance.
"""

from __future__ import annotations

import warnings
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .bits import bits
from .families import SetFamily
from .poset import Poset

__all__ = [
    "ParseError",
    "format_value",
    "mask_text",
    "parse_family",
    "parse_poset",
    "render_report",
    "serialize_family",
    "serialize_poset",
]


class ParseError(ValueError):
    """Rejected input; carries the offending 1-based line number."""

    def __init__(self, line_no: int | None, message: str):
        self.line_no = line_no
        if line_no is None:
            super().__init__(message)
        else:
            super().__init__(f"line {line_no}: {message}")


def _header(lines, kind: str) -> tuple[int, int]:
    """Find the header line, returning (line_no, n)."""
    for no, raw in lines:
        if not raw.strip():
            continue
        parts = raw.split()
        if len(parts) != 2 or parts[0] != kind:
            raise ParseError(no, f"expected '{kind} <n>', got {raw.strip()!r}")
        try:
            n = int(parts[1])
        except ValueError:
            raise ParseError(no, f"bad size {parts[1]!r}") from None
        if n < 0:
            raise ParseError(no, "negative size")
        return no, n
    raise ParseError(None, f"missing '{kind} <n>' header")


def parse_poset(text: str) -> Poset:
    lines = list(enumerate(text.splitlines(), 1))
    pos, n = _header(iter(lines), "poset")
    covers = []
    for no, raw in lines[pos:]:
        if not raw.strip():
            continue
        parts = raw.split()
        if parts[0] != "cover" or len(parts) != 3:
            raise ParseError(no, f"expected 'cover <i> <j>', got {raw.strip()!r}")
        try:
            i, j = int(parts[1]), int(parts[2])
        except ValueError:
            raise ParseError(no, "cover endpoints must be integers") from None
        if not (0 <= i < n and 0 <= j < n):
            raise ParseError(no, f"cover ({i}, {j}) out of range for {n} elements")
        covers.append((i, j))
    try:
        return Poset.from_covers(n, covers)
    except ValueError as exc:
        raise ParseError(None, str(exc)) from None


def serialize_poset(p: Poset) -> str:
    out = [f"poset {p.n}"]
    out.extend(f"cover {i} {j}" for i, j in p.covers())
    return "\n".join(out) + "\n"


def parse_family(text: str) -> SetFamily:
    lines = list(enumerate(text.splitlines(), 1))
    pos, n = _header(iter(lines), "family")
    seen: dict[int, int] = {}
    members = []
    for no, raw in lines[pos:]:
        if not raw.strip():
            continue
        parts = raw.split()
        if parts[0] != "set":
            raise ParseError(no, f"expected 'set <elements...>', got {raw.strip()!r}")
        try:
            elems = [int(p) for p in parts[1:]]
        except ValueError:
            raise ParseError(no, "elements must be integers") from None
        mask = 0
        prev = -1
        for e in elems:
            if not 0 <= e < n:
                raise ParseError(no, f"element {e} out of range for ground 0..{n - 1}")
            if e <= prev:
                raise ParseError(no, "elements must be strictly ascending")
            prev = e
            mask |= 1 << e
        if mask in seen:
            warnings.warn(
                f"line {no}: duplicate of the set on line {seen[mask]}, dropped",
                stacklevel=2,
            )
            continue
        seen[mask] = no
        members.append(mask)
    return SetFamily(n, members)


def serialize_family(f: SetFamily) -> str:
    out = [f"family {f.n}"]
    rows = sorted(tuple(bits(m)) for m in f.members)
    for row in rows:
        out.append(("set " + " ".join(str(e) for e in row)).rstrip())
    return "\n".join(out) + "\n"


# -- reports ----------------------------------------------------------


def mask_text(mask: int, names: Sequence[str] | None = None) -> str:
    """A set rendered as {e1,e2}; names substitute for indices if given."""
    shown = [names[i] if names else str(i) for i in bits(mask)]
    return "{" + ",".join(shown) + "}"


def format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (list, tuple)):
        return ",".join(format_value(v) for v in value)
    return str(value)


def render_report(pairs: Mapping[str, object] | Iterable[tuple[str, object]]) -> str:
    """Sorted key=value lines, one per entry."""
    if isinstance(pairs, Mapping):
        pairs = pairs.items()
    rows = sorted((str(k), format_value(v)) for k, v in pairs)
    return "\n".join(f"{k}={v}" for k, v in rows) + "\n"
