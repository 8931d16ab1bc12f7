"""Bitmask helpers shared across the package.

Subsets of a small ground set 0..n-1 travel as Python ints: bit i set means
element i is in.  Ints are arbitrary precision, so nothing here can overflow;
callers get exact counts for free.
"""

from __future__ import annotations

from typing import Iterable, Iterator

__all__ = ["bits", "mask_of", "submasks", "full_mask"]


def bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(elems: Iterable[int]) -> int:
    m = 0
    for e in elems:
        m |= 1 << e
    return m


def full_mask(n: int) -> int:
    return (1 << n) - 1


def submasks(mask: int) -> Iterator[int]:
    """Yield every subset of ``mask``, starting at ``mask`` and ending at 0."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask
