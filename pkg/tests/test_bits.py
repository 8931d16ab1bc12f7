from hypothesis import given
from hypothesis import strategies as st

from ordkit.bits import bits, full_mask, mask_of, submasks


def test_bits_roundtrip_examples():
    assert list(bits(0)) == []
    assert list(bits(0b1011)) == [0, 1, 3]
    assert mask_of([0, 1, 3]) == 0b1011
    assert mask_of([]) == 0


def test_full_mask():
    assert full_mask(0) == 0
    assert full_mask(4) == 0b1111


@given(st.integers(min_value=0, max_value=(1 << 20) - 1))
def test_mask_of_inverts_bits(mask):
    assert mask_of(bits(mask)) == mask


@given(st.integers(min_value=0, max_value=(1 << 12) - 1))
def test_submasks_complete_and_descending(mask):
    seen = list(submasks(mask))
    assert seen[0] == mask
    assert seen[-1] == 0
    assert all(a > b for a, b in zip(seen, seen[1:]))
    assert len(seen) == 1 << mask.bit_count()
    assert all(s & mask == s for s in seen)
