"""Bit-mask helpers for subsets of group elements and graph vertices."""


def iter_bits(mask):
    """Yield the indexes of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indexes):
    m = 0
    for i in indexes:
        m |= 1 << i
    return m
