"""Small helpers for vertex sets stored as Python int bitmasks."""


def iter_bits(mask):
    """Yield the indices of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_list(mask):
    """Sorted list of set-bit indices; fast for wide masks too."""
    if mask < (1 << 64):
        return list(iter_bits(mask))
    s = bin(mask)[:1:-1]
    return [i for i, c in enumerate(s) if c == "1"]


def from_iter(vertices):
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def lowest(mask):
    """Index of the lowest set bit (mask must be nonzero)."""
    return (mask & -mask).bit_length() - 1


def popcount(mask):
    return mask.bit_count()
