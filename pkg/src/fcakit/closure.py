"""Lectic enumeration of the closed sets of an arbitrary closure operator.

Sets over {0..n-1} are packed into int bit masks.  The linear order is the
index order; A is lectically smaller than B when the smallest element where
they differ belongs to B.  The classic next-closure step computes, for i from
the largest index down, close((A & below_i) | bit_i) and accepts the first
candidate whose new elements all sit at i or above.  Every closed set is
visited exactly once, in ascending lectic order, with polynomial delay.
"""

from __future__ import annotations


def next_closed_mask(n: int, close, mask: int):
    """The lectically next closed set after `mask`, or None past the last one.

    `close` maps an int mask to its closure mask.  `mask` itself must be
    closed (callers walk a chain starting from close(0)).
    """
    for i in range(n - 1, -1, -1):
        if mask >> i & 1:
            continue
        below = (1 << i) - 1
        candidate = close((mask & below) | (1 << i))
        if candidate & ~mask & below == 0:
            return candidate
    return None


def lectic_closed_masks(n: int, close):
    """Yield every closed mask in ascending lectic order, starting at close(0)."""
    mask = close(0)
    yield mask
    full = (1 << n) - 1
    while mask != full:
        mask = next_closed_mask(n, close, mask)
        if mask is None:
            break
        yield mask


def lectic_key(mask: int, n: int) -> int:
    """Sort key reproducing the lectic order: bit i weighted by 2^(n-1-i)."""
    key = 0
    for i in range(n):
        if mask >> i & 1:
            key |= 1 << (n - 1 - i)
    return key
