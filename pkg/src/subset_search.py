"""Exhaustive subset search shared by the matrix, star-matrix and Catalan
reducibility tests.

Subsets are visited in Gray-code order so each step adds or removes a single
vector from the running sum. Every predicate used here is invariant under
taking complements, so index 1 is never placed in the searched subset and only
2^(n-1) - 1 subsets are visited.
"""
import logging
from collections.abc import Callable, Iterator
from typing import Optional

import numpy as np

from src.errors import SizeCapExceeded, WidthCapExceeded

logger = logging.getLogger(__name__)

Witness = tuple[int, ...]


def gray_code_flips(n: int) -> Iterator[tuple[int, bool]]:
    """Yield (bit, added) for each step through all 2^n - 1 nonempty subsets of n bits."""
    for k in range(1, 1 << n):
        bit = (k & -k).bit_length() - 1
        gray = k ^ (k >> 1)
        yield bit, bool((gray >> bit) & 1)


def search_subsets(
    vectors,
    accept: Callable[[np.ndarray], bool],
    cap: int,
    first_only: bool = False,
    cap_error: type[SizeCapExceeded] = WidthCapExceeded,
) -> Optional[Witness]:
    """Find a nontrivial proper subset of `vectors` whose sum passes `accept`.

    Args:
        vectors: n vectors of equal length (rows of a 2-d array).
        accept: predicate on the running sum; must be complement-symmetric.
        cap: largest n searched exhaustively.
        first_only: stop at the first hit instead of the lexicographically
            smallest one.
        cap_error: exception raised when n exceeds cap.

    Returns:
        Sorted 1-based indices of the witness (never containing 1), or None.
    """
    vecs = np.asarray(vectors, dtype=np.int64)
    n = len(vecs)
    if n > cap:
        raise cap_error(n, cap)
    if n < 2:
        return None

    current = np.zeros(vecs.shape[1:], dtype=np.int64)
    mask = 0
    best: Optional[Witness] = None
    hits = 0
    for bit, added in gray_code_flips(n - 1):
        if added:
            current += vecs[bit + 1]
        else:
            current -= vecs[bit + 1]
        mask ^= 1 << bit
        if accept(current):
            hits += 1
            witness = tuple(i + 2 for i in range(n - 1) if (mask >> i) & 1)
            if first_only:
                return witness
            if best is None or witness < best:
                best = witness

    logger.debug("subset search over %d vectors: %d hits, best %s", n, hits, best)
    return best


def complement(witness: Witness, n: int) -> Witness:
    """1-based complement of witness within {1..n}."""
    chosen = set(witness)
    return tuple(i for i in range(1, n + 1) if i not in chosen)
