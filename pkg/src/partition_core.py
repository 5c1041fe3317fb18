"""Partitions, conjugation, dominance order, Kostka-cone membership and a
brute-force tableau counting oracle."""
import logging
import operator
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from itertools import zip_longest
from typing import Optional

from src import config
from src.errors import InvalidPair, InvalidPartition, SizeCapExceeded

logger = logging.getLogger(__name__)

# Checked 64-bit signed range for parts and box counts
INT64_MAX = 2**63 - 1


class Partition(Sequence[int]):
    """Weakly decreasing sequence of nonnegative ints, stored trimmed of zeros.

    Indexing past the last nonzero part reads 0, so prefix comparisons between
    partitions of different lengths need no padding.
    """
    __slots__ = ("_data",)
    _data: tuple[int, ...]

    def __init__(self, parts: Iterable[int] = ()):
        try:
            data = tuple(operator.index(p) for p in parts)
        except TypeError:
            raise InvalidPartition(f"parts {parts!r} are not all integers") from None
        for i, p in enumerate(data):
            if p < 0:
                raise InvalidPartition(f"negative part {p} in {data}")
            if p > INT64_MAX:
                raise InvalidPartition(f"part {p} exceeds the 64-bit range")
            if i and p > data[i - 1]:
                raise InvalidPartition(f"parts of {data} are not weakly decreasing")
        while data and data[-1] == 0:
            data = data[:-1]
        if sum(data) > INT64_MAX:
            raise InvalidPartition("box count exceeds the 64-bit range")
        self._data = data

    def __len__(self) -> int:
        return len(self._data)

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return self._data[idx]
        if idx < 0:
            return self._data[idx]
        return self._data[idx] if idx < len(self._data) else 0

    def __iter__(self) -> Iterator[int]:
        return iter(self._data)

    def __eq__(self, other) -> bool:
        if isinstance(other, Partition):
            return self._data == other._data
        if isinstance(other, tuple):
            return _trimmed(other) == self._data
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._data)

    def __lt__(self, other: "Partition") -> bool:
        return self._data < other._data

    def __repr__(self) -> str:
        return f"Partition({self._data})"

    def __str__(self) -> str:
        return ",".join(map(str, self._data)) if self._data else "∅"

    def __add__(self, other: "Partition") -> "Partition":
        """Componentwise sum of part sequences."""
        return Partition(a + b for a, b in zip_longest(self._data, other._data, fillvalue=0))

    def __sub__(self, other: "Partition") -> "Partition":
        return Partition(a - b for a, b in zip_longest(self._data, other._data, fillvalue=0))

    @property
    def parts(self) -> tuple[int, ...]:
        return self._data

    @property
    def size(self) -> int:
        return sum(self._data)

    def pad(self, length: int) -> tuple[int, ...]:
        """Returns the parts padded with zeros to `length`."""
        if length < len(self._data):
            raise InvalidPartition(f"cannot pad {self} to length {length}")
        return self._data + (0,) * (length - len(self._data))

    def is_rectangle(self) -> bool:
        return len(set(self._data)) <= 1

    def contains(self, other: "Partition") -> bool:
        """Young diagram containment: other ⊆ self."""
        return len(other) <= len(self) and all(self[i] >= q for i, q in enumerate(other))


def _trimmed(parts) -> tuple[int, ...]:
    parts = tuple(parts)
    while parts and parts[-1] == 0:
        parts = parts[:-1]
    return parts


def partitions(n: int, max_part: Optional[int] = None, max_length: Optional[int] = None) -> Iterator[Partition]:
    """All partitions of n with parts ≤ max_part and at most max_length parts,
    in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if max_length is None:
        max_length = n

    def rec(remaining, bound, slots):
        if remaining == 0:
            yield ()
            return
        if slots == 0:
            return
        for head in range(min(remaining, bound), 0, -1):
            if head * slots < remaining:
                break
            for tail in rec(remaining - head, head, slots - 1):
                yield (head,) + tail

    for parts in rec(n, max_part, max_length):
        yield Partition(parts)


@dataclass(frozen=True)
class KostkaPair:
    """A lattice point (λ, μ) of the rank-r Kostka cone."""

    lam: Partition
    mu: Partition
    rank: int

    def __post_init__(self):
        if not isinstance(self.lam, Partition):
            object.__setattr__(self, "lam", Partition(self.lam))
        if not isinstance(self.mu, Partition):
            object.__setattr__(self, "mu", Partition(self.mu))
        if self.rank < 1:
            raise InvalidPair(f"rank must be positive, got {self.rank}")
        if len(self.lam) > self.rank or len(self.mu) > self.rank:
            raise InvalidPair(f"({self.lam}; {self.mu}) has more than r={self.rank} parts")
        if self.lam.size != self.mu.size:
            raise InvalidPair(f"|λ|={self.lam.size} differs from |μ|={self.mu.size}")
        if not prefix_dominates(self.lam, self.mu):
            raise InvalidPair(f"λ={self.lam} does not dominate μ={self.mu}")

    @property
    def size(self) -> int:
        return self.lam.size

    def is_zero(self) -> bool:
        return self.size == 0

    def __add__(self, other: "KostkaPair") -> "KostkaPair":
        return KostkaPair(self.lam + other.lam, self.mu + other.mu, max(self.rank, other.rank))

    def sort_key(self) -> tuple:
        return (self.size, self.lam.parts, self.mu.parts)

    def to_dict(self) -> dict:
        return {"lambda": list(self.lam), "mu": list(self.mu), "rank": self.rank}

    def __str__(self) -> str:
        return f"(({self.lam}), ({self.mu}))"


def conjugate(p: Sequence[int]) -> Partition:
    """p'_j = #{i : p_i ≥ j}."""
    p = p if isinstance(p, Partition) else Partition(p)
    if not p:
        return Partition()
    return Partition(sum(1 for part in p if part >= j) for j in range(1, p[0] + 1))


def prefix_dominates(a: Sequence[int], b: Sequence[int]) -> bool:
    """Every prefix sum of a is ≥ the matching prefix sum of b; sizes may differ."""
    total_a = total_b = 0
    for x, y in zip_longest(a, b, fillvalue=0):
        total_a += x
        total_b += y
        if total_a < total_b:
            return False
    return True


def dominates(a: Sequence[int], b: Sequence[int]) -> bool:
    """a ≥_Dom b, asserted only between partitions of equal size."""
    return sum(a) == sum(b) and prefix_dominates(a, b)


def in_kostka_cone(lam: Sequence[int], mu: Sequence[int], r: int) -> bool:
    if r < 1:
        return False
    lam, mu = _trimmed(lam), _trimmed(mu)
    return len(lam) <= r and len(mu) <= r and dominates(lam, mu)


def kostka_positive(lam: Sequence[int], mu: Sequence[int]) -> bool:
    return dominates(_trimmed(lam), _trimmed(mu))


def kostka_count(lam: Sequence[int], mu: Sequence[int], cap: Optional[int] = None) -> int:
    """Number of semistandard tableaux of shape lam and content mu.

    Test oracle only: fills cells column by column (top to bottom inside a
    column) and prunes on remaining content and column height.
    """
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    mu = mu if isinstance(mu, Partition) else Partition(mu)
    cap = config.CAP_BOXES if cap is None else cap
    if lam.size > cap:
        raise SizeCapExceeded(lam.size, cap)
    if lam.size != mu.size:
        return 0
    if lam.size == 0:
        return 1

    letters = len(mu)
    cols = conjugate(lam)
    cells = [(i, j) for j in range(len(cols)) for i in range(cols[j])]
    grid = [[0] * lam[i] for i in range(len(lam))]
    remaining = list(mu.parts)

    def fill(k: int) -> int:
        if k == len(cells):
            return 1
        i, j = cells[k]
        low = 1
        if i > 0:
            low = grid[i - 1][j] + 1
        if j > 0:
            low = max(low, grid[i][j - 1])
        # leave room for the strictly increasing cells below in this column
        high = letters - (cols[j] - 1 - i)
        count = 0
        for v in range(low, high + 1):
            if remaining[v - 1] == 0:
                continue
            remaining[v - 1] -= 1
            grid[i][j] = v
            count += fill(k + 1)
            remaining[v - 1] += 1
        grid[i][j] = 0
        return count

    result = fill(0)
    logger.debug("kostka_count(%s; %s) = %d", lam, mu, result)
    return result
