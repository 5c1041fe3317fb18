"""Generalized Catalan sequences, their cost and width, sublist reducibility,
and common reducibility of Kostka pairs through column differences."""
import logging
from dataclasses import dataclass
from itertools import accumulate, groupby
from typing import Optional

import numpy as np

from src import config
from src.errors import AuditFailure, InvalidPair, InvalidSequence, LengthCapExceeded
from src.gale_ryser import Decomposition
from src.partition_core import KostkaPair, Partition, conjugate
from src.subset_search import Witness, complement, search_subsets

logger = logging.getLogger(__name__)

# Longest sequence handed to the Kim-theorem check
KIM_LENGTH_CAP = 20


@dataclass(frozen=True)
class CatalanSeq:
    """Nonzero integers with zero total and nonnegative prefix sums."""

    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(x) for x in self.entries)
        object.__setattr__(self, "entries", entries)
        if any(x == 0 for x in entries):
            raise InvalidSequence(f"{entries} has a zero entry")
        if sum(entries) != 0:
            raise InvalidSequence(f"{entries} sums to {sum(entries)}")
        if any(s < 0 for s in accumulate(entries)):
            raise InvalidSequence(f"{entries} has a negative prefix sum")

    def __len__(self) -> int:
        return len(self.entries)

    def runs(self) -> list[tuple[int, ...]]:
        """Maximal blocks of constant sign."""
        return [tuple(block) for _, block in groupby(self.entries, key=lambda x: x > 0)]

    def sublist(self, indices) -> "CatalanSeq":
        return CatalanSeq(tuple(self.entries[i - 1] for i in sorted(indices)))


def cost(x: CatalanSeq) -> int:
    return sum(max(abs(v) for v in run) for run in x.runs())


def width(x: CatalanSeq) -> int:
    return len(x.entries)


def catalan_reducible(x: CatalanSeq, cap: Optional[int] = None, first_only: bool = False) -> Optional[Witness]:
    """1-based indices of a Catalan sublist whose complement is Catalan too.

    The returned side always contains index 1.
    """
    cap = config.CAP_WIDTH if cap is None else cap
    t = len(x)
    values = np.asarray(x.entries, dtype=np.int64)
    # row i contributes x_i to every prefix from position i on
    vectors = np.triu(np.outer(values, np.ones(t, dtype=np.int64)))
    prefix = np.cumsum(values)

    def accept(v: np.ndarray) -> bool:
        return bool(np.all(v >= 0) and np.all(v <= prefix))

    found = search_subsets(vectors, accept, cap, first_only=first_only, cap_error=LengthCapExceeded)
    return None if found is None else complement(found, t)


def pair_to_sequence(pair: KostkaPair) -> tuple[int, ...]:
    """x_j = μ'_j − λ'_j for j = 1..λ₁; zeros allowed."""
    lam_conj = conjugate(pair.lam)
    mu_conj = conjugate(pair.mu)
    return tuple(mu_conj[j] - lam_conj[j] for j in range(len(lam_conj)))


def column_decomposition(pair: KostkaPair, columns) -> Decomposition:
    """bullet takes columns C of both λ and μ (μ's possibly empty), circ the rest."""
    lam_conj = conjugate(pair.lam)
    mu_conj = conjugate(pair.mu)
    chosen = set(columns)
    n = len(lam_conj)

    def half(conj, inside):
        lengths = sorted((conj[j - 1] for j in range(1, n + 1) if (j in chosen) == inside), reverse=True)
        return conjugate(Partition(lengths))

    try:
        bullet = KostkaPair(half(lam_conj, True), half(mu_conj, True), pair.rank)
        circ = KostkaPair(half(lam_conj, False), half(mu_conj, False), pair.rank)
    except InvalidPair as e:
        raise AuditFailure(f"common columns {sorted(chosen)} left the cone: {e}", pair) from e
    result = Decomposition(bullet=bullet, circ=circ, columns=tuple(sorted(chosen)))
    if result.total() != pair:
        raise AuditFailure("common column halves do not sum to the pair", pair)
    return result


def commonly_reducible(pair: KostkaPair, cap: Optional[int] = None) -> Optional[Decomposition]:
    """Decomposition choosing the same column indices from λ and μ, or None."""
    cap = config.CAP_WIDTH if cap is None else cap
    x = pair_to_sequence(pair)
    if len(x) > cap:
        raise LengthCapExceeded(len(x), cap)
    if len(x) < 2:
        return None
    if 0 in x:
        # a common column of equal lengths splits off on its own
        return column_decomposition(pair, (x.index(0) + 1,))
    found = catalan_reducible(CatalanSeq(x), cap)
    if found is None:
        return None
    return column_decomposition(pair, found)


@dataclass
class KimReport:
    sequence: tuple[int, ...]
    cost: int
    width: int
    witness: Optional[Witness] = None

    @property
    def applies(self) -> bool:
        return self.cost < self.width

    def to_dict(self) -> dict:
        return {
            "sequence": list(self.sequence),
            "cost": self.cost,
            "width": self.width,
            "applies": self.applies,
            "witness": list(self.witness) if self.witness else None,
        }


def kim_theorem_check(x: CatalanSeq, cap: int = KIM_LENGTH_CAP) -> KimReport:
    """cost < width must force a Catalan splitting."""
    if len(x) > cap:
        raise LengthCapExceeded(len(x), cap)
    report = KimReport(sequence=x.entries, cost=cost(x), width=width(x))
    if report.applies:
        report.witness = catalan_reducible(x, cap, first_only=True)
        if report.witness is None:
            raise AuditFailure(f"{x.entries} has cost {report.cost} < width {report.width} but no splitting", x)
    return report


def random_catalan(rng: np.random.Generator, length: int, max_step: int = 3) -> CatalanSeq:
    """Random valid sequence of exactly `length` entries (length ≥ 2)."""
    if length < 2:
        raise InvalidSequence("a nonempty Catalan sequence has at least two entries")
    entries = []
    total = 0
    for i in range(length):
        left = length - i
        if left == 1:
            entries.append(-total)
            break
        # the final entry must close a strictly positive total
        most = total - 1 if left == 2 else total
        if most < 1 or rng.random() < 0.5:
            step = int(rng.integers(1, max_step + 1))
        else:
            step = -int(rng.integers(1, most + 1))
        entries.append(step)
        total += step
    return CatalanSeq(tuple(entries))
