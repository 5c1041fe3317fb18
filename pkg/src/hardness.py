"""Reduction from Subset Sum to Hilbert-basis membership in the Kostka
semigroup, with both directions checked against brute force."""
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from src import config
from src.errors import AuditFailure, InvalidInstance, InvalidPair, SizeCapExceeded
from src.gale_ryser import Decomposition
from src.partition_core import KostkaPair, Partition, conjugate, dominates
from src.semigroup import irreducibility_witness

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SubsetSumInstance:
    """Positive values a_1 ≥ ... ≥ a_d and a target b ≤ A = Σ a_i."""

    values: tuple[int, ...]
    target: int

    def __post_init__(self):
        values = tuple(sorted((int(a) for a in self.values), reverse=True))
        object.__setattr__(self, "values", values)
        if not values or any(a <= 0 for a in values):
            raise InvalidInstance(f"values {values} must be positive and nonempty")
        if self.target <= 0:
            raise InvalidInstance(f"target {self.target} must be positive")
        if self.target > self.total:
            raise InvalidInstance(f"target {self.target} exceeds the total {self.total}: trivially no")

    @property
    def total(self) -> int:
        return sum(self.values)

    def to_dict(self) -> dict:
        return {"values": list(self.values), "target": self.target}


def subset_sum_oracle(inst: SubsetSumInstance, cap: Optional[int] = None) -> Optional[tuple[int, ...]]:
    """Smallest, then lexicographically first, 1-based index set hitting the target."""
    cap = config.CAP_WIDTH if cap is None else cap
    d = len(inst.values)
    if d > cap:
        raise SizeCapExceeded(d, cap, what="values")
    for size in range(1, d + 1):
        for chosen in combinations(range(1, d + 1), size):
            if sum(inst.values[i - 1] for i in chosen) == inst.target:
                return chosen
    return None


def reduction_rank(inst: SubsetSumInstance) -> int:
    return 2 * inst.total + 1 - inst.target


def reduce_to_kostka(inst: SubsetSumInstance) -> KostkaPair:
    """λ̄ has columns A+1, a_1, ..., a_d; μ̄ has columns A+1+(A−b) and b."""
    A = inst.total
    rank = reduction_rank(inst)
    lam = conjugate(Partition(sorted((A + 1, *inst.values), reverse=True)))
    mu = conjugate(Partition((rank, inst.target)))
    if not dominates(lam, mu):
        raise AuditFailure(f"reduced λ̄={lam} does not dominate μ̄={mu}", inst)
    return KostkaPair(lam, mu, rank)


def columns_of(pair: KostkaPair) -> dict:
    """Column encoding of a reduced pair, as the reduction's inputs are described."""
    return {"lambda_columns": list(conjugate(pair.lam)), "mu_columns": list(conjugate(pair.mu)),
            "rank": pair.rank}


def decomposition_from_subset(inst: SubsetSumInstance, chosen) -> Decomposition:
    """The yes-certificate: λ̄• from the chosen columns, μ̄• = (1^b)."""
    chosen = set(chosen)
    if sum(inst.values[i - 1] for i in chosen) != inst.target:
        raise InvalidInstance(f"indices {sorted(chosen)} do not sum to {inst.target}")
    rank = reduction_rank(inst)
    inside = sorted((inst.values[i - 1] for i in chosen), reverse=True)
    outside = sorted((inst.total + 1, *(a for i, a in enumerate(inst.values, 1) if i not in chosen)),
                     reverse=True)
    try:
        bullet = KostkaPair(conjugate(Partition(inside)), Partition((1,) * inst.target), rank)
        circ = KostkaPair(conjugate(Partition(outside)), Partition((1,) * rank), rank)
    except InvalidPair as e:
        raise AuditFailure(f"certificate for {sorted(chosen)} left the cone: {e}", inst) from e
    result = Decomposition(bullet=bullet, circ=circ, columns=tuple(sorted(chosen)))
    if result.total() != reduce_to_kostka(inst):
        raise AuditFailure("certificate halves do not sum to the reduced pair", inst)
    return result


@dataclass
class ReductionReport:
    instance: SubsetSumInstance
    pair: KostkaPair
    subset: Optional[tuple[int, ...]]
    reducible: bool
    certificate: Optional[Decomposition] = None

    @property
    def coordinates(self) -> int:
        return 2 * self.pair.rank

    def to_dict(self) -> dict:
        return {
            "instance": self.instance.to_dict(),
            "pair": self.pair.to_dict(),
            "columns": columns_of(self.pair),
            "subset_sum": self.subset is not None,
            "subset": list(self.subset) if self.subset else None,
            "reducible": self.reducible,
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "coordinates": self.coordinates,
        }


def reduction_equivalence_check(inst: SubsetSumInstance, cap: Optional[int] = None) -> ReductionReport:
    """Subset Sum says yes iff the reduced pair is reducible."""
    subset = subset_sum_oracle(inst)
    pair = reduce_to_kostka(inst)
    reducible = irreducibility_witness(pair, cap) is not None
    report = ReductionReport(instance=inst, pair=pair, subset=subset, reducible=reducible)
    if subset is not None:
        report.certificate = decomposition_from_subset(inst, subset)
    if (subset is not None) != reducible:
        raise AuditFailure(f"{inst}: subset sum {'yes' if subset else 'no'} but reducible={reducible}", report)
    logger.debug("reduction %s -> rank %d, reducible=%s", inst, pair.rank, reducible)
    return report
