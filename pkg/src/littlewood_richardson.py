"""Brute-force Littlewood–Richardson coefficients and the family of triples
whose first row grows quadratically in the rank."""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional

from src import config
from src.errors import AuditFailure, InvalidPair, ShapeError, SizeCapExceeded
from src.partition_core import Partition

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LrTriple:
    lam: Partition
    mu: Partition
    nu: Partition
    rank: int

    def __post_init__(self):
        for name in ("lam", "mu", "nu"):
            value = getattr(self, name)
            if not isinstance(value, Partition):
                object.__setattr__(self, name, Partition(value))
            if len(getattr(self, name)) > self.rank:
                raise InvalidPair(f"{name}={getattr(self, name)} has more than r={self.rank} parts")

    def to_dict(self) -> dict:
        return {"lambda": list(self.lam), "mu": list(self.mu), "nu": list(self.nu), "rank": self.rank}


def is_horizontal_strip(inner, outer) -> bool:
    """outer/inner has at most one box per column."""
    inner = inner if isinstance(inner, Partition) else Partition(inner)
    outer = outer if isinstance(outer, Partition) else Partition(outer)
    if not outer.contains(inner):
        return False
    return all(outer[i + 1] <= inner[i] for i in range(len(outer)))


def pieri_coefficient(lam, row: int, nu) -> int:
    """c^ν_{λ,(row)} by Pieri's rule."""
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    nu = nu if isinstance(nu, Partition) else Partition(nu)
    return int(nu.size == lam.size + row and is_horizontal_strip(lam, nu))


def lr_coefficient(t: LrTriple, cap: Optional[int] = None) -> int:
    """Ballot semistandard fillings of ν/λ with content μ.

    Cells are filled in reading order (rows top to bottom, each row right to
    left) so the ballot condition is checked on every prefix as it grows.
    """
    cap = config.CAP_BOXES if cap is None else cap
    if t.nu.size > cap:
        raise SizeCapExceeded(t.nu.size, cap)
    if not t.nu.contains(t.lam):
        raise ShapeError(f"λ={t.lam} does not fit inside ν={t.nu}")
    if t.lam.size + t.mu.size != t.nu.size:
        return 0

    cells = [(i, j) for i in range(len(t.nu)) for j in range(t.nu[i] - 1, t.lam[i] - 1, -1)]
    content = list(t.mu.parts)
    used = [0] * len(content)
    filling = {}

    def fill(k: int) -> int:
        if k == len(cells):
            return 1
        i, j = cells[k]
        high = min(len(content), i + 1)
        right = filling.get((i, j + 1))
        if right is not None:
            high = min(high, right)
        low = 1
        above = filling.get((i - 1, j))
        if above is not None:
            low = above + 1
        total = 0
        for v in range(low, high + 1):
            if used[v - 1] == content[v - 1]:
                continue
            if v > 1 and used[v - 1] + 1 > used[v - 2]:
                continue
            used[v - 1] += 1
            filling[(i, j)] = v
            total += fill(k + 1)
            used[v - 1] -= 1
            del filling[(i, j)]
        return total

    result = fill(0)
    logger.debug("c(%s, %s; %s) = %d", t.lam, t.mu, t.nu, result)
    return result


def counterexample_family(k: int) -> LrTriple:
    """r = 3k−1, λ = (k^{k−1}, (k−1)^k), μ and ν in blocks of three rows."""
    if k < 2:
        raise InvalidPair(f"family starts at k=2, got {k}")
    lam = Partition((k,) * (k - 1) + (k - 1,) * k)
    blocks = tuple(part for m in range(k - 1, 0, -1) for part in (m * (k - 1),) * 3)
    mu = Partition(blocks)
    nu = Partition((k * (k - 1),) * 2 + blocks)
    triple = LrTriple(lam, mu, nu, rank=3 * k - 1)

    if lam.size != 2 * k * (k - 1):
        raise AuditFailure(f"|λ|={lam.size} for k={k}", triple)
    if 2 * mu.size != 3 * k * (k - 1) ** 2:
        raise AuditFailure(f"|μ|={mu.size} for k={k}", triple)
    if lam.size + mu.size != nu.size:
        raise AuditFailure(f"|λ|+|μ| ≠ |ν| for k={k}", triple)
    if nu[0] != k * (k - 1):
        raise AuditFailure(f"ν₁={nu[0]} for k={k}", triple)
    if gcd(lam[0], lam[k - 1]) != 1:
        raise AuditFailure(f"triple for k={k} is not primitive", triple)
    return triple


@dataclass
class FamilyRow:
    k: int
    rank: int
    nu1: int
    sizes: tuple[int, int, int]
    coefficient: Optional[int] = None

    @property
    def exceeds_rank(self) -> bool:
        return self.nu1 > self.rank

    def to_dict(self) -> dict:
        return {"k": self.k, "rank": self.rank, "nu1": self.nu1, "sizes": list(self.sizes),
                "coefficient": self.coefficient, "exceeds_rank": self.exceeds_rank}


@dataclass
class FamilyReport:
    triple: LrTriple
    coefficient: Optional[int]
    growth: list[FamilyRow] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"triple": self.triple.to_dict(), "coefficient": self.coefficient,
                "growth": [row.to_dict() for row in self.growth]}


def verify_counterexample(k: int, upto: Optional[int] = None, cap: Optional[int] = None) -> FamilyReport:
    """Positivity within the oracle cap, the closed form for ν₁, and ν₁ > r from k = 4 on."""
    cap = config.CAP_BOXES if cap is None else cap
    rows = []
    for kk in range(2, max(k, upto or k) + 1):
        triple = counterexample_family(kk)
        r = triple.rank
        third = Fraction(r + 1, 3)
        if Fraction(triple.nu[0]) != third * (third - 1):
            raise AuditFailure(f"ν₁={triple.nu[0]} breaks the closed form at k={kk}", triple)
        row = FamilyRow(k=kk, rank=r, nu1=triple.nu[0], sizes=(triple.lam.size, triple.mu.size, triple.nu.size))
        if row.exceeds_rank != (kk >= 4):
            raise AuditFailure(f"ν₁ > r should hold exactly from k=4, fails at k={kk}", triple)
        if triple.nu.size <= cap and kk <= k:
            row.coefficient = lr_coefficient(triple, cap)
            if row.coefficient < 1:
                raise AuditFailure(f"c^ν_(λ,μ) = 0 for k={kk}", triple)
        rows.append(row)
    target = next(row for row in rows if row.k == k)
    return FamilyReport(triple=counterexample_family(k), coefficient=target.coefficient, growth=rows)
