"""Irreducibility, Hilbert bases at small rank, extremal rays and the
Width Bound audit for the rank-r Kostka semigroup."""
import hashlib
import logging
from collections.abc import Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import accumulate
from math import comb, gcd
from typing import Optional

import numpy as np
from sympy import Matrix

from src import config
from src.errors import (AuditFailure, InconsistentExtremalityTests, InvalidPair,
                        RankCapExceeded, SizeCapExceeded)
from src.gale_ryser import Decomposition
from src.partition_core import KostkaPair, Partition, dominates, partitions

logger = logging.getLogger(__name__)

# Published counts: extremal rays and Hilbert basis size per rank
TABLE2_RAYS = {1: 1, 2: 3, 3: 7, 4: 14, 5: 25, 6: 41, 7: 63, 8: 92, 9: 129, 10: 175,
               11: 231, 12: 298, 13: 377, 14: 469, 15: 575, 16: 696, 17: 833}
TABLE2_BASIS = {1: 1, 2: 3, 3: 8, 4: 19, 5: 50, 6: 111, 7: 281, 8: 635, 9: 1443, 10: 3093,
                11: 6876, 12: 14133, 13: 29788, 14: 59935, 15: 118893, 16: 232972, 17: 457982}

# Below this many candidates a size level is checked in-process
PARALLEL_MIN_CANDIDATES = 2000


@dataclass(frozen=True)
class RaySpec:
    """λ = (a^{b+ℓ}), μ = (a^ℓ, b^a), padded to rank r."""

    a: int
    b: int
    ell: int
    rank: int

    def __post_init__(self):
        if not (self.rank >= self.a + self.ell and self.a >= self.b > 0 and self.ell >= 0):
            raise InvalidPair(f"ray parameters a={self.a}, b={self.b}, ℓ={self.ell} invalid for r={self.rank}")

    def expand(self) -> KostkaPair:
        lam = Partition((self.a,) * (self.b + self.ell))
        mu = Partition((self.a,) * self.ell + (self.b,) * self.a)
        return KostkaPair(lam, mu, self.rank)

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "ell": self.ell, "rank": self.rank}


def extremal_rays(r: int) -> list[RaySpec]:
    """One RaySpec per extremal ray of the rank-r cone.

    Triples with a = b all lie on the ray through ((1^m),(1^m)), m = b+ℓ, so
    those are listed once each as (1, 1, m−1).
    """
    if r < 1:
        raise InvalidPair(f"rank must be positive, got {r}")
    specs = [RaySpec(1, 1, m - 1, r) for m in range(1, r + 1)]
    for a in range(2, r + 1):
        for b in range(1, a):
            for ell in range(0, r - a + 1):
                specs.append(RaySpec(a, b, ell, r))
    expected = comb(r, 3) + comb(r, 2) + comb(r, 1)
    if len(specs) != expected:
        raise AuditFailure(f"{len(specs)} ray specs for r={r}, expected {expected}")
    return specs


def _content_gcd(pair: KostkaPair) -> int:
    g = 0
    for part in (*pair.lam, *pair.mu):
        g = gcd(g, part)
    return g


def primitive_pair(pair: KostkaPair) -> KostkaPair:
    """First lattice point on the ray through pair."""
    g = _content_gcd(pair)
    if g <= 1:
        return pair
    return KostkaPair(Partition(p // g for p in pair.lam), Partition(p // g for p in pair.mu), pair.rank)


def primitive_point(spec: RaySpec) -> KostkaPair:
    return primitive_pair(spec.expand())


def pair_vector(pair: KostkaPair, r: Optional[int] = None) -> np.ndarray:
    r = pair.rank if r is None else r
    return np.array(pair.lam.pad(r) + pair.mu.pad(r), dtype=np.int64)


def tight_constraints(pair: KostkaPair) -> list[tuple[str, list[int]]]:
    """Defining inequalities of the cone that hold with equality at pair.

    Coordinates are (λ_1..λ_r, μ_1..μ_r); each entry is (name, row).
    """
    r = pair.rank
    x = pair_vector(pair)
    rows = []

    def unit(*terms):
        row = [0] * (2 * r)
        for index, coeff in terms:
            row[index] += coeff
        return row

    for block, name in ((0, "lambda"), (r, "mu")):
        for i in range(r - 1):
            rows.append((f"{name}_{i + 1}>={name}_{i + 2}", unit((block + i, 1), (block + i + 1, -1))))
        rows.append((f"{name}_{r}>=0", unit((block + r - 1, 1))))
    for t in range(1, r):
        rows.append((f"dominance_{t}", unit(*[(i, 1) for i in range(t)], *[(r + i, -1) for i in range(t)])))
    return [(name, row) for name, row in rows if int(np.dot(row, x)) == 0]


def _rank_test(pair: KostkaPair) -> bool:
    if pair.is_zero():
        return False
    r = pair.rank
    equality = [1] * r + [-1] * r
    rows = [equality] + [row for _, row in tight_constraints(pair)]
    return Matrix(rows).rank() == 2 * r - 1


def _family_test(pair: KostkaPair) -> bool:
    if pair.is_zero():
        return False
    target = primitive_pair(pair)
    return any(primitive_point(spec) == target for spec in extremal_rays(pair.rank))


def is_extremal(pair: KostkaPair) -> bool:
    """Family membership and the tight-constraint rank test must agree."""
    by_family = _family_test(pair)
    by_rank = _rank_test(pair)
    if by_family != by_rank:
        raise InconsistentExtremalityTests(
            f"{pair}: family test says {by_family}, rank test says {by_rank}", pair)
    return by_family


def _splits(whole: tuple[int, ...], size: int) -> Iterator[tuple[int, ...]]:
    """Vectors x of the given size with x and whole − x both weakly decreasing."""
    n = len(whole)

    def rec(i, prev, rest):
        if i == n:
            if rest == 0:
                yield ()
            return
        if i == 0:
            lo, hi = 0, whole[0]
        else:
            lo = max(0, prev - (whole[i - 1] - whole[i]))
            hi = min(whole[i], prev)
        hi = min(hi, rest)
        for v in range(hi, lo - 1, -1):
            if rest - v > v * (n - i - 1):
                break
            for tail in rec(i + 1, v, rest - v):
                yield (v,) + tail

    yield from rec(0, 0, size)


def _mu_splits(mu: tuple[int, ...], low: list[int], high: list[int]) -> Iterator[tuple[int, ...]]:
    """Splittings y of mu with low[t] ≤ y_1+..+y_{t+1} ≤ high[t]."""
    n = len(mu)

    def rec(i, prev, total):
        if i == n:
            yield ()
            return
        if i == 0:
            lo, hi = 0, mu[0]
        else:
            lo = max(0, prev - (mu[i - 1] - mu[i]))
            hi = min(mu[i], prev)
        lo = max(lo, low[i] - total)
        hi = min(hi, high[i] - total)
        for v in range(hi, lo - 1, -1):
            for tail in rec(i + 1, v, total + v):
                yield (v,) + tail

    yield from rec(0, 0, 0)


def splittings(pair: KostkaPair, max_size: Optional[int] = None) -> Iterator[Decomposition]:
    """Every pair = bullet + circ with 1 ≤ |circ| ≤ max_size, both in the cone.

    Defaults to |circ| ≤ |pair|/2, which covers each unordered split once
    (twice when the halves have equal size).
    """
    n = pair.size
    length = max(len(pair.lam), len(pair.mu), 1)
    lam = pair.lam.pad(length)
    mu = pair.mu.pad(length)
    lam_sums = list(accumulate(lam))
    slack = [a - b for a, b in zip(lam_sums, accumulate(mu))]
    max_size = n // 2 if max_size is None else max_size
    for k in range(1, max_size + 1):
        for x in _splits(lam, k):
            x_sums = list(accumulate(x))
            low = [max(0, s - d) for s, d in zip(x_sums, slack)]
            for y in _mu_splits(mu, low, x_sums):
                circ = KostkaPair(Partition(x), Partition(y), pair.rank)
                bullet = KostkaPair(Partition(a - b for a, b in zip(lam, x)),
                                    Partition(a - b for a, b in zip(mu, y)), pair.rank)
                yield Decomposition(bullet=bullet, circ=circ)


def irreducibility_witness(pair: KostkaPair, cap: Optional[int] = None) -> Optional[Decomposition]:
    """Smallest-first search for a splitting into two nonzero cone members."""
    cap = config.CAP_IRREDUCIBLE if cap is None else cap
    if pair.size > cap:
        raise SizeCapExceeded(pair.size, cap)
    return next(splittings(pair), None)


def is_irreducible(pair: KostkaPair, cap: Optional[int] = None) -> bool:
    if pair.is_zero():
        return False
    return irreducibility_witness(pair, cap) is None


@dataclass(frozen=True)
class BasisCatalog:
    rank: int
    elements: tuple[KostkaPair, ...]
    provenance: tuple[str, ...] = field(default=())

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, pair) -> bool:
        return any(e.lam == pair.lam and e.mu == pair.mu for e in self.elements)

    def content_hash(self) -> str:
        lines = [f"r={self.rank}"]
        lines += [f"{','.join(map(str, e.lam))};{','.join(map(str, e.mu))}" for e in self.elements]
        return hashlib.sha256("\n".join(lines).encode("utf-8")).hexdigest()

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "count": len(self.elements),
            "content_hash": self.content_hash(),
            "provenance": list(self.provenance),
            "elements": [{"lambda": list(e.lam), "mu": list(e.mu)} for e in self.elements],
        }


def _reducers(vector: np.ndarray, basis: np.ndarray, r: int) -> np.ndarray:
    """Mask of basis rows h with vector − h a cone point."""
    if not len(basis):
        return np.zeros(0, dtype=bool)
    diff = vector - basis
    lam, mu = diff[:, :r], diff[:, r:]
    ok = (lam >= 0).all(axis=1) & (mu >= 0).all(axis=1)
    ok &= (lam[:, :-1] >= lam[:, 1:]).all(axis=1) & (mu[:, :-1] >= mu[:, 1:]).all(axis=1)
    ok &= (np.cumsum(lam, axis=1) >= np.cumsum(mu, axis=1)).all(axis=1)
    return ok


def _level_flags(args) -> list[bool]:
    vectors, basis, r = args
    return [bool(_reducers(v, basis, r).any()) for v in vectors]


def _cone_points(n: int, r: int, max_part: int) -> list[KostkaPair]:
    return [KostkaPair(lam, mu, r)
            for lam in partitions(n, max_part=max_part, max_length=r)
            for mu in partitions(n, max_part=lam[0], max_length=r)
            if dominates(lam, mu)]


def hilbert_basis(r: int, jobs: int = 1, rank_cap: Optional[int] = None) -> BasisCatalog:
    """Hilbert basis of the rank-r cone, sorted by (|λ|, λ, μ).

    Candidates are the cone points with λ inside the r×r box, visited by size;
    a candidate is reducible iff subtracting some smaller basis element leaves
    a cone point.
    """
    rank_cap = config.RANK_CAP if rank_cap is None else rank_cap
    if r < 1:
        raise InvalidPair(f"rank must be positive, got {r}")
    if r > rank_cap:
        raise RankCapExceeded(r, rank_cap)

    found: list[KostkaPair] = []
    vectors: list[np.ndarray] = []
    executor = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        for n in range(1, r * r + 1):
            candidates = _cone_points(n, r, max_part=r)
            cand_vectors = [pair_vector(c) for c in candidates]
            basis = np.array(vectors, dtype=np.int64).reshape(len(vectors), 2 * r)
            if executor and len(candidates) >= PARALLEL_MIN_CANDIDATES:
                chunk = -(-len(candidates) // jobs)
                chunks = [(cand_vectors[i:i + chunk], basis, r) for i in range(0, len(candidates), chunk)]
                flags = [f for part in executor.map(_level_flags, chunks) for f in part]
            else:
                flags = _level_flags((cand_vectors, basis, r))
            new = [(c, v) for c, v, reducible in zip(candidates, cand_vectors, flags) if not reducible]
            found.extend(c for c, _ in new)
            vectors.extend(v for _, v in new)
            logger.info("r=%d size %d: %d candidates, %d irreducible", r, n, len(candidates), len(new))
    finally:
        if executor:
            executor.shutdown()

    elements = tuple(sorted(found, key=KostkaPair.sort_key))
    provenance = (f"candidates: lambda_1 <= {r}, |lambda| <= {r * r}",
                  "reducible iff P - h is a cone point for a smaller basis element h")
    return BasisCatalog(rank=r, elements=elements, provenance=provenance)


@dataclass
class AuditReport:
    rank: int
    basis_count: int
    rectangle_elements: list[KostkaPair] = field(default_factory=list)
    swept: int = 0
    reduced_by_basis: int = 0
    reduced_by_search: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "basis_count": self.basis_count,
            "rectangle_elements": [e.to_dict() for e in self.rectangle_elements],
            "swept": self.swept,
            "reduced_by_basis": self.reduced_by_basis,
            "reduced_by_search": self.reduced_by_search,
            "failures": self.failures,
            "passed": self.passed,
        }


def width_bound_audit(r: int, basis: Optional[BasisCatalog] = None, sweep_max_size: Optional[int] = None,
                      raise_on_failure: bool = True) -> AuditReport:
    """Check λ₁ ≤ r on the basis, rectangles at λ₁ = r, and reducibility of
    every cone point with λ₁ = r+1 and |λ| ≤ sweep_max_size (default r(r+1))."""
    basis = basis or hilbert_basis(r)
    report = AuditReport(rank=r, basis_count=len(basis))
    for e in basis:
        if e.lam[0] > r:
            report.failures.append(f"basis element {e} has λ₁ > {r}")
        elif e.lam[0] == r:
            if not (e.lam.is_rectangle() and e.mu.is_rectangle()):
                report.failures.append(f"basis element {e} has λ₁ = {r} but is not a rectangle pair")
            else:
                report.rectangle_elements.append(e)

    vectors = np.array([pair_vector(e, r) for e in basis], dtype=np.int64).reshape(len(basis), 2 * r)
    limit = r * (r + 1) if sweep_max_size is None else sweep_max_size
    for n in range(r + 1, limit + 1):
        for lam in partitions(n, max_part=r + 1, max_length=r):
            if lam[0] != r + 1:
                continue
            for mu in partitions(n, max_part=lam[0], max_length=r):
                if not dominates(lam, mu):
                    continue
                pair = KostkaPair(lam, mu, r)
                report.swept += 1
                if _reducers(pair_vector(pair), vectors, r).any():
                    report.reduced_by_basis += 1
                elif irreducibility_witness(pair) is not None:
                    report.reduced_by_search += 1
                else:
                    report.failures.append(f"{pair} with λ₁ = {r + 1} is irreducible")
    logger.info("width bound audit r=%d: %d swept, %d failures", r, report.swept, len(report.failures))
    if raise_on_failure and report.failures:
        raise AuditFailure(report.failures[0], report)
    return report
