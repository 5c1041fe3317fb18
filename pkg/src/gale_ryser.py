"""Ryser's canonical {0,1}-matrix A(λ,μ), its vertical difference matrix A*,
the chain of row-sum shapes it passes through, and matrix-level reducibility."""
import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Optional

import numpy as np

from src import config
from src.errors import AuditFailure, InvalidPair, InvalidPartition, NotAWitness, WidthTooSmall
from src.partition_core import KostkaPair, Partition, conjugate, dominates
from src.subset_search import Witness, search_subsets

logger = logging.getLogger(__name__)


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


def initial_matrix(mu, width: int, rows: Optional[int] = None) -> np.ndarray:
    """Row i holds mu_i ones flush left; at least one row, `rows` if given."""
    mu = mu if isinstance(mu, Partition) else Partition(mu)
    if width < mu[0]:
        raise WidthTooSmall(f"width {width} < μ₁={mu[0]}")
    rows = max(len(mu), 1) if rows is None else rows
    if rows < len(mu):
        raise WidthTooSmall(f"{rows} rows cannot hold {len(mu)} parts")
    matrix = np.zeros((rows, width), dtype=np.int8)
    for i, part in enumerate(mu):
        matrix[i, :part] = 1
    return matrix


def column_runs(column: np.ndarray) -> list[tuple[int, int]]:
    """Maximal runs of 1s as (first_row, last_row), 0-based."""
    runs = []
    start = None
    for i, bit in enumerate(column):
        if bit and start is None:
            start = i
        elif not bit and start is not None:
            runs.append((start, i - 1))
            start = None
    if start is not None:
        runs.append((start, len(column) - 1))
    return runs


@dataclass(frozen=True, eq=False)
class CanonicalMatrix:
    """Ryser's matrix for `pair` plus the snapshots A^(0), ..., A^(λ₁)."""

    pair: KostkaPair
    entries: np.ndarray
    history: tuple[np.ndarray, ...] = field(default=(), repr=False)

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    @property
    def row_sums(self) -> Partition:
        return Partition(int(s) for s in self.entries.sum(axis=1))

    @property
    def col_sums(self) -> tuple[int, ...]:
        return tuple(int(s) for s in self.entries.sum(axis=0))

    def column(self, j: int) -> np.ndarray:
        """1-based column access."""
        return self.entries[:, j - 1]

    def validate(self) -> None:
        """Margins plus the three admissible column shapes."""
        if self.row_sums != self.pair.mu:
            raise AuditFailure(f"row sums {self.row_sums} differ from μ={self.pair.mu}", self.pair)
        if self.col_sums != conjugate(self.pair.lam).parts:
            raise AuditFailure(f"column sums {self.col_sums} differ from λ'", self.pair)
        for j in range(self.entries.shape[1]):
            runs = column_runs(self.entries[:, j])
            single_top = len(runs) == 1 and runs[0][0] == 0
            single_low = len(runs) == 1 and runs[0][0] > 0
            two_runs = len(runs) == 2 and runs[0][0] == 0
            if j == 0 and not single_top:
                raise AuditFailure("leftmost column is not a top-anchored run", self.pair)
            if not (single_top or single_low or two_runs):
                raise AuditFailure(f"column {j + 1} has runs {runs}", self.pair)

    def to_text(self) -> str:
        return grid_text(self.entries)


def grid_text(matrix: np.ndarray) -> str:
    """0/1 grids print as digit strings; signed grids as right-aligned cells."""
    if matrix.size and matrix.min() < 0:
        return "\n".join(" ".join(f"{int(x):2d}" for x in row) for row in matrix)
    return "\n".join("".join(str(int(x)) for x in row) for row in matrix)


def ryser_canonical(pair: KostkaPair) -> CanonicalMatrix:
    """Run Ryser's shifting algorithm from the rightmost column down to column 2.

    For column s, the λ'_s rows with the largest sums inside columns 1..s are
    chosen (ties go to the southmost row) and each moves its rightmost 1 in
    that block to column s. Rows stay flush left inside the shrinking block.
    """
    if not gr_nonempty(pair.mu, conjugate(pair.lam)):
        raise InvalidPair(f"no matrix with row sums {pair.mu} and column sums {conjugate(pair.lam)}")
    lam_conj = conjugate(pair.lam)
    width = pair.lam[0]
    matrix = initial_matrix(pair.mu, width, rows=pair.rank)
    history = [_frozen(matrix.copy())]

    for s in range(width, 1, -1):
        block = matrix[:, :s].sum(axis=1)
        beta = lam_conj[s - 1]
        # largest block sum first, then the southmost row
        order = sorted(range(matrix.shape[0]), key=lambda i: (-int(block[i]), -i))
        chosen = order[:beta]
        for i in chosen:
            c = int(block[i])
            if c == 0:
                raise AuditFailure(f"column {s} cannot be filled", pair)
            matrix[i, c - 1] = 0
            matrix[i, s - 1] = 1
        history.append(_frozen(matrix.copy()))
    # column 1 is already in place
    if width:
        history.append(_frozen(matrix.copy()))

    result = CanonicalMatrix(pair=pair, entries=_frozen(matrix), history=tuple(history))
    result.validate()
    logger.debug("ryser_canonical(%s): %d snapshots", pair, len(history))
    return result


def gr_nonempty(alpha, beta) -> bool:
    """Some {0,1}-matrix has row sums alpha and column sums beta."""
    return sum(alpha) == sum(beta) and dominates(conjugate(alpha), beta)


def gr_bruteforce(alpha, beta) -> bool:
    """Search every {0,1}-matrix row by row; referee for gr_nonempty."""
    alpha = [a for a in alpha if a]
    beta = [b for b in beta if b]
    if sum(alpha) != sum(beta):
        return False
    remaining = list(beta)

    def place(i: int) -> bool:
        if i == len(alpha):
            return not any(remaining)
        for cols in combinations([j for j, c in enumerate(remaining) if c > 0], alpha[i]):
            for j in cols:
                remaining[j] -= 1
            found = place(i + 1)
            for j in cols:
                remaining[j] += 1
            if found:
                return True
        return False

    return place(0)


@dataclass(frozen=True, eq=False)
class StarMatrix:
    entries: np.ndarray
    mu_star: tuple[int, ...]

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def validate(self) -> None:
        rows, cols = self.entries.shape
        for j in range(cols):
            signs = [int(x) for x in self.entries[:, j] if x]
            if j == 0 and signs != [1]:
                raise AuditFailure(f"leftmost column of A* reads {signs}")
            if signs not in ([1], [-1, 1], [1, -1, 1]):
                raise AuditFailure(f"column {j + 1} of A* reads {signs}")
        if rows and (self.entries[-1] < 0).any():
            raise AuditFailure("bottom row of A* holds a -1")
        for i in range(rows):
            row = self.entries[i]
            for j in np.flatnonzero(row < 0):
                left = row[:j][row[:j] != 0]
                if not len(left) or left[-1] != 1:
                    raise AuditFailure(f"-1 at ({i + 1},{j + 1}) has no +1 to its left")
        if tuple(int(s) for s in self.entries.sum(axis=1)) != self.mu_star:
            raise AuditFailure("row sums of A* differ from μ*")

    def to_text(self) -> str:
        return grid_text(self.entries)


def mu_star(mu, rows: int) -> tuple[int, ...]:
    """μ*_i = μ_i − μ_{i+1}."""
    mu = mu if isinstance(mu, Partition) else Partition(mu)
    return tuple(mu[i] - mu[i + 1] for i in range(rows))


def star_matrix(A: CanonicalMatrix) -> StarMatrix:
    """Vertical difference of A with a phantom zero row below the last row."""
    entries = A.entries.astype(np.int8)
    below = np.vstack([entries[1:], np.zeros((1, entries.shape[1]), dtype=np.int8)])
    star = StarMatrix(entries=_frozen(entries - below), mu_star=mu_star(A.pair.mu, entries.shape[0]))
    star.validate()
    return star


class StepKind(str, Enum):
    DELETE_COLUMN = "DeleteColumn"
    SHORTEN_RIGHTMOST = "ShortenRightmost"
    SHORTEN_AND_DELETE = "ShortenAndDelete"


@dataclass(frozen=True)
class ShapeStep:
    """One step μ^(i-1) ⊃ μ^(i); lengths are column lengths, positions 1-based."""

    kind: StepKind
    shortened_from: Optional[int] = None
    shortened_to: Optional[int] = None
    deleted: Optional[int] = None
    shortened_column: Optional[int] = None
    deleted_column: Optional[int] = None

    def signature(self) -> dict[int, int]:
        """Expected nonzero entries (row -> sign) in the matching column of A*."""
        sig = {}
        if self.deleted is not None:
            sig[self.deleted] = 1
        if self.shortened_from is not None:
            sig[self.shortened_to] = -1
            sig[self.shortened_from] = 1
        return sig


@dataclass(frozen=True)
class ShapeSequence:
    chain: tuple[Partition, ...]
    steps: tuple[ShapeStep, ...]

    @property
    def step_kinds(self) -> tuple[StepKind, ...]:
        return tuple(step.kind for step in self.steps)


def _classify(before: Partition, after: Partition) -> ShapeStep:
    old_cols = conjugate(before)
    new_cols = conjugate(after)
    removed = Counter(old_cols) - Counter(new_cols)
    added = Counter(new_cols) - Counter(old_cols)
    removed_lengths = sorted(removed.elements(), reverse=True)
    added_lengths = list(added.elements())

    def leftmost(length):
        return sum(1 for c in old_cols if c > length) + 1

    def rightmost(length):
        return sum(1 for c in old_cols if c >= length)

    if len(removed_lengths) == 1 and not added_lengths:
        ell = removed_lengths[0]
        return ShapeStep(StepKind.DELETE_COLUMN, deleted=ell, deleted_column=leftmost(ell))

    if len(added_lengths) == 1 and len(removed_lengths) in (1, 2):
        new_len = added_lengths[0]
        ell = removed_lengths[0]
        if not 0 < new_len < ell:
            raise AuditFailure(f"column of length {ell} grew to {new_len}", (before, after))
        others = list((Counter(new_cols) - Counter([new_len])).elements())
        if any(new_len <= c < ell for c in others):
            raise AuditFailure(f"shortened column {new_len} is not longer than the columns to its right",
                               (before, after))
        if len(removed_lengths) == 1:
            if ell != old_cols[-1]:
                raise AuditFailure(f"shortened column {ell} is not the rightmost", (before, after))
            return ShapeStep(StepKind.SHORTEN_RIGHTMOST, shortened_from=ell, shortened_to=new_len,
                             shortened_column=rightmost(ell))
        deleted = removed_lengths[1]
        next_shorter = max(c for c in old_cols if c < ell)
        if not deleted < new_len or deleted != next_shorter:
            raise AuditFailure(f"deleted column {deleted} does not sit right of the shortened one",
                               (before, after))
        return ShapeStep(StepKind.SHORTEN_AND_DELETE, shortened_from=ell, shortened_to=new_len,
                         deleted=deleted, shortened_column=rightmost(ell), deleted_column=leftmost(deleted))

    raise AuditFailure(f"step {before} -> {after} matches no admissible case", (before, after))


def shape_sequence(pair: KostkaPair, A: Optional[CanonicalMatrix] = None) -> ShapeSequence:
    """Row-sum shapes of the leftmost λ₁−i columns of A(λ,μ), i = 0..λ₁.

    Each step is classified from the column multisets and cross-checked
    against the ±1 pattern in column λ₁−i+1 of A*.
    """
    A = A or ryser_canonical(pair)
    star = star_matrix(A)
    width = A.shape[1]
    chain = []
    for i in range(width + 1):
        sums = A.entries[:, :width - i].sum(axis=1)
        try:
            chain.append(Partition(int(s) for s in sums))
        except InvalidPartition as e:
            raise AuditFailure(f"left submatrix {width - i} has row sums {sums.tolist()}", pair) from e

    steps = []
    for i in range(1, width + 1):
        before, after = chain[i - 1], chain[i]
        if not (before.contains(after) and before != after):
            raise AuditFailure(f"{after} is not strictly inside {before}", pair)
        step = _classify(before, after)
        column = star.entries[:, width - i]
        observed = {r + 1: int(column[r]) for r in np.flatnonzero(column)}
        if observed != step.signature():
            raise AuditFailure(f"step {i}: A* column reads {observed}, expected {step.signature()}", pair)
        steps.append(step)
    return ShapeSequence(chain=tuple(chain), steps=tuple(steps))


@dataclass(frozen=True)
class Decomposition:
    """pair = bullet + circ with both halves nonzero cone members."""

    bullet: KostkaPair
    circ: KostkaPair
    columns: Optional[Witness] = None

    def total(self) -> KostkaPair:
        return self.bullet + self.circ

    def to_dict(self) -> dict:
        data = {"bullet": self.bullet.to_dict(), "circ": self.circ.to_dict()}
        if self.columns is not None:
            data["columns"] = list(self.columns)
        return data


def _is_weakly_decreasing(v: np.ndarray) -> bool:
    return bool(np.all(v[:-1] >= v[1:]))


def matrix_reducible(A: CanonicalMatrix, cap: Optional[int] = None) -> Optional[Witness]:
    """Columns S whose sum and complementary sum are both partitions."""
    cap = config.CAP_WIDTH if cap is None else cap
    total = A.entries.sum(axis=1).astype(np.int64)

    def accept(v: np.ndarray) -> bool:
        return _is_weakly_decreasing(v) and _is_weakly_decreasing(total - v)

    return search_subsets(A.entries.T, accept, cap)


def star_reducible(S: StarMatrix, cap: Optional[int] = None) -> Optional[Witness]:
    """Columns whose A* sum v* satisfies 0 ≤ v* ≤ μ*."""
    cap = config.CAP_WIDTH if cap is None else cap
    bound = np.asarray(S.mu_star, dtype=np.int64)

    def accept(v: np.ndarray) -> bool:
        return bool(np.all(v >= 0) and np.all(v <= bound))

    return search_subsets(S.entries.T, accept, cap)


def split_pair(pair: KostkaPair, S: Witness, A: Optional[CanonicalMatrix] = None) -> Decomposition:
    """Cut pair along the columns S of A(λ,μ): λ• takes the lengths λ'_j for j in S,
    μ• the row sums of those columns."""
    A = A or ryser_canonical(pair)
    width = A.shape[1]
    chosen = sorted(set(S))
    if not chosen or len(chosen) == width or chosen[0] < 1 or chosen[-1] > width:
        raise NotAWitness(f"{S} is not a nontrivial proper column subset of 1..{width}")
    mask = np.zeros(width, dtype=bool)
    mask[[j - 1 for j in chosen]] = True
    inside = A.entries[:, mask].sum(axis=1)
    outside = A.entries[:, ~mask].sum(axis=1)
    if not (_is_weakly_decreasing(inside) and _is_weakly_decreasing(outside)):
        raise NotAWitness(f"columns {tuple(chosen)} do not split A into partitions")

    lam_conj = conjugate(pair.lam)
    lam_in = conjugate(sorted((lam_conj[j - 1] for j in chosen), reverse=True))
    lam_out = conjugate(sorted((lam_conj[j - 1] for j in range(1, width + 1) if not mask[j - 1]), reverse=True))
    try:
        bullet = KostkaPair(lam_in, Partition(int(x) for x in inside), pair.rank)
        circ = KostkaPair(lam_out, Partition(int(x) for x in outside), pair.rank)
    except InvalidPair as e:
        raise AuditFailure(f"split along {tuple(chosen)} left the cone: {e}", pair) from e
    result = Decomposition(bullet=bullet, circ=circ, columns=tuple(chosen))
    if result.total() != pair:
        raise AuditFailure("split halves do not sum to the pair", pair)
    return result
