"""Dense exact linear algebra over F_p: RREF, rank, kernels, block elimination.

Matrices are small (tens of rows) so everything is plain Gaussian elimination
on lists of canonical residues.  The row-level helpers at the bottom operate
on raw list-of-lists and are the hot path for the zero-pattern solvers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

LOWER_TRIANGULAR = "lower_triangular"
DIAGONAL = "diagonal"


@dataclass(frozen=True)
class MatrixFq:
    """Rectangular matrix over a single prime modulus, entries canonical in [0, p)."""

    p: int
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, p: int, rows: Sequence[Sequence[int]]) -> MatrixFq:
        if rows:
            width = len(rows[0])
            if any(len(row) != width for row in rows):
                raise ValueError("matrix rows must all have the same length")
        return cls(p, tuple(tuple(v % p for v in row) for row in rows))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def transpose(self) -> MatrixFq:
        return MatrixFq(self.p, tuple(zip(*self.rows)) if self.rows else ())

    def row_lists(self) -> list[list[int]]:
        return [list(row) for row in self.rows]

    def to_text(self) -> str:
        """Dump format: one row per line, space-separated residues."""
        return "\n".join(" ".join(str(v) for v in row) for row in self.rows)

    @classmethod
    def from_text(cls, p: int, text: str) -> MatrixFq:
        rows = [[int(v) for v in line.split()] for line in text.strip().splitlines() if line.strip()]
        return cls.from_rows(p, rows)


@dataclass(frozen=True)
class RrefResult:
    matrix: MatrixFq
    rank: int
    pivot_columns: tuple[int, ...]


@dataclass(frozen=True)
class KernelBasis:
    """Linearly independent kernel vectors, stored as the RREF of the basis matrix."""

    p: int
    ambient: int
    vectors: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if any(len(v) != self.ambient for v in self.vectors):
            raise ValueError("kernel vectors must have the ambient length")

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def vector_lists(self) -> list[list[int]]:
        return [list(v) for v in self.vectors]

    def to_matrix(self) -> MatrixFq:
        return MatrixFq(self.p, self.vectors)


def rref(m: MatrixFq) -> RrefResult:
    """Reduced row echelon form with unit pivots."""
    rows, rank, pivots = rref_rows(m.row_lists(), m.p)
    return RrefResult(MatrixFq.from_rows(m.p, rows), rank, tuple(pivots))


def right_kernel(m: MatrixFq) -> KernelBasis:
    """Canonical basis of {c : M c = 0}."""
    vectors = right_kernel_rows(m.row_lists(), m.ncols, m.p)
    return KernelBasis(m.p, m.ncols, tuple(tuple(v) for v in vectors))


def left_kernel(m: MatrixFq) -> KernelBasis:
    """Canonical basis of {v : v^T M = 0}, the kernel of the transpose."""
    t = m.transpose()
    vectors = right_kernel_rows(t.row_lists(), t.ncols, t.p)
    return KernelBasis(m.p, m.nrows, tuple(tuple(v) for v in vectors))


@dataclass(frozen=True)
class BlockElimination:
    basis: KernelBasis
    pivot_columns: tuple[int, ...]
    singular: bool


def eliminate_block(kb: KernelBasis, start: int, stop: int, stage: str) -> BlockElimination:
    """Row-reduce the column window [start, stop) of a kernel-basis matrix.

    stage = LOWER_TRIANGULAR clears entries above the block diagonal (pivot
    row t paired with the t-th block column, processed bottom-up); DIAGONAL
    clears everything off the block diagonal.  Only row operations are used,
    so the row span (the kernel subspace) is preserved exactly.

    When the natural diagonal pivot vanishes, a different unused block column
    is selected instead and recorded in pivot_columns; if no pivot exists at
    some position the block is flagged singular and elimination proceeds as
    far as possible.
    """
    if stage not in (LOWER_TRIANGULAR, DIAGONAL):
        raise ValueError(f"unknown stage {stage!r}")
    p = kb.p
    vecs = kb.vector_lists()
    nrows = len(vecs)
    cols = list(range(max(start, 0), min(stop, kb.ambient)))
    width = min(nrows, len(cols))
    pivot_cols: list[int] = []
    used: set[int] = set()
    singular = False

    positions = range(width - 1, -1, -1) if stage == LOWER_TRIANGULAR else range(width)
    for t in positions:
        # Prefer the natural diagonal column, then any unused block column.
        candidates = [cols[t]] + [c for c in cols if c != cols[t]]
        search_rows = range(t + 1) if stage == LOWER_TRIANGULAR else range(t, nrows)
        pivot_row = pivot_col = None
        for c in candidates:
            if c in used:
                continue
            for r in search_rows:
                if vecs[r][c]:
                    pivot_row, pivot_col = r, c
                    break
            if pivot_row is not None:
                break
        if pivot_row is None:
            singular = True
            continue
        used.add(pivot_col)
        pivot_cols.append(pivot_col)
        vecs[t], vecs[pivot_row] = vecs[pivot_row], vecs[t]
        inv = pow(vecs[t][pivot_col], -1, p)
        targets = range(t) if stage == LOWER_TRIANGULAR else (r for r in range(nrows) if r != t)
        pivot_vec = vecs[t]
        for r in targets:
            entry = vecs[r][pivot_col]
            if entry:
                factor = entry * inv % p
                row = vecs[r]
                vecs[r] = [(a - factor * b) % p for a, b in zip(row, pivot_vec)]

    basis = KernelBasis(p, kb.ambient, tuple(tuple(v) for v in vecs))
    return BlockElimination(basis, tuple(pivot_cols), singular)


def in_row_space(vectors: Sequence[Sequence[int]], candidate: Sequence[int], p: int) -> bool:
    """Membership test by rank comparison."""
    base = [list(v) for v in vectors]
    return row_rank(base, p) == row_rank(base + [list(candidate)], p)


# ---------------------------------------------------------------------------
# Row-level helpers (hot path; callers hand in plain lists)
# ---------------------------------------------------------------------------


def row_rank(rows: Sequence[Sequence[int]], p: int) -> int:
    """Rank by fraction-free elimination (no modular inversions)."""
    work = [list(row) for row in rows]
    nrows = len(work)
    if nrows == 0:
        return 0
    ncols = len(work[0])
    rank = 0
    for c in range(ncols):
        pivot_row = None
        for r in range(rank, nrows):
            if work[r][c] % p:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        work[rank], work[pivot_row] = work[pivot_row], work[rank]
        pivot_vec = work[rank]
        piv = pivot_vec[c] % p
        for r in range(rank + 1, nrows):
            row = work[r]
            entry = row[c] % p
            if entry:
                for j in range(c, ncols):
                    row[j] = (piv * row[j] - entry * pivot_vec[j]) % p
        rank += 1
        if rank == nrows:
            break
    return rank


def rref_rows(rows: Sequence[Sequence[int]], p: int) -> tuple[list[list[int]], int, list[int]]:
    """RREF with unit pivots; returns (rows, rank, pivot column indices)."""
    work = [[v % p for v in row] for row in rows]
    nrows = len(work)
    ncols = len(work[0]) if nrows else 0
    pivots: list[int] = []
    rank = 0
    for c in range(ncols):
        pivot_row = None
        for r in range(rank, nrows):
            if work[r][c]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        work[rank], work[pivot_row] = work[pivot_row], work[rank]
        inv = pow(work[rank][c], -1, p)
        work[rank] = [v * inv % p for v in work[rank]]
        pivot_vec = work[rank]
        for r in range(nrows):
            if r != rank and work[r][c]:
                entry = work[r][c]
                row = work[r]
                work[r] = [(a - entry * b) % p for a, b in zip(row, pivot_vec)]
        pivots.append(c)
        rank += 1
        if rank == nrows:
            break
    return work, rank, pivots


def right_kernel_rows(rows: Sequence[Sequence[int]], ncols: int, p: int) -> list[list[int]]:
    """Canonical (RREF) basis of the right kernel of a raw row list."""
    reduced, rank, pivots = rref_rows(rows, p) if rows else ([], 0, [])
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    if not free_cols:
        return []
    vectors = []
    for free in free_cols:
        v = [0] * ncols
        v[free] = 1
        for r, c in enumerate(pivots):
            v[c] = -reduced[r][free] % p
        vectors.append(v)
    canonical, _, _ = rref_rows(vectors, p)
    return canonical
