"""Exact sparse linear algebra over Gaussian rationals.

Row reduction with deterministic pivoting (lowest column, then first row),
used for rank and quotient dimensions of relation matrices.  No fraction-free
tricks are needed: GaussRat arithmetic is exact by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ring import GaussRat

__all__ = ["SparseMatrix", "rref_rank", "RrefResult"]

Row = dict[int, GaussRat]


@dataclass
class SparseMatrix:
    rows: list[Row]
    ncols: int

    def __post_init__(self):
        for row in self.rows:
            for j, c in list(row.items()):
                if j < 0 or j >= self.ncols:
                    raise ValueError(f"column index {j} out of range")
                if not c:
                    del row[j]

    @classmethod
    def from_dense(cls, rows: list[list[GaussRat]]) -> SparseMatrix:
        ncols = len(rows[0]) if rows else 0
        sparse = [{j: c for j, c in enumerate(row) if c} for row in rows]
        return cls(sparse, ncols)

    def transpose(self) -> SparseMatrix:
        out: list[Row] = [{} for _ in range(self.ncols)]
        for i, row in enumerate(self.rows):
            for j, c in row.items():
                out[j][i] = c
        return SparseMatrix(out, len(self.rows))


@dataclass(frozen=True)
class RrefResult:
    rank: int
    pivot_cols: tuple[int, ...]
    rows: tuple[tuple[tuple[int, GaussRat], ...], ...]

    def row_dicts(self) -> list[Row]:
        return [dict(r) for r in self.rows]


def _scale_row(row: Row, c: GaussRat) -> Row:
    return {j: v * c for j, v in row.items()}


def _axpy(dst: Row, src: Row, c: GaussRat) -> None:
    """dst += c * src, dropping zeros in place."""
    for j, v in src.items():
        s = dst.get(j, GaussRat(0)) + v * c
        if s:
            dst[j] = s
        else:
            dst.pop(j, None)


def rref_rank(m: SparseMatrix) -> RrefResult:
    """Reduced row echelon form; pivots are unit leading coefficients."""
    work = [dict(r) for r in m.rows]
    pivots: list[tuple[int, int]] = []  # (col, row index in `reduced`)
    reduced: list[Row] = []
    remaining = list(range(len(work)))
    while True:
        # deterministic pivot: lowest column present, then first row holding it
        best_col = None
        best_row = None
        for idx in remaining:
            row = work[idx]
            if not row:
                continue
            col = min(row)
            if best_col is None or col < best_col:
                best_col = col
                best_row = idx
        if best_col is None:
            break
        remaining.remove(best_row)
        pivot_row = _scale_row(work[best_row], GaussRat(1) / work[best_row][best_col])
        for idx in remaining:
            row = work[idx]
            if best_col in row:
                _axpy(row, pivot_row, -row[best_col])
        for col, rown in pivots:
            row = reduced[rown]
            if best_col in row:
                _axpy(row, pivot_row, -row[best_col])
        pivots.append((best_col, len(reduced)))
        reduced.append(pivot_row)

    order = sorted(range(len(pivots)), key=lambda k: pivots[k][0])
    rows_out = tuple(
        tuple(sorted(reduced[pivots[k][1]].items())) for k in order
    )
    return RrefResult(
        rank=len(pivots),
        pivot_cols=tuple(pivots[k][0] for k in order),
        rows=rows_out,
    )


def reduce_against(row: Row, basis: RrefResult) -> Row:
    """Reduce a row against an rref basis; empty result means membership."""
    work = dict(row)
    for pivot_col, basis_row in zip(basis.pivot_cols, basis.rows):
        c = work.get(pivot_col)
        if c:
            _axpy(work, dict(basis_row), -c)
    return work
