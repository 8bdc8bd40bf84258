"""Exact sparse rational matrices with rank and kernel computation.

Rank/kernel run fraction-free: rows are cleared to integers and kept
gcd-reduced through elimination, so no rational blow-up occurs on the
larger cochain matrices.  Pivots are chosen by a Markowitz-style fill
estimate with deterministic tie-breaking, which keeps results identical
across runs.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class SparseMatrix:
    """Immutable-by-convention sparse matrix over Fraction entries."""

    __slots__ = ("n_rows", "n_cols", "entries")

    def __init__(self, n_rows: int, n_cols: int, entries: dict | None = None):
        self.n_rows = n_rows
        self.n_cols = n_cols
        self.entries: dict = {}
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < n_rows and 0 <= c < n_cols):
                    raise ValueError("index out of range")
                v = Fraction(v)
                if v:
                    self.entries[(r, c)] = v

    def nnz(self) -> int:
        return len(self.entries)

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.n_cols, self.n_rows,
                            {(c, r): v for (r, c), v in self.entries.items()})

    def columns(self) -> list[dict]:
        cols: list[dict] = [dict() for _ in range(self.n_cols)]
        for (r, c), v in self.entries.items():
            cols[c][r] = v
        return cols

    def rows(self) -> list[dict]:
        rows: list[dict] = [dict() for _ in range(self.n_rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def apply(self, vec: dict) -> dict:
        """Matrix times a sparse column vector (dict col -> Fraction)."""
        out: dict = {}
        rows_touching = self.entries
        for (r, c), v in rows_touching.items():
            x = vec.get(c)
            if x:
                s = out.get(r, Fraction(0)) + v * x
                if s:
                    out[r] = s
                else:
                    del out[r]
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, SparseMatrix) and self.n_rows == other.n_rows
                and self.n_cols == other.n_cols and self.entries == other.entries)


@dataclass
class RankResult:
    rank: int
    kernel_dim: int
    kernel: list | None = None  # list of dict col -> Fraction, integer entries


def _int_rows_from_columns(m: SparseMatrix, tail_at: int | None = None) -> list[dict]:
    """Columns of m as integer rows (denominators cleared per column).

    With tail_at set, row j carries an identity-tail entry at tail_at + j
    scaled consistently with the left part, so row operations preserve
    the invariant "left part = (tail) . transpose(m)".
    """
    cols = m.columns()
    out = []
    for j, col in enumerate(cols):
        denom_lcm = 1
        for v in col.values():
            d = v.denominator
            denom_lcm = denom_lcm // gcd(denom_lcm, d) * d
        row = {r: int(v * denom_lcm) for r, v in col.items()}
        if tail_at is not None:
            row[tail_at + j] = denom_lcm
        _gcd_reduce(row)
        out.append(row)
    return out


def _gcd_reduce(row: dict) -> None:
    g = 0
    for v in row.values():
        g = gcd(g, abs(v))
        if g == 1:
            return
    if g > 1:
        for k in row:
            row[k] //= g


def rank_kernel(m: SparseMatrix, want_basis: bool = False) -> RankResult:
    """Exact rank over Q and kernel dimension, optionally a kernel basis.

    Works on the transpose (each matrix column becomes an elimination
    row); with want_basis the rows carry an identity tail whose surviving
    part spans the kernel.  Kernel vectors come out integral and primitive.
    """
    ncols = m.n_cols
    left_width = m.n_rows
    rows = _int_rows_from_columns(m, tail_at=left_width if want_basis else None)

    # column index over left columns only
    col_rows: dict = {}
    left_count = []
    for ridx, row in enumerate(rows):
        cnt = 0
        for c in row:
            if c < left_width:
                col_rows.setdefault(c, set()).add(ridx)
                cnt += 1
        left_count.append(cnt)

    heap = [(len(rs), c) for c, rs in col_rows.items()]
    heapq.heapify(heap)
    active = [True] * len(rows)
    rank = 0

    while heap:
        cnt, c = heapq.heappop(heap)
        rs = col_rows.get(c)
        if not rs:
            continue
        if cnt != len(rs):
            heapq.heappush(heap, (len(rs), c))
            continue
        # pivot row in this column: fewest left entries, smallest value, lowest id
        pr = min(rs, key=lambda r: (left_count[r], abs(rows[r][c]), r))
        prow = rows[pr]
        pval = prow[c]
        for r in sorted(rs):
            if r == pr:
                continue
            row = rows[r]
            v = row.pop(c)
            col_rows[c].discard(r)
            touched = set(prow) | set(row)
            newcnt = 0
            for k in touched:
                if k == c:
                    continue
                a = row.get(k, 0) * pval - v * prow.get(k, 0)
                old = k in row
                if a:
                    row[k] = a
                    if k < left_width:
                        newcnt += 1
                        if not old:
                            rs2 = col_rows.setdefault(k, set())
                            rs2.add(r)
                            heapq.heappush(heap, (len(rs2), k))
                else:
                    if old:
                        del row[k]
                        if k < left_width:
                            col_rows[k].discard(r)
            left_count[r] = newcnt
            _gcd_reduce(row)
        # retire the pivot row
        for k in list(prow):
            if k < left_width and k != c:
                col_rows[k].discard(pr)
        col_rows.pop(c, None)
        active[pr] = False
        rank += 1

    kernel = None
    if want_basis:
        kernel = []
        for ridx, row in enumerate(rows):
            if not active[ridx]:
                continue
            vec = {c - left_width: Fraction(v) for c, v in row.items() if c >= left_width}
            if vec:
                kernel.append(vec)
        kernel.sort(key=lambda v: sorted(v.items()))
        assert len(kernel) == ncols - rank
    return RankResult(rank=rank, kernel_dim=ncols - rank, kernel=kernel)


def rank_only(m: SparseMatrix) -> int:
    return rank_kernel(m, want_basis=False).rank


def compose_is_zero(a: SparseMatrix, b: SparseMatrix) -> bool:
    """True iff a @ b is exactly the zero matrix."""
    if a.n_cols != b.n_rows:
        raise ValueError("inner dimensions do not match")
    a_cols = a.columns()
    b_cols = b.columns()
    for col in b_cols:
        acc: dict = {}
        for k, v in col.items():
            for r, w in a_cols[k].items():
                s = acc.get(r, Fraction(0)) + w * v
                if s:
                    acc[r] = s
                else:
                    del acc[r]
        if acc:
            return False
    return True


def matmul(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    if a.n_cols != b.n_rows:
        raise ValueError("inner dimensions do not match")
    a_cols = a.columns()
    entries: dict = {}
    for (r, c), v in b.entries.items():
        for rr, w in a_cols[r].items():
            key = (rr, c)
            s = entries.get(key, Fraction(0)) + w * v
            if s:
                entries[key] = s
            else:
                del entries[key]
    return SparseMatrix(a.n_rows, b.n_cols, entries)


def from_column_vectors(n_rows: int, vectors: list) -> SparseMatrix:
    """Stack sparse column vectors (dicts row -> value) into a matrix."""
    entries = {}
    for j, vec in enumerate(vectors):
        for r, v in vec.items():
            entries[(r, j)] = v
    return SparseMatrix(n_rows, len(vectors), entries)
