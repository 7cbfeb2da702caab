"""Exact rank computation for integer matrices.

Multiplication tables carry integer structure constants, and every invariant
of the classifier is the rank of some integer matrix over the rationals.
Floating-point ranks are not acceptable here — a coefficient pattern such as
``[[2, 3], [4, 6]]`` must have rank exactly 1 — so ranks are computed by
fraction-free (Bareiss) elimination: all intermediate entries stay integers,
and every division is exact.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

__all__ = ["rational_rank", "sparse_rank"]


def rational_rank(rows: Iterable[Sequence[int]]) -> int:
    """Rank over the rationals of the integer matrix with the given rows.

    Accepts any iterable of equal-length integer rows; zero rows and an empty
    matrix are fine.  Uses Bareiss elimination with column pivoting, so the
    result is exact for arbitrarily large entries.
    """
    mat = [list(row) for row in rows if any(row)]
    if not mat:
        return 0
    ncols = len(mat[0])
    if any(len(row) != ncols for row in mat):
        raise ValueError("rows must all have the same length")
    nrows = len(mat)
    rank = 0
    prev_pivot = 1
    for col in range(ncols):
        if rank == nrows:
            break
        pivot_row = next((r for r in range(rank, nrows) if mat[r][col]), None)
        if pivot_row is None:
            continue
        if pivot_row != rank:
            mat[rank], mat[pivot_row] = mat[pivot_row], mat[rank]
        pivot = mat[rank][col]
        top = mat[rank]
        for r in range(rank + 1, nrows):
            row = mat[r]
            factor = row[col]
            for c in range(col + 1, ncols):
                # Bareiss step: the division by the previous pivot is exact.
                row[c] = (pivot * row[c] - factor * top[c]) // prev_pivot
            row[col] = 0
        prev_pivot = pivot
        rank += 1
    return rank


def sparse_rank(rows: Iterable[Mapping[object, int]]) -> int:
    """Rank of a matrix given as sparse rows (coordinate -> entry maps).

    Coordinates may be arbitrary hashable objects; only coordinates that
    actually occur contribute columns, which keeps the dense elimination
    small for tables whose support is tiny compared to the ambient space.
    """
    sparse = [{k: v for k, v in row.items() if v} for row in rows]
    sparse = [row for row in sparse if row]
    if not sparse:
        return 0
    coords = sorted({k for row in sparse for k in row}, key=repr)
    index = {k: i for i, k in enumerate(coords)}
    dense = []
    for row in sparse:
        vec = [0] * len(coords)
        for k, v in row.items():
            vec[index[k]] = v
        dense.append(vec)
    return rational_rank(dense)
