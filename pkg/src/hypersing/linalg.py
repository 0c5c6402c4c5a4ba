"""Dense Gaussian elimination over a :class:`Field` on raw values."""

from __future__ import annotations

from .scalars import Field


def rref(rows: list[list], field: Field) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns; zero rows dropped."""
    M = [list(r) for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    zero = field.zero
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != zero), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = field.inv(M[r][c])
        M[r] = [field.mul(x, inv) for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != zero:
                k = M[i][c]
                M[i] = [field.sub(a, field.mul(k, b)) for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows: list[list], field: Field) -> int:
    return len(rref(rows, field)[1])


def nullspace(rows: list[list], ncols: int, field: Field) -> list[list]:
    """Basis of ``{x : rows . x = 0}``."""
    R, pivots = rref(rows, field) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for row, pc in zip(R, pivots):
            v[pc] = field.neg(row[fc])
        basis.append(v)
    return basis


def solve(A: list[list], b: list, field: Field) -> list | None:
    """One solution of ``A x = b`` or None when inconsistent."""
    if not A:
        return [] if all(x == field.zero for x in b) else None
    ncols = len(A[0])
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(aug, field)
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for row, pc in zip(R, pivots):
        x[pc] = row[ncols]
    return x
