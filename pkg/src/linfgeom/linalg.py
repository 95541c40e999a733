"""Small exact linear algebra helpers (reduced row echelon form and friends)."""

from .rational import ONE, ZERO, rat

__all__ = ["rref", "rank", "nullspace", "solve_unique", "span_equal"]


def rref(rows):
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    mat = [list(map(rat, r)) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = ONE / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [v - f * w for v, w in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return [tuple(row) for row in mat[:r]], pivots


def rank(rows) -> int:
    return len(rref(rows)[0])


def nullspace(rows, ncols):
    """Basis of {x : row . x = 0 for every row}, as RREF rows."""
    reduced, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [ZERO] * ncols
        vec[f] = ONE
        for r, p in zip(reduced, pivots):
            vec[p] = -r[f]
        basis.append(tuple(vec))
    return rref(basis)[0] if basis else []


def solve_unique(matrix, rhs):
    """Unique solution of matrix . x = rhs, or None if inconsistent / underdetermined."""
    aug = [tuple(row) + (b,) for row, b in zip(matrix, rhs)]
    ncols = len(matrix[0]) if matrix else 0
    reduced, pivots = rref(aug)
    if ncols in pivots:  # pivot in the rhs column: inconsistent
        return None
    if len(pivots) < ncols:
        return None
    sol = [ZERO] * ncols
    for row, p in zip(reduced, pivots):
        sol[p] = row[-1]
    return tuple(sol)


def span_equal(rows_a, rows_b) -> bool:
    return rref(rows_a)[0] == rref(rows_b)[0]
