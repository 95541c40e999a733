"""Classification of linear subspaces of R^n under the sup norm.

Decides, by exact linear algebra alone, whether a subspace is hyperconvex
(admits a coordinate section with l1-contractive coefficients), strongly
convex (trivial, a diagonal line through a cube vertex, or everything),
weakly externally hyperconvex (an intersection of coordinate and
two-coordinate hyperplanes, equivalently a product of zero coordinates,
free coordinates and diagonal lines), or externally hyperconvex
(a coordinate subspace, i.e. a cuboid).
"""

from dataclasses import dataclass
from itertools import combinations

from .linalg import nullspace, rref, solve_unique
from .rational import ONE, ZERO, rat

__all__ = [
    "LinearSubspace",
    "WehDecomposition",
    "pivot_representation",
    "is_hyperconvex_subspace",
    "is_strongly_convex_subspace",
    "classify_weh_subspace",
    "is_eh_subspace",
]


@dataclass(frozen=True)
class LinearSubspace:
    """Row space of `basis` inside R^dim_ambient; basis is canonical (RREF)."""

    dim_ambient: int
    basis: tuple

    @classmethod
    def from_vectors(cls, dim_ambient, vectors) -> "LinearSubspace":
        vecs = [tuple(rat(c) for c in v) for v in vectors]
        for v in vecs:
            if len(v) != dim_ambient:
                raise ValueError(
                    f"vector of length {len(v)} in ambient dimension {dim_ambient}"
                )
        reduced, _ = rref(vecs)
        return cls(dim_ambient, tuple(reduced))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def equality_system(self):
        """Rows a with V = {x : a.x = 0 for all rows}; rank = n - dim."""
        if not self.basis:
            eye = []
            for i in range(self.dim_ambient):
                row = [ZERO] * self.dim_ambient
                row[i] = ONE
                eye.append(tuple(row))
            return tuple(eye)
        return tuple(nullspace(self.basis, self.dim_ambient))

    def contains_vector(self, v) -> bool:
        v = tuple(rat(c) for c in v)
        return all(
            sum((a * x for a, x in zip(row, v)), ZERO) == ZERO
            for row in self.equality_system()
        )


def pivot_representation(V: LinearSubspace, pivot_set):
    """Coefficients expressing each non-pivot coordinate from the pivot ones.

    Returns {i: (c_j for j in pivot_set)} for i outside the pivot set, such
    that x_i = sum_j c_j x_j on V, or None when projection onto the pivot
    coordinates is not a bijection of V.
    """
    J = tuple(sorted(pivot_set))
    if len(J) != V.dim:
        raise ValueError(f"pivot set of size {len(J)} for a subspace of dimension {V.dim}")
    B = V.basis
    matrix = [tuple(row[j] for j in J) for row in B]
    out = {}
    for i in range(V.dim_ambient):
        if i in J:
            continue
        if not B:  # V = {0}: every coordinate is the empty combination
            out[i] = ()
            continue
        sol = solve_unique(matrix, rhs=tuple(row[i] for row in B))
        if sol is None:
            return None
        out[i] = sol
    return out


def is_hyperconvex_subspace(V: LinearSubspace):
    """Exhaustive search for a coordinate section with l1 norm <= 1 per row.

    Returns (True, pivot_set) on success, (False, None) otherwise.  The
    search is exhaustive over all (n choose k) pivot sets; a guard rejects
    ambient dimensions over 16.
    """
    n, k = V.dim_ambient, V.dim
    if n > 16:
        raise ValueError(f"ambient dimension {n} over the exhaustive-search cap 16")
    for J in combinations(range(n), k):
        coeffs = pivot_representation(V, J)
        if coeffs is None:
            continue
        if all(sum(map(abs, c), ZERO) <= ONE for c in coeffs.values()):
            return True, J
    return False, None


def is_strongly_convex_subspace(V: LinearSubspace) -> bool:
    k, n = V.dim, V.dim_ambient
    if k == 0 or k == n:
        return True
    if k != 1:
        return False
    v = V.basis[0]
    mags = {abs(c) for c in v}
    return ZERO not in mags and len(mags) == 1


@dataclass(frozen=True)
class WehDecomposition:
    """Coordinate split of a subspace into free axes, zeros and diagonal lines.

    axis: coordinates on which the subspace is a full free factor.
    zeros: coordinates identically zero.
    blocks: (coords, signs) pairs, each the line {t * signs} on its coords.
    The three parts partition range(n).
    """

    dim_ambient: int
    axis: tuple
    zeros: tuple
    blocks: tuple

    def reconstruct(self) -> LinearSubspace:
        vectors = []
        for i in self.axis:
            row = [ZERO] * self.dim_ambient
            row[i] = ONE
            vectors.append(row)
        for coords, signs in self.blocks:
            row = [ZERO] * self.dim_ambient
            for c, s in zip(coords, signs):
                row[c] = rat(s)
            vectors.append(row)
        return LinearSubspace.from_vectors(self.dim_ambient, vectors)


def classify_weh_subspace(V: LinearSubspace):
    """Decompose V as zeros x free axes x diagonal lines, or None.

    Collects every coordinate hyperplane {x_i = 0} and two-coordinate
    hyperplane {x_i = +-x_j} containing V; V passes iff the intersection W of
    all of them equals V, which happens exactly when dim W == dim V.  The
    component structure of the two-coordinate links then yields the product
    decomposition.
    """
    n = V.dim_ambient
    cols = [tuple(row[i] for row in V.basis) for i in range(n)]
    zero_col = tuple(ZERO for _ in V.basis)
    zeros = [i for i in range(n) if cols[i] == zero_col]
    zeroset = set(zeros)
    live = [i for i in range(n) if i not in zeroset]

    # union-find over live coordinates with signs relative to the root
    parent = {i: i for i in live}
    sign = {i: 1 for i in live}

    def find(i):
        path = []
        while parent[i] != i:
            path.append(i)
            i = parent[i]
        s = 1
        for j in reversed(path):
            s *= sign[j]
            parent[j] = i
            sign[j] = s
        return i

    for i, j in combinations(live, 2):
        if cols[i] == cols[j]:
            link = 1
        elif cols[i] == tuple(-c for c in cols[j]):
            link = -1
        else:
            continue
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri
            sign[rj] = sign[i] * link * sign[j]

    comps = {}
    for i in live:
        comps.setdefault(find(i), []).append(i)

    axis, blocks = [], []
    for root in sorted(comps):
        coords = sorted(comps[root])
        if len(coords) == 1:
            axis.append(coords[0])
        else:
            base = sign[coords[0]]
            signs = tuple(sign[c] * base for c in coords)
            blocks.append((tuple(coords), signs))

    if len(axis) + len(blocks) != V.dim:
        return None
    deco = WehDecomposition(n, tuple(axis), tuple(zeros), tuple(blocks))
    # dim W == dim V and V <= W force equality; assert the round trip anyway
    assert deco.reconstruct().basis == V.basis
    return deco


def is_eh_subspace(V: LinearSubspace) -> bool:
    """Coordinate subspaces (products of full and zero factors) only."""
    for row in V.basis:
        nonzero = [c for c in row if c]
        if len(nonzero) != 1 or nonzero[0] != ONE:
            return False
    return True
