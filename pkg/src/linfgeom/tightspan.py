"""Cells of the minimal hyperconvex extension of a finite metric space.

The admissible-potential polyhedron of a finite metric consists of the
functions with f(x) + f(y) >= d(x,y); turning a chosen set of pair
inequalities into equalities cuts out a polyhedral cell.  Cells are
enumerated with extremality tags (a cell is tagged when every point of it is
a minimal admissible function), and each nonempty cell carries a
two-coordinate-grammar certificate of weak external hyperconvexity after
recentering at a basepoint.
"""

from dataclasses import dataclass
from itertools import combinations

from .polyhedra import (
    HPolyhedron,
    WehStatus,
    WehVerdict,
    canonicalize,
    fm_witness,
    relative_interior_point,
)
from .rational import ONE, ZERO, rat

__all__ = [
    "FiniteMetricSpace",
    "metric_space",
    "delta_polyhedron",
    "is_admissible",
    "is_extremal",
    "Cell",
    "cell_nonempty",
    "cell_witness",
    "enumerate_cells",
    "cell_weh_certificate",
    "MAX_POINTS",
]

MAX_POINTS = 6


@dataclass(frozen=True)
class FiniteMetricSpace:
    dists: tuple  # m x m matrix, exact rationals

    @property
    def size(self) -> int:
        return len(self.dists)

    def d(self, x, y):
        return self.dists[x][y]

    def pairs(self):
        return tuple(combinations(range(self.size), 2))


def metric_space(rows) -> FiniteMetricSpace:
    m = len(rows)
    d = tuple(tuple(rat(v) for v in row) for row in rows)
    if any(len(row) != m for row in d):
        raise ValueError("distance matrix must be square")
    for i in range(m):
        if d[i][i] != ZERO:
            raise ValueError("nonzero diagonal entry")
        for j in range(m):
            if d[i][j] != d[j][i]:
                raise ValueError("asymmetric distance matrix")
            if i != j and d[i][j] <= ZERO:
                raise ValueError("nonpositive distance between distinct points")
    for i in range(m):
        for j in range(m):
            for k in range(m):
                if d[i][j] > d[i][k] + d[k][j]:
                    raise ValueError("triangle inequality fails")
    return FiniteMetricSpace(d)


def delta_polyhedron(X: FiniteMetricSpace) -> HPolyhedron:
    """Admissible potentials: f(x) + f(y) >= d(x,y) for all pairs, f >= 0."""
    m = X.size
    rows = []
    for x, y in X.pairs():
        coeffs = [ZERO] * m
        coeffs[x] = -ONE
        coeffs[y] = -ONE
        rows.append((tuple(coeffs), -X.d(x, y)))
    for x in range(m):
        coeffs = [ZERO] * m
        coeffs[x] = -ONE
        rows.append((tuple(coeffs), ZERO))
    return HPolyhedron(m, tuple(rows), ())


def is_admissible(X: FiniteMetricSpace, f) -> bool:
    f = tuple(rat(v) for v in f)
    if len(f) != X.size:
        raise ValueError("value vector length mismatch")
    if any(v < ZERO for v in f):
        return False
    return all(f[x] + f[y] >= X.d(x, y) for x, y in X.pairs())


def is_extremal(X: FiniteMetricSpace, f) -> bool:
    """Minimality: every coordinate is pinned by some tight pair constraint."""
    f = tuple(rat(v) for v in f)
    if not is_admissible(X, f):
        raise ValueError("not an admissible potential")
    m = X.size
    for x in range(m):
        if not any(f[x] + f[y] == X.d(x, y) for y in range(m)):
            return False
    return True


def _component_form(X: FiniteMetricSpace, edges):
    """Solve the edge equalities f(x) + f(y) = d(x,y) by graph propagation.

    On each connected component the solution is f_v = alpha_v + eps_v * t
    with eps = +-1 and one scalar t per component; odd cycles pin t and
    parity conflicts on alpha make the cell empty.  Returns
    (alpha, eps, comp, pinned, n_comps) or None when inconsistent.
    """
    m = X.size
    adj = {v: [] for v in range(m)}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    alpha = [None] * m
    eps = [None] * m
    comp = [None] * m
    pinned = {}
    cid = 0
    for root in range(m):
        if comp[root] is not None:
            continue
        comp[root] = cid
        alpha[root] = ZERO
        eps[root] = 1
        stack = [root]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                want_alpha = X.d(u, v) - alpha[u]
                want_eps = -eps[u]
                if comp[v] is None:
                    comp[v] = cid
                    alpha[v] = want_alpha
                    eps[v] = want_eps
                    stack.append(v)
                elif eps[v] == want_eps:
                    if alpha[v] != want_alpha:
                        return None
                else:
                    t = (want_alpha - alpha[v]) / rat(2 * eps[v])
                    if pinned.setdefault(cid, t) != t:
                        return None
        cid += 1
    return alpha, eps, comp, pinned, cid


def _parameter_rows(X, edges, form):
    """Inequality rows over the component parameters for the leftover
    constraints (non-edge pairs and nonnegativity)."""
    alpha, eps, comp, pinned, ncomp = form
    m = X.size
    edge_set = set(edges)
    rows = []

    def emit(coeff_pairs, lower):
        # sum of eps*t terms >= lower  ->  -(terms) <= -lower
        coeffs = [ZERO] * ncomp
        for c, e in coeff_pairs:
            coeffs[c] += rat(e)
        rows.append((tuple(-a for a in coeffs), -lower))

    for x, y in X.pairs():
        if (x, y) in edge_set:
            continue
        lower = X.d(x, y) - alpha[x] - alpha[y]
        emit([(comp[x], eps[x]), (comp[y], eps[y])], lower)
    for x in range(m):
        emit([(comp[x], eps[x])], -alpha[x])
    for c, t in pinned.items():
        unit = [ZERO] * ncomp
        unit[c] = ONE
        rows.append((tuple(unit), t))
        rows.append((tuple(-u for u in unit), -t))
    return rows, ncomp


def cell_witness(X: FiniteMetricSpace, edges):
    """A point of the cell, or None when it is empty (exact, LP-free)."""
    form = _component_form(X, tuple(edges))
    if form is None:
        return None
    rows, ncomp = _parameter_rows(X, tuple(edges), form)
    t = fm_witness(ncomp, rows)
    if t is None:
        return None
    alpha, eps, comp, _, _ = form
    return tuple(
        alpha[v] + rat(eps[v]) * t[comp[v]] for v in range(X.size)
    )


def cell_nonempty(X: FiniteMetricSpace, edges) -> bool:
    return cell_witness(X, edges) is not None


def cell_polyhedron(X: FiniteMetricSpace, edges) -> HPolyhedron:
    """The admissible polyhedron with the chosen pairs forced tight."""
    m = X.size
    base = delta_polyhedron(X)
    eqs = []
    for x, y in edges:
        coeffs = [ZERO] * m
        coeffs[x] = ONE
        coeffs[y] = ONE
        eqs.append((tuple(coeffs), X.d(x, y)))
    return HPolyhedron(m, base.ineqs, tuple(eqs))


@dataclass(frozen=True)
class Cell:
    edges: tuple
    polyhedron: HPolyhedron
    dim: int
    extremal: bool  # every point of the cell is a minimal admissible potential


def _canon_edges(edges):
    return tuple(sorted(tuple(sorted(e)) for e in edges))


def enumerate_cells(X: FiniteMetricSpace, include_empty=False):
    """All nonempty cells over every subset of pairs, in subset order.

    Cells are canonicalized; the extremality tag is decided at one relative
    interior point, which suffices because the extremality defect is concave
    and nonnegative on the cell.
    """
    if X.size > MAX_POINTS:
        raise ValueError(f"metric space over the {MAX_POINTS}-point enumeration cap")
    pairs = X.pairs()
    out = []
    for mask in range(1 << len(pairs)):
        edges = _canon_edges(
            pairs[i] for i in range(len(pairs)) if mask >> i & 1
        )
        if not cell_nonempty(X, edges):
            continue
        canon = canonicalize(cell_polyhedron(X, edges))
        assert canon is not None
        interior = relative_interior_point(canon)
        out.append(
            Cell(
                edges,
                canon,
                dim=X.size - len(canon.eqs),
                extremal=is_extremal(X, interior),
            )
        )
    return out


def cell_weh_certificate(X: FiniteMetricSpace, edges, basepoint=0) -> WehVerdict:
    """Certificate that a nonempty cell, recentered at a basepoint, is cut out
    by two-coordinate constraints (hence weakly externally hyperconvex).

    The recentering g = f - d(basepoint, .) turns every pair constraint into
    -g(x) - g(y) <= C with C >= 0 by the triangle inequality, and the edge
    equalities into pairs of the same shape.
    """
    edges = _canon_edges(edges)
    if not cell_nonempty(X, edges):
        raise ValueError("empty cell")
    m = X.size
    if not 0 <= basepoint < m:
        raise ValueError("basepoint out of range")
    base = X.dists[basepoint]
    ineqs, eqs = [], []
    for x, y in X.pairs():
        coeffs = [ZERO] * m
        coeffs[x] = -ONE
        coeffs[y] = -ONE
        bound = base[x] + base[y] - X.d(x, y)
        assert bound >= ZERO
        target = eqs if (x, y) in set(edges) else ineqs
        target.append((tuple(coeffs), -bound))
    for x in range(m):
        coeffs = [ZERO] * m
        coeffs[x] = -ONE
        ineqs.append((tuple(coeffs), base[x]))
    rows = list(ineqs)
    for coeffs, rhs in eqs:
        rows.append((coeffs, rhs))
        rows.append((tuple(-a for a in coeffs), -rhs))
    return WehVerdict(WehStatus.CERTIFIED_WEH, certificate=tuple(rows))
