"""H-representation polyhedra under the sup norm.

Canonical forms (emptiness, implied equalities, irredundant facets),
sup-norm distances and metric projections, bounding boxes and the
cuboid test, the two-coordinate-inequality classification of
ball-intersection behaviour, tangent cones, Fourier-Motzkin projection,
and vertex enumeration at small dimension.
"""

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from math import comb

from . import subspaces as _subspaces
from .boxes import Box, Interval, ball, dist_inf
from .linalg import nullspace, rref, solve_unique
from .lp import Infeasible, Optimal, Unbounded, lp_feasible, lp_optimize, system
from .rational import ONE, ZERO, rat

__all__ = [
    "HPolyhedron",
    "WehStatus",
    "WehVerdict",
    "poly",
    "from_box",
    "feasible_point",
    "canonicalize",
    "distance_point",
    "distance_sets",
    "metric_projection",
    "bounding_box",
    "is_cuboid",
    "has_interior",
    "relative_interior_point",
    "is_weh_polyhedron",
    "tangent_cone",
    "allowed_row",
    "fm_eliminate",
    "fm_witness",
    "vertices",
    "direction_space",
]


@dataclass(frozen=True)
class HPolyhedron:
    """{x : a.x <= c for ineqs, a.x = c for eqs} in R^dim."""

    dim: int
    ineqs: tuple
    eqs: tuple

    def __post_init__(self):
        for coeffs, _ in list(self.ineqs) + list(self.eqs):
            if len(coeffs) != self.dim:
                raise ValueError(
                    f"row of length {len(coeffs)} in dimension {self.dim}"
                )

    def contains(self, point) -> bool:
        if len(point) != self.dim:
            raise ValueError(f"point of dimension {len(point)}, expected {self.dim}")
        for coeffs, rhs in self.ineqs:
            if _dot(coeffs, point) > rhs:
                return False
        for coeffs, rhs in self.eqs:
            if _dot(coeffs, point) != rhs:
                return False
        return True

    def to_system(self):
        return system(self.dim, self.ineqs, self.eqs)

    def with_box(self, box: Box) -> "HPolyhedron":
        return HPolyhedron(self.dim, self.ineqs + _box_rows(box), self.eqs)

    def intersect(self, other: "HPolyhedron") -> "HPolyhedron":
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        return HPolyhedron(self.dim, self.ineqs + other.ineqs, self.eqs + other.eqs)


def _dot(coeffs, point):
    total = ZERO
    for a, x in zip(coeffs, point):
        if a:
            total += a * x
    return total


def poly(dim, ineqs=(), eqs=()) -> HPolyhedron:
    mk = lambda rows: tuple((tuple(rat(a) for a in c), rat(b)) for c, b in rows)
    return HPolyhedron(dim, mk(ineqs), mk(eqs))


def _box_rows(box: Box):
    rows = []
    n = box.dim
    for i, iv in enumerate(box.intervals):
        if iv.upper is not None:
            coeffs = [ZERO] * n
            coeffs[i] = ONE
            rows.append((tuple(coeffs), iv.upper))
        if iv.lower is not None:
            coeffs = [ZERO] * n
            coeffs[i] = -ONE
            rows.append((tuple(coeffs), -iv.lower))
    return tuple(rows)


def from_box(box: Box) -> HPolyhedron:
    if box.is_empty:
        raise ValueError("empty box")
    return HPolyhedron(box.dim, _box_rows(box), ())


def feasible_point(P: HPolyhedron):
    """A point of P, or None when P is empty."""
    res = lp_feasible(P.to_system())
    return res.point if not isinstance(res, Infeasible) else None


def canonicalize(P: HPolyhedron):
    """Canonical form defining the same set, or None when P is empty.

    Afterwards: the equality rows are in reduced row echelon form and span
    everything forced to be constant on P, every inequality is irredundant,
    and no two inequalities agree up to positive scaling.
    """
    n = P.dim
    ineqs, eqs = [], []
    for coeffs, rhs in P.ineqs:
        coeffs = tuple(rat(a) for a in coeffs)
        rhs = rat(rhs)
        if all(a == ZERO for a in coeffs):
            if rhs < ZERO:
                return None
            continue
        ineqs.append((coeffs, rhs))
    for coeffs, rhs in P.eqs:
        coeffs = tuple(rat(a) for a in coeffs)
        rhs = rat(rhs)
        if all(a == ZERO for a in coeffs):
            if rhs != ZERO:
                return None
            continue
        eqs.append((coeffs, rhs))

    if isinstance(lp_feasible(system(n, ineqs, eqs)), Infeasible):
        return None

    # inequalities attaining their bound on all of P become equalities
    forced, kept = [], []
    full = system(n, ineqs, eqs)
    for coeffs, rhs in ineqs:
        res = lp_optimize(coeffs, "min", full)
        if isinstance(res, Optimal) and res.value == rhs:
            forced.append((coeffs, rhs))
        else:
            kept.append((coeffs, rhs))
    eqs.extend(forced)
    ineqs = kept

    if eqs:
        reduced, _ = rref([c + (r,) for c, r in eqs])
        eqs = []
        for row in reduced:
            coeffs, rhs = row[:-1], row[-1]
            assert any(a != ZERO for a in coeffs), "inconsistent equalities slipped past the LP"
            eqs.append((coeffs, rhs))

    # drop duplicates up to positive scaling, keeping the tightest bound
    seen = {}
    order = []
    for coeffs, rhs in ineqs:
        scale = max(abs(a) for a in coeffs)
        key = tuple(a / scale for a in coeffs)
        bound = rhs / scale
        if key not in seen:
            seen[key] = (coeffs, rhs, bound)
            order.append(key)
        elif bound < seen[key][2]:
            seen[key] = (coeffs, rhs, bound)
    ineqs = [seen[k][:2] for k in order]

    # irredundancy: drop any inequality implied by the others
    i = 0
    while i < len(ineqs):
        coeffs, rhs = ineqs[i]
        rest = ineqs[:i] + ineqs[i + 1 :]
        res = lp_optimize(coeffs, "max", system(n, rest, eqs))
        if isinstance(res, Optimal) and res.value <= rhs:
            del ineqs[i]
        else:
            i += 1

    return HPolyhedron(n, tuple(ineqs), tuple(eqs))


def _abs_rows(n, base, point, t_index):
    """Rows encoding |point_i - y_i| <= t over variables (y..., extra) of width n."""
    rows = []
    for i, c in enumerate(point):
        row = [ZERO] * n
        row[base + i] = ONE
        row[t_index] = -ONE
        rows.append((tuple(row), c))
        row = [ZERO] * n
        row[base + i] = -ONE
        row[t_index] = -ONE
        rows.append((tuple(row), -c))
    return rows


def _pad_rows(rows, n, base, width):
    out = []
    for coeffs, rhs in rows:
        row = [ZERO] * width
        for i, a in enumerate(coeffs):
            row[base + i] = a
        out.append((tuple(row), rhs))
    return out


def distance_point(P: HPolyhedron, x):
    """Exact sup-norm distance from x to P with a nearest point of P."""
    n = P.dim
    x = tuple(rat(c) for c in x)
    if len(x) != n:
        raise ValueError("dimension mismatch")
    width = n + 1
    rows = _pad_rows(P.ineqs, n, 0, width) + _abs_rows(width, 0, x, n)
    eqs = _pad_rows(P.eqs, n, 0, width)
    obj = [ZERO] * width
    obj[n] = ONE
    res = lp_optimize(obj, "min", system(width, rows, eqs))
    if isinstance(res, Infeasible):
        raise ValueError("distance to an empty polyhedron")
    assert isinstance(res, Optimal)
    return res.value, res.point[:n]


def distance_sets(P: HPolyhedron, Q: HPolyhedron):
    """min sup-norm distance over p in P, q in Q; attained, with witnesses."""
    if P.dim != Q.dim:
        raise ValueError("dimension mismatch")
    n = P.dim
    width = 2 * n + 1
    rows = _pad_rows(P.ineqs, n, 0, width) + _pad_rows(Q.ineqs, n, n, width)
    for i in range(n):
        row = [ZERO] * width
        row[i], row[n + i], row[2 * n] = ONE, -ONE, -ONE
        rows.append((tuple(row), ZERO))
        row = [ZERO] * width
        row[i], row[n + i], row[2 * n] = -ONE, ONE, -ONE
        rows.append((tuple(row), ZERO))
    eqs = _pad_rows(P.eqs, n, 0, width) + _pad_rows(Q.eqs, n, n, width)
    obj = [ZERO] * width
    obj[2 * n] = ONE
    res = lp_optimize(obj, "min", system(width, rows, eqs))
    if isinstance(res, Infeasible):
        raise ValueError("distance between sets with an empty side")
    assert isinstance(res, Optimal), "set distance is bounded below by zero"
    return res.value, res.point[:n], res.point[n : 2 * n]


def metric_projection(P: HPolyhedron, x) -> HPolyhedron:
    """Canonical form of B(x, d(x, P)) intersected with P."""
    d, _ = distance_point(P, x)
    out = canonicalize(P.with_box(ball(x, d)))
    assert out is not None, "projection of a point onto a nonempty closed set"
    return out


def bounding_box(P: HPolyhedron) -> Box:
    n = P.dim
    sys_ = P.to_system()
    intervals = []
    for i in range(n):
        obj = [ZERO] * n
        obj[i] = ONE
        lo = lp_optimize(obj, "min", sys_)
        hi = lp_optimize(obj, "max", sys_)
        if isinstance(lo, Infeasible) or isinstance(hi, Infeasible):
            raise ValueError("bounding box of an empty polyhedron")
        lower = lo.value if isinstance(lo, Optimal) else None
        upper = hi.value if isinstance(hi, Optimal) else None
        intervals.append(Interval(lower, upper))
    return Box(tuple(intervals))


def _sup_over_box(coeffs, box: Box):
    """Exact supremum of coeffs.x over a nonempty box; None means +infinity."""
    total = ZERO
    for a, iv in zip(coeffs, box.intervals):
        if a > ZERO:
            if iv.upper is None:
                return None
            total += a * iv.upper
        elif a < ZERO:
            if iv.lower is None:
                return None
            total += a * iv.lower
    return total


def is_cuboid(P: HPolyhedron):
    """(True, box) iff P equals its own bounding box.

    Checked by maximizing each constraint separately over the box, which is
    exact because the box is a coordinate product.
    """
    box = bounding_box(P)
    for coeffs, rhs in P.ineqs:
        sup = _sup_over_box(coeffs, box)
        if sup is None or sup > rhs:
            return False, None
    for coeffs, rhs in P.eqs:
        sup = _sup_over_box(coeffs, box)
        inf = _sup_over_box(tuple(-a for a in coeffs), box)
        if sup is None or inf is None or sup != rhs or -inf != rhs:
            return False, None
    return True, box


def has_interior(P: HPolyhedron) -> bool:
    """Nonempty topological interior, via a shared-slack LP (exact)."""
    if P.eqs:
        return False
    n = P.dim
    width = n + 1
    rows = []
    for coeffs, rhs in P.ineqs:
        rows.append((tuple(coeffs) + (ONE,), rhs))
    obj = [ZERO] * width
    obj[n] = ONE
    res = lp_optimize(obj, "max", system(width, rows, ()))
    if isinstance(res, Unbounded):
        return True
    return isinstance(res, Optimal) and res.value > ZERO


def relative_interior_point(P: HPolyhedron):
    """A point with slack in every non-implied inequality (P canonicalized)."""
    n = P.dim
    if not P.ineqs:
        pt = feasible_point(P)
        if pt is None:
            raise ValueError("relative interior of an empty polyhedron")
        return pt
    width = n + 1
    rows = [(tuple(coeffs) + (ONE,), rhs) for coeffs, rhs in P.ineqs]
    slack_cap = [ZERO] * width
    slack_cap[n] = ONE
    rows.append((tuple(slack_cap), ONE))
    rows.append((tuple(-v for v in slack_cap), ZERO))
    eqs = _pad_rows(P.eqs, n, 0, width)
    res = lp_optimize(slack_cap, "max", system(width, rows, eqs))
    if isinstance(res, Infeasible):
        raise ValueError("relative interior of an empty polyhedron")
    assert isinstance(res, Optimal)
    return res.point[:n]


def allowed_row(coeffs) -> bool:
    """Normal in {+-e_i} or {+-e_i +- e_j} up to positive scaling."""
    support = [a for a in coeffs if a]
    if len(support) == 1:
        return True
    if len(support) == 2:
        return abs(support[0]) == abs(support[1])
    return False


class WehStatus(Enum):
    CERTIFIED_WEH = "CertifiedWEH"
    CERTIFIED_NOT_WEH = "CertifiedNotWEH"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class WehVerdict:
    status: WehStatus
    certificate: tuple = None  # allowed inequality rows (equalities as pairs)
    violation: object = None  # offending facet row or subspace information


def _certificate_rows(ineqs, eqs):
    rows = list(ineqs)
    for coeffs, rhs in eqs:
        rows.append((coeffs, rhs))
        rows.append((tuple(-a for a in coeffs), -rhs))
    return tuple(rows)


def direction_space(P: HPolyhedron) -> _subspaces.LinearSubspace:
    """Direction space of an affine flat given by equality rows only."""
    normals = [coeffs for coeffs, _ in P.eqs]
    basis = nullspace(normals, P.dim) if normals else None
    if basis is None:
        return _subspaces.LinearSubspace.from_vectors(P.dim, [])
    return _subspaces.LinearSubspace(P.dim, tuple(basis))


def _flat_certificate(P: HPolyhedron, deco, point):
    """Allowed equality system for an affine flat from its direction split."""
    n = P.dim
    eqs = []
    for i in deco.zeros:
        row = [ZERO] * n
        row[i] = ONE
        eqs.append((tuple(row), point[i]))
    for coords, signs in deco.blocks:
        c0, s0 = coords[0], signs[0]
        for c, s in zip(coords[1:], signs[1:]):
            row = [ZERO] * n
            row[c] = ONE
            row[c0] = -rat(s * s0)
            eqs.append((tuple(row), point[c] - rat(s * s0) * point[c0]))
    return _certificate_rows((), eqs)


def is_weh_polyhedron(P: HPolyhedron) -> WehVerdict:
    """Three-valued ball-intersection classification of a canonical polyhedron.

    Certified positive when every row matches the two-coordinate grammar
    (sufficient in any dimension for closed polyhedra).  Certified negative
    for full-dimensional polyhedra with a disallowed facet normal, and for
    affine flats whose direction space fails the subspace decomposition.
    Unknown for other lower-dimensional polyhedra with disallowed rows.
    """
    bad_row = next(
        (
            (coeffs, rhs)
            for coeffs, rhs in P.ineqs + P.eqs
            if not allowed_row(coeffs)
        ),
        None,
    )
    if bad_row is None:
        return WehVerdict(
            WehStatus.CERTIFIED_WEH, certificate=_certificate_rows(P.ineqs, P.eqs)
        )
    if has_interior(P):
        bad_facet = next(row for row in P.ineqs if not allowed_row(row[0]))
        return WehVerdict(WehStatus.CERTIFIED_NOT_WEH, violation=bad_facet)
    if not P.ineqs:
        point = feasible_point(P)
        if point is None:
            raise ValueError("classification of an empty polyhedron")
        deco = _subspaces.classify_weh_subspace(direction_space(P))
        if deco is None:
            return WehVerdict(
                WehStatus.CERTIFIED_NOT_WEH, violation=direction_space(P)
            )
        return WehVerdict(
            WehStatus.CERTIFIED_WEH, certificate=_flat_certificate(P, deco, point)
        )
    return WehVerdict(WehStatus.UNKNOWN, violation=bad_row)


def tangent_cone(P: HPolyhedron, p) -> HPolyhedron:
    """Constraints active at p; equals the closure of the cone of P from p."""
    p = tuple(rat(c) for c in p)
    if not P.contains(p):
        raise ValueError("tangent cone at a point outside the polyhedron")
    active = tuple(
        (coeffs, rhs) for coeffs, rhs in P.ineqs if _dot(coeffs, p) == rhs
    )
    return HPolyhedron(P.dim, active, P.eqs)


class FMOverflow(RuntimeError):
    pass


def _prune(rows):
    """Normalize by the largest |coefficient|, drop slack duplicates and
    vacuous rows; returns None on a contradictory constant row."""
    seen = {}
    order = []
    for coeffs, rhs in rows:
        scale = ZERO
        for a in coeffs:
            mag = abs(a)
            if mag > scale:
                scale = mag
        if scale == ZERO:
            if rhs < ZERO:
                return None
            continue
        key = tuple(a / scale for a in coeffs)
        bound = rhs / scale
        if key not in seen or bound < seen[key]:
            if key not in seen:
                order.append(key)
            seen[key] = bound
    return [(k, seen[k]) for k in order]


def fm_eliminate(ineqs, eqs, elim, row_cap=None):
    """Fourier-Motzkin projection along the variables in elim.

    Equalities are used as substitutions when they touch an eliminated
    variable.  Rows keep full width with zeroed columns.  Returns
    (ineqs, eqs) or None when the system is detected infeasible.
    """
    ineqs = [(tuple(c), r) for c, r in ineqs]
    eqs = [(tuple(c), r) for c, r in eqs]
    for v in elim:
        sub = next((i for i, (c, _) in enumerate(eqs) if c[v]), None)
        if sub is not None:
            ec, er = eqs.pop(sub)
            inv = ONE / ec[v]
            ec = tuple(a * inv for a in ec)
            er = er * inv

            def substitute(rows):
                out = []
                for c, r in rows:
                    f = c[v]
                    if f:
                        c = tuple(a - f * b for a, b in zip(c, ec))
                        r = r - f * er
                    out.append((c, r))
                return out

            ineqs = substitute(ineqs)
            eqs = substitute(eqs)
        else:
            pos, neg, rest = [], [], []
            for c, r in ineqs:
                a = c[v]
                if a > ZERO:
                    pos.append((c, r))
                elif a < ZERO:
                    neg.append((c, r))
                else:
                    rest.append((c, r))
            for cp, rp in pos:
                ap = cp[v]
                for cn, rn in neg:
                    an = -cn[v]
                    coeffs = tuple(an * a + ap * b for a, b in zip(cp, cn))
                    rest.append((coeffs, an * rp + ap * rn))
            ineqs = rest
        pruned = _prune(ineqs)
        if pruned is None:
            return None
        ineqs = pruned
        if row_cap is not None and len(ineqs) > row_cap:
            raise FMOverflow(f"{len(ineqs)} rows while eliminating variable {v}")
        for c, r in eqs:
            if all(a == ZERO for a in c) and r != ZERO:
                return None
    return ineqs, eqs


def fm_witness(nvars, ineqs, order=None):
    """Feasibility plus an exact witness by staged elimination.

    Inequality rows only; returns a point or None.
    """
    if order is None:
        order = list(range(nvars))
    rows = _prune([(tuple(c), r) for c, r in ineqs])
    if rows is None:
        return None
    stages = [rows]
    for v in order:
        res = fm_eliminate(stages[-1], [], [v])
        if res is None:
            return None
        stages.append(res[0])
    values = [ZERO] * nvars
    known = set()
    for pos in range(len(order) - 1, -1, -1):
        v = order[pos]
        lo, hi = None, None
        for coeffs, rhs in stages[pos]:
            a = coeffs[v]
            if not a:
                continue
            residual = rhs - sum(
                (coeffs[w] * values[w] for w in known if coeffs[w]), ZERO
            )
            bound = residual / a
            if a > ZERO:
                hi = bound if hi is None else min(hi, bound)
            else:
                lo = bound if lo is None else max(lo, bound)
        if lo is None and hi is None:
            values[v] = ZERO
        elif lo is None:
            values[v] = hi
        elif hi is None:
            values[v] = lo
        else:
            assert lo <= hi
            values[v] = (lo + hi) / 2
        known.add(v)
    return tuple(values)


def vertices(P: HPolyhedron, combo_cap=200_000):
    """All vertices of a polytope at small dimension, lexicographically sorted.

    Every vertex lies on dim linearly independent active rows; the search is
    exhaustive over row subsets.
    """
    n = P.dim
    rows = list(P.eqs) + list(P.ineqs)
    base = len(P.eqs)
    if base > n:
        base = n
    free = n - len(P.eqs)
    if free < 0:
        free = 0
    if comb(len(P.ineqs), free) > combo_cap:
        raise ValueError("too many constraint combinations for vertex enumeration")
    out = set()
    for extra in combinations(range(len(P.ineqs)), free):
        chosen = [row for row, _ in P.eqs] + [P.ineqs[i][0] for i in extra]
        rhs = [r for _, r in P.eqs] + [P.ineqs[i][1] for i in extra]
        pt = solve_unique(chosen, rhs) if chosen else None
        if pt is None:
            continue
        if P.contains(pt):
            out.add(pt)
    return sorted(out)
