"""Brute-force refutation oracles for ball-intersection properties.

Each oracle samples candidate ball families against the defining conditions
of its property and reports REFUTED with an exact counterexample, or PASS
meaning only that no counterexample was found within the budget.  Candidate
generation is deterministic: regression families first, then exhaustive
small-coordinate candidates and construction-based probes, then a
counter-based pseudorandom stream, so results are independent of evaluation
order.  Every refutation is re-verified through the LP route before being
emitted; a fast search path can never produce a false REFUTED.
"""

import random
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, product

from .boxes import Box, Interval, ball, box_intersect, dist_inf
from .gluing import (
    GluedPoint,
    GluedSpace,
    _distance_lp,
    _ensure_valid,
    _eval_leg,
    _kink_candidates,
    _part_feasible_lp,
    glued_distance,
    glued_family_intersects,
)
from .linalg import nullspace, rref
from .lp import Infeasible, Optimal, lp_feasible, lp_optimize, system
from .polyhedra import (
    HPolyhedron,
    canonicalize,
    distance_point,
    fm_witness,
    relative_interior_point,
)
from .rational import ONE, ZERO, Q, rat

__all__ = [
    "PolySet",
    "polyset",
    "OracleStatus",
    "Counterexample",
    "OracleReport",
    "hyperconvexity_oracle",
    "eh_oracle",
    "weh_oracle",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 10_000
HALF = Q(1, 2)


@dataclass(frozen=True)
class PolySet:
    """Finite union of canonical polyhedra (possibly non-convex target)."""

    dim: int
    pieces: tuple


def polyset(dim, pieces) -> PolySet:
    canon = []
    for piece in pieces:
        if piece.dim != dim:
            raise ValueError("piece dimension mismatch")
        c = canonicalize(piece)
        if c is not None:
            canon.append(c)
    if not canon:
        raise ValueError("empty target")
    return PolySet(dim, tuple(canon))


class OracleStatus(Enum):
    PASS = "PASS"
    REFUTED = "REFUTED"


@dataclass(frozen=True)
class Counterexample:
    external: tuple  # (center, radius) or None
    balls: tuple  # ((center, radius), ...)


@dataclass(frozen=True)
class OracleReport:
    kind: str
    status: OracleStatus
    counterexample: object
    families_tested: int
    budget: int
    seed: int


# ---------------------------------------------------------------------------
# fast per-piece geometry


class _PieceTester:
    """Exact membership, box intersection and distance for one canonical piece,
    specialised by shape; general pieces fall back to the LP."""

    def __init__(self, piece: HPolyhedron):
        self.piece = piece
        n = piece.dim
        rows = piece.ineqs + piece.eqs
        if not rows:
            self.kind = "universe"
            return
        if all(sum(1 for a in c if a) == 1 for c, _ in rows):
            box = Box.whole(n)
            for coeffs, rhs in piece.ineqs:
                i, a = next((i, a) for i, a in enumerate(coeffs) if a)
                box = _pin_interval(box, i, _half_line(a, rhs))
            for coeffs, rhs in piece.eqs:
                i, a = next((i, a) for i, a in enumerate(coeffs) if a)
                box = _pin_interval(box, i, Interval(rhs / a, rhs / a))
            self.kind = "box"
            self.box = box
            return
        if not piece.ineqs:
            normals = [c for c, _ in piece.eqs]
            basis = nullspace(normals, n)
            point = _affine_point(piece)
            if not basis:
                self.kind = "point"
                self.point = point
                return
            if len(basis) == 1:
                self.kind = "line"
                self.point = point
                self.direction = basis[0]
                return
            if len(piece.eqs) == 1:
                self.kind = "hyperplane"
                self.normal, self.rhs = piece.eqs[0]
                self.norm1 = sum(map(abs, self.normal), ZERO)
                return
            self.kind = "affine"
            self.point = point
            self.basis = tuple(basis)
            return
        self.kind = "general"

    def contains(self, x) -> bool:
        if self.kind == "universe":
            return True
        return self.piece.contains(x)

    def intersects_box(self, box: Box) -> bool:
        if box.is_empty:
            return False
        if self.kind == "universe":
            return True
        if self.kind == "box":
            return not self.box.intersect(box).is_empty
        if self.kind == "point":
            return box.contains(self.point)
        if self.kind == "line":
            span = _line_box_interval(self.point, self.direction, box)
            return span is not None
        if self.kind == "hyperplane":
            lo, hi = _range_over_box(self.normal, box)
            if lo is not None and lo > self.rhs:
                return False
            if hi is not None and hi < self.rhs:
                return False
            return True
        if self.kind == "affine":
            rows = []
            k = len(self.basis)
            for i, iv in enumerate(box.intervals):
                col = tuple(b[i] for b in self.basis)
                if iv.upper is not None:
                    rows.append((col, iv.upper - self.point[i]))
                if iv.lower is not None:
                    rows.append(
                        (tuple(-a for a in col), self.point[i] - iv.lower)
                    )
            return fm_witness(k, rows) is not None
        rows = list(self.piece.ineqs) + _box_rows_for(box)
        res = lp_feasible(system(self.piece.dim, rows, self.piece.eqs))
        return not isinstance(res, Infeasible)

    def distance(self, x):
        if self.kind == "universe":
            return ZERO
        if self.kind == "box":
            best = ZERO
            for c, iv in zip(x, self.box.intervals):
                if iv.lower is not None and c < iv.lower:
                    gap = iv.lower - c
                elif iv.upper is not None and c > iv.upper:
                    gap = c - iv.upper
                else:
                    continue
                if gap > best:
                    best = gap
            return best
        if self.kind == "point":
            return dist_inf(x, self.point)
        if self.kind == "line":
            offsets = tuple(c - p for c, p in zip(x, self.point))
            cands = _kink_candidates(offsets, self.direction)
            return min(_eval_leg(offsets, self.direction, t) for t in cands)
        if self.kind == "hyperplane":
            residual = (
                sum((a * c for a, c in zip(self.normal, x)), ZERO) - self.rhs
            )
            return abs(residual) / self.norm1
        return distance_point(self.piece, x)[0]


def _half_line(a, rhs):
    bound = rhs / a
    return Interval(None, bound) if a > ZERO else Interval(bound, None)


def _pin_interval(box: Box, i, extra: Interval) -> Box:
    ivs = list(box.intervals)
    ivs[i] = ivs[i].intersect(extra)
    return Box(tuple(ivs))


def _affine_point(piece):
    reduced, pivots = rref([c + (r,) for c, r in piece.eqs])
    n = piece.dim
    point = [ZERO] * n
    for row, p in zip(reduced, pivots):
        point[p] = row[-1]
    return tuple(point)


def _line_box_interval(point, direction, box):
    lo, hi = None, None
    for p, d, iv in zip(point, direction, box.intervals):
        if d == ZERO:
            if not iv.contains(p):
                return None
            continue
        bounds = []
        if iv.lower is not None:
            bounds.append(((iv.lower - p) / d, d > ZERO))
        if iv.upper is not None:
            bounds.append(((iv.upper - p) / d, d < ZERO))
        for val, is_lower in bounds:
            if is_lower:
                lo = val if lo is None else max(lo, val)
            else:
                hi = val if hi is None else min(hi, val)
    if lo is not None and hi is not None and lo > hi:
        return None
    return (lo, hi)


def _range_over_box(coeffs, box):
    lo = ZERO
    hi = ZERO
    lo_inf = hi_inf = False
    for a, iv in zip(coeffs, box.intervals):
        if a == ZERO:
            continue
        top = iv.upper if a > ZERO else iv.lower
        bot = iv.lower if a > ZERO else iv.upper
        if top is None:
            hi_inf = True
        else:
            hi += a * top
        if bot is None:
            lo_inf = True
        else:
            lo += a * bot
    return (None if lo_inf else lo), (None if hi_inf else hi)


def _box_rows_for(box: Box):
    rows = []
    n = box.dim
    for i, iv in enumerate(box.intervals):
        if iv.upper is not None:
            row = [ZERO] * n
            row[i] = ONE
            rows.append((tuple(row), iv.upper))
        if iv.lower is not None:
            row = [ZERO] * n
            row[i] = -ONE
            rows.append((tuple(row), -iv.lower))
    return rows


# ---------------------------------------------------------------------------
# target adapters


class _PolySetTarget:
    def __init__(self, target: PolySet):
        self.target = target
        self.dim = target.dim
        self.testers = [_PieceTester(p) for p in target.pieces]

    def contains(self, x) -> bool:
        return any(t.contains(x) for t in self.testers)

    def distance(self, x):
        return min(t.distance(x) for t in self.testers)

    def distance_lp(self, x):
        return min(distance_point(p, x)[0] for p in self.target.pieces)

    def meets(self, box: Box) -> bool:
        if box.is_empty:
            return False
        return any(t.intersects_box(box) for t in self.testers)

    def meets_lp(self, box: Box) -> bool:
        if box.is_empty:
            return False
        rows = _box_rows_for(box)
        for piece in self.target.pieces:
            res = lp_feasible(
                system(self.dim, list(piece.ineqs) + rows, piece.eqs)
            )
            if not isinstance(res, Infeasible):
                return True
        return False

    def pool(self, cap=64):
        """On-target sample points: small structured grid points filtered by
        exact membership, enriched with LP-derived points of each piece."""
        seen = []
        seen_set = set()

        def push(pt):
            if pt not in seen_set and self.contains(pt):
                seen_set.add(pt)
                seen.append(pt)

        if self.dim <= 3:
            for pt in _grid_points(self.dim):
                push(pt)
                if len(seen) >= cap:
                    return seen
        for pt in _structured_points(self.dim):
            push(pt)
        if len(seen) < 8:
            for piece in self.target.pieces:
                push(relative_interior_point(piece))
                for i in range(self.dim):
                    obj = [ZERO] * self.dim
                    obj[i] = ONE
                    for sense in ("min", "max"):
                        res = lp_optimize(obj, sense, piece.to_system())
                        if isinstance(res, Optimal):
                            push(res.point)
        return seen[:cap]


class _GluedTarget:
    def __init__(self, target: GluedSpace):
        _ensure_valid(target)
        self.target = target
        self._cache = {}

    def distance(self, p: GluedPoint, q: GluedPoint):
        key = (p, q)
        hit = self._cache.get(key)
        if hit is None:
            hit = glued_distance(self.target, p, q)
            self._cache[key] = hit
            self._cache[(q, p)] = hit
        return hit

    def family_meets(self, balls) -> bool:
        return glued_family_intersects(self.target, balls)[0]

    def family_meets_lp(self, balls) -> bool:
        G = self.target
        for part in range(len(G.part_dims)):
            same = [(pt, r) for pt, r in balls if pt.part == part]
            foreign = [(pt, r) for pt, r in balls if pt.part != part]
            if _part_feasible_lp(G, same, foreign, part) is not None:
                return True
        return False

    def pools(self, cap=16):
        out = []
        for part, n in enumerate(self.target.part_dims):
            pts = [GluedPoint(part, p) for p in _structured_points(n)[:cap]]
            out.append(pts)
        return out


def _structured_points(n):
    """Small-coordinate probe points, ordered by structural simplicity."""
    pts = [tuple([ZERO] * n)]
    for scale in (ONE, Q(2)):
        for i in range(n):
            for sgn in (ONE, -ONE):
                p = [ZERO] * n
                p[i] = sgn * scale
                pts.append(tuple(p))
    for i, j in combinations(range(n), 2):
        for si, sj in product((ONE, -ONE), repeat=2):
            p = [ZERO] * n
            p[i], p[j] = si, sj
            pts.append(tuple(p))
    if n >= 3:
        for trip in combinations(range(n), 3):
            for signs in product((ONE, -ONE), repeat=3):
                p = [ZERO] * n
                for idx, s in zip(trip, signs):
                    p[idx] = s
                pts.append(tuple(p))
    return pts


def _grid_points(n):
    """Integer grid in [-2, 2]^n ordered by sup norm then lexicographically."""
    pts = [tuple(map(rat, p)) for p in product(range(-2, 3), repeat=n)]
    pts.sort(key=lambda p: (max(map(abs, p)), p))
    return pts


def _random_point(rng, n, quarter):
    if quarter:
        return tuple(Q(rng.randint(-16, 16), 4) for _ in range(n))
    return tuple(Q(rng.randint(-4, 4)) for _ in range(n))


# ---------------------------------------------------------------------------
# family construction helpers


def _pairwise(dist, centers):
    m = len(centers)
    d = [[ZERO] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            d[i][j] = d[j][i] = dist(centers[i], centers[j])
    return d


def _shrink(radii, floors, d):
    m = len(radii)
    out = list(radii)
    for _ in range(2):
        for i in range(m):
            need = floors[i]
            for j in range(m):
                if j != i:
                    gap = d[i][j] - out[j]
                    if gap > need:
                        need = gap
            out[i] = need
    for i in range(m):
        for j in range(i + 1, m):
            if d[i][j] > out[i] + out[j]:
                return None
        if out[i] < floors[i]:
            return None
    return out


def _rule_radii(d, floors):
    m = len(floors)
    radii = []
    for i in range(m):
        r = floors[i]
        for j in range(m):
            if j != i and d[i][j] * HALF > r:
                r = d[i][j] * HALF
        radii.append(r)
    return radii


# ---------------------------------------------------------------------------
# directed candidate generators (poly-set targets)


_PAPER_H_CENTERS = {3: (((-2, 0, 2), (8, 10, 12)),)}
_PAPER_EH_CENTERS = {2: (((2, 0), (0, -2)),)}


def _directed_hyperconvex(target: _PolySetTarget):
    for fam in _PAPER_H_CENTERS.get(target.dim, ()):
        centers = [tuple(map(rat, c)) for c in fam]
        if all(target.contains(c) for c in centers):
            yield centers, None
    pool = target.pool()
    head = pool[:16]
    for size in (2, 3):
        for combo in combinations(head, size):
            yield list(combo), None


def _directed_eh(target: _PolySetTarget):
    for fam in _PAPER_EH_CENTERS.get(target.dim, ()):
        yield [tuple(map(rat, c)) for c in fam], None
    n = target.dim
    # corner pinning: opposite centers along a diagonal meet in one point
    signs = [s for s in product((ONE, -ONE), repeat=n) if s[0] == ONE]
    for z in _structured_points(n)[:40]:
        if target.contains(z):
            continue
        for s in signs[:8]:
            for t in (ONE, Q(2), HALF):
                c1 = tuple(a + t * b for a, b in zip(z, s))
                c2 = tuple(a - t * b for a, b in zip(z, s))
                if target.distance(c1) <= t and target.distance(c2) <= t:
                    yield [c1, c2], [t, t]
    # interval-point pinning from pairs inside the target
    pool = target.pool()
    for x, y in combinations(pool[:12], 2):
        z = tuple((a + b) * HALF for a, b in zip(x, y))
        if target.contains(z):
            continue
        spread = max(abs(a - b) for a, b in zip(x, y))
        r = spread
        centers, radii = [], []
        for i in range(n):
            lo, hi = (x[i], y[i]) if x[i] <= y[i] else (y[i], x[i])
            p = list(z)
            p[i] = lo - r
            centers.append(tuple(p))
            radii.append(z[i] - lo + r)
            q = list(z)
            q[i] = hi + r
            centers.append(tuple(q))
            radii.append(hi - z[i] + r)
        yield centers, radii
    yield from _directed_hyperconvex(target)


def _linear_subspace_basis(target: _PolySetTarget):
    """Basis of the target when it is a single linear subspace, else None."""
    if len(target.target.pieces) != 1:
        return None
    piece = target.target.pieces[0]
    if piece.ineqs or any(rhs != ZERO for _, rhs in piece.eqs):
        return None
    return nullspace([c for c, _ in piece.eqs], piece.dim)


def _facet_probe_families(basis, n):
    """Three-ball configurations separating a subspace from a cube facet.

    Reduction: drop coordinates pinned by a containing coordinate or
    two-coordinate hyperplane; in the reduced space pick a point of the
    subspace in the relative interior of a facet and a facet missed by the
    subspace, then inflate two balls along them until the pinched corner
    separates.  Everything emitted here is verified exactly downstream.
    """
    basis = [list(map(rat, b)) for b in basis]
    lifts = []  # (index, pair_index or None, sign)
    dims = n

    def lift_point(pt):
        pt = list(pt)
        for pos, src, sgn in reversed(lifts):
            val = ZERO if src is None else sgn * pt[src]
            pt.insert(pos, val)
        return tuple(pt)

    changed = True
    while changed and basis:
        changed = False
        cols = list(zip(*basis)) if basis else []
        for i in range(dims):
            if all(c == ZERO for c in cols[i]):
                basis = [row[:i] + row[i + 1 :] for row in basis]
                basis = [row for row in rref(basis)[0]]
                basis = [list(row) for row in basis]
                lifts.append((i, None, ONE))
                dims -= 1
                changed = True
                break
        if changed:
            continue
        for i, j in combinations(range(dims), 2):
            col_i = tuple(row[i] for row in basis)
            col_j = tuple(row[j] for row in basis)
            sgn = None
            if col_i == col_j:
                sgn = ONE
            elif col_i == tuple(-c for c in col_j):
                sgn = -ONE
            if sgn is not None:
                basis = [row[:i] + row[i + 1 :] for row in basis]
                basis = [list(row) for row in rref(basis)[0]]
                lifts.append((i, j - 1, sgn))
                dims -= 1
                changed = True
                break
    k = len(basis)
    if k == 0 or k == dims:
        return
    eqs = [(tuple(row), ZERO) for row in nullspace(basis, dims)]
    V = HPolyhedron(dims, (), tuple(eqs))

    # v0: point of V with a unique largest coordinate (facet relative interior)
    v0 = None
    face = None
    for i in range(dims):
        for sgn in (ONE, -ONE):
            width = dims + 1
            rows = []
            for jj in range(dims):
                if jj == i:
                    continue
                for s2 in (ONE, -ONE):
                    row = [ZERO] * width
                    row[jj] = s2
                    row[dims] = ONE
                    rows.append((tuple(row), ONE))
            row = [ZERO] * width
            row[dims] = -ONE
            rows.append((tuple(row), ZERO))
            eqs_w = [(c + (ZERO,), r) for c, r in eqs]
            pin = [ZERO] * width
            pin[i] = sgn
            eqs_w.append((tuple(pin), ONE))
            obj = [ZERO] * width
            obj[dims] = ONE
            res = lp_optimize(obj, "max", system(width, rows, eqs_w))
            if isinstance(res, Optimal) and res.value > ZERO:
                v0 = res.point[:dims]
                face = (i, sgn)
                break
        if v0 is not None:
            break
    if v0 is None:
        return
    i0, sgn0 = face
    # a cube facet the subspace misses entirely
    box_rows = []
    for jj in range(dims):
        for s2 in (ONE, -ONE):
            row = [ZERO] * dims
            row[jj] = s2
            box_rows.append((tuple(row), ONE))
    for j in range(dims):
        if j == i0:
            continue
        for tau in (ONE, -ONE):
            obj = [ZERO] * dims
            obj[j] = tau
            res = lp_optimize(obj, "max", system(dims, box_rows, eqs))
            if isinstance(res, Optimal) and res.value < ONE:
                for big_r in (Q(4), Q(8), Q(16)):
                    for big_s in (Q(4), Q(8), Q(16)):
                        ext = [ZERO] * dims
                        ext[i0] = sgn0
                        ext[j] = tau * (ONE + big_s)
                        centers = [
                            tuple([ZERO] * dims),
                            tuple(big_r * c for c in v0),
                        ]
                        yield (
                            lift_point(tuple(ext)),
                            big_s,
                            [lift_point(c) for c in centers],
                            [ONE, big_r],
                        )


def _directed_weh(target: _PolySetTarget):
    n = target.dim
    pool = target.pool()
    # hyperconvexity families wrapped with a dominating external ball
    for centers, radii in _directed_hyperconvex(target):
        if radii is None:
            d = _pairwise(dist_inf, centers)
            radii = _rule_radii(d, [ZERO] * len(centers))
        x = centers[0]
        r = max(dist_inf(x, c) + rr for c, rr in zip(centers, radii))
        yield x, r, list(centers), list(radii)
    # facet probes for linear-subspace targets
    basis = _linear_subspace_basis(target)
    if basis:
        for ext, r, centers, radii in _facet_probe_families(basis, n):
            yield ext, r, centers, radii
    # small exhaustive configurations
    head = pool[:12]
    for x in _structured_points(n)[:40]:
        for size in (1, 2):
            for combo in combinations(head, size):
                yield x, None, list(combo), None


# ---------------------------------------------------------------------------
# verification (independent LP route)


def _verify_polyset(kind, target: _PolySetTarget, external, balls):
    boxes = [ball(c, r) for c, r in balls]
    centers = [c for c, _ in balls]
    radii = [r for _, r in balls]
    for i, j in combinations(range(len(balls)), 2):
        if dist_inf(centers[i], centers[j]) > radii[i] + radii[j]:
            return False
    if kind == "hyperconvex":
        if not all(target.contains(c) for c in centers):
            return False
    elif kind == "eh":
        for c, r in balls:
            if target.distance_lp(c) > r:
                return False
    else:
        x, r = external
        if target.distance_lp(x) > r:
            return False
        for c, rr in balls:
            if not target.contains(c):
                return False
            if dist_inf(x, c) > r + rr:
                return False
        boxes.append(ball(x, r))
    if not boxes:
        return False
    region = box_intersect(boxes)
    return not target.meets_lp(region)


def _verify_glued(target: _GluedTarget, balls):
    for (p, rp), (q, rq) in combinations(balls, 2):
        if p.part == q.part:
            d = dist_inf(p.coords, q.coords)
        else:
            d = _distance_lp(target.target, p, q)
        if d > rp + rq:
            return False
    return not target.family_meets_lp(balls)


# ---------------------------------------------------------------------------
# oracle drivers


def _report(kind, status, counterexample, tested, budget, seed):
    return OracleReport(kind, status, counterexample, tested, budget, seed)


def hyperconvexity_oracle(target, budget=DEFAULT_BUDGET, seed=0) -> OracleReport:
    """Search for a ball family with compatible radii and empty intersection.

    Accepts a PolySet (union of polyhedra with the induced sup metric) or a
    GluedSpace.  PASS only means no counterexample within the budget.
    """
    if isinstance(target, GluedSpace):
        return _hyperconvexity_glued(target, budget, seed)
    adapter = _PolySetTarget(target)
    tested = 0

    def try_family(centers, radii):
        if len({tuple(c) for c in centers}) != len(centers):
            return None
        d = _pairwise(dist_inf, centers)
        floors = [ZERO] * len(centers)
        profiles = []
        if radii is None:
            base = _rule_radii(d, floors)
            profiles.append(base)
            shrunk = _shrink(base, floors, d)
            if shrunk is not None and shrunk != base:
                profiles.append(shrunk)
        else:
            profiles.append(list(radii))
        for prof in profiles:
            ok = all(
                d[i][j] <= prof[i] + prof[j]
                for i in range(len(centers))
                for j in range(i + 1, len(centers))
            )
            if not ok:
                continue
            region = box_intersect([ball(c, r) for c, r in zip(centers, prof)])
            if not adapter.meets(region):
                balls = tuple(zip(map(tuple, centers), prof))
                if _verify_polyset("hyperconvex", adapter, None, balls):
                    return Counterexample(None, balls)
        return None

    for centers, radii in _directed_hyperconvex(adapter):
        if tested >= budget:
            break
        tested += 1
        hit = try_family(centers, radii)
        if hit:
            return _report(
                "hyperconvex", OracleStatus.REFUTED, hit, tested, budget, seed
            )
    pool = adapter.pool()
    counter = 0
    while tested < budget and pool:
        rng = random.Random(f"{seed}:h:{counter}")
        counter += 1
        tested += 1
        size = rng.randint(2, 4)
        centers = [pool[rng.randrange(len(pool))] for _ in range(size)]
        hit = try_family(centers, None)
        if hit:
            return _report(
                "hyperconvex", OracleStatus.REFUTED, hit, tested, budget, seed
            )
    return _report("hyperconvex", OracleStatus.PASS, None, tested, budget, seed)


def _hyperconvexity_glued(G: GluedSpace, budget, seed) -> OracleReport:
    adapter = _GluedTarget(G)
    tested = 0

    def try_family(balls_or_centers, radii):
        centers = list(balls_or_centers)
        if len(set(centers)) != len(centers):
            return None
        d = _pairwise(adapter.distance, centers)
        floors = [ZERO] * len(centers)
        profiles = []
        if radii is None:
            base = _rule_radii(d, floors)
            profiles.append(base)
            shrunk = _shrink(base, floors, d)
            if shrunk is not None and shrunk != base:
                profiles.append(shrunk)
        else:
            profiles.append(list(radii))
        for prof in profiles:
            ok = all(
                d[i][j] <= prof[i] + prof[j]
                for i in range(len(centers))
                for j in range(i + 1, len(centers))
            )
            if not ok:
                continue
            balls = list(zip(centers, prof))
            if not adapter.family_meets(balls):
                if _verify_glued(adapter, balls):
                    return Counterexample(None, tuple(balls))
        return None

    directed = []
    dims = G.part_dims
    if len(dims) >= 2 and dims[0] == 3 and dims[1] == 3:
        for a, b in ((0, 1), (1, 0)):
            directed.append(
                [
                    GluedPoint(a, (ZERO, ZERO, ONE)),
                    GluedPoint(b, (Q(2), ZERO, ZERO)),
                    GluedPoint(b, (ZERO, Q(-2), ZERO)),
                ]
            )
    pools = adapter.pools()
    combined = [p for pool in pools for p in pool]
    for size in (2, 3):
        for combo in combinations(combined, size):
            if len({c.part for c in combo}) > 1:
                directed.append(list(combo))

    for centers in directed:
        if tested >= budget:
            break
        tested += 1
        hit = try_family(centers, None)
        if hit:
            return _report(
                "hyperconvex", OracleStatus.REFUTED, hit, tested, budget, seed
            )
    counter = 0
    while tested < budget:
        rng = random.Random(f"{seed}:hg:{counter}")
        counter += 1
        tested += 1
        size = rng.randint(2, 4)
        centers = []
        for _ in range(size):
            part = rng.randrange(len(dims))
            centers.append(
                GluedPoint(part, _random_point(rng, dims[part], rng.random() < 0.5))
            )
        hit = try_family(centers, None)
        if hit:
            return _report(
                "hyperconvex", OracleStatus.REFUTED, hit, tested, budget, seed
            )
    return _report("hyperconvex", OracleStatus.PASS, None, tested, budget, seed)


def eh_oracle(target: PolySet, budget=DEFAULT_BUDGET, seed=0) -> OracleReport:
    """Search for ambient balls reaching the target with empty joint trace."""
    adapter = _PolySetTarget(target)
    tested = 0

    def try_family(centers, radii):
        if len({tuple(c) for c in centers}) != len(centers):
            return None
        d = _pairwise(dist_inf, centers)
        floors = [adapter.distance(c) for c in centers]
        profiles = []
        if radii is None:
            base = _rule_radii(d, floors)
            profiles.append(base)
            shrunk = _shrink(base, floors, d)
            if shrunk is not None and shrunk != base:
                profiles.append(shrunk)
        else:
            prof = list(radii)
            if all(f <= r for f, r in zip(floors, prof)):
                profiles.append(prof)
        for prof in profiles:
            ok = all(
                d[i][j] <= prof[i] + prof[j]
                for i in range(len(centers))
                for j in range(i + 1, len(centers))
            )
            if not ok:
                continue
            region = box_intersect([ball(c, r) for c, r in zip(centers, prof)])
            if not adapter.meets(region):
                balls = tuple(zip(map(tuple, centers), prof))
                if _verify_polyset("eh", adapter, None, balls):
                    return Counterexample(None, balls)
        return None

    for centers, radii in _directed_eh(adapter):
        if tested >= budget:
            break
        tested += 1
        hit = try_family(centers, radii)
        if hit:
            return _report("eh", OracleStatus.REFUTED, hit, tested, budget, seed)
    counter = 0
    while tested < budget:
        rng = random.Random(f"{seed}:e:{counter}")
        counter += 1
        tested += 1
        size = rng.randint(2, 4)
        centers = [
            _random_point(rng, adapter.dim, rng.random() < 0.5)
            for _ in range(size)
        ]
        hit = try_family(centers, None)
        if hit:
            return _report("eh", OracleStatus.REFUTED, hit, tested, budget, seed)
    return _report("eh", OracleStatus.PASS, None, tested, budget, seed)


def weh_oracle(target: PolySet, budget=DEFAULT_BUDGET, seed=0) -> OracleReport:
    """Search for one external ball plus target-centered balls with empty
    admissible intersection inside the target."""
    adapter = _PolySetTarget(target)
    tested = 0

    def try_config(x, r, centers, radii):
        x = tuple(x)
        if r is None:
            r = adapter.distance(x)
        if len({tuple(c) for c in centers}) != len(centers):
            return None
        if any(not adapter.contains(c) for c in centers):
            return None
        d = _pairwise(dist_inf, centers)
        floors = [
            max(ZERO, dist_inf(x, c) - r) for c in centers
        ]
        profiles = []
        if radii is None:
            base = _rule_radii(d, floors)
            profiles.append(base)
            shrunk = _shrink(base, floors, d)
            if shrunk is not None and shrunk != base:
                profiles.append(shrunk)
        else:
            prof = list(radii)
            if all(f <= rr for f, rr in zip(floors, prof)):
                profiles.append(prof)
        if not centers:
            profiles = [[]]
        for prof in profiles:
            ok = all(
                d[i][j] <= prof[i] + prof[j]
                for i in range(len(centers))
                for j in range(i + 1, len(centers))
            )
            if not ok:
                continue
            boxes = [ball(x, r)] + [
                ball(c, rr) for c, rr in zip(centers, prof)
            ]
            region = box_intersect(boxes)
            if not adapter.meets(region):
                balls = tuple(zip(map(tuple, centers), prof))
                if _verify_polyset("weh", adapter, (x, r), balls):
                    return Counterexample((x, r), balls)
        return None

    for x, r, centers, radii in _directed_weh(adapter):
        if tested >= budget:
            break
        tested += 1
        hit = try_config(x, r, centers, radii)
        if hit:
            return _report("weh", OracleStatus.REFUTED, hit, tested, budget, seed)
    pool = adapter.pool()
    counter = 0
    while tested < budget:
        rng = random.Random(f"{seed}:w:{counter}")
        counter += 1
        tested += 1
        x = _random_point(rng, adapter.dim, rng.random() < 0.5)
        size = rng.randint(0, 3) if pool else 0
        centers = [pool[rng.randrange(len(pool))] for _ in range(size)] if pool else []
        hit = try_config(x, None, centers, None)
        if hit:
            return _report("weh", OracleStatus.REFUTED, hit, tested, budget, seed)
    return _report("weh", OracleStatus.PASS, None, tested, budget, seed)
