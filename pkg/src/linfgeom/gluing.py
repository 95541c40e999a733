"""Gluings of sup-norm spaces along a common linear subspace.

Finitely many parts l_inf^{n_part} are joined along a k-dimensional space
embedded linearly and isometrically into each part; a point is a (part,
coordinates) pair, and cross-part distance is the least two-leg path through
the shared subspace.  Provides the glued metric, cross-part ball traces,
ball-family intersection tests, the two-part hyperconvexity decision, and the
pointwise gluing-condition check used for general gluing targets.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .boxes import Box, ball, box_intersect, dist_inf
from .linalg import nullspace, rank, rref, solve_unique, span_equal
from .lp import Infeasible, Optimal, lp_feasible, lp_optimize, system
from .polyhedra import (
    FMOverflow,
    HPolyhedron,
    WehStatus,
    canonicalize,
    fm_eliminate,
    fm_witness,
    is_cuboid,
    is_weh_polyhedron,
    metric_projection,
    vertices,
)
from .rational import ONE, ZERO, rat, rat_str
from .subspaces import LinearSubspace, is_strongly_convex_subspace

__all__ = [
    "GluedSpace",
    "GluedPoint",
    "GluingError",
    "glued_space",
    "validate_gluing",
    "glued_distance",
    "distance_to_subspace",
    "ball_trace",
    "glued_family_intersects",
    "GluingDecision",
    "decide_glued_hyperconvex",
    "GluingConditionsReport",
    "check_gluing_conditions",
]


class GluingError(ValueError):
    pass


@dataclass(frozen=True)
class GluedSpace:
    """Parts l_inf^{n} with an injective, norm-compatible embedding of R^k each."""

    part_dims: tuple
    k: int
    embeddings: tuple  # one (n_part x k) row-tuple matrix per part

    def __post_init__(self):
        if len(self.embeddings) != len(self.part_dims):
            raise GluingError("one embedding per part required")
        for n, emb in zip(self.part_dims, self.embeddings):
            if len(emb) != n or any(len(row) != self.k for row in emb):
                raise GluingError(
                    f"embedding shape {len(emb)}x? does not match part dimension {n} x k={self.k}"
                )


@dataclass(frozen=True)
class GluedPoint:
    part: int
    coords: tuple


def glued_space(part_dims, embeddings) -> GluedSpace:
    embs = tuple(
        tuple(tuple(rat(v) for v in row) for row in emb) for emb in embeddings
    )
    k = len(embs[0][0]) if embs and embs[0] else 0
    return GluedSpace(tuple(part_dims), k, embs)


def embed(G: GluedSpace, part: int, u):
    emb = G.embeddings[part]
    return tuple(sum((a * x for a, x in zip(row, u)), ZERO) for row in emb)


def validate_gluing(G: GluedSpace):
    """List of problems (empty means valid).

    Injectivity is a rank check; norm compatibility is checked exactly at the
    vertices of each unit pre-image polytope {u : |embed(u)|_inf <= 1}, which
    suffices by convexity and homogeneity.  Vertex enumeration caps k at 6.
    """
    problems = []
    k = G.k
    if k > 6:
        return [f"gluing dimension {k} over the vertex-enumeration cap 6"]
    for idx, emb in enumerate(G.embeddings):
        if k and rank(emb) != k:
            problems.append(f"embedding of part {idx} is not injective")
    if problems or k == 0:
        return problems
    for idx, emb in enumerate(G.embeddings):
        rows = []
        for row in emb:
            rows.append((tuple(row), ONE))
            rows.append((tuple(-a for a in row), ONE))
        unit = HPolyhedron(k, tuple(rows), ())
        for v in vertices(unit):
            for jdx in range(len(G.embeddings)):
                if jdx == idx:
                    continue
                norm = max(abs(c) for c in embed(G, jdx, v))
                if norm != ONE:
                    problems.append(
                        f"norm mismatch at u=({', '.join(rat_str(c) for c in v)}): "
                        f"part {idx} gives 1, part {jdx} gives {rat_str(norm)}"
                    )
                    return problems
    return problems


@lru_cache(maxsize=None)
def _ensure_valid(G: GluedSpace):
    problems = validate_gluing(G)
    if problems:
        raise GluingError("; ".join(problems))
    return True


def _check_point(G, p: GluedPoint):
    if not 0 <= p.part < len(G.part_dims):
        raise GluingError(f"part index {p.part} out of range")
    if len(p.coords) != G.part_dims[p.part]:
        raise GluingError(
            f"point of dimension {len(p.coords)} in part of dimension "
            f"{G.part_dims[p.part]}"
        )


def _kink_candidates(values, weights):
    """Candidate minimizers of u -> max_i |values_i - u * weights_i|."""
    out = set()
    m = len(values)
    for i in range(m):
        if weights[i]:
            out.add(values[i] / weights[i])
        for j in range(i + 1, m):
            diff = weights[i] - weights[j]
            if diff:
                out.add((values[i] - values[j]) / diff)
            tot = weights[i] + weights[j]
            if tot:
                out.add((values[i] + values[j]) / tot)
    return out


def _eval_leg(values, weights, u):
    best = ZERO
    for c, w in zip(values, weights):
        gap = abs(c - u * w)
        if gap > best:
            best = gap
    return best


def glued_distance(G: GluedSpace, p: GluedPoint, q: GluedPoint):
    """Glued metric: within a part the sup metric, across parts the least
    d(p, v) + d(v, q) over gluing points v."""
    _ensure_valid(G)
    _check_point(G, p)
    _check_point(G, q)
    if p.part == q.part:
        return dist_inf(p.coords, q.coords)
    k = G.k
    if k == 0:
        origin_p = (ZERO,) * len(p.coords)
        origin_q = (ZERO,) * len(q.coords)
        return dist_inf(p.coords, origin_p) + dist_inf(origin_q, q.coords)
    ep = G.embeddings[p.part]
    eq = G.embeddings[q.part]
    if k == 1:
        wp = tuple(row[0] for row in ep)
        wq = tuple(row[0] for row in eq)
        cands = _kink_candidates(p.coords, wp) | _kink_candidates(q.coords, wq)
        return min(
            _eval_leg(p.coords, wp, u) + _eval_leg(q.coords, wq, u) for u in cands
        )
    return _distance_lp(G, p, q)


def _distance_lp(G: GluedSpace, p: GluedPoint, q: GluedPoint):
    """Cross-part distance by one exact LP over (u, t1, t2)."""
    k = G.k
    ep = G.embeddings[p.part]
    eq = G.embeddings[q.part]
    width = k + 2
    rows = []
    for row, c in zip(ep, p.coords):
        rows.append((tuple(row) + (-ONE, ZERO), c))
        rows.append((tuple(-a for a in row) + (-ONE, ZERO), -c))
    for row, c in zip(eq, q.coords):
        rows.append((tuple(row) + (ZERO, -ONE), c))
        rows.append((tuple(-a for a in row) + (ZERO, -ONE), -c))
    obj = (ZERO,) * k + (ONE, ONE)
    res = lp_optimize(obj, "min", system(width, rows, ()))
    assert isinstance(res, Optimal)
    return res.value


def distance_to_subspace(G: GluedSpace, p: GluedPoint):
    """Distance from p to the glued subspace, measured inside its part."""
    _ensure_valid(G)
    _check_point(G, p)
    k = G.k
    if k == 0:
        return dist_inf(p.coords, (ZERO,) * len(p.coords))
    emb = G.embeddings[p.part]
    if k == 1:
        w = tuple(row[0] for row in emb)
        cands = _kink_candidates(p.coords, w)
        return min(_eval_leg(p.coords, w, u) for u in cands)
    width = k + 1
    rows = []
    for row, c in zip(emb, p.coords):
        rows.append((tuple(row) + (-ONE,), c))
        rows.append((tuple(-a for a in row) + (-ONE,), -c))
    obj = (ZERO,) * k + (ONE,)
    res = lp_optimize(obj, "min", system(width, rows, ()))
    assert isinstance(res, Optimal)
    return res.value


def _lifted_ball_rows(G, center: GluedPoint, r, target, width, y_base, u_base):
    """Rows over (…, y, …, u, t1, t2) for the cross-part ball condition
    d(center, y) <= r, i.e. exists u with both legs bounded and summing to r."""
    rows = []
    emb_c = G.embeddings[center.part]
    emb_t = G.embeddings[target]
    t1, t2 = u_base + G.k, u_base + G.k + 1
    for row, c in zip(emb_c, center.coords):
        for sgn in (ONE, -ONE):
            full = [ZERO] * width
            for j, a in enumerate(row):
                full[u_base + j] = sgn * a
            full[t1] = -ONE
            rows.append((tuple(full), sgn * c))
    for b, row in enumerate(emb_t):
        for sgn in (ONE, -ONE):
            full = [ZERO] * width
            full[y_base + b] = sgn
            for j, a in enumerate(row):
                full[u_base + j] -= sgn * a
            full[t2] = -ONE
            rows.append((tuple(full), ZERO))
    cap = [ZERO] * width
    cap[t1] = ONE
    cap[t2] = ONE
    rows.append((tuple(cap), rat(r)))
    return rows


@lru_cache(maxsize=65536)
def _trace_rows(G: GluedSpace, part: int, coords: tuple, r, target: int):
    """y-only inequality rows of {y in part target : d((part, coords), y) <= r},
    obtained by eliminating the lift variables; None when the trace is empty."""
    n_t = G.part_dims[target]
    k = G.k
    width = n_t + k + 2
    center = GluedPoint(part, coords)
    rows = _lifted_ball_rows(G, center, r, target, width, 0, n_t)
    elim = [n_t + k, n_t + k + 1] + [n_t + j for j in range(k)]
    res = fm_eliminate(rows, [], elim, row_cap=400)
    if res is None:
        return None
    out = []
    for full, rhs in res[0]:
        out.append((full[:n_t], rhs))
    return tuple(out)


def ball_trace(G: GluedSpace, center: GluedPoint, r, target: int):
    """Trace of the glued ball B(center, r) on another part, as a polyhedron.

    Returns None when r is smaller than the distance to the gluing subspace.
    """
    _ensure_valid(G)
    _check_point(G, center)
    r = rat(r)
    if target == center.part:
        raise GluingError("trace on the center's own part is the plain ball")
    if not 0 <= target < len(G.part_dims):
        raise GluingError(f"part index {target} out of range")
    if r < distance_to_subspace(G, center):
        return None
    rows = _trace_rows(G, center.part, tuple(rat(c) for c in center.coords), r, target)
    assert rows is not None
    out = canonicalize(HPolyhedron(G.part_dims[target], rows, ()))
    assert out is not None
    return out


def _box_only_rows(box: Box):
    rows = []
    for i, iv in enumerate(box.intervals):
        if iv.upper is not None:
            row = [ZERO] * box.dim
            row[i] = ONE
            rows.append((tuple(row), iv.upper))
        if iv.lower is not None:
            row = [ZERO] * box.dim
            row[i] = -ONE
            rows.append((tuple(row), -iv.lower))
    return rows


def _part_feasible_lp(G, same, foreign, target):
    """Lifted LP fallback: y plus one (u, t1, t2) block per foreign ball."""
    n_t = G.part_dims[target]
    k = G.k
    width = n_t + len(foreign) * (k + 2)
    rows = []
    for pt, r in same:
        for b, c in enumerate(pt.coords):
            row = [ZERO] * width
            row[b] = ONE
            rows.append((tuple(row), c + r))
            row = [ZERO] * width
            row[b] = -ONE
            rows.append((tuple(row), r - c))
    for i, (pt, r) in enumerate(foreign):
        u_base = n_t + i * (k + 2)
        rows.extend(_lifted_ball_rows(G, pt, r, target, width, 0, u_base))
    res = lp_feasible(system(width, rows, ()))
    if isinstance(res, Infeasible):
        return None
    return res.point[:n_t]


def glued_family_intersects(G: GluedSpace, family):
    """Whether the glued balls of the family share a point; returns
    (True, witness GluedPoint) or (False, None).

    Decided part by part on the lifted feasibility system; the lift variables
    of each ball are projected out when small, with an exact LP fallback.
    """
    _ensure_valid(G)
    family = [(pt, rat(r)) for pt, r in family]
    for pt, r in family:
        _check_point(G, pt)
        if r < ZERO:
            raise GluingError(f"negative radius {rat_str(r)}")
    for target in range(len(G.part_dims)):
        n_t = G.part_dims[target]
        same = [(pt, r) for pt, r in family if pt.part == target]
        foreign = [(pt, r) for pt, r in family if pt.part != target]
        box = box_intersect(
            [Box.whole(n_t)] + [ball(pt.coords, r) for pt, r in same]
        )
        if box.is_empty:
            continue
        if not foreign:
            witness = tuple(
                iv.lower if iv.lower is not None else (
                    iv.upper if iv.upper is not None else ZERO
                )
                for iv in box.intervals
            )
            return True, GluedPoint(target, witness)
        rows = _box_only_rows(box)
        ok = True
        try:
            for pt, r in foreign:
                trace = _trace_rows(G, pt.part, pt.coords, r, target)
                if trace is None:
                    ok = False
                    break
                rows.extend(trace)
            if not ok:
                continue
            witness = fm_witness(n_t, rows)
        except FMOverflow:
            witness = _part_feasible_lp(G, same, foreign, target)
        if witness is not None:
            return True, GluedPoint(target, witness)
    return False, None


@dataclass(frozen=True)
class GluingDecision:
    hyperconvex: bool
    reason: str  # 'ok' | 'axis-mismatch' | 'split-misaligned' | 'complement-not-strongly-convex'
    axis_count: int = 0
    detail: str = ""

    def __str__(self):
        if self.hyperconvex:
            return f"hyperconvex: common free factor of dimension {self.axis_count}; {self.detail}"
        return f"not hyperconvex: {self.reason}; {self.detail}"


def _axis_lines(G, part):
    """{coordinate i: u with embed(u) = e_i} for axes contained in the image."""
    emb = G.embeddings[part]
    n = G.part_dims[part]
    out = {}
    for i in range(n):
        rhs = tuple(ONE if j == i else ZERO for j in range(n))
        u = solve_unique(emb, rhs)
        if u is not None:
            out[i] = u
    return out


def _canon_line(u):
    lead = next((c for c in u if c), None)
    if lead is None:
        return None
    inv = ONE / lead
    return tuple(c * inv for c in u)


def decide_glued_hyperconvex(G: GluedSpace):
    """Exact decision for gluings of two sup-norm spaces along a subspace.

    The gluing is hyperconvex iff the coordinate axes inside the subspace
    match across the two parts, split off as a common free factor, and the
    leftover subspace is strongly convex in both complements.
    """
    _ensure_valid(G)
    if len(G.part_dims) != 2:
        raise GluingError("the decision applies to exactly two parts")
    k = G.k
    for n in G.part_dims:
        if k >= n:
            raise GluingError("the gluing subspace must be proper in each part")

    axes = [_axis_lines(G, 0), _axis_lines(G, 1)]
    lines = [
        {_canon_line(u) for u in axes[0].values()},
        {_canon_line(u) for u in axes[1].values()},
    ]
    if lines[0] != lines[1]:
        extra = lines[0] ^ lines[1]
        sample = next(iter(extra))
        return False, GluingDecision(
            False,
            "axis-mismatch",
            detail=(
                "the subspace contains a coordinate axis of one part that is "
                f"not a coordinate axis of the other (parameter direction "
                f"({', '.join(rat_str(c) for c in sample)}))"
            ),
        )
    k0 = len(lines[0])

    complements = []
    comp_bases = []
    for part in (0, 1):
        axis_coords = sorted(axes[part])
        emb = G.embeddings[part]
        if axis_coords:
            u_comp = nullspace([emb[i] for i in axis_coords], k)
        else:
            u_comp = [
                tuple(ONE if j == i else ZERO for j in range(k)) for i in range(k)
            ]
        comp_bases.append(tuple(u_comp))
        keep = [i for i in range(G.part_dims[part]) if i not in set(axis_coords)]
        vecs = [tuple(embed(G, part, u)[i] for i in keep) for u in u_comp]
        complements.append(LinearSubspace.from_vectors(len(keep), vecs))
    if not span_equal(comp_bases[0], comp_bases[1]):
        return False, GluingDecision(
            False,
            "split-misaligned",
            axis_count=k0,
            detail=(
                "the free factor does not split off the same parameter "
                "subspace in both parts"
            ),
        )
    for part, comp in enumerate(complements):
        if not is_strongly_convex_subspace(comp):
            vec = comp.basis[0] if comp.basis else ()
            return False, GluingDecision(
                False,
                "complement-not-strongly-convex",
                axis_count=k0,
                detail=(
                    f"complement factor R({', '.join(rat_str(c) for c in vec)}) "
                    f"in part {part + 1} is not strongly convex"
                ),
            )
    return True, GluingDecision(
        True,
        "ok",
        axis_count=k0,
        detail="complement factor is strongly convex in both parts",
    )


@dataclass(frozen=True)
class GluingConditionsReport:
    weh_verdict: object
    checked: tuple  # ((sample, projection_is_cuboid), ...)
    failed_at: tuple  # sample where the projection is not a cuboid, or None
    holds: bool

    def __str__(self):
        head = f"gluing-set classification: {self.weh_verdict.status.value}"
        if self.failed_at is not None:
            coords = ", ".join(rat_str(c) for c in self.failed_at)
            return (
                f"{head}; projection at ({coords}) is not a cuboid; "
                "conditions fail"
            )
        state = "hold" if self.holds else "fail"
        return f"{head}; {len(self.checked)} sample projections checked; conditions {state}"


def check_gluing_conditions(n, A: HPolyhedron, samples=()):
    """Pointwise check of the gluing hypotheses for a polyhedral gluing set.

    Reports whether A is certified weakly externally hyperconvex and whether
    the metric projection of each sample onto A is a cuboid.  Caller samples
    run first, then a default integer grid in [-2, 2]^n; scanning stops at the
    first failing sample.  Refutation-complete on the samples only.
    """
    if A.dim != n:
        raise ValueError("ambient dimension mismatch")
    canon = canonicalize(A)
    if canon is None:
        raise ValueError("empty gluing set")
    weh = is_weh_polyhedron(canon)

    stream = []
    seen = set()
    for x in samples:
        pt = tuple(rat(c) for c in x)
        if pt not in seen:
            seen.add(pt)
            stream.append(pt)
    for ints in product(range(-2, 3), repeat=n):
        pt = tuple(rat(c) for c in ints)
        if pt not in seen:
            seen.add(pt)
            stream.append(pt)

    checked = []
    failed_at = None
    for x in stream:
        proj = metric_projection(canon, x)
        ok, _ = is_cuboid(proj)
        checked.append((x, ok))
        if not ok:
            failed_at = x
            break
    holds = weh.status == WehStatus.CERTIFIED_WEH and failed_at is None
    return GluingConditionsReport(weh, tuple(checked), failed_at, holds)
