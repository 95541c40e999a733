"""Exact rational linear programming.

Two-phase tableau simplex over exact rationals with Bland's pivot rule:
deterministic, cycle-free, and witness-exact.  Unboundedness and
infeasibility are ordinary results, never errors; callers routinely
produce both.  No floating point is used at any stage.
"""

from dataclasses import dataclass

from .rational import ONE, ZERO, rat

__all__ = [
    "LinearSystem",
    "Feasible",
    "Infeasible",
    "Optimal",
    "Unbounded",
    "lp_feasible",
    "lp_optimize",
]


@dataclass(frozen=True)
class LinearSystem:
    """Conjunction a.x <= c (ineqs) and a.x = c (eqs) over n_vars free variables."""

    n_vars: int
    ineqs: tuple
    eqs: tuple

    def __post_init__(self):
        for coeffs, _ in list(self.ineqs) + list(self.eqs):
            if len(coeffs) != self.n_vars:
                raise ValueError(
                    f"coefficient vector of length {len(coeffs)} in a "
                    f"{self.n_vars}-variable system"
                )


def system(n_vars, ineqs=(), eqs=()):
    """Build a LinearSystem, coercing all scalars to exact rationals."""
    mk = lambda rows: tuple((tuple(rat(a) for a in c), rat(b)) for c, b in rows)
    return LinearSystem(n_vars, mk(ineqs), mk(eqs))


@dataclass(frozen=True)
class Feasible:
    point: tuple


@dataclass(frozen=True)
class Infeasible:
    pass


@dataclass(frozen=True)
class Optimal:
    value: object
    point: tuple


@dataclass(frozen=True)
class Unbounded:
    ray: tuple  # direction in the original variables along which the objective improves


class _Tableau:
    """Dense simplex tableau. Columns: x+ (n), x- (n), slacks, artificials, rhs."""

    def __init__(self, sys: LinearSystem):
        n = sys.n_vars
        rows = []
        needs_art = []
        # inequality rows: a.x + s = c, flipped so rhs >= 0
        for coeffs, rhs in sys.ineqs:
            rows.append((list(coeffs), rhs, "ineq"))
        for coeffs, rhs in sys.eqs:
            rows.append((list(coeffs), rhs, "eq"))
        m = len(rows)
        n_slack = len(sys.ineqs)
        width = 2 * n + n_slack + m + 1  # worst case: artificial in every row
        self.n = n
        self.n_slack = n_slack
        self.rows = []
        self.basis = []
        art_col = 2 * n + n_slack
        self.first_art = art_col
        for idx, (coeffs, rhs, kind) in enumerate(rows):
            row = [ZERO] * width
            flip = rhs < ZERO
            sgn = -ONE if flip else ONE
            for j, a in enumerate(coeffs):
                if a:
                    row[j] = sgn * a
                    row[n + j] = -sgn * a
            row[-1] = sgn * rhs
            if kind == "ineq":
                row[2 * n + idx] = sgn
                if not flip:
                    self.rows.append(row)
                    self.basis.append(2 * n + idx)
                    continue
            row[art_col] = ONE
            self.rows.append(row)
            self.basis.append(art_col)
            needs_art.append(art_col)
            art_col += 1
        self.width = width
        self.artificials = needs_art

    def pivot(self, r, c):
        rows = self.rows
        prow = rows[r]
        piv = prow[c]
        if piv != ONE:
            inv = ONE / piv
            rows[r] = prow = [v * inv for v in prow]
        for i, row in enumerate(rows):
            if i == r:
                continue
            f = row[c]
            if f:
                rows[i] = [v - f * p for v, p in zip(row, prow)]
        self.basis[r] = c

    def _reduced_costs(self, cost):
        # cost vector over all columns (rhs slot unused); returns z-row with
        # basic columns eliminated, plus current objective value.
        z = list(cost) + [ZERO]
        for r, b in enumerate(self.basis):
            f = z[b]
            if f:
                row = self.rows[r]
                z = [v - f * w for v, w in zip(z, row)]
        return z

    def _bland(self, z, allowed):
        rows = self.rows
        enter = -1
        for j in range(self.width - 1):
            if allowed(j) and z[j] < ZERO:
                enter = j
                break
        if enter < 0:
            return "optimal", -1, -1
        leave = -1
        best = None
        best_var = None
        for i, row in enumerate(rows):
            a = row[enter]
            if a > ZERO:
                ratio = row[-1] / a
                if best is None or ratio < best or (
                    ratio == best and self.basis[i] < best_var
                ):
                    best, best_var, leave = ratio, self.basis[i], i
        if leave < 0:
            return "unbounded", enter, -1
        return "pivot", enter, leave

    def minimize(self, cost, allowed):
        """Run Bland simplex minimizing cost over allowed columns."""
        z = self._reduced_costs(cost)
        while True:
            state, enter, leave = self._bland(z, allowed)
            if state != "pivot":
                return state, z, enter
            self.pivot(leave, enter)
            f = z[enter]
            if f:
                prow = self.rows[leave]
                z = [v - f * w for v, w in zip(z, prow)]

    def solution(self):
        vals = [ZERO] * (self.width - 1)
        for r, b in enumerate(self.basis):
            vals[b] = self.rows[r][-1]
        n = self.n
        return tuple(vals[j] - vals[n + j] for j in range(n))

    def ray(self, enter):
        # direction: entering column +1, basics move by -column entry
        direction = [ZERO] * (self.width - 1)
        direction[enter] = ONE
        for r, b in enumerate(self.basis):
            a = self.rows[r][enter]
            if a:
                direction[b] = -a
        n = self.n
        return tuple(direction[j] - direction[n + j] for j in range(n))


def _phase_one(tab: _Tableau):
    if not tab.artificials:
        return True
    cost = [ZERO] * tab.width
    for a in tab.artificials:
        cost[a] = ONE
    state, z, _ = tab.minimize(cost, lambda j: True)
    assert state == "optimal"  # sum of artificials is bounded below by 0
    if z[-1] < ZERO:  # z-row holds -objective after elimination
        return False
    if -z[-1] > ZERO:
        return False
    # drive leftover artificials out of the basis, dropping redundant rows
    first_art = tab.first_art
    r = 0
    while r < len(tab.rows):
        b = tab.basis[r]
        if b >= first_art:
            row = tab.rows[r]
            col = next(
                (j for j in range(first_art) if row[j]),
                None,
            )
            if col is None:
                del tab.rows[r]
                del tab.basis[r]
                continue
            tab.pivot(r, col)
        r += 1
    return True


def _solve(sys_: LinearSystem, objective=None, maximize=False):
    tab = _Tableau(sys_)
    if not _phase_one(tab):
        return Infeasible()
    first_art = tab.first_art
    allowed = lambda j: j < first_art
    if objective is None:
        return Feasible(tab.solution())
    n = sys_.n_vars
    if len(objective) != n:
        raise ValueError(f"objective of length {len(objective)} for {n} variables")
    obj = [rat(a) for a in objective]
    sign = -ONE if maximize else ONE
    cost = [ZERO] * tab.width
    for j, a in enumerate(obj):
        cost[j] = sign * a
        cost[n + j] = -sign * a
    state, z, enter = tab.minimize(cost, allowed)
    if state == "unbounded":
        return Unbounded(tab.ray(enter))
    point = tab.solution()
    value = sum((a * v for a, v in zip(obj, point)), ZERO)
    return Optimal(value, point)


def lp_feasible(sys_: LinearSystem):
    """Exact feasibility: Feasible(witness) or Infeasible."""
    return _solve(sys_)


def lp_optimize(objective, sense, sys_: LinearSystem):
    """Exact optimization. sense is 'min' or 'max'.

    Returns Optimal(value, witness), Unbounded(ray) or Infeasible; the witness
    satisfies every constraint exactly and attains the value exactly.
    """
    if sense not in ("min", "max"):
        raise ValueError(f"sense must be 'min' or 'max', got {sense!r}")
    return _solve(sys_, objective=objective, maximize=(sense == "max"))
