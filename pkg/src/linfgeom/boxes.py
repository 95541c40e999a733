"""Points, the sup metric, and axis-aligned boxes.

Boxes are products of closed, possibly unbounded intervals: they are exactly
the closed balls and the ball-intersections of the sup norm, and the shape of
every externally hyperconvex subset of R^n under that norm.  Empty is a
distinguished value, not an error, so intersection pipelines flow.
"""

from dataclasses import dataclass

from .rational import ONE, ZERO, rat

__all__ = [
    "DimensionMismatch",
    "Interval",
    "Box",
    "as_point",
    "dist_inf",
    "ball",
    "box_intersect",
    "box_neighborhood",
]


class DimensionMismatch(ValueError):
    pass


def as_point(coords):
    return tuple(rat(c) for c in coords)


def dist_inf(p, q):
    """Chebyshev distance max_i |p_i - q_i|."""
    if len(p) != len(q):
        raise DimensionMismatch(f"points of dimension {len(p)} and {len(q)}")
    best = ZERO
    for a, b in zip(p, q):
        gap = a - b if a >= b else b - a
        if gap > best:
            best = gap
    return best


@dataclass(frozen=True)
class Interval:
    """Closed interval; None bounds mean unbounded. Empty if lower > upper."""

    lower: object = None
    upper: object = None

    def __post_init__(self):
        if self.is_empty:
            # canonical empty representative so equality and hashing behave
            object.__setattr__(self, "lower", ONE)
            object.__setattr__(self, "upper", ZERO)

    @property
    def is_empty(self) -> bool:
        return (
            self.lower is not None
            and self.upper is not None
            and self.lower > self.upper
        )

    def contains(self, v) -> bool:
        if self.is_empty:
            return False
        if self.lower is not None and v < self.lower:
            return False
        if self.upper is not None and v > self.upper:
            return False
        return True

    def intersect(self, other: "Interval") -> "Interval":
        if self.is_empty or other.is_empty:
            return EMPTY_INTERVAL
        lo = self.lower if other.lower is None else (
            other.lower if self.lower is None else max(self.lower, other.lower)
        )
        hi = self.upper if other.upper is None else (
            other.upper if self.upper is None else min(self.upper, other.upper)
        )
        return Interval(lo, hi)

    def widen(self, s) -> "Interval":
        lo = None if self.lower is None else self.lower - s
        hi = None if self.upper is None else self.upper + s
        return Interval(lo, hi)


EMPTY_INTERVAL = Interval(ONE, ZERO)


@dataclass(frozen=True)
class Box:
    """Product of intervals; empty iff any factor is empty."""

    intervals: tuple

    @classmethod
    def whole(cls, dim: int) -> "Box":
        return cls(tuple(Interval() for _ in range(dim)))

    @classmethod
    def empty(cls, dim: int) -> "Box":
        return cls((EMPTY_INTERVAL,) * dim)

    @property
    def dim(self) -> int:
        return len(self.intervals)

    @property
    def is_empty(self) -> bool:
        return any(iv.is_empty for iv in self.intervals)

    def contains(self, point) -> bool:
        if len(point) != self.dim:
            raise DimensionMismatch(
                f"point of dimension {len(point)} in a box of dimension {self.dim}"
            )
        return all(iv.contains(c) for iv, c in zip(self.intervals, point))

    def intersect(self, other: "Box") -> "Box":
        if self.dim != other.dim:
            raise DimensionMismatch(
                f"boxes of dimension {self.dim} and {other.dim}"
            )
        return Box(
            tuple(a.intersect(b) for a, b in zip(self.intervals, other.intervals))
        )


def ball(center, r) -> Box:
    """Closed sup-norm ball as a box: membership equals dist_inf <= r."""
    r = rat(r)
    if r < ZERO:
        raise ValueError(f"negative radius {r}")
    c = as_point(center)
    return Box(tuple(Interval(ci - r, ci + r) for ci in c))


def box_intersect(boxes) -> Box:
    boxes = list(boxes)
    if not boxes:
        raise ValueError("empty box family")
    out = boxes[0]
    for b in boxes[1:]:
        out = out.intersect(b)
    return out


def box_neighborhood(b: Box, s) -> Box:
    """Closed s-neighborhood: every finite endpoint moves outward by s."""
    s = rat(s)
    if b.is_empty:
        raise ValueError("neighborhood of an empty box")
    if s < ZERO:
        raise ValueError(f"negative widening {s}")
    return Box(tuple(iv.widen(s) for iv in b.intervals))
