"""Exact rational toolkit for Chebyshev-norm (sup-norm) geometry.

Modules:
    rational    exact scalar type
    lp          exact rational linear programming kernel
    boxes       points, the sup metric, axis-aligned boxes (balls)
    polyhedra   H-representation polyhedra: canonical forms, distances,
                projections, cuboid and ball-intersection classification
    subspaces   classification of linear subspaces of R^n under the sup norm
    gluing      gluings of sup-norm spaces along a common linear subspace
    oracles     brute-force refutation oracles validating every classifier
    tightspan   minimal-enclosing-hyperconvex-space cells of finite metrics
    cli         line-oriented command-line interface
"""

from .rational import Q, rat, rat_str

__all__ = ["Q", "rat", "rat_str"]
__version__ = "0.1.0"
