"""Line-oriented command line interface.

Input grammar (one directive per line, `#` starts a comment):

    dim n                       ambient dimension
    basis v1 ... vn             subspace basis vector (rationals p or p/q)
    le a1 ... an c              inequality a.x <= c
    eq a1 ... an c              equality   a.x  = c
    piece                       starts a new piece of a multi-piece target
    part n                      gluing part of dimension n
    embed                       followed by n rows of k rationals each
    metric m                    followed by m rows of m rationals
    ball [part] x1 ... xn r     ball; the part index (1-based) is required
                                exactly when the input declares gluing parts

Reports are deterministic `VERDICT <name> <value>` lines, optionally followed
by a WITNESS or COUNTEREXAMPLE block of `ball` lines in the input grammar.
Exit codes: 0 classification emitted / property holds, 1 property refuted,
2 input error.
"""

import argparse
import sys

from .gluing import (
    GluedPoint,
    GluingError,
    decide_glued_hyperconvex,
    glued_distance,
    glued_space,
    validate_gluing,
)
from .oracles import (
    DEFAULT_BUDGET,
    OracleStatus,
    eh_oracle,
    hyperconvexity_oracle,
    polyset,
    weh_oracle,
)
from .polyhedra import WehStatus, canonicalize, is_cuboid, is_weh_polyhedron, poly
from .rational import parse_rational, rat_str
from .subspaces import (
    LinearSubspace,
    classify_weh_subspace,
    is_eh_subspace,
    is_hyperconvex_subspace,
    is_strongly_convex_subspace,
)
from .tightspan import MAX_POINTS, cell_weh_certificate, enumerate_cells, metric_space

__all__ = ["main", "run"]


class InputError(Exception):
    def __init__(self, line, message):
        super().__init__(f"line {line}: {message}")
        self.line = line


class Document:
    def __init__(self):
        self.dim = None
        self.basis = []
        self.pieces = [([], [])]  # (ineqs, eqs) per piece
        self.parts = []  # (dim, rows or None)
        self.metric = None
        self.balls = []  # (part or None, coords, radius)


def _rationals(tokens, line):
    try:
        return [parse_rational(t) for t in tokens]
    except ValueError as exc:
        raise InputError(line, str(exc)) from None


def parse_input(text) -> Document:
    doc = Document()
    pending_embed = None  # rows still to read for the current part
    pending_metric = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if not content:
            continue
        tokens = content.split()
        if pending_embed is not None:
            rows_left, rows = pending_embed
            rows.append(_rationals(tokens, lineno))
            if len(rows) > 1 and len(rows[-1]) != len(rows[0]):
                raise InputError(lineno, "embedding rows of differing width")
            if len(rows) == rows_left:
                doc.parts[-1] = (doc.parts[-1][0], rows)
                pending_embed = None
            continue
        if pending_metric is not None:
            rows_left, rows = pending_metric
            rows.append(_rationals(tokens, lineno))
            if len(rows[-1]) != rows_left:
                raise InputError(lineno, f"metric row of length {len(rows[-1])}, expected {rows_left}")
            if len(rows) == rows_left:
                doc.metric = rows
                pending_metric = None
            continue
        head, rest = tokens[0], tokens[1:]
        if head == "dim":
            if len(rest) != 1 or not rest[0].isdigit():
                raise InputError(lineno, "usage: dim n")
            doc.dim = int(rest[0])
        elif head == "basis":
            doc.basis.append(_rationals(rest, lineno))
        elif head in ("le", "eq"):
            if len(rest) < 2:
                raise InputError(lineno, f"usage: {head} a1 ... an c")
            values = _rationals(rest, lineno)
            row = (tuple(values[:-1]), values[-1])
            target = doc.pieces[-1][0 if head == "le" else 1]
            target.append(row)
        elif head == "piece":
            if rest:
                raise InputError(lineno, "usage: piece")
            doc.pieces.append(([], []))
        elif head == "part":
            if len(rest) != 1 or not rest[0].isdigit():
                raise InputError(lineno, "usage: part n")
            doc.parts.append((int(rest[0]), None))
        elif head == "embed":
            if rest:
                raise InputError(lineno, "usage: embed")
            if not doc.parts or doc.parts[-1][1] is not None:
                raise InputError(lineno, "embed must follow its part line")
            pending_embed = (doc.parts[-1][0], [])
        elif head == "metric":
            if len(rest) != 1 or not rest[0].isdigit():
                raise InputError(lineno, "usage: metric m")
            pending_metric = (int(rest[0]), [])
        elif head == "ball":
            values = _rationals(rest, lineno)
            if doc.parts:
                if len(values) < 2:
                    raise InputError(lineno, "usage: ball part x1 ... xn r")
                part = int(values[0])
                if values[0] != part or not 1 <= part <= len(doc.parts):
                    raise InputError(lineno, f"part index {rest[0]} out of range")
                coords = tuple(values[1:-1])
                if len(coords) != doc.parts[part - 1][0]:
                    raise InputError(lineno, "ball coordinate count mismatch")
                doc.balls.append((part - 1, coords, values[-1]))
            else:
                if doc.dim is None:
                    raise InputError(lineno, "ball before dim")
                coords = tuple(values[:-1])
                if len(coords) != doc.dim:
                    raise InputError(lineno, "ball coordinate count mismatch")
                doc.balls.append((None, coords, values[-1]))
        else:
            raise InputError(lineno, f"unknown directive {head!r}")
    if pending_embed is not None:
        raise InputError(0, "unterminated embed block")
    if pending_metric is not None:
        raise InputError(0, "unterminated metric block")
    return doc


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _emit(out, name, value):
    print(f"VERDICT {name} {value}", file=out)


def _ball_line(part, coords, radius):
    coord_str = " ".join(rat_str(c) for c in coords)
    if part is None:
        return f"ball {coord_str} {rat_str(radius)}"
    return f"ball {part + 1} {coord_str} {rat_str(radius)}"


def _print_counterexample(out, counterexample):
    print("COUNTEREXAMPLE", file=out)
    if counterexample.external is not None:
        center, r = counterexample.external
        print(_ball_line(None, center, r), file=out)
    for center, r in counterexample.balls:
        if isinstance(center, GluedPoint):
            print(_ball_line(center.part, center.coords, r), file=out)
        else:
            print(_ball_line(None, center, r), file=out)


def _yesno(flag):
    return "yes" if flag else "no"


def _fmt_group(name, coords):
    return f"{name}{{{','.join(str(c + 1) for c in coords)}}}"


def _decomposition_str(deco):
    groups = []
    if deco.axis:
        groups.append(_fmt_group("axis", deco.axis))
    if deco.zeros:
        groups.append(_fmt_group("zero", deco.zeros))
    for coords, signs in deco.blocks:
        idx = ",".join(str(c + 1) for c in coords)
        sgn = "".join("+" if s > 0 else "-" for s in signs)
        groups.append(f"diag{{{idx}:{sgn}}}")
    return " ".join(groups) if groups else "trivial"


def _cmd_classify_subspace(args, out):
    doc = parse_input(_read(args.input))
    if doc.dim is None:
        raise InputError(0, "missing dim")
    for vec in doc.basis:
        if len(vec) != doc.dim:
            raise InputError(0, "basis vector length mismatch")
    V = LinearSubspace.from_vectors(doc.dim, doc.basis)
    hyper, pivot = is_hyperconvex_subspace(V)
    _emit(out, "hyperconvex", _yesno(hyper))
    if hyper:
        _emit(out, "pivot-set", "{" + ",".join(str(j + 1) for j in pivot) + "}")
    _emit(out, "strongly-convex", _yesno(is_strongly_convex_subspace(V)))
    deco = classify_weh_subspace(V)
    _emit(out, "weh", _yesno(deco is not None))
    if deco is not None:
        _emit(out, "decomposition", _decomposition_str(deco))
    _emit(out, "eh", _yesno(is_eh_subspace(V)))
    return 0


def _single_piece(doc):
    if len(doc.pieces) != 1:
        raise InputError(0, "exactly one polyhedron expected")
    ineqs, eqs = doc.pieces[0]
    return poly(doc.dim, ineqs, eqs)


def _cmd_classify_polyhedron(args, out):
    doc = parse_input(_read(args.input))
    if doc.dim is None:
        raise InputError(0, "missing dim")
    P = canonicalize(_single_piece(doc))
    if P is None:
        _emit(out, "nonempty", "no")
        return 0
    _emit(out, "nonempty", "yes")
    cub, _ = is_cuboid(P)
    _emit(out, "cuboid", _yesno(cub))
    _emit(out, "weh", is_weh_polyhedron(P).status.value)
    return 0


def _gluing_from(doc):
    if len(doc.parts) < 2:
        raise InputError(0, "at least two part blocks required")
    dims, embeddings = [], []
    for n, rows in doc.parts:
        if rows is None:
            raise InputError(0, "part without an embed block")
        dims.append(n)
        embeddings.append(tuple(tuple(r) for r in rows))
    G = glued_space(dims, embeddings)
    problems = validate_gluing(G)
    if problems:
        raise InputError(0, "invalid gluing: " + "; ".join(problems))
    return G


def _cmd_glue_check(args, out):
    doc = parse_input(_read(args.input))
    G = _gluing_from(doc)
    if len(G.part_dims) == 2 and all(G.k < n for n in G.part_dims):
        ok, decision = decide_glued_hyperconvex(G)
        _emit(out, "hyperconvex", _yesno(ok))
        _emit(out, "certificate", decision.detail or decision.reason)
        if ok:
            return 0
        report = hyperconvexity_oracle(G, budget=args.budget, seed=args.seed)
        if report.status is OracleStatus.REFUTED:
            _print_counterexample(out, report.counterexample)
        return 1
    report = hyperconvexity_oracle(G, budget=args.budget, seed=args.seed)
    if report.status is OracleStatus.REFUTED:
        _emit(out, "hyperconvex", "no")
        _print_counterexample(out, report.counterexample)
        return 1
    _emit(out, "hyperconvex", "unknown")
    _emit(out, "oracle", f"PASS budget={report.budget} seed={report.seed}")
    return 0


def _cmd_glue_distance(args, out):
    doc = parse_input(_read(args.input))
    G = _gluing_from(doc)
    if len(doc.balls) != 2:
        raise InputError(0, "exactly two ball lines expected")
    points = [GluedPoint(part, coords) for part, coords, _ in doc.balls]
    d = glued_distance(G, points[0], points[1])
    _emit(out, "distance", rat_str(d))
    return 0


def _cmd_oracle(args, out):
    doc = parse_input(_read(args.input))
    if doc.parts:
        if args.kind != "hyperconvex":
            raise InputError(0, f"{args.kind} oracle does not apply to gluings")
        target = _gluing_from(doc)
        report = hyperconvexity_oracle(target, budget=args.budget, seed=args.seed)
    else:
        if doc.dim is None:
            raise InputError(0, "missing dim")
        pieces = [poly(doc.dim, ineqs, eqs) for ineqs, eqs in doc.pieces]
        try:
            target = polyset(doc.dim, pieces)
        except ValueError as exc:
            raise InputError(0, str(exc)) from None
        runner = {
            "hyperconvex": hyperconvexity_oracle,
            "eh": eh_oracle,
            "weh": weh_oracle,
        }[args.kind]
        report = runner(target, budget=args.budget, seed=args.seed)
    status = report.status.value
    _emit(
        out,
        "oracle",
        f"{status} budget={report.budget} seed={report.seed} "
        f"families={report.families_tested}",
    )
    if report.status is OracleStatus.REFUTED:
        _print_counterexample(out, report.counterexample)
        return 1
    return 0


def _cmd_tight_span(args, out):
    doc = parse_input(_read(args.input))
    if doc.metric is None:
        raise InputError(0, "missing metric block")
    try:
        X = metric_space(doc.metric)
    except ValueError as exc:
        raise InputError(0, str(exc)) from None
    if X.size > MAX_POINTS:
        raise InputError(0, f"metric over the {MAX_POINTS}-point cap")
    cells = enumerate_cells(X)
    _emit(out, "cells", len(cells))
    _emit(out, "extremal-cells", sum(1 for c in cells if c.extremal))
    _emit(
        out,
        "one-dim-extremal-cells",
        sum(1 for c in cells if c.extremal and c.dim == 1),
    )
    all_weh = all(
        cell_weh_certificate(X, c.edges, args.basepoint).status
        is WehStatus.CERTIFIED_WEH
        for c in cells
    )
    _emit(out, "all-cells-weh", _yesno(all_weh))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="linfgeom",
        description="exact sup-norm geometry toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, oracle_opts=False, basepoint=False):
        p = sub.add_parser(name)
        p.add_argument("input", help="input file, or - for stdin")
        if oracle_opts:
            p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
            p.add_argument("--seed", type=int, default=0)
        if basepoint:
            p.add_argument("--basepoint", type=int, default=0)
        p.set_defaults(fn=fn)
        return p

    add("classify-subspace", _cmd_classify_subspace)
    add("classify-polyhedron", _cmd_classify_polyhedron)
    add("glue-check", _cmd_glue_check, oracle_opts=True)
    add("glue-distance", _cmd_glue_distance)
    oracle = add("oracle", _cmd_oracle, oracle_opts=True)
    oracle.add_argument(
        "--kind", choices=("hyperconvex", "eh", "weh"), required=True
    )
    add("tight-span", _cmd_tight_span, basepoint=True)
    return parser


def run(argv, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.fn(args, out)
    except InputError as exc:
        print(f"ERROR {exc}", file=out)
        return 2
    except (GluingError, FileNotFoundError, ValueError) as exc:
        print(f"ERROR {exc}", file=out)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))
