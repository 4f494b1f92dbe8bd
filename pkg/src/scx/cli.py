"""Command-line entry point: ``scx <command> ...``.

Results go to stdout as ``key=value`` lines. Exit codes: 0 ok, 1 bad
input, 2 infeasible problem (empty or degenerate cut), 3 internal error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import errors
from .cluster import multiway_cluster, sweep_cut
from .conductance import brute_force_min, phi_02
from .io import (
    ZACHARY_LABEL_NAMES,
    apply_fill,
    atomic_write,
    export_dot,
    format_assignment,
    format_complex,
    format_labels,
    format_sweep,
    load_zachary,
    parse_triples,
    read_complex,
    read_labels,
    synth_paperlike,
    triangles_on_edges,
    zachary_bridge_removals,
)
from .metrics import nmi
from .operators import METHODS, operator_bundle

DEFAULT_SEED = 42

INPUT_ERRORS = (
    errors.ParseError, errors.ClosureViolation, errors.DuplicateSimplex, errors.UnknownNodeId,
    errors.NotFilled, errors.NodeSetMismatch, OSError,
)
INFEASIBLE = (errors.Disconnected, errors.EmptyActiveSet, errors.ZeroVolume, errors.NoFeasibleCut,
              errors.TooLarge, errors.DegeneratePoints, errors.DimensionMismatch)
INTERNAL = (errors.NonIntegerEntry, errors.NoConvergence, AssertionError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors are input errors (exit 1), not argparse's 2
        raise UsageError(message)


def _emit(**kv) -> None:
    for k, v in kv.items():
        print(f"{k}={v}")


def _fmt_phi(phi) -> str:
    return f"{float(phi):.12g}"


def _parse_id_list(text: str) -> list[int]:
    try:
        ids = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise UsageError(f"malformed node list {text!r}") from None
    if not ids:
        raise UsageError("empty node list")
    return ids


def cmd_cluster(args) -> int:
    X = read_complex(args.input)
    if args.k == 2:
        part, prof = sweep_cut(X, args.method)
        excluded = X.n0 - len(prof.ordering)
        _emit(method=args.method, k=2, phi=_fmt_phi(prof.best_phi), phi_exact=prof.best_phi,
              lambda2=f"{prof.lambda2:.12g}", best_k=prof.best_k)
    else:
        if args.k < 1:
            raise UsageError("--k must be positive")
        part = multiway_cluster(X, args.method, args.k, args.seed, row_normalize=args.row_normalize)
        excluded = X.n0 - len(operator_bundle(X, args.method).active)
        _emit(method=args.method, k=args.k, seed=args.seed)
    _emit(excluded=excluded, clusters=part.k)
    if args.truth:
        truth, _ = read_labels(args.truth)
        _emit(nmi=f"{nmi(part, truth):.6f}")
    if args.output:
        atomic_write(args.output, format_assignment(part))
    return 0


def cmd_sweep(args) -> int:
    X = read_complex(args.input)
    part, prof = sweep_cut(X, args.method)
    _emit(method=args.method, rows=len(prof.phis), best_k=prof.best_k,
          phi=_fmt_phi(prof.best_phi), lambda2=f"{prof.lambda2:.12g}")
    if args.output:
        atomic_write(args.output, format_sweep(prof))
    return 0


def cmd_conductance(args) -> int:
    X = read_complex(args.input)
    if args.brute_force:
        S, phi = brute_force_min(X)
        _emit(set=",".join(map(str, S)), phi=_fmt_phi(phi), phi_exact=phi)
        return 0
    if args.set is None:
        raise UsageError("--set is required unless --brute-force is given")
    S = _parse_id_list(args.set)
    unknown = sorted(set(S) - set(X.nodes))
    if unknown:
        raise errors.UnknownNodeId(f"nodes not in complex: {unknown}")
    rep = phi_02(X, S)
    _emit(cut=rep.cut, volS=rep.vol_S, volSbar=rep.vol_Sbar, phi=_fmt_phi(rep.phi))
    return 0


def cmd_nmi(args) -> int:
    pred, _ = read_labels(args.pred)
    truth, _ = read_labels(args.truth)
    _emit(nmi=f"{nmi(pred, truth):.6f}")
    return 0


def cmd_fill(args) -> int:
    X = read_complex(args.edges)
    removals = []
    if args.remove:
        removals += parse_triples(Path(args.remove).read_text(encoding="utf-8"))
    if args.remove_edge:
        filled = apply_fill(X, args.mode)
        removals += triangles_on_edges(filled, [_parse_id_list(e) for e in args.remove_edge])
    Y = apply_fill(X, args.mode, sorted(set(removals)))
    atomic_write(args.output, format_complex(Y))
    _emit(nodes=Y.n0, edges=Y.n1, triangles=Y.n2, removed=len(set(removals)))
    return 0


def cmd_synth(args) -> int:
    X, truth = synth_paperlike(args.seed)
    atomic_write(args.output, format_complex(X))
    if args.labels:
        atomic_write(args.labels, format_labels(truth))
    _emit(nodes=X.n0, edges=X.n1, triangles=X.n2, seed=args.seed)
    return 0


def cmd_zachary(args) -> int:
    X, truth = load_zachary(zachary_bridge_removals() if args.fill == "bridge" else args.fill)
    atomic_write(args.output, format_complex(X))
    if args.labels:
        atomic_write(args.labels, format_labels(truth, ZACHARY_LABEL_NAMES))
    _emit(nodes=X.n0, edges=X.n1, triangles=X.n2, clusters=truth.k)
    return 0


def cmd_export_dot(args) -> int:
    X = read_complex(args.input)
    part, _ = read_labels(args.assignment)
    atomic_write(args.output, export_dot(X, part))
    _emit(nodes=X.n0, colors=part.k)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="scx", description="Clustering of simplicial complexes by filled-triangle conductance.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("cluster", help="2-way sweep cut (k=2) or multiway spectral k-means")
    c.add_argument("--input", required=True)
    c.add_argument("--method", choices=METHODS, default="simplicial")
    c.add_argument("--k", type=int, default=2)
    c.add_argument("--seed", type=int, default=DEFAULT_SEED, help="k-means seed (default 42)")
    c.add_argument("--output")
    c.add_argument("--truth", help="labels CSV; prints nmi= when given")
    c.add_argument("--row-normalize", action="store_true", help="normalize embedding rows before k-means")
    c.set_defaults(func=cmd_cluster)

    s = sub.add_parser("sweep", help="write the full sweep profile")
    s.add_argument("--input", required=True)
    s.add_argument("--method", choices=METHODS, default="simplicial")
    s.add_argument("--output")
    s.set_defaults(func=cmd_sweep)

    d = sub.add_parser("conductance", help="simplicial conductance of a node set")
    d.add_argument("--input", required=True)
    d.add_argument("--set", help='comma-separated node ids, e.g. "1,5,7"')
    d.add_argument("--brute-force", action="store_true", help="exhaustive optimum (<= 22 nodes; SCX_THREADS workers)")
    d.set_defaults(func=cmd_conductance)

    n = sub.add_parser("nmi", help="normalized mutual information of two labelings")
    n.add_argument("pred")
    n.add_argument("truth")
    n.set_defaults(func=cmd_nmi)

    f = sub.add_parser("fill", help="apply a fill policy to an edge list")
    f.add_argument("--edges", required=True, help="complex file; existing triangles are replaced")
    f.add_argument("--mode", choices=("all", "none"), default="all")
    f.add_argument("--remove", help="file of triangles to make hollow")
    f.add_argument("--remove-edge", action="append", metavar="U,V",
                   help="make hollow every filled triangle on this edge (repeatable)")
    f.add_argument("--output", required=True)
    f.set_defaults(func=cmd_fill)

    y = sub.add_parser("synth", help="write the small two-community example complex")
    y.add_argument("--seed", type=int, default=0, help="0 = canonical labeling; otherwise a seeded relabeling")
    y.add_argument("--output", required=True)
    y.add_argument("--labels")
    y.set_defaults(func=cmd_synth)

    z = sub.add_parser("zachary", help="write the embedded karate club complex and factions")
    z.add_argument("--fill", choices=("all", "none", "bridge"), default="all",
                   help="bridge = all filled except cliques on {9,31} and {9,34}")
    z.add_argument("--output", required=True)
    z.add_argument("--labels")
    z.set_defaults(func=cmd_zachary)

    x = sub.add_parser("export-dot", help="GraphViz rendering coloured by cluster")
    x.add_argument("--input", required=True)
    x.add_argument("--assignment", required=True)
    x.add_argument("--output", required=True)
    x.set_defaults(func=cmd_export_dot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except INPUT_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except INFEASIBLE as e:
        print(f"infeasible: {e}", file=sys.stderr)
        return 2
    except INTERNAL as e:
        print(f"internal error: {e}", file=sys.stderr)
        return 3
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
