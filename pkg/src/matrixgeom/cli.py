"""Command-line front end.

Exit codes: 0 success, 1 ``verify-geometry`` found a failing check,
2 usage or CSV parse error, 3 numerical contract error.
"""

import argparse
import sys
import warnings

import numpy as np

from . import csvio
from .align import procrustes_fit
from .decomp import nearest_orthogonal, nearest_singular_on_sphere, polar_decompose, truncate_rank
from .exceptions import CsvParseError, MatrixGeomError
from .linalg import svd
from .pca import COLS, ROWS, pca_fit, project
from .report import geometry_report
from .sphere import to_sphere


def _cmd_svd(args, out, err):
    f = svd(csvio.read_matrix(args.input))
    csvio.write_text(f"{args.out_prefix}_W.csv", csvio.format_matrix(f.W))
    csvio.write_text(f"{args.out_prefix}_D.csv", csvio.format_column(f.singular_values))
    csvio.write_text(f"{args.out_prefix}_V.csv", csvio.format_matrix(f.V))
    return 0


def _cmd_polar(args, out, err):
    pf = polar_decompose(csvio.read_matrix(args.input), side=args.side)
    csvio.write_text(f"{args.out_prefix}_U.csv", csvio.format_matrix(pf.U))
    csvio.write_text(f"{args.out_prefix}_P.csv", csvio.format_matrix(pf.P))
    if not pf.unique_orthogonal:
        err.write("warning: input is singular; the orthogonal factor is not unique\n")
    return 0


def _cmd_nearest_orthogonal(args, out, err):
    out.write(csvio.format_matrix(nearest_orthogonal(csvio.read_matrix(args.input), special=args.special)))
    return 0


def _cmd_truncate(args, out, err):
    result = truncate_rank(csvio.read_matrix(args.input), args.rank)
    out.write(csvio.format_matrix(result.matrix))
    if result.tie:
        err.write(
            f"warning: singular values {args.rank} and {args.rank + 1} tie; "
            "the nearest matrix of this rank is not unique\n"
        )
    return 0


def _cmd_nearest_singular(args, out, err):
    A = csvio.read_matrix(args.input)
    if args.sphere:
        B = nearest_singular_on_sphere(to_sphere(A))
    else:
        B = truncate_rank(A, min(A.shape) - 1).matrix
    out.write(csvio.format_matrix(B))
    return 0


def _cmd_procrustes(args, out, err):
    P = csvio.read_matrix(args.P)
    Q = csvio.read_matrix(args.Q)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        result = procrustes_fit(P, Q, special=args.special, normalize_scale=args.scale)
    for w in caught:
        err.write(f"warning: {w.message}\n")
    out.write(csvio.format_matrix(result.rotation))
    err.write(f"disparity: {csvio.format_float(result.disparity)}\n")
    err.write("centroid_p: " + ",".join(map(csvio.format_float, result.centroid_p)) + "\n")
    err.write("centroid_q: " + ",".join(map(csvio.format_float, result.centroid_q)) + "\n")
    if args.scale:
        err.write(f"scale_p: {csvio.format_float(result.scale_p)}\n")
        err.write(f"scale_q: {csvio.format_float(result.scale_q)}\n")
    if not result.unique:
        err.write("warning: cross-covariance is rank deficient; the optimal map is not unique\n")
    return 0


def _cmd_pca(args, out, err):
    data = csvio.read_matrix(args.input)
    orientation = COLS if args.cols_as_points else ROWS
    model = pca_fit(data, orientation, n_components=args.components)
    if model.n_components < args.components:
        err.write(f"warning: only {model.n_components} components above the rank tolerance\n")
    points = data if orientation == ROWS else data.T
    coeffs = np.array([project(model, x) for x in points]).reshape(len(points), model.n_components)
    p = args.out_prefix
    csvio.write_text(f"{p}_mean.csv", csvio.format_matrix(model.mean[None, :]))
    csvio.write_text(f"{p}_components.csv", csvio.format_matrix(model.components) if model.n_components else "")
    csvio.write_text(f"{p}_singular_values.csv", csvio.format_column(model.singular_values))
    csvio.write_text(f"{p}_coeffs.csv", csvio.format_matrix(coeffs) if model.n_components else "")
    return 0


def _cmd_verify_geometry(args, out, err):
    report = geometry_report(args.trials, args.seed, args.tol)
    out.write(report.to_table())
    if args.tsv:
        csvio.write_text(args.tsv, report.to_tsv())
    return 0 if report.all_passed else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="matrixgeom",
        description="SVD, polar decomposition, low-rank truncation, Procrustes and PCA on CSV matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("svd", help="singular value decomposition A = W D V^T")
    p.add_argument("input")
    p.add_argument("--out-prefix", required=True)
    p.set_defaults(func=_cmd_svd)

    p = sub.add_parser("polar", help="polar decomposition A = U P (right) or P U (left)")
    p.add_argument("input")
    p.add_argument("--side", choices=("right", "left"), default="right")
    p.add_argument("--out-prefix", required=True)
    p.set_defaults(func=_cmd_polar)

    p = sub.add_parser("nearest-orthogonal", help="nearest orthogonal matrix")
    p.add_argument("input")
    p.add_argument("--special", action="store_true", help="restrict to rotations (det = +1)")
    p.set_defaults(func=_cmd_nearest_orthogonal)

    p = sub.add_parser("truncate", help="nearest matrix of rank <= R")
    p.add_argument("input")
    p.add_argument("--rank", type=int, required=True)
    p.set_defaults(func=_cmd_truncate)

    p = sub.add_parser("nearest-singular", help="nearest matrix of rank n - 1")
    p.add_argument("input")
    p.add_argument("--sphere", action="store_true", help="work on the sphere of radius sqrt(n)")
    p.set_defaults(func=_cmd_nearest_singular)

    p = sub.add_parser("procrustes", help="orthogonal map taking point set P onto Q")
    p.add_argument("P")
    p.add_argument("Q")
    p.add_argument("--special", action="store_true", help="restrict to rotations (det = +1)")
    p.add_argument("--scale", action="store_true", help="normalise both sets to unit total squared norm")
    p.set_defaults(func=_cmd_procrustes)

    p = sub.add_parser("pca", help="principal components of a data matrix")
    p.add_argument("input")
    p.add_argument("--components", type=int, required=True)
    layout = p.add_mutually_exclusive_group()
    layout.add_argument("--rows-as-points", action="store_true", help="points are rows (default)")
    layout.add_argument("--cols-as-points", action="store_true", help="points are columns")
    p.add_argument("--out-prefix", required=True)
    p.set_defaults(func=_cmd_pca)

    p = sub.add_parser("verify-geometry", help="run the seeded geometry checks")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--tsv", metavar="PATH", help="also write check<TAB>pass|fail<TAB>worst lines here")
    p.set_defaults(func=_cmd_verify_geometry)
    return parser


def run(argv=None, out=None, err=None):
    """Run one subcommand and return its exit code."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args, out, err)
    except CsvParseError as exc:
        err.write(f"error: {exc}\n")
        return 2
    except MatrixGeomError as exc:
        err.write(f"error: {exc}\n")
        return 3


def main():
    sys.exit(run())
