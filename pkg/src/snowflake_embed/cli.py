"""Command-line front end: ingestion, dispatch, JSON reports, exit codes.

Exit codes are a stable contract: 0 the requested property holds, 2 it
fails (details in the report payload), 3 I/O or parse trouble, 4 usage
errors.  Runs are fully deterministic; every numeric verdict in a payload
carries the tolerance it was judged against, and reports round-trip
through JSON exactly (floats are serialized with full precision).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .embedding import RESIDUAL_LIMIT, embed, snowflake_embed
from .errors import (
    DimensionMismatch,
    DomainError,
    MetricValidationError,
    NotEmbeddable,
    NotStrict,
    SnowflakeError,
    TheoremViolation,
)
from .groups import IDENTIFICATION_TOL, OrthogonalAction, close_group
from .metric import euclidean_metric, snowflake, validate_metric
from .negative_type import check_negative_type, check_strict_negative_type
from .quotient import lift_orbits, qng_embed
from .schoenberg import (
    QuadratureSpec,
    schoenberg_constant,
    schoenberg_constant_quadrature,
    verify_power_identity,
)

EXIT_PASS = 0
EXIT_PROPERTY = 2
EXIT_IO = 3
EXIT_USAGE = 4

DEFAULT_TOL = 1e-9


class InputError(Exception):
    """A file exists but its contents cannot be interpreted."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; the contract reserves 2 for
    # mathematical failures, so remap to 4.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# ingestion


def _load_json(path: Path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_table(path: Path, key: str) -> np.ndarray:
    """A 2-d array from JSON ({key: [[...]]}) or CSV (one row per line)."""
    if path.suffix.lower() == ".json":
        obj = _load_json(path)
        try:
            data = obj[key]
        except (KeyError, TypeError):
            raise InputError(f"{path}: expected a JSON object with a {key!r} field")
    else:
        try:
            data = np.loadtxt(path, delimiter=",", ndmin=2)
        except ValueError as exc:
            raise InputError(f"{path}: {exc}")
        obj = {}
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{path}: {exc}")
    if arr.ndim != 2:
        raise InputError(f"{path}: expected a 2-d array, got shape {arr.shape}")
    declared = obj.get("n") if isinstance(obj, dict) else None
    if declared is not None and int(declared) != arr.shape[0]:
        raise InputError(f"{path}: declared n = {declared} but found {arr.shape[0]} rows")
    return arr


def _load_metric_matrix(path: Path) -> np.ndarray:
    """Distance matrix from a metric file, or from a point-cloud JSON
    ({"points": [[...]]}), in which case the Euclidean metric is derived."""
    if path.suffix.lower() == ".json":
        obj = _load_json(path)
        if isinstance(obj, dict) and "points" in obj and "distances" not in obj:
            try:
                cloud = np.asarray(obj["points"], dtype=float)
                return euclidean_metric(cloud).d
            except (TypeError, ValueError) as exc:
                raise InputError(f"{path}: {exc}")
    return _load_table(path, "distances")


def _load_action(path: Path) -> OrthogonalAction:
    if path.suffix.lower() != ".json":
        raise InputError(f"{path}: group files must be JSON")
    obj = _load_json(path)
    if not isinstance(obj, dict):
        raise InputError(f"{path}: expected a JSON object")
    tol = float(obj.get("tolerance", IDENTIFICATION_TOL))
    mats = obj.get("generators", obj.get("matrices"))
    if mats is None:
        raise InputError(f"{path}: expected a 'generators' or 'matrices' field")
    try:
        mats = [np.asarray(m, dtype=float) for m in mats]
    except (TypeError, ValueError) as exc:
        raise InputError(f"{path}: {exc}")
    dim = obj.get("dim")
    if dim is not None and mats and mats[0].shape != (int(dim), int(dim)):
        raise InputError(f"{path}: declared dim = {dim} but matrices have shape {mats[0].shape}")
    return close_group(mats, tol=tol)


def _digest(path: Path) -> dict:
    return {
        "path": str(path),
        "sha256": hashlib.sha256(path.read_bytes()).hexdigest(),
    }


# ---------------------------------------------------------------------------
# report plumbing


def _jsonable(value):
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _error_payload(exc: Exception) -> dict:
    payload = {"error": type(exc).__name__, "message": str(exc)}
    payload.update({k: _jsonable(v) for k, v in vars(exc).items()})
    return payload


def _judged(value: float, tolerance: float) -> dict:
    return {"value": _jsonable(value), "tolerance": _jsonable(tolerance)}


def _emit(args, command: str, inputs: dict, outcome: bool, payload: dict,
          tolerances: dict, summary: list[str]) -> None:
    report = {
        "command": command,
        "inputs": inputs,
        "outcome": "pass" if outcome else "fail",
        "payload": _jsonable(payload),
        "tolerances": _jsonable(tolerances),
    }
    if getattr(args, "json", None):
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
        print(f"report: {args.json}")
    else:
        for line in summary:
            print(line)


def _write_points(path: str, body: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(_jsonable(body), fh, indent=2)
        fh.write("\n")


# ---------------------------------------------------------------------------
# commands


def _cmd_validate(args) -> int:
    path = Path(args.metric)
    inputs = {"metric": _digest(path)}
    matrix = _load_metric_matrix(path)
    try:
        space = validate_metric(matrix, tol=args.tol)
    except (MetricValidationError, DimensionMismatch) as exc:
        _emit(args, "validate", inputs, False,
              {"valid": False, "violation": _error_payload(exc)},
              {"triangle_tol": args.tol},
              [f"INVALID: {exc}"])
        return EXIT_PROPERTY
    _emit(args, "validate", inputs, True,
          {"valid": True, "n": space.n},
          {"triangle_tol": args.tol},
          [f"valid metric on {space.n} points"])
    return EXIT_PASS


def _cmd_negtype(args) -> int:
    path = Path(args.metric)
    inputs = {"metric": _digest(path)}
    matrix = _load_metric_matrix(path)
    tolerances = {"spectral_tol": args.tol, "triangle_tol": args.tol}
    payload = {"alpha": args.alpha, "strict": args.strict}

    try:
        X = validate_metric(matrix, tol=args.tol)
    except (MetricValidationError, DimensionMismatch) as exc:
        _emit(args, "negtype", inputs, False,
              {**payload, "violation": _error_payload(exc)}, tolerances,
              [f"FAIL: input is not a metric: {exc}"])
        return EXIT_PROPERTY

    try:
        if args.strict and args.alpha is not None:
            base = check_negative_type(X, tol=args.tol)
            report = check_strict_negative_type(X, args.alpha, tol=args.tol)
        else:
            Y = snowflake(X, args.alpha) if args.alpha is not None else X
            report = check_negative_type(Y, tol=args.tol)
    except NotStrict as exc:
        payload.update({
            "failure": _error_payload(exc),
            "is_negative_type": base.is_negative_type,
            "is_strict": False,
            "min_eigenvalue": _judged(exc.min_eigenvalue, args.tol),
            "witness": _jsonable(exc.witness),
        })
        _emit(args, "negtype", inputs, False, payload, tolerances, [f"FAIL: {exc}"])
        return EXIT_PROPERTY
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    ok = report.is_strict if args.strict else report.is_negative_type
    payload.update({
        "is_negative_type": report.is_negative_type,
        "is_strict": report.is_strict,
        "embeddable": report.embeddable,
        "min_eigenvalue": _judged(report.min_eigenvalue, args.tol),
        "witness": _jsonable(report.witness),
    })
    verdict = "holds" if ok else "FAILS"
    label = "strict negative type" if args.strict else "negative type"
    _emit(args, "negtype", inputs, ok, payload, tolerances,
          [f"{label} {verdict} (min eigenvalue {report.min_eigenvalue:.6g})"])
    return EXIT_PASS if ok else EXIT_PROPERTY


def _cmd_embed(args) -> int:
    path = Path(args.metric)
    inputs = {"metric": _digest(path)}
    matrix = _load_metric_matrix(path)
    tolerances = {
        "spectral_tol": args.tol,
        "triangle_tol": args.tol,
        "residual_limit": RESIDUAL_LIMIT,
    }
    if args.alpha is not None and not 0.0 <= args.alpha <= 1.0:
        print(f"error: --alpha must lie in [0, 1], got {args.alpha}", file=sys.stderr)
        return EXIT_USAGE

    try:
        X = validate_metric(matrix, tol=args.tol)
    except (MetricValidationError, DimensionMismatch) as exc:
        _emit(args, "embed", inputs, False,
              {"violation": _error_payload(exc)}, tolerances,
              [f"FAIL: input is not a metric: {exc}"])
        return EXIT_PROPERTY

    theorem_applies = args.alpha is not None and 0.0 < args.alpha < 1.0
    payload = {"n": X.n, "alpha": args.alpha}
    try:
        if theorem_applies:
            result = snowflake_embed(X, args.alpha, tol=args.tol)
        else:
            Y = snowflake(X, args.alpha) if args.alpha is not None else X
            result = embed(Y, tol=args.tol)
    except (NotEmbeddable, TheoremViolation) as exc:
        payload["failure"] = _error_payload(exc)
        _emit(args, "embed", inputs, False, payload, tolerances, [f"FAIL: {exc}"])
        return EXIT_PROPERTY

    full_rank = result.rank == X.n - 1
    payload.update({
        "rank": result.rank,
        "full_rank": full_rank,
        "eigenvalues": _jsonable(result.eigenvalues),
        "residual": _judged(result.residual, RESIDUAL_LIMIT),
    })
    summary = [f"embedded {X.n} points with rank {result.rank}, residual {result.residual:.3g}"]
    if not full_rank and not theorem_applies:
        payload["note"] = (
            "rank below n-1; the full-rank guarantee applies only to "
            "snowflake exponents strictly between 0 and 1"
        )
        summary.append(payload["note"])
    if args.out:
        _write_points(args.out, {"points": result.coordinates})
        summary.append(f"coordinates: {args.out}")
    _emit(args, "embed", inputs, True, payload, tolerances, summary)
    return EXIT_PASS


def _cmd_schoenberg(args) -> int:
    a = args.alpha
    if not 0.0 < a < 1.0:
        print(
            f"error: --alpha must lie strictly between 0 and 1 "
            f"(it is the half-power a = alpha/2 of the verified identity), got {a}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    try:
        t_grid = [float(t) for t in args.t_grid.split(",") if t.strip()]
    except ValueError:
        print(f"error: cannot parse --t-grid {args.t_grid!r}", file=sys.stderr)
        return EXIT_USAGE
    if not t_grid or any(t <= 0.0 for t in t_grid):
        print("error: --t-grid entries must be positive", file=sys.stderr)
        return EXIT_USAGE

    spec = QuadratureSpec()
    tolerances = {
        "rel_err_limit": args.quad_tol,
        "quadrature_rel_tol": spec.rel_tol,
        "quadrature_abs_tol": spec.abs_tol,
        "max_subdivisions": spec.max_subdivisions,
    }
    c_closed = schoenberg_constant(a)
    c_quad = schoenberg_constant_quadrature(a, spec)
    c_rel = abs(c_closed - c_quad) / c_closed
    per_t = []
    worst = c_rel
    for t in t_grid:
        lhs, rhs, rel = verify_power_identity(t, a, spec)
        per_t.append({"t": t, "lhs": lhs, "rhs": rhs,
                      "rel_err": _judged(rel, args.quad_tol)})
        worst = max(worst, rel)
    ok = worst <= args.quad_tol
    payload = {
        "a": a,
        "power": 2.0 * a,
        "constant_closed_form": c_closed,
        "constant_quadrature": c_quad,
        "constant_rel_err": _judged(c_rel, args.quad_tol),
        "per_t": per_t,
    }
    summary = [
        f"c({a}) = {c_closed:.12g} (quadrature {c_quad:.12g}, rel err {c_rel:.3g})",
        f"power identity t**{2 * a:g} over {len(t_grid)} grid points: "
        f"worst rel err {worst:.3g} ({'pass' if ok else 'FAIL'})",
    ]
    _emit(args, "schoenberg", {}, ok, payload, tolerances, summary)
    return EXIT_PASS if ok else EXIT_PROPERTY


def _cmd_quotient_embed(args) -> int:
    group_path, reps_path = Path(args.group), Path(args.reps)
    inputs = {"group": _digest(group_path), "representatives": _digest(reps_path)}
    if not 0.0 <= args.alpha < 1.0:
        print(
            f"error: --alpha must lie in [0, 1) for the quotient pipeline "
            f"(the alpha = 1 endpoint is excluded), got {args.alpha}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    tolerances = {"tol": args.tol}
    payload = {"alpha": args.alpha}

    try:
        action = _load_action(group_path)
        reps = _load_table(reps_path, "representatives")
        config = lift_orbits(reps, action, tol=args.tol)
        result = qng_embed(config, args.alpha, tol=args.tol)
    except SnowflakeError as exc:
        payload["failure"] = _error_payload(exc)
        _emit(args, "quotient-embed", inputs, False, payload, tolerances,
              [f"FAIL: {exc}"])
        return EXIT_PROPERTY

    spectrum = result.spectrum
    zero_count = int(np.sum(spectrum <= args.tol * max(float(spectrum[0]), 0.0)))
    payload.update({
        "group_order": action.group.order,
        "n_orbits": config.n_orbits,
        "lifted_points": config.size,
        "max_abs_error": _judged(result.max_abs_error, args.tol * 2.0),
        "equivariance_defect": _judged(result.equivariance_defect, args.tol),
        "spectrum": _jsonable(spectrum),
        "zero_eigenvalues": zero_count,
        "report": [row.to_dict() for row in result.report],
        "scale_note": result.scale_note,
    })
    summary = [
        f"embedded {config.n_orbits} orbits (group order {action.group.order}, "
        f"{config.size} lifted points) at alpha = {args.alpha}",
        f"max abs distance error {result.max_abs_error:.3g}, "
        f"equivariance defect {result.equivariance_defect:.3g}, "
        f"{zero_count} zero eigenvalue(s)",
    ]
    if args.out:
        _write_points(args.out, {
            "points": result.points,
            "report": [row.to_dict() for row in result.report],
            "scale_note": result.scale_note,
        })
        summary.append(f"embedding: {args.out}")
    _emit(args, "quotient-embed", inputs, True, payload, tolerances, summary)
    return EXIT_PASS


# ---------------------------------------------------------------------------
# wiring


def _build_parser() -> _Parser:
    parser = _Parser(prog="snowflake-embed",
                     description="snowflake metrics: certificates and embeddings")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--tol", type=float, default=DEFAULT_TOL,
                       help="relative spectral/validation tolerance")
        p.add_argument("--json", metavar="FILE",
                       help="write the machine-readable report to FILE")

    metric_help = "distance matrix (JSON/CSV), or point-cloud JSON ({points: [[...]]})"

    p = sub.add_parser("validate", help="check the metric axioms")
    p.add_argument("metric", help=metric_help)
    common(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("negtype", help="negative-type certificate")
    p.add_argument("metric", help=metric_help)
    p.add_argument("--alpha", type=float, default=None,
                   help="test the snowflake d**alpha instead of d")
    p.add_argument("--strict", action="store_true",
                   help="require strict negative type")
    common(p)
    p.set_defaults(func=_cmd_negtype)

    p = sub.add_parser("embed", help="spectral isometric embedding")
    p.add_argument("metric", help=metric_help)
    p.add_argument("--alpha", type=float, default=None,
                   help="embed the snowflake d**alpha; rank n-1 is asserted for alpha in (0,1)")
    p.add_argument("--out", metavar="FILE", help="write embedded coordinates to FILE")
    common(p)
    p.set_defaults(func=_cmd_embed)

    p = sub.add_parser("schoenberg", help="verify the fractional-power integral identity")
    p.add_argument("--alpha", type=float, required=True,
                   help="half-power a in (0, 1); the identity verified is t**(2a)")
    p.add_argument("--t-grid", default="0.1,0.5,1,2,10",
                   help="comma-separated positive t values")
    p.add_argument("--quad-tol", type=float, default=1e-6,
                   help="largest acceptable relative error")
    p.add_argument("--json", metavar="FILE")
    p.set_defaults(func=_cmd_schoenberg)

    p = sub.add_parser("quotient-embed",
                       help="embed a snowflaked orbit space into the canonical quotient target")
    p.add_argument("group", help="group JSON ({generators|matrices, dim, tolerance})")
    p.add_argument("reps", help="orbit representatives (JSON or CSV)")
    p.add_argument("--alpha", type=float, default=0.5, help="snowflake exponent in [0, 1)")
    p.add_argument("--out", metavar="FILE", help="write the embedding to FILE")
    common(p)
    p.set_defaults(func=_cmd_quotient_embed)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, json.JSONDecodeError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SnowflakeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PROPERTY


if __name__ == "__main__":
    sys.exit(main())
