"""Command line interface.

Subcommands: check (minimality verdicts), rearrange (finite or circle),
optimize (vertex enumeration + volume minimization over configured orders),
integrate (log integral, L_p norms, layer-cake comparison), experiment
(riemann, stirling), cutgen (tableau row to cutting plane).

Exit codes: 0 success, 2 a certified identity failed its check, 3 bad input.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from .criteria import score_function
from .errors import GroupCutError, ValidationFailure
from .experiments import (
    ExperimentConfig,
    TableauRow,
    emit_cut,
    optimize_and_report,
    riemann_experiment,
    stirling_table,
)
from .finite_functions import FiniteGroupFunction, is_minimal, rearrange_finite
from .polytope import gomory_decomposition
from .rationals import as_fraction
from .torus import (
    PwlTorusFunction,
    gmi,
    identity_fn,
    integral_ln,
    is_minimal_pwl,
    layer_cake_check,
    lp_norm_torus,
    rearrange_torus,
    sublevel_profile,
    tilde_fn,
)

__all__ = ["main"]


def _read_json(path: str) -> dict:
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as handle:
        return json.load(handle)


def _function_from_dict(data: dict) -> FiniteGroupFunction | PwlTorusFunction:
    if "values" in data:
        return FiniteGroupFunction.from_dict(data)
    if "pieces" in data:
        return PwlTorusFunction.from_dict(data)
    raise ValueError("expected a 'values' (finite) or 'pieces' (circle) object")


def _emit(payload: dict, args) -> None:
    if getattr(args, "format", "json") == "json":
        print(json.dumps(payload, indent=2))
    else:
        for key, value in payload.items():
            print(f"{key}: {value}")


def _verdict_dict(verdict) -> dict:
    return {
        "is_minimal": verdict.is_minimal,
        "violations": [
            {
                "kind": v.kind,
                "witness": [str(w) for w in v.witness],
                "amount": str(v.amount),
            }
            for v in verdict.violations
        ],
    }


def _cmd_check(args) -> int:
    fn = _function_from_dict(_read_json(args.path))
    if isinstance(fn, FiniteGroupFunction):
        verdict = is_minimal(fn, b=args.b)
    else:
        verdict = is_minimal_pwl(fn)
    _emit(_verdict_dict(verdict), args)
    return 0


def _cmd_rearrange(args) -> int:
    fn = _function_from_dict(_read_json(args.path))
    if isinstance(fn, FiniteGroupFunction):
        if args.tilde:
            raise ValueError("--tilde applies to circle functions only")
        out = rearrange_finite(fn)
    else:
        out = tilde_fn(fn) if args.tilde else rearrange_torus(fn)
    text = json.dumps(out.to_dict(), indent=2)
    if args.output:
        with open(args.output, "w") as handle:
            handle.write(text + "\n")
    else:
        print(text)
    return 0


def _config_from_args(args) -> ExperimentConfig:
    if args.config:
        base = ExperimentConfig.from_file(args.config)
    else:
        base = ExperimentConfig()
    overrides: dict = {}
    if args.primes is not None:
        overrides["prime_list"] = tuple(args.primes)
    if args.b_policy is not None:
        overrides["b_policy"] = args.b_policy
    if args.fixed_b is not None:
        overrides["fixed_b"] = args.fixed_b
    if args.output_csv is not None:
        overrides["output_csv"] = args.output_csv
    if args.output_json is not None:
        overrides["output_json"] = args.output_json
    if args.workers is not None:
        overrides["workers"] = args.workers
    if not overrides:
        return base
    merged = {
        "prime_list": base.prime_list,
        "b_policy": base.b_policy,
        "fixed_b": base.fixed_b,
        "tolerances": base.tolerances,
        "output_csv": base.output_csv,
        "output_json": base.output_json,
        "workers": base.workers,
    }
    merged.update(overrides)
    return ExperimentConfig(**merged)


def _cmd_optimize(args) -> int:
    config = _config_from_args(args)
    report = optimize_and_report(config, force=args.force, max_order=args.cap)
    if args.format == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(["q", "b", "status", "n_vertices", "min_product", "unique"])
        for row in report.rows:
            writer.writerow(
                [
                    row.q,
                    "" if row.b is None else row.b,
                    row.status,
                    "" if row.n_vertices is None else row.n_vertices,
                    "" if row.min_product is None else str(row.min_product),
                    "" if row.unique is None else str(row.unique).lower(),
                ]
            )
    else:
        print(json.dumps(report.to_dict(), indent=2))
    return 0 if report.ok else 2


def _cmd_integrate(args) -> int:
    fn = _function_from_dict(_read_json(args.path))
    ps = tuple(args.p) if args.p else (1, 2, 3)
    if isinstance(fn, FiniteGroupFunction):
        payload = score_function(fn, ps=ps).to_dict()
    else:
        payload = {
            "integral_ln": integral_ln(fn),
            "lp_norms": {str(p): lp_norm_torus(fn, p) for p in ps},
        }
        if args.layer_cake:
            report = layer_cake_check(fn)
            payload["layer_cake"] = {
                "lhs": report.lhs,
                "rhs": report.rhs,
                "gap": report.gap,
            }
        if args.sublevel_csv:
            _write_sublevel_csv(fn, args.sublevel_csv)
            payload["sublevel_csv"] = args.sublevel_csv
    _emit(payload, args)
    return 0


def _write_sublevel_csv(fn: PwlTorusFunction, path: str) -> None:
    """Plot data: level alpha against measure{pi <= alpha}, exact strings."""
    profile = sublevel_profile(fn)
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["alpha", "measure"])
        samples = set(profile.alphas)
        samples.update(
            (lo + hi) / 2 for lo, hi in zip(profile.alphas, profile.alphas[1:])
        )
        for alpha in sorted(samples):
            writer.writerow([str(alpha), str(profile.measure_at(alpha))])


def _parse_h(spec_text: str) -> PwlTorusFunction:
    if spec_text == "identity":
        return identity_fn()
    if spec_text.startswith("gmi:"):
        b = as_fraction(spec_text[len("gmi:") :])
        return tilde_fn(gmi(b))
    if spec_text.startswith("file:"):
        return PwlTorusFunction.from_dict(_read_json(spec_text[len("file:") :]))
    raise ValueError(
        f"unknown profile {spec_text!r}: use identity, gmi:<b>, or file:<path>"
    )


def _cmd_experiment(args) -> int:
    if args.kind == "riemann":
        if args.q is None:
            raise ValueError("riemann needs --q")
        result = riemann_experiment(_parse_h(args.h), args.q, tolerance=args.tolerance)
        _emit(
            {
                "q": result.q,
                "discrete_mean": result.discrete_mean,
                "lower_bound": result.lower_bound,
                "integral": result.integral,
                "product": str(result.product),
                "product_bound": str(result.product_bound),
            },
            args,
        )
        return 0
    rows = stirling_table(args.primes or [])
    if args.output_csv:
        with open(args.output_csv, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["q", "ratio", "log_mean", "gap_to_minus_one"])
            for row in rows:
                writer.writerow(
                    [row.q, str(row.ratio), row.log_mean, row.gap_to_minus_one]
                )
    _emit(
        {
            "rows": [
                {
                    "q": row.q,
                    "ratio": str(row.ratio),
                    "log_mean": row.log_mean,
                    "gap_to_minus_one": row.gap_to_minus_one,
                }
                for row in rows
            ]
        },
        args,
    )
    return 0


def _cmd_cutgen(args) -> int:
    row = TableauRow.from_dict(_read_json(args.row))
    fn = _function_from_dict(_read_json(args.function))
    cut = emit_cut(row, fn)
    if args.format == "text":
        print(str(cut))
    else:
        print(json.dumps(cut.to_dict(), indent=2))
    return 0


def _cmd_decompose(args) -> int:
    fn = FiniteGroupFunction.from_dict(_read_json(args.path))
    result = gomory_decomposition(fn)
    _emit(
        {
            "lambda": str(result.lam),
            "gamma": str(result.gamma),
            "pi_tilde": [str(v) for v in result.pi_tilde.values],
        },
        args,
    )
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="groupcut",
        description="Exact construction, certification, rearrangement and "
        "scoring of cut-generating functions on cyclic groups and the circle.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="certify minimality of a function JSON")
    p.add_argument("path", help="function JSON file, or - for stdin")
    p.add_argument("--b", type=int, default=None, help="override the rhs residue")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("rearrange", help="nondecreasing equimeasurable re-sorting")
    p.add_argument("path", help="function JSON file, or - for stdin")
    p.add_argument(
        "--tilde",
        action="store_true",
        help="average with the right-continuous version (circle only)",
    )
    p.add_argument("--output", "-o", default=None, help="write JSON here")
    p.set_defaults(func=_cmd_rearrange)

    p = sub.add_parser(
        "optimize", help="minimize the value product over all vertices per (q, b)"
    )
    p.add_argument("--primes", type=int, nargs="+", default=None)
    p.add_argument("--b-policy", choices=("all", "fixed", "canonical"), default=None)
    p.add_argument("--fixed-b", type=int, default=None)
    p.add_argument("--config", default=None, help="flat key = value settings file")
    p.add_argument(
        "--force",
        action="store_true",
        help="scan composite orders too, marking their rows experimental",
    )
    p.add_argument("--cap", type=int, default=31, help="largest allowed order")
    p.add_argument("--output-csv", default=None)
    p.add_argument("--output-json", default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=_cmd_optimize)

    p = sub.add_parser(
        "integrate", help="log integral, L_p norms, layer-cake comparison"
    )
    p.add_argument("path", help="function JSON file, or - for stdin")
    p.add_argument("--p", type=int, action="append", help="norm exponent, repeatable")
    p.add_argument(
        "--layer-cake",
        action="store_true",
        help="also compare against the sublevel-profile form (circle only)",
    )
    p.add_argument(
        "--sublevel-csv", default=None, help="write alpha vs measure plot data here"
    )
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=_cmd_integrate)

    p = sub.add_parser("experiment", help="limit experiments: riemann, stirling")
    p.add_argument("kind", choices=("riemann", "stirling"))
    p.add_argument("--q", type=int, default=None, help="group order (riemann)")
    p.add_argument(
        "--h",
        default="identity",
        help="profile to discretize: identity, gmi:<b>, or file:<path>",
    )
    p.add_argument("--primes", type=int, nargs="+", default=None)
    p.add_argument("--tolerance", type=float, default=1e-12)
    p.add_argument("--output-csv", default=None)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("cutgen", help="evaluate a function on a tableau row")
    p.add_argument("--row", required=True, help="tableau row JSON file, or -")
    p.add_argument("--function", required=True, help="function JSON file")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=_cmd_cutgen)

    p = sub.add_parser(
        "decompose", help="split a nondecreasing minimal function along gom"
    )
    p.add_argument("path", help="finite function JSON file, or - for stdin")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=_cmd_decompose)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationFailure as exc:
        print(f"validation failure: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"error: bad JSON input: {exc}", file=sys.stderr)
        return 3
    except KeyError as exc:
        print(f"error: missing key: {exc}", file=sys.stderr)
        return 3
    except (GroupCutError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
