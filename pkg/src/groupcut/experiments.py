"""Experiment drivers: volume-optimality reports over ranges of group orders,
discretization experiments on the circle, Stirling-type limit tables, and
emission of cutting planes from simplex tableau rows."""

from __future__ import annotations

import csv
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .criteria import volume_product
from .errors import (
    GridMismatch,
    NotInClassG,
    NotPrime,
    OutOfRange,
    RhsMismatch,
    ValidationFailure,
)
from .finite_functions import (
    FiniteGroupFunction,
    gom,
    is_minimal,
    rearrange_finite,
)
from .group_core import is_prime
from .polytope import minimize_volume
from .rationals import as_fraction, ln_fraction
from .torus import MODE_RHS, MODE_WRAP, PwlTorusFunction, integral_ln, is_minimal_pwl, is_nondecreasing

__all__ = [
    "ExperimentConfig",
    "TableauRow",
    "CutInequality",
    "emit_cut",
    "RiemannResult",
    "riemann_experiment",
    "StirlingRow",
    "stirling_table",
    "OptimizationRow",
    "Report",
    "optimize_and_report",
    "expected_min_product",
]

_B_POLICIES = ("all", "fixed", "canonical")


@dataclass(frozen=True)
class ExperimentConfig:
    """Settings for a volume-optimality run, loadable from key = value files.

    Non-prime entries in prime_list are tolerated; the run reports them as
    skipped instead of refusing the whole configuration.
    """

    prime_list: tuple[int, ...] = ()
    b_policy: str = "canonical"
    fixed_b: int | None = None
    tolerances: dict[str, float] = field(default_factory=dict)
    output_csv: str | None = None
    output_json: str | None = None
    workers: int = 1

    def __post_init__(self) -> None:
        if any(q < 2 for q in self.prime_list):
            raise ValueError("group orders must be at least 2")
        if self.b_policy not in _B_POLICIES:
            raise ValueError(f"b_policy must be one of {_B_POLICIES}")
        if self.b_policy == "fixed":
            if self.fixed_b is None or self.fixed_b < 1:
                raise ValueError("fixed b_policy needs fixed_b >= 1")
        if any(tol <= 0 for tol in self.tolerances.values()):
            raise ValueError("tolerances must be positive")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")

    def tolerance(self, name: str, default: float) -> float:
        return self.tolerances.get(name, default)

    @classmethod
    def from_file(cls, path) -> "ExperimentConfig":
        """Parse a flat `key = value` file; '#' starts a comment."""
        fields: dict = {"tolerances": {}}
        for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, _, value = (part.strip() for part in line.partition("="))
            if key == "prime_list":
                fields["prime_list"] = tuple(
                    int(tok) for tok in value.replace(",", " ").split()
                )
            elif key == "b_policy":
                fields["b_policy"] = value
            elif key == "fixed_b":
                fields["fixed_b"] = int(value)
            elif key.startswith("tolerance."):
                fields["tolerances"][key[len("tolerance.") :]] = float(value)
            elif key in ("output_csv", "output_json"):
                fields[key] = value
            elif key == "workers":
                fields["workers"] = int(value)
            else:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        return cls(**fields)


@dataclass(frozen=True)
class TableauRow:
    """One simplex tableau row: fractional parts of the rhs and the nonbasic
    columns, each tagged with a variable name."""

    rhs: Fraction
    columns: tuple[tuple[str, Fraction], ...]

    def __post_init__(self) -> None:
        rhs = as_fraction(self.rhs)
        if not 0 < rhs < 1:
            raise OutOfRange(f"row rhs must have fractional part in (0, 1), got {rhs}")
        cols = tuple((str(n), as_fraction(f)) for n, f in self.columns)
        if any(not 0 <= f < 1 for _n, f in cols):
            raise OutOfRange("column fractional parts must lie in [0, 1)")
        object.__setattr__(self, "rhs", rhs)
        object.__setattr__(self, "columns", cols)

    def to_dict(self) -> dict:
        return {
            "rhs": str(self.rhs),
            "columns": [{"name": n, "frac": str(f)} for n, f in self.columns],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TableauRow":
        columns = data["columns"]
        if not all(isinstance(col, dict) for col in columns):
            raise ValueError(
                "row columns must be objects like {'name': ..., 'frac': ...}"
            )
        return cls(
            rhs=as_fraction(data["rhs"]),
            columns=tuple((col["name"], as_fraction(col["frac"])) for col in columns),
        )


@dataclass(frozen=True)
class CutInequality:
    """sum coefficient_j * s_j >= 1 over the named nonbasic variables."""

    names: tuple[str, ...]
    coefficients: tuple[Fraction, ...]
    rhs: Fraction = Fraction(1)

    def to_dict(self) -> dict:
        return {
            "terms": [
                {"name": n, "coefficient": str(c)}
                for n, c in zip(self.names, self.coefficients)
            ],
            "sense": ">=",
            "rhs": str(self.rhs),
        }

    def __str__(self) -> str:
        lhs = " + ".join(
            f"{c} {n}" for n, c in zip(self.names, self.coefficients)
        )
        return f"{lhs or '0'} >= {self.rhs}"


def emit_cut(
    row: TableauRow, fn: FiniteGroupFunction | PwlTorusFunction
) -> CutInequality:
    """Evaluate a cut-generating function on a tableau row's fractional parts.

    The function's rhs must match the row's, and a finite-group function can
    only score rows whose fractional parts sit on its 1/q grid.
    """
    if isinstance(fn, FiniteGroupFunction):
        q = fn.q
        if row.rhs != Fraction(fn.b_residue, q):
            raise RhsMismatch(
                f"row rhs {row.rhs} but the function cuts rhs {Fraction(fn.b_residue, q)}"
            )
        coeffs = []
        for name, frac in row.columns:
            if (frac * q).denominator != 1:
                raise GridMismatch(
                    f"column {name!r} at {frac} is not a multiple of 1/{q}"
                )
            coeffs.append(fn(int(frac * q)))
    else:
        if fn.mode != MODE_RHS or fn.b != row.rhs:
            raise RhsMismatch(
                f"row rhs {row.rhs} but the function cuts rhs {fn.b}"
            )
        coeffs = [fn.value_at(frac) for _name, frac in row.columns]
    return CutInequality(
        names=tuple(n for n, _f in row.columns), coefficients=tuple(coeffs)
    )


def expected_min_product(q: int) -> Fraction:
    """(q-1)! / (q-1)^(q-1): the least value product over minimal functions."""
    return Fraction(math.factorial(q - 1), (q - 1) ** (q - 1))


@dataclass(frozen=True)
class RiemannResult:
    """Discretization of a nondecreasing minimal circle function to order q."""

    q: int
    product: Fraction  # product of the discretized values over nonzero residues
    product_bound: Fraction  # (q-1)! / (q-1)^(q-1)
    discrete_mean: float  # ln(product) / (q-1)
    lower_bound: float  # ln(product_bound) / (q-1)
    integral: float  # integral of ln over the circle, the q -> inf limit


def riemann_experiment(
    h: PwlTorusFunction, q: int, tolerance: float = 1e-12
) -> RiemannResult:
    """Sample h at x/(q-1), certify the sample is minimal on the order-q group
    with rhs q-1, and compare its log mean against the exact floor.

    Raises ValidationFailure if any certified identity fails: the discretized
    function must be minimal and its value product can be no smaller than
    (q-1)!/(q-1)^(q-1).
    """
    if not is_prime(q):
        raise NotPrime(f"{q} is not prime")
    if h.mode != MODE_WRAP:
        raise NotInClassG("expected wraparound symmetry (mode 'wrap')")
    if not is_nondecreasing(h):
        raise NotInClassG("expected a nondecreasing function")
    verdict = is_minimal_pwl(h)
    if not verdict.is_minimal:
        raise NotInClassG(f"not minimal: {verdict.violations[0]}")
    values = [
        h.value_at(Fraction(x, q - 1)) if x < q - 1 else Fraction(1)
        for x in range(q)
    ]
    sampled = FiniteGroupFunction.from_values(q=q, b=q - 1, values=values)
    sampled_verdict = is_minimal(sampled)
    if not sampled_verdict.is_minimal:
        raise ValidationFailure(
            f"discretized sample is not minimal: {sampled_verdict.violations[0]}"
        )
    product = volume_product(sampled)
    bound = expected_min_product(q)
    if product < bound:
        raise ValidationFailure(
            f"value product {product} fell below the exact floor {bound}"
        )
    discrete_mean = ln_fraction(product) / (q - 1)
    lower_bound = ln_fraction(bound) / (q - 1)
    if discrete_mean + tolerance < lower_bound:
        raise ValidationFailure(
            "log mean crossed the floor beyond tolerance: "
            f"{discrete_mean} < {lower_bound}"
        )
    return RiemannResult(
        q=q,
        product=product,
        product_bound=bound,
        discrete_mean=discrete_mean,
        lower_bound=lower_bound,
        integral=integral_ln(h),
    )


@dataclass(frozen=True)
class StirlingRow:
    q: int
    ratio: Fraction  # (q-1)! / (q-1)^(q-1)
    log_mean: float  # ln(ratio) / (q-1)
    gap_to_minus_one: float  # log_mean + 1, positive and shrinking like ln(q)/q


def stirling_table(primes: Sequence[int]) -> tuple[StirlingRow, ...]:
    """Exact floor ratios and their log means for ascending prime orders."""
    qs = sorted(set(primes))
    for q in qs:
        if not is_prime(q):
            raise NotPrime(f"{q} is not prime")
    rows = []
    factorial = 1
    n = 1
    for q in qs:
        while n < q - 1:
            n += 1
            factorial *= n
        ratio = Fraction(factorial, (q - 1) ** (q - 1))
        log_mean = ln_fraction(ratio) / (q - 1)
        rows.append(
            StirlingRow(
                q=q, ratio=ratio, log_mean=log_mean, gap_to_minus_one=log_mean + 1.0
            )
        )
    return tuple(rows)


STATUS_OK = "OK"
STATUS_MISMATCH = "MISMATCH"
STATUS_SKIPPED = "SKIPPED_NOT_PRIME"
STATUS_EXPERIMENTAL = "EXPERIMENTAL"


@dataclass(frozen=True)
class OptimizationRow:
    q: int
    b: int | None
    status: str
    n_vertices: int | None = None
    min_product: Fraction | None = None
    argmin: FiniteGroupFunction | None = None
    unique: bool | None = None
    wall_time_ms: float = 0.0

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "b": self.b,
            "status": self.status,
            "n_vertices": self.n_vertices,
            "min_product": None if self.min_product is None else str(self.min_product),
            "argmin": None
            if self.argmin is None
            else [str(v) for v in self.argmin.values],
            "unique": self.unique,
            "wall_time_ms": self.wall_time_ms,
        }


@dataclass(frozen=True)
class Report:
    rows: tuple[OptimizationRow, ...]
    ok: bool  # True when every computed row matched the predicted optimum

    def to_dict(self) -> dict:
        return {"ok": self.ok, "rows": [row.to_dict() for row in self.rows]}


def _optimize_single(
    q: int, b: int, force: bool, max_order: int
) -> OptimizationRow:
    started = time.perf_counter()
    result = minimize_volume(q, b, max_order=max_order, force=force)
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    if result.experimental:
        status = STATUS_EXPERIMENTAL
    else:
        matches = (
            result.value == expected_min_product(q)
            and result.unique
            and result.argmin is not None
            and rearrange_finite(result.argmin) == gom(q, q - 1)
        )
        status = STATUS_OK if matches else STATUS_MISMATCH
    return OptimizationRow(
        q=q,
        b=b,
        status=status,
        n_vertices=result.n_vertices,
        min_product=result.value,
        argmin=result.argmin,
        unique=result.unique,
        wall_time_ms=elapsed_ms,
    )


def _tasks_for(config: ExperimentConfig) -> tuple[list[tuple[int, int]], list[int]]:
    tasks: list[tuple[int, int]] = []
    skipped: list[int] = []
    for q in sorted(set(config.prime_list)):
        if not is_prime(q):
            skipped.append(q)
            continue
        if config.b_policy == "all":
            bs = range(1, q)
        elif config.b_policy == "fixed":
            if not 1 <= config.fixed_b < q:
                raise OutOfRange(f"fixed_b={config.fixed_b} is outside 1..{q - 1}")
            bs = (config.fixed_b,)
        else:
            bs = (q - 1,)
        tasks.extend((q, b) for b in bs)
    return tasks, skipped


def optimize_and_report(
    config: ExperimentConfig, *, force: bool = False, max_order: int = 31
) -> Report:
    """Enumerate vertices for every configured (q, b), minimize the value
    product, and check each optimum against the predicted floor and shape.

    Non-prime orders are reported as skipped rather than computed, unless
    force is set, in which case they come back marked experimental and do not
    count against the report's ok flag.
    """
    tasks, skipped = _tasks_for(config)
    if force:
        for q in skipped:
            tasks.extend((q, b) for b in _forced_bs(config, q))
        skipped = []
    rows = [OptimizationRow(q=q, b=None, status=STATUS_SKIPPED) for q in skipped]
    if config.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            computed = list(
                pool.map(
                    _optimize_single,
                    [q for q, _b in tasks],
                    [b for _q, b in tasks],
                    [force] * len(tasks),
                    [max_order] * len(tasks),
                )
            )
    else:
        computed = [_optimize_single(q, b, force, max_order) for q, b in tasks]
    rows.extend(computed)
    rows.sort(key=lambda row: (row.q, row.b if row.b is not None else 0))
    ok = all(row.status != STATUS_MISMATCH for row in rows)
    report = Report(rows=tuple(rows), ok=ok)
    if config.output_csv:
        write_report_csv(report, config.output_csv)
    if config.output_json:
        Path(config.output_json).write_text(json.dumps(report.to_dict(), indent=2))
    return report


def _forced_bs(config: ExperimentConfig, q: int) -> tuple[int, ...]:
    if config.b_policy == "all":
        return tuple(range(1, q))
    if config.b_policy == "fixed":
        if not 1 <= config.fixed_b < q:
            raise OutOfRange(f"fixed_b={config.fixed_b} is outside 1..{q - 1}")
        return (config.fixed_b,)
    return (q - 1,)


def write_report_csv(report: Report, path) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            ["q", "b", "status", "n_vertices", "min_product", "argmin", "unique", "wall_time_ms"]
        )
        for row in report.rows:
            writer.writerow(
                [
                    row.q,
                    "" if row.b is None else row.b,
                    row.status,
                    "" if row.n_vertices is None else row.n_vertices,
                    "" if row.min_product is None else str(row.min_product),
                    ""
                    if row.argmin is None
                    else " ".join(str(v) for v in row.argmin.values),
                    "" if row.unique is None else str(row.unique).lower(),
                    f"{row.wall_time_ms:.3f}",
                ]
            )
