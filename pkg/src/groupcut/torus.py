"""Piecewise-linear functions on the circle [0,1): construction, minimality
certification, rearrangement, and closed-form integrals.

A function is stored as breakpoints with one affine piece per half-open
interval and explicit point values at breakpoints, so jump discontinuities
are first-class: every check that cares about them works with one-sided
limits as well as point values.
"""

from __future__ import annotations

import bisect
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    NotMinimal,
    NotNondecreasing,
    OutOfRange,
    ZeroCoordinate,
)
from .finite_functions import FiniteGroupFunction, MinimalityVerdict, Violation
from .rationals import as_fraction, ln_fraction, nth_root_float

__all__ = [
    "PwlTorusFunction",
    "SublevelProfile",
    "LayerCakeReport",
    "MODE_RHS",
    "MODE_WRAP",
    "gmi",
    "gmi_n",
    "scaled_gmi",
    "identity_fn",
    "md2_torus",
    "from_finite_function",
    "is_nondecreasing",
    "subadditivity_slack",
    "is_minimal_pwl",
    "sublevel_measure",
    "sublevel_set",
    "sublevel_profile",
    "rearrange_torus",
    "right_limit_fn",
    "tilde_fn",
    "integral_ln",
    "layer_cake_check",
    "lp_power_torus",
    "lp_norm_torus",
    "interval_sumset",
    "union_measure",
]

MODE_RHS = "rhs"  # symmetry partner of x is (b - x) mod 1
MODE_WRAP = "wrap"  # symmetry partner of x is (1 - x) mod 1, origin exempt

Piece = tuple[Fraction, Fraction]  # slope, intercept: value = slope*x + intercept


@dataclass(frozen=True)
class PwlTorusFunction:
    breakpoints: tuple[Fraction, ...]  # 0 = x_0 < x_1 < ... < 1
    pieces: tuple[Piece, ...]  # piece i lives on [x_i, x_{i+1}), last wraps to 1
    point_values: tuple[Fraction, ...] | None = None  # default: right limits
    b: Fraction | None = None  # rhs for MODE_RHS symmetry
    mode: str = MODE_RHS
    label: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        bps = tuple(as_fraction(x) for x in self.breakpoints)
        pieces = tuple((as_fraction(s), as_fraction(t)) for s, t in self.pieces)
        if not bps or bps[0] != 0:
            raise ValueError("breakpoints must start at 0")
        if any(not 0 <= x < 1 for x in bps):
            raise ValueError("breakpoints must lie in [0, 1)")
        if any(u >= v for u, v in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if len(pieces) != len(bps):
            raise ValueError(
                f"need one piece per breakpoint: {len(pieces)} != {len(bps)}"
            )
        if self.mode not in (MODE_RHS, MODE_WRAP):
            raise ValueError(f"unknown symmetry mode {self.mode!r}")
        if self.mode == MODE_RHS:
            if self.b is None:
                raise ValueError("rhs-symmetric functions need b")
            b = as_fraction(self.b)
            if not 0 < b < 1:
                raise ValueError(f"b must lie in (0, 1), got {b}")
            object.__setattr__(self, "b", b)
        else:
            object.__setattr__(self, "b", None)
        if self.point_values is None:
            pvs = tuple(s * x + t for x, (s, t) in zip(bps, pieces))
        else:
            pvs = tuple(as_fraction(v) for v in self.point_values)
            if len(pvs) != len(bps):
                raise ValueError("need one point value per breakpoint")
        # canonical form: drop breakpoints where the piece continues unchanged
        keep = [0]
        for i in range(1, len(bps)):
            s, t = pieces[i]
            if pieces[i - 1] == pieces[i] and pvs[i] == s * bps[i] + t:
                continue
            keep.append(i)
        object.__setattr__(self, "breakpoints", tuple(bps[i] for i in keep))
        object.__setattr__(self, "pieces", tuple(pieces[i] for i in keep))
        object.__setattr__(self, "point_values", tuple(pvs[i] for i in keep))

    def _piece_index(self, x: Fraction) -> int:
        return bisect.bisect_right(self.breakpoints, x) - 1

    def piece_domain(self, i: int) -> tuple[Fraction, Fraction]:
        hi = self.breakpoints[i + 1] if i + 1 < len(self.breakpoints) else Fraction(1)
        return self.breakpoints[i], hi

    def value_at(self, x) -> Fraction:
        x = as_fraction(x) % 1
        i = self._piece_index(x)
        if self.breakpoints[i] == x:
            return self.point_values[i]
        s, t = self.pieces[i]
        return s * x + t

    def right_limit_at(self, x) -> Fraction:
        x = as_fraction(x) % 1
        s, t = self.pieces[self._piece_index(x)]
        return s * x + t

    def left_limit_at(self, x) -> Fraction:
        x = as_fraction(x) % 1
        if x == 0:
            s, t = self.pieces[-1]
            return s + t  # limit of the last piece at 1
        i = self._piece_index(x)
        if self.breakpoints[i] == x:
            i -= 1
        s, t = self.pieces[i]
        return s * x + t

    def limits(self) -> tuple[tuple[Fraction, Fraction, Fraction], ...]:
        """(left limit, value, right limit) at each breakpoint."""
        return tuple(
            (self.left_limit_at(x), self.point_values[i], self.right_limit_at(x))
            for i, x in enumerate(self.breakpoints)
        )

    def to_dict(self) -> dict:
        return {
            "b": None if self.b is None else str(self.b),
            "mode": self.mode,
            "breakpoints": [str(x) for x in self.breakpoints],
            "pieces": [
                {"slope": str(s), "intercept": str(t)} for s, t in self.pieces
            ],
            "limits": [
                {"left": str(l), "at": str(v), "right": str(r)}
                for l, v, r in self.limits()
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PwlTorusFunction":
        fn = cls(
            breakpoints=tuple(as_fraction(x) for x in data["breakpoints"]),
            pieces=tuple(
                (as_fraction(p["slope"]), as_fraction(p["intercept"]))
                for p in data["pieces"]
            ),
            point_values=tuple(as_fraction(e["at"]) for e in data["limits"]),
            b=None if data.get("b") is None else as_fraction(data["b"]),
            mode=data.get("mode", MODE_RHS),
        )
        for (l, _v, r), entry in zip(fn.limits(), data["limits"]):
            if as_fraction(entry["left"]) != l or as_fraction(entry["right"]) != r:
                raise ValueError("stored one-sided limits disagree with pieces")
        return fn

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "PwlTorusFunction":
        return cls.from_dict(json.loads(text))


def gmi(b) -> PwlTorusFunction:
    """The two-slope mixed-integer rounding profile with rhs b in (0, 1)."""
    b = as_fraction(b)
    if not 0 < b < 1:
        raise OutOfRange(f"b must lie in (0, 1), got {b}")
    return PwlTorusFunction(
        breakpoints=(Fraction(0), b),
        pieces=((1 / b, Fraction(0)), (-1 / (1 - b), 1 / (1 - b))),
        b=b,
        mode=MODE_RHS,
    )


def gmi_n(b_vector: Sequence, i: int) -> PwlTorusFunction:
    """Coordinate i (1-based) of the n-row profile: identical to gmi(b_i)."""
    bs = [as_fraction(x) for x in b_vector]
    if not 1 <= i <= len(bs):
        raise OutOfRange(f"coordinate {i} outside 1..{len(bs)}")
    bi = bs[i - 1]
    if bi == 0:
        raise ZeroCoordinate(f"coordinate {i} has b_i = 0; no profile there")
    if not 0 < bi < 1:
        raise OutOfRange(f"b_{i} must lie in [0, 1), got {bi}")
    fn = gmi(bi)
    return PwlTorusFunction(
        breakpoints=fn.breakpoints,
        pieces=fn.pieces,
        point_values=fn.point_values,
        b=fn.b,
        mode=fn.mode,
        label=f"gmi[{i}/{len(bs)}]",
    )


def scaled_gmi(b, k: int) -> PwlTorusFunction:
    """gmi(b) traversed k times around the circle: x -> gmi_b(k x mod 1)."""
    b = as_fraction(b)
    if not 0 < b < 1:
        raise OutOfRange(f"b must lie in (0, 1), got {b}")
    if k < 1:
        raise OutOfRange(f"k must be a positive integer, got {k}")
    breakpoints: list[Fraction] = []
    pieces: list[Piece] = []
    for j in range(k):
        breakpoints.append(Fraction(j, k))
        pieces.append((Fraction(k) / b, Fraction(-j) / b))
        breakpoints.append(Fraction(j, k) + b / k)
        pieces.append((-Fraction(k) / (1 - b), Fraction(1 + j) / (1 - b)))
    return PwlTorusFunction(
        breakpoints=tuple(breakpoints),
        pieces=tuple(pieces),
        b=b / k,
        mode=MODE_RHS,
    )


def identity_fn() -> PwlTorusFunction:
    """h(x) = x on [0, 1), symmetric in the wraparound sense."""
    return PwlTorusFunction(
        breakpoints=(Fraction(0),),
        pieces=((Fraction(1), Fraction(0)),),
        mode=MODE_WRAP,
    )


def md2_torus(b) -> PwlTorusFunction:
    """1/2 almost everywhere, 0 at the origin and 1 at b."""
    b = as_fraction(b)
    if not 0 < b < 1:
        raise OutOfRange(f"b must lie in (0, 1), got {b}")
    half = Fraction(1, 2)
    return PwlTorusFunction(
        breakpoints=(Fraction(0), b),
        pieces=((Fraction(0), half), (Fraction(0), half)),
        point_values=(Fraction(0), Fraction(1)),
        b=b,
        mode=MODE_RHS,
    )


def from_finite_function(fn: FiniteGroupFunction) -> PwlTorusFunction:
    """Interpolate node values at i/q linearly; minimality carries over exactly
    because the uniform grid is closed under addition mod 1."""
    q = fn.q
    vals = list(fn.values) + [fn.values[0]]
    breakpoints, pieces = [], []
    for i in range(q):
        slope = (vals[i + 1] - vals[i]) * q
        x = Fraction(i, q)
        breakpoints.append(x)
        pieces.append((slope, vals[i] - slope * x))
    return PwlTorusFunction(
        breakpoints=tuple(breakpoints),
        pieces=tuple(pieces),
        point_values=tuple(vals[:q]),
        b=Fraction(fn.b_residue, q),
        mode=MODE_RHS,
    )


def is_nondecreasing(fn: PwlTorusFunction) -> bool:
    """Nondecreasing on [0, 1) read linearly; no condition across the wrap."""
    if any(s < 0 for s, _t in fn.pieces):
        return False
    for i, x in enumerate(fn.breakpoints):
        left, value, right = fn.left_limit_at(x), fn.point_values[i], fn.right_limit_at(x)
        if i > 0 and not left <= value <= right:
            return False
        if i == 0 and value > right:
            return False
    return True


_SIDE_LEFT, _SIDE_VALUE, _SIDE_RIGHT = 0, 1, 2
# realizable one-sided approach patterns for (x, y, x+y) at a grid corner
_LIMIT_COMBOS = (
    (1, 1, 1),
    (1, 2, 2), (1, 0, 0), (2, 1, 2), (0, 1, 0),
    (2, 2, 2), (0, 0, 0),
    (2, 0, 2), (2, 0, 0), (2, 0, 1),
    (0, 2, 2), (0, 2, 0), (0, 2, 1),
)


def _corner_grid(fn: PwlTorusFunction) -> set[tuple[Fraction, Fraction]]:
    """Vertices of the cell complex on which pi(x) + pi(y) - pi(x+y) is affine:
    breakpoint pairs plus difference-aligned pairs."""
    bps = fn.breakpoints
    pts: set[tuple[Fraction, Fraction]] = set()
    for x in bps:
        for y in bps:
            pts.add((x, y))
            pts.add((x, (y - x) % 1))
    return pts


def _subadditivity_scan(
    fn: PwlTorusFunction,
) -> tuple[Fraction, tuple, list[tuple[tuple, Fraction]]]:
    """Minimum of the subadditivity slack over the whole torus square.

    The slack is affine on each cell cut out by the breakpoints in x, y and
    x+y, so its infimum over points *and* one-sided limits is attained at a
    grid corner under one of the realizable approach patterns.
    """
    triples: dict[Fraction, tuple[Fraction, Fraction, Fraction]] = {}

    def triple(x: Fraction) -> tuple[Fraction, Fraction, Fraction]:
        if x not in triples:
            triples[x] = (fn.left_limit_at(x), fn.value_at(x), fn.right_limit_at(x))
        return triples[x]

    best: Fraction | None = None
    witness: tuple = ()
    violations: list[tuple[tuple, Fraction]] = []
    for x0, y0 in sorted(_corner_grid(fn)):
        z0 = (x0 + y0) % 1
        tx, ty, tz = triple(x0), triple(y0), triple(z0)
        worst_here: Fraction | None = None
        for sx, sy, sz in _LIMIT_COMBOS:
            slack = tx[sx] + ty[sy] - tz[sz]
            if best is None or slack < best:
                best, witness = slack, (x0, y0, (sx, sy, sz))
            if slack < 0 and (worst_here is None or slack < worst_here):
                worst_here = slack
        if worst_here is not None:
            violations.append(((x0, y0), -worst_here))
    assert best is not None
    return best, witness, violations


def subadditivity_slack(fn: PwlTorusFunction) -> tuple[Fraction, tuple]:
    """Exact infimum of pi(x) + pi(y) - pi(x+y), with a witness corner."""
    best, witness, _violations = _subadditivity_scan(fn)
    return best, witness


def _symmetry_partner(fn: PwlTorusFunction, x: Fraction) -> Fraction:
    if fn.mode == MODE_RHS:
        return (fn.b - x) % 1
    return (-x) % 1


def _symmetry_scan(fn: PwlTorusFunction) -> list[tuple[tuple, Fraction]]:
    """Violations of pi(x) + pi(partner(x)) = 1 on the refined breakpoint grid
    plus two interior probes per refined cell (the sum is affine per cell)."""
    special = {Fraction(0)} | ({fn.b} if fn.mode == MODE_RHS else set())
    grid = set(fn.breakpoints) | special
    grid |= {_symmetry_partner(fn, x) for x in grid}
    refined = sorted(grid)
    violations: list[tuple[tuple, Fraction]] = []
    for r in refined:
        if fn.mode == MODE_WRAP and r == 0:
            continue  # the origin pairs with itself and is exempt
        gap = fn.value_at(r) + fn.value_at(_symmetry_partner(fn, r)) - 1
        if gap != 0:
            violations.append(((r,), abs(gap)))
    endpoints = refined + [Fraction(1)]
    for u, v in zip(endpoints, endpoints[1:]):
        for t in (u + (v - u) / 3, u + 2 * (v - u) / 3):
            gap = fn.value_at(t) + fn.value_at(_symmetry_partner(fn, t)) - 1
            if gap != 0:
                violations.append(((t,), abs(gap)))
    return violations


def is_minimal_pwl(fn: PwlTorusFunction) -> MinimalityVerdict:
    """Origin value, nonnegativity, subadditivity and symmetry, all exact.

    Witnesses are reported as breakpoint coordinates rather than residues.
    """
    violations: list[Violation] = []
    for i, x in enumerate(fn.breakpoints):
        for v in (fn.left_limit_at(x), fn.point_values[i], fn.right_limit_at(x)):
            if v < 0:
                violations.append(Violation("negativity", (i,), -v))
                break
    if fn.value_at(0) != 0:
        violations.append(Violation("origin", (0,), abs(fn.value_at(0))))
    _best, _witness, sub_violations = _subadditivity_scan(fn)
    for (x0, y0), amount in sub_violations:
        violations.append(Violation("subadditivity", (x0, y0), amount))
    for witness, amount in _symmetry_scan(fn):
        violations.append(Violation("symmetry", witness, amount))
    return MinimalityVerdict(is_minimal=not violations, violations=tuple(violations))


def sublevel_measure(fn: PwlTorusFunction, alpha) -> Fraction:
    """Exact Lebesgue measure of {x : pi(x) <= alpha}; point values carry none."""
    alpha = as_fraction(alpha)
    total = Fraction(0)
    for i, (s, t) in enumerate(fn.pieces):
        u, v = fn.piece_domain(i)
        if s == 0:
            if t <= alpha:
                total += v - u
        elif s > 0:
            hi = min(v, (alpha - t) / s)
            if hi > u:
                total += hi - u
        else:
            lo = max(u, (alpha - t) / s)
            if lo < v:
                total += v - lo
    return total


def sublevel_set(fn: PwlTorusFunction, alpha) -> tuple[tuple[Fraction, Fraction], ...]:
    """{pi <= alpha} realized as merged closed intervals in [0, 1].

    Piece contributions are taken with closed endpoints and breakpoints whose
    point value passes are added as degenerate intervals, so the realization
    can differ from the literal preimage on a null set.
    """
    alpha = as_fraction(alpha)
    intervals: list[tuple[Fraction, Fraction]] = []
    for i, (s, t) in enumerate(fn.pieces):
        u, v = fn.piece_domain(i)
        if s == 0:
            if t <= alpha:
                intervals.append((u, v))
        elif s > 0:
            hi = min(v, (alpha - t) / s)
            if hi >= u:
                intervals.append((u, hi))
        else:
            lo = max(u, (alpha - t) / s)
            if lo <= v:
                intervals.append((lo, v))
    for i, x in enumerate(fn.breakpoints):
        if fn.point_values[i] <= alpha:
            intervals.append((x, x))
    return _merge_intervals(intervals)


def _merge_intervals(
    intervals: Iterable[tuple[Fraction, Fraction]],
) -> tuple[tuple[Fraction, Fraction], ...]:
    merged: list[tuple[Fraction, Fraction]] = []
    for lo, hi in sorted(intervals):
        if merged and lo <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(hi, merged[-1][1]))
        else:
            merged.append((lo, hi))
    return tuple(merged)


def union_measure(intervals: Iterable[tuple[Fraction, Fraction]]) -> Fraction:
    return sum((hi - lo for lo, hi in _merge_intervals(intervals)), Fraction(0))


def interval_sumset(
    a: Iterable[tuple[Fraction, Fraction]],
    b: Iterable[tuple[Fraction, Fraction]],
) -> tuple[tuple[Fraction, Fraction], ...]:
    """Minkowski sum of two closed interval unions on the circle."""
    out: list[tuple[Fraction, Fraction]] = []
    b = list(b)
    for a_lo, a_hi in a:
        for b_lo, b_hi in b:
            lo, hi = a_lo + b_lo, a_hi + b_hi
            if hi - lo >= 1:
                return ((Fraction(0), Fraction(1)),)
            shift = lo - (lo % 1)
            lo, hi = lo - shift, hi - shift
            if hi <= 1:
                out.append((lo, hi))
            else:
                out.append((lo, Fraction(1)))
                out.append((Fraction(0), hi - 1))
    return _merge_intervals(out)


@dataclass(frozen=True)
class SublevelProfile:
    """alpha -> measure{pi <= alpha}: nondecreasing, right continuous, piecewise
    affine in alpha with jumps exactly at the values of constant pieces."""

    alphas: tuple[Fraction, ...]  # critical levels, strictly increasing, from 0
    pieces: tuple[Piece, ...]  # piece i on [alphas[i], alphas[i+1]); 1 beyond

    @property
    def alpha_max(self) -> Fraction:
        return self.alphas[-1]

    def measure_at(self, alpha) -> Fraction:
        alpha = as_fraction(alpha)
        if alpha < 0:
            return Fraction(0)
        if alpha >= self.alphas[-1]:
            return Fraction(1)
        i = bisect.bisect_right(self.alphas, alpha) - 1
        s, t = self.pieces[i]
        return s * alpha + t


def _assert_nonnegative(fn: PwlTorusFunction) -> None:
    for i, x in enumerate(fn.breakpoints):
        if (
            fn.point_values[i] < 0
            or fn.left_limit_at(x) < 0
            or fn.right_limit_at(x) < 0
        ):
            raise ValueError(f"function is negative near breakpoint {x}")


def sublevel_profile(fn: PwlTorusFunction) -> SublevelProfile:
    """Exact sublevel-measure profile of a nonnegative function."""
    _assert_nonnegative(fn)
    levels = {Fraction(0)}
    for i, (s, t) in enumerate(fn.pieces):
        u, v = fn.piece_domain(i)
        levels.add(s * u + t)
        levels.add(s * v + t)
    alphas = sorted(levels)
    pieces: list[Piece] = []
    for a_lo, a_hi in zip(alphas, alphas[1:]):
        t1 = a_lo + (a_hi - a_lo) / 3
        t2 = a_lo + 2 * (a_hi - a_lo) / 3
        m1 = sublevel_measure(fn, t1)
        m2 = sublevel_measure(fn, t2)
        slope = (m2 - m1) / (t2 - t1)
        intercept = m1 - slope * t1
        assert slope * a_lo + intercept == sublevel_measure(fn, a_lo)
        pieces.append((slope, intercept))
    assert sublevel_measure(fn, alphas[-1]) == 1
    return SublevelProfile(alphas=tuple(alphas), pieces=tuple(pieces))


def rearrange_torus(fn: PwlTorusFunction) -> PwlTorusFunction:
    """Nondecreasing equimeasurable rearrangement: the generalized inverse of
    the sublevel profile.  Left continuous away from 0; value 0 at the origin.
    """
    profile = sublevel_profile(fn)
    # sweep the profile in alpha, emitting a segment of the inverse whenever
    # the measure advances: affine stretches invert to affine pieces, jumps
    # invert to constants, plateaus invert to jumps (no segment)
    segments: list[tuple[Fraction, Fraction, Fraction, Fraction]] = []
    x_cur = profile.measure_at(0)
    if x_cur > 0:
        segments.append((Fraction(0), x_cur, Fraction(0), Fraction(0)))
    bounds = list(zip(profile.alphas, profile.alphas[1:]))
    for (a_lo, a_hi), (s, t) in zip(bounds, profile.pieces):
        left_val = s * a_lo + t
        assert left_val >= x_cur
        if left_val > x_cur:
            segments.append((x_cur, left_val, a_lo, Fraction(0)))
            x_cur = left_val
        if s > 0:
            right_lim = s * a_hi + t
            segments.append((x_cur, right_lim, a_lo, 1 / s))
            x_cur = right_lim
    if x_cur < 1:
        segments.append((x_cur, Fraction(1), profile.alpha_max, Fraction(0)))

    breakpoints: list[Fraction] = []
    pieces: list[Piece] = []
    point_values: list[Fraction] = []
    for x0, _x1, alpha0, slope in segments:
        breakpoints.append(x0)
        pieces.append((slope, alpha0 - slope * x0))
        if not point_values:
            point_values.append(Fraction(0))
        else:
            prev_s, prev_t = pieces[-2]
            point_values.append(prev_s * x0 + prev_t)  # left continuity
    return PwlTorusFunction(
        breakpoints=tuple(breakpoints),
        pieces=tuple(pieces),
        point_values=tuple(point_values),
        mode=MODE_WRAP,
    )


def right_limit_fn(fn: PwlTorusFunction) -> PwlTorusFunction:
    """Right-continuous version of a nondecreasing function; same pieces."""
    if not is_nondecreasing(fn):
        raise NotNondecreasing("right-continuous version needs a nondecreasing input")
    point_values = tuple(
        s * x + t for x, (s, t) in zip(fn.breakpoints, fn.pieces)
    )
    return PwlTorusFunction(
        breakpoints=fn.breakpoints,
        pieces=fn.pieces,
        point_values=point_values,
        b=fn.b,
        mode=fn.mode,
    )


def tilde_fn(fn: PwlTorusFunction) -> PwlTorusFunction:
    """Average the rearrangement with its right-continuous version.

    The result is nondecreasing, subadditive and wrap-symmetric away from the
    origin, and equals the rearrangement off the breakpoint set.  The origin
    keeps value 0 (a null-set normalization that preserves all integrals).
    """
    verdict = is_minimal_pwl(fn)
    if not verdict.is_minimal:
        raise NotMinimal(f"not minimal: {verdict.violations[0]}")
    h = rearrange_torus(fn)
    point_values = [Fraction(0)]
    for i in range(1, len(h.breakpoints)):
        x = h.breakpoints[i]
        s, t = h.pieces[i]
        point_values.append((h.point_values[i] + (s * x + t)) / 2)
    return PwlTorusFunction(
        breakpoints=h.breakpoints,
        pieces=h.pieces,
        point_values=tuple(point_values),
        mode=MODE_WRAP,
    )


def _ln_antiderivative_term(w: Fraction) -> float:
    """w * (ln w - 1), continued by its limit 0 at w = 0."""
    if w == 0:
        return 0.0
    return float(w) * (ln_fraction(w) - 1.0)


def integral_ln(fn: PwlTorusFunction) -> float:
    """Closed-form integral of ln(pi) over [0, 1); -inf if pi vanishes on a set
    of positive measure.  Endpoint zeros integrate properly (t ln t -> 0)."""
    _assert_nonnegative(fn)
    total = 0.0
    for i, (s, t) in enumerate(fn.pieces):
        u, v = fn.piece_domain(i)
        if s == 0:
            if t == 0:
                return float("-inf")
            total += float(v - u) * ln_fraction(t)
        else:
            total += (
                _ln_antiderivative_term(s * v + t)
                - _ln_antiderivative_term(s * u + t)
            ) / float(s)
    return total


@dataclass(frozen=True)
class LayerCakeReport:
    lhs: float  # integral of -ln(pi)
    rhs: float  # integral of measure{pi <= s} / s over (0, 1]
    gap: float


def layer_cake_check(fn: PwlTorusFunction) -> LayerCakeReport:
    """Compare -integral ln(pi) with the layer-cake form over the exact
    sublevel profile; the 1/s singularity integrates in closed form because
    the profile is piecewise affine with zero measure at level 0."""
    for i, x in enumerate(fn.breakpoints):
        if max(fn.point_values[i], fn.left_limit_at(x), fn.right_limit_at(x)) > 1:
            raise ValueError("layer-cake comparison expects values within [0, 1]")
    lhs = -integral_ln(fn)
    profile = sublevel_profile(fn)
    rhs = 0.0
    diverged = False
    for (a_lo, a_hi), (s, t) in zip(
        zip(profile.alphas, profile.alphas[1:]), profile.pieces
    ):
        if a_lo == 0:
            if t != 0:
                diverged = True
                break
            rhs += float(s * a_hi)
        else:
            rhs += float(s) * float(a_hi - a_lo)
            if t != 0:
                rhs += float(t) * (ln_fraction(a_hi) - ln_fraction(a_lo))
    if diverged or profile.measure_at(0) > 0:
        rhs = float("inf")
    elif profile.alpha_max < 1:
        rhs += -ln_fraction(profile.alpha_max)
    if lhs == float("inf") and rhs == float("inf"):
        return LayerCakeReport(lhs=lhs, rhs=rhs, gap=0.0)
    return LayerCakeReport(lhs=lhs, rhs=rhs, gap=abs(lhs - rhs))


def lp_power_torus(fn: PwlTorusFunction, p: int) -> Fraction:
    """Exact integral of pi^p over [0, 1) for a nonnegative function."""
    if p < 1:
        raise ValueError(f"p must be a positive integer, got {p}")
    _assert_nonnegative(fn)
    total = Fraction(0)
    for i, (s, t) in enumerate(fn.pieces):
        u, v = fn.piece_domain(i)
        if s == 0:
            total += (v - u) * t**p
        else:
            total += ((s * v + t) ** (p + 1) - (s * u + t) ** (p + 1)) / (
                s * (p + 1)
            )
    return total


def lp_norm_torus(fn: PwlTorusFunction, p: int) -> float:
    """(integral of pi^p)^(1/p) as a float, correctly rounded within 1 ulp."""
    return nth_root_float(lp_power_torus(fn, p), p)
