"""The polytope of minimal functions on Z/qZ: exact H-representation, vertex
enumeration by double description, and volume optimization over its vertices."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .criteria import volume_product
from .errors import (
    DimensionCap,
    NotMinimal,
    NotNondecreasing,
    NotPrime,
    ValidationFailure,
    ZeroElement,
)
from .finite_functions import FiniteGroupFunction, gom, is_minimal

__all__ = [
    "MinimalFunctionPolytope",
    "VertexSet",
    "MinimizeResult",
    "Decomposition",
    "build_polytope",
    "enumerate_vertices",
    "minimize_volume",
    "gomory_decomposition",
]

FullRow = tuple[tuple[Fraction, ...], Fraction]  # coeffs . pi (=|>=) rhs
IntRow = tuple[tuple[int, ...], int]  # coeffs . z >= rhs, integer, primitive


@dataclass(frozen=True)
class MinimalFunctionPolytope:
    """H-representation of {pi >= 0 : pi(0)=0, subadditive, symmetric about b}.

    The symmetry equations pin pi(0), pi(b) and any halfway point and pair the
    remaining coordinates, so the polytope is stored twice: the full system
    over R^q and an equivalent reduced inequality system over the free
    coordinates only.
    """

    q: int
    b: int
    equalities: tuple[FullRow, ...]
    inequalities: tuple[FullRow, ...]
    free: tuple[int, ...]  # residues serving as free coordinates, ascending
    expressions: tuple[tuple[Fraction, tuple[Fraction, ...]], ...]  # per residue
    box_rows: tuple[IntRow, ...]  # 0 <= z_j <= 1, two rows per free coordinate
    other_rows: tuple[IntRow, ...]  # remaining reduced rows, deduplicated

    @property
    def dimension(self) -> int:
        return len(self.free)

    def value_vector(self, z: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Full value vector for a point of the reduced coordinate space."""
        return tuple(
            const + sum((c * z[j] for j, c in enumerate(coeffs)), Fraction(0))
            for const, coeffs in self.expressions
        )


@dataclass(frozen=True)
class VertexSet:
    q: int
    b: int
    vertices: tuple[FiniteGroupFunction, ...]  # sorted by value vector
    method: str

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class MinimizeResult:
    q: int
    b: int
    value: Fraction
    argmin: FiniteGroupFunction
    unique: bool
    n_vertices: int
    experimental: bool  # True when q is composite and enumeration was forced


@dataclass(frozen=True)
class Decomposition:
    """Split pi = lam * gom(q, q-1) + (1 - lam) * pi_tilde with both parts minimal."""

    lam: Fraction
    gamma: Fraction  # minimum subadditivity slack over wrap-around pairs
    pi_tilde: FiniteGroupFunction


def _to_int_row(coeffs: Sequence[Fraction], rhs: Fraction) -> IntRow:
    """Scale a rational inequality row to primitive integers (positive scale)."""
    denom = math.lcm(rhs.denominator, *(c.denominator for c in coeffs)) if coeffs else rhs.denominator
    ints = [int(c * denom) for c in coeffs]
    r = int(rhs * denom)
    g = math.gcd(r, *(abs(v) for v in ints)) if ints else abs(r)
    if g > 1:
        ints = [v // g for v in ints]
        r //= g
    return tuple(ints), r


def build_polytope(q: int, b: int) -> MinimalFunctionPolytope:
    """Equality and inequality rows of the minimal-function polytope, plus the
    symmetry-reduced system used for vertex enumeration."""
    b %= q
    if b == 0:
        raise ZeroElement("polytope needs a nonzero right-hand side")
    zero = Fraction(0)
    one = Fraction(1)

    def unit_row(*entries: tuple[int, int]) -> tuple[Fraction, ...]:
        row = [zero] * q
        for idx, coef in entries:
            row[idx] += coef
        return tuple(row)

    equalities: list[FullRow] = [(unit_row((0, 1)), zero)]
    seen_pairs = set()
    for x in range(q):
        partner = (b - x) % q
        key = (min(x, partner), max(x, partner))
        if key in seen_pairs:
            continue
        seen_pairs.add(key)
        equalities.append((unit_row((x, 1), (partner, 1)), one))

    inequalities: list[FullRow] = []
    seen_rows = set()
    for x in range(1, q):
        row = (unit_row((x, 1)), zero)
        if row not in seen_rows:
            seen_rows.add(row)
            inequalities.append(row)
    for x in range(1, q):
        for y in range(x, q):
            row = (unit_row((x, 1), (y, 1), ((x + y) % q, -1)), zero)
            if any(c != 0 for c in row[0]) and row not in seen_rows:
                seen_rows.add(row)
                inequalities.append(row)

    # symmetry substitution: pi(0)=0, pi(b)=1, halfway points 1/2, pairs z / 1-z
    consts: dict[int, Fraction] = {0: zero, b: one}
    var_of: dict[int, tuple[int, bool]] = {}  # residue -> (var index, negated)
    free: list[int] = []
    for x in range(1, q):
        if x == b or x in consts or x in var_of:
            continue
        partner = (b - x) % q
        if partner == x:
            consts[x] = Fraction(1, 2)
            continue
        var_of[x] = (len(free), False)
        var_of[partner] = (len(free), True)
        free.append(x)

    d = len(free)
    expressions = []
    for x in range(q):
        if x in consts:
            expressions.append((consts[x], (zero,) * d))
        else:
            j, negated = var_of[x]
            coeffs = [zero] * d
            coeffs[j] = -one if negated else one
            expressions.append((one if negated else zero, tuple(coeffs)))

    box_rows: list[IntRow] = []
    for j in range(d):
        unit = tuple(1 if i == j else 0 for i in range(d))
        box_rows.append((unit, 0))
        box_rows.append((tuple(-u for u in unit), -1))
    box_set = set(box_rows)

    other_rows: set[IntRow] = set()
    for coeffs, rhs in inequalities:
        red = [zero] * d
        rhs_red = rhs
        for x, c in enumerate(coeffs):
            if c == 0:
                continue
            const, var_coeffs = expressions[x]
            rhs_red -= c * const
            for j, vc in enumerate(var_coeffs):
                red[j] += c * vc
        if all(c == 0 for c in red):
            if rhs_red > 0:
                raise ValidationFailure(f"inconsistent constant row: 0 >= {rhs_red}")
            continue
        row = _to_int_row(red, rhs_red)
        if row not in box_set:
            other_rows.add(row)

    return MinimalFunctionPolytope(
        q=q,
        b=b,
        equalities=tuple(equalities),
        inequalities=tuple(inequalities),
        free=tuple(free),
        expressions=tuple(expressions),
        box_rows=tuple(box_rows),
        other_rows=tuple(sorted(other_rows)),
    )


def _dot(a: tuple[int, ...], nums: tuple[int, ...], rhs: int, den: int) -> int:
    """Sign-faithful slack of a >= rhs at the homogeneous point nums/den."""
    return sum(ai * ni for ai, ni in zip(a, nums)) - rhs * den


def _canonical(nums: list[int], den: int) -> tuple[tuple[int, ...], int]:
    g = math.gcd(den, *(abs(n) for n in nums)) if nums else den
    if g > 1:
        nums = [n // g for n in nums]
        den //= g
    return tuple(nums), den


def _int_rank(rows: list[tuple[int, ...]], d: int) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    mat = [list(r) for r in rows]
    rank = 0
    for col in range(d):
        pivot = next((i for i in range(rank, len(mat)) if mat[i][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        prow = mat[rank]
        for i in range(rank + 1, len(mat)):
            if mat[i][col] != 0:
                f1, f2 = prow[col], mat[i][col]
                mat[i] = [f1 * a - f2 * b for a, b in zip(mat[i], prow)]
        rank += 1
        if rank == d:
            break
    return rank


def _enumerate_reduced(
    rows: list[IntRow], d: int
) -> list[tuple[tuple[tuple[int, ...], int], int]]:
    """Vertices of {z : rows} as (homogeneous point, tight-row bitmask).

    Incremental double description starting from the unit box, which is always
    part of the row system here.  Adjacency uses the combinatorial criterion:
    two vertices are adjacent iff no third vertex is tight on their common
    tight set.
    """
    if d == 0:
        point = ((), 1)
        mask = 0
        for idx, (a, c) in enumerate(rows):
            if c > 0:
                return []
            if c == 0:
                mask |= 1 << idx
        return [(point, mask)]

    vertices: dict[tuple[tuple[int, ...], int], int] = {}
    for code in range(1 << d):
        nums = tuple((code >> j) & 1 for j in range(d))
        mask = 0
        for j in range(d):
            mask |= 1 << (2 * j + nums[j])  # rows 2j: z_j>=0, 2j+1: z_j<=1
        vertices[(nums, 1)] = mask

    def full_mask(nums: tuple[int, ...], den: int, upto: int) -> int:
        mask = 0
        for idx in range(upto + 1):
            a, c = rows[idx]
            if _dot(a, nums, c, den) == 0:
                mask |= 1 << idx
        return mask

    for idx in range(2 * d, len(rows)):
        a, c = rows[idx]
        bit = 1 << idx
        pos, zero, neg = [], [], []
        for v, mask in vertices.items():
            s = _dot(a, v[0], c, v[1])
            if s > 0:
                pos.append((v, mask, s))
            elif s == 0:
                zero.append((v, mask))
            else:
                neg.append((v, mask, s))
        if not neg:
            for v, mask in zero:
                vertices[v] = mask | bit
            continue
        if not pos and not zero:
            return []
        masks = list(vertices.values())
        new_points: dict[tuple[tuple[int, ...], int], int] = {}
        for (u, mu, su) in pos:
            for (w, mw, sw) in neg:
                common = mu & mw
                if common.bit_count() < d - 1:
                    continue
                if any(
                    m != mu and m != mw and (common & m) == common for m in masks
                ):
                    continue
                nums = [su * wn - sw * un for un, wn in zip(u[0], w[0])]
                den = su * w[1] - sw * u[1]
                point = _canonical(nums, den)
                if point not in new_points:
                    new_points[point] = full_mask(point[0], point[1], idx)
        survivors: dict[tuple[tuple[int, ...], int], int] = {}
        for (v, mask, _s) in pos:
            survivors[v] = mask
        for v, mask in zero:
            survivors[v] = mask | bit
        survivors.update(new_points)
        vertices = survivors

    last = len(rows) - 1
    return [(v, full_mask(v[0], v[1], last)) for v in vertices]


def enumerate_vertices(
    polytope: MinimalFunctionPolytope, max_order: int = 31
) -> VertexSet:
    """All vertices of the polytope, each certified by a tight-row rank check."""
    if polytope.q > max_order:
        raise DimensionCap(
            f"q={polytope.q} exceeds the enumeration cap {max_order}"
        )
    rows = list(polytope.box_rows) + list(polytope.other_rows)
    d = polytope.dimension
    raw = _enumerate_reduced(rows, d)
    functions = []
    for (nums, den), mask in raw:
        tight = [rows[i][0] for i in range(len(rows)) if mask & (1 << i)]
        if _int_rank(tight, d) != d:
            raise ValidationFailure(
                f"point {nums}/{den} has tight rank below the dimension {d}"
            )
        z = [Fraction(n, den) for n in nums]
        values = polytope.value_vector(z)
        functions.append(
            FiniteGroupFunction.from_values(polytope.q, polytope.b, values)
        )
    functions.sort(key=lambda f: f.values)
    return VertexSet(
        q=polytope.q,
        b=polytope.b,
        vertices=tuple(functions),
        method="double_description",
    )


def minimize_volume(
    q: int, b: int, max_order: int = 31, force: bool = False
) -> MinimizeResult:
    """Minimize the value product over the minimal-function polytope.

    The objective is strictly log-concave on the positive part, so every
    minimizer is a vertex; the minimum is an exact rational comparison over
    the enumerated vertex set.
    """
    experimental = False
    from .group_core import is_prime

    if not is_prime(q):
        if not force:
            raise NotPrime(f"q={q} is composite; pass force=True to scan anyway")
        experimental = True
    vertex_set = enumerate_vertices(build_polytope(q, b), max_order=max_order)
    scored = [(volume_product(v), v) for v in vertex_set.vertices]
    best = min(score for score, _v in scored)
    argmins = [v for score, v in scored if score == best]
    return MinimizeResult(
        q=q,
        b=b % q,
        value=best,
        argmin=argmins[0],
        unique=len(argmins) == 1,
        n_vertices=len(vertex_set),
        experimental=experimental,
    )


def gomory_decomposition(pi: FiniteGroupFunction) -> Decomposition:
    """Write a nondecreasing minimal function as lam*gom + (1-lam)*pi_tilde.

    gamma is the least subadditivity slack over wrap-around pairs (x + y >= q);
    it is strictly positive for nondecreasing minimal functions, which leaves
    room to subtract a multiple of gom(q, q-1) and renormalize.  lam takes the
    largest admissible value min(gamma*(q-1)/q, min_x pi(x)/x).
    """
    q = pi.q
    if not pi.group.is_prime:
        raise NotPrime(f"q={q} is composite")
    if pi.b_residue != q - 1:
        raise NotMinimal(f"decomposition expects rhs q-1={q - 1}, got {pi.b_residue}")
    verdict = is_minimal(pi)
    if not verdict.is_minimal:
        raise NotMinimal(f"not minimal: {verdict.violations[0]}")
    vals = pi.values
    if any(vals[x] > vals[x + 1] for x in range(q - 1)):
        raise NotNondecreasing("decomposition expects a nondecreasing function")

    gamma = min(
        vals[x] + vals[y] - vals[x + y - q]
        for x in range(1, q)
        for y in range(x, q)
        if x + y >= q
    )
    lam = min(
        [gamma * Fraction(q - 1, q)] + [vals[x] / x for x in range(1, q)]
    )
    if lam >= 1:  # only the two-element group reaches this; any split works
        lam = Fraction(1, 2)
    g = gom(q, q - 1)
    tilde_values = tuple(
        (vals[x] - lam * g.values[x]) / (1 - lam) for x in range(q)
    )
    pi_tilde = FiniteGroupFunction.from_values(q, q - 1, tilde_values)
    tilde_verdict = is_minimal(pi_tilde)
    if not tilde_verdict.is_minimal:
        raise ValidationFailure(
            f"split remainder unexpectedly not minimal: {tilde_verdict.violations[0]}"
        )
    return Decomposition(lam=lam, gamma=gamma, pi_tilde=pi_tilde)
