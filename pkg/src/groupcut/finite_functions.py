"""Cut-generating functions on Z/qZ: constructions, minimality, rearrangement."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import IdenticallyZero, NotPrime, NotSubadditive, ZeroElement
from .group_core import Automorphism, CyclicGroup, GroupElement
from .rationals import as_fraction

__all__ = [
    "FiniteGroupFunction",
    "Violation",
    "MinimalityVerdict",
    "gom",
    "md2",
    "dantzig",
    "is_minimal",
    "compose",
    "rearrange_finite",
]


@dataclass(frozen=True)
class Violation:
    """One failed minimality condition, with the exact amount by which it fails."""

    kind: str  # origin | subadditivity | symmetry | negativity
    witness: tuple[int, ...]
    amount: Fraction


@dataclass(frozen=True)
class MinimalityVerdict:
    is_minimal: bool
    violations: tuple[Violation, ...]


@dataclass(frozen=True)
class FiniteGroupFunction:
    """Nonnegative rational values on Z/qZ with a designated right-hand side b != 0."""

    group: CyclicGroup
    b: GroupElement
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        q = self.group.q
        if self.b.group.q != q:
            raise ValueError("b belongs to a different group")
        if self.b.residue == 0:
            raise ZeroElement("right-hand side b must be nonzero")
        vals = tuple(as_fraction(v) for v in self.values)
        if len(vals) != q:
            raise ValueError(f"expected {q} values, got {len(vals)}")
        if any(v < 0 for v in vals):
            raise ValueError("function values must be nonnegative")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_values(cls, q: int, b: int, values: Sequence) -> "FiniteGroupFunction":
        group = CyclicGroup(q)
        return cls(group, group.element(b), values=tuple(values))

    @property
    def q(self) -> int:
        return self.group.q

    @property
    def b_residue(self) -> int:
        return self.b.residue

    def __call__(self, x: int) -> Fraction:
        return self.values[x % self.q]

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "b": self.b_residue,
            "values": [str(v) for v in self.values],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FiniteGroupFunction":
        return cls.from_values(
            int(data["q"]), int(data["b"]), [as_fraction(v) for v in data["values"]]
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "FiniteGroupFunction":
        return cls.from_dict(json.loads(text))


def gom(q: int, b: int) -> FiniteGroupFunction:
    """The classic Gomory function: x/b up to b, then (q-x)/(q-b)."""
    b %= q
    if b == 0:
        raise ZeroElement("gom requires b != 0")
    values = [
        Fraction(x, b) if x <= b else Fraction(q - x, q - b) for x in range(q)
    ]
    return FiniteGroupFunction.from_values(q, b, values)


def md2(q: int, b: int) -> FiniteGroupFunction:
    """The half-everywhere function: 0 at the origin, 1 at b, 1/2 elsewhere."""
    b %= q
    if b == 0:
        raise ZeroElement("md2 requires b != 0")
    values = [Fraction(1, 2)] * q
    values[0] = Fraction(0)
    values[b] = Fraction(1)
    return FiniteGroupFunction.from_values(q, b, values)


def dantzig(q: int, b: int = 1) -> FiniteGroupFunction:
    """All-ones coefficients; valid but never minimal for q >= 2."""
    return FiniteGroupFunction.from_values(q, b, [Fraction(1)] * q)


def is_minimal(
    pi: FiniteGroupFunction,
    b: int | None = None,
    early_exit: bool = False,
) -> MinimalityVerdict:
    """Check origin value, subadditivity, symmetry and nonnegativity exactly.

    All violations are reported with exact rational amounts unless
    ``early_exit`` asks for the first one only.  ``b`` overrides the
    function's stored right-hand side.
    """
    q = pi.q
    b_res = pi.b_residue if b is None else b % q
    if b_res == 0:
        raise ZeroElement("minimality needs a nonzero right-hand side")
    vals = pi.values
    violations: list[Violation] = []

    def record(kind: str, witness: tuple[int, ...], amount: Fraction) -> bool:
        violations.append(Violation(kind, witness, amount))
        return early_exit

    done = False
    for x, v in enumerate(vals):
        if v < 0:
            done = record("negativity", (x,), -v)
            if done:
                break
    if not done and vals[0] != 0:
        done = record("origin", (0,), abs(vals[0]))
    if not done:
        for x in range(q):
            for y in range(x, q):
                slack = vals[x] + vals[y] - vals[(x + y) % q]
                if slack < 0:
                    done = record("subadditivity", (x, y), -slack)
                    if done:
                        break
            if done:
                break
    if not done:
        for x in range(q):
            partner = (b_res - x) % q
            if x > partner:
                continue
            gap = vals[x] + vals[partner] - 1
            if gap != 0:
                if record("symmetry", (x,), abs(gap)):
                    break
    return MinimalityVerdict(is_minimal=not violations, violations=tuple(violations))


def compose(pi: FiniteGroupFunction, phi: Automorphism) -> FiniteGroupFunction:
    """Precompose with an automorphism: result(x) = pi(phi(x)), rhs = phi^{-1}(b).

    If pi is minimal for its stored b, the result is minimal for the new rhs.
    """
    group = pi.group
    if phi.group.q != group.q:
        raise ValueError("automorphism acts on a different group")
    if not group.is_prime:
        raise NotPrime(f"q={group.q} is composite")
    perm = phi.as_permutation()
    values = tuple(pi.values[perm[x]] for x in range(group.q))
    new_b = phi.inverse().apply(pi.b)
    return FiniteGroupFunction(group, new_b, values)


def rearrange_finite(pi: FiniteGroupFunction) -> FiniteGroupFunction:
    """Nondecreasing rearrangement of the value multiset, rhs moved to q-1.

    Well-defined for subadditive functions vanishing only at the origin on a
    prime-order group: sorting preserves subadditivity (a sumset-cardinality
    argument that needs q prime) and moves symmetry to the rhs q-1.
    """
    q = pi.q
    if not pi.group.is_prime:
        raise NotPrime(f"q={q} is composite")
    if all(v == 0 for v in pi.values):
        raise IdenticallyZero("cannot rearrange the zero function")
    if pi.values[0] != 0:
        raise ValueError("rearrangement requires value 0 at the origin")
    for x in range(q):
        for y in range(x, q):
            slack = pi.values[x] + pi.values[y] - pi.values[(x + y) % q]
            if slack < 0:
                raise NotSubadditive(
                    f"pi({x}) + pi({y}) < pi({(x + y) % q}) by {-slack}"
                )
    return FiniteGroupFunction.from_values(q, q - 1, sorted(pi.values))
