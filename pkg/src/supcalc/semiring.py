"""Scalar algebras the calculus is parameterized over.

Four instances ship: exact non-negative rationals (``qnn``, the default),
exact signed rationals (``q``), the two-point or/and algebra (``bool``),
and machine floats with tolerant equality (``f64``).  Scalar literals in
source text are always rationals; each instance decides which literals it
accepts via :meth:`Semiring.from_literal`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Sequence

Scalar = Any  # carrier value of some Semiring instance


class SemiringError(Exception):
    pass


class WeightError(SemiringError):
    """A scalar pair used as branch weights does not sum to one."""


class LiteralError(SemiringError):
    """A scalar literal has no image in the chosen carrier."""


@dataclass(frozen=True)
class Semiring:
    """A commutative-addition semiring with a decidable equality.

    ``test_pool`` is the scalar pool randomized law checks draw from,
    ``weight_pool`` the valid branch-weight pairs, and ``non_weight_pair``
    one pair that deliberately fails the p+q=1 side condition.
    """

    name: str
    zero: Scalar
    one: Scalar
    add: Callable[[Scalar, Scalar], Scalar]
    mul: Callable[[Scalar, Scalar], Scalar]
    eq: Callable[[Scalar, Scalar], bool]
    from_literal: Callable[[Fraction], Scalar]
    test_pool: tuple
    weight_pool: tuple
    non_weight_pair: tuple

    def is_zero(self, a: Scalar) -> bool:
        return self.eq(a, self.zero)

    def is_one(self, a: Scalar) -> bool:
        return self.eq(a, self.one)

    def sum(self, values: Sequence[Scalar]) -> Scalar:
        acc = self.zero
        for v in values:
            acc = self.add(acc, v)
        return acc

    def product(self, values: Sequence[Scalar]) -> Scalar:
        acc = self.one
        for v in values:
            acc = self.mul(acc, v)
        return acc

    def __repr__(self) -> str:
        return f"Semiring({self.name})"


@dataclass(frozen=True)
class WeightPair:
    """A validated pair of branch weights with p + q = 1."""

    p: Scalar
    q: Scalar


def make_weight_pair(p: Scalar, q: Scalar, semiring: Semiring) -> WeightPair:
    if not semiring.eq(semiring.add(p, q), semiring.one):
        raise WeightError(
            f"weights {format_scalar(p)} and {format_scalar(q)} do not sum to 1 "
            f"in semiring {semiring.name}"
        )
    return WeightPair(p, q)


def format_scalar(v: Scalar) -> str:
    """Render a carrier value as a source-text literal.

    Floats are rendered as the exact rational they denote, so printing
    always round-trips through the literal grammar.
    """
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return str(Fraction(v))
    raise TypeError(f"not a scalar: {v!r}")


def _qnn_literal(f: Fraction) -> Fraction:
    if f < 0:
        raise LiteralError(f"semiring qnn has no negative scalar {f}")
    return f


def _bool_literal(f: Fraction) -> bool:
    if f == 0:
        return False
    if f == 1:
        return True
    raise LiteralError(f"semiring bool has no scalar {f}")


_F = Fraction

QNN = Semiring(
    name="qnn",
    zero=_F(0),
    one=_F(1),
    add=lambda a, b: a + b,
    mul=lambda a, b: a * b,
    eq=lambda a, b: a == b,
    from_literal=_qnn_literal,
    test_pool=(_F(0), _F(1), _F(1, 2), _F(1, 4), _F(3, 4), _F(2), _F(3)),
    weight_pool=(
        (_F(1, 2), _F(1, 2)),
        (_F(1, 4), _F(3, 4)),
        (_F(3, 4), _F(1, 4)),
        (_F(1), _F(0)),
        (_F(0), _F(1)),
    ),
    non_weight_pair=(_F(1, 2), _F(1, 4)),
)

Q = Semiring(
    name="q",
    zero=_F(0),
    one=_F(1),
    add=lambda a, b: a + b,
    mul=lambda a, b: a * b,
    eq=lambda a, b: a == b,
    from_literal=lambda f: f,
    test_pool=(_F(0), _F(1), _F(-1), _F(1, 2), _F(-1, 2), _F(3, 4), _F(2), _F(3)),
    weight_pool=(
        (_F(1, 2), _F(1, 2)),
        (_F(1, 4), _F(3, 4)),
        (_F(2), _F(-1)),
        (_F(1), _F(0)),
    ),
    non_weight_pair=(_F(1, 2), _F(1, 4)),
)

BOOL = Semiring(
    name="bool",
    zero=False,
    one=True,
    add=lambda a, b: a or b,
    mul=lambda a, b: a and b,
    eq=lambda a, b: a == b,
    from_literal=_bool_literal,
    test_pool=(False, True),
    weight_pool=((True, False), (False, True), (True, True)),
    non_weight_pair=(False, False),
)

_F64_TOL = 1e-9

F64 = Semiring(
    name="f64",
    zero=0.0,
    one=1.0,
    add=lambda a, b: a + b,
    mul=lambda a, b: a * b,
    eq=lambda a, b: abs(a - b) <= _F64_TOL,
    from_literal=lambda f: float(f),
    test_pool=(0.0, 1.0, 0.5, 0.25, 0.75, 2.0, 3.0),
    weight_pool=((0.5, 0.5), (0.25, 0.75), (1.0, 0.0)),
    non_weight_pair=(0.5, 0.25),
)

SEMIRINGS = {sr.name: sr for sr in (QNN, Q, BOOL, F64)}


def get_semiring(name: str) -> Semiring:
    try:
        return SEMIRINGS[name]
    except KeyError:
        raise SemiringError(
            f"unknown semiring {name!r}; choose from {sorted(SEMIRINGS)}"
        ) from None


def embed(s: Scalar, semiring: Semiring = QNN):
    """The canonical left-multiplication embedding of a scalar as a 1x1 matrix."""
    from .matmodel import Mat

    return Mat(1, 1, [s], semiring)
